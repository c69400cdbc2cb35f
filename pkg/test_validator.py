"""Tests for target validation and the report printers."""
from fractions import Fraction

import pytest

from cantor_normality.complexity import determinism_check
from cantor_normality.generators import BasicSequence, check_dynamic_generation, preset
from cantor_normality.normality import normality_report
from cantor_normality.validator import (
    overall_agreement, print_complexity_report, print_dynamic_generation_report,
    print_normality_report, print_validation_report, validate_targets,
)


def test_validate_targets_statuses():
    targets = {"a": Fraction(1, 2), "b": Fraction(3, 2), "c": Fraction(1), "unseen": Fraction(0)}
    observed = {"a": Fraction(1, 2), "b": Fraction(151, 100), "c": Fraction(2)}
    results = validate_targets(observed, targets, "1/50")
    assert [(r.item, r.status) for r in results] == [("a", "exact"), ("b", "close"), ("c", "miss")]
    assert results[1].difference == Fraction(1, 100)
    assert overall_agreement(results) == pytest.approx(200 / 3)


def test_no_targets():
    assert validate_targets({"a": Fraction(1)}, {}, 0) == []
    assert overall_agreement([]) == 0.0


def test_validation_report_counts(capsys):
    results = validate_targets({"x": Fraction(1), "y": Fraction(0)}, {"x": 1, "y": 1}, "1/10")
    assert print_validation_report(results) == (1, 0, 1)
    out = capsys.readouterr().out
    assert "VALIDATION REPORT" in out
    assert "Misses:    1 / 2" in out


def test_report_printers_run(capsys):
    seq = BasicSequence(preset("periodic-23"))
    print_normality_report(normality_report(seq, "1/7", 300, 1))
    print_complexity_report(determinism_check([2, 3] * 101, 200, k_values=[1, 2]))
    print_dynamic_generation_report(check_dynamic_generation(seq, 2, 400, Fraction(1, 100), Fraction(1, 100)))
    out = capsys.readouterr().out
    assert "NORMALITY REPORT" in out
    assert "COMPLEXITY PROFILE" in out
    assert "DYNAMIC GENERATION" in out
