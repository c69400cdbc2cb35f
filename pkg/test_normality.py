"""Tests for block counts, normality reports and cell geometry."""
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantor_normality.config import AnalysisConfig
from cantor_normality.errors import BadParams, LengthMismatch, UnsupportedModel
from cantor_normality.expansion import CantorReal
from cantor_normality.generators import BasicSequence, SplitMix64, preset
from cantor_normality.models import (
    BlockRow, DoublingCoding, ExclusionSet, Periodic, RotationCoding, Verdict,
)
from cantor_normality.normality import (
    block_stats, cell_rectangles, count_N_n, count_N_n_DB, digit_interval,
    expectation_Q_n, expectation_Q_n_DB, limit_P_D, normality_report,
    ratio_normality_matrix, s_d_regions,
)
from cantor_normality.reference_values import GRID_RECTANGLE_COUNTS, PERIODIC_23_DIGIT_LIMITS


def periodic_23():
    return BasicSequence(Periodic((2, 3)))


def random_digits(seq, n, seed=1):
    rng = SplitMix64(seed)
    return [rng.below(q) for q in seq.prefix(n)]


# =============================================================================
# EXPECTATIONS AND COUNTS
# =============================================================================

def test_periodic_expectations_are_exact():
    seq = periodic_23()
    assert expectation_Q_n(seq, (0,), 12) == 5
    assert expectation_Q_n(seq, (2,), 12) == 2
    assert expectation_Q_n_DB(seq, (1, 2), (2, 3), 12) == Fraction(6, 6)
    assert expectation_Q_n_DB(seq, (2, 0), (2, 3), 12) == 0


@pytest.mark.parametrize("D", sorted(PERIODIC_23_DIGIT_LIMITS))
def test_periodic_digit_limits(D):
    estimate = limit_P_D(periodic_23(), D, 1000)
    assert estimate.estimate == PERIODIC_23_DIGIT_LIMITS[D]
    assert estimate.drift == 0


def test_limit_needs_two_terms():
    with pytest.raises(BadParams):
        limit_P_D(periodic_23(), (0,), 1)


def test_mismatched_block_lengths():
    with pytest.raises(LengthMismatch):
        expectation_Q_n_DB(periodic_23(), (0,), (2, 3), 10)
    with pytest.raises(LengthMismatch):
        count_N_n_DB(periodic_23(), "1/5", (0,), (2, 3), 10)


def test_empty_block_is_rejected():
    with pytest.raises(BadParams):
        expectation_Q_n(periodic_23(), (), 10)


@settings(max_examples=40)
@given(
    st.lists(st.integers(2, 4), min_size=12, max_size=40),
    st.fractions(min_value=0, max_value=1, max_denominator=997).filter(lambda f: f < 1),
    st.integers(1, 2),
)
def test_block_sums_are_exact(bases, x, ell):
    n = len(bases) - ell + 1
    stats = block_stats(bases, x, ell, n)
    every_D = list(itertools.product(range(4), repeat=ell))
    assert sum(stats.expectation(D) for D in every_D) == n
    assert sum(stats.digit_counts().values()) == n

    blocks = list(stats.bases.counts)
    for D in every_D:
        assert sum(stats.expectation_pair(D, B) for B in blocks) == stats.expectation(D)
        pairs = stats.pair_counts()
        assert sum(pairs.get((D, B), 0) for B in blocks) == stats.digit_counts().get(D, 0)


def test_count_with_exclusion():
    seq = BasicSequence(Periodic((10,)))
    # 1/9 = 0.111...
    assert count_N_n(seq, "1/9", (1,), 10) == 10
    exclusion = ExclusionSet.from_indices([2, 4, 6])
    assert count_N_n(seq, "1/9", (1,), 10, exclusion) == 7
    assert count_N_n(seq, "1/9", (1, 1), 10) == 10


def test_chunked_block_stats_match():
    seq = BasicSequence(preset("thue-morse"))
    x = CantorReal.from_rational("5/13", seq)
    whole = block_stats(seq, x, 3, 500)
    chunked = block_stats(seq, x, 3, 500, chunk=37)
    assert chunked.pairs.counts == whole.pairs.counts
    assert chunked.bases.counts == whole.bases.counts


# =============================================================================
# REPORTS
# =============================================================================

def test_random_digits_pass_normality():
    seq = periodic_23()
    n = 10**5
    x = CantorReal.from_digits(random_digits(seq, n + 1), seq)
    report = normality_report(seq, x, n, 2, tol=Fraction(1, 20))
    assert report.verdict == Verdict.PASS
    assert report.row((0,)).count + report.row((1,)).count + report.row((2,)).count == n
    assert report.extremal_ratio[1] is not None
    assert report.extremal_ratio[1] < Fraction(11, 10)
    assert report.uniform_rows


def test_zero_is_not_normal():
    report = normality_report(periodic_23(), 0, 2000, 1)
    assert report.verdict == Verdict.FAIL
    assert report.row((1,)).count == 0
    assert report.row((1,)).status == Verdict.FAIL
    assert report.extremal_ratio[1] is None


def test_small_mass_is_insufficient():
    report = normality_report(periodic_23(), "1/5", 20, 1)
    assert report.row((2,)).expectation == Fraction(10, 3)
    assert report.row((2,)).status == Verdict.INSUFFICIENT


def test_enumeration_limit_truncates():
    config = AnalysisConfig(enumeration_limit=4, verbose=False)
    report = normality_report(periodic_23(), "1/5", 100, 2, config=config)
    assert report.truncated
    assert any(r.ell == 2 for r in report.rows)


def test_truncated_reports_keep_exact_expectations():
    seq = periodic_23()
    config = AnalysisConfig(enumeration_limit=4, verbose=False)
    report = normality_report(seq, "1/5", 3000, 2, config=config)
    assert report.truncated
    assert report.row((0, 0)).expectation == expectation_Q_n(seq, (0, 0), 3000) == 500
    for r in report.rows:
        assert r.expectation == expectation_Q_n(seq, r.D, 3000)
    for u in report.uniform_rows:
        assert u.expectation == expectation_Q_n_DB(seq, u.D, u.B, 3000)


def test_ratio_matrix_extremal():
    rows = [
        BlockRow(1, (0,), 12, Fraction(10), Fraction(6, 5), Verdict.FAIL),
        BlockRow(1, (1,), 8, Fraction(10), Fraction(4, 5), Verdict.FAIL),
        BlockRow(1, (2,), 1, Fraction(1), Fraction(1), Verdict.INSUFFICIENT),
    ]
    entries, extremal = ratio_normality_matrix(rows)
    assert extremal == {1: Fraction(3, 2)}
    assert {(e.D1, e.D2): e.ratio for e in entries} == {
        ((0,), (1,)): Fraction(3, 2),
        ((1,), (0,)): Fraction(2, 3),
    }


def test_ratio_matrix_is_dropped_for_many_blocks():
    rows = [BlockRow(1, (d,), 10, Fraction(10), Fraction(1), Verdict.PASS) for d in range(5)]
    entries, extremal = ratio_normality_matrix(rows, max_blocks=3)
    assert entries == []
    assert extremal == {1: Fraction(1)}


# =============================================================================
# CELL GEOMETRY
# =============================================================================

@pytest.mark.parametrize("ell", sorted(GRID_RECTANGLE_COUNTS))
def test_doubling_rectangle_counts(ell):
    rectangles = cell_rectangles(DoublingCoding(), ell)
    assert len(rectangles) == GRID_RECTANGLE_COUNTS[ell]
    assert sum((r.area for r in rectangles), Fraction(0)) == 1


def test_rotation_rectangles_tile_the_square():
    alpha = Fraction(2, 5)
    spec = RotationCoding(alpha, ((Fraction(0), Fraction(3, 5), 2), (Fraction(3, 5), Fraction(1), 3)))
    rectangles = cell_rectangles(spec, 2)
    assert sum((r.area for r in rectangles), Fraction(0)) == 1
    # no window reads (3, 3): a visit to [3/5, 1) is always followed by one to [0, 3/5)
    assert (3, 3) not in {r.B for r in rectangles}


def test_digit_interval():
    assert digit_interval((1, 2), (2, 3)) == (Fraction(5, 6), Fraction(1))
    assert digit_interval((0,), (4,)) == (Fraction(0), Fraction(1, 4))


def test_s_d_region():
    rectangles = cell_rectangles(DoublingCoding(), 1)
    region = s_d_regions(rectangles, (2,))
    assert [r.B for r in region] == [(3,)]
    assert region[0].area == Fraction(1, 6)


def test_unsupported_model():
    with pytest.raises(UnsupportedModel):
        cell_rectangles(Periodic((2, 3)), 1)
