"""Tests for excluded-density complexity, entropies and the determinism verdict."""
import itertools
import math
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cantor_normality.complexity import (
    block_entropy, determinism_check, distinct_blocks, letter_densities,
    letter_entropy, log_integral, p_eps, p_eps_from_counts,
)
from cantor_normality.config import AnalysisConfig
from cantor_normality.errors import BadParams
from cantor_normality.generators import BasicSequence, preset
from cantor_normality.models import DeterminismVerdict, ExclusionSet, Periodic
from cantor_normality.reference_values import THUE_MORSE_COMPLEXITY


def brute_force_p_eps(symbols, k, eps, N):
    """Fewest block classes left after removing whole classes of total size <= eps*N."""
    counts = Counter(tuple(symbols[j:j + k]) for j in range(N))
    classes = list(counts.values())
    budget = math.floor(Fraction(eps) * N)
    best = len(classes)
    for r in range(len(classes) + 1):
        for removed in itertools.combinations(range(len(classes)), r):
            if sum(classes[i] for i in removed) <= budget:
                best = min(best, len(classes) - r)
    return best


def test_thue_morse_complexity():
    seq = BasicSequence(preset("thue-morse"))
    got = [distinct_blocks(seq, k, 4096) for k in range(1, len(THUE_MORSE_COMPLEXITY) + 1)]
    assert got == THUE_MORSE_COMPLEXITY


def test_distinct_blocks_with_exclusion():
    symbols = [2, 3, 2, 3, 4, 2, 3]
    assert distinct_blocks(symbols, 2, 6) == 4
    # window 4 reads (3, 4), window 5 reads (4, 2)
    assert distinct_blocks(symbols, 2, 6, ExclusionSet.from_indices([4, 5])) == 2


@settings(max_examples=60)
@given(
    st.lists(st.integers(2, 3), min_size=6, max_size=30),
    st.integers(1, 3),
    st.sampled_from([Fraction(0), Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(1)]),
)
def test_p_eps_matches_exhaustive_search(symbols, k, eps):
    N = len(symbols) - k + 1
    assert p_eps(symbols, k, eps, N) == brute_force_p_eps(symbols, k, eps, N)


def test_p_eps_from_counts():
    assert p_eps_from_counts([5, 1, 1, 3], 0) == 4
    assert p_eps_from_counts([5, 1, 1, 3], 2) == 2
    assert p_eps_from_counts([5, 1, 1, 3], 4) == 2
    assert p_eps_from_counts([5, 1, 1, 3], 10) == 0


def test_p_eps_range():
    with pytest.raises(BadParams):
        p_eps([2, 3, 2], 1, Fraction(3, 2), 3)


def test_block_entropy_of_a_constant_word():
    result = block_entropy([2] * 50, 3, 40)
    assert result.entropy == 0.0
    assert result.distinct == 1


def test_block_entropy_of_alternating_word():
    result = block_entropy([2, 3] * 30, 2, 40)
    assert result.entropy == pytest.approx(math.log(2))
    assert result.entropy_bits == pytest.approx(1.0)


def test_letter_densities():
    densities = letter_densities([2, 3, 3, 2, 3], 5)
    assert densities == {2: Fraction(2, 5), 3: Fraction(3, 5)}
    assert letter_entropy(densities) == pytest.approx(-(0.4 * math.log(0.4) + 0.6 * math.log(0.6)))


# =============================================================================
# DETERMINISM
# =============================================================================

def test_sturmian_is_deterministic():
    config = AnalysisConfig(verbose=False)
    report = determinism_check(BasicSequence(preset("golden-rotation")), 20000, config=config)
    assert report.condition_i
    assert report.condition_ii
    assert report.verdict == DeterminismVerdict.DETERMINISTIC


def test_bernoulli_has_positive_entropy():
    config = AnalysisConfig(verbose=False)
    report = determinism_check(BasicSequence(preset("bernoulli-23")), 20000, config=config)
    assert not report.condition_i
    assert report.verdict == DeterminismVerdict.POSITIVE_ENTROPY
    assert report.entropies[0].entropy == pytest.approx(math.log(2), abs=0.01)


def test_letter_entropy_drift_uses_stability_tolerance():
    # balanced first half, then all 2s: entropy drops from log 2 to about 0.562
    symbols = [2, 3] * 50 + [2] * 102
    loose = AnalysisConfig(tolerance="1/20", stability_tolerance="1/5", verbose=False)
    strict = AnalysisConfig(tolerance="1/2", stability_tolerance="1/10", verbose=False)
    assert determinism_check(symbols, 200, k_values=[1, 2], config=loose).condition_ii
    report = determinism_check(symbols, 200, k_values=[1, 2], config=strict)
    assert not report.condition_ii
    assert report.verdict == DeterminismVerdict.POSITIVE_ENTROPY


def test_unreliable_block_lengths_have_no_rate():
    report = determinism_check(BasicSequence(preset("bernoulli-23")), 4000, k_values=[1, 16])
    rows = {(r.k, r.eps): r for r in report.table}
    assert rows[(1, Fraction(0))].rate == pytest.approx(math.log(2))
    assert rows[(16, Fraction(0))].rate is None


def test_determinism_table_includes_zero_budget():
    report = determinism_check([2, 3] * 101, 200, eps_values=["1/10"], k_values=[1, 2])
    assert {r.eps for r in report.table} == {Fraction(0), Fraction(1, 10)}
    assert report.letter_densities == {2: Fraction(1, 2), 3: Fraction(1, 2)}


def test_block_lengths_beyond_half_are_dropped():
    report = determinism_check([2, 3] * 20, 20, k_values=[1, 8, 64])
    assert report.k_values == [1, 8]
    with pytest.raises(BadParams):
        determinism_check([2, 3] * 10, 20, k_values=[64])


# =============================================================================
# LOG-INTEGRAL
# =============================================================================

def test_log_integral_of_periodic_sequence():
    result = log_integral(BasicSequence(Periodic((2, 3))), N=1000)
    assert result.mean == pytest.approx(math.log(6) / 2)
    assert not result.drifting
    assert sympy.simplify(result.symbolic - (sympy.log(2) + sympy.log(3)) / 2) == 0


def test_log_integral_in_base_two():
    result = log_integral([2, 8] * 50, base=2, N=100)
    assert result.mean == pytest.approx(2.0)
    assert result.base == 2


def test_log_integral_drifts_when_bases_jump():
    result = log_integral([2] * 50 + [64] * 50, N=100)
    assert result.drifting


def test_log_integral_without_symbolic_form():
    config = AnalysisConfig(symbolic_term_limit=1)
    result = log_integral([2, 3] * 5, N=10, config=config)
    assert result.symbolic is None


def test_log_integral_argument_checks():
    with pytest.raises(BadParams):
        log_integral([2, 3], N=1)
    with pytest.raises(BadParams):
        log_integral([2, 3], base=1, N=2)
