"""Tests for the counterexample constructions and the rebase."""
from fractions import Fraction

import pytest

from cantor_normality.constructions import (
    build_ex31, build_ex32, build_ex35, build_ex36, champernowne_digits,
    exponent_sampler, rebase, to_base_g_digits,
)
from cantor_normality.distribution import (
    empirical_vs_density, gpower_exponent, joint_cell_interval_stats, star_discrepancy,
)
from cantor_normality.errors import BadParams, InadmissibleDigit, MismatchedRadix, SourceExhausted
from cantor_normality.expansion import orbit_sample_from_digits, value_of
from cantor_normality.generators import BasicSequence, SplitMix64, preset
from cantor_normality.models import Membership, Periodic
from cantor_normality.normality import normality_report
from cantor_normality.reference_values import (
    EX31_DISCREPANCY_BOUND, EX31_TARGETS, EX32_DENSITIES, EX32_MASS_LOW, PERIODIC_23_DIGIT_LIMITS,
    ex32_variant_mass_low, ex35_targets,
)


def random_base_4(N, seed=2):
    rng = SplitMix64(seed)
    return [rng.below(4) for _ in range(N)]


def orbit_share(result, a, b, bits=32):
    """Share of orbit points certainly in [a, b), over every point the digits pin down."""
    N = len(result.digits) - (bits + 8) + 1
    sample = orbit_sample_from_digits(result.digits, result.bases, N, bits=bits)
    inside = sum(1 for i in range(N) if sample.classify(i, Fraction(a), Fraction(b)) == Membership.IN)
    return Fraction(inside, N), sample


# =============================================================================
# SPLITTING BASE 4
# =============================================================================

def test_ex31_step_ratio():
    result = build_ex31(20000, random_base_4(20000))
    assert abs(result.observations["M/N"] - EX31_TARGETS["M/N"]) <= Fraction(3, 100)
    assert len(result.bases) == result.observations["M"]


def test_ex31_never_uses_digits_two_and_three():
    result = build_ex31(5000)
    assert 2 not in result.digits
    assert 3 not in result.digits
    assert 4 in result.bases


def test_ex31_orbit_is_near_uniform_on_champernowne_input():
    result = build_ex31(20000, champernowne_digits(4))
    assert result.targets["star discrepancy"] == 0
    assert result.digits.count(2) == result.digits.count(3) == 0
    N = len(result.digits) - 40 + 1
    sample = orbit_sample_from_digits(result.digits, result.bases, N, bits=32)
    # leading-digit bias of the short Champernowne prefix loosens the bound
    assert star_discrepancy(sample) <= 2 * EX31_DISCREPANCY_BOUND


def test_ex31_keeps_the_value():
    # every split preserves d/4 = 1/2 + (d-2)/4
    y = [3, 0, 2, 1]
    result = build_ex31(4, y)
    assert value_of(result.digits, result.bases) == value_of(y, [4, 4, 4, 4])


def test_ex31_pair_blocks_are_not_uniform():
    result = build_ex31(20000, random_base_4(20000))
    sample = orbit_share(result, 0, Fraction(1, 2))[1]
    stats = joint_cell_interval_stats(result.bases, sample, 1)
    assert stats.sup_deviation > Fraction(1, 10)


def test_ex32_orbit_mass():
    result = build_ex32(20000, random_base_4(20000))
    share, sample = orbit_share(result, 0, Fraction(1, 2))
    assert abs(share - EX32_MASS_LOW) <= Fraction(3, 100)
    density = [(0, Fraction(1, 2), EX32_DENSITIES["[0,1/2)"]), (Fraction(1, 2), 1, EX32_DENSITIES["[1/2,1)"])]
    assert empirical_vs_density(sample, density).sup_error <= Fraction(3, 100)


def test_ex32_threshold_variant():
    C = Fraction(9, 8)
    result = build_ex32(20000, random_base_4(20000), C=C)
    assert result.targets["mass [0,1/2)"] == ex32_variant_mass_low(C) == Fraction(4, 9)
    share = orbit_share(result, 0, Fraction(1, 2))[0]
    assert abs(share - Fraction(4, 9)) <= Fraction(3, 100)
    assert abs(result.observations["M/N"] - C) <= Fraction(1, 100)


def test_ex32_rejects_large_C():
    with pytest.raises(BadParams):
        build_ex32(100, C=Fraction(5, 4))


def test_short_source():
    with pytest.raises(SourceExhausted):
        build_ex31(10, [1, 2, 3])
    with pytest.raises(InadmissibleDigit):
        build_ex32(2, [1, 4])


def test_champernowne_base_4_source():
    digits = champernowne_digits(4)
    assert [next(digits) for _ in range(6)] == [1, 2, 3, 1, 0, 1]


# =============================================================================
# RANDOM CONSTRUCTIONS
# =============================================================================

def test_ex35_targets():
    result = build_ex35(2, 4, Fraction(1, 4), 20000, seed=5)
    targets = ex35_targets(2, 4, Fraction(1, 4))
    assert result.targets["orbit [0,1/2)"] == targets["orbit"] == Fraction(5, 8)
    assert result.targets["digit 0"] == targets["digit 0"] == Fraction(3, 8)
    share = orbit_share(result, 0, Fraction(1, 2))[0]
    assert abs(share - Fraction(5, 8)) <= Fraction(2, 100)
    assert abs(result.observations["digit 0"] - Fraction(3, 8)) <= Fraction(2, 100)


def test_ex35_single_digits_look_normal():
    result = build_ex35(2, 4, Fraction(1, 4), 20000, seed=5)
    report = normality_report(result.bases, result.digits, 19999, 1, tol=Fraction(1, 20))
    assert all(row.status.value == "PASS" for row in report.rows)


def test_ex35_without_bias():
    result = build_ex35(2, 4, 0, 1000, seed=1)
    assert result.targets["orbit [0,1/2)"] == Fraction(1, 2)


def test_ex35_parameter_checks():
    with pytest.raises(BadParams):
        build_ex35(4, 2, 0, 10)
    with pytest.raises(BadParams):
        build_ex35(2, 4, Fraction(1, 2), 10)


def test_ex35_is_seeded():
    a = build_ex35(3, 6, Fraction(1, 10), 500, seed=9)
    b = build_ex35(3, 6, Fraction(1, 10), 500, seed=9)
    assert (a.bases, a.digits) == (b.bases, b.digits)
    assert "orbit [0,1/3)" in a.targets


def test_exponent_law_is_heavy_tailed():
    sampler = exponent_sampler(1000)
    rng = SplitMix64(11)
    draws = [sampler.sample(rng) + 1 for _ in range(20000)]
    # P(a = 1) = 1 / sum 1/k^2, about 0.608
    assert abs(draws.count(1) / 20000 - 0.608) < 0.02
    assert max(draws) > 50


def test_ex36i_zeroes_the_first_exponent():
    result = build_ex36(2, 2000, "i", seed=3)
    first = result.observations["a_1"]
    for q, d in zip(result.bases, result.digits):
        assert 0 <= d < q
        if gpower_exponent(q, 2) == first:
            assert d == 0


def test_ex36ii_checkpoints_outweigh_the_rest():
    result = build_ex36(2, 3000, "ii", seed=4)
    checkpoints = result.observations["checkpoints"]
    assert checkpoints
    assert checkpoints[0]["N_m"] == 1
    for cp in checkpoints:
        assert cp["zeros > m * nonzero"]
    for before, after in zip(checkpoints, checkpoints[1:]):
        assert after["N_m"] == before["N_m+1"]


@pytest.mark.parametrize("g", [2, 3, 5])
@pytest.mark.parametrize("seed", [0, 4, 11])
def test_ex36ii_whole_prefix_is_zero_heavy(g, seed):
    result = build_ex36(g, 2000, "ii", seed=seed)
    for cp in result.observations["checkpoints"]:
        end = cp["N_m+1"]
        rendered = to_base_g_digits(result.digits[:end], result.bases[:end], g)
        zeros = rendered.count(0)
        nonzero = len(rendered) - zeros
        assert (cp["zeros"], cp["nonzero"]) == (zeros, nonzero)
        assert zeros > cp["m"] * nonzero


def test_ex36_parameter_checks():
    with pytest.raises(BadParams):
        build_ex36(1, 100)
    with pytest.raises(BadParams):
        build_ex36(2, 100, "iii")


def test_base_g_rendering():
    assert to_base_g_digits([5, 1], [8, 2], 2) == [1, 0, 1, 1]


# =============================================================================
# REBASE
# =============================================================================

def test_rebase_splits_each_digit():
    assert rebase([5], 6, [2, 3]) == [1, 2]
    assert rebase([0, 5, 3], 6, [2, 3]) == [0, 0, 1, 2, 1, 0]


def test_rebase_preserves_value():
    source = [5, 0, 3, 2, 4]
    digits = rebase(source, 6, [2, 3])
    assert value_of(digits, [2, 3] * 5) == value_of(source, [6] * 5)


def test_rebase_needs_matching_radix():
    with pytest.raises(MismatchedRadix):
        rebase([1], 6, [2, 2])
    with pytest.raises(InadmissibleDigit):
        rebase([6], 6, [2, 3])


def test_rebased_random_digits_are_normal():
    rng = SplitMix64(8)
    source = [rng.below(6) for _ in range(50000)]
    digits = rebase(source, 6, [2, 3])
    seq = BasicSequence(Periodic((2, 3)))
    report = normality_report(seq, digits, 99998, 2, tol=Fraction(1, 20))
    assert report.verdict.value == "PASS"


def test_rebased_champernowne_digit_frequencies():
    source = champernowne_digits(6)
    digits = rebase([next(source) for _ in range(9850)], 6, [2, 3])
    n = len(digits) - 1
    report = normality_report(BasicSequence(preset("periodic-23")), digits, n, 1)
    for D, limit in PERIODIC_23_DIGIT_LIMITS.items():
        assert abs(Fraction(report.row(D).count, n) - limit) <= Fraction(3, 100)
