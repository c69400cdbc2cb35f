"""Uniform-distribution diagnostics for orbits q_n...q_1 x mod 1.

Counting is done on integer numerators: a point num/den lies below t = p/r
exactly when num < ceil(t * den), so every threshold becomes one integer and
every count one bisection over the sorted numerators.
"""
import bisect
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import BadDensity, BadParams, EmptySample, NotGPower, PrecisionUnreachable
from .generators import BaseSource, as_sequence
from .models import (
    DensityComparison, DensityRow, ExclusionSet, GPowerDensity, HotSpotQuery,
    HotSpotResult, JointRow, JointStats, Membership, OrbitSample,
)

Sample = Union[OrbitSample, Sequence[Fraction]]


def as_orbit_sample(sample: Sample) -> OrbitSample:
    """Wrap a plain list of rationals in [0,1) as an exact OrbitSample."""
    if isinstance(sample, OrbitSample):
        return sample
    points = [Fraction(u) for u in sample]
    for u in points:
        if not 0 <= u < 1:
            raise BadParams(f"orbit point {u} is not in [0, 1)")
    den = math.lcm(*(u.denominator for u in points)) if points else 1
    return OrbitSample(
        numerators=[u.numerator * (den // u.denominator) for u in points],
        denominator=den,
        provenance={"kind": "explicit"},
    )


def _threshold(t: Fraction, den: int) -> int:
    """Smallest numerator c with c/den >= t."""
    return -((-t.numerator * den) // t.denominator)


def dyadic_intervals(level: int) -> List[Tuple[Fraction, Fraction]]:
    if level < 0:
        raise BadParams(f"level must be >= 0, got {level}")
    size = 1 << level
    return [(Fraction(i, size), Fraction(i + 1, size)) for i in range(size)]


# =============================================================================
# DISCREPANCY AND DENSITIES
# =============================================================================

def star_discrepancy(sample: Sample) -> Fraction:
    """D*_N = max_i max(i/N - u_(i), u_(i) - (i-1)/N) over the sorted points.

    Interval-valued points are evaluated at their lower ends; the sample width
    bounds the extra error and is reported separately by callers.
    """
    sample = as_orbit_sample(sample)
    N = sample.N
    if N == 0:
        raise EmptySample("star discrepancy of an empty sample")
    den = sample.denominator
    worst = 0
    for i, a in enumerate(sorted(sample.numerators), 1):
        worst = max(worst, i * den - a * N, a * N - (i - 1) * den)
    return Fraction(worst, N * den)


def _check_density(cells) -> List[Tuple[Fraction, Fraction, Fraction]]:
    cells = sorted(((Fraction(lo), Fraction(hi), Fraction(d)) for lo, hi, d in cells), key=lambda c: c[0])
    if not cells:
        raise BadDensity("density has no cells")
    edge = Fraction(0)
    mass = Fraction(0)
    for lo, hi, d in cells:
        if lo != edge or not lo < hi:
            raise BadDensity(f"density cells do not partition [0,1) near {edge}")
        if d < 0:
            raise BadDensity(f"negative density {d} on [{lo}, {hi})")
        mass += d * (hi - lo)
        edge = hi
    if edge != 1:
        raise BadDensity(f"density cells end at {edge}, not 1")
    if mass != 1:
        raise BadDensity(f"density integrates to {mass}, not 1")
    return cells


def empirical_vs_density(sample: Sample, density) -> DensityComparison:
    """Empirical mass of each cell against the mass of a piecewise-constant density.

    Args:
        sample: Orbit sample
        density: Iterable of (lo, hi, value) partitioning [0,1)

    Returns:
        DensityComparison with one row per cell and the sup error
    """
    sample = as_orbit_sample(sample)
    if sample.N == 0:
        raise EmptySample("density comparison of an empty sample")
    cells = _check_density(density)
    ordered = sorted(sample.numerators)
    den = sample.denominator

    comparison = DensityComparison(N=sample.N)
    for lo, hi, d in cells:
        inside = bisect.bisect_left(ordered, _threshold(hi, den)) - bisect.bisect_left(ordered, _threshold(lo, den))
        empirical = Fraction(inside, sample.N)
        target = d * (hi - lo)
        error = abs(empirical - target)
        comparison.rows.append(DensityRow(lo=lo, hi=hi, density=d, empirical=empirical, target=target, error=error))
        comparison.sup_error = max(comparison.sup_error, error)
    return comparison


# =============================================================================
# HOT SPOTS
# =============================================================================

def _below_power(x: Fraction, y: Fraction, sigma: Fraction) -> bool:
    """x < y^sigma for x, y >= 0 and sigma = p/q, decided as x^q < y^p."""
    return x ** sigma.denominator < y ** sigma.numerator


def _hotspot_result(query: HotSpotQuery, N: int, count: int, uncertain: int, excluded: int) -> HotSpotResult:
    density = Fraction(excluded, N) if N else Fraction(0)
    ratio = Fraction(count + uncertain, N) if N else Fraction(0)
    width = query.b - query.a
    linear = query.C * width
    return HotSpotResult(
        a=query.a, b=query.b, sigma=query.sigma, C=query.C, N=N,
        count=count, uncertain=uncertain, excluded=excluded,
        exclusion_density=density,
        within_budget=density <= 1 - query.sigma,
        ratio=ratio,
        holds_sigma_bound=_below_power(ratio / query.C, width, query.sigma),
        linear_bound=linear,
        holds_linear_bound=ratio < linear,
    )


def hotspot_nu(sample: Sample, query: HotSpotQuery) -> HotSpotResult:
    """Visits of orbit points n in [0, N-1] outside the exclusion set to [a, b).

    Points whose interval straddles a or b are tallied as uncertain and
    counted against both bounds.
    """
    sample = as_orbit_sample(sample)
    N = sample.N if query.N is None else query.N
    if N > sample.N:
        raise PrecisionUnreachable(f"{N} orbit points requested, {sample.N} available")

    count = uncertain = excluded = 0
    for n in range(N):
        if query.exclusion is not None and n in query.exclusion:
            excluded += 1
            continue
        where = sample.classify(n, query.a, query.b)
        if where == Membership.IN:
            count += 1
        elif where == Membership.UNCERTAIN:
            uncertain += 1
    return _hotspot_result(query, N, count, uncertain, excluded)


def hotspot_scan(
    sample: Sample,
    sigmas: Sequence,
    level: int = 8,
    exclusion: Optional[ExclusionSet] = None,
    C=1
) -> List[HotSpotResult]:
    """hotspot_nu over every dyadic interval of the given level and every sigma."""
    sample = as_orbit_sample(sample)
    size = 1 << level
    certain = [0] * size
    uncertain = [0] * size
    excluded = 0
    den = sample.denominator
    for n, num in enumerate(sample.numerators):
        if exclusion is not None and n in exclusion:
            excluded += 1
            continue
        first = num * size // den
        last = min((num + sample.spread) * size // den, size - 1)
        if first == last:
            certain[first] += 1
        else:
            for cell in range(first, last + 1):
                uncertain[cell] += 1

    results = []
    for sigma in sigmas:
        for i, (a, b) in enumerate(dyadic_intervals(level)):
            query = HotSpotQuery(a=a, b=b, sigma=sigma, C=C, exclusion=exclusion)
            results.append(_hotspot_result(query, sample.N, certain[i], uncertain[i], excluded))
    return results


# =============================================================================
# SKEW-PRODUCT FREQUENCIES
# =============================================================================

def joint_cell_interval_stats(
    Q: BaseSource,
    sample: Sample,
    ell: int,
    intervals: Optional[Sequence[Tuple[Fraction, Fraction]]] = None,
    N: Optional[int] = None
) -> JointStats:
    """Frequency of {n : (q_{n+1},...,q_{n+l}) = B and u_n in [a, b)} against d(B)(b - a)."""
    if ell < 1:
        raise BadParams("block length must be >= 1")
    sample = as_orbit_sample(sample)
    N = sample.N if N is None else N
    if N > sample.N:
        raise PrecisionUnreachable(f"{N} orbit points requested, {sample.N} available")
    if N == 0:
        raise EmptySample("joint statistics of an empty sample")
    intervals = dyadic_intervals(1) if intervals is None else [(Fraction(a), Fraction(b)) for a, b in intervals]

    bases = as_sequence(Q).prefix(N + ell - 1)
    blocks = [tuple(bases[n:n + ell]) for n in range(N)]

    stats = JointStats(ell=ell, N=N)
    block_counts: Dict[Tuple[int, ...], int] = {}
    for B in blocks:
        block_counts[B] = block_counts.get(B, 0) + 1
    stats.block_frequency = {B: Fraction(c, N) for B, c in sorted(block_counts.items())}

    hits: Dict[Tuple[Tuple[int, ...], int], int] = {}
    for n, B in enumerate(blocks):
        for i, (a, b) in enumerate(intervals):
            where = sample.classify(n, a, b)
            if where == Membership.IN:
                hits[(B, i)] = hits.get((B, i), 0) + 1
            elif where == Membership.UNCERTAIN:
                stats.uncertain += 1

    for B, freq in stats.block_frequency.items():
        for i, (a, b) in enumerate(intervals):
            count = hits.get((B, i), 0)
            frequency = Fraction(count, N)
            target = freq * (b - a)
            deviation = abs(frequency - target)
            stats.rows.append(JointRow(B=B, a=a, b=b, count=count, frequency=frequency,
                                       target=target, deviation=deviation))
            stats.sup_deviation = max(stats.sup_deviation, deviation)
    return stats


# =============================================================================
# G-POWER SEQUENCES
# =============================================================================

def gpower_exponent(q: int, g: int) -> int:
    """e with q = g^e, e >= 1."""
    e, rest = 0, q
    while rest % g == 0:
        rest //= g
        e += 1
    if rest != 1 or e == 0:
        raise NotGPower(f"{q} is not a positive power of {g}")
    return e


def _gpower_run(Q: BaseSource, g: int, X: int) -> List[int]:
    """Exponents e_1..e_m with a_{m-1} < X <= a_m."""
    if g < 2:
        raise BadParams(f"g must be >= 2, got {g}")
    if X < 1:
        raise BadParams(f"need at least one base-{g} position, got {X}")
    seq = as_sequence(Q)
    exponents = []
    total = 0
    n = 0
    while total < X:
        n += 1
        e = gpower_exponent(seq.q(n), g)
        exponents.append(e)
        total += e
    return exponents


def gpower_index_density(Q: BaseSource, g: int, k: int, N: int) -> GPowerDensity:
    """Density of A_k = A u (A+1) u ... u (A+k) over [0, N) against its closed form.

    A holds the partial sums a_0 = 0, a_n = a_{n-1} + log_g q_n. The closed
    form is mean(min(k+1, log_g q_n)) / mean(log_g q_n) over the consumed terms.
    """
    if k < 0:
        raise BadParams(f"k must be >= 0, got {k}")
    exponents = _gpower_run(Q, g, N)

    covered = 0
    a = 0
    for e in exponents:
        covered += min(k + 1, e, N - a)
        a += e

    terms = len(exponents)
    mean_exponent = Fraction(sum(exponents), terms)
    formula = Fraction(sum(min(k + 1, e) for e in exponents), terms) / mean_exponent
    empirical = Fraction(covered, N)
    return GPowerDensity(
        g=g, k=k, positions=N, terms=terms, mean_exponent=mean_exponent,
        empirical=empirical, formula=formula, difference=empirical - formula,
    )


def gpower_exclusion(Q: BaseSource, g: int, k: int, X: int) -> ExclusionSet:
    """The base-g positions in [0, X) outside A_k."""
    if k < 0:
        raise BadParams(f"k must be >= 0, got {k}")
    excluded = []
    a = 0
    for e in _gpower_run(Q, g, X):
        excluded.extend(range(a + min(k + 1, e), min(a + e, X)))
        a += e
    return ExclusionSet.from_indices(excluded, label=f"complement of A_{k}")


# =============================================================================
# WEYL SUMS
# =============================================================================

def weyl_sums(sample: Sample, h_max: int = 8) -> Dict[int, float]:
    """|N^-1 sum e(h u_n)| for h = 1..h_max."""
    sample = as_orbit_sample(sample)
    if sample.N == 0:
        raise EmptySample("Weyl sums of an empty sample")
    den = sample.denominator
    points = np.array([Fraction(num, den) for num in sample.numerators], dtype=float)
    return {
        h: float(np.abs(np.exp(2j * np.pi * h * points).mean()))
        for h in range(1, h_max + 1)
    }
