"""Block counts, exact expectations, normality reports and cell geometry.

Windows are taken at positions j = 1..n: the window at j reads digits
x_j..x_{j+l-1} against bases q_j..q_{j+l-1}. With this alignment

    sum over D of N_n(D, x)    = n
    sum over D of Q_n(D)       = n
    sum over B of Q_n(D, B)    = Q_n(D)
    sum over B of N_n(D, B, x) = N_n(D, x)

hold as exact identities.
"""
import itertools
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .config import AnalysisConfig
from .errors import BadParams, LengthMismatch, UnsupportedModel
from .expansion import as_cantor_real
from .generators import BaseSource, as_sequence, count_windows_chunked, cylinder_stats, dyadic_level
from .models import (
    BlockRow, BlockStats, CellRectangle, CylinderStats, DoublingCoding,
    ExclusionSet, GeneratorSpec, NormalityReport, PDEstimate, RatioNormalityEntry,
    RotationCoding, UniformRow, Verdict, block_below, block_product,
)


def _check_block(D) -> Tuple[int, ...]:
    D = tuple(int(d) for d in D)
    if not D:
        raise BadParams("blocks must have length >= 1")
    if any(d < 0 for d in D):
        raise BadParams(f"digit blocks have entries >= 0, got {D}")
    return D


def block_stats(
    Q: BaseSource,
    x,
    ell: int,
    n: int,
    exclusion: Optional[ExclusionSet] = None,
    chunk: Optional[int] = None
) -> BlockStats:
    """Paired digit/base window counts for windows 1..n."""
    if ell < 1:
        raise BadParams("blocks must have length >= 1")
    seq = as_sequence(Q)
    bases = seq.prefix(n + ell - 1)
    digits = as_cantor_real(x, seq).digits(n + ell - 1)
    pairs = list(zip(digits, bases))
    if chunk:
        return BlockStats(
            ell,
            count_windows_chunked(pairs, ell, chunk, exclusion),
            count_windows_chunked(bases, ell, chunk),
        )
    return BlockStats(
        ell,
        CylinderStats.from_symbols(pairs, ell, exclusion=exclusion),
        CylinderStats.from_symbols(bases, ell),
    )


def expectation_Q_n(Q: BaseSource, D, n: int) -> Fraction:
    """Q_n(D): the sum over j <= n of I_{Q,j}(D) / (q_j...q_{j+l-1})."""
    D = _check_block(D)
    stats = cylinder_stats(as_sequence(Q), len(D), n)
    return sum(
        (Fraction(c, block_product(B)) for B, c in stats.counts.items() if block_below(D, B)),
        Fraction(0),
    )


def expectation_Q_n_DB(Q: BaseSource, D, B, n: int) -> Fraction:
    """Q_n(D, B): occurrences of B among windows 1..n, over the product of B."""
    D = _check_block(D)
    B = tuple(int(b) for b in B)
    if len(D) != len(B):
        raise LengthMismatch(f"digit block {D} and base block {B} differ in length")
    if not block_below(D, B):
        return Fraction(0)
    stats = cylinder_stats(as_sequence(Q), len(B), n)
    return Fraction(stats.counts.get(B, 0), block_product(B))


def count_N_n(Q: BaseSource, x, D, n: int, exclusion: Optional[ExclusionSet] = None) -> int:
    """N_n(D, x) over windows j in [1, n] outside the exclusion set."""
    D = _check_block(D)
    digits = as_cantor_real(x, as_sequence(Q)).digits(n + len(D) - 1)
    stats = CylinderStats.from_symbols(digits, len(D), exclusion=exclusion)
    return stats.counts.get(D, 0)


def count_N_n_DB(Q: BaseSource, z, D, B, n: int, exclusion: Optional[ExclusionSet] = None) -> int:
    """N_n(D, B, z): occurrences of D at windows whose bases read B."""
    D = _check_block(D)
    B = tuple(int(b) for b in B)
    if len(D) != len(B):
        raise LengthMismatch(f"digit block {D} and base block {B} differ in length")
    stats = block_stats(Q, z, len(D), n, exclusion)
    return stats.pairs.counts.get(tuple(zip(D, B)), 0)


def limit_P_D(Q: BaseSource, D, n: int) -> PDEstimate:
    """P_D estimated by Q_n(D)/n, with the drift from the n/2 estimate."""
    if n < 2:
        raise BadParams(f"n must be >= 2, got {n}")
    D = _check_block(D)
    seq = as_sequence(Q)
    half = n // 2
    estimate = expectation_Q_n(seq, D, n) / n
    half_estimate = expectation_Q_n(seq, D, half) / half
    return PDEstimate(D=D, n=n, estimate=estimate, half_estimate=half_estimate,
                      drift=abs(estimate - half_estimate))


# =============================================================================
# REPORTS
# =============================================================================

def _status(ratio: Optional[Fraction], expectation: Fraction, theta: Fraction, tol: Fraction) -> Verdict:
    if expectation == 0 or expectation < theta:
        return Verdict.INSUFFICIENT
    return Verdict.PASS if abs(ratio - 1) <= tol else Verdict.FAIL


def _expectation_over(D: Tuple[int, ...], weights: Dict[Tuple[int, ...], Fraction]) -> Fraction:
    """Sum of the block weights under which D is admissible."""
    return sum((w for B, w in weights.items() if all(d < b for d, b in zip(D, B))), Fraction(0))


def ratio_normality_matrix(
    rows: Sequence[BlockRow],
    max_blocks: int = 64
) -> Tuple[List[RatioNormalityEntry], Dict[int, Optional[Fraction]]]:
    """RN entries (N/Q)(D1) / (N/Q)(D2) for blocks above the mass threshold.

    The full matrix is kept only when a length has at most max_blocks eligible
    blocks; the extremal ratio max/min is always reported (None when some
    eligible block never occurs).
    """
    entries: List[RatioNormalityEntry] = []
    extremal: Dict[int, Optional[Fraction]] = {}
    by_length: Dict[int, List[BlockRow]] = defaultdict(list)
    for r in rows:
        if r.status != Verdict.INSUFFICIENT:
            by_length[r.ell].append(r)

    for ell, eligible in sorted(by_length.items()):
        ratios = [r.ratio for r in eligible]
        extremal[ell] = max(ratios) / min(ratios) if min(ratios) > 0 else None
        if len(eligible) <= max_blocks:
            for r1, r2 in itertools.permutations(eligible, 2):
                entries.append(RatioNormalityEntry(
                    ell=ell, D1=r1.D, D2=r2.D,
                    ratio=r1.ratio / r2.ratio if r2.ratio else None,
                ))
    return entries, extremal


def normality_report(
    Q: BaseSource,
    x,
    n: int,
    ell_max: int,
    tol=None,
    config: Optional[AnalysisConfig] = None,
    exclusion: Optional[ExclusionSet] = None
) -> NormalityReport:
    """N/Q ratios, RN ratios and UN ratios for every block length up to ell_max.

    Blocks with Q_n(D) below the mass threshold are reported as INSUFFICIENT
    rather than judged. Digit blocks are enumerated from the base blocks that
    occur, since every other D has Q_n(D) = 0.
    """
    config = config or AnalysisConfig()
    if ell_max < 1:
        raise BadParams("block length must be >= 1")
    tol = config.fraction("tolerance") if tol is None else Fraction(tol)
    theta = Fraction(config.mass_threshold)
    seq = as_sequence(Q)
    x = as_cantor_real(x, seq)

    report = NormalityReport(n=n, ell_max=ell_max, tolerance=tol, mass_threshold=theta)

    for ell in range(1, ell_max + 1):
        stats = block_stats(seq, x, ell, n, exclusion)
        observed = stats.digit_counts()
        pair_counts = stats.pair_counts()
        weights = {B: Fraction(c, block_product(B)) for B, c in sorted(stats.bases.counts.items())}

        expectations: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
        enumerated = 0
        truncated = False
        for B, weight in weights.items():
            for D in itertools.product(*(range(b) for b in B)):
                if enumerated >= config.enumeration_limit:
                    truncated = True
                    break
                enumerated += 1
                expectations[D] += weight
                if weight >= theta:
                    count = pair_counts.get((D, B), 0)
                    report.uniform_rows.append(UniformRow(
                        ell=ell, D=D, B=B, count=count, expectation=weight,
                        ratio=Fraction(count) / weight,
                        status=_status(Fraction(count) / weight, weight, theta, tol),
                    ))
            if truncated:
                break

        digit_blocks = set(expectations) | set(observed)
        if truncated:
            report.truncated = True
            # the enumerated blocks only saw part of the base blocks
            expectations = {D: _expectation_over(D, weights) for D in digit_blocks}

        for D in sorted(digit_blocks):
            expectation = expectations.get(D, Fraction(0))
            count = observed.get(D, 0)
            ratio = Fraction(count) / expectation if expectation else None
            report.rows.append(BlockRow(
                ell=ell, D=D, count=count, expectation=expectation, ratio=ratio,
                status=_status(ratio, expectation, theta, tol),
            ))

    report.ratio_normality, report.extremal_ratio = ratio_normality_matrix(
        report.rows, config.rn_max_blocks
    )
    return report


# =============================================================================
# CELL GEOMETRY
# =============================================================================

Intervals = List[Tuple[Fraction, Fraction]]


def _merge_adjacent(intervals: Intervals) -> Intervals:
    merged: Intervals = []
    for lo, hi in sorted(intervals):
        if merged and merged[-1][1] >= lo:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def _intersect(a: Intervals, b: Intervals) -> Intervals:
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo < hi:
                out.append((lo, hi))
    return _merge_adjacent(out)


def _rotate_back(intervals: Intervals, shift: Fraction) -> Intervals:
    """Preimage of a set under u -> u + shift mod 1."""
    out = []
    for lo, hi in intervals:
        lo2, hi2 = (lo - shift) % 1, (lo - shift) % 1 + (hi - lo)
        if hi2 <= 1:
            out.append((lo2, hi2))
        else:
            out.extend([(lo2, Fraction(1)), (Fraction(0), hi2 - 1)])
    return _merge_adjacent(out)


def _doubling_cylinders(spec: DoublingCoding, ell: int) -> Dict[Tuple[int, ...], Intervals]:
    level = dyadic_level(spec.cells)
    cells = sorted(spec.cells, key=lambda c: c[0])
    table = [next(base for lo, hi, base in cells if lo <= Fraction(v, 1 << level) < hi)
             for v in range(1 << level)]
    span = level + ell - 1
    mask = (1 << level) - 1
    cylinders: Dict[Tuple[int, ...], Intervals] = defaultdict(list)
    for v in range(1 << span):
        B = tuple(table[(v >> (span - i - level)) & mask] for i in range(ell))
        cylinders[B].append((Fraction(v, 1 << span), Fraction(v + 1, 1 << span)))
    return {B: _merge_adjacent(iv) for B, iv in cylinders.items()}


def _rotation_cylinders(spec: RotationCoding, ell: int) -> Dict[Tuple[int, ...], Intervals]:
    by_base: Dict[int, Intervals] = defaultdict(list)
    for lo, hi, base in spec.cells:
        by_base[base].append((Fraction(lo), Fraction(hi)))
    cylinders = {}
    for B in itertools.product(sorted(by_base), repeat=ell):
        region: Intervals = [(Fraction(0), Fraction(1))]
        for i, b in enumerate(B):
            region = _intersect(region, _rotate_back(by_base[b], i * spec.alpha))
            if not region:
                break
        if region:
            cylinders[B] = region
    return cylinders


def digit_interval(D: Sequence[int], B: Sequence[int]) -> Tuple[Fraction, Fraction]:
    """I_{D,B} = [sum d_i/(b_1...b_i), that + 1/(b_1...b_l))."""
    num, den = 0, 1
    for d, b in zip(D, B):
        num = num * b + d
        den *= b
    return Fraction(num, den), Fraction(num + 1, den)


def cell_rectangles(model: GeneratorSpec, ell: int) -> List[CellRectangle]:
    """Every rectangle E_B x I_{D,B} with E_B nonempty and D < B."""
    if ell < 1:
        raise BadParams("block length must be >= 1")
    if isinstance(model, DoublingCoding):
        cylinders = _doubling_cylinders(model, ell)
    elif isinstance(model, RotationCoding):
        cylinders = _rotation_cylinders(model, ell)
    else:
        raise UnsupportedModel(f"{type(model).__name__} has no interval-coded cylinder sets")

    rectangles = []
    for B in sorted(cylinders):
        horizontal = tuple(cylinders[B])
        for D in itertools.product(*(range(b) for b in B)):
            rectangles.append(CellRectangle(B=B, D=D, horizontal=horizontal, vertical=digit_interval(D, B)))
    return rectangles


def s_d_regions(rectangles: Sequence[CellRectangle], D) -> List[CellRectangle]:
    """The rectangles making up S_D, the union over B of E_B x I_{D,B}."""
    D = tuple(D)
    return [r for r in rectangles if r.D == D]
