"""Determinism diagnostics: excluded-density complexity, entropies, log-integral.

All estimates are finite-prefix surrogates. Block lengths k with at least N/8
distinct factors are treated as unreliable and left out of the rate minimum.
"""
import math
from collections import Counter
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np
import sympy

from .config import AnalysisConfig
from .errors import BadParams
from .generators import symbols_of
from .models import (
    BlockEntropy, ComplexityReport, ComplexityRow, CylinderStats,
    DeterminismVerdict, ExclusionSet, LogIntegral,
)


def _window_matrix(symbols: Sequence, k: int, N: int) -> np.ndarray:
    """Rows are the windows 1..N of length k, letters replaced by integer codes."""
    _, codes = np.unique(np.asarray(symbols), return_inverse=True)
    return np.lib.stride_tricks.sliding_window_view(codes, k)[:N]


def _class_counts(symbols: Sequence, k: int, N: int, exclusion: Optional[ExclusionSet] = None) -> np.ndarray:
    """Window counts of every k-block class over windows 1..N."""
    rows = _window_matrix(symbols, k, N)
    if exclusion is not None:
        keep = np.array([j not in exclusion for j in range(1, N + 1)], dtype=bool)
        rows = rows[keep]
    if len(rows) == 0:
        return np.zeros(0, dtype=np.int64)
    return np.unique(rows, axis=0, return_counts=True)[1]


def distinct_blocks(seq, k: int, N: int, exclusion: Optional[ExclusionSet] = None) -> int:
    """|B_k(w; A)|: distinct k-blocks among windows in [1, N] outside A."""
    if k < 1:
        raise BadParams(f"block length must be >= 1, got {k}")
    stats = CylinderStats.from_symbols(symbols_of(seq, N + k - 1), k, exclusion=exclusion)
    return len(stats.counts)


def p_eps_from_counts(counts: Sequence[int], budget: int) -> int:
    """Block classes left after excluding the rarest whole classes within budget."""
    spent = 0
    removed = 0
    for c in sorted(counts):
        if spent + c > budget:
            break
        spent += c
        removed += 1
    return len(counts) - removed


def p_eps(seq, k: int, eps, N: int) -> int:
    """Excluded-density complexity with budget floor(eps * N) windows."""
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise BadParams(f"eps must lie in [0, 1], got {eps}")
    if k < 1:
        raise BadParams(f"block length must be >= 1, got {k}")
    counts = _class_counts(symbols_of(seq, N + k - 1), k, N)
    return p_eps_from_counts(counts.tolist(), math.floor(eps * N))


def block_entropy(seq, k: int, N: int) -> BlockEntropy:
    """Empirical entropy of the k-block distribution over windows 1..N, in nats."""
    if k < 1:
        raise BadParams(f"block length must be >= 1, got {k}")
    counts = _class_counts(symbols_of(seq, N + k - 1), k, N)
    freqs = counts / counts.sum()
    entropy = float(-(freqs * np.log(freqs)).sum())
    return BlockEntropy(
        k=k, N=N, entropy=entropy, entropy_bits=entropy / math.log(2),
        slope=entropy / k, distinct=len(counts), sparsity=len(counts) / N,
    )


def letter_densities(seq, N: int) -> Dict:
    """Density of each letter in the first N terms."""
    counts = Counter(symbols_of(seq, N))
    return {letter: Fraction(c, N) for letter, c in sorted(counts.items())}


def letter_entropy(densities: Dict) -> float:
    """Partial sum of -d log d over the observed letters."""
    d = np.array([float(v) for v in densities.values() if v > 0])
    return float(-(d * np.log(d)).sum())


# =============================================================================
# DETERMINISM
# =============================================================================

def determinism_check(
    seq,
    N: int,
    eps_values: Optional[Sequence] = None,
    k_values: Optional[Sequence[int]] = None,
    config: Optional[AnalysisConfig] = None
) -> ComplexityReport:
    """
    Check the two determinism conditions on a prefix of length N.

    (i) For every eps, min over reliable k of log(p_eps(k))/k drops below eps.
    (ii) The letter-entropy partial sum is stable between N/2 and N.

    Args:
        seq: BasicSequence or explicit symbol list
        N: Prefix length
        eps_values: Exclusion budgets (config.eps_values by default)
        k_values: Block lengths (config.k_values by default)
        config: Analysis configuration

    Returns:
        ComplexityReport with the profile table and both verdicts
    """
    config = config or AnalysisConfig()
    eps_values = config.eps_fractions() if eps_values is None else [Fraction(e) for e in eps_values]
    k_values = list(config.k_values if k_values is None else k_values)
    if N < 2 or not k_values or min(k_values) < 1:
        raise BadParams("need N >= 2 and block lengths >= 1")
    k_values = [k for k in k_values if k <= N // 2]
    if not k_values:
        raise BadParams(f"every block length exceeds N/2 = {N // 2}")

    symbols = symbols_of(seq, N + max(k_values) - 1)
    report = ComplexityReport(N=N, eps_values=eps_values, k_values=k_values)

    rates: Dict[Fraction, List[float]] = {eps: [] for eps in eps_values}
    for k in k_values:
        counts = _class_counts(symbols, k, N).tolist()
        reliable = len(counts) < N / 8
        for eps in [Fraction(0)] + eps_values:
            p = p_eps_from_counts(counts, math.floor(eps * N))
            rate = (math.log(p) / k if p > 1 else 0.0) if reliable else None
            report.table.append(ComplexityRow(k=k, eps=eps, p_eps=p, rate=rate))
            if rate is not None and eps in rates:
                rates[eps].append(rate)
        report.entropies.append(block_entropy(symbols, k, N))

    report.min_rate = {eps: (min(r) if r else None) for eps, r in rates.items()}
    report.condition_i = all(r is not None and r < eps for eps, r in report.min_rate.items())

    half = N // 2
    densities = letter_densities(symbols, N)
    report.letter_densities = densities
    report.letter_entropy = letter_entropy(densities)
    report.letter_entropy_half = letter_entropy(letter_densities(symbols, half))
    drift = abs(report.letter_entropy - report.letter_entropy_half)
    report.condition_ii = drift <= float(config.fraction("stability_tolerance"))

    late = set(densities) - set(symbols[:half])
    report.unseen_letter_caveat = (
        f"partial sum over {len(densities)} letters seen in the first {N} terms; "
        f"{len(late)} of them first appear after term {half}, and unseen letters are not counted"
    )
    report.mean_log_q = log_integral(symbols, N=N, config=config).mean if _all_bases(symbols[:N]) else 0.0

    if report.condition_i and report.condition_ii:
        report.verdict = DeterminismVerdict.DETERMINISTIC
    else:
        report.verdict = DeterminismVerdict.POSITIVE_ENTROPY
    return report


def _all_bases(symbols: Sequence) -> bool:
    return all(isinstance(s, (int, np.integer)) and s >= 2 for s in symbols)


# =============================================================================
# LOG-INTEGRAL
# =============================================================================

def log_integral(seq, base: Optional[int] = None, N: int = 2, config: Optional[AnalysisConfig] = None) -> LogIntegral:
    """Mean of log q_n over the first N terms, with the N/2 drift diagnostic.

    The exact value is also returned as a sympy expression when the prefix uses
    at most config.symbolic_term_limit distinct bases.
    """
    config = config or AnalysisConfig()
    if N < 2:
        raise BadParams(f"N must be >= 2, got {N}")
    if base is not None and base < 2:
        raise BadParams(f"log base must be >= 2, got {base}")
    bases = symbols_of(seq, N)
    logs = np.array([math.log(q) for q in bases])
    if base is not None:
        logs = logs / math.log(base)
    mean = float(logs.mean())
    half_mean = float(logs[:N // 2].mean())
    drift = mean - half_mean

    counts = Counter(bases)
    symbolic = None
    if len(counts) <= config.symbolic_term_limit:
        symbolic = sum(
            (sympy.Rational(c, N) * (sympy.log(q) if base is None else sympy.log(q, base))
             for q, c in sorted(counts.items())),
            sympy.Integer(0),
        )

    return LogIntegral(
        N=N, base=base, mean=mean, half_mean=half_mean, drift=drift,
        drifting=abs(drift) > float(config.fraction("stability_tolerance")) * max(1.0, abs(mean)),
        symbolic=symbolic,
    )
