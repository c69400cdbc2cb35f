"""Executable counterexample constructions and the base-G to Q rebase.

Each builder returns a ConstructionResult holding a basic-sequence prefix, the
Q-digits of the constructed number over that prefix, the parameters used and
the limiting statistics the construction is designed to exhibit. Builders are
pure functions of their arguments and seed.
"""
import itertools
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .distribution import gpower_exponent
from .errors import BadParams, InadmissibleDigit, MismatchedRadix, SourceExhausted
from .generators import (
    IntegerWeightSampler, SplitMix64, concatenation_stream, dyadic_thresholds, integer_digits,
)
from .models import ConstructionResult, block_product


def champernowne_digits(base: int = 4) -> Iterator[int]:
    """Digits of 0.1 2 3 10 11 ... written in the given base."""
    if base < 2:
        raise BadParams(f"base must be >= 2, got {base}")
    return concatenation_stream("champernowne", base)


def _take(source: Iterable[int], count: int, base: int, what: str) -> List[int]:
    digits = list(itertools.islice(iter(source), count))
    if len(digits) < count:
        raise SourceExhausted(f"{what} ended after {len(digits)} digits, {count} needed")
    for i, d in enumerate(digits, 1):
        if not 0 <= d < base:
            raise InadmissibleDigit(f"{what} digit {i} = {d} is not in [0, {base})")
    return digits


def _step_observations(steps: Sequence[int], N: int) -> dict:
    M = sum(steps)
    return {
        "M": M,
        "M/N": Fraction(M, N),
        "M(N/2)/(N/2)": Fraction(sum(steps[:N // 2]), N // 2) if N >= 2 else None,
        "steps": sorted(set(steps)),
    }


# =============================================================================
# BASE-4 DRIVEN CONSTRUCTIONS
# =============================================================================

def build_ex31(N: int, y4: Optional[Iterable[int]] = None) -> ConstructionResult:
    """
    Split every base-4 digit d of y in {2, 3} into two base-2 positions.

    Base-4 digit d >= 2 becomes bases (2, 2) with digits (1, d - 2), so the
    digits 2 and 3 never occur although base 4 keeps positive density.

    Args:
        N: Number of base-4 digits of y consumed
        y4: Base-4 digit source (base-4 Champernowne by default)

    Returns:
        ConstructionResult with M(N) = len(bases)
    """
    if N < 1:
        raise BadParams(f"N must be >= 1, got {N}")
    source = "champernowne-4" if y4 is None else "custom"
    y = _take(champernowne_digits(4) if y4 is None else y4, N, 4, "base-4 source")

    bases, digits, steps = [], [], []
    for d in y:
        if d >= 2:
            bases += [2, 2]
            digits += [1, d - 2]
            steps.append(2)
        else:
            bases.append(4)
            digits.append(d)
            steps.append(1)

    return ConstructionResult(
        name="ex31",
        bases=bases,
        digits=digits,
        parameters={"N": N, "y4": source},
        targets={
            "M/N": Fraction(3, 2), "N_n((2))": Fraction(0), "N_n((3))": Fraction(0),
            "star discrepancy": Fraction(0),
        },
        observations=_step_observations(steps, N),
    )


def build_ex32(N: int, y4: Optional[Iterable[int]] = None, C=None) -> ConstructionResult:
    """Split base-4 digit 1 of y into bases (2, 2) with digits (0, 1).

    With C in (1, 5/4) a split happens only while M < C n, which moves the
    orbit density on [0, 1/2) from 4/5 to 1/C.
    """
    if N < 1:
        raise BadParams(f"N must be >= 1, got {N}")
    if C is not None:
        C = Fraction(C)
        if not 1 < C < Fraction(5, 4):
            raise BadParams(f"C must lie in (1, 5/4), got {C}")
    source = "champernowne-4" if y4 is None else "custom"
    y = _take(champernowne_digits(4) if y4 is None else y4, N, 4, "base-4 source")

    bases, digits, steps = [], [], []
    for n, d in enumerate(y, 1):
        split = d == 1 and (C is None or len(bases) < C * n)
        if split:
            bases += [2, 2]
            digits += [0, 1]
            steps.append(2)
        else:
            bases.append(4)
            digits.append(d)
            steps.append(1)

    if C is None:
        low_density = Fraction(4, 5)
        growth = Fraction(5, 4)
    else:
        low_density = 1 / C
        growth = C
    targets = {
        "M/N": growth,
        "density [0,1/2)": low_density,
        "density [1/2,1)": 2 - low_density,
        "mass [0,1/2)": low_density / 2,
    }
    return ConstructionResult(
        name="ex32",
        bases=bases,
        digits=digits,
        parameters={"N": N, "y4": source, "C": C},
        targets=targets,
        observations=_step_observations(steps, N),
    )


# =============================================================================
# RANDOM CONSTRUCTIONS
# =============================================================================

def _biased_laws(q: int, shift: Fraction) -> List[int]:
    """Thresholds for P(0) = 1/q + shift, P(1) = 1/q - shift, others 1/q."""
    weights = [Fraction(1, q)] * q
    weights[0] += shift
    weights[1] -= shift
    return dyadic_thresholds(weights)


def build_ex35(a: int, b: int, eps, N: int, seed: int = 0) -> ConstructionResult:
    """
    Bases i.i.d. uniform on {a, b}; digits 0 and 1 biased by +eps / -eps in base a
    and by -eps / +eps in base b, all other digits uniform.

    The bias cancels in the single-digit counts but pushes the orbit toward
    [0, 1/a), whose frequency becomes 1/a + eps/2 when a divides b.
    """
    eps = Fraction(eps)
    if not 2 <= a < b:
        raise BadParams(f"need 2 <= a < b, got a={a}, b={b}")
    if not 0 <= eps <= Fraction(1, b):
        raise BadParams(f"eps must lie in [0, 1/b] = [0, 1/{b}], got {eps}")
    if N < 1:
        raise BadParams(f"N must be >= 1, got {N}")

    rng = SplitMix64(seed)
    laws = {a: _biased_laws(a, eps), b: _biased_laws(b, -eps)}
    bases, digits = [], []
    for _ in range(N):
        q = (a, b)[rng.below(2)]
        bases.append(q)
        digits.append(rng.choose(laws[q]))

    targets = {
        "digit 0": Fraction(a + b, 2 * a * b),
        "digit 1": Fraction(a + b, 2 * a * b),
    }
    if b % a == 0:
        targets[f"orbit [0,1/{a})"] = Fraction(1, a) + eps / 2
    return ConstructionResult(
        name="ex35",
        bases=bases,
        digits=digits,
        parameters={"a": a, "b": b, "eps": eps, "N": N, "seed": seed},
        targets=targets,
        observations={"digit 0": Fraction(digits.count(0), N), "digit 1": Fraction(digits.count(1), N)},
    )


def exponent_sampler(k_max: int) -> IntegerWeightSampler:
    """P(a = k) proportional to floor(2^64 / k^2) for k = 1..k_max."""
    if k_max < 1:
        raise BadParams(f"k_max must be >= 1, got {k_max}")
    return IntegerWeightSampler([(1 << 64) // (k * k) for k in range(1, k_max + 1)])


def _uniform_gpower_digit(rng: SplitMix64, g: int, e: int) -> int:
    """A uniform digit in [0, g^e) drawn as e base-g digits."""
    value = 0
    for _ in range(e):
        value = value * g + rng.below(g)
    return value


def to_base_g_digits(digits: Sequence[int], bases: Sequence[int], g: int) -> List[int]:
    """Write each Q-digit over a base g^e as its e base-g digits."""
    out: List[int] = []
    for i, (d, q) in enumerate(zip(digits, bases), 1):
        e = gpower_exponent(q, g)
        if not 0 <= d < q:
            raise InadmissibleDigit(f"digit x_{i} = {d} is not in [0, {q})")
        rendered = integer_digits(d, g)
        out += [0] * (e - len(rendered)) + rendered
    return out


def _zero_tally(digits: Sequence[int], bases: Sequence[int], g: int) -> Tuple[int, int]:
    """Zeros and nonzero digits of the base-g rendering."""
    rendered = to_base_g_digits(digits, bases, g)
    zeros = rendered.count(0)
    return zeros, len(rendered) - zeros


def _share_of(exponents: Sequence[int], value: int) -> Fraction:
    """Fraction of base-g positions carried by terms with exponent `value`."""
    return Fraction(sum(e for e in exponents if e == value), sum(exponents))


def build_ex36(g: int, N: int, variant: str = "i", seed: int = 0, k_max: int = 65536) -> ConstructionResult:
    """
    g-power bases q_m = g^{a_m} with heavy-tailed exponents.

    Variant "i" zeroes every Q-digit whose exponent equals a_1; the base-g
    rendering stays g-normal-looking while the number is not Q-normal.
    Variant "ii" draws uniform Q-digits and zeroes the digits at bases first
    seen after each checkpoint N_m, until the base-g prefix carries more
    than m zeros per nonzero digit.

    Args:
        g: Base of the powers
        N: Number of Q terms
        variant: "i" or "ii"
        seed: Seed of the SplitMix64 stream
        k_max: Truncation of the exponent law

    Returns:
        ConstructionResult; bases are g^a_m
    """
    if g < 2:
        raise BadParams(f"g must be >= 2, got {g}")
    if N < 2:
        raise BadParams(f"N must be >= 2, got {N}")
    if variant not in ("i", "ii"):
        raise BadParams(f"Unknown variant: {variant}")

    rng = SplitMix64(seed)
    sampler = exponent_sampler(k_max)
    exponents = [sampler.sample(rng) + 1 for _ in range(N)]
    bases = [g ** e for e in exponents]
    parameters = {"g": g, "N": N, "variant": variant, "seed": seed, "k_max": k_max}

    if variant == "i":
        first = exponents[0]
        digits = [0 if e == first else _uniform_gpower_digit(rng, g, e) for e in exponents]
        half = N // 2
        share = _share_of(exponents, first)
        share_half = _share_of(exponents[:half], first)
        return ConstructionResult(
            name="ex36i",
            bases=bases,
            digits=digits,
            parameters=parameters,
            targets={"digit 0 where a_m = a_1": Fraction(1), "share of a_1 positions": Fraction(0)},
            observations={
                "a_1": first,
                "share of a_1 positions": share,
                "share of a_1 positions at N/2": share_half,
                "share decreasing": share <= share_half,
                "max exponent": max(exponents),
            },
        )

    digits = [_uniform_gpower_digit(rng, g, e) for e in exponents]
    checkpoints = []
    seen = {bases[0]}
    start = 1  # N_1 = 1, 0-based index of the first term after the checkpoint
    m = 1
    # base-g digit tallies over the finished prefix [0, start)
    zeros, nonzero = _zero_tally(digits[:1], bases[:1], g)
    while start < N:
        # masses run over the whole prefix; every term before start has a seen base
        old_mass = sum(exponents[:start])
        new_mass = 0
        end = None
        for i in range(start, N):
            if bases[i] in seen:
                old_mass += exponents[i]
            else:
                new_mass += exponents[i]
            if new_mass and old_mass * m < new_mass:
                end = i + 1
                break
        if end is None:
            break
        for i in range(start, end):
            if bases[i] not in seen:
                digits[i] = 0
        window_zeros, window_nonzero = _zero_tally(digits[start:end], bases[start:end], g)
        zeros += window_zeros
        nonzero += window_nonzero
        checkpoints.append({"m": m, "N_m": start, "N_m+1": end, "zeros": zeros, "nonzero": nonzero,
                            "zeros > m * nonzero": zeros > m * nonzero})
        seen.update(bases[:end])
        start = end
        m += 1

    return ConstructionResult(
        name="ex36ii",
        bases=bases,
        digits=digits,
        parameters=parameters,
        targets={"zeros / nonzero at checkpoint m": Fraction(0)},
        observations={"checkpoints": checkpoints, "max exponent": max(exponents)},
    )


# =============================================================================
# REBASE
# =============================================================================

def rebase(source_digits: Iterable[int], G: int, pattern: Sequence[int]) -> List[int]:
    """Rewrite base-G digits as Q-digits for the periodic Q repeating `pattern`.

    Each digit d becomes the mixed-radix tuple with the same value d/G, which
    requires the product of the pattern to equal G.
    """
    pattern = [int(b) for b in pattern]
    if not pattern or any(b < 2 for b in pattern):
        raise BadParams(f"pattern needs bases >= 2, got {pattern}")
    if block_product(pattern) != G:
        raise MismatchedRadix(f"pattern {tuple(pattern)} has product {block_product(pattern)}, not {G}")

    out: List[int] = []
    for i, d in enumerate(source_digits, 1):
        if not 0 <= d < G:
            raise InadmissibleDigit(f"base-{G} digit {i} = {d} is not in [0, {G})")
        block = []
        for b in reversed(pattern):
            d, r = divmod(d, b)
            block.append(r)
        out += block[::-1]
    return out
