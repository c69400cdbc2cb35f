"""Basic sequence generators.

Every GeneratorSpec variant maps to an infinite stream of bases q_1, q_2, ...
BasicSequence buffers that stream so prefixes can be re-read and extended
deterministically. Dynamical models driven by an irrational rotation use an
exact rational convergent p/q, valid for n < q/2.
"""
import bisect
import itertools
import json
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Union

import numpy as np
from sympy import sieve

from .errors import (
    BadParams, HorizonExceeded, InvalidSpec, NotExtendable, NotGrowing,
    NotPrimitive, SourceExhausted,
)
from .models import (
    CONCATENATION_KINDS, Bernoulli, Concatenation, CylinderStats, DoublingCoding,
    DynamicGenerationReport, DynamicGenerationRow, ExclusionSet, FileSource,
    GeneratorSpec, GrowingBlocks, NilCoding, NonErgodicWord, Periodic,
    RotationCoding, SquarePositions, Substitution, Verdict,
)

MASK64 = (1 << 64) - 1
SCHEMA_VERSION = 1


# =============================================================================
# SEEDED RANDOMNESS
# =============================================================================

class SplitMix64:
    """SplitMix64 generator; identical streams in any language for a given seed."""

    GAMMA = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * self.MIX1) & MASK64
        z = ((z ^ (z >> 27)) * self.MIX2) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Exactly uniform integer in [0, n), by rejection over 64-bit words."""
        if n < 1:
            raise BadParams(f"below() needs n >= 1, got {n}")
        if n == 1:
            return 0
        words = (n.bit_length() + 63) // 64
        span = 1 << (64 * words)
        limit = span - span % n
        while True:
            r = 0
            for _ in range(words):
                r = (r << 64) | self.next_u64()
            if r < limit:
                return r % n

    def choose(self, thresholds: Sequence[int]) -> int:
        """Index i with t_i <= U < t_{i+1} for one 64-bit draw U."""
        return bisect.bisect_right(thresholds, self.next_u64())


def dyadic_thresholds(weights: Sequence[Fraction]) -> List[int]:
    """Cut points ceil(c_i * 2^64) of the cumulative weights c_1..c_{m-1}.

    A draw U/2^64 falls below c_i exactly when U < ceil(c_i * 2^64).
    """
    thresholds = []
    cumulative = Fraction(0)
    for w in weights[:-1]:
        cumulative += Fraction(w)
        thresholds.append(-((-cumulative.numerator << 64) // cumulative.denominator))
    return thresholds


class IntegerWeightSampler:
    """Exact sampling proportional to positive integer weights."""

    def __init__(self, weights: Sequence[int]):
        if not weights or any(w < 0 for w in weights) or sum(weights) == 0:
            raise BadParams("weights must be non-negative with a positive total")
        self.cumulative = list(itertools.accumulate(weights))
        self.total = self.cumulative[-1]

    def sample(self, rng: SplitMix64) -> int:
        return bisect.bisect_right(self.cumulative, rng.below(self.total))


# =============================================================================
# CONTINUED FRACTIONS AND PRESET ROTATIONS
# =============================================================================

def continued_fraction(p: int, q: int) -> List[int]:
    """Partial quotients of p/q by the Euclidean algorithm; the last one is never 1."""
    if q <= 0:
        raise BadParams(f"denominator must be positive, got {q}")
    coeffs = []
    while q:
        a, r = divmod(p, q)
        coeffs.append(a)
        p, q = q, r
    if len(coeffs) > 1 and coeffs[-1] == 1:
        coeffs.pop()
        coeffs[-1] += 1
    return coeffs


def convergents(coeffs: Iterable[int]) -> Iterator[Fraction]:
    """Convergents h_n/k_n of [a_0; a_1, a_2, ...] via the continuant recurrence."""
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    for a in coeffs:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield Fraction(h, k)


def first_convergent_beyond(coeffs: Iterable[int], bound: int) -> Fraction:
    """First convergent whose denominator exceeds bound."""
    for c in convergents(coeffs):
        if c.denominator > bound:
            return c
    raise BadParams("continued fraction ended before reaching the bound")


# Stand-ins for the golden ratio conjugate and sqrt(2)-1, denominators > 10^17
GOLDEN_ALPHA = first_convergent_beyond(itertools.chain([0], itertools.repeat(1)), 10**17)
SQRT2_ALPHA = first_convergent_beyond(itertools.chain([0], itertools.repeat(2)), 10**17)


def sturmian_cells(alpha: Fraction, bases=(2, 3)):
    """Two cells split at 1 - alpha, giving a Sturmian coding."""
    cut = 1 - alpha
    return ((Fraction(0), cut, bases[0]), (cut, Fraction(1), bases[1]))


PRESETS: Dict[str, Callable[[], GeneratorSpec]] = {
    "periodic-23": lambda: Periodic((2, 3)),
    "fibonacci": lambda: Substitution(("a", "b"), {"a": "ab", "b": "bab"}, {"a": 2, "b": 3}, "a"),
    "thue-morse": lambda: Substitution(("a", "b"), {"a": "ab", "b": "ba"}, {"a": 2, "b": 3}, "a"),
    "rudin-shapiro": lambda: Substitution(
        ("a", "b", "c", "d"),
        {"a": "ab", "b": "ac", "c": "db", "d": "dc"},
        {"a": 2, "b": 3, "c": 4, "d": 5},
        "a",
    ),
    "champernowne": lambda: Concatenation("champernowne", 10, 2),
    "squares": lambda: Concatenation("squares", 10, 2),
    "primes": lambda: Concatenation("primes", 10, 2),
    "aks": lambda: Concatenation("aks", 10, 1),
    "golden-rotation": lambda: RotationCoding(GOLDEN_ALPHA, sturmian_cells(GOLDEN_ALPHA)),
    "sqrt2-rotation": lambda: RotationCoding(SQRT2_ALPHA, sturmian_cells(SQRT2_ALPHA)),
    "nil": lambda: NilCoding(GOLDEN_ALPHA, (2, 3)),
    "bernoulli-23": lambda: Bernoulli((2, 3), (Fraction(1, 2), Fraction(1, 2)), 0),
    "nonergodic": lambda: NonErgodicWord(),
    "square-positions": lambda: SquarePositions(2, 3),
    "growing-blocks": lambda: GrowingBlocks((2, 3)),
    "doubling": lambda: DoublingCoding(),
}


def preset(name: str) -> GeneratorSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise InvalidSpec(f"Unknown preset: {name} (known: {', '.join(sorted(PRESETS))})")


# =============================================================================
# SPEC VALIDATION AND SERIALIZATION
# =============================================================================

def _check_partition(cells, what: str) -> None:
    if not cells:
        raise InvalidSpec(f"{what}: no cells")
    ordered = sorted(cells, key=lambda c: c[0])
    edge = Fraction(0)
    for lo, hi, base in ordered:
        if lo != edge or not lo < hi:
            raise InvalidSpec(f"{what}: cells do not partition [0,1) near {edge}")
        if base < 2:
            raise InvalidSpec(f"{what}: base {base} < 2")
        edge = hi
    if edge != 1:
        raise InvalidSpec(f"{what}: cells end at {edge}, not 1")


def dyadic_level(cells) -> int:
    level = 0
    for lo, hi, _ in cells:
        for x in (lo, hi):
            den = Fraction(x).denominator
            if den & (den - 1):
                raise InvalidSpec(f"doubling cells need dyadic endpoints, got {x}")
            level = max(level, den.bit_length() - 1)
    return level


def validate_spec(spec: GeneratorSpec) -> None:
    """Raise InvalidSpec when a spec cannot produce a valid basic sequence."""
    if isinstance(spec, Periodic):
        if not spec.pattern:
            raise InvalidSpec("periodic pattern is empty")
        if any(int(b) < 2 for b in spec.pattern):
            raise InvalidSpec(f"periodic pattern has a base < 2: {tuple(spec.pattern)}")
    elif isinstance(spec, RotationCoding):
        if not 0 < spec.alpha < 1:
            raise InvalidSpec(f"alpha must lie in (0,1), got {spec.alpha}")
        _check_partition(spec.cells, "rotation coding")
    elif isinstance(spec, NilCoding):
        if not 0 < spec.alpha < 1:
            raise InvalidSpec(f"alpha must lie in (0,1), got {spec.alpha}")
        if len(spec.bases) != 2 or min(spec.bases) < 2:
            raise InvalidSpec(f"nil coding needs two bases >= 2, got {spec.bases}")
    elif isinstance(spec, Substitution):
        letters = set(spec.alphabet)
        if spec.start not in letters:
            raise InvalidSpec(f"start letter {spec.start!r} not in alphabet")
        for letter in letters:
            word = spec.rules.get(letter)
            if not word:
                raise InvalidSpec(f"letter {letter!r} has no nonempty image")
            if not set(word) <= letters:
                raise InvalidSpec(f"image of {letter!r} uses letters outside the alphabet")
            if spec.base_of.get(letter, 0) < 2:
                raise InvalidSpec(f"letter {letter!r} needs a base >= 2")
    elif isinstance(spec, Concatenation):
        if spec.kind not in CONCATENATION_KINDS:
            raise InvalidSpec(f"Unknown concatenation kind: {spec.kind}")
        if spec.g < 2:
            raise InvalidSpec(f"g must be >= 2, got {spec.g}")
        smallest = 1 if spec.kind == "aks" else 0
        if smallest + spec.digit_offset < 2:
            raise InvalidSpec(f"offset {spec.digit_offset} maps digit {smallest} below base 2")
    elif isinstance(spec, Bernoulli):
        if not spec.alphabet or len(spec.alphabet) != len(spec.weights):
            raise InvalidSpec("bernoulli alphabet and weights must be nonempty and equally long")
        if any(b < 2 for b in spec.alphabet):
            raise InvalidSpec(f"bernoulli alphabet has a base < 2: {spec.alphabet}")
        weights = [Fraction(w) for w in spec.weights]
        if any(w <= 0 for w in weights) or sum(weights) != 1:
            raise InvalidSpec(f"bernoulli weights must be positive and sum to 1, got {weights}")
    elif isinstance(spec, NonErgodicWord):
        if any(spec.base_of.get(c, 0) < 2 for c in "abc"):
            raise InvalidSpec("non-ergodic word needs bases >= 2 for a, b, c")
    elif isinstance(spec, FileSource):
        if not spec.path:
            raise InvalidSpec("file source needs a path")
    elif isinstance(spec, SquarePositions):
        if min(spec.base, spec.square_base) < 2:
            raise InvalidSpec("square-positions bases must be >= 2")
    elif isinstance(spec, GrowingBlocks):
        if len(spec.bases) != 2 or min(spec.bases) < 2:
            raise InvalidSpec("growing blocks need two bases >= 2")
    elif isinstance(spec, DoublingCoding):
        _check_partition(spec.cells, "doubling coding")
        dyadic_level(spec.cells)
    else:
        raise InvalidSpec(f"Unknown generator spec: {type(spec).__name__}")


def _frac(value) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise InvalidSpec(f"not a rational: {value!r}")


def _cells_from(raw) -> tuple:
    try:
        return tuple((_frac(lo), _frac(hi), int(base)) for lo, hi, base in raw)
    except (TypeError, ValueError):
        raise InvalidSpec(f"cells must be [lo, hi, base] triples, got {raw!r}")


def spec_from_dict(data: dict) -> GeneratorSpec:
    """Build and validate a GeneratorSpec from its JSON form."""
    if not isinstance(data, dict) or "type" not in data:
        raise InvalidSpec("generator spec must be an object with a 'type'")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise InvalidSpec(f"unsupported schema_version {version}")

    kind = data["type"]
    try:
        if kind == "preset":
            spec = preset(data["name"])
        elif kind == "periodic":
            spec = Periodic(tuple(int(b) for b in data["pattern"]))
        elif kind == "rotation":
            spec = RotationCoding(_frac(data["alpha"]), _cells_from(data["cells"]))
        elif kind == "nil":
            spec = NilCoding(_frac(data["alpha"]), tuple(int(b) for b in data.get("bases", (2, 3))))
        elif kind == "substitution":
            spec = Substitution(
                tuple(data["alphabet"]),
                dict(data["rules"]),
                {k: int(v) for k, v in data["base_of"].items()},
                data["start"],
            )
        elif kind == "concatenation":
            spec = Concatenation(data["kind"], int(data.get("g", 10)), int(data.get("digit_offset", 2)))
        elif kind == "bernoulli":
            spec = Bernoulli(
                tuple(int(b) for b in data["alphabet"]),
                tuple(_frac(w) for w in data["weights"]),
                int(data.get("seed", 0)),
            )
        elif kind == "nonergodic":
            spec = NonErgodicWord({k: int(v) for k, v in data.get("base_of", {"a": 2, "b": 3, "c": 4}).items()})
        elif kind == "file":
            spec = FileSource(data["path"])
        elif kind == "square-positions":
            spec = SquarePositions(int(data.get("base", 2)), int(data.get("square_base", 3)))
        elif kind == "growing-blocks":
            spec = GrowingBlocks(tuple(int(b) for b in data.get("bases", (2, 3))))
        elif kind == "doubling":
            spec = DoublingCoding(
                _cells_from(data["cells"]) if "cells" in data else DoublingCoding().cells,
                data.get("source", "champernowne"),
            )
        else:
            raise InvalidSpec(f"Unknown generator type: {kind}")
    except KeyError as e:
        raise InvalidSpec(f"generator type {kind!r} is missing field {e}")

    validate_spec(spec)
    return spec


def _cells_to(cells) -> list:
    return [[str(lo), str(hi), base] for lo, hi, base in cells]


def spec_to_dict(spec: GeneratorSpec) -> dict:
    """JSON form of a GeneratorSpec; rationals are written as "p/q"."""
    if isinstance(spec, Periodic):
        body = {"type": "periodic", "pattern": list(spec.pattern)}
    elif isinstance(spec, RotationCoding):
        body = {"type": "rotation", "alpha": str(spec.alpha), "cells": _cells_to(spec.cells)}
    elif isinstance(spec, NilCoding):
        body = {"type": "nil", "alpha": str(spec.alpha), "bases": list(spec.bases)}
    elif isinstance(spec, Substitution):
        body = {
            "type": "substitution", "alphabet": list(spec.alphabet), "rules": dict(spec.rules),
            "base_of": dict(spec.base_of), "start": spec.start,
        }
    elif isinstance(spec, Concatenation):
        body = {"type": "concatenation", "kind": spec.kind, "g": spec.g, "digit_offset": spec.digit_offset}
    elif isinstance(spec, Bernoulli):
        body = {
            "type": "bernoulli", "alphabet": list(spec.alphabet),
            "weights": [str(Fraction(w)) for w in spec.weights], "seed": spec.seed,
        }
    elif isinstance(spec, NonErgodicWord):
        body = {"type": "nonergodic", "base_of": dict(spec.base_of)}
    elif isinstance(spec, FileSource):
        body = {"type": "file", "path": spec.path}
    elif isinstance(spec, SquarePositions):
        body = {"type": "square-positions", "base": spec.base, "square_base": spec.square_base}
    elif isinstance(spec, GrowingBlocks):
        body = {"type": "growing-blocks", "bases": list(spec.bases)}
    elif isinstance(spec, DoublingCoding):
        body = {"type": "doubling", "cells": _cells_to(spec.cells), "source": spec.source}
    else:
        raise InvalidSpec(f"Unknown generator spec: {type(spec).__name__}")
    return {"schema_version": SCHEMA_VERSION, **body}


def load_spec(source: str) -> GeneratorSpec:
    """A preset name, or the path of a JSON GeneratorSpec file."""
    if source in PRESETS:
        return preset(source)
    try:
        with open(source, 'r') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise InvalidSpec(f"Unknown preset or missing spec file: {source}")
    except json.JSONDecodeError as e:
        raise InvalidSpec(f"{source}: invalid JSON: {e}")
    return spec_from_dict(data)


# =============================================================================
# SUBSTITUTIONS
# =============================================================================

def check_substitution(rules: Dict[str, str], start: str, t_max: int = 16) -> None:
    """Check growth, extendability and primitivity, in that order.

    Growth is required in the strict sense |psi(a)| >= 2 for every letter, so
    every iterate is strictly longer than the previous one.
    """
    alphabet = sorted(rules)
    short = [a for a in alphabet if len(rules[a]) < 2]
    if short:
        raise NotGrowing(f"letters {short} map to words of length < 2; square the substitution")
    if not rules[start].startswith(start):
        raise NotExtendable(f"psi({start}) = {rules[start]!r} does not start with {start!r}")

    index = {a: i for i, a in enumerate(alphabet)}
    incidence = np.zeros((len(alphabet), len(alphabet)), dtype=np.int64)
    for a in alphabet:
        for b in rules[a]:
            incidence[index[a], index[b]] = 1

    power = incidence.copy()
    for _ in range(t_max):
        if power.all():
            return
        power = (power @ incidence > 0).astype(np.int64)
    raise NotPrimitive(f"no power up to t_max={t_max} of the substitution reaches every letter")


def _fixed_point_letters(rules: Dict[str, str], start: str) -> Iterator[str]:
    """Stream psi^infinity(start) by expanding the word behind a read pointer."""
    word = list(rules[start])
    expanded = 1  # word[:expanded] has been substituted into word
    pos = 0
    while True:
        while pos >= len(word):
            word.extend(rules[word[expanded]])
            expanded += 1
        yield word[pos]
        pos += 1


def substitution_fixed_point(rules: Dict[str, str], start: str, length: int, t_max: int = 16) -> str:
    """First `length` letters of the fixed point of a substitution."""
    check_substitution(rules, start, t_max)
    return "".join(itertools.islice(_fixed_point_letters(rules, start), length))


# =============================================================================
# CONCATENATION STREAMS
# =============================================================================

def integer_digits(m: int, g: int) -> List[int]:
    """Base-g digits of m >= 0, most significant first."""
    if m == 0:
        return [0]
    digits = []
    while m:
        m, d = divmod(m, g)
        digits.append(d)
    return digits[::-1]


def _primes() -> Iterator[int]:
    lo, hi = 2, 1 << 12
    while True:
        yield from sieve.primerange(lo, hi)
        lo, hi = hi, hi * 2


def concatenation_stream(kind: str, g: int = 10) -> Iterator[int]:
    """Infinite digit stream of a concatenation; aks yields partial quotients."""
    if kind == "champernowne":
        for m in itertools.count(1):
            yield from integer_digits(m, g)
    elif kind == "squares":
        for m in itertools.count(1):
            yield from integer_digits(m * m, g)
    elif kind == "primes":
        for p in _primes():
            yield from integer_digits(p, g)
    elif kind == "aks":
        # p/d for d = 2, 3, ... and p = 1..d-1, reduced or not; the leading 0 is dropped
        for d in itertools.count(2):
            for p in range(1, d):
                yield from continued_fraction(p, d)[1:]
    else:
        raise InvalidSpec(f"Unknown concatenation kind: {kind}")


def concatenation_digits(kind: str, g: int, count: int) -> List[int]:
    """Exact digit prefix of the Champernowne, squares, primes or AKS stream."""
    if g < 2:
        raise BadParams(f"g must be >= 2, got {g}")
    return list(itertools.islice(concatenation_stream(kind, g), count))


# =============================================================================
# STREAMS
# =============================================================================

def horizon(spec: GeneratorSpec) -> Optional[int]:
    """Largest n for which a rational rotation still emulates an irrational one."""
    if isinstance(spec, (RotationCoding, NilCoding)):
        return (spec.alpha.denominator - 1) // 2
    return None


def _ceil_times(x: Fraction, q: int) -> int:
    return -((-x.numerator * q) // x.denominator)


def _rotation_stream(spec: RotationCoding) -> Iterator[int]:
    p, q = spec.alpha.numerator, spec.alpha.denominator
    cells = sorted(spec.cells, key=lambda c: c[0])
    # r/q >= lo  <=>  r >= ceil(lo*q)
    thresholds = [_ceil_times(lo, q) for lo, _, _ in cells[1:]]
    bases = [base for _, _, base in cells]
    r = 0
    while True:
        r = (r + p) % q
        yield bases[bisect.bisect_right(thresholds, r)]


def _nil_stream(spec: NilCoding) -> Iterator[int]:
    p, q = spec.alpha.numerator, spec.alpha.denominator
    a, b = spec.bases
    for n in itertools.count(1):
        yield a if n * p % q >= (n * n % q) * p % q else b


def _bernoulli_stream(spec: Bernoulli) -> Iterator[int]:
    rng = SplitMix64(spec.seed)
    thresholds = dyadic_thresholds([Fraction(w) for w in spec.weights])
    alphabet = list(spec.alphabet)
    while True:
        yield alphabet[rng.choose(thresholds)]


def _nonergodic_stream(spec: NonErgodicWord) -> Iterator[int]:
    for n in itertools.count(1):
        for block in ("abc", "bac"):
            for _ in range(n):
                for letter in block:
                    yield spec.base_of[letter]


def read_int_stream(path: str) -> Iterator[int]:
    """Newline-separated decimal integers; blank lines are skipped."""
    with open(path, 'r') as f:
        for line_no, line in enumerate(f, 1):
            text = line.strip()
            if not text:
                continue
            try:
                yield int(text)
            except ValueError:
                raise InvalidSpec(f"{path}:{line_no}: not an integer: {text!r}")


def _file_stream(spec: FileSource) -> Iterator[int]:
    for value in read_int_stream(spec.path):
        if value < 2:
            raise InvalidSpec(f"{spec.path}: base {value} < 2")
        yield value


def _square_positions_stream(spec: SquarePositions) -> Iterator[int]:
    for n in itertools.count(1):
        yield spec.square_base if math.isqrt(n) ** 2 == n else spec.base


def _growing_blocks_stream(spec: GrowingBlocks) -> Iterator[int]:
    a, b = spec.bases
    for n in itertools.count(1):
        yield from itertools.repeat(a, n)
        yield from itertools.repeat(b, n)


def binary_source(source: str) -> Iterator[int]:
    """Base-2 digits of the point x driving a doubling-map coding."""
    if source == "champernowne":
        return concatenation_stream("champernowne", 2)
    return read_int_stream(source)


def _doubling_stream(spec: DoublingCoding) -> Iterator[int]:
    level = dyadic_level(spec.cells)
    cells = sorted(spec.cells, key=lambda c: c[0])
    table = []
    for v in range(1 << level):
        point = Fraction(v, 1 << level)
        table.append(next(base for lo, hi, base in cells if lo <= point < hi))

    bits = binary_source(spec.source)
    if level == 0:
        while True:
            yield table[0]

    mask = (1 << level) - 1
    next(bits)  # b_1 belongs to x itself; q_n reads b_{n+1}..b_{n+level}
    v = 0
    for _ in range(level):
        v = (v << 1) | next(bits)
    for bit in bits:
        yield table[v]
        v = ((v << 1) & mask) | bit


def base_stream(spec: GeneratorSpec, t_max: int = 16) -> Iterator[int]:
    """Infinite (or file-bounded) stream q_1, q_2, ... for a validated spec."""
    if isinstance(spec, Periodic):
        return itertools.cycle([int(b) for b in spec.pattern])
    if isinstance(spec, RotationCoding):
        return _rotation_stream(spec)
    if isinstance(spec, NilCoding):
        return _nil_stream(spec)
    if isinstance(spec, Substitution):
        check_substitution(spec.rules, spec.start, t_max)
        return (spec.base_of[c] for c in _fixed_point_letters(spec.rules, spec.start))
    if isinstance(spec, Concatenation):
        return (d + spec.digit_offset for d in concatenation_stream(spec.kind, spec.g))
    if isinstance(spec, Bernoulli):
        return _bernoulli_stream(spec)
    if isinstance(spec, NonErgodicWord):
        return _nonergodic_stream(spec)
    if isinstance(spec, FileSource):
        return _file_stream(spec)
    if isinstance(spec, SquarePositions):
        return _square_positions_stream(spec)
    if isinstance(spec, GrowingBlocks):
        return _growing_blocks_stream(spec)
    if isinstance(spec, DoublingCoding):
        return _doubling_stream(spec)
    raise InvalidSpec(f"Unknown generator spec: {type(spec).__name__}")


def tree_product(values: Sequence[int]) -> int:
    """Product of many integers by pairwise multiplication."""
    values = list(values)
    if not values:
        return 1
    while len(values) > 1:
        paired = [values[i] * values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            paired.append(values[-1])
        values = paired
    return values[0]


class BasicSequence:
    """Resumable stream of bases q_1, q_2, ... with exact prefix access."""

    def __init__(self, spec: Optional[GeneratorSpec], t_max: int = 16, _stream: Iterator[int] = None):
        self.spec = spec
        if _stream is None:
            validate_spec(spec)
            _stream = base_stream(spec, t_max)
        self._stream = _stream
        self._buffer: List[int] = []
        self._horizon = horizon(spec) if spec is not None else None
        self._products: Dict[int, int] = {0: 1}

    @classmethod
    def from_bases(cls, bases: Iterable[int]) -> 'BasicSequence':
        """A finite sequence given explicitly; reading past its end raises SourceExhausted."""
        bases = [int(b) for b in bases]
        if any(b < 2 for b in bases):
            raise InvalidSpec("every base must be >= 2")
        return cls(None, _stream=iter(bases))

    @property
    def cursor(self) -> int:
        """Number of bases produced so far."""
        return len(self._buffer)

    def extend_to(self, n: int) -> None:
        if n < 0:
            raise BadParams(f"n must be >= 0, got {n}")
        if self._horizon is not None and n > self._horizon:
            raise HorizonExceeded(
                f"{n} terms requested but the rational stand-in is valid only for n < q/2 "
                f"(at most {self._horizon} terms)"
            )
        need = n - len(self._buffer)
        if need > 0:
            chunk = list(itertools.islice(self._stream, need))
            self._buffer.extend(chunk)
            if len(chunk) < need:
                raise SourceExhausted(f"base source ended after {len(self._buffer)} terms, {n} needed")

    def prefix(self, n: int) -> List[int]:
        """q_1..q_n."""
        self.extend_to(n)
        return self._buffer[:n]

    def q(self, n: int) -> int:
        """q_n, 1-based."""
        self.extend_to(n)
        return self._buffer[n - 1]

    def product(self, n: int) -> int:
        """M_n = q_1 * ... * q_n, with M_0 = 1."""
        if n not in self._products:
            self._products[n] = tree_product(self.prefix(n))
        return self._products[n]

    @property
    def running_product(self) -> int:
        return self.product(self.cursor)

    def __iter__(self) -> Iterator[int]:
        for n in itertools.count(1):
            yield self.q(n)


BaseSource = Union[BasicSequence, Sequence[int]]


def as_sequence(source: BaseSource) -> BasicSequence:
    if isinstance(source, BasicSequence):
        return source
    return BasicSequence.from_bases(source)


def generate(spec: GeneratorSpec, n: int, t_max: int = 16) -> List[int]:
    """First n bases of the stream described by spec."""
    if n < 0:
        raise BadParams(f"n must be >= 0, got {n}")
    return BasicSequence(spec, t_max).prefix(n)


# =============================================================================
# WINDOW STATISTICS
# =============================================================================

def symbols_of(source, n: int) -> list:
    """First n symbols of a BasicSequence or an explicit sequence."""
    if isinstance(source, BasicSequence):
        return source.prefix(n)
    symbols = list(source[:n])
    if len(symbols) < n:
        raise SourceExhausted(f"{n} symbols needed, only {len(symbols)} available")
    return symbols


def count_windows_chunked(
    symbols: Sequence,
    k: int,
    chunk: int,
    exclusion: Optional[ExclusionSet] = None,
    start: int = 1
) -> CylinderStats:
    """Count windows chunk by chunk and merge; equals a single pass."""
    if chunk < max(k - 1, 1):
        raise BadParams(f"chunk must hold at least {max(k - 1, 1)} symbols")
    bounds = list(range(0, len(symbols), chunk)) + [len(symbols)]
    if len(bounds) > 2 and bounds[-1] - bounds[-2] < k - 1:
        del bounds[-2]

    total = CylinderStats(k=k, start=start)
    for lo, hi in zip(bounds, bounds[1:]):
        part = CylinderStats.from_symbols(symbols[lo:hi], k, start=start + lo, exclusion=exclusion)
        total.merge(part, exclusion)
    return total


def cylinder_stats(
    seq,
    k: int,
    N: int,
    exclusion: Optional[ExclusionSet] = None,
    chunk: Optional[int] = None
) -> CylinderStats:
    """Counts of every length-k base block over windows 1..N."""
    symbols = symbols_of(seq, N + k - 1)
    if chunk:
        return count_windows_chunked(symbols, k, chunk, exclusion)
    return CylinderStats.from_symbols(symbols, k, exclusion=exclusion)


def check_dynamic_generation(
    seq,
    k_max: int,
    N: int,
    tol: Optional[Fraction] = None,
    density_floor: Optional[Fraction] = None
) -> DynamicGenerationReport:
    """Finite-prefix heuristics for the three dynamical-generation conditions.

    (i) frequencies are stable between N/2 and N, (ii) every occurring block
    has frequency above the floor, (iii) frequencies of each length sum to 1.
    Verdicts are PASS or SUSPECT, never proofs.
    """
    if k_max < 1 or N < 2 * k_max:
        raise BadParams(f"need k_max >= 1 and N >= 2*k_max, got k_max={k_max}, N={N}")
    tol = Fraction(1, 100) if tol is None else Fraction(tol)
    density_floor = Fraction(1, 100) if density_floor is None else Fraction(density_floor)

    half = N // 2
    symbols = symbols_of(seq, N + k_max - 1)
    report = DynamicGenerationReport(N=N, k_max=k_max, tolerance=tol, density_floor=density_floor)

    for k in range(1, k_max + 1):
        full = CylinderStats.from_symbols(symbols[:N + k - 1], k)
        early = CylinderStats.from_symbols(symbols[:half + k - 1], k)

        frequencies = {w: full.frequency(w) for w in full.counts}
        drift = max(abs(f - early.frequency(w)) for w, f in frequencies.items())
        min_freq = min(frequencies.values())
        total = sum(frequencies.values(), Fraction(0))
        sparse = sorted(w for w, f in frequencies.items() if f < density_floor)

        report.rows.append(DynamicGenerationRow(
            k=k,
            observed_blocks=len(frequencies),
            max_drift=drift,
            min_frequency=min_freq,
            frequency_sum=total,
            stability=Verdict.PASS if drift <= tol else Verdict.SUSPECT,
            positivity=Verdict.PASS if not sparse else Verdict.SUSPECT,
            total_mass=Verdict.PASS if total == 1 else Verdict.FAIL,
            sparse_blocks=sparse,
        ))

    return report
