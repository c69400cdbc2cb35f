"""Data models for the Cantor series toolkit."""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple, Union

from .errors import BadParams, LengthMismatch


class Verdict(Enum):
    """Outcome of a finite-prefix check."""
    PASS = "PASS"
    SUSPECT = "SUSPECT"
    FAIL = "FAIL"
    INSUFFICIENT = "INSUFFICIENT"


class DeterminismVerdict(Enum):
    """Outcome of the determinism diagnostic."""
    DETERMINISTIC = "CONSISTENT-WITH-DETERMINISTIC"
    POSITIVE_ENTROPY = "CONSISTENT-WITH-POSITIVE-ENTROPY"


class Membership(Enum):
    """Where an orbit point lies relative to a half-open interval."""
    IN = "in"
    OUT = "out"
    UNCERTAIN = "uncertain"


CONCATENATION_KINDS = ("champernowne", "squares", "primes", "aks")


# =============================================================================
# GENERATOR SPECS
# =============================================================================

@dataclass
class Periodic:
    """q_n repeats a fixed pattern."""
    pattern: Tuple[int, ...]


@dataclass
class RotationCoding:
    """q_n = f(n*alpha mod 1) for a partition of [0,1) into coded cells."""
    alpha: Fraction
    cells: Tuple[Tuple[Fraction, Fraction, int], ...]  # (lo, hi, base), half-open


@dataclass
class NilCoding:
    """q_n = a if frac(n*alpha) >= frac(n^2*alpha) else b (orbit of (0,0))."""
    alpha: Fraction
    bases: Tuple[int, int]


@dataclass
class Substitution:
    """Fixed point of a letter substitution, coded letter by letter."""
    alphabet: Tuple[str, ...]
    rules: Dict[str, str]
    base_of: Dict[str, int]
    start: str


@dataclass
class Concatenation:
    """Digits of a concatenated integer stream, shifted into the bases."""
    kind: str  # champernowne, squares, primes, aks
    g: int = 10
    digit_offset: int = 2


@dataclass
class Bernoulli:
    """I.i.d. bases drawn with exact rational weights."""
    alphabet: Tuple[int, ...]
    weights: Tuple[Fraction, ...]
    seed: int = 0


@dataclass
class NonErgodicWord:
    """The word (abc)(bac)(abc)^2(bac)^2... coded letter by letter."""
    base_of: Dict[str, int] = field(default_factory=lambda: {"a": 2, "b": 3, "c": 4})


@dataclass
class FileSource:
    """Bases read from a newline-separated file."""
    path: str


@dataclass
class SquarePositions:
    """q_n = square_base when n is a perfect square, else base."""
    base: int = 2
    square_base: int = 3


@dataclass
class GrowingBlocks:
    """The word a b a^2 b^2 a^3 b^3 ... coded by the two bases."""
    bases: Tuple[int, int] = (2, 3)


@dataclass
class DoublingCoding:
    """q_n = f(2^n x mod 1) for dyadic cells and a base-2 digit source for x."""
    cells: Tuple[Tuple[Fraction, Fraction, int], ...] = (
        (Fraction(0), Fraction(1, 2), 2),
        (Fraction(1, 2), Fraction(1), 3),
    )
    source: str = "champernowne"  # or a path to a file of binary digits


GeneratorSpec = Union[
    Periodic, RotationCoding, NilCoding, Substitution, Concatenation, Bernoulli,
    NonErgodicWord, FileSource, SquarePositions, GrowingBlocks, DoublingCoding,
]


# =============================================================================
# ACCUMULATORS
# =============================================================================

@dataclass
class ExclusionSet:
    """Indices removed from a count, as explicit indices or a predicate."""
    indices: Optional[FrozenSet[int]] = None
    predicate: Optional[Callable[[int], bool]] = None
    label: str = ""

    def __contains__(self, n: int) -> bool:
        if self.indices is not None and n in self.indices:
            return True
        if self.predicate is not None:
            return bool(self.predicate(n))
        return False

    def count(self, lo: int, hi: int) -> int:
        """Number of excluded indices in [lo, hi]."""
        if self.predicate is None:
            return sum(1 for i in (self.indices or ()) if lo <= i <= hi)
        return sum(1 for i in range(lo, hi + 1) if i in self)

    def density(self, lo: int, hi: int) -> Fraction:
        """Realized density of the exclusion over [lo, hi]."""
        if hi < lo:
            return Fraction(0)
        return Fraction(self.count(lo, hi), hi - lo + 1)

    @classmethod
    def from_indices(cls, indices, label: str = "explicit") -> 'ExclusionSet':
        return cls(indices=frozenset(int(i) for i in indices), label=label)


@dataclass
class CylinderStats:
    """Window counts of length-k blocks over a contiguous range of a stream.

    Chunks over adjacent ranges merge into the statistics of the union; the
    k-1 windows that straddle the seam are rebuilt from the stored tail and
    head of the two chunks.
    """
    k: int
    counts: Counter = field(default_factory=Counter)
    n: int = 0  # windows scanned, excluded ones included
    excluded: int = 0
    start: int = 1  # 1-based position of the first symbol
    length: int = 0  # symbols consumed
    head: tuple = ()  # first k-1 symbols
    tail: tuple = ()  # last k-1 symbols

    @classmethod
    def from_symbols(
        cls,
        symbols,
        k: int,
        start: int = 1,
        exclusion: Optional[ExclusionSet] = None
    ) -> 'CylinderStats':
        """Count every window lying inside `symbols`, which begins at `start`."""
        if k < 1:
            raise BadParams(f"block length must be >= 1, got {k}")
        symbols = tuple(symbols)
        length = len(symbols)
        n_windows = max(length - k + 1, 0)
        windows = zip(*(symbols[i:n_windows + i] for i in range(k)))

        stats = cls(k=k, start=start, length=length, n=n_windows)
        if exclusion is None:
            stats.counts = Counter(windows)
        else:
            kept = Counter()
            for pos, w in enumerate(windows, start):
                if pos in exclusion:
                    stats.excluded += 1
                else:
                    kept[w] += 1
            stats.counts = kept

        stats.head = symbols[:k - 1]
        stats.tail = symbols[length - (k - 1):] if k > 1 else ()
        return stats

    @property
    def total(self) -> int:
        """Windows actually counted."""
        return self.n - self.excluded

    def frequency(self, w) -> Fraction:
        if self.total == 0:
            return Fraction(0)
        return Fraction(self.counts.get(tuple(w), 0), self.total)

    def merge(self, other: 'CylinderStats', exclusion: Optional[ExclusionSet] = None) -> 'CylinderStats':
        """Merge the statistics of the range immediately after this one."""
        if other.length == 0:
            return self
        if self.length == 0:
            self.__dict__.update(
                k=other.k, counts=Counter(other.counts), n=other.n, excluded=other.excluded,
                start=other.start, length=other.length, head=other.head, tail=other.tail,
            )
            return self
        if self.k != other.k:
            raise LengthMismatch(f"cannot merge block lengths {self.k} and {other.k}")
        if other.start != self.start + self.length:
            raise BadParams("merged ranges must be adjacent")

        k = self.k
        if k > 1:
            if self.length < k - 1 or other.length < k - 1:
                raise BadParams(f"chunks must hold at least {k - 1} symbols")
            joined = self.tail + other.head
            first = self.start + self.length - (k - 1)
            for i in range(k - 1):
                self.n += 1
                if exclusion is not None and first + i in exclusion:
                    self.excluded += 1
                else:
                    self.counts[joined[i:i + k]] += 1

        self.counts.update(other.counts)
        self.n += other.n
        self.excluded += other.excluded
        self.tail = other.tail
        self.length += other.length
        return self


def block_below(D, B) -> bool:
    """D < B componentwise."""
    return all(d < b for d, b in zip(D, B))


def block_product(B) -> int:
    result = 1
    for b in B:
        result *= b
    return result


@dataclass
class BlockStats:
    """Digit-block and base-block counts over windows j = 1..n.

    `pairs` counts windows of (digit, base) pairs with the exclusion applied;
    `bases` counts base windows over all positions. Expectations are exact and
    derived from the base counts.
    """
    ell: int
    pairs: CylinderStats
    bases: CylinderStats

    @property
    def n(self) -> int:
        return self.bases.n

    def digit_counts(self) -> Counter:
        """N_n(D, x) for every observed D."""
        result = Counter()
        for w, c in self.pairs.counts.items():
            result[tuple(p[0] for p in w)] += c
        return result

    def pair_counts(self) -> Counter:
        """N_n(D, B, x) keyed by (D, B)."""
        result = Counter()
        for w, c in self.pairs.counts.items():
            result[(tuple(p[0] for p in w), tuple(p[1] for p in w))] += c
        return result

    def expectation(self, D) -> Fraction:
        """Q_n(D)."""
        D = tuple(D)
        return sum(
            (Fraction(c, block_product(B)) for B, c in self.bases.counts.items() if block_below(D, B)),
            Fraction(0),
        )

    def expectation_pair(self, D, B) -> Fraction:
        """Q_n(D, B)."""
        D, B = tuple(D), tuple(B)
        if not block_below(D, B):
            return Fraction(0)
        return Fraction(self.bases.counts.get(B, 0), block_product(B))

    def merge(self, other: 'BlockStats', exclusion: Optional[ExclusionSet] = None) -> 'BlockStats':
        self.pairs.merge(other.pairs, exclusion)
        self.bases.merge(other.bases)
        return self


# =============================================================================
# GEOMETRY AND ORBITS
# =============================================================================

@dataclass
class CellRectangle:
    """E_B x I_{D,B}: horizontal intervals of E_B, vertical digit interval."""
    B: Tuple[int, ...]
    D: Tuple[int, ...]
    horizontal: Tuple[Tuple[Fraction, Fraction], ...]
    vertical: Tuple[Fraction, Fraction]

    @property
    def horizontal_measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.horizontal), Fraction(0))

    @property
    def area(self) -> Fraction:
        return self.horizontal_measure * (self.vertical[1] - self.vertical[0])


@dataclass
class OrbitSample:
    """Orbit points u_n = numerator_n / denominator, n = 0..N-1.

    With spread > 0 the true point lies in [num, num + spread] / denominator.
    """
    numerators: List[int]
    denominator: int
    spread: int = 0
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.numerators)

    @property
    def is_exact(self) -> bool:
        return self.spread == 0

    @property
    def width(self) -> Fraction:
        return Fraction(self.spread, self.denominator)

    def point(self, i: int) -> Fraction:
        return Fraction(self.numerators[i], self.denominator)

    def classify(self, i: int, a: Fraction, b: Fraction) -> Membership:
        """Locate point i relative to [a, b) using integer comparisons only."""
        num = self.numerators[i]
        den = self.denominator
        lo_inside = num * a.denominator >= a.numerator * den
        if self.spread == 0:
            if lo_inside and num * b.denominator < b.numerator * den:
                return Membership.IN
            return Membership.OUT
        hi = num + self.spread
        # every orbit point is < 1, so b = 1 never cuts an interval point
        if lo_inside and (b >= 1 or hi * b.denominator < b.numerator * den):
            return Membership.IN
        if hi * a.denominator < a.numerator * den or num * b.denominator >= b.numerator * den:
            return Membership.OUT
        return Membership.UNCERTAIN


@dataclass
class HotSpotQuery:
    """Visits of the orbit to [a, b) outside an exclusion set."""
    a: Fraction
    b: Fraction
    sigma: Fraction = Fraction(1, 2)
    C: Fraction = Fraction(1)
    N: Optional[int] = None  # defaults to the sample size
    exclusion: Optional[ExclusionSet] = None

    def __post_init__(self):
        self.a, self.b = Fraction(self.a), Fraction(self.b)
        self.sigma, self.C = Fraction(self.sigma), Fraction(self.C)
        if not 0 <= self.a < self.b <= 1:
            raise BadParams(f"need 0 <= a < b <= 1, got [{self.a}, {self.b})")
        if not 0 < self.sigma <= 1:
            raise BadParams(f"sigma must lie in (0, 1], got {self.sigma}")
        if self.C < 1:
            raise BadParams(f"C must be >= 1, got {self.C}")


# =============================================================================
# REPORTS
# =============================================================================

@dataclass
class HotSpotResult:
    """Hot-spot count with both bound comparisons."""
    a: Fraction
    b: Fraction
    sigma: Fraction
    C: Fraction
    N: int
    count: int  # certain visits
    uncertain: int  # boundary-ambiguous points, counted against the bounds
    excluded: int
    exclusion_density: Fraction
    within_budget: bool  # exclusion density <= 1 - sigma
    ratio: Fraction  # (count + uncertain) / N
    holds_sigma_bound: bool  # ratio < C (b-a)^sigma
    linear_bound: Fraction
    holds_linear_bound: bool  # ratio < C (b-a)


@dataclass
class DynamicGenerationRow:
    """Finite-prefix checks for one block length."""
    k: int
    observed_blocks: int
    max_drift: Fraction
    min_frequency: Fraction
    frequency_sum: Fraction
    stability: Verdict
    positivity: Verdict
    total_mass: Verdict
    sparse_blocks: List[Tuple[int, ...]] = field(default_factory=list)


@dataclass
class DynamicGenerationReport:
    N: int
    k_max: int
    tolerance: Fraction
    density_floor: Fraction
    rows: List[DynamicGenerationRow] = field(default_factory=list)

    def verdict(self, condition: str) -> Verdict:
        """Worst verdict for 'stability', 'positivity' or 'total_mass'."""
        verdicts = [getattr(r, condition) for r in self.rows]
        for v in (Verdict.FAIL, Verdict.SUSPECT):
            if v in verdicts:
                return v
        return Verdict.PASS


@dataclass
class PDEstimate:
    """P_D estimated as Q_n(D)/n, with the n/2 comparison."""
    D: Tuple[int, ...]
    n: int
    estimate: Fraction
    half_estimate: Fraction
    drift: Fraction


@dataclass
class BlockRow:
    ell: int
    D: Tuple[int, ...]
    count: int
    expectation: Fraction
    ratio: Optional[Fraction]
    status: Verdict


@dataclass
class UniformRow:
    ell: int
    D: Tuple[int, ...]
    B: Tuple[int, ...]
    count: int
    expectation: Fraction
    ratio: Optional[Fraction]
    status: Verdict


@dataclass
class RatioNormalityEntry:
    ell: int
    D1: Tuple[int, ...]
    D2: Tuple[int, ...]
    ratio: Optional[Fraction]  # None when the denominator block never occurs


@dataclass
class NormalityReport:
    n: int
    ell_max: int
    tolerance: Fraction
    mass_threshold: Fraction
    rows: List[BlockRow] = field(default_factory=list)
    ratio_normality: List[RatioNormalityEntry] = field(default_factory=list)
    extremal_ratio: Dict[int, Optional[Fraction]] = field(default_factory=dict)
    uniform_rows: List[UniformRow] = field(default_factory=list)
    truncated: bool = False

    def row(self, D) -> Optional[BlockRow]:
        D = tuple(D)
        return next((r for r in self.rows if r.D == D), None)

    @property
    def verdict(self) -> Verdict:
        statuses = [r.status for r in self.rows] + [r.status for r in self.uniform_rows]
        if Verdict.FAIL in statuses:
            return Verdict.FAIL
        return Verdict.PASS


@dataclass
class DensityRow:
    lo: Fraction
    hi: Fraction
    density: Fraction
    empirical: Fraction
    target: Fraction
    error: Fraction


@dataclass
class DensityComparison:
    N: int
    rows: List[DensityRow] = field(default_factory=list)
    sup_error: Fraction = Fraction(0)


@dataclass
class JointRow:
    B: Tuple[int, ...]
    a: Fraction
    b: Fraction
    count: int
    frequency: Fraction
    target: Fraction
    deviation: Fraction


@dataclass
class JointStats:
    ell: int
    N: int
    block_frequency: Dict[Tuple[int, ...], Fraction] = field(default_factory=dict)
    rows: List[JointRow] = field(default_factory=list)
    uncertain: int = 0
    sup_deviation: Fraction = Fraction(0)


@dataclass
class GPowerDensity:
    g: int
    k: int
    positions: int  # X, the base-g window [0, X)
    terms: int  # Q terms consumed to cover X positions
    mean_exponent: Fraction  # I
    empirical: Fraction
    formula: Fraction
    difference: Fraction


@dataclass
class BlockEntropy:
    k: int
    N: int
    entropy: float  # nats
    entropy_bits: float
    slope: float
    distinct: int
    sparsity: float  # distinct / N


@dataclass
class ComplexityRow:
    k: int
    eps: Fraction
    p_eps: int
    rate: Optional[float]  # log(p_eps)/k, None when k is unreliable at this N


@dataclass
class ComplexityReport:
    """Determinism diagnostics over a prefix of length N."""
    N: int
    eps_values: List[Fraction]
    k_values: List[int]
    table: List[ComplexityRow] = field(default_factory=list)
    entropies: List[BlockEntropy] = field(default_factory=list)
    min_rate: Dict[Fraction, Optional[float]] = field(default_factory=dict)
    condition_i: bool = False
    letter_densities: Dict[Any, Fraction] = field(default_factory=dict)
    letter_entropy: float = 0.0
    letter_entropy_half: float = 0.0
    condition_ii: bool = False
    unseen_letter_caveat: str = ""
    mean_log_q: float = 0.0
    verdict: DeterminismVerdict = DeterminismVerdict.POSITIVE_ENTROPY


@dataclass
class LogIntegral:
    N: int
    base: Optional[int]  # None for natural log
    mean: float
    half_mean: float
    drift: float
    drifting: bool
    symbolic: Any = None  # sympy expression when few distinct bases


@dataclass
class ConstructionResult:
    """A (Q, digit) pair emitted by a construction, with its declared targets."""
    name: str
    bases: List[int]
    digits: List[int]
    parameters: Dict[str, Any] = field(default_factory=dict)
    targets: Dict[str, Fraction] = field(default_factory=dict)
    observations: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ValidationResult:
    """Comparison of an observed statistic with its declared target."""
    item: str
    expected: Fraction
    actual: Fraction
    difference: Fraction
    tolerance: Fraction
    status: str  # exact, close, miss


@dataclass
class RunManifest:
    """Everything needed to re-run a command bit-identically."""
    tool_version: str
    command: List[str]
    config: Dict[str, Any]
    seeds: Dict[str, int] = field(default_factory=dict)
    inputs: Dict[str, str] = field(default_factory=dict)  # path -> sha256
    outputs: Dict[str, str] = field(default_factory=dict)  # path -> sha256
    wall_clock_seconds: float = 0.0
