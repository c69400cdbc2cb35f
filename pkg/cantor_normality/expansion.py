"""Exact Cantor series expansion engine.

Digits, partial sums and orbit points q_n...q_1 x mod 1 are computed with
integers only. A rational x = p/q keeps a remainder r in [0, q) so each step
is one multiplication and one division by q, independent of n.
"""
import itertools
from fractions import Fraction
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import BadParams, InadmissibleDigit, OutOfRange, PrecisionUnreachable, SourceExhausted
from .generators import BaseSource, as_sequence
from .models import OrbitSample


def as_unit_fraction(x) -> Fraction:
    """Parse x (Fraction, int or "p/q") and require 0 <= x < 1."""
    try:
        value = Fraction(str(x)) if isinstance(x, str) else Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise OutOfRange(f"not a rational: {x!r}")
    if not 0 <= value < 1:
        raise OutOfRange(f"{value} is not in [0, 1)")
    return value


def digits_of(x, Q: BaseSource, n: int) -> List[int]:
    """First n digits of the canonical expansion of x in base Q."""
    x = as_unit_fraction(x)
    bases = as_sequence(Q).prefix(n)
    q = x.denominator
    r = x.numerator
    digits = []
    for b in bases:
        d, r = divmod(r * b, q)
        digits.append(d)
    return digits


def value_of(digits: Sequence[int], Q: BaseSource, n: Optional[int] = None) -> Fraction:
    """Partial sum of the first n terms x_i / (q_1...q_i)."""
    n = len(digits) if n is None else n
    if n > len(digits):
        raise BadParams(f"{n} terms requested but only {len(digits)} digits given")
    bases = as_sequence(Q).prefix(n)
    num, den = 0, 1
    for i, (d, b) in enumerate(zip(digits, bases), 1):
        if not 0 <= d < b:
            raise InadmissibleDigit(f"digit x_{i} = {d} is not in [0, {b})")
        num = num * b + d
        den *= b
    return Fraction(num, den)


def orbit_point(x, Q: BaseSource, n: int) -> Fraction:
    """q_n...q_1 x mod 1, by modular reduction of the numerator."""
    x = as_unit_fraction(x)
    q = x.denominator
    r = x.numerator
    for b in as_sequence(Q).prefix(n):
        r = r * b % q
    return Fraction(r, q)


def canonicalize(digits: Sequence[int], Q: BaseSource, max_tail: bool = False) -> List[int]:
    """Remove an all-maximal tail by carrying into the last non-maximal digit.

    With max_tail=False the digits are read as x followed by zeros, which is
    already canonical. With max_tail=True they are read as followed by an
    infinite run of digits q_i - 1; the carry turns that into a terminating
    expansion of the same length.
    """
    digits = list(digits)
    bases = as_sequence(Q).prefix(len(digits))
    for i, (d, b) in enumerate(zip(digits, bases), 1):
        if not 0 <= d < b:
            raise InadmissibleDigit(f"digit x_{i} = {d} is not in [0, {b})")
    if not max_tail:
        return digits

    j = len(digits) - 1
    while j >= 0 and digits[j] == bases[j] - 1:
        j -= 1
    if j < 0:
        raise OutOfRange("an all-maximal expansion has value 1")
    return digits[:j] + [digits[j] + 1] + [0] * (len(digits) - j - 1)


class CantorReal:
    """A number in [0,1) with its basic sequence.

    Backed by an exact rational, an explicit digit list, or a procedural
    digit stream. Digits are read through one cached prefix.
    """

    def __init__(
        self,
        Q: BaseSource,
        rational: Optional[Fraction] = None,
        digits: Optional[Sequence[int]] = None,
        procedure: Optional[Iterable[int]] = None,
    ):
        sources = [s is not None for s in (rational, digits, procedure)]
        if sum(sources) != 1:
            raise BadParams("give exactly one of rational, digits, procedure")
        self.Q = as_sequence(Q)
        self.rational = as_unit_fraction(rational) if rational is not None else None
        self._digits: List[int] = []
        self._finite = digits is not None
        self._remainder = self.rational.numerator if self.rational is not None else None
        self._stream: Optional[Iterator[int]] = None
        if digits is not None:
            self._stream = iter(list(digits))
        elif procedure is not None:
            self._stream = iter(procedure)

    @classmethod
    def from_rational(cls, x, Q: BaseSource) -> 'CantorReal':
        return cls(Q, rational=x)

    @classmethod
    def from_digits(cls, digits: Sequence[int], Q: BaseSource) -> 'CantorReal':
        return cls(Q, digits=digits)

    @classmethod
    def from_procedure(cls, procedure: Union[Iterable[int], Callable[[], Iterable[int]]], Q: BaseSource) -> 'CantorReal':
        if callable(procedure):
            procedure = procedure()
        return cls(Q, procedure=procedure)

    @property
    def is_exact(self) -> bool:
        return self.rational is not None

    @property
    def kind(self) -> str:
        if self.rational is not None:
            return "rational"
        return "explicit" if self._finite else "procedural"

    def available(self, n: int) -> bool:
        """True when x_1..x_n can be read."""
        try:
            self.digits(n)
        except SourceExhausted:
            return False
        return True

    def digits(self, n: int) -> List[int]:
        """x_1..x_n, checked for admissibility."""
        have = len(self._digits)
        if n > have:
            bases = self.Q.prefix(n)
            if self.rational is not None:
                q = self.rational.denominator
                r = self._remainder
                for b in bases[have:]:
                    d, r = divmod(r * b, q)
                    self._digits.append(d)
                self._remainder = r
            else:
                fresh = list(itertools.islice(self._stream, n - have))
                if len(fresh) < n - have:
                    raise SourceExhausted(f"digit source ended after {have + len(fresh)} digits, {n} needed")
                for i, (d, b) in enumerate(zip(fresh, bases[have:]), have + 1):
                    if not 0 <= d < b:
                        raise InadmissibleDigit(f"digit x_{i} = {d} is not in [0, {b})")
                self._digits.extend(fresh)
        return self._digits[:n]

    def digit(self, n: int) -> int:
        """x_n, 1-based."""
        return self.digits(n)[n - 1]


def as_cantor_real(x, Q: BaseSource) -> CantorReal:
    """Accept a CantorReal, a rational, or an explicit digit list."""
    if isinstance(x, CantorReal):
        return x
    if isinstance(x, (Fraction, int, str)):
        return CantorReal.from_rational(x, Q)
    return CantorReal.from_digits(x, Q)


def orbit_interval_from_digits(
    x: CantorReal,
    n: int,
    eps,
    max_terms: Optional[int] = None
) -> Tuple[Fraction, Fraction]:
    """Half-open interval of width <= eps containing q_n...q_1 x mod 1.

    Uses tail digits x_{n+1}, ..., x_{n+m} for the smallest m that reaches eps.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise BadParams(f"eps must be positive, got {eps}")
    num, den = 0, 1
    m = 0
    while Fraction(1, den) > eps:
        m += 1
        if max_terms is not None and m > max_terms:
            raise PrecisionUnreachable(f"width {eps} not reached within {max_terms} tail digits")
        try:
            d = x.digit(n + m)
        except SourceExhausted:
            raise PrecisionUnreachable(f"digits ran out after x_{n + m - 1} before reaching width {eps}")
        b = x.Q.q(n + m)
        num = num * b + d
        den *= b
    return Fraction(num, den), Fraction(num + 1, den)


# =============================================================================
# ORBIT SAMPLES
# =============================================================================

def orbit_sample(x, Q: BaseSource, N: int) -> OrbitSample:
    """Exact orbit points u_0..u_{N-1} of a rational x over a common denominator."""
    x = as_unit_fraction(x)
    q = x.denominator
    r = x.numerator
    numerators = [r]
    for b in as_sequence(Q).prefix(max(N - 1, 0)):
        r = r * b % q
        numerators.append(r)
    return OrbitSample(
        numerators=numerators[:N],
        denominator=q,
        provenance={"x": str(x), "range": [0, N - 1], "kind": "rational"},
    )


def orbit_sample_from_digits(
    digits: Union[CantorReal, Sequence[int]],
    Q: BaseSource,
    N: int,
    bits: int = 64
) -> OrbitSample:
    """Orbit points of a digit-defined number, each pinned to a few units of 2^-bits.

    Runs u_n = (x_{n+1} + u_{n+1}) / q_{n+1} backwards from a tail bound
    0 <= u <= 1 placed `bits + 8` digits past the sample, rounding outward.
    """
    if bits < 1:
        raise BadParams(f"bits must be >= 1, got {bits}")
    lookahead = bits + 8
    x = digits if isinstance(digits, CantorReal) else CantorReal.from_digits(digits, Q)
    total = N + lookahead - 1
    try:
        tail_digits = x.digits(total)
    except SourceExhausted:
        raise PrecisionUnreachable(f"{total} digits are needed for {N} points at 2^-{bits}")
    bases = x.Q.prefix(total)

    scale = 1 << bits
    lo, hi = 0, scale
    lows = [0] * N
    spread = 0
    for i in range(total - 1, -1, -1):
        d, b = tail_digits[i], bases[i]
        lo = (d * scale + lo) // b
        hi = -((-(d * scale + hi)) // b)
        if i < N:
            lows[i] = lo
            spread = max(spread, hi - lo)

    return OrbitSample(
        numerators=lows,
        denominator=scale,
        spread=spread,
        provenance={"kind": x.kind, "range": [0, N - 1], "bits": bits},
    )
