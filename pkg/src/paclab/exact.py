"""Exact rationals, dyadic intervals, and rapid Cauchy real streams.

All arithmetic in this module is exact: rationals are
:class:`fractions.Fraction` in canonical form, and a real number is
represented by a *rapid Cauchy stream* -- a function from a precision
index ``i`` to a rational ``q_i`` with ``|q_i - q_j| < 2**-i`` whenever
``i < j``, so stage ``i`` pins the value inside
``[q_i - 2**-i, q_i + 2**-i]``.

Extended reals (values in ``R + {oo}``) get their own presentation type:
a rational sequence that either eventually certifies infinity by
satisfying ``q_i > i`` at every inspected index, or is rapid Cauchy.

Comparisons against rationals are tri-state: a strict comparison
resolves once the interval around the stream excludes the rational, and
stays unresolved (not an error) when the cap is reached first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Optional, Union

from .errors import InvalidPresentation, PrecisionExhausted

Rational = Fraction

#: Default number of refinement steps for interval comparisons.
DEFAULT_CAP = 64


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer ``"p"``) exactly.

    Decimal or exponent notation is rejected: configuration values must
    not pass through floating point.
    """
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a p/q rational: {text!r}") from exc
    return value


def format_rational(q: Fraction) -> str:
    """Serialize a rational as ``p/q`` (denominator always present)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DyadicInterval:
    """A closed rational interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @classmethod
    def around(cls, center: Fraction, precision: int) -> "DyadicInterval":
        r = Fraction(1, 2**precision)
        return cls(center - r, center + r)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q: Fraction) -> bool:
        return self.lo <= q <= self.hi

    def refines(self, other: "DyadicInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def sqrt2m1_scaled(nbits: int) -> int:
    """``floor((sqrt(2) - 1) * 2**nbits)`` by exact integer square root."""
    return isqrt(2 * 4**nbits) - 2**nbits


class RealStream:
    """A real number as a rapid Cauchy stream of rationals.

    ``approximant(i)`` must satisfy the rapid Cauchy condition for the
    stream to be a valid description; constructors in this module
    guarantee it.  ``exact_cmp``, when present, decides ``value > q``
    symbolically (``None`` meaning the comparison can never resolve,
    i.e. the value equals ``q``); interval refinement is the generic
    fallback.
    """

    __slots__ = ("_approximant", "exact_cmp")

    def __init__(
        self,
        approximant: Callable[[int], Fraction],
        exact_cmp: Optional[Callable[[Fraction], Optional[bool]]] = None,
    ):
        self._approximant = approximant
        self.exact_cmp = exact_cmp

    def approximant(self, i: int) -> Fraction:
        if i < 0:
            raise ValueError("precision index must be a natural")
        return self._approximant(i)

    def interval(self, i: int) -> DyadicInterval:
        return DyadicInterval.around(self.approximant(i), i)

    def without_hints(self) -> "RealStream":
        """The same stream stripped of symbolic shortcuts (for tests)."""
        return RealStream(self._approximant)


def real_from_rational(q: Fraction) -> RealStream:
    """The constant stream presenting a rational exactly."""
    q = Fraction(q)

    def cmp_gt(r: Fraction) -> Optional[bool]:
        return None if q == r else q > r

    return RealStream(lambda i: q, exact_cmp=cmp_gt)


def generic_real(q: Fraction, scale_exp: int) -> RealStream:
    """The stream for ``q + xi * 2**-scale_exp`` with ``xi = sqrt(2) - 1``.

    The offset makes the value irrational, hence unequal to every
    rational, so every strict comparison against a rational resolves at
    finite precision.  ``xi`` is computed by exact integer square roots;
    no approximation error enters anywhere.
    """
    q = Fraction(q)
    if scale_exp < 1:
        raise ValueError("scale_exp must be >= 1")

    def approx(i: int) -> Fraction:
        nbits = i + 2
        return q + Fraction(sqrt2m1_scaled(nbits), 2 ** (nbits + scale_exp))

    def cmp_gt(r: Fraction) -> bool:
        # value > r  iff  xi > (r - q) * 2**scale_exp  iff  2 > (1 + t)**2
        t = (Fraction(r) - q) * 2**scale_exp
        if t < 0:
            return True
        return (1 + t) ** 2 < 2

    return RealStream(approx, exact_cmp=cmp_gt)


def compare_gt(x: RealStream, q: Fraction, cap: int = DEFAULT_CAP) -> Optional[bool]:
    """Tri-state strict comparison ``x > q``.

    Refines ``x`` until its interval excludes ``q`` (or certifies
    ``x <= q``); returns ``None`` only if the cap is reached with the
    question still open.  Resolved answers are final: more precision can
    never flip them.  Streams carrying a symbolic comparison resolve
    without refinement.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    q = Fraction(q)
    if x.exact_cmp is not None:
        return x.exact_cmp(q)
    for i in range(cap + 1):
        iv = x.interval(i)
        if iv.lo > q:
            return True
        if iv.hi <= q:
            return False
    return None


def require_gt(x: RealStream, q: Fraction, cap: int = DEFAULT_CAP) -> bool:
    """As :func:`compare_gt` but unresolved raises :class:`PrecisionExhausted`."""
    result = compare_gt(x, q, cap)
    if result is None:
        raise PrecisionExhausted(f"comparison with {q} unresolved at cap {cap}")
    return result


def compare_streams_gt(
    x: RealStream, y: RealStream, cap: int = DEFAULT_CAP
) -> Optional[bool]:
    """Tri-state ``x > y`` by refining both intervals until disjoint."""
    if x is y:
        return None
    for i in range(cap + 1):
        a, b = x.interval(i), y.interval(i)
        if a.lo > b.hi:
            return True
        if a.hi < b.lo:
            return False
    return None


#: Marker for an extended real known to be infinite.
INFINITE = "infinite"


class ExtendedRealPresentation:
    """A rational sequence presenting a value in ``R + {oo}``.

    Either ``q_i > i`` holds at every inspected index (the sequence
    presents infinity) or the rapid Cauchy condition holds (it presents
    the limit).  Which disjunct applies is determined lazily by
    :meth:`classify`.  ``exact`` optionally records a value known in
    closed form, which downstream interval code may exploit.
    """

    __slots__ = ("_approximant", "exact")

    def __init__(
        self,
        approximant: Callable[[int], Fraction],
        exact: Union[Fraction, str, None] = None,
    ):
        self._approximant = approximant
        self.exact = exact

    @classmethod
    def from_rational(cls, q: Fraction) -> "ExtendedRealPresentation":
        q = Fraction(q)
        return cls(lambda i: q, exact=q)

    @classmethod
    def infinity(cls) -> "ExtendedRealPresentation":
        return cls(lambda i: Fraction(i + 1), exact=INFINITE)

    def approximant(self, i: int) -> Fraction:
        return self._approximant(i)

    def classify(self, depth: int) -> Optional[DyadicInterval]:
        """Inspect indices ``0..depth``; ``None`` means infinite so far.

        Raises :class:`InvalidPresentation` when the inspected prefix
        violates both admissible shapes.
        """
        return extended_real_classify(self, depth)

    def max_with(self, other: "ExtendedRealPresentation") -> "ExtendedRealPresentation":
        """Pointwise max; presents the max of the two extended reals."""
        if self.exact == INFINITE or other.exact == INFINITE:
            exact: Union[Fraction, str, None] = INFINITE
        elif self.exact is not None and other.exact is not None:
            exact = max(self.exact, other.exact)
        else:
            exact = None
        a, b = self._approximant, other._approximant
        return ExtendedRealPresentation(lambda i: max(a(i), b(i)), exact=exact)


def extended_real_classify(
    e: ExtendedRealPresentation, depth: int
) -> Optional[DyadicInterval]:
    """Report ``None`` (infinite so far) or the current finite interval.

    The infinite disjunct requires ``q_i > i`` at every index up to
    ``depth``; otherwise the prefix must be rapid Cauchy, and the value
    lives in the interval of radius ``2**-depth`` around ``q_depth``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if e.exact == INFINITE:
        return None
    if isinstance(e.exact, Fraction):
        return DyadicInterval.around(e.exact, depth)
    qs = [Fraction(e.approximant(i)) for i in range(depth + 1)]
    if all(qs[i] > i for i in range(depth + 1)):
        return None
    for i in range(depth + 1):
        bound = Fraction(1, 2**i)
        for j in range(i + 1, depth + 1):
            if abs(qs[i] - qs[j]) >= bound:
                raise InvalidPresentation(
                    f"|q_{i} - q_{j}| >= 2**-{i} and prefix is not an "
                    f"infinity certificate"
                )
    return DyadicInterval.around(qs[depth], depth)
