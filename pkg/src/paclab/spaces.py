"""Computable (extended) metric spaces as descriptors.

A space is described by an enumeration of *ideal points* together with
a distance oracle returning an
:class:`~paclab.exact.ExtendedRealPresentation` for every pair of ideal
ids.  Arbitrary points are then handled through
:class:`PointDescription`: a stream of ideal ids ``f(i)`` whose pairwise
distances satisfy ``d(f(i), f(j)) < 2**-i`` for ``i < j``, so the id at
stage ``i`` pins the point to radius ``2**-i``.

Ideal points need not belong to the underlying set (the rationals serve
as ideal points for the space of irrationals, for instance); descriptors
deliberately do not track membership.

Constructors cover the spaces the learners need: discrete spaces,
the rational-ideal real line, Baire and Cantor space, binary products,
and finite-sequence spaces.  Spaces satisfying the strong triangle
inequality set ``ultrametric=True``, which lets
:func:`point_distance` pin distances exactly instead of returning a
slack interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from . import encodings
from .encodings import RationalEnumeration, DEFAULT_RATIONALS
from .errors import DuplicateElement, PrecisionExhausted
from .exact import (
    INFINITE,
    DyadicInterval,
    ExtendedRealPresentation,
    RealStream,
)

IdealId = int

_ZERO = ExtendedRealPresentation.from_rational(Fraction(0))
_ONE = ExtendedRealPresentation.from_rational(Fraction(1))


class MetricSpace:
    """Base descriptor: ideal-point enumeration plus a distance oracle."""

    label: str = "space"
    #: Number of ideal points, or ``None`` when countably infinite.
    ideal_count: Optional[int] = None
    #: Whether the strong triangle inequality holds.
    ultrametric: bool = False

    def distance(self, i: IdealId, j: IdealId) -> ExtendedRealPresentation:
        raise NotImplementedError

    def check_ideal(self, i: IdealId) -> None:
        if i < 0:
            raise IndexError(f"ideal id {i} is negative")
        if self.ideal_count is not None and i >= self.ideal_count:
            raise IndexError(f"ideal id {i} out of range for {self.label}")


class DiscreteSpace(MetricSpace):
    """Distances in {0, 1}; ideal points are the enumerated values."""

    ultrametric = True

    def __init__(self, enumeration: Union[Sequence[int], Callable[[int], int]],
                 count: Optional[int] = None, label: str = "discrete"):
        self.label = label
        if callable(enumeration):
            self._fn = enumeration
            self.ideal_count = count
        else:
            values = list(enumeration)
            if len(set(values)) != len(values):
                raise DuplicateElement(f"repeated value in {label} enumeration")
            self._fn = values.__getitem__
            self.ideal_count = len(values)
        self._seen: dict[int, int] = {}

    def value_at(self, i: IdealId) -> int:
        self.check_ideal(i)
        v = self._fn(i)
        prior = self._seen.setdefault(v, i)
        if prior != i:
            raise DuplicateElement(
                f"value {v} appears at ids {prior} and {i} in {self.label}"
            )
        return v

    def distance(self, i: IdealId, j: IdealId) -> ExtendedRealPresentation:
        if i == j:
            return _ZERO
        if self.value_at(i) == self.value_at(j):
            raise DuplicateElement(f"ids {i}, {j} denote the same value")
        return _ONE


def discrete_space(enumeration, label: str = "discrete") -> DiscreteSpace:
    return DiscreteSpace(enumeration, label=label)


def naturals_space() -> DiscreteSpace:
    """Discrete space on all of N under the identity enumeration."""
    return DiscreteSpace(lambda i: i, count=None, label="naturals")


def _seq_distance(s: tuple[int, ...], t: tuple[int, ...]) -> ExtendedRealPresentation:
    """Ultrametric 2**-(first disagreement index); 0 when equal."""
    n = max(len(s), len(t))
    for k in range(n):
        a = s[k] if k < len(s) else 0
        b = t[k] if k < len(t) else 0
        if a != b:
            return ExtendedRealPresentation.from_rational(Fraction(1, 2**k))
    return _ZERO


class BaireSpace(MetricSpace):
    """Sequences of naturals; ideal points are finitely supported.

    Ideal id ``n`` decodes to the exponent vector of ``n + 1`` (trailing
    zeros stripped), the package-wide encoding of finitely supported
    sequences.
    """

    label = "baire"
    ultrametric = True

    def sequence_at(self, i: IdealId) -> tuple[int, ...]:
        self.check_ideal(i)
        return encodings.decode_supported(i)

    def id_of_sequence(self, seq) -> IdealId:
        return encodings.encode_supported(seq)

    def distance(self, i: IdealId, j: IdealId) -> ExtendedRealPresentation:
        return _seq_distance(self.sequence_at(i), self.sequence_at(j))


class CantorSpace(BaireSpace):
    """Binary sequences; ideal id ``n`` decodes to the bits of ``n``."""

    label = "cantor"

    def sequence_at(self, i: IdealId) -> tuple[int, ...]:
        self.check_ideal(i)
        return encodings.decode_bits(i)

    def id_of_sequence(self, seq) -> IdealId:
        return encodings.encode_bits(seq)


def baire_space() -> BaireSpace:
    return BaireSpace()


def cantor_space() -> CantorSpace:
    return CantorSpace()


class ProductSpace(MetricSpace):
    """Binary product under the max metric and the pairing bijection."""

    def __init__(self, left: MetricSpace, right: MetricSpace):
        self.left = left
        self.right = right
        self.label = f"({left.label} x {right.label})"
        self.ultrametric = left.ultrametric and right.ultrametric

    def components(self, i: IdealId) -> tuple[IdealId, IdealId]:
        self.check_ideal(i)
        a, b = encodings.unpair(i)
        self.left.check_ideal(a)
        self.right.check_ideal(b)
        return a, b

    def id_of(self, a: IdealId, b: IdealId) -> IdealId:
        return encodings.pair(a, b)

    def distance(self, i: IdealId, j: IdealId) -> ExtendedRealPresentation:
        ia, ib = self.components(i)
        ja, jb = self.components(j)
        return self.left.distance(ia, ja).max_with(self.right.distance(ib, jb))


def product_space(left: MetricSpace, right: MetricSpace) -> ProductSpace:
    return ProductSpace(left, right)


class FinSeqSpace(MetricSpace):
    """Finite sequences over a base space.

    Equal lengths compare by max of coordinate distances; unequal
    lengths are infinitely far apart.
    """

    def __init__(self, base: MetricSpace):
        self.base = base
        self.label = f"{base.label}^<w"
        self.ultrametric = base.ultrametric

    def components(self, i: IdealId) -> tuple[IdealId, ...]:
        self.check_ideal(i)
        ids = encodings.decode_seq(i)
        for a in ids:
            self.base.check_ideal(a)
        return ids

    def id_of(self, ids) -> IdealId:
        return encodings.encode_seq(ids)

    def distance(self, i: IdealId, j: IdealId) -> ExtendedRealPresentation:
        s, t = self.components(i), self.components(j)
        if len(s) != len(t):
            return ExtendedRealPresentation.infinity()
        out = _ZERO
        for a, b in zip(s, t):
            out = out.max_with(self.base.distance(a, b))
        return out


def finseq_space(base: MetricSpace) -> FinSeqSpace:
    return FinSeqSpace(base)


class RealLineSpace(MetricSpace):
    """The real line with a rational enumeration as ideal points."""

    def __init__(self, enumeration: RationalEnumeration = DEFAULT_RATIONALS):
        self.enumeration = enumeration
        self.label = f"reals[{enumeration.label}]"

    def rational_at(self, i: IdealId) -> Fraction:
        self.check_ideal(i)
        return self.enumeration.at(i)

    def id_of_rational(self, q: Fraction) -> IdealId:
        return self.enumeration.index_of(q)

    def distance(self, i: IdealId, j: IdealId) -> ExtendedRealPresentation:
        return ExtendedRealPresentation.from_rational(
            abs(self.rational_at(i) - self.rational_at(j))
        )


def real_line(enumeration: RationalEnumeration = DEFAULT_RATIONALS) -> RealLineSpace:
    return RealLineSpace(enumeration)


class PointDescription:
    """A point given by a rapid Cauchy stream of ideal ids.

    ``ideal_at(i)`` is memoized: descriptions are immutable and the id
    stream is a pure function of the precision index.
    """

    __slots__ = ("_fn", "_memo", "stream")

    def __init__(self, fn: Callable[[int], IdealId],
                 stream: Optional[RealStream] = None):
        self._fn = fn
        self._memo: dict[int, IdealId] = {}
        #: Optional underlying real stream (set for real-line points).
        self.stream = stream

    @classmethod
    def const(cls, ideal: IdealId) -> "PointDescription":
        return cls(lambda i: ideal)

    def ideal_at(self, i: int) -> IdealId:
        if i < 0:
            raise ValueError("precision index must be a natural")
        got = self._memo.get(i)
        if got is None:
            got = self._memo[i] = self._fn(i)
        return got


def describe_real(x: RealStream, line: RealLineSpace) -> PointDescription:
    """View a real stream as a point description over the real line.

    Stage ``i`` uses the approximant at stage ``i + 1``, which keeps the
    ideal-id stream strictly rapid Cauchy.
    """
    enum = line.enumeration
    return PointDescription(lambda i: enum.index_of(x.approximant(i + 1)), stream=x)


def point_to_stream(p: PointDescription, line: RealLineSpace) -> RealStream:
    """Recover a real stream from a real-line point description.

    Prefers the original stream when the description carries one; the
    generic decoding shifts by two stages to restore strictness.
    """
    if p.stream is not None:
        return p.stream
    return RealStream(lambda i: line.rational_at(p.ideal_at(i + 2)))


@dataclass(frozen=True)
class LabeledExample:
    """A feature point with a binary label."""

    feature: PointDescription
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError("labels are 0 or 1")


def point_distance(space: MetricSpace, p: PointDescription, q: PointDescription,
                   precision: int) -> DyadicInterval:
    """An interval of width <= 2**-(precision-2) containing ``d(p, q)``.

    Evaluates the ideal-point distance at matched depth ``precision+1``
    and widens by the two point-to-ideal gaps.  In an ultrametric space
    an exactly-known ideal distance larger than the gap pins the value
    exactly (strong triangle inequality).

    Raises :class:`PrecisionExhausted` when the distance presentation
    still looks infinite at the evaluation depth.
    """
    if precision < 0:
        raise ValueError("precision must be a natural")
    k = precision + 1
    gap = Fraction(1, 2**k)
    pres = space.distance(p.ideal_at(k), q.ideal_at(k))
    if space.ultrametric and isinstance(pres.exact, Fraction):
        v = pres.exact
        if v > gap:
            return DyadicInterval(v, v)
        return DyadicInterval(Fraction(0), gap)
    iv = pres.classify(depth=k)
    if iv is None:
        raise PrecisionExhausted(
            f"distance in {space.label} still infinite at depth {k}"
        )
    lo = max(Fraction(0), iv.lo - 2 * gap)
    return DyadicInterval(lo, iv.hi + 2 * gap)


def check_rapid_cauchy(space: MetricSpace, p: PointDescription,
                       index_pairs, depth: int = 16) -> bool:
    """Test the description invariant on sampled index pairs ``i < j``."""
    for i, j in index_pairs:
        if not i < j:
            raise ValueError("pairs must satisfy i < j")
        pres = space.distance(p.ideal_at(i), p.ideal_at(j))
        bound = Fraction(1, 2**i)
        if isinstance(pres.exact, Fraction):
            if pres.exact >= bound:
                return False
            continue
        if pres.exact == INFINITE:
            return False
        iv = pres.classify(depth=max(depth, i + 2))
        if iv is None or iv.hi >= bound:
            return False
    return True
