"""Canonical bijections between finite objects and naturals.

Every module that needs to number pairs, finite sequences, bit vectors,
finitely supported sequences, or rationals goes through the encodings
defined here, so that identical objects receive identical numbers
everywhere in the package.

The conventions are:

* pairs           -- Cantor pairing ``pair(a, b) = (a+b)(a+b+1)/2 + b``;
* finite lists    -- iterated pairing, ``[] -> 0``,
                     ``[h, *t] -> 1 + pair(h, encode(t))``;
* bit vectors     -- ``n`` maps to the binary digits of ``n``, least
                     significant first, with no trailing zeros;
* finitely supported sequences of naturals -- exponent vectors of the
  prime factorization of ``n + 1`` (Goedel style), so ``0`` is the all
  zero sequence and ``1`` is ``(1, 0, 0, ...)``;
* rationals       -- the signed diagonal enumeration described on
  :class:`RationalEnumeration`.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def pair(a: int, b: int) -> int:
    """Cantor pairing of two naturals."""
    if a < 0 or b < 0:
        raise ValueError("pairing is defined on naturals")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(n: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    if n < 0:
        raise ValueError("pairing is defined on naturals")
    s = (isqrt(8 * n + 1) - 1) // 2
    b = n - s * (s + 1) // 2
    return s - b, b


def encode_seq(items) -> int:
    """Number a finite sequence of naturals (iterated pairing)."""
    code = 0
    for item in reversed(list(items)):
        code = 1 + pair(item, code)
    return code


def decode_seq(code: int) -> tuple[int, ...]:
    """Inverse of :func:`encode_seq`; total on naturals."""
    out = []
    while code > 0:
        head, code = unpair(code - 1)
        out.append(head)
    return tuple(out)


def encode_bits(bits) -> int:
    """Number a finitely supported binary sequence."""
    code = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError("bit vectors take values in {0, 1}")
        code |= b << i
    return code


def decode_bits(code: int) -> tuple[int, ...]:
    """Binary digits of ``code``, least significant first."""
    out = []
    while code > 0:
        out.append(code & 1)
        code >>= 1
    return tuple(out)


def _prime_stream():
    found: list[int] = []
    n = 2
    while True:
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n
        n += 1


def encode_supported(seq) -> int:
    """Number a finitely supported sequence via prime exponents."""
    seq = tuple(seq)
    while seq and seq[-1] == 0:
        seq = seq[:-1]
    code = 1
    for p, e in zip(_prime_stream(), seq):
        code *= p**e
    return code - 1


def decode_supported(code: int) -> tuple[int, ...]:
    """Inverse of :func:`encode_supported` (trailing zeros stripped)."""
    if code < 0:
        raise ValueError("codes are naturals")
    n = code + 1
    exponents = []
    for p in _prime_stream():
        if n == 1:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exponents.append(e)
    return tuple(exponents)


class RationalEnumeration:
    """A surjective enumeration of the rationals with computable indexing.

    The default order interleaves signs along the Cantor diagonal over
    (denominator - 1, numerator - 1) pairs:

        0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, ...

    Unreduced pairs re-enumerate earlier values; duplicates are harmless
    because every consumer resolves ties by least index, and
    :meth:`index_of` always returns the least index (the reduced form,
    which lies on the earliest diagonal).
    """

    label = "diagonal"

    def at(self, i: int) -> Fraction:
        if i < 0:
            raise ValueError("enumeration index must be a natural")
        if i == 0:
            return Fraction(0)
        m, neg = divmod(i - 1, 2)
        den_m1, num_m1 = unpair(m)
        value = Fraction(num_m1 + 1, den_m1 + 1)
        return -value if neg else value

    def index_of(self, q: Fraction) -> int:
        q = Fraction(q)
        if q == 0:
            return 0
        m = pair(q.denominator - 1, abs(q.numerator) - 1)
        return 1 + 2 * m + (1 if q < 0 else 0)


class OneThirdFirstEnumeration(RationalEnumeration):
    """The diagonal enumeration with 1/3 promoted to index 0.

    Everything else shifts up by one; the later duplicate of 1/3 stays,
    which is fine since only least indices matter.
    """

    label = "one-third-first"

    _base = RationalEnumeration()

    def at(self, i: int) -> Fraction:
        if i == 0:
            return Fraction(1, 3)
        return self._base.at(i - 1)

    def index_of(self, q: Fraction) -> int:
        if Fraction(q) == Fraction(1, 3):
            return 0
        return 1 + self._base.index_of(q)


DEFAULT_RATIONALS = RationalEnumeration()
ONE_THIRD_FIRST = OneThirdFirstEnumeration()
