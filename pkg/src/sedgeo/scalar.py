"""Exact scalars: rationals, the field Q(sqrt2, sqrt3), and coefficients affine in r.

Rationals are plain :class:`fractions.Fraction` values.  ``QuadScalar`` stores
``a + b*sqrt2 + c*sqrt3 + d*sqrt6`` as four rationals; since ``{1, sqrt2, sqrt3,
sqrt6}`` is a Q-basis of the field the representation is canonical and
equality is coordinate equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import DegreeOverflow, NonAffineInR, NotRepresentable

_ZERO = Fraction(0)
_ONE = Fraction(1)

# basis element k is sqrt2**(k & 1) * sqrt3**(k >> 1); e_i * e_j = _FACTOR[i & j] * e_(i ^ j)
_FACTOR = (1, 2, 3, 6)
_RADICALS = (1, 2, 3, 6)

Number = Union[int, Fraction, "QuadScalar"]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadScalar):
        return x.to_fraction()
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is one."""
    q = to_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


class QuadScalar:
    """Immutable element of Q(sqrt2, sqrt3)."""

    __slots__ = ("_c", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        self._c = (to_fraction(a), to_fraction(b), to_fraction(c), to_fraction(d))
        self._hash = None

    @classmethod
    def _raw(cls, coords: tuple) -> "QuadScalar":
        obj = object.__new__(cls)
        obj._c = coords
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "QuadScalar":
        if isinstance(x, QuadScalar):
            return x
        return cls._raw((to_fraction(x), _ZERO, _ZERO, _ZERO))

    @classmethod
    def sqrt_of(cls, radical: int) -> "QuadScalar":
        """The basis radical sqrt(radical) for radical in {1, 2, 3, 6}."""
        k = _RADICALS.index(radical)
        coords = [_ZERO] * 4
        coords[k] = _ONE
        return cls._raw(tuple(coords))

    @property
    def coords(self) -> tuple:
        return self._c

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        c = self._c
        return not (c[0] or c[1] or c[2] or c[3])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        c = self._c
        return not (c[1] or c[2] or c[3])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._c[0]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QuadScalar):
            if isinstance(other, (int, Fraction)):
                c = self._c
                return QuadScalar._raw((c[0] + other, c[1], c[2], c[3]))
            return NotImplemented
        a, b = self._c, other._c
        return QuadScalar._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self):
        c = self._c
        return QuadScalar._raw((-c[0], -c[1], -c[2], -c[3]))

    def __sub__(self, other):
        if not isinstance(other, (QuadScalar, int, Fraction)):
            return NotImplemented
        return self + (-QuadScalar.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return QuadScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QuadScalar):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return QUAD_ZERO
                c = self._c
                return QuadScalar._raw((c[0] * other, c[1] * other, c[2] * other, c[3] * other))
            return NotImplemented
        out = [_ZERO, _ZERO, _ZERO, _ZERO]
        a, b = self._c, other._c
        for i in range(4):
            ai = a[i]
            if not ai:
                continue
            for j in range(4):
                bj = b[j]
                if not bj:
                    continue
                out[i ^ j] += _FACTOR[i & j] * ai * bj
        return QuadScalar._raw(tuple(out))

    __rmul__ = __mul__

    def _flip(self, mask: int) -> "QuadScalar":
        # Galois conjugate: negate the radicals sqrt2 (mask 1) and/or sqrt3 (mask 2)
        c = self._c
        out = []
        for k in range(4):
            parity = bin(k & mask).count("1") & 1
            out.append(-c[k] if parity else c[k])
        return QuadScalar._raw(tuple(out))

    def norm(self) -> Fraction:
        """Field norm down to Q (product of the four conjugates)."""
        return (self * self._flip(1) * self._flip(2) * self._flip(3)).to_fraction()

    def inverse(self) -> "QuadScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
        if self.is_rational():
            return QuadScalar._raw((1 / self._c[0], _ZERO, _ZERO, _ZERO))
        partial = self._flip(1) * self._flip(2) * self._flip(3)
        n = (self * partial).to_fraction()
        return partial * (1 / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.inverse() * Fraction(other)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QUAD_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._c[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._c[0]) if self.is_rational() else hash(self._c)
        return self._hash

    def sign(self) -> int:
        """Exact sign, decided by repeated squaring across the two radicals."""
        a, b, c, d = self._c
        p = (a, b)
        q = (c, d)
        sp, sq = _sign_sqrt2(*p), _sign_sqrt2(*q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq if sp == 0 else sp
        # p + q*sqrt3 with opposite signs: compare p**2 against 3 q**2
        diff_rat = a * a + 2 * b * b - 3 * (c * c + 2 * d * d)
        diff_rad = 2 * a * b - 6 * c * d
        return sp * _sign_sqrt2(diff_rat, diff_rad)

    def __lt__(self, other):
        return (self - QuadScalar.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - QuadScalar.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QuadScalar.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - QuadScalar.coerce(other)).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        a, b, c, d = self._c
        return float(a) + float(b) * math.sqrt(2) + float(c) * math.sqrt(3) + float(d) * math.sqrt(6)

    # -- text -------------------------------------------------------------

    def to_tuple_str(self) -> list:
        return [format_rational(x) for x in self._c]

    @classmethod
    def from_tuple_str(cls, items: Sequence[str]) -> "QuadScalar":
        if len(items) != 4:
            raise ValueError("QuadScalar needs four coordinates")
        return cls(*(parse_rational(s) for s in items))

    def __str__(self):
        parts = []
        for coef, rad in zip(self._c, ("", "*sqrt2", "*sqrt3", "*sqrt6")):
            if coef:
                parts.append(f"{format_rational(coef)}{rad}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"QuadScalar({', '.join(repr(format_rational(x)) for x in self._c)})"


def _sign_sqrt2(alpha: Fraction, beta: Fraction) -> int:
    sa = (alpha > 0) - (alpha < 0)
    sb = (beta > 0) - (beta < 0)
    if sb == 0 or sa == sb:
        return sa
    if sa == 0:
        return sb
    d = alpha * alpha - 2 * beta * beta
    return sa * ((d > 0) - (d < 0))


QUAD_ZERO = QuadScalar._raw((_ZERO, _ZERO, _ZERO, _ZERO))
QUAD_ONE = QuadScalar._raw((_ONE, _ZERO, _ZERO, _ZERO))
SQRT2 = QuadScalar.sqrt_of(2)
SQRT3 = QuadScalar.sqrt_of(3)
SQRT6 = QuadScalar.sqrt_of(6)


def quad_sqrt(q) -> QuadScalar:
    """Positive square root of a rational ``q`` inside Q(sqrt2, sqrt3).

    Raises :class:`NotRepresentable` unless ``q = t**2 * s`` with ``s`` in
    ``{1, 2, 3, 6}``.
    """
    q = to_fraction(q)
    if q < 0:
        raise NotRepresentable(f"{format_rational(q)} is negative")
    if q == 0:
        return QUAD_ZERO
    # sqrt(n/d) = sqrt(n*d)/d
    m = q.numerator * q.denominator
    for k, s in enumerate(_RADICALS):
        if m % s:
            continue
        t = math.isqrt(m // s)
        if t * t * s == m:
            coords = [_ZERO] * 4
            coords[k] = Fraction(t, q.denominator)
            return QuadScalar._raw(tuple(coords))
    raise NotRepresentable(f"sqrt({format_rational(q)}) is not in Q(sqrt2, sqrt3)")


def rational_sqrt(q) -> Fraction:
    """Square root of a rational perfect square."""
    root = quad_sqrt(q)
    if not root.is_rational():
        raise NotRepresentable(f"{format_rational(to_fraction(q))} is not a rational square")
    return root.to_fraction()


@dataclass(frozen=True)
class RAffine:
    """``const + coef_r * r`` with exact rational parts."""

    const: Fraction = _ZERO
    r: Fraction = _ZERO

    def __post_init__(self):
        object.__setattr__(self, "const", to_fraction(self.const))
        object.__setattr__(self, "r", to_fraction(self.r))

    @classmethod
    def coerce(cls, x) -> "RAffine":
        if isinstance(x, RAffine):
            return x
        return cls(to_fraction(x), _ZERO)

    def is_zero(self) -> bool:
        return not self.const and not self.r

    def __bool__(self):
        return not self.is_zero()

    def is_constant(self) -> bool:
        return not self.r

    def __call__(self, r) -> Fraction:
        return self.const + self.r * to_fraction(r)

    def __add__(self, other):
        try:
            other = RAffine.coerce(other)
        except TypeError:
            return NotImplemented
        return RAffine(self.const + other.const, self.r + other.r)

    __radd__ = __add__

    def __neg__(self):
        return RAffine(-self.const, -self.r)

    def __sub__(self, other):
        try:
            other = RAffine.coerce(other)
        except TypeError:
            return NotImplemented
        return RAffine(self.const - other.const, self.r - other.r)

    def __rsub__(self, other):
        return RAffine.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RAffine):
            if self.r and other.r:
                raise DegreeOverflow(f"({self}) * ({other}) is quadratic in r")
            return RAffine(
                self.const * other.const,
                self.const * other.r + self.r * other.const,
            )
        try:
            k = to_fraction(other)
        except TypeError:
            return NotImplemented
        return RAffine(self.const * k, self.r * k)

    __rmul__ = __mul__

    def __str__(self):
        return f"({format_rational(self.const)}) + ({format_rational(self.r)}) r"

    @classmethod
    def parse(cls, text: str) -> "RAffine":
        """Inverse of ``str``: ``"(a) + (b) r"``."""
        text = text.strip()
        head, sep, tail = text.partition(") + (")
        if not sep or not head.startswith("(") or not tail.endswith(") r"):
            raise ValueError(f"bad affine coefficient {text!r}")
        return cls(parse_rational(head[1:]), parse_rational(tail[:-3]))

    @classmethod
    def fit(cls, samples: Iterable[tuple]) -> "RAffine":
        """Affine interpolation through ``(r, value)`` pairs.

        The first two samples determine the line; every further sample must
        lie on it, otherwise :class:`NonAffineInR` is raised.
        """
        pts = [(to_fraction(r), to_fraction(v)) for r, v in samples]
        if len(pts) < 2:
            raise ValueError("need at least two samples")
        (r0, v0), (r1, v1) = pts[0], pts[1]
        if r0 == r1:
            raise ValueError("samples must have distinct r")
        slope = (v1 - v0) / (r1 - r0)
        line = cls(v0 - slope * r0, slope)
        for r, v in pts[2:]:
            if line(r) != v:
                raise NonAffineInR(
                    f"sample at r={format_rational(r)} is {format_rational(v)}, "
                    f"line predicts {format_rational(line(r))}"
                )
        return line


def raffine_eval(p: RAffine, r) -> Fraction:
    return p(r)
