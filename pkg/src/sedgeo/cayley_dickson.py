"""Cayley-Dickson algebras A_n with exact coefficients.

The product of ``(a, b)`` and ``(c, d)`` is ``(ac - d*b, da + bc*)`` and the
involution is ``(a, b)* = (a*, -b)``.  Coordinates of a level-n element are
indexed by the canonical basis ``e_0 ... e_{2^n - 1}``; the first half of the
coordinates is ``a`` and the second half ``b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from . import linalg
from .errors import LevelMismatch, ParseError, ZeroInput
from .scalar import QuadScalar, format_rational, parse_rational, to_fraction

MAX_LEVEL = 6

_ZERO = Fraction(0)


def _coerce(x):
    if isinstance(x, QuadScalar):
        return x.to_fraction() if x.is_rational() else x
    return to_fraction(x)


@dataclass(frozen=True)
class CdElement:
    level: int
    coords: tuple

    def __post_init__(self):
        if not 0 <= self.level <= MAX_LEVEL:
            raise ValueError(f"level {self.level} outside 0..{MAX_LEVEL}")
        coords = tuple(_coerce(c) for c in self.coords)
        if len(coords) != 1 << self.level:
            raise ValueError(f"level {self.level} needs {1 << self.level} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, level: int) -> "CdElement":
        return cls(level, (_ZERO,) * (1 << level))

    @classmethod
    def basis(cls, level: int, k: int, coef=1) -> "CdElement":
        coords = [_ZERO] * (1 << level)
        coords[k] = to_fraction(coef)
        return cls(level, tuple(coords))

    @classmethod
    def from_sparse(cls, level: int, items: Iterable[tuple]) -> "CdElement":
        coords = [_ZERO] * (1 << level)
        for k, c in items:
            coords[int(k)] += _coerce(parse_rational(c) if isinstance(c, str) else c)
        return cls(level, tuple(coords))

    def to_sparse(self) -> list[tuple[int, str]]:
        return [(k, format_rational(c)) for k, c in enumerate(self.coords) if c]

    def to_json(self) -> dict:
        return {"level": self.level, "coords": [[k, c] for k, c in self.to_sparse()]}

    @classmethod
    def from_json(cls, doc: dict) -> "CdElement":
        return cls.from_sparse(doc["level"], ((k, c) for k, c in doc["coords"]))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "CdElement"):
        if not isinstance(other, CdElement):
            raise TypeError("expected CdElement")
        if other.level != self.level:
            raise LevelMismatch(f"levels {self.level} and {other.level} differ")

    def __add__(self, other):
        self._check(other)
        return CdElement(self.level, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return CdElement(self.level, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CdElement(self.level, tuple(-a for a in self.coords))

    def scale(self, k) -> "CdElement":
        return CdElement(self.level, tuple(a * k for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, CdElement):
            return cd_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def halves(self) -> tuple["CdElement", "CdElement"]:
        h = len(self.coords) // 2
        return CdElement(self.level - 1, self.coords[:h]), CdElement(self.level - 1, self.coords[h:])

    @classmethod
    def pair(cls, a: "CdElement", b: "CdElement") -> "CdElement":
        a._check(b)
        return cls(a.level + 1, a.coords + b.coords)

    def __str__(self):
        return format_element(self)


# -- multiplication ------------------------------------------------------------


def _conj_tuple(x: tuple) -> tuple:
    return (x[0],) + tuple(-c for c in x[1:])


def _recursive_product(x: tuple, y: tuple) -> tuple:
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    ac = _recursive_product(a, c)
    dsb = _recursive_product(_conj_tuple(d), b)
    da = _recursive_product(d, a)
    bcs = _recursive_product(b, _conj_tuple(c))
    return tuple(p - q for p, q in zip(ac, dsb)) + tuple(p + q for p, q in zip(da, bcs))


def recursive_multiply(x: CdElement, y: CdElement) -> CdElement:
    """The doubling formula applied literally; slow, used as ground truth."""
    x._check(y)
    return CdElement(x.level, _recursive_product(x.coords, y.coords))


@lru_cache(maxsize=None)
def structure_table(level: int) -> tuple:
    """``table[i][j] = (sign, k)`` with ``e_i e_j = sign * e_k``, derived from the recursion."""
    dim = 1 << level
    table = []
    for i in range(dim):
        row = []
        ei = tuple(Fraction(int(t == i)) for t in range(dim))
        for j in range(dim):
            ej = tuple(Fraction(int(t == j)) for t in range(dim))
            prod = _recursive_product(ei, ej)
            nonzero = [(k, c) for k, c in enumerate(prod) if c]
            if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
                raise AssertionError(f"e{i} e{j} is not a signed basis element")
            k, c = nonzero[0]
            row.append((int(c), k))
        table.append(tuple(row))
    table = tuple(table)
    _verify_table(level, table)
    return table


def _verify_table(level: int, table: tuple) -> None:
    # bilinear extension of the cached table must agree with the recursion
    dim = 1 << level
    x = tuple(Fraction(k + 1, 2 + (k % 3)) for k in range(dim))
    y = tuple(Fraction((-1) ** k * (2 * k + 1), 1 + k % 4) for k in range(dim))
    if _table_product(table, x, y) != _recursive_product(x, y):
        raise AssertionError(f"structure table for level {level} disagrees with the recursion")


def _table_product(table: tuple, x: tuple, y: tuple) -> tuple:
    out = [_ZERO] * len(x)
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            s, k = row[j]
            out[k] = out[k] + xi * yj if s > 0 else out[k] - xi * yj
    return tuple(out)


def cd_multiply(x: CdElement, y: CdElement) -> CdElement:
    x._check(y)
    return CdElement(x.level, _table_product(structure_table(x.level), x.coords, y.coords))


def conjugate(x: CdElement) -> CdElement:
    return CdElement(x.level, _conj_tuple(x.coords))


def re_part(x: CdElement) -> CdElement:
    return (x + conjugate(x)).scale(Fraction(1, 2))


def im_part(x: CdElement) -> CdElement:
    return (x - conjugate(x)).scale(Fraction(1, 2))


def inner(x: CdElement, y: CdElement):
    """``<x, y> = Re(x y*)``, read off the e_0 coordinate."""
    x._check(y)
    return cd_multiply(x, conjugate(y)).coords[0]


def norm_sq(x: CdElement):
    return inner(x, x)


# -- annihilators and zero divisors -------------------------------------------


def left_multiplication_matrix(u: CdElement) -> list[list]:
    """Matrix of ``x -> u x``; column j is ``u e_j``."""
    dim = 1 << u.level
    cols = [cd_multiply(u, CdElement.basis(u.level, j)).coords for j in range(dim)]
    return linalg.transpose(cols)


def annihilator_basis(u: CdElement) -> list[CdElement]:
    if u.is_zero():
        raise ZeroInput("annihilator of the zero element")
    vectors = linalg.kernel(left_multiplication_matrix(u))
    return [CdElement(u.level, tuple(v)) for v in vectors]


def annihilator_dim(u: CdElement) -> int:
    return len(annihilator_basis(u))


def annihilator_bound(level: int) -> int:
    """Upper bound ``2^n - 4n + 4`` on the annihilator dimension."""
    return (1 << level) - 4 * level + 4


def is_zero_divisor(u: CdElement) -> bool:
    return not u.is_zero() and annihilator_dim(u) > 0


def is_zero_divisor_pair(u: CdElement, v: CdElement) -> bool:
    u._check(v)
    return norm_sq(u) == 2 and norm_sq(v) == 2 and cd_multiply(u, v).is_zero()


def characterization_check(a: CdElement, b: CdElement) -> bool:
    """Whether ``(a, b)`` in the sedenions is a zero divisor, decided by an exact kernel."""
    if a.level != 3 or b.level != 3:
        raise LevelMismatch("characterization_check takes two octonions")
    return is_zero_divisor(CdElement.pair(a, b))


def octonion_criterion(a: CdElement, b: CdElement) -> bool:
    """Closed-form test: a, b imaginary, of equal nonzero norm, and orthogonal."""
    if a.level != 3 or b.level != 3:
        raise LevelMismatch("octonion_criterion takes two octonions")
    imaginary = not a.coords[0] and not b.coords[0]
    na, nb = norm_sq(a), norm_sq(b)
    return imaginary and na == nb and na != 0 and inner(a, b) == 0


@dataclass(frozen=True)
class ZeroDivisorPair:
    u: CdElement
    v: CdElement

    def __post_init__(self):
        if not is_zero_divisor_pair(self.u, self.v):
            raise ValueError(f"{format_pair(self)} is not a normalized zero-divisor pair")

    def __str__(self):
        return format_pair(self)


def standard_zero_divisors() -> list[ZeroDivisorPair]:
    """Pairs ``(e_i + e_j, e_k +/- e_l)`` with ``u v = 0`` over the standard index ranges."""
    found = []
    for i, j in product(range(1, 7), range(9, 16)):
        u = CdElement.basis(4, i) + CdElement.basis(4, j)
        for k, l in product(range(i + 1, 8), range(9, 16)):
            for sign in (1, -1):
                v = CdElement.basis(4, k) + CdElement.basis(4, l, sign)
                if cd_multiply(u, v).is_zero():
                    found.append(ZeroDivisorPair(u, v))
    return found


# -- text form ------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?e\s*(\d+)")


def parse_element(text: str, level: int = 4) -> CdElement:
    """Parse sums like ``"e4+e13"``, ``"e1 - 1/2 e3"`` or ``"2*e0"``."""
    s = text
    pos = 0
    items = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TERM.match(s, pos)
        if not m or (items and not m.group(1)):
            raise ParseError(f"expected a term like '+e3' in {text!r}", pos)
        sign = -1 if m.group(1) == "-" else 1
        coef = parse_rational(m.group(2)) if m.group(2) else Fraction(1)
        k = int(m.group(3))
        if k >= 1 << level:
            raise ParseError(f"e{k} does not exist at level {level}", m.start(3))
        items.append((k, sign * coef))
        pos = m.end()
    if not items:
        raise ParseError("empty element expression", 0)
    return CdElement.from_sparse(level, items)


def format_element(x: CdElement) -> str:
    parts = []
    for k, c in enumerate(x.coords):
        if not c:
            continue
        if isinstance(c, QuadScalar):
            parts.append(f"+({c})e{k}")
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else f"{format_rational(mag)}*"
        parts.append(f"{sign}{coef}e{k}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def format_pair(p: ZeroDivisorPair | Sequence[CdElement]) -> str:
    u, v = (p.u, p.v) if isinstance(p, ZeroDivisorPair) else p
    return f"({format_element(u)},{format_element(v)})"


def parse_pair(text: str, level: int = 4) -> tuple[CdElement, CdElement]:
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")) or t.count(",") != 1:
        raise ParseError(f"expected '(u,v)' in {text!r}", 0)
    left, right = t[1:-1].split(",")
    return parse_element(left, level), parse_element(right, level)
