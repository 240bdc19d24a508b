"""Sparse commutative polynomials and homogeneous quartic forms.

A monomial is a sorted tuple of variable indices with repetition, so
``x0**2 * x12 * x13`` is ``(0, 0, 12, 13)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .scalar import QuadScalar, RAffine, format_rational, to_fraction


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class Poly:
    """Polynomial with exact coefficients (Fraction or QuadScalar)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, i: int, coef=1) -> "Poly":
        return cls({(i,): coef if not isinstance(coef, int) else Fraction(coef)})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, QuadScalar)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            out[m] = c if cur is None else cur + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = _merge(m1, m2)
                    v = c1 * c2
                    cur = out.get(m)
                    out[m] = v if cur is None else cur + v
            return Poly(out)
        if isinstance(other, (int, Fraction, QuadScalar)):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def degree_set(self) -> set[int]:
        return {len(m) for m in self.terms}

    def map_coefficients(self, fn) -> "Poly":
        return Poly({m: fn(c) for m, c in self.terms.items()})

    def __repr__(self):
        return f"Poly({len(self.terms)} terms)"


class QuarticForm:
    """Homogeneous degree-4 form with RAffine coefficients; zero coefficients are never stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple, object] | None = None):
        clean = {}
        for mono, c in (coeffs or {}).items():
            mono = tuple(sorted(mono))
            if len(mono) != 4:
                raise ValueError(f"monomial {mono} is not of degree 4")
            c = RAffine.coerce(c)
            if c:
                if mono in clean:
                    c = clean[mono] + c
                    if not c:
                        del clean[mono]
                        continue
                clean[mono] = c
        self.coeffs = clean

    @classmethod
    def from_poly(cls, poly: Poly) -> "QuarticForm":
        return cls({m: to_fraction(c) for m, c in poly.terms.items()})

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self) -> Iterator[tuple]:
        return iter(sorted(self.coeffs))

    def __getitem__(self, mono: tuple) -> RAffine:
        return self.coeffs.get(tuple(sorted(mono)), RAffine())

    def __eq__(self, other):
        if not isinstance(other, QuarticForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __add__(self, other: "QuarticForm") -> "QuarticForm":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, RAffine()) + c
        return QuarticForm(out)

    def __sub__(self, other: "QuarticForm") -> "QuarticForm":
        return self + other.scale(-1)

    def scale(self, k) -> "QuarticForm":
        return QuarticForm({m: c * k for m, c in self.coeffs.items()})

    def at(self, r) -> "QuarticForm":
        """Specialize the parameter: every coefficient becomes the constant value at ``r``."""
        return QuarticForm({m: c(r) for m, c in self.coeffs.items()})

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs.values())

    def evaluate(self, point: Iterable, r=0):
        x = list(point)
        total = Fraction(0)
        for (i, j, k, l), c in self.coeffs.items():
            total += c(r) * x[i] * x[j] * x[k] * x[l]
        return total

    def first_difference(self, other: "QuarticForm"):
        """Smallest monomial where the two forms differ, or None."""
        for mono in sorted(set(self.coeffs) | set(other.coeffs)):
            if self[mono] != other[mono]:
                return mono
        return None

    def to_text(self) -> str:
        return "".join(f"{i} {j} {k} {l}: {self.coeffs[(i, j, k, l)]}\n" for i, j, k, l in self)

    @classmethod
    def from_text(cls, text: str) -> "QuarticForm":
        coeffs = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            head, sep, tail = line.partition(":")
            if not sep:
                raise ValueError(f"line {lineno}: missing ':'")
            mono = tuple(int(t) for t in head.split())
            if mono in coeffs:
                raise ValueError(f"line {lineno}: duplicate monomial {mono}")
            coeffs[mono] = RAffine.parse(tail)
        return cls(coeffs)

    def to_json(self) -> list:
        return [[list(m), format_rational(c.const), format_rational(c.r)] for m, c in
                ((m, self.coeffs[m]) for m in self)]

    def __repr__(self):
        return f"QuarticForm({len(self.coeffs)} monomials)"
