"""The exceptional Lie algebra g2 as 8x8 skew matrices acting on the octonions.

The basis X_0..X_13 is hardwired and orthonormal for ``g_bi(X, Y) = -tr(XY)``.
Indices split as k0 = {0,1,2}, m0 = {3,4,5}, m1 = {6..9}, m2 = {10..13}.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .cayley_dickson import CdElement, cd_multiply
from .errors import BracketNotInSpan, LevelMismatch, ZeroInput
from .scalar import QUAD_ZERO, SQRT3, QuadScalar

DIM = 14
HALF = Fraction(1, 2)


class SubspaceLabel(enum.Enum):
    k0 = (0, 1, 2)
    m0 = (3, 4, 5)
    m1 = (6, 7, 8, 9)
    m2 = (10, 11, 12, 13)

    @property
    def indices(self) -> tuple[int, ...]:
        return self.value

    @classmethod
    def of(cls, i: int) -> "SubspaceLabel":
        for label in cls:
            if i in label.value:
                return label
        raise IndexError(i)


class So8Matrix:
    """Immutable 8x8 matrix with QuadScalar entries acting on column vectors."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(QuadScalar.coerce(x) for x in row) for row in rows)
        if len(rows) != 8 or any(len(r) != 8 for r in rows):
            raise ValueError("So8Matrix must be 8x8")
        self.rows = rows

    @classmethod
    def zero(cls) -> "So8Matrix":
        return cls([[QUAD_ZERO] * 8 for _ in range(8)])

    @classmethod
    def elementary(cls, i: int, j: int) -> "So8Matrix":
        """E_ij with entry -1 at (i, j) and +1 at (j, i)."""
        rows = [[0] * 8 for _ in range(8)]
        rows[i][j] = -1
        rows[j][i] = 1
        return cls(rows)

    def __add__(self, other: "So8Matrix") -> "So8Matrix":
        return So8Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "So8Matrix") -> "So8Matrix":
        return So8Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return So8Matrix([[-a for a in r] for r in self.rows])

    def scale(self, k) -> "So8Matrix":
        return So8Matrix([[a * k for a in r] for r in self.rows])

    __rmul__ = scale

    def __matmul__(self, other: "So8Matrix") -> "So8Matrix":
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = QUAD_ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return So8Matrix(out)

    def apply(self, vec: Sequence) -> list:
        out = []
        for r in self.rows:
            acc = QUAD_ZERO
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def trace(self) -> QuadScalar:
        acc = QUAD_ZERO
        for i in range(8):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self) -> "So8Matrix":
        return So8Matrix(list(zip(*self.rows)))

    def is_skew(self) -> bool:
        return self.transpose() == -self

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, So8Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def to_json(self) -> list:
        return [[x.to_tuple_str() for x in r] for r in self.rows]


def _E(i: int, j: int) -> So8Matrix:
    return So8Matrix.elementary(i, j)


def _combo(coef, *terms: tuple) -> So8Matrix:
    acc = So8Matrix.zero()
    for k, (i, j) in terms:
        acc = acc + _E(i, j).scale(k)
    return acc.scale(coef)


@lru_cache(maxsize=None)
def basis() -> tuple[So8Matrix, ...]:
    s = SQRT3 * Fraction(1, 6)
    return (
        _combo(HALF, (1, (4, 5)), (1, (6, 7))),
        _combo(HALF, (1, (4, 6)), (-1, (5, 7))),
        _combo(HALF, (1, (4, 7)), (1, (5, 6))),
        _combo(-s, (2, (2, 3)), (-1, (4, 5)), (1, (6, 7))),
        _combo(s, (2, (1, 3)), (1, (4, 6)), (1, (5, 7))),
        _combo(-s, (2, (1, 2)), (-1, (4, 7)), (1, (5, 6))),
        _combo(-HALF, (1, (1, 7)), (-1, (2, 4))),
        _combo(HALF, (1, (1, 6)), (1, (2, 5))),
        _combo(-HALF, (1, (1, 5)), (-1, (2, 6))),
        _combo(HALF, (1, (1, 4)), (1, (2, 7))),
        _combo(s, (1, (1, 6)), (-1, (2, 5)), (2, (3, 4))),
        _combo(s, (1, (1, 7)), (1, (2, 4)), (2, (3, 5))),
        _combo(-s, (1, (1, 4)), (-1, (2, 7)), (-2, (3, 6))),
        _combo(-s, (1, (1, 5)), (1, (2, 6)), (-2, (3, 7))),
    )


def bi_form(a: So8Matrix, b: So8Matrix) -> QuadScalar:
    """``g_bi(A, B) = -tr(AB)``."""
    acc = QUAD_ZERO
    for i in range(8):
        for k in range(8):
            x, y = a.rows[i][k], b.rows[k][i]
            if x and y:
                acc = acc + x * y
    return -acc


def bracket(a: So8Matrix, b: So8Matrix) -> So8Matrix:
    return a @ b - b @ a


class G2Vector:
    """Coordinates in the basis X_0..X_13."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        coords = tuple(QuadScalar.coerce(c) for c in coords)
        if len(coords) != DIM:
            raise ValueError("G2Vector needs 14 coordinates")
        self.coords = coords

    @classmethod
    def unit(cls, i: int) -> "G2Vector":
        return cls([1 if k == i else 0 for k in range(DIM)])

    def to_matrix(self) -> So8Matrix:
        acc = So8Matrix.zero()
        for c, x in zip(self.coords, basis()):
            if c:
                acc = acc + x.scale(c)
        return acc

    @classmethod
    def from_matrix(cls, m: So8Matrix) -> "G2Vector":
        """Orthogonal projection onto the basis; raises if ``m`` is not in its span."""
        coords = [bi_form(m, x) for x in basis()]
        v = cls(coords)
        if v.to_matrix() != m:
            raise BracketNotInSpan("matrix is not in span{X_0..X_13}")
        return v

    def __add__(self, other):
        return G2Vector([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return G2Vector([a - b for a, b in zip(self.coords, other.coords)])

    def scale(self, k):
        return G2Vector([a * k for a in self.coords])

    def __eq__(self, other):
        if not isinstance(other, G2Vector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        terms = [f"({c})X{i}" for i, c in enumerate(self.coords) if c]
        return "G2Vector(" + (" + ".join(terms) or "0") + ")"


@lru_cache(maxsize=None)
def bracket_table() -> tuple:
    """``table[i][j]`` is a dict ``{k: c}`` with ``[X_i, X_j] = sum c X_k``."""
    xs = basis()
    table = [[None] * DIM for _ in range(DIM)]
    for i in range(DIM):
        table[i][i] = {}
        for j in range(i + 1, DIM):
            try:
                v = G2Vector.from_matrix(bracket(xs[i], xs[j]))
            except BracketNotInSpan as exc:
                raise BracketNotInSpan(f"[X{i}, X{j}] leaves g2") from exc
            entry = {k: c for k, c in enumerate(v.coords) if c}
            table[i][j] = entry
            table[j][i] = {k: -c for k, c in entry.items()}
    return tuple(tuple(row) for row in table)


@lru_cache(maxsize=None)
def structure_constants() -> tuple:
    """``c[i][j][k] = g_bi([X_i, X_j], X_k)`` as a nested tuple of QuadScalar."""
    table = bracket_table()
    return tuple(
        tuple(tuple(table[i][j].get(k, QUAD_ZERO) for k in range(DIM)) for j in range(DIM))
        for i in range(DIM)
    )


def bracket_vectors(a: G2Vector, b: G2Vector) -> G2Vector:
    table = bracket_table()
    out = [QUAD_ZERO] * DIM
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in enumerate(b.coords):
            if not y:
                continue
            for k, c in table[i][j].items():
                out[k] = out[k] + x * y * c
    return G2Vector(out)


# -- action on octonions and sedenions ------------------------------------------


def act_on_octonion(a: So8Matrix, x: CdElement) -> CdElement:
    if x.level != 3:
        raise LevelMismatch("octonion expected")
    return CdElement(3, tuple(a.apply(x.coords)))


def act_on_sedenion(a: So8Matrix, u: CdElement) -> CdElement:
    """Apply ``a`` to both octonion halves of a sedenion."""
    if u.level != 4:
        raise LevelMismatch("sedenion expected")
    return CdElement(4, tuple(a.apply(u.coords[:8]) + a.apply(u.coords[8:])))


def action_vectors(origin: Sequence[CdElement]) -> list[list]:
    """For each basis X_i, the concatenated coordinates of ``X_i`` applied to each origin element."""
    out = []
    for x in basis():
        vec = []
        for u in origin:
            vec.extend(act_on_sedenion(x, u).coords)
        out.append(vec)
    return out


def isotropy_subalgebra(*origin: CdElement) -> list[G2Vector]:
    """Kernel of ``A -> (A u_1, ..., A u_m)``; a single element or a pair acted on diagonally."""
    if not origin or all(u.is_zero() for u in origin):
        raise ZeroInput("isotropy of the zero element")
    cols = action_vectors(origin)
    matrix = [[QuadScalar.coerce(cols[i][r]) for i in range(DIM)] for r in range(len(cols[0]))]
    return [G2Vector(v) for v in linalg.kernel(matrix, zero=QUAD_ZERO, one=QuadScalar(1))]


def span_equals(vectors: Iterable[G2Vector], indices: Sequence[int]) -> bool:
    """Whether ``vectors`` span exactly ``span{X_i : i in indices}``."""
    rows = [list(v.coords) for v in vectors]
    if any(c for row in rows for k, c in enumerate(row) if k not in indices):
        return False
    return linalg.rank(rows) == len(indices) if rows else not indices


def is_derivation(a: So8Matrix) -> bool:
    """``a(xy) = (ax)y + x(ay)`` on all 64 octonion basis pairs."""
    for i in range(8):
        ei = CdElement.basis(3, i)
        ai = act_on_octonion(a, ei)
        for j in range(8):
            ej = CdElement.basis(3, j)
            aj = act_on_octonion(a, ej)
            lhs = act_on_octonion(a, cd_multiply(ei, ej))
            rhs = cd_multiply(ai, ej) + cd_multiply(ei, aj)
            if lhs != rhs:
                return False
    return True


def export_document() -> dict:
    """Basis matrices and nonzero structure constants, scalars as (1, sqrt2, sqrt3, sqrt6) tuples."""
    table = bracket_table()
    return {
        "basis": [x.to_json() for x in basis()],
        "structure_constants": [
            [i, j, k, c.to_tuple_str()]
            for i in range(DIM)
            for j in range(DIM)
            for k, c in sorted(table[i][j].items())
        ],
    }
