"""Invariant metrics on the sedenion zero-divisor manifolds and their curvature.

The engine works on a reductive decomposition ``g = h + m`` given by an adapted
basis.  Vectors are sparse dicts ``{basis index: coefficient}`` where the
coefficients may be exact scalars or :class:`~sedgeo.polynomial.Poly`; the same
formulas therefore produce single curvature values and the whole quartic F_r.

Quantities that depend on the metric parameter ``r`` are computed exactly at
rational sample points with rational square roots and reconstructed as affine
functions of ``r``; a third sample certifies the reconstruction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import g2, linalg
from .cayley_dickson import CdElement, ZeroDivisorPair
from .errors import DegenerateMetric, IsotropyMismatch, NotDiagonal
from .polynomial import Poly, QuarticForm
from .scalar import QUAD_ONE, QUAD_ZERO, QuadScalar, RAffine, quad_sqrt, to_fraction

SAMPLE_R = (Fraction(1, 4), Fraction(1), Fraction(4, 9))

HALF = Fraction(1, 2)


def _axpy(acc: dict, k, val) -> None:
    cur = acc.get(k)
    acc[k] = val if cur is None else cur + val


def _clean(v: dict) -> dict:
    return {k: c for k, c in v.items() if c}


class ReductiveSpace:
    """Lie algebra ``h + m`` with an inner product on ``m``.

    ``table[a][b]`` maps to ``{k: c}`` with ``[E_a, E_b] = sum c E_k``; the
    basis must be adapted, i.e. ``h_idx`` spans h and ``m_idx`` spans m.
    ``metric`` is a square matrix over ``m_idx``.
    """

    def __init__(self, table, h_idx: Sequence[int], m_idx: Sequence[int], metric: Sequence[Sequence]):
        self.table = table
        self.h_idx = tuple(h_idx)
        self.m_idx = tuple(m_idx)
        self._h = frozenset(self.h_idx)
        self._m = frozenset(self.m_idx)
        n = len(self.m_idx)
        if len(metric) != n or any(len(row) != n for row in metric):
            raise ValueError("metric must be square over m")
        self.metric = [[QuadScalar.coerce(x) for x in row] for row in metric]
        for a in range(n):
            for b in range(n):
                if self.metric[a][b] != self.metric[b][a]:
                    raise ValueError("metric is not symmetric")
        self._g = {}
        for a, ia in enumerate(self.m_idx):
            row = {ib: self.metric[a][b] for b, ib in enumerate(self.m_idx) if self.metric[a][b]}
            if row:
                self._g[ia] = row
        try:
            inv = linalg.inverse(self.metric, zero=QUAD_ZERO, one=QUAD_ONE)
        except ZeroDivisionError as exc:
            raise DegenerateMetric("metric on m is singular") from exc
        self._ginv = {}
        for a, ia in enumerate(self.m_idx):
            row = {ib: inv[a][b] for b, ib in enumerate(self.m_idx) if inv[a][b]}
            if row:
                self._ginv[ia] = row

    # -- linear structure --------------------------------------------------

    def unit(self, i: int) -> dict:
        return {i: QUAD_ONE}

    def bracket(self, v: Mapping, w: Mapping) -> dict:
        out: dict = {}
        table = self.table
        for a, va in v.items():
            row = table[a]
            for b, wb in w.items():
                entry = row[b]
                if not entry:
                    continue
                p = va * wb
                for k, c in entry.items():
                    _axpy(out, k, p * c)
        return _clean(out)

    def proj_m(self, v: Mapping) -> dict:
        return {k: c for k, c in v.items() if k in self._m}

    def proj_h(self, v: Mapping) -> dict:
        return {k: c for k, c in v.items() if k in self._h}

    def g(self, v: Mapping, w: Mapping):
        acc = QUAD_ZERO
        for a, va in v.items():
            row = self._g.get(a)
            if row is None:
                continue
            for b, gab in row.items():
                wb = w.get(b)
                if wb is not None:
                    acc = acc + va * gab * wb
        return acc

    def raise_index(self, covector: Mapping) -> dict:
        """The vector V with ``g(V, E_k) = covector[k]`` for every m basis index k."""
        out: dict = {}
        for k, val in covector.items():
            for j, gkj in self._ginv.get(k, {}).items():
                _axpy(out, j, gkj * val)
        return _clean(out)

    # -- connection and curvature -----------------------------------------

    def u_tensor(self, x: Mapping, y: Mapping) -> dict:
        """U(X, Y) defined by ``2 g(U(X,Y), Z) = g([Z,X]_m, Y) + g(X, [Z,Y]_m)``."""
        cov = {}
        for k in self.m_idx:
            z = self.unit(k)
            val = self.g(self.proj_m(self.bracket(z, x)), y) + self.g(x, self.proj_m(self.bracket(z, y)))
            if val:
                cov[k] = val * HALF
        return self.raise_index(cov)

    def sectional_numerator(self, x: Mapping, y: Mapping):
        """``g(R_{X,Y} X, Y)`` by the six-term reductive formula."""
        b = self.proj_m(self.bracket(x, y))
        total = self.g(b, b) * Fraction(-3, 4)
        total = total - self.g(self.proj_m(self.bracket(x, b)), y) * HALF
        # [Y, [Y, X]_m]_m = -[Y, B]_m
        total = total + self.g(self.proj_m(self.bracket(y, b)), x) * HALF
        uxy = self.u_tensor(x, y)
        total = total + self.g(uxy, uxy)
        total = total - self.g(self.u_tensor(x, x), self.u_tensor(y, y))
        bh = self.proj_h(self.bracket(x, y))
        if bh:
            total = total + self.g(y, self.proj_m(self.bracket(bh, x)))
        return total

    def _pairs(self):
        # (i, j, ginv_ij) over m; summing B(E_i, E_j) g^{ij} equals the orthonormal-frame trace
        for i, row in self._ginv.items():
            for j, gij in row.items():
                yield i, j, gij

    def mean_curvature_vector(self) -> dict:
        """``Z = sum_i U(X_i, X_i)`` over a g-orthonormal frame of m."""
        out: dict = {}
        for i, j, gij in self._pairs():
            for k, c in self.u_tensor(self.unit(i), self.unit(j)).items():
                _axpy(out, k, c * gij)
        return _clean(out)

    def ricci_quadratic(self, x: Mapping, z: Mapping | None = None):
        """``Ric(X, X)`` from the reductive Ricci formula with the trace term in ``Z``."""
        if z is None:
            z = self.mean_curvature_vector()
        ad_x = {i: self.bracket(x, self.unit(i)) for i in self.m_idx}
        ad_x_m = {i: self.proj_m(v) for i, v in ad_x.items()}
        first = QUAD_ZERO
        for i, j, gij in self._pairs():
            ej = self.unit(j)
            term = self.g(ad_x_m[i], ad_x_m[j])
            term = term + self.g(self.proj_m(self.bracket(x, ad_x_m[i])), ej)
            h_part = self.proj_h(ad_x[i])
            if h_part:
                term = term + self.g(self.proj_m(self.bracket(x, h_part)), ej) * 2
            first = first + term * gij
        # w[i][j] = g([E_i, E_j]_m, X)
        w = {}
        for i in self.m_idx:
            for j in self.m_idx:
                val = self.g(self.proj_m(self.bracket(self.unit(i), self.unit(j))), x)
                if val:
                    w[(i, j)] = val
        second = QUAD_ZERO
        for (a, b), wab in w.items():
            for c, gac in self._ginv.get(a, {}).items():
                for d, gbd in self._ginv.get(b, {}).items():
                    wcd = w.get((c, d))
                    if wcd is not None:
                        second = second + gac * gbd * wab * wcd
        total = first * (-HALF) + second * Fraction(1, 4)
        if z:
            total = total - self.g(self.proj_m(self.bracket(z, x)), x)
        return total

    def ricci_matrix(self) -> list[list]:
        """Ricci tensor on the m basis, by polarization of the quadratic form."""
        z = self.mean_curvature_vector()
        idx = self.m_idx
        diag = {i: self.ricci_quadratic(self.unit(i), z) for i in idx}
        out = [[QUAD_ZERO] * len(idx) for _ in idx]
        for a, i in enumerate(idx):
            out[a][a] = diag[i]
            for b in range(a + 1, len(idx)):
                j = idx[b]
                q = self.ricci_quadratic({i: QUAD_ONE, j: QUAD_ONE}, z)
                val = (q - diag[i] - diag[j]) * HALF
                out[a][b] = out[b][a] = val
        return out

    def is_skew(self, y: Mapping) -> bool:
        """Whether ``[Y, -]_m`` is skew-symmetric on m for the metric."""
        images = {i: self.proj_m(self.bracket(y, self.unit(i))) for i in self.m_idx}
        for i in self.m_idx:
            for j in self.m_idx:
                if j < i:
                    continue
                if self.g(images[i], self.unit(j)) + self.g(self.unit(i), images[j]):
                    return False
        return True


# -- carriers and metrics -----------------------------------------------------------


class Carrier(enum.Enum):
    FullG2 = "FullG2"
    ReductiveM = "ReductiveM"

    @property
    def m_indices(self) -> tuple[int, ...]:
        return tuple(range(14)) if self is Carrier.FullG2 else tuple(range(3, 14))

    @property
    def h_indices(self) -> tuple[int, ...]:
        return () if self is Carrier.FullG2 else (0, 1, 2)


@dataclass(frozen=True)
class InvariantMetric:
    """Symmetric form on the carrier, ``const + rcoef * r`` entrywise in the X basis.

    Constant parts live in Q(sqrt2, sqrt3); the r-parts are rational.
    """

    carrier: Carrier
    const: tuple
    rcoef: tuple

    def __post_init__(self):
        n = len(self.carrier.m_indices)
        const = tuple(tuple(QuadScalar.coerce(x) for x in row) for row in self.const)
        rcoef = tuple(tuple(to_fraction(x) for x in row) for row in self.rcoef)
        if len(const) != n or len(rcoef) != n or any(len(r) != n for r in const + rcoef):
            raise ValueError(f"{self.carrier.value} metric must be {n}x{n}")
        for a in range(n):
            for b in range(a):
                if const[a][b] != const[b][a] or rcoef[a][b] != rcoef[b][a]:
                    raise ValueError("metric is not symmetric")
        object.__setattr__(self, "const", const)
        object.__setattr__(self, "rcoef", rcoef)

    @classmethod
    def diagonal(cls, carrier: Carrier, entries: Mapping[int, object]) -> "InvariantMetric":
        idx = carrier.m_indices
        n = len(idx)
        const = [[QUAD_ZERO] * n for _ in range(n)]
        rcoef = [[Fraction(0)] * n for _ in range(n)]
        for a, i in enumerate(idx):
            e = entries[i]
            if isinstance(e, RAffine):
                const[a][a] = QuadScalar.coerce(e.const)
                rcoef[a][a] = e.r
            else:
                const[a][a] = QuadScalar.coerce(e)
        return cls(carrier, const, rcoef)

    @property
    def indices(self) -> tuple[int, ...]:
        return self.carrier.m_indices

    def is_symbolic(self) -> bool:
        return any(any(row) for row in self.rcoef)

    def evaluate(self, r=None) -> list[list[QuadScalar]]:
        if self.is_symbolic():
            if r is None:
                raise ValueError("metric depends on r; pass a value")
            r = to_fraction(r)
            return [[c + k * r for c, k in zip(cr, kr)] for cr, kr in zip(self.const, self.rcoef)]
        return [list(row) for row in self.const]

    def entry(self, i: int, j: int) -> RAffine:
        a, b = self.indices.index(i), self.indices.index(j)
        return RAffine(self.const[a][b].to_fraction(), self.rcoef[a][b])

    def is_diagonal(self) -> bool:
        n = len(self.indices)
        return all(not self.const[a][b] and not self.rcoef[a][b] for a in range(n) for b in range(n) if a != b)

    def diagonal_at(self, r=None) -> list:
        if not self.is_diagonal():
            raise NotDiagonal("metric is not diagonal in the X basis")
        m = self.evaluate(r)
        return [m[a][a] for a in range(len(m))]

    def space(self, r=None) -> ReductiveSpace:
        return ReductiveSpace(g2.bracket_table(), self.carrier.h_indices, self.indices, self.evaluate(r))

    def is_positive_definite(self, r=None) -> bool:
        return linalg.leading_minors_positive(self.evaluate(r))

    def is_isotropy_invariant(self, r=None) -> bool:
        """ad(X_k) skew on the carrier for every X_k in the isotropy algebra."""
        sp = self.space(r)
        return all(sp.is_skew(sp.unit(k)) for k in self.carrier.h_indices)

    def to_json(self) -> dict:
        return {
            "carrier": self.carrier.value,
            "indices": list(self.indices),
            "const": [[x.to_tuple_str() for x in row] for row in self.const],
            "r": [[str(x) for x in row] for row in self.rcoef],
        }


def gram_matrix(vectors: Sequence[Sequence]) -> list[list[QuadScalar]]:
    out = []
    for v in vectors:
        row = []
        for w in vectors:
            acc = QUAD_ZERO
            for a, b in zip(v, w):
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def metric_from_origin(origin) -> InvariantMetric:
    """Metric induced from the ambient Euclidean space at an origin.

    A zero-divisor pair gives a left-invariant metric on all of g2; a single
    sedenion gives the metric on m for the quotient by its isotropy, which must
    be exactly span{X_0, X_1, X_2}.
    """
    if isinstance(origin, ZeroDivisorPair):
        elems = (origin.u, origin.v)
    elif isinstance(origin, CdElement):
        elems = (origin,)
    else:
        elems = tuple(origin)
    gram = gram_matrix(g2.action_vectors(elems))
    if len(elems) == 2:
        if not linalg.leading_minors_positive(gram):
            raise DegenerateMetric("origin gives a singular metric on g2")
        return InvariantMetric(Carrier.FullG2, gram, [[0] * 14 for _ in range(14)])
    if len(elems) != 1:
        raise ValueError("origin must be a sedenion or a pair of sedenions")
    iso = g2.isotropy_subalgebra(elems[0])
    if not g2.span_equals(iso, (0, 1, 2)):
        raise IsotropyMismatch(f"isotropy of {elems[0]} is not span{{X0, X1, X2}}")
    for k in (0, 1, 2):
        if any(gram[k]):
            raise IsotropyMismatch(f"X{k} does not annihilate the origin")
    idx = Carrier.ReductiveM.m_indices
    sub = [[gram[i][j] for j in idx] for i in idx]
    if not linalg.leading_minors_positive(sub):
        raise DegenerateMetric("origin gives a singular metric on m")
    return InvariantMetric(Carrier.ReductiveM, sub, [[0] * len(idx) for _ in idx])


def gr_metric() -> InvariantMetric:
    """The one-parameter family: 1/3 on X3, X4; r on X5; 1/2 on m1; 1/6 on m2."""
    entries = {3: Fraction(1, 3), 4: Fraction(1, 3), 5: RAffine(0, 1)}
    entries.update({i: HALF for i in range(6, 10)})
    entries.update({i: Fraction(1, 6) for i in range(10, 14)})
    return InvariantMetric.diagonal(Carrier.ReductiveM, entries)


def z_metric() -> InvariantMetric:
    """Metric on g2 from the origin (e4 + e13, e6 + e15)."""
    from .cayley_dickson import parse_element

    return metric_from_origin((parse_element("e4+e13"), parse_element("e6+e15")))


def zd_metric() -> InvariantMetric:
    """Metric on m from the origin u0 = e1 + e10."""
    from .cayley_dickson import parse_element

    return metric_from_origin(parse_element("e1+e10"))


# -- symbolic r -------------------------------------------------------------------------


def affine_in_r(fn: Callable[[Fraction], Mapping], samples: Sequence = SAMPLE_R) -> dict:
    """Evaluate ``fn`` (returning ``{key: rational}``) at each sample and fit affinely.

    Keys missing from a sample count as zero.  Zero lines are dropped.
    """
    values = [(r, {k: to_fraction(v) for k, v in fn(r).items()}) for r in samples]
    keys = set()
    for _, vals in values:
        keys |= set(vals)
    out = {}
    for key in keys:
        line = RAffine.fit([(r, vals.get(key, Fraction(0))) for r, vals in values])
        if line:
            out[key] = line
    return out


def _frame_scales(metric: InvariantMetric, r) -> list[QuadScalar]:
    """``g(X_i, X_i)^(-1/2)``, the factors turning X_i into the orthonormal Y_i."""
    return [quad_sqrt(1 / d.to_fraction()) for d in metric.diagonal_at(r)]


def _rational(x) -> Fraction:
    return QuadScalar.coerce(x).to_fraction()


@dataclass
class CurvatureReport:
    """Ricci data in the orthonormal frame ``Y_i = g(X_i, X_i)^(-1/2) X_i``."""

    indices: tuple
    ricci_matrix: list  # RAffine, orthonormal frame
    scalar_curvature: RAffine
    einstein_deviation: list  # RAffine residuals; all zero iff Einstein
    ricci_x: list | None = None  # X-basis values when the metric is fixed

    def ricci_diagonal(self) -> list[RAffine]:
        return [self.ricci_matrix[a][a] for a in range(len(self.indices))]

    def einstein_at(self, r) -> bool:
        return all(d(r) == 0 for d in self.einstein_deviation)

    def to_json(self) -> dict:
        out = {
            "indices": list(self.indices),
            "ricci_orthonormal": [[str(x) for x in row] for row in self.ricci_matrix],
            "scalar_curvature": str(self.scalar_curvature),
            "einstein_deviation": [str(x) for x in self.einstein_deviation],
        }
        if self.ricci_x is not None:
            out["ricci_x_basis"] = [[x.to_tuple_str() for x in row] for row in self.ricci_x]
        return out


def _report_from_orthonormal(indices, ric_y: list[list[RAffine]], ricci_x=None) -> CurvatureReport:
    n = len(indices)
    scal = RAffine()
    for a in range(n):
        scal = scal + ric_y[a][a]
    deviation = []
    for a in range(n):
        for b in range(a + 1, n):
            deviation.append(ric_y[a][b])
        if a:
            deviation.append(ric_y[a][a] - ric_y[0][0])
    return CurvatureReport(tuple(indices), ric_y, scal, deviation, ricci_x)


def _ricci_orthonormal_at(metric: InvariantMetric, r, raw: list[list]) -> list[list[Fraction]]:
    s = _frame_scales(metric, r)
    n = len(raw)
    return [[_rational(raw[a][b] * s[a] * s[b]) for b in range(n)] for a in range(n)]


def ricci_reductive(metric: InvariantMetric, r=None, samples: Sequence = SAMPLE_R) -> CurvatureReport:
    """Ricci tensor via the reductive formula, polarized from its quadratic form.

    For a symbolic metric with ``r=None`` the orthonormal-frame Ricci is
    reconstructed affinely from ``samples``.
    """
    n = len(metric.indices)
    if metric.is_symbolic() and r is None:
        def at(rv):
            raw = metric.space(rv).ricci_matrix()
            ric = _ricci_orthonormal_at(metric, rv, raw)
            return {(a, b): ric[a][b] for a in range(n) for b in range(n)}

        fitted = affine_in_r(at, samples)
        ric_y = [[fitted.get((a, b), RAffine()) for b in range(n)] for a in range(n)]
        return _report_from_orthonormal(metric.indices, ric_y)
    raw = metric.space(r).ricci_matrix()
    ric = _ricci_orthonormal_at(metric, r, raw)
    ric_y = [[RAffine(x) for x in row] for row in ric]
    return _report_from_orthonormal(metric.indices, ric_y, ricci_x=raw)


def ricci_left_invariant(metric: InvariantMetric) -> CurvatureReport:
    """Ricci of a left-invariant metric from the structure constants in an orthonormal frame.

    ``c_ijk = g([Y_i, Y_j], Y_k)`` with ``Y_i = g(X_i, X_i)^(-1/2) X_i``; the metric
    must be diagonal in the X basis.
    """
    if metric.carrier is not Carrier.FullG2:
        raise ValueError("left-invariant Ricci needs a metric on all of g2")
    d = metric.diagonal_at()
    s = _frame_scales(metric, None)
    table = g2.bracket_table()
    n = 14
    # [Y_i, Y_j] = s_i s_j sum_k C^k_ij X_k, and g(X_k, Y_k) = d_k s_k
    c = [[[QUAD_ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, ck in table[i][j].items():
                c[i][j][k] = ck * s[i] * s[j] * s[k] * d[k]
    trace = [QUAD_ZERO] * n  # sum_i c_iki, indexed by k
    for k in range(n):
        acc = QUAD_ZERO
        for i in range(n):
            acc = acc + c[i][k][i]
        trace[k] = acc
    ric = [[QUAD_ZERO] * n for _ in range(n)]
    for j in range(n):
        for h in range(j, n):
            acc = QUAD_ZERO
            for k in range(n):
                if trace[k]:
                    acc = acc + trace[k] * (c[k][j][h] + c[k][h][j] + c[j][h][k])
            for i in range(n):
                for k in range(n):
                    acc = acc + c[i][k][h] * c[i][k][j] * HALF
                    cijk = c[i][j][k]
                    if cijk:
                        acc = acc - cijk * c[k][h][i] - cijk * c[i][h][k]
            ric[j][h] = ric[h][j] = acc * HALF
    ric_y = [[RAffine(_rational(x)) for x in row] for row in ric]
    ricci_x = [[ric[a][b] / (s[a] * s[b]) for b in range(n)] for a in range(n)]
    return _report_from_orthonormal(metric.indices, ric_y, ricci_x=ricci_x)


# -- sectional curvature -------------------------------------------------------------


def _to_sparse(v, metric: InvariantMetric) -> dict:
    if isinstance(v, g2.G2Vector):
        coords = v.coords
    else:
        coords = [QuadScalar.coerce(x) for x in v]
    if len(coords) != 14:
        raise ValueError("expected 14 coordinates in the X basis")
    out = {i: c for i, c in enumerate(coords) if c}
    if any(i not in metric.indices for i in out):
        raise ValueError("vector leaves the carrier")
    return out


def u_tensor(x, y, metric: InvariantMetric, r=None) -> g2.G2Vector:
    sp = metric.space(r)
    u = sp.u_tensor(_to_sparse(x, metric), _to_sparse(y, metric))
    return g2.G2Vector([u.get(i, QUAD_ZERO) for i in range(14)])


def sectional_numerator(x, y, metric: InvariantMetric, r=None, samples: Sequence = SAMPLE_R):
    """``g(R_{X,Y} X, Y)`` for X, Y given in the X basis (G2Vector or 14 coordinates).

    A symbolic metric with ``r=None`` gives an RAffine (X and Y must then have
    rational coordinates); otherwise the exact value at the given metric.
    """
    xs, ys = _to_sparse(x, metric), _to_sparse(y, metric)
    if metric.is_symbolic() and r is None:
        return affine_in_r(lambda rv: {0: _rational(metric.space(rv).sectional_numerator(xs, ys))}, samples).get(
            0, RAffine()
        )
    return metric.space(r).sectional_numerator(xs, ys)


def sectional_curvature(x, y, metric: InvariantMetric, r=None):
    sp = metric.space(r)
    xs, ys = _to_sparse(x, metric), _to_sparse(y, metric)
    denom = sp.g(xs, xs) * sp.g(ys, ys) - sp.g(xs, ys) * sp.g(xs, ys)
    if not denom:
        raise ValueError("X and Y span no plane")
    return sp.sectional_numerator(xs, ys) / denom


def plane_curvature(i: int, j: int, metric: InvariantMetric, r=None, samples: Sequence = SAMPLE_R) -> RAffine:
    """Sectional curvature of the coordinate plane spanned by X_i, X_j, affine in r."""
    def at(rv):
        return {0: _rational(sectional_curvature(g2.G2Vector.unit(i), g2.G2Vector.unit(j), metric, rv))}

    if metric.is_symbolic() and r is None:
        return affine_in_r(at, samples).get(0, RAffine())
    return RAffine(at(r)[0])


def coordinate_plane_curvatures(metric: InvariantMetric, r=None) -> dict[tuple[int, int], RAffine]:
    idx = metric.indices
    return {(i, j): plane_curvature(i, j, metric, r) for a, i in enumerate(idx) for j in idx[a + 1:]}


def sectional_polynomial_at(metric: InvariantMetric, r) -> QuarticForm:
    """F at a fixed r: ``g(R_{X,Y}X, Y)`` with X = sum x_(i-3) Y_i and Y = sum x_(i+8) Y_i."""
    if metric.carrier is not Carrier.ReductiveM:
        raise ValueError("the quartic is defined on m")
    s = _frame_scales(metric, r)
    x, y = {}, {}
    for a, i in enumerate(metric.indices):
        x[i] = Poly.var(i - 3, s[a])
        y[i] = Poly.var(i + 8, s[a])
    poly = metric.space(r).sectional_numerator(x, y)
    return QuarticForm.from_poly(poly)


def sectional_polynomial(metric: InvariantMetric | None = None, samples: Sequence = SAMPLE_R) -> QuarticForm:
    """The quartic F_r with coefficients affine in r."""
    metric = metric or gr_metric()

    def at(rv):
        return {m: c.const for m, c in sectional_polynomial_at(metric, rv).coeffs.items()}

    return QuarticForm(affine_in_r(at, samples))


# -- natural reductivity and Killing fields ---------------------------------------------------


def killing_check(y, metric: InvariantMetric, r=None) -> bool:
    """Whether the G2-invariant field induced by Y in m0 is Killing: ``[Y, -]_m`` is g-skew."""
    ys = _to_sparse(y, metric) if not isinstance(y, int) else {y: QUAD_ONE}
    if any(i not in (3, 4, 5) for i in ys):
        raise ValueError("Y must lie in m0 = span{X3, X4, X5}")
    return metric.space(r).is_skew(ys)


@dataclass(frozen=True)
class BlockForm:
    """Decomposition ``g = g_center + sum alpha_i g_bi|ideal_i + alpha g_bi|complement``."""

    ideal_scales: tuple
    complement_scale: object


def natural_reductivity_blocks(
    metric: InvariantMetric,
    ideals: Sequence[Sequence[int]] = ((0, 1, 2), (3, 4, 5)),
    center: Sequence[int] = (),
    r=None,
) -> BlockForm | None:
    """Match the metric against the block form for a subalgebra ``k = center + ideals``.

    Returns the scales when the metric is an arbitrary positive form on the
    center, a positive multiple of g_bi on each simple ideal and on the
    complement, and zero across blocks; ``None`` otherwise.
    """
    if metric.carrier is not Carrier.FullG2:
        raise ValueError("block form applies to left-invariant metrics on g2")
    _check_subalgebra(ideals, center)
    m = metric.evaluate(r)
    blocks = [tuple(center)] + [tuple(b) for b in ideals]
    used = {i for b in blocks for i in b}
    complement = tuple(i for i in range(14) if i not in used)
    blocks.append(complement)
    owner = {i: n for n, b in enumerate(blocks) for i in b}
    for i in range(14):
        for j in range(14):
            if owner[i] != owner[j] and m[i][j]:
                return None
    if center and not linalg.leading_minors_positive([[m[i][j] for j in center] for i in center]):
        return None
    scales = []
    for b in blocks[1:]:
        if not b:
            scales.append(None)
            continue
        alpha = m[b[0]][b[0]]
        if alpha.sign() <= 0:
            return None
        for i in b:
            for j in b:
                if m[i][j] != (alpha if i == j else 0):
                    return None
        scales.append(alpha)
    return BlockForm(tuple(scales[:-1]), scales[-1])


def natural_reductivity_check(metric: InvariantMetric, ideals=((0, 1, 2), (3, 4, 5)), center=(), r=None) -> bool:
    return natural_reductivity_blocks(metric, ideals, center, r) is not None


def _check_subalgebra(ideals, center) -> None:
    table = g2.bracket_table()
    k = set(center).union(*map(set, ideals)) if ideals else set(center)
    for i in k:
        for j in k:
            if any(idx not in k for idx in table[i][j]):
                raise ValueError("candidate k is not a subalgebra")
    for a, ia in enumerate(ideals):
        for ib in ideals[a + 1:]:
            if any(table[i][j] for i in ia for j in ib):
                raise ValueError("ideals do not commute")


def product_presentation(metric: InvariantMetric, ideals=((0, 1, 2), (3, 4, 5))) -> ReductiveSpace:
    """The metric as a homogeneous space ``(G2 x K) / diag(K)`` with K generated by ``ideals``.

    The complement is ``m' = {(X, sum_i lam_i X_i)}`` with ``lam_i = 1 - alpha/alpha_i``
    on the i-th ideal; for a metric of block form this presentation is
    naturally reductive, so its U-tensor vanishes.  Basis: indices 0..|k|-1 are
    ``(X_z, X_z)`` for z in k; index ``|k| + i`` is ``(X_i, lam_i X_i)``.
    """
    blocks = natural_reductivity_blocks(metric, ideals)
    if blocks is None:
        raise ValueError("metric is not of block form for these ideals")
    alpha = blocks.complement_scale
    k_idx = [i for b in ideals for i in b]
    lam = {i: QUAD_ZERO for i in range(14)}
    for b, alpha_i in zip(ideals, blocks.ideal_scales):
        for i in b:
            lam[i] = QUAD_ONE - alpha / alpha_i
    nk = len(k_idx)
    hpos = {z: p for p, z in enumerate(k_idx)}
    table = g2.bracket_table()

    def element(idx):
        # (P, Q): P in g2, Q in k, both sparse over X indices
        if idx < nk:
            z = k_idx[idx]
            return {z: QUAD_ONE}, {z: QUAD_ONE}
        i = idx - nk
        return {i: QUAD_ONE}, ({i: lam[i]} if i in hpos and lam[i] else {})

    def br(v, w):
        out: dict = {}
        for a, va in v.items():
            for b, wb in w.items():
                for k, c in table[a][b].items():
                    _axpy(out, k, va * wb * c)
        return _clean(out)

    def decompose(p, q):
        out: dict = {}
        for i, pi in p.items():
            if i not in hpos:
                out[nk + i] = pi
        for z in k_idx:
            pz, qz = p.get(z, QUAD_ZERO), q.get(z, QUAD_ZERO)
            mz = (pz - qz) / (QUAD_ONE - lam[z])
            hz = pz - mz
            if mz:
                out[nk + z] = mz
            if hz:
                out[hpos[z]] = hz
        return out

    n = nk + 14
    new_table = [[None] * n for _ in range(n)]
    elems = [element(a) for a in range(n)]
    for a in range(n):
        for b in range(n):
            (p1, q1), (p2, q2) = elems[a], elems[b]
            new_table[a][b] = decompose(br(p1, p2), br(q1, q2))
    m = metric.evaluate()
    # tangent image of (X_i, lam_i X_i) is (1 - lam_i) X_i
    metric_m = [[m[i][j] * (QUAD_ONE - lam[i]) * (QUAD_ONE - lam[j]) for j in range(14)] for i in range(14)]
    return ReductiveSpace(new_table, range(nk), range(nk, n), metric_m)


def u_vanishes(space: ReductiveSpace) -> bool:
    for a, i in enumerate(space.m_idx):
        for j in space.m_idx[a:]:
            if space.u_tensor(space.unit(i), space.unit(j)):
                return False
    return True
