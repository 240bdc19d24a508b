"""Gram-matrix certificates for the quartic F_r and exact PSD testing.

A quartic ``F`` is a sum of squares of quadratic forms iff ``F = x^T H x`` for a
PSD matrix ``H`` indexed by degree-2 monomials.  Here the monomial vector has
143 entries: the 121 cross products ``x_i x_j`` (i <= 10 < j), then the 22 squares.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import golden
from .errors import IdentityMismatch, NotPsd, NotSymmetric
from .polynomial import Poly, QuarticForm
from .scalar import format_rational, parse_rational, to_fraction

N_MONOMIALS = 143
R_HIGH = Fraction(4, 9)


class MonomialVector:
    """Fixed ordering of the 143 degree-2 monomials."""

    def __init__(self):
        cross = [(i, j) for i in range(11) for j in range(11, 22)]
        squares = [(i, i) for i in range(22)]
        self.entries: tuple[tuple[int, int], ...] = tuple(cross + squares)
        self._pos = {pair: a for a, pair in enumerate(self.entries)}

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, a: int) -> tuple[int, int]:
        return self.entries[a]

    def index(self, pair: tuple[int, int]) -> int:
        return self._pos[tuple(sorted(pair))]

    def product(self, a: int, b: int) -> tuple[int, int, int, int]:
        return tuple(sorted(self.entries[a] + self.entries[b]))


MONOMIALS = MonomialVector()


class CertLabel(enum.Enum):
    R0 = "R0"
    R49 = "R49"

    @property
    def r(self) -> Fraction:
        return Fraction(0) if self is CertLabel.R0 else R_HIGH

    @property
    def filename(self) -> str:
        return "cert_r0.txt" if self is CertLabel.R0 else "cert_r49.txt"

    @classmethod
    def from_r(cls, text) -> "CertLabel":
        r = to_fraction(text)
        for label in cls:
            if label.r == r:
                return label
        raise ValueError(f"no certificate for r = {format_rational(r)}")


# number of index pairs listed per value; guards against transcription loss
EXPECTED_COUNTS = {
    CertLabel.R0: {
        Fraction(-2): 4, Fraction(-1): 17, Fraction(-1, 2): 128,
        Fraction(1, 2): 160, Fraction(1): 18, Fraction(2): 8,
    },
    CertLabel.R49: {
        Fraction(-1): 8, Fraction(-1, 2): 128, Fraction(-1, 3): 10,
        Fraction(1, 3): 20, Fraction(1, 2): 160, Fraction(1): 12,
    },
}

EXPECTED_SHA256 = {
    CertLabel.R0: "0693e8df8e11b4736ee8a1b0d51e0b923b89e40f4c460d4284a05139c688f7b9",
    CertLabel.R49: "8c5be52e5d9f3ac9d76551cda0b5ff98e98950ea430a620f8712ec3884df11c8",
}


class CertificateDataError(ValueError):
    pass


@dataclass
class GramCertificate:
    """Sparse symmetric 143x143 rational matrix; both (i, j) and (j, i) are stored."""

    label: CertLabel | None
    entries: dict = field(default_factory=dict)
    checksum: str | None = None

    def __post_init__(self):
        for (i, j), v in self.entries.items():
            if self.entries.get((j, i)) != v:
                raise NotSymmetric(f"entry ({i},{j}) has no symmetric partner")

    @classmethod
    def zero(cls) -> "GramCertificate":
        return cls(None, {})

    @property
    def size(self) -> int:
        return N_MONOMIALS

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries.get(tuple(ij), Fraction(0))

    def to_matrix(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * N_MONOMIALS for _ in range(N_MONOMIALS)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def perturbed(self, i: int, j: int, delta) -> "GramCertificate":
        """Copy with ``delta`` added to the (i, j) and (j, i) entries."""
        delta = to_fraction(delta)
        entries = dict(self.entries)
        for key in {(i, j), (j, i)}:
            v = entries.get(key, Fraction(0)) + delta
            if v:
                entries[key] = v
            else:
                entries.pop(key, None)
        return GramCertificate(self.label, entries, None)

    @property
    def matches_embedded(self) -> bool:
        return self.label is not None and self.checksum == EXPECTED_SHA256[self.label]


_PAIR = re.compile(r"\((\d+),(\d+)\)")


def parse_certificate(text: str, label: CertLabel) -> GramCertificate:
    entries: dict = {}
    counts: dict = {}
    for line in golden.data_lines(text):
        head, sep, tail = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != label.value:
            raise CertificateDataError(f"malformed certificate line: {line!r}")
        value = parse_rational(parts[1])
        pairs = [(int(a), int(b)) for a, b in _PAIR.findall(tail)]
        if len(pairs) != len(tail.split()):
            raise CertificateDataError(f"malformed index pair in set {parts[1]}")
        counts[value] = counts.get(value, 0) + len(pairs)
        for i, j in pairs:
            if not (0 <= i < N_MONOMIALS and 0 <= j < N_MONOMIALS):
                raise CertificateDataError(f"index ({i},{j}) outside the monomial vector")
            for key in {(i, j), (j, i)}:
                if key in entries:
                    raise CertificateDataError(f"entry {key} listed twice")
                entries[key] = value
    if counts != EXPECTED_COUNTS[label]:
        raise CertificateDataError(f"{label.value}: index-set sizes {counts} differ from the expected ones")
    return GramCertificate(label, entries, golden.sha256(text))


def build_certificate(label: CertLabel | str) -> GramCertificate:
    label = CertLabel(label) if not isinstance(label, CertLabel) else label
    return parse_certificate(golden.read_text(label.filename), label)


def format_certificate(cert: GramCertificate) -> str:
    """Inverse of :func:`parse_certificate` (upper-triangle pairs grouped by value)."""
    groups: dict = {}
    for (i, j), v in sorted(cert.entries.items()):
        if i <= j:
            groups.setdefault(v, []).append(f"({i},{j})")
    name = cert.label.value if cert.label else "H"
    return "".join(f"{name} {format_rational(v)}: {' '.join(ps)}\n" for v, ps in sorted(groups.items()))


# -- expansion ---------------------------------------------------------------------


def gram_expand(cert: GramCertificate | Mapping) -> QuarticForm:
    """``x^T H x`` as a quartic in x_0..x_21."""
    entries = cert.entries if isinstance(cert, GramCertificate) else cert
    out: dict = {}
    for (a, b), v in entries.items():
        mono = MONOMIALS.product(a, b)
        out[mono] = out.get(mono, 0) + v
    return QuarticForm(out)


def _linear_poly(form: Mapping[int, Fraction]) -> Poly:
    terms: dict = {}
    for a, c in form.items():
        i, j = MONOMIALS[a]
        terms[(i, j)] = terms.get((i, j), 0) + c
    return Poly(terms)


# -- exact LDL^T -----------------------------------------------------------------------


@dataclass
class PsdVerdict:
    is_psd: bool
    pivots: list = field(default_factory=list)  # (weight, {index: coefficient}) rank-one factors
    witness: list | None = None
    order: list = field(default_factory=list)  # pivot index of each factor

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def to_json(self) -> dict:
        doc = {"psd": self.is_psd, "rank": self.rank}
        if self.is_psd:
            doc["pivots"] = [
                {
                    "index": p,
                    "weight": format_rational(w),
                    "factor": {str(k): format_rational(c) for k, c in sorted(f.items())},
                }
                for p, (w, f) in zip(self.order, self.pivots)
            ]
        else:
            doc["witness"] = [format_rational(x) for x in self.witness]
        return doc


def _as_sparse(matrix) -> tuple[int, dict]:
    if isinstance(matrix, GramCertificate):
        n = matrix.size
        items = matrix.entries.items()
    else:
        n = len(matrix)
        items = (((i, j), v) for i, row in enumerate(matrix) for j, v in enumerate(row))
        if any(len(row) != n for row in matrix):
            raise NotSymmetric("matrix is not square")
    rows: dict = {i: {} for i in range(n)}
    for (i, j), v in items:
        v = to_fraction(v)
        if v:
            rows[i][j] = v
    for i, row in rows.items():
        for j, v in row.items():
            if rows[j].get(i) != v:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
    return n, rows


def quad_form(matrix, w: Sequence) -> Fraction:
    _, rows = _as_sparse(matrix)
    return sum((v * w[i] * w[j] for i, row in rows.items() for j, v in row.items()), Fraction(0))


def psd_exact(matrix) -> PsdVerdict:
    """Decide positive semidefiniteness by symmetric-pivoting LDL^T over the rationals.

    Pivots are chosen as the largest remaining diagonal entry.  A negative
    diagonal entry, or a zero diagonal with a nonzero entry in its row, of the
    running Schur complement yields a witness ``w`` with ``w^T M w < 0``.
    """
    n, schur = _as_sparse(matrix)
    active = set(range(n))
    pivots: list = []
    order: list = []
    while active:
        diag = {i: schur[i].get(i, Fraction(0)) for i in active}
        negative = [i for i in sorted(active) if diag[i] < 0]
        if negative:
            local = {negative[0]: Fraction(1)}
            return _reject(matrix, n, pivots, order, local)
        p = max(sorted(active), key=lambda i: diag[i])
        d = diag[p]
        if d == 0:
            for i in sorted(active):
                for j, v in sorted(schur[i].items()):
                    if j in active and j != i and v:
                        local = {i: Fraction(1), j: Fraction(-1 if v > 0 else 1)}
                        return _reject(matrix, n, pivots, order, local)
            break  # remaining block is zero
        row = {j: v for j, v in schur[p].items() if j in active}
        factor = {j: v / d for j, v in row.items()}
        pivots.append((d, factor))
        order.append(p)
        active.discard(p)
        for i, vi in row.items():
            if i == p:
                continue
            si = schur[i]
            f = vi / d
            for j, vj in row.items():
                if j == p:
                    continue
                new = si.get(j, Fraction(0)) - f * vj
                if new:
                    si[j] = new
                else:
                    si.pop(j, None)
            si.pop(p, None)
        schur[p] = {}
    return PsdVerdict(True, pivots, None, order)


def _reject(matrix, n: int, pivots: list, order: list, local: dict) -> PsdVerdict:
    # choose eliminated coordinates so every recorded factor vanishes on w;
    # then w^T M w equals the Schur-complement value of ``local``
    w = [Fraction(0)] * n
    for i, c in local.items():
        w[i] = c
    for p, (_, factor) in zip(reversed(order), reversed(pivots)):
        w[p] = -sum((c * w[k] for k, c in factor.items() if k != p), Fraction(0))
    value = quad_form(matrix, w)
    if value >= 0:
        raise AssertionError("internal error: LDL^T witness is not negative")
    return PsdVerdict(False, pivots, w, order)


def psd_check_numeric(matrix) -> float:
    """Smallest eigenvalue in floating point; a sanity signal only, never a proof."""
    import numpy as np

    if isinstance(matrix, GramCertificate):
        matrix = matrix.to_matrix()
    arr = np.array([[float(x) for x in row] for row in matrix], dtype=float)
    if arr.size == 0:
        return 0.0
    if not np.array_equal(arr, arr.T):
        raise NotSymmetric("matrix is not symmetric")
    return float(np.linalg.eigvalsh(arr).min())


# -- sums of squares -------------------------------------------------------------------


def sos_decomposition(cert: GramCertificate) -> list[tuple[Fraction, dict]]:
    """Weights and linear forms over the monomial vector with ``sum w l^2 = x^T H x``."""
    verdict = psd_exact(cert)
    if not verdict.is_psd:
        raise NotPsd("certificate is not positive semidefinite")
    return [(w, dict(f)) for w, f in verdict.pivots]


def expand_squares(terms: Sequence[tuple[Fraction, Mapping[int, Fraction]]]) -> QuarticForm:
    total = Poly()
    for w, form in terms:
        lin = _linear_poly(form)
        total = total + (lin * lin) * w
    return QuarticForm.from_poly(total)


def certify_identity(cert: GramCertificate, target: QuarticForm) -> None:
    """Raise IdentityMismatch at the first monomial where ``x^T H x`` and ``target`` differ."""
    got = gram_expand(cert)
    mono = got.first_difference(target)
    if mono is not None:
        raise IdentityMismatch(
            f"x^T H x differs from the target at monomial {mono}",
            monomial=mono, expected=target[mono], actual=got[mono],
        )


def nonneg_interval_certify(
    form: QuarticForm,
    low: GramCertificate | None = None,
    high: GramCertificate | None = None,
    r_low=Fraction(0),
    r_high=R_HIGH,
) -> bool:
    """Certify ``F_r >= 0`` for every r in [r_low, r_high].

    F_r is affine in r, so it is a convex combination of its endpoint values;
    a PSD Gram certificate at each endpoint makes both endpoints sums of squares.
    """
    low = low if low is not None else build_certificate(CertLabel.R0)
    high = high if high is not None else build_certificate(CertLabel.R49)
    certify_identity(low, form.at(r_low))
    certify_identity(high, form.at(r_high))
    return psd_exact(low).is_psd and psd_exact(high).is_psd
