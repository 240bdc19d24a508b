"""The reproduction checklist: eleven exact checks, each with a runtime budget.

Every check returns a :class:`CheckResult`; failures are reported, never raised,
so one broken stage does not hide the others.
"""

from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import cayley_dickson as cd
from . import g2, golden, homogeneous as hs, sos
from .errors import IdentityMismatch
from .polynomial import QuarticForm
from .scalar import RAffine

SEED = 20240917
N_RANDOM = 100


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0
    limit_s: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit_s:g} s)" if self.limit_s else ""
        return f"[{status}] {self.number:2d}. {self.name}: {self.elapsed_ms:.0f} ms{budget}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
            "elapsed_ms": round(self.elapsed_ms, 1),
            "limit_s": self.limit_s,
        }


def _random_element(rng: random.Random, level: int) -> cd.CdElement:
    return cd.CdElement(level, tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(1 << level)))


def load_table() -> set[str]:
    """Pairs listed in the golden Table-1 file, normalized through the parser."""
    out = set()
    for line in golden.data_lines(golden.read_text("table1.txt")):
        u, v = cd.parse_pair(line)
        out.add(cd.format_pair((u, v)))
    return out


# -- individual criteria --------------------------------------------------------------


def check_table() -> tuple[bool, dict]:
    pairs = cd.standard_zero_divisors()
    got = {cd.format_pair(p) for p in pairs}
    want = load_table()
    valid = all(cd.is_zero_divisor_pair(p.u, p.v) for p in pairs)
    return got == want and len(pairs) == 84 and valid, {
        "generated": len(pairs),
        "golden": len(want),
        "matched": len(got & want),
        "missing": sorted(want - got),
        "unexpected": sorted(got - want),
        "all_valid_pairs": valid,
    }


def check_algebra() -> tuple[bool, dict]:
    rng = random.Random(SEED)
    m = cd.cd_multiply
    flexible = power = alt3 = True
    for _ in range(N_RANDOM):
        x, y = _random_element(rng, 4), _random_element(rng, 4)
        flexible &= m(m(x, y), x) == m(x, m(y, x))
        xx = m(x, x)
        power &= m(xx, x) == m(x, xx) and m(m(xx, x), x) == m(xx, xx)
        a, b = _random_element(rng, 3), _random_element(rng, 3)
        alt3 &= m(a, m(a, b)) == m(m(a, a), b)
    x, y = cd.parse_element("e1+e10"), cd.parse_element("e1+e12")
    counterexample = m(x, m(x, y)) != m(m(x, x), y)
    bound = cd.annihilator_bound(4)
    dims = set()
    for p in cd.standard_zero_divisors():
        dims.add(cd.annihilator_dim(p.u))
        dims.add(cd.annihilator_dim(p.v))
    dims_ok = dims <= {0, 4} and max(dims) <= bound
    ok = flexible and power and alt3 and counterexample and dims_ok
    return ok, {
        "flexible_level4": flexible,
        "power_associative_level4": power,
        "alternative_level3": alt3,
        "alternativity_counterexample": "x=e1+e10, y=e1+e12" if counterexample else None,
        "annihilator_dims": sorted(dims),
        "annihilator_bound": bound,
    }


def check_g2() -> tuple[bool, dict]:
    xs = g2.basis()
    derivations = sum(g2.is_derivation(x) for x in xs)
    ortho = all(g2.bi_form(xs[i], xs[j]) == (1 if i == j else 0) for i in range(14) for j in range(14))
    # bracket_table raises if some [X_i, X_j] leaves the span
    table = g2.bracket_table()
    closed = all(
        g2.G2Vector([table[i][j].get(k, 0) for k in range(14)]).to_matrix() == g2.bracket(xs[i], xs[j])
        for i in range(14) for j in range(14)
    )
    k0_m0 = all(not table[i][j] for i in g2.SubspaceLabel.k0.indices for j in g2.SubspaceLabel.m0.indices)
    ok = derivations == 14 and ortho and closed and k0_m0
    return ok, {"derivations": derivations, "orthonormal": ortho, "bracket_closure": closed, "k0_m0_commute": k0_m0}


def check_z_metric() -> tuple[bool, dict]:
    metric = hs.z_metric()
    expected = [1] * 3 + [Fraction(1, 3)] * 3 + [Fraction(1, 2)] * 8
    diag_ok = metric.is_diagonal() and metric.diagonal_at() == expected
    blocks = hs.natural_reductivity_blocks(metric)
    blocks_ok = blocks is not None and list(blocks.ideal_scales) + [blocks.complement_scale] == [
        1, Fraction(1, 3), Fraction(1, 2)]
    u_zero = hs.u_vanishes(hs.product_presentation(metric))
    return diag_ok and blocks_ok and u_zero, {
        "diagonal": [str(x) for x in metric.diagonal_at()] if metric.is_diagonal() else None,
        "blocks": None if blocks is None else [str(x) for x in blocks.ideal_scales] + [str(blocks.complement_scale)],
        "u_vanishes_in_product_presentation": u_zero,
    }


def check_z_ricci() -> tuple[bool, dict]:
    metric = hs.z_metric()
    left = hs.ricci_left_invariant(metric)
    reductive = hs.ricci_reductive(metric)
    expected = [Fraction(5, 2)] * 3 + [Fraction(29, 54)] * 3 + [Fraction(5, 6)] * 8
    want = [[expected[a] if a == b else 0 for b in range(14)] for a in range(14)]
    left_ok = left.ricci_x == want
    red_ok = reductive.ricci_x == want
    agree = left.ricci_x == reductive.ricci_x
    return left_ok and red_ok and agree, {
        "left_invariant_x": [str(left.ricci_x[a][a]) for a in range(14)],
        "reductive_x": [str(reductive.ricci_x[a][a]) for a in range(14)],
        "orthonormal": [str(x) for x in left.ricci_diagonal()],
        "agree": agree,
    }


def check_zd_metric() -> tuple[bool, dict]:
    metric = hs.zd_metric()
    expected = [Fraction(1, 3), Fraction(1, 3), Fraction(2, 3)] + [Fraction(1, 2)] * 4 + [Fraction(1, 6)] * 4
    diag_ok = metric.is_diagonal() and metric.diagonal_at() == expected
    iso = g2.isotropy_subalgebra(cd.parse_element("e1+e10"))
    iso_ok = g2.span_equals(iso, (0, 1, 2))
    gr_ok = hs.gr_metric().evaluate(Fraction(2, 3)) == metric.evaluate()
    return diag_ok and iso_ok and gr_ok, {
        "diagonal": [str(x) for x in metric.diagonal_at()] if metric.is_diagonal() else None,
        "isotropy_is_k0": iso_ok,
        "equals_g_r_at_2_3": gr_ok,
    }


EINSTEIN_SAMPLES = (Fraction(1, 4), Fraction(4, 9), Fraction(1, 2), Fraction(5, 9), Fraction(2, 3), Fraction(1), Fraction(2))


def check_gr_curvature() -> tuple[bool, dict]:
    metric = hs.gr_metric()
    report = hs.ricci_reductive(metric)
    n = len(metric.indices)
    want = []
    for a, i in enumerate(metric.indices):
        d = RAffine(0, Fraction(15, 2)) if i == 5 else RAffine(5, Fraction(-3, 2))
        want.append([d if a == b else RAffine() for b in range(n)])
    ricci_ok = report.ricci_matrix == want
    scal_ok = report.scalar_curvature == RAffine(50, Fraction(-15, 2))
    einstein = [r for r in EINSTEIN_SAMPLES if report.einstein_at(r)]
    einstein_ok = einstein == [Fraction(5, 9)]
    k34 = hs.plane_curvature(3, 4, metric)
    k34_ok = k34 == RAffine(1, Fraction(-9, 4))
    planes = hs.coordinate_plane_curvatures(metric, Fraction(2, 3))
    planes_ok = all((v.const < 0) if ij == (3, 4) else (v.const >= 0) for ij, v in planes.items())
    return ricci_ok and scal_ok and einstein_ok and k34_ok and planes_ok, {
        "ricci_orthonormal_diagonal": [str(x) for x in report.ricci_diagonal()],
        "ricci_matches": ricci_ok,
        "scalar_curvature": str(report.scalar_curvature),
        "einstein_at": [str(r) for r in einstein],
        "kappa_34": str(k34),
        "negative_planes_at_2_3": [list(ij) for ij, v in planes.items() if v.const < 0],
    }


KILLING_SAMPLES = (Fraction(1, 4), Fraction(4, 9), Fraction(5, 9), Fraction(2, 3), Fraction(1))


def check_killing() -> tuple[bool, dict]:
    metric = hs.gr_metric()
    x5 = {str(r): hs.killing_check(5, metric, r) for r in KILLING_SAMPLES}
    r = Fraction(2, 3)
    x3, x4 = hs.killing_check(3, metric, r), hs.killing_check(4, metric, r)
    return all(x5.values()) and not x3 and not x4, {"X5_skew": x5, "X3_skew_at_2_3": x3, "X4_skew_at_2_3": x4}


def _support_ok(form: QuarticForm) -> bool:
    return all(i <= j <= 10 < k <= l <= 21 for i, j, k, l in form)


def check_fr() -> tuple[bool, dict]:
    form = hs.sectional_polynomial()
    gold = QuarticForm.from_text(golden.read_text("fr_poly.txt"))
    diff = form.first_difference(gold)
    generic = form.at(Fraction(1, 7))
    ok = diff is None and len(form) == 285 and len(generic) == 285 and _support_ok(form)
    return ok, {
        "monomials": len(form),
        "golden_monomials": len(gold),
        "first_difference": list(diff) if diff else None,
        "support_pattern": _support_ok(form),
    }


def check_sos() -> tuple[bool, dict]:
    form = hs.sectional_polynomial()
    details = {}
    ok = True
    for label in sos.CertLabel:
        cert = sos.build_certificate(label)
        verdict = sos.psd_exact(cert)
        target = form.at(label.r)
        identity = sos.gram_expand(cert) == target
        resum = verdict.is_psd and sos.expand_squares(sos.sos_decomposition(cert)) == target
        min_eig = sos.psd_check_numeric(cert)
        ok &= verdict.is_psd and identity and resum and min_eig >= -1e-9
        details[label.value] = {
            "psd": verdict.is_psd,
            "rank": verdict.rank,
            "gram_identity": identity,
            "squares_reexpand": resum,
            "numeric_min_eigenvalue": min_eig,
            "checksum_matches": cert.matches_embedded,
        }
    return ok, details


def check_interval() -> tuple[bool, dict]:
    form = hs.sectional_polynomial()
    certified = sos.nonneg_interval_certify(form)
    # fault injection: one coefficient of F_r shifted
    mono = (0, 0, 12, 12)
    faulty = form + QuarticForm({mono: RAffine(Fraction(1, 100))})
    try:
        sos.nonneg_interval_certify(faulty)
        localized = None
    except IdentityMismatch as exc:
        localized = list(exc.monomial)
    return certified and localized == list(mono), {
        "certified_interval": ["0", "4/9"] if certified else None,
        "fault_injected_at": list(mono),
        "fault_reported_at": localized,
    }


CRITERIA: tuple[tuple[int, str, Callable, float | None], ...] = (
    (1, "zero-divisor table reproduction", check_table, 1.0),
    (2, "Cayley-Dickson algebra properties", check_algebra, 5.0),
    (3, "g2 basis certification", check_g2, 5.0),
    (4, "metric at (e4+e13, e6+e15) and block form", check_z_metric, None),
    (5, "Ricci of the zero-divisor-pair manifold", check_z_ricci, None),
    (6, "metric at e1+e10 and its isotropy", check_zd_metric, None),
    (7, "g_r Ricci, scalar and sectional curvature", check_gr_curvature, 60.0),
    (8, "Killing fields from m0", check_killing, None),
    (9, "F_r golden match", check_fr, 120.0),
    (10, "Gram certificates PSD and identities", check_sos, 600.0),
    (11, "non-negativity on r in [0, 4/9]", check_interval, None),
)


def run_check(number: int) -> CheckResult:
    for num, name, fn, limit in CRITERIA:
        if num == number:
            break
    else:
        raise KeyError(number)
    start = time.perf_counter()
    try:
        passed, details = fn()
    except Exception as exc:  # reported, not raised
        passed, details = False, {"error": f"{type(exc).__name__}: {exc}", "trace": traceback.format_exc()}
    elapsed = (time.perf_counter() - start) * 1000
    if limit is not None and elapsed > limit * 1000:
        passed = False
        details["over_time_limit"] = True
    return CheckResult(num, name, bool(passed), details, elapsed, limit)


def run_all() -> list[CheckResult]:
    return [run_check(num) for num, *_ in CRITERIA]
