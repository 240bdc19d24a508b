"""Command-line front end: ``sedgeo {zd,curvature,sos,reproduce}``.

Exit codes: 0 when every check of the command held, 1 on a failed check,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import acceptance, golden, homogeneous as hs, sos
from . import cayley_dickson as cd
from .errors import IdentityMismatch, NotPsd, ParseError, SedgeoError
from .polynomial import QuarticForm
from .scalar import QuadScalar, format_rational, parse_rational

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunReport:
    command: str
    passed: bool
    details: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
            "elapsed_ms": round(self.elapsed_ms, 1),
        }

    def render(self) -> str:
        head = f"{self.command}: {'pass' if self.passed else 'fail'}"
        return "\n".join([head] + [f"  {line}" for line in self.lines])


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_rational(text: str) -> Fraction:
    r = _rational(text)
    if r <= 0:
        raise argparse.ArgumentTypeError("r must be positive")
    return r


def _qs(x) -> str:
    return str(QuadScalar.coerce(x))


def _matrix_lines(indices, matrix, fmt=_qs) -> list[str]:
    n = len(indices)
    diagonal = all(not matrix[a][b] for a in range(n) for b in range(n) if a != b)
    if diagonal:
        return [f"X{i}: {fmt(matrix[a][a])}" for a, i in enumerate(indices)]
    return [f"X{i}: " + "  ".join(fmt(x) for x in matrix[a]) for a, i in enumerate(indices)]


# -- zd ------------------------------------------------------------------------------


def cmd_zd_enumerate(args) -> RunReport:
    pairs = [cd.format_pair(p) for p in cd.standard_zero_divisors()]
    return RunReport("zd enumerate", True, {"count": len(pairs), "pairs": pairs}, pairs + [f"{len(pairs)} pairs"])


def cmd_zd_verify_table(args) -> RunReport:
    ok, details = acceptance.check_table()
    lines = [f"{details['matched']}/{details['golden']} matched"]
    lines += [f"missing {p}" for p in details["missing"]]
    lines += [f"unexpected {p}" for p in details["unexpected"]]
    return RunReport("zd verify-table", ok, details, lines)


def cmd_zd_annihilator(args) -> RunReport:
    u = cd.parse_element(args.element, args.level)
    basis = cd.annihilator_basis(u)
    elems = [cd.format_element(z) for z in basis]
    details = {
        "element": cd.format_element(u),
        "level": args.level,
        "dimension": len(basis),
        "basis": [z.to_sparse() for z in basis],
        "bound": cd.annihilator_bound(args.level),
    }
    lines = [f"dim ann({details['element']}) = {len(basis)}"] + elems
    return RunReport("zd annihilator", True, details, lines)


# -- curvature -----------------------------------------------------------------------


def _parse_origin(text: str):
    t = text.strip()
    if t.startswith("("):
        return cd.parse_pair(t)
    return cd.parse_element(t)


def cmd_curvature_metric(args) -> RunReport:
    metric = hs.metric_from_origin(_parse_origin(args.origin))
    m = metric.evaluate()
    details = {"metric": metric.to_json(), "positive_definite": metric.is_positive_definite()}
    lines = [f"carrier {metric.carrier.value}"] + _matrix_lines(metric.indices, m)
    return RunReport("curvature metric", details["positive_definite"], details, lines)


def cmd_curvature_ricci(args) -> RunReport:
    if args.space == "Z":
        metric = hs.z_metric()
        left = hs.ricci_left_invariant(metric)
        red = hs.ricci_reductive(metric)
        agree = left.ricci_x == red.ricci_x
        # Ricci is diagonal in the orthonormal frame, so its eigenvalues are the diagonal
        diagonal = all(not left.ricci_matrix[a][b] for a in range(14) for b in range(14) if a != b)
        positive = diagonal and all(d.const > 0 for d in left.ricci_diagonal())
        details = {"left_invariant": left.to_json(), "reductive": red.to_json(), "agree": agree}
        lines = ["Ricci in the X basis:"] + _matrix_lines(metric.indices, left.ricci_x)
        lines.append(f"scalar curvature {left.scalar_curvature.const}")
        lines.append(f"pipelines agree: {agree}; Einstein: {left.einstein_at(0)}")
        return RunReport("curvature ricci", agree and positive, details, lines)
    metric = hs.gr_metric()
    report = hs.ricci_reductive(metric)
    if args.r is None:
        details = report.to_json()
        lines = [f"Y{i}: {report.ricci_matrix[a][a]}" for a, i in enumerate(metric.indices)]
        lines.append(f"scalar curvature {report.scalar_curvature}")
        return RunReport("curvature ricci", True, details, lines)
    r = args.r
    diag = [d(r) for d in report.ricci_diagonal()]
    einstein = report.einstein_at(r)
    details = {
        "r": format_rational(r),
        "ricci_orthonormal": [format_rational(x) for x in diag],
        "scalar_curvature": format_rational(report.scalar_curvature(r)),
        "einstein": einstein,
    }
    if einstein:
        details["einstein_constant"] = format_rational(diag[0])
    lines = [f"Y{i}: {format_rational(x)}" for i, x in zip(metric.indices, diag)]
    lines.append(f"scalar curvature {details['scalar_curvature']}")
    lines.append(f"Einstein: {einstein}" + (f" (constant {details['einstein_constant']})" if einstein else ""))
    return RunReport("curvature ricci", True, details, lines)


def cmd_curvature_sectional(args) -> RunReport:
    metric = hs.gr_metric()
    r = args.r
    if args.plane:
        i, j = args.plane
        if i == j or i not in metric.indices or j not in metric.indices:
            raise ParseError(f"plane indices must be distinct and in 3..13, got {i} {j}", 0)
        values = {(i, j): hs.plane_curvature(i, j, metric, r).const}
    else:
        values = {ij: v.const for ij, v in hs.coordinate_plane_curvatures(metric, r).items()}
    details = {"r": format_rational(r), "planes": [[i, j, format_rational(v)] for (i, j), v in values.items()]}
    lines = [f"K(X{i}, X{j}) = {format_rational(v)}" for (i, j), v in values.items()]
    return RunReport("curvature sectional", True, details, lines)


def cmd_curvature_poly(args) -> RunReport:
    form = hs.sectional_polynomial()
    gold = QuarticForm.from_text(golden.read_text("fr_poly.txt"))
    diff = form.first_difference(gold)
    if args.emit:
        Path(args.emit).write_text(form.to_text(), encoding="utf-8")
    details = {"monomials": len(form), "golden_monomials": len(gold), "first_difference": list(diff) if diff else None}
    lines = [f"{len(form)} monomials, {len(gold)} in the reference"]
    if diff:
        lines.append(f"first difference at {diff}: computed {form[diff]}, reference {gold[diff]}")
    else:
        lines.append(f"{len(form)} monomials matched")
    if args.emit:
        lines.append(f"written to {args.emit}")
    return RunReport("curvature poly", diff is None, details, lines)


# -- sos -----------------------------------------------------------------------------


def _load_cert(text: str) -> sos.GramCertificate:
    return sos.build_certificate(sos.CertLabel.from_r(text))


def cmd_sos_verify(args) -> RunReport:
    label = sos.CertLabel.from_r(args.cert)
    try:
        cert = sos.build_certificate(label)
    except sos.CertificateDataError as exc:
        return RunReport("sos verify", False, {"error": str(exc)}, [str(exc)])
    verdict = sos.psd_exact(cert)
    target = hs.sectional_polynomial().at(label.r)
    details = {"certificate": label.value, "verdict": verdict.to_json(), "checksum_matches": cert.matches_embedded}
    lines = [f"{label.value}: {'PSD' if verdict.is_psd else 'not PSD'} (rank {verdict.rank})"]
    try:
        sos.certify_identity(cert, target)
        identity = True
        lines.append(f"x^T H x equals F_{format_rational(label.r)}")
    except IdentityMismatch as exc:
        identity = False
        details["mismatch"] = {
            "monomial": list(exc.monomial),
            "expected": str(exc.expected),
            "actual": str(exc.actual),
        }
        lines.append(f"identity fails at monomial {exc.monomial}: expected {exc.expected}, got {exc.actual}")
    if not verdict.is_psd:
        lines.append("witness " + " ".join(format_rational(x) for x in verdict.witness))
    details["identity"] = identity
    return RunReport("sos verify", verdict.is_psd and identity, details, lines)


def cmd_sos_interval(args) -> RunReport:
    form = hs.sectional_polynomial()
    try:
        ok = sos.nonneg_interval_certify(form)
    except IdentityMismatch as exc:
        return RunReport("sos interval", False, {"mismatch": list(exc.monomial)}, [str(exc)])
    except sos.CertificateDataError as exc:
        return RunReport("sos interval", False, {"error": str(exc)}, [str(exc)])
    lines = ["F_r >= 0 for all r in [0, 4/9]" if ok else "a certificate is not PSD"]
    return RunReport("sos interval", ok, {"certified": ok, "interval": ["0", "4/9"]}, lines)


def cmd_sos_decompose(args) -> RunReport:
    cert = _load_cert(args.cert)
    try:
        terms = sos.sos_decomposition(cert)
    except NotPsd as exc:
        return RunReport("sos decompose", False, {"error": str(exc)}, [str(exc)])
    resum = sos.expand_squares(terms) == sos.gram_expand(cert)
    doc = [
        {
            "weight": format_rational(w),
            "form": [[list(sos.MONOMIALS[a]), format_rational(c)] for a, c in sorted(f.items())],
        }
        for w, f in terms
    ]
    if args.emit:
        Path(args.emit).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    lines = []
    for w, f in terms:
        body = " ".join(f"{format_rational(c)}*x{sos.MONOMIALS[a][0]}x{sos.MONOMIALS[a][1]}" for a, c in sorted(f.items()))
        lines.append(f"{format_rational(w)} * ({body})^2")
    lines.append(f"{len(terms)} squares; re-expansion matches: {resum}")
    return RunReport("sos decompose", resum, {"squares": doc, "reexpands": resum}, lines)


def cmd_reproduce(args) -> RunReport:
    results = acceptance.run_all()
    ok = all(r.passed for r in results)
    return RunReport("reproduce", ok, {"criteria": [r.to_json() for r in results]}, [r.line() for r in results])


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="output format")

    parser = argparse.ArgumentParser(prog="sedgeo", description="Exact sedenion zero-divisor geometry checks.")
    parser.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    sub = parser.add_subparsers(dest="group", required=True)

    zd = sub.add_parser("zd", help="zero divisors").add_subparsers(dest="action", required=True)
    zd.add_parser("enumerate", parents=[fmt]).set_defaults(func=cmd_zd_enumerate)
    zd.add_parser("verify-table", parents=[fmt]).set_defaults(func=cmd_zd_verify_table)
    ann = zd.add_parser("annihilator", parents=[fmt])
    ann.add_argument("element")
    ann.add_argument("--level", type=int, default=4)
    ann.set_defaults(func=cmd_zd_annihilator)

    cur = sub.add_parser("curvature", help="metrics and curvature").add_subparsers(dest="action", required=True)
    met = cur.add_parser("metric", parents=[fmt])
    met.add_argument("--origin", required=True, help="'(u,v)' pair or a single sedenion")
    met.set_defaults(func=cmd_curvature_metric)
    ric = cur.add_parser("ricci", parents=[fmt])
    ric.add_argument("--space", choices=("Z", "ZD"), required=True)
    ric.add_argument("--r", type=_positive_rational)
    ric.set_defaults(func=cmd_curvature_ricci)
    sec = cur.add_parser("sectional", parents=[fmt])
    sec.add_argument("--r", type=_positive_rational, required=True)
    sec.add_argument("--plane", type=int, nargs=2, metavar=("I", "J"))
    sec.set_defaults(func=cmd_curvature_sectional)
    poly = cur.add_parser("poly", parents=[fmt])
    poly.add_argument("--emit", metavar="FILE")
    poly.set_defaults(func=cmd_curvature_poly)

    sq = sub.add_parser("sos", help="Gram certificates").add_subparsers(dest="action", required=True)
    ver = sq.add_parser("verify", parents=[fmt])
    ver.add_argument("--cert", choices=("0", "4/9"), required=True)
    ver.set_defaults(func=cmd_sos_verify)
    sq.add_parser("interval", parents=[fmt]).set_defaults(func=cmd_sos_interval)
    dec = sq.add_parser("decompose", parents=[fmt])
    dec.add_argument("--cert", choices=("0", "4/9"), required=True)
    dec.add_argument("--emit", metavar="FILE")
    dec.set_defaults(func=cmd_sos_decompose)

    sub.add_parser("reproduce", parents=[fmt], help="run every acceptance check").set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"sedgeo: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SedgeoError as exc:
        print(f"sedgeo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=1, default=str))
    else:
        print(report.render())
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
