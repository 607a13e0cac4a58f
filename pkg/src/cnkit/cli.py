"""Command-line front end.

Exit status: 0 for a definitive verdict or a verified artifact, 2 when the
answer is UNKNOWN or a search ran out of room, 1 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .cache import QuarticCache
from .congruent import (
    Triangle,
    certificate_from_uvm,
    point_to_triangle,
    roberts_uvm,
    search_uvm,
    triangle_to_ap,
    triangle_to_point,
    tunnell_counts,
    tunnell_consistent,
    uvm_to_point,
)
from .descent.certificate import (
    DescentCertificate,
    Seed,
    build_certificate,
    certificate_seeds,
    point_seeds,
    seed_from_point,
    transport_seeds,
    validate_certificate,
)
from .descent.quartic import Side
from .exactnum import DomainError, is_squarefree, isqrt_exact, rat_str, squarefree_decompose
from .curve import CurvePoint
from .families import (
    Collision,
    family1_certificate,
    family1_distinctness,
    family1_instance,
    family2_certificate,
    family2_instance,
    family2_verified,
    quartic_rhs,
    table1_rows,
    table2_rows,
)

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonneg(text: str) -> int:
    v = _int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _json_value(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, Fraction)):
        return rat_str(v)
    if isinstance(v, CurvePoint):
        return v.to_json()
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return str(v)


def _checked(cert: DescentCertificate) -> dict:
    """Round-trip through JSON and re-validate; any failure is a crash."""
    obj = cert.to_json()
    again = DescentCertificate.from_json(json.loads(json.dumps(obj)))
    validate_certificate(again)
    if again.to_json() != obj:
        raise AssertionError("certificate does not survive a JSON round trip")
    return obj


def _cert_summary(cert: DescentCertificate) -> dict:
    return {
        "alpha_classes": sorted((e.cls.rep for e in cert.alpha), key=lambda k: (abs(k), k < 0)),
        "alphabar_classes": sorted((e.cls.rep for e in cert.alphabar), key=lambda k: (abs(k), k < 0)),
        "rank_lower_bound": cert.rank_lower_bound,
    }


# ------------------------------------------------------------ commands


def cmd_check(args, cache):
    if args.n == 0:
        raise UsageError("n must be nonzero")
    k, f = squarefree_decompose(args.n)
    out = {"n": args.n, "squarefree_n": k, "square_factor": f}
    consistent = None
    if k > 0:
        c = tunnell_counts(k)
        consistent = tunnell_consistent(k)
        out["tunnell"] = {"A": c.a_n, "B": c.b_n, "C": c.c_n, "D": c.d_n, "consistent": consistent}
    w = search_uvm(k, args.uvm_bound)
    if w is not None:
        p = uvm_to_point(w)
        out["uvm"] = [w.u, w.v, w.m]
        out["point"] = p
        out["triangle"] = list(point_to_triangle(k, p))
        cert = certificate_from_uvm(w, args.height, args.gcd_mode, args.workers, cache)
    else:
        out["uvm"] = None
        cert = build_certificate(-k * k, args.height, (), args.gcd_mode, args.workers, cache)
    out.update(_cert_summary(cert))
    if cert.rank_lower_bound >= 1:
        if consistent is False:
            raise AssertionError("rank >= 1 certified although Tunnell rules n out")
        verdict, code = "CONGRUENT", EXIT_OK
    elif consistent is False:
        verdict, code = "NOT_CONGRUENT", EXIT_OK
    else:
        verdict, code = "UNKNOWN", EXIT_UNKNOWN
    out["verdict"] = verdict
    return out, cert, code


def _load_seeds(path: str, a_curve: int) -> list[Seed]:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read seeds from {path}: {exc}") from None
    if isinstance(obj, dict) and "certificate" in obj:
        obj = obj["certificate"]
    if isinstance(obj, dict) and "alpha" in obj:
        cert = DescentCertificate.from_json(obj)
        validate_certificate(cert)
        seeds = certificate_seeds(cert)
        if cert.a_curve != a_curve:
            seeds = transport_seeds(seeds, cert.a_curve, a_curve)
    else:
        if isinstance(obj, dict):
            obj = obj.get("seeds", [])
        seeds = []
        for item in obj:
            if "point" in item:
                pt = CurvePoint.from_json(item["point"])
                side, src = Side(item["side"]), item.get("source", "point")
                try:
                    seeds += point_seeds(a_curve, side, pt, src)
                except DomainError:  # torsion: still a valid, if dull, seed
                    seeds.append(seed_from_point(a_curve, side, pt, src))
            else:
                seeds.append(Seed.from_json(item))
    # witnesses from a file were not produced by this run's search
    return [Seed(s.side, s.b1, s.witness, f"file:{s.source}") for s in seeds]


def cmd_descent(args, cache):
    if args.A == 0:
        raise UsageError("A must be nonzero")
    seeds = _load_seeds(args.seeds, args.A) if args.seeds else []
    cert = build_certificate(args.A, args.height, seeds, args.gcd_mode, args.workers, cache)
    out = {"a_curve": args.A, **_cert_summary(cert)}
    out["searched_classes"] = len(cert.searches)
    return out, cert, EXIT_OK if cert.rank_lower_bound >= 1 else EXIT_UNKNOWN


def cmd_family1(args, cache):
    inst = family1_instance(args.r, args.s)
    dist = family1_distinctness(inst)
    b1, N, e, M = inst.witness
    out = {"r": inst.r, "s": inst.s, "u": inst.u, "v": inst.v, "A": inst.a_value}
    out["witness"] = {"b1": b1, "N": N, "e": e, "M": M}
    if isinstance(dist, Collision):
        out["distinctness"] = {"status": "Collision", "pair": list(dist.pair), "class": dist.cls.rep}
        cert = None
    else:
        out["distinctness"] = {"status": "Distinct16"}
        cert = family1_certificate(args.r, args.s, args.height, args.gcd_mode)
        out.update(_cert_summary(cert))
    out["classes"] = {name: c.rep for name, c in inst.class_list}
    ok = cert is not None and cert.rank_lower_bound >= 2
    return out, cert, EXIT_OK if ok else EXIT_UNKNOWN


def _quartic_root(r1: int, s: int, given):
    if s == 0:
        raise UsageError("s must be nonzero")
    if given is not None:
        return given
    q = quartic_rhs(Fraction(r1, s))
    num, den = (isqrt_exact(q.numerator), isqrt_exact(q.denominator)) if q >= 0 else (None, None)
    if num is None or den is None:
        raise UsageError(f"-896t^4 - 40t^2 + 1 is not a rational square at t = {r1}/{s}")
    return Fraction(num, den)


def cmd_family2(args, cache):
    y = _quartic_root(args.r1, args.s, args.y)
    inst = family2_instance(args.r1, args.s, y)
    ok = family2_verified(inst)
    out = {"r1": inst.r1, "s": inst.s, "t": inst.t, "y_root": inst.y_root, "A": inst.a_value}
    out["curve_constant"] = inst.curve_constant
    out["points"] = dict(zip("PQR", inst.points))
    out["S_dual"] = inst.s_point
    b1, N, e, M = inst.witness
    out["witness"] = {"b1": b1, "N": N, "e": e, "M": M}
    out["checks"] = dict(inst.checks)
    out["verified"] = ok
    cert = family2_certificate(inst, args.height, args.gcd_mode) if ok else None
    if cert is not None:
        out.update(_cert_summary(cert))
    return out, cert, EXIT_OK if ok else EXIT_UNKNOWN


def cmd_table1(args, cache):
    rows = table1_rows()
    matched = sum(r["match"] for r in rows)
    out = {"rows": rows, "matched": f"{matched}/{len(rows)}"}
    return out, None, EXIT_OK if matched == len(rows) else EXIT_UNKNOWN


def cmd_table2(args, cache):
    signed = table2_rows(args.r1, args.s)
    rows = []
    for plus, minus in zip(signed[0::2], signed[1::2]):
        rows.append(
            {
                "label": plus.label,
                "uv_class": plus.uv_class.rep,
                "product_class": plus.product_class.rep,
                "printed_r1s": plus.printed_r1s.rep,
                "printed_new": plus.printed_new.rep,
                "product_matches": plus.product_matches and minus.product_matches,
                "pair_matches": plus.pair_matches and minus.pair_matches,
                "label_matches": plus.label_matches and minus.label_matches,
            }
        )
    ok = all(r["product_matches"] and r["pair_matches"] for r in rows)
    out = {"r1": args.r1, "s": args.s, "multiplier": signed[0].multiplier.rep, "rows": rows}
    return out, None, EXIT_OK if ok else EXIT_UNKNOWN


def cmd_tunnell(args, cache):
    if args.n < 1:
        raise UsageError("n must be positive")
    c = tunnell_counts(args.n)
    out = {"n": args.n, "A": c.a_n, "B": c.b_n, "C": c.c_n, "D": c.d_n}
    out["consistent"] = tunnell_consistent(args.n) if is_squarefree(args.n) else None
    return out, None, EXIT_OK


def cmd_uvm(args, cache):
    if args.n == 0:
        raise UsageError("n must be nonzero")
    bound = args.bound if args.bound is not None else args.uvm_bound
    w = search_uvm(args.n, bound)
    out = {"n": args.n, "bound": bound, "uvm": None if w is None else [w.u, w.v, w.m]}
    if w is not None:
        out["point"] = uvm_to_point(w)
    return out, None, EXIT_OK if w is not None else EXIT_UNKNOWN


def cmd_triangle(args, cache):
    if args.n == 0:
        raise UsageError("n must be nonzero")
    t = Triangle(args.x, args.y, args.z)
    p = triangle_to_point(args.n, t)
    w = roberts_uvm(args.n, t)
    ap = triangle_to_ap(args.n, t)
    out = {"n": args.n, "triangle": list(t), "point": p, "uvm": [w.u, w.v, w.m]}
    out["ap"] = [ap.p, ap.q, ap.r, ap.s]
    return out, None, EXIT_OK


# ------------------------------------------------------------ plumbing


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--height", type=_nonneg, default=64, help="quartic search height (default 64)")
    common.add_argument("--uvm-bound", type=_nonneg, default=200, help="bound for the uvm search (default 200)")
    common.add_argument("--json", action="store_true", help="print the canonical JSON report")
    common.add_argument("--cache", metavar="PATH", help="JSONL search cache (CNKIT_CACHE overrides)")
    common.add_argument("--strict-gcd", action="store_true", help="use gcd(b2, M) = 1 instead of gcd(b2, e) = 1")
    common.add_argument("--workers", type=_nonneg, default=1, help="threads for each quartic search")

    parser = _Parser(prog="cnkit", description="Congruent numbers and 2-descent certificates.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "decide whether n is congruent within the bounds")
    p.add_argument("n", type=_int)
    p = add("descent", cmd_descent, "descent certificate for y^2 = x^3 + Ax")
    p.add_argument("A", type=_int)
    p.add_argument("--seeds", metavar="FILE", help="seed witnesses: a list, or any certificate or report JSON")
    p = add("family1", cmd_family1, "rank >= 2 family instance")
    p.add_argument("r", type=_int)
    p.add_argument("s", type=_int)
    p = add("family2", cmd_family2, "rank >= 3 family instance")
    p.add_argument("r1", type=_int)
    p.add_argument("s", type=_int)
    p.add_argument("--y", type=_rational, default=None, help="root of y^2 = -896t^4 - 40t^2 + 1 at t = r1/s")
    add("table1", cmd_table1, "recompute the built-in family-1 A values")
    p = add("table2", cmd_table2, "square-class products for the family-2 classes")
    p.add_argument("r1", type=_int, nargs="?", default=2)
    p.add_argument("s", type=_int, nargs="?", default=15)
    p = add("tunnell", cmd_tunnell, "Tunnell representation counts")
    p.add_argument("n", type=_int)
    p = add("uvm", cmd_uvm, "search n m^2 = uv(u^2 - v^2)")
    p.add_argument("n", type=_int)
    p.add_argument("bound", type=_nonneg, nargs="?", default=None)
    p = add("triangle", cmd_triangle, "convert a right triangle of area n")
    p.add_argument("n", type=_int)
    for leg in ("x", "y", "z"):
        p.add_argument(leg, type=_rational)
    return parser


_ECHO_SKIP = {"func", "json", "command", "cache", "workers"}


def make_report(args, out: dict, cert, elapsed_ms: int) -> dict:
    echoed = {k: _json_value(v) for k, v in sorted(vars(args).items()) if k not in _ECHO_SKIP}
    return {
        "command": {"name": args.command, "args": echoed},
        "verdicts": _json_value(out),
        "certificate": None if cert is None else _checked(cert),
        "timing_ms": str(elapsed_ms),
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _render_text(report: dict) -> str:
    lines = [f"cnkit {report['command']['name']}"]
    for key, val in report["verdicts"].items():
        if not isinstance(val, str):
            val = json.dumps(val, separators=(", ", ": "))
        lines.append(f"  {key}: {val}")
    if report["certificate"] is not None:
        lines.append("  certificate: validated")
    lines.append(f"  time: {report['timing_ms']} ms")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code
    args.gcd_mode = "standard" if args.strict_gcd else "literal"
    del args.strict_gcd
    cache = QuarticCache.from_env(args.cache)
    t0 = time.perf_counter()
    try:
        out, cert, code = args.func(args, cache)
    except (UsageError, DomainError) as exc:
        print(f"cnkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = int(round((time.perf_counter() - t0) * 1000))
    report = make_report(args, out, cert, elapsed)
    print(dumps_report(report) if args.json else _render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
