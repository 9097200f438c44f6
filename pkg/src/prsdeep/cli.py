"""
Command-line front end.

    prsdeep field P [M]
    prsdeep code P M K
    prsdeep covering-radius P M K [--method auto|enumerate]
    prsdeep deep-holes P M K [--mode enumerate|families|classify|orbits] [--csv PATH]
    prsdeep orbits P M DIM [--point x0,x1,...]

Exit codes: 0 success, 1 usage error, 2 check or classification failure,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import __version__
from .deepholes import (
    build_families,
    classify_q_minus_2,
    classify_q_minus_3,
    conjectured_covering_radius,
    enumerate_deep_holes,
    is_deep_hole_syndrome,
    label_orbits,
    tangent_secant_geometry,
)
from .errors import BoundExceededError, ClassificationError
from .gf import INF, Poly, make_field, monic_irreducible_quadratics
from .linalg import DEFAULT_MAX_POINTS, normalize
from .pgl2 import n_point, orbit
from .prscode import (
    c_vector,
    covering_radius,
    known_covering_radius,
    make_code,
    syndrome_to_genpoly,
)

SCHEMA = "prsdeep.report/1"

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(x):
    if x is INF:
        return "inf"
    if isinstance(x, Poly):
        return list(x.coeffs)
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


def _class_row(c) -> dict:
    return {
        "syndrome": list(c.syndrome),
        "genpoly": list(c.genpoly.coeffs),
        "family": c.family,
        "params": _jsonable(c.params),
        "orbit": c.orbit,
        "status": c.status,
    }


def _field_params(F, k=None) -> dict:
    out = {"p": F.p, "m": F.degree, "q": F.q}
    if k is not None:
        out["k"] = k
    return out


def _code(F, k):
    if not 1 <= k <= F.q + 1:
        raise UsageError(f"k must lie in 1..{F.q + 1}, got {k}")
    return make_code(F, k)


# -- subcommands; each returns (params, result, ok)

def cmd_field(args):
    F = make_field(args.p, args.m)
    quads = monic_irreducible_quadratics(F)
    elements = []
    for a in range(F.q):
        elements.append({
            "encoding": a,
            "digits": F.digits(a),
            "log": F.log(a) if a else None,
        })
    result = {
        "order": F.q,
        "modulus": list(F.modulus),
        "generator": F.generator,
        "irreducible_quadratics": len(quads),
        "elements": elements,
    }
    return _field_params(F), result, True


def cmd_code(args):
    F = make_field(args.p, args.m)
    code = _code(F, args.k)
    result = {
        "length": code.n,
        "dimension": code.k,
        "minimum_distance": code.n - code.k + 1,
        "generator_matrix": [list(r) for r in code.G.rows],
        "parity_check_matrix": [list(r) for r in code.H.rows] if code.H is not None else None,
    }
    return _field_params(F, args.k), result, True


def _conjecture_note(q, k):
    if known_covering_radius(q, k) is not None:
        return "settled case"
    if q % 2 == 0 and k in (2, q - 2):
        return f"conjecture: q even, k = {k} exception"
    return "conjecture: q - k"


def cmd_covering_radius(args):
    F = make_field(args.p, args.m)
    code = _code(F, args.k)
    q, k = F.q, args.k
    known = known_covering_radius(q, k)
    method = "special case" if args.method == "auto" and known is not None else "enumeration"
    rho = covering_radius(code, method=args.method, max_points=args.max_points)
    expected = conjectured_covering_radius(q, k)
    result = {
        "rho": rho,
        "method": method,
        "conjectured": expected,
        "agrees_with_conjecture": rho == expected,
        "note": _conjecture_note(q, k),
    }
    return _field_params(F, k), result, True


def cmd_deep_holes(args):
    F = make_field(args.p, args.m)
    code = _code(F, args.k)
    q, k = F.q, args.k
    if k == q + 1:
        raise UsageError("PRS(q+1) is the whole space and has no deep holes")
    result = {"mode": args.mode}
    ok = True
    classes = []
    if args.mode == "classify":
        if k == q - 3:
            rep = classify_q_minus_3(F, max_points=args.max_points)
        elif k == q - 2:
            rep = classify_q_minus_2(F, max_points=args.max_points)
        else:
            raise UsageError("classification is available for k = q-3 and k = q-2 only")
        classes = rep.classes
        result["rho"] = rep.rho
        result["counts"] = rep.counts
        result["checks"] = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks]
        if rep.orbits:
            result["orbits"] = [{**o, "representative": list(o["representative"])} for o in rep.orbits]
        if k == q - 3:
            geo = tangent_secant_geometry(F, k)
            result["checks"] += [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in geo.checks]
            ok = geo.passed
        ok = ok and rep.passed
    elif args.mode == "families":
        fams = build_families(code, max_points=args.max_points)
        for f in "ABC":
            classes.extend(fams[f])
        result["counts"] = {f: len(fams[f]) for f in "ABC"}
    else:
        classes = enumerate_deep_holes(code, method=args.method, workers=args.threads,
                                       max_points=args.max_points)
        result["rho"] = covering_radius(code, max_points=args.max_points)
        if args.mode == "orbits":
            orbs = label_orbits(F, classes)
            result["orbits"] = [{"label": i, "size": len(o), "representative": list(o[0])}
                                for i, o in enumerate(orbs)]
        result["counts"] = {"enumerated": len(classes)}
    result["classes"] = [_class_row(c) for c in classes]
    if args.csv:
        _write_csv(args.csv, result["classes"])
    return _field_params(F, k), result, ok


def cmd_orbits(args):
    F = make_field(args.p, args.m)
    dim = args.dim
    if not 2 <= dim <= F.q + 1:
        raise UsageError(f"dimension must lie in 2..{F.q + 1}")
    if args.point:
        try:
            pts = [tuple(int(x) for x in args.point.split(","))]
        except ValueError:
            raise UsageError(f"bad point {args.point!r}") from None
        if len(pts[0]) != dim or not any(pts[0]):
            raise UsageError(f"point must be a nonzero vector of length {dim}")
        for x in pts[0]:
            F.check(x)
    else:
        if dim < 3:
            raise UsageError("N_m needs dimension at least 3; pass --point")
        nm = n_point(dim)
        cinf = c_vector(dim, INF, F)
        pts = [nm, tuple(F.add(x, y) for x, y in zip(nm, cinf))]
    group_order = F.q * (F.q * F.q - 1)
    rows = []
    ok = True
    for s in pts:
        orb = orbit(F, s)
        ok = ok and orb.size * orb.stabilizer_order == group_order
        rows.append({
            "point": list(normalize(F, s)),
            "orbit_size": orb.size,
            "stabilizer_order": orb.stabilizer_order,
        })
    result = {"group_order": group_order, "orbits": rows}
    return {**_field_params(F), "dim": dim}, result, ok


def _write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["syndrome", "genpoly", "family", "params", "orbit", "status"])
        for r in rows:
            w.writerow([
                " ".join(map(str, r["syndrome"])),
                " ".join(map(str, r["genpoly"])),
                r["family"],
                json.dumps(r["params"]),
                "" if r["orbit"] is None else r["orbit"],
                r["status"],
            ])


def render_text(report: dict) -> str:
    lines = [f"prsdeep {report['version']}  {report['command']}  "
             + " ".join(f"{k}={v}" for k, v in report["parameters"].items())]
    res = report["result"]
    for key, val in res.items():
        if key == "elements":
            lines.append("  enc  digits  log")
            for e in val:
                lines.append(f"  {e['encoding']:>3}  {''.join(map(str, e['digits'])):>6}  "
                             f"{'-' if e['log'] is None else e['log']}")
        elif key == "classes":
            lines.append(f"classes: {len(val)}")
            for c in val:
                orb = "" if c["orbit"] is None else f"  orbit {c['orbit']}"
                params = "" if not c["params"] else f" {tuple(c['params'])}"
                lines.append(f"  ({':'.join(map(str, c['syndrome']))})  {c['family']}{params}{orb}")
        elif key == "checks":
            for c in val:
                mark = "PASS" if c["passed"] else "FAIL"
                lines.append(f"  [{mark}] {c['name']}" + (f" ({c['detail']})" if c["detail"] else ""))
        elif key in ("generator_matrix", "parity_check_matrix") and val is not None:
            lines.append(f"{key}:")
            lines.extend("  " + " ".join(f"{x:>3}" for x in row) for row in val)
        elif key == "modulus":
            lines.append(f"modulus: {val} (coefficients, constant term first)")
        elif key == "orbits":
            lines.append("orbits:")
            for o in val:
                lines.append("  " + ", ".join(f"{k}={_fmt(v)}" for k, v in o.items()))
        else:
            lines.append(f"{key}: {_fmt(val)}")
    if "timings" in report:
        lines.append(f"elapsed: {report['timings']['seconds']:.3f} s")
    return "\n".join(lines)


def _fmt(v):
    if isinstance(v, list):
        return "(" + ":".join(map(str, v)) + ")"
    return str(v)


COMMANDS = {
    "field": cmd_field,
    "code": cmd_code,
    "covering-radius": cmd_covering_radius,
    "deep-holes": cmd_deep_holes,
    "orbits": cmd_orbits,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS,
                        help="bound on enumerated projective points (default %(default)s)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for subset searches")
    common.add_argument("--timings", action="store_true", help="include wall-clock time in the report")

    parser = _Parser(prog="prsdeep", description="Projective Reed-Solomon codes and their deep holes.")
    parser.add_argument("--version", action="version", version=f"prsdeep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("field", parents=[common], help="field order, modulus and element table")
    p.add_argument("p", type=int)
    p.add_argument("m", type=int, nargs="?", default=1)

    for name, text in (("code", "generator and parity-check matrices"),
                       ("covering-radius", "covering radius of PRS(k)"),
                       ("deep-holes", "deep-hole classes of PRS(k)")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("p", type=int)
        p.add_argument("m", type=int)
        p.add_argument("k", type=int)
        if name == "covering-radius":
            p.add_argument("--method", choices=["auto", "enumerate"], default="auto")
        if name == "deep-holes":
            p.add_argument("--mode", choices=["enumerate", "families", "classify", "orbits"], default="enumerate")
            p.add_argument("--method", choices=["levels", "subsets"], default="levels")
            p.add_argument("--csv", metavar="PATH", help="write the class table as CSV")

    p = sub.add_parser("orbits", parents=[common], help="PGL_2 orbits on P^(dim-1)")
    p.add_argument("p", type=int)
    p.add_argument("m", type=int)
    p.add_argument("dim", type=int)
    p.add_argument("--point", help="comma-separated coordinates (default: N_dim and N_dim + c(inf))")
    return parser


def run(argv=None) -> tuple[int, dict | None]:
    args = build_parser().parse_args(argv)
    if args.threads < 1 or args.max_points < 1:
        print("prsdeep: error: --threads and --max-points must be positive", file=sys.stderr)
        return EXIT_USAGE, None
    start = time.perf_counter()
    try:
        params, result, ok = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"prsdeep: error: {e}", file=sys.stderr)
        return EXIT_USAGE, None
    except BoundExceededError as e:
        print(f"prsdeep: bound exceeded: {e}", file=sys.stderr)
        return EXIT_BOUND, None
    except ClassificationError as e:
        print(f"prsdeep: check failed: {e}", file=sys.stderr)
        return EXIT_FAILED, None
    except ValueError as e:
        print(f"prsdeep: error: {e}", file=sys.stderr)
        return EXIT_USAGE, None
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": args.command,
        "parameters": params,
        "result": result,
    }
    if args.timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return (EXIT_OK if ok else EXIT_FAILED), report


def main(argv=None) -> int:
    return run(argv)[0]


def roundtrip_ok(report: dict) -> bool:
    """Re-test every emitted class through the column-support criterion."""
    par = report["parameters"]
    F = make_field(par["p"], par["m"])
    code = make_code(F, par["k"])
    rho = covering_radius(code)
    for c in report["result"].get("classes", []):
        s = tuple(c["syndrome"])
        if syndrome_to_genpoly(code, s).coeffs != tuple(c["genpoly"]):
            return False
        if not is_deep_hole_syndrome(code, s, rho):
            return False
    return True


if __name__ == "__main__":
    sys.exit(main())
