"""Command line front end.

Subcommands mirror the library: closed-form tables, certificates for
operators stored as JSON, face optimization, relative-interior threshold
scans, the lambda curves, the admissible (sigma, chi) region, Monte
Carlo audits, and polytope vertex dumps.  Output goes to stdout as
aligned text (default), CSV, or JSON; numbers use 12 significant digits.
Real-valued flags accept arithmetic expressions like (-199+9*sqrt(545))/71.

Exit status: 0 on success, 1 when a verification fails (infeasible
certificate, audit violations), 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys

import numpy as np

from .curvature import CurvOp, pinch_certificate
from .errors import BadParameter, Pinch4Error
from .geography import breakpoints, lambda_of_delta, region_polygon
from .oracle import audit, grid_extremum  # noqa: F401  (grid kept importable)
from .polytopes import einstein_simplex, ville_cells
from .qp_face import restrict, optimize, threshold_scan
from .quadforms import f_ville, q_eta, q_euler, q_half, q_lambda

_TOKEN = re.compile(r"\s*(sqrt|\d+\.?\d*(?:[eE][+-]?\d+)?|[()+\-*/])")


def parse_real(text: str) -> float:
    """Evaluate a small arithmetic expression: + - * / sqrt parens."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise argparse.ArgumentTypeError(
                f"cannot parse {text!r} at position {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)
    it = iter(tokens)
    cur = [next(it)]

    def advance():
        cur[0] = next(it)

    def expr():
        val = term()
        while cur[0] in ("+", "-"):
            op = cur[0]
            advance()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while cur[0] in ("*", "/"):
            op = cur[0]
            advance()
            rhs = factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor():
        tok = cur[0]
        if tok == "-":
            advance()
            return -factor()
        if tok == "(":
            advance()
            val = expr()
            if cur[0] != ")":
                raise argparse.ArgumentTypeError(f"missing ')' in {text!r}")
            advance()
            return val
        if tok == "sqrt":
            advance()
            if cur[0] != "(":
                raise argparse.ArgumentTypeError(
                    f"sqrt needs parentheses in {text!r}")
            advance()
            val = expr()
            if cur[0] != ")":
                raise argparse.ArgumentTypeError(f"missing ')' in {text!r}")
            advance()
            return float(np.sqrt(val))
        if tok is None or tok in ")+*/":
            raise argparse.ArgumentTypeError(f"unexpected end in {text!r}")
        advance()
        return float(tok)

    val = expr()
    if cur[0] is not None:
        raise argparse.ArgumentTypeError(f"trailing input in {text!r}")
    return float(val)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.12g}"
    if x is None:
        return ""
    return str(x)


def _emit(header, rows, fmt):
    if fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        return
    if fmt == "json":
        def jval(v):
            if isinstance(v, float):
                return float(f"{v:.12g}")
            return v
        out = [dict(zip(header, map(jval, row))) for row in rows]
        print(json.dumps(out, indent=2))
        return
    cells = [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in cells:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


_TABLE2_FACES = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5),
                 (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]
_TABLE3_FACES = [(1, 3, 4), (1, 3, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5),
                 (2, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)]
_TABLE5_FACES = [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4),
                 (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6),
                 (5, 6)]
_TABLE6_ROWS = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3),
                (3, 1), (3, 2), (4, 1), (4, 2)]


def _face_label(face) -> str:
    return "{" + ",".join(f"q{j}" for j in face) + "}"


def relint_windows(form_of_delta, face0, samples: int = 512):
    """Deltas where the critical point of a face restriction crosses the
    face boundary, found by coarse scan plus bisection.

    form_of_delta maps delta to the QuadForm; the polytope is the
    augmented Einstein simplex.  Returns (crossings, windows) where
    windows are maximal intervals with the critical point interior.
    The scan stays inside [1e-6, 1-1e-6]; past that the simplex
    degenerates and definiteness tests lose meaning.  A window that is
    still open at the cap is reported as reaching 1.
    """
    lo, hi = 1e-6, 1.0 - 1e-6

    def family(d):
        return form_of_delta(d), einstein_simplex(d, 6), face0

    def holds(d):
        rf = restrict(*family(d), delta=d)
        return rf.critical_bary is not None and rf.critical_bary.min() > 0

    grid = np.linspace(lo, hi, samples)
    vals = [holds(d) for d in grid]
    crossings = []
    for i in range(samples - 1):
        if vals[i] != vals[i + 1]:
            crossings.append(
                threshold_scan(family, "relint", grid[i], grid[i + 1]))
    windows = []
    edges = [lo] + crossings + [hi]
    for i in range(len(edges) - 1):
        mid = 0.5 * (edges[i] + edges[i + 1])
        if holds(mid):
            a = 0.0 if i == 0 else edges[i]
            b = 1.0 if i == len(edges) - 2 else edges[i + 1]
            windows.append((a, b))
    return crossings, windows


def _cmd_tables(args) -> int:
    delta = args.delta
    lam = args.lam if args.lam is not None else 0.5
    which = args.which
    if which == "table1":
        p = einstein_simplex(delta, 6)
        q = q_half(delta)
        rows = [(f"q{j}", restrict(q, p, (j - 1,)).value_at_critical)
                for j in range(1, 8)]
        _emit(["S", "value"], rows, args.format)
    elif which in ("table2", "table3"):
        faces = _TABLE2_FACES if which == "table2" else _TABLE3_FACES
        q = q_half(delta)
        p = einstein_simplex(delta, 6)
        rows = []
        for face in faces:
            face0 = tuple(j - 1 for j in face)
            rf = restrict(q, p, face0)
            _, windows = relint_windows(q_half, face0)
            wlo, whi = windows[0] if windows else (None, None)
            rows.append((_face_label(face), rf.value_at_critical, wlo, whi))
        _emit(["S", "value", "window_lo", "window_hi"], rows, args.format)
    elif which == "table4":
        p = einstein_simplex(delta, 6)
        q = q_lambda(lam, delta)
        rows = [(f"q{j}", restrict(q, p, (j - 1,)).value_at_critical)
                for j in range(1, 8)]
        _emit(["S", "value"], rows, args.format)
    elif which == "table5":
        p = einstein_simplex(delta, 6)
        q = q_lambda(lam, delta)
        rows = []
        for face in _TABLE5_FACES:
            face0 = tuple(j - 1 for j in face)
            rf = restrict(q, p, face0)
            active = (rf.is_definite("min") and rf.critical_bary is not None
                      and bool(rf.critical_bary.min() > 0))
            rows.append((_face_label(face), rf.value_at_critical, active))
        _emit(["S", "value", "active"], rows, args.format)
    else:
        cells = ville_cells(delta)
        rows = []
        for i, j in _TABLE6_ROWS:
            q = f_ville(lam, delta, i)
            rf = restrict(q, cells[i - 1], (j - 1,))
            rows.append((f"q{j}^{i}", rf.value_at_critical))
        _emit(["vertex", "value"], rows, args.format)
    return 0


def _cmd_certify(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        r = CurvOp.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise Pinch4Error(f"cannot read operator from {args.file}: {exc}")
    cert = pinch_certificate(r, args.delta, args.tol)
    rows = [("feasible", cert.feasible), ("sign", cert.sign),
            ("t1", cert.t1), ("t2", cert.t2),
            ("margin1", cert.margin1), ("margin2", cert.margin2),
            ("boundary", cert.boundary)]
    _emit(["field", "value"], rows, args.format)
    return 0 if cert.feasible else 1


def _build_problem(args):
    name = args.polytope
    if name.startswith("d"):
        p = einstein_simplex(args.delta, int(name[1]))
    else:
        p = ville_cells(args.delta)[int(name[1]) - 1]
    form = args.form
    if form == "qhalf":
        q = q_half(args.delta)
    elif form == "qlambda":
        if args.lam is None:
            raise BadParameter("qlambda needs --lambda")
        q = q_lambda(args.lam, args.delta)
    elif form == "qeta":
        if args.eta is None:
            raise BadParameter("qeta needs --eta")
        q = q_eta(args.eta)
    elif form == "qeuler":
        q = q_euler()
    else:
        if args.lam is None:
            raise BadParameter("fville needs --lambda")
        if not name.startswith("v"):
            raise BadParameter("fville lives on the cells v1..v4")
        q = f_ville(args.lam, args.delta, int(name[1]))
    return q, p


def _cmd_optimize(args) -> int:
    q, p = _build_problem(args)
    ext = optimize(q, p, args.sense)
    rows = [("value", ext.value),
            ("face", ",".join(str(j + 1) for j in ext.face)),
            ("point", " ".join(_fmt(float(x)) for x in ext.point)),
            ("candidates", len(ext.candidates))]
    _emit(["field", "value"], rows, args.format)
    return 0


def _cmd_thresholds(args) -> int:
    face = tuple(int(s) - 1 for s in args.face.split(","))
    if args.form == "qhalf":
        def form_of_delta(d):
            return q_half(d)
    else:
        lam = args.lam if args.lam is not None else 0.5

        def form_of_delta(d):
            return q_lambda(lam, d)
    crossings, windows = relint_windows(form_of_delta, face)
    rows = [("crossing", c) for c in crossings]
    rows += [("window", f"({_fmt(a)}, {_fmt(b)})") for a, b in windows]
    if not rows:
        rows = [("window", "none")]
    _emit(["kind", "delta"], rows, args.format)
    return 0


def _cmd_lambda_curve(args) -> int:
    lo, hi, step = args.lo, args.hi, args.step
    if step <= 0 or hi < lo:
        raise BadParameter("need --from <= --to and positive --step")
    d0v = breakpoints().d0v
    deltas = []
    d = lo
    while d <= hi + 1e-12:
        deltas.append(min(d, 1.0))
        d += step
    rows = []
    for d in deltas:
        lv = lambda_of_delta(d, "ville") if d >= d0v else None
        rows.append((d, lambda_of_delta(d, "best"),
                     lambda_of_delta(d, "star"), lv))
    _emit(["delta", "lambda", "lambda_star", "lambda_ville"], rows,
          args.format)
    if args.plot:
        _plot_lambda_curve(rows, args.plot)
    return 0


def _plot_lambda_curve(rows, path: str):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    d = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(d, [r[2] for r in rows], "C1--", label="star")
    dv = [r[0] for r in rows if r[3] is not None]
    ax.plot(dv, [r[3] for r in rows if r[3] is not None], "C2:",
            label="ville")
    ax.plot(d, [r[1] for r in rows], "C0-", lw=2, label="best")
    ax.set_xlabel("delta")
    ax.set_ylabel("lambda")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _cmd_region(args) -> int:
    poly = region_polygon(args.delta)
    rows = [(s, c) for s, c in poly]
    _emit(["sigma", "chi"], rows, args.format)
    if args.plot:
        _plot_region(poly, args.delta, args.plot)
    return 0


def _plot_region(poly, delta: float, path: str):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(5.5, 5))
    xs = [p[0] for p in poly] + [poly[0][0]]
    ys = [p[1] for p in poly] + [poly[0][1]]
    if len(poly) > 2:
        ax.fill(xs, ys, alpha=0.25, color="C0")
    ax.plot(xs, ys, "C0-o", ms=3)
    ax.set_xlabel("|sigma|")
    ax.set_ylabel("chi")
    ax.set_title(f"delta = {delta:.6g}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _cmd_audit(args) -> int:
    rep = audit(args.delta, args.n, args.seed)
    if args.format == "json":
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        rows = [(name, c.worst_margin, c.violations)
                for name, c in rep.checks.items()]
        _emit(["check", "worst_margin", "violations"], rows, args.format)
    return 1 if rep.total_violations > 0 else 0


def _cmd_vertices(args) -> int:
    name = args.polytope
    if name.startswith("d"):
        p = einstein_simplex(args.delta, int(name[1]))
        prefix = {5: "p", 6: "q", 7: "v"}[p.dim_ambient]
    else:
        p = ville_cells(args.delta)[int(name[1]) - 1]
        prefix = "q"
    V = p.vertex_array()
    rows = [(f"{prefix}{i + 1}",) + tuple(float(x) for x in V[i])
            for i in range(len(V))]
    header = ["vertex"] + [f"x{i + 1}" for i in range(p.dim_ambient)]
    _emit(header, rows, args.format)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinch4",
        description="curvature pinching computations on 4-manifolds")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "json"],
                        default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("tables", parents=[common],
                        help="closed-form value tables")
    sp.add_argument("--which", required=True,
                    choices=[f"table{i}" for i in range(1, 7)])
    sp.add_argument("--delta", type=parse_real, required=True)
    sp.add_argument("--lambda", dest="lam", type=parse_real, default=None)
    sp.set_defaults(func=_cmd_tables)

    sp = sub.add_parser("certify", parents=[common],
                        help="pinching certificate for an operator file")
    sp.add_argument("--file", required=True)
    sp.add_argument("--delta", type=parse_real, required=True)
    sp.add_argument("--tol", type=parse_real, default=1e-9)
    sp.set_defaults(func=_cmd_certify)

    sp = sub.add_parser("optimize", parents=[common],
                        help="extremize a form over a polytope")
    sp.add_argument("--form", required=True,
                    choices=["qhalf", "qlambda", "qeta", "qeuler",
                             "fville"])
    sp.add_argument("--polytope", required=True,
                    choices=["d5", "d6", "d7", "v1", "v2", "v3", "v4"])
    sp.add_argument("--delta", type=parse_real, required=True)
    sp.add_argument("--lambda", dest="lam", type=parse_real, default=None)
    sp.add_argument("--eta", type=parse_real, default=None)
    sp.add_argument("--sense", choices=["min", "max"], required=True)
    sp.set_defaults(func=_cmd_optimize)

    sp = sub.add_parser("thresholds", parents=[common],
                        help="relative-interior windows of a face")
    sp.add_argument("--face", required=True,
                    help="comma separated vertex labels, e.g. 1,3")
    sp.add_argument("--form", required=True, choices=["qhalf", "qlambda"])
    sp.add_argument("--lambda", dest="lam", type=parse_real, default=None)
    sp.set_defaults(func=_cmd_thresholds)

    sp = sub.add_parser("lambda-curve", parents=[common],
                        help="tabulate the lambda curves")
    sp.add_argument("--from", dest="lo", type=parse_real, required=True)
    sp.add_argument("--to", dest="hi", type=parse_real, required=True)
    sp.add_argument("--step", type=parse_real, required=True)
    sp.add_argument("--plot", default=None, metavar="PATH")
    sp.set_defaults(func=_cmd_lambda_curve)

    sp = sub.add_parser("region", parents=[common],
                        help="admissible (sigma, chi) polygon")
    sp.add_argument("--delta", type=parse_real, required=True)
    sp.add_argument("--plot", default=None, metavar="PATH")
    sp.set_defaults(func=_cmd_region)

    sp = sub.add_parser("audit", parents=[common],
                        help="Monte Carlo inequality audit")
    sp.add_argument("--delta", type=parse_real, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=_cmd_audit)

    sp = sub.add_parser("vertices", parents=[common],
                        help="vertex coordinates of a polytope")
    sp.add_argument("--polytope", required=True,
                    choices=["d5", "d6", "d7", "v1", "v2", "v3", "v4"])
    sp.add_argument("--delta", type=parse_real, required=True)
    sp.set_defaults(func=_cmd_vertices)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except Pinch4Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
