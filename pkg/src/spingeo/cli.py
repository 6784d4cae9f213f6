"""Command-line front end: ``spingeo <area> <action> [flags]``.

Areas mirror the module boundaries:

    chessboard  table | complex      emit the real / complex algebra tables
    tenfold     table                emit the 10 x 8 periodic table
    haldane     chern | phase | sweep
    kanemele    z2 | chern
    solve-space ky | cky | twistor | parallel-spinor | harmonic-poly
    verify      algebra | spinor | fields | brackets | transforms |
                symmetry | gauged | all

Exit codes: 0 success, 1 verify failure, 2 gapless spectrum, 64 bad flags.
Output goes to stdout (or --out); floats are printed with 17 significant
digits in JSON and 9 in CSV; identical configurations (including --seed)
produce byte-identical output.  SPINGEO_THREADS caps internal parallelism.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import bloch, classify, verify
from .algebra import Signature
from . import fields as F

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_GAPLESS = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _fmt_json(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {_fmt_json(str(k))}: {_fmt_json(v, indent + 1)}'
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}  {_fmt_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        return format(value, ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        import json
        return json.dumps(value)
    if isinstance(value, complex):
        return _fmt_json({"re": value.real, "im": value.imag}, indent)
    raise TypeError(f"cannot serialise {type(value)!r}")


def _fmt_csv_cell(value):
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, ".9g")
    if value is None:
        return ""
    return str(value)


def _rows_to_csv(rows):
    return "\n".join(",".join(_fmt_csv_cell(c) for c in row) for row in rows) + "\n"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_payload(which: str, fmt: str) -> str:
    if which == "chessboard":
        md, rows, js = (classify.chessboard_markdown, classify.chessboard_rows,
                        classify.chessboard_json)
    elif which == "complex":
        md, rows, js = (classify.complex_markdown, classify.complex_rows,
                        classify.complex_json)
    elif which == "tenfold":
        md, rows, js = (classify.tenfold_markdown, classify.tenfold_rows,
                        classify.tenfold_json)
    else:
        raise ValueError(which)
    if fmt == "md":
        return md()
    if fmt == "csv":
        return _rows_to_csv(rows())
    return _fmt_json(js()) + "\n"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SPINGEO_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> _Parser:
    parser = _Parser(prog="spingeo", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="area", required=True)

    def common(p, fmt_default="json", fmt_choices=("json", "csv", "md")):
        p.add_argument("--format", default=fmt_default, choices=fmt_choices)
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)

    chess = sub.add_parser("chessboard").add_subparsers(dest="action", required=True)
    for action in ("table", "complex"):
        common(chess.add_parser(action), fmt_default="md")

    tf = sub.add_parser("tenfold").add_subparsers(dest="action", required=True)
    common(tf.add_parser("table"), fmt_default="md")

    hald = sub.add_parser("haldane").add_subparsers(dest="action", required=True)
    p = hald.add_parser("chern")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--M", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--method", default="fhs_link", choices=("fhs_link", "dvector"))
    common(p, fmt_default="json", fmt_choices=("json",))
    p = hald.add_parser("phase")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--M", type=float, default=0.0)
    common(p, fmt_default="json", fmt_choices=("json",))
    p = hald.add_parser("sweep")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--t2", type=float, default=1.0)
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--margin", type=float, default=0.05)
    common(p, fmt_default="csv", fmt_choices=("csv", "json"))

    km = sub.add_parser("kanemele").add_subparsers(dest="action", required=True)
    p = km.add_parser("z2")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--lso", type=float, default=0.0)
    p.add_argument("--M", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--method", default="spin_chern",
                   choices=("spin_chern", "pfaffian", "both"))
    common(p, fmt_default="json", fmt_choices=("json",))
    p = km.add_parser("chern")
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--lso", type=float, default=0.0)
    p.add_argument("--M", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--sector", default="up", choices=("up", "down"))
    common(p, fmt_default="json", fmt_choices=("json",))

    ss = sub.add_parser("solve-space").add_subparsers(dest="action", required=True)
    for eq in ("ky", "cky", "twistor", "parallel-spinor", "harmonic-poly"):
        p = ss.add_parser(eq)
        p.add_argument("--dim", type=int, required=True)
        p.add_argument("--neg", type=int, default=0,
                       help="number of generators squaring to -1")
        if eq in ("ky", "cky"):
            p.add_argument("--p", type=int, required=True)
        p.add_argument("--degree", type=int, default=None)
        common(p, fmt_default="json", fmt_choices=("json",))

    vf = sub.add_parser("verify")
    vf.add_argument("suite", choices=tuple(verify.SUITES) + ("all",))
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--tol-scale", type=float, default=1.0)
    vf.add_argument("--format", default="json", choices=("json",))
    vf.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.area in ("chessboard", "tenfold"):
        which = "tenfold" if args.area == "tenfold" else \
            ("complex" if args.action == "complex" else "chessboard")
        _emit(_table_payload(which, args.format), args.out)
        return EXIT_OK

    if args.area == "haldane":
        return _run_haldane(args)
    if args.area == "kanemele":
        return _run_kanemele(args)
    if args.area == "solve-space":
        return _run_solve_space(args)
    if args.area == "verify":
        return _run_verify(args)
    return EXIT_USAGE


def _invariant_json(result, seed) -> str:
    data = result.to_json()
    data["seed"] = seed
    return _fmt_json(data) + "\n"


def _run_haldane(args) -> int:
    if args.action == "chern":
        model = bloch.haldane_model(t1=args.t1, t2=args.t2, phi=args.phi, M=args.M)
        try:
            res = bloch.chern(model, 1, args.grid, method=args.method)
        except bloch.GaplessError as exc:
            sys.stderr.write(f"gapless: {exc}\n")
            return EXIT_GAPLESS
        _emit(_invariant_json(res, args.seed), args.out)
        return EXIT_OK
    if args.action == "phase":
        label = bloch.haldane_phase(t1=args.t1, t2=args.t2, phi=args.phi, M=args.M)
        _emit(_fmt_json({"phase": label, "seed": args.seed}) + "\n", args.out)
        return EXIT_OK
    if args.action == "sweep":
        ratios = np.linspace(-8.0, 8.0, args.points)
        phis = np.linspace(-math.pi, math.pi, args.points + 2)[1:-1]
        rows = bloch.haldane_sweep(ratios, phis, t1=args.t1, t2=args.t2,
                                   grid=args.grid, margin=args.margin,
                                   threads=_threads())
        table = [["phi", "M_over_t2", "gap_min", "chern", "phase_label"]]
        for phi, ratio, gap, c, label in rows:
            table.append([float(phi), float(ratio), float(gap),
                          "" if c is None else int(c), label])
        if args.format == "csv":
            _emit(_rows_to_csv(table), args.out)
        else:
            payload = {"seed": args.seed, "rows": [
                {"phi": float(phi), "M_over_t2": float(r), "gap_min": float(g),
                 "chern": None if c is None else int(c), "phase_label": label}
                for phi, r, g, c, label in rows]}
            _emit(_fmt_json(payload) + "\n", args.out)
        return EXIT_OK
    return EXIT_USAGE


def _run_kanemele(args) -> int:
    model = bloch.kane_mele(t1=args.t1, lambda_so=args.lso, M=args.M)
    try:
        if args.action == "chern":
            sector = model.sectors[0 if args.sector == "up" else 1]
            res = bloch.chern(sector, 1, args.grid)
            _emit(_invariant_json(res, args.seed), args.out)
            return EXIT_OK
        if args.action == "z2":
            if args.method == "both":
                a = bloch.z2(model, "spin_chern", args.grid)
                b = bloch.z2(model, "pfaffian", args.grid)
                payload = {"spin_chern": a.to_json(), "pfaffian": b.to_json(),
                           "agree": a.value == b.value, "seed": args.seed}
                _emit(_fmt_json(payload) + "\n", args.out)
                return EXIT_OK if a.value == b.value else EXIT_VERIFY_FAIL
            res = bloch.z2(model, args.method, args.grid)
            _emit(_invariant_json(res, args.seed), args.out)
            return EXIT_OK
    except bloch.GaplessError as exc:
        sys.stderr.write(f"gapless: {exc}\n")
        return EXIT_GAPLESS
    return EXIT_USAGE


def _run_solve_space(args) -> int:
    sig = Signature(pos=args.dim - args.neg, neg=args.neg)
    name = args.action.replace("-", "_")
    if name in ("ky", "cky"):
        eq = (name, args.p)
        degree = args.degree if args.degree is not None else (1 if name == "ky" else 2)
    else:
        eq = name
        degree = args.degree if args.degree is not None else 1
    tol = args.tol if args.tol is not None else 1e-9
    space = F.solve_space(eq, sig, degree, _residual_tol=tol)
    payload = space.to_json()
    payload["seed"] = args.seed
    _emit(_fmt_json(payload) + "\n", args.out)
    return EXIT_OK


def _run_verify(args) -> int:
    report = verify.run_suites(args.suite, seed=args.seed, tol_scale=args.tol_scale)
    failing = [c for c in report if not c["pass"]]
    payload = {
        "suite": args.suite,
        "seed": args.seed,
        "checks": report,
        "failures": [c["name"] for c in failing],
        "pass": not failing,
    }
    _emit(_fmt_json(payload) + "\n", args.out)
    return EXIT_OK if not failing else EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
