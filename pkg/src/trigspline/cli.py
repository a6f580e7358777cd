"""``trigspline`` command line tool.

Subcommands::

    trigspline solve CONFIG [--out PATH]
    trigspline examples [--id 1|2|3] [--out-dir DIR]
    trigspline basis --family F --r R --n N --k K --q Q [--samples S] [--out PATH]
    trigspline interp --data CSV --family F --r R [--q Q] [--samples S] [--out PATH]

Exit status: 0 success, 1 configuration/usage error, 2 numerical failure,
3 I/O failure.
"""

import argparse
import contextlib
import csv
import logging
import math
from pathlib import Path
import sys
import warnings

import numpy as np

from .basis import BasisSpec, Family, basis_matrix
from .bvp import DomainError, error_report, solve
from .config import ConfigError, default_eps_tail, parse_config
from .expr import ExprError
from .grid import InvalidGridError
from .interpolant import Interpolant
from .kernels import PLOT_EPS_TAIL, TailNotConvergedWarning
from .linalg import SingularMatrixError
from .problems import N_SWEEP, variants

log = logging.getLogger("trigspline")

EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 1, 2, 3

FMT = "{:.16e}"


class UsageError(Exception):
    pass


def _fmt_row(values):
    return ",".join(FMT.format(v) for v in values)


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        p = Path(path)
        if p.parent != Path(""):
            p.parent.mkdir(parents=True, exist_ok=True)
        with open(p, "w", newline="") as fh:
            yield fh


def _write_table(path, header, rows):
    with _output(path) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(_fmt_row(row) + "\n")


def solution_table(solution, exact, samples):
    """Rows ``t, x, u_approx[, u_exact, abs_err]`` on ``samples + 1`` points."""
    x = np.linspace(solution.map.a, solution.map.b, samples + 1)
    t = solution.map.to_t(x)
    u = solution(x)
    cols = [t, x, u]
    header = ["t", "x", "u_approx"]
    if exact is not None:
        ue = np.asarray(exact(x), dtype=float)
        cols += [ue, np.abs(u - ue)]
        header += ["u_exact", "abs_err"]
    return header, np.column_stack(cols)


def cmd_solve(args):
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read config {args.config}: {exc}") from exc
    cfg = parse_config(text)
    problem = cfg.problem()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TailNotConvergedWarning)
        solution = solve(problem, cfg.basis())
    for msg in solution.warnings:
        log.warning("%s", msg)
    header, rows = solution_table(solution, problem.exact, cfg.samples)
    out = args.out or cfg.out or str(Path(args.config).with_suffix(".csv"))
    _write_table(out, header, rows)
    if problem.exact is not None:
        i = int(np.argmax(rows[:, 4]))
        print(f"max_abs_err={FMT.format(rows[i, 4])} at x={FMT.format(rows[i, 1])}")
    return 0


def run_examples(example_id=None, out_dir=".", eps_tail=None, n_sweep=N_SWEEP, samples=400):
    """Solve every reference variant over the N sweep and write the reports.

    Returns a list of dicts, one per (example, variant, r), with the best N,
    its error and the target error.
    """
    eps_tail = default_eps_tail() if eps_tail is None else eps_tail
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ids = [example_id] if example_id else [1, 2, 3]
    summary = []
    for ex in ids:
        error_rows = []
        curves = {}
        x_probe = None
        exact_curve = None
        for v in variants(ex):
            problem = v.problem.build()
            best = None
            for n in n_sweep:
                spec = BasisSpec(v.family, n, v.r, eps_tail)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", TailNotConvergedWarning)
                    sol = solve(problem, spec)
                rep = error_report(sol, problem.exact, samples)
                error_rows.append((ex, v.name, v.r, n, rep.max_abs_err))
                if best is None or rep.max_abs_err < best[1]:
                    best = (n, rep.max_abs_err, rep)
            n_best, err, rep = best
            x_probe, exact_curve = rep.table[:, 0], rep.table[:, 2]
            curves[f"{v.name}_r{v.r}_N{n_best}"] = rep.table[:, 1]
            summary.append(
                dict(example=ex, variant=v.name, r=v.r, n=n_best, max_abs_err=err, target=v.target, met=err <= v.target)
            )
        with open(out_dir / f"example{ex}_errors.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["example", "variant", "r", "N", "max_abs_err"])
            for row in error_rows:
                w.writerow([*row[:4], FMT.format(row[4])])
        names = list(curves)
        _write_table(
            out_dir / f"example{ex}_curves.csv",
            ["x", "u_exact", *names],
            np.column_stack([x_probe, exact_curve, *curves.values()]),
        )
        (out_dir / f"example{ex}.gp").write_text(_plot_script(ex, names))
    return summary


def _plot_script(ex, names):
    data = f"example{ex}_curves.csv"
    lines = [
        "# gnuplot script: exact vs approximate solutions",
        "set datafile separator ','",
        "set key left bottom",
        "set grid",
        "set xlabel 'x'",
        "set ylabel 'u'",
        "set terminal pngcairo size 900,600 noenhanced",
        f"set output 'example{ex}.png'",
        f"plot '{data}' using 1:2 with lines lw 3 dt 2 title 'exact', \\",
    ]
    for i, name in enumerate(names):
        sep = ", \\" if i < len(names) - 1 else ""
        lines.append(f"     '' using 1:{i + 3} with lines title '{name}'{sep}")
    return "\n".join(lines) + "\n"


def cmd_examples(args):
    summary = run_examples(args.id, args.out_dir)
    print(f"{'example':>7} {'variant':>8} {'r':>2} {'N':>3} {'max_abs_err':>12} {'target':>9}  met")
    for s in summary:
        print(
            f"{s['example']:>7} {s['variant']:>8} {s['r']:>2} {s['n']:>3} "
            f"{s['max_abs_err']:>12.5g} {s['target']:>9.5g}  {'yes' if s['met'] else 'NO'}"
        )
    return 0


def _plot_spec(args):
    try:
        return BasisSpec(args.family, args.n, args.r, default_eps_tail(PLOT_EPS_TAIL))
    except (ValueError, InvalidGridError) as exc:
        raise UsageError(str(exc)) from None


def cmd_basis(args):
    spec = _plot_spec(args)
    if not 1 <= args.k <= spec.n:
        raise UsageError(f"--k must lie in [1, {spec.n}], got {args.k}")
    if not 0 <= args.q <= spec.r - 1:
        raise UsageError(f"--q must lie in [0, r-1] = [0, {spec.r - 1}], got {args.q}")
    t = np.linspace(0.0, math.pi, args.samples + 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TailNotConvergedWarning)
        values = basis_matrix(spec, args.q, t)[:, args.k - 1]
    _write_table(args.out, ["t", "value"], np.column_stack([t, values]))
    return 0


def read_samples(path, spec):
    """Read an ``x,f`` CSV whose x column matches the grid nodes of `spec`."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [h.strip() for h in rows[0]] != ["x", "f"]:
        raise UsageError(f"{path}: expected header 'x,f'")
    try:
        data = np.array([[float(a), float(b)] for a, b in rows[1:] if (a or b)], dtype=float)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if data.shape != (spec.n, 2):
        raise UsageError(f"{path}: expected {spec.n} data rows, got {len(data)}")
    if np.abs(data[:, 0] - spec.nodes).max() > 1e-9:
        raise UsageError(f"{path}: x values do not match the {spec.family.value} grid nodes for N={spec.n}")
    return data[:, 1]


def cmd_interp(args):
    with open(args.data, newline="") as fh:
        n = sum(1 for line in fh if line.strip()) - 1
    args.n = n
    spec = _plot_spec(args)
    if not 0 <= args.q <= spec.r - 1:
        raise UsageError(f"--q must lie in [0, r-1] = [0, {spec.r - 1}], got {args.q}")
    interp = Interpolant(spec, read_samples(args.data, spec))
    t = np.linspace(0.0, math.pi, args.samples + 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TailNotConvergedWarning)
        values = interp(t, args.q)
    _write_table(args.out, ["t", "value"], np.column_stack([t, values]))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="trigspline", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a boundary value problem described by a config file")
    p.add_argument("config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("examples", help="reproduce the three reference problems")
    p.add_argument("--id", type=int, choices=(1, 2, 3))
    p.add_argument("--out-dir", default="trigspline-examples")
    p.set_defaults(func=cmd_examples)

    families = [f.value for f in Family]
    p = sub.add_parser("basis", help="tabulate one fundamental spline on [0, pi]")
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--out")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("interp", help="interpolate node samples read from an x,f CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--out")
    p.set_defaults(func=cmd_interp)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if getattr(args, "samples", 2) < 2:
        print("trigspline: error: --samples must be >= 2", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (ConfigError, UsageError) as exc:
        print(f"trigspline: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SingularMatrixError, ExprError, DomainError, FloatingPointError, ArithmeticError) as exc:
        print(f"trigspline: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"trigspline: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
