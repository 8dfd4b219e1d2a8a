"""Command-line front end: experiment configuration, manifests, JSON/CSV output.

Every subcommand emits a JSON document {"manifest": ..., "result": ...}.
The manifest records the full parameter map, seed, worker count and version;
re-running with the same manifest reproduces the result block byte for byte
(wall_time lives in the manifest, outside the determinism contract).
Randomized subcommands refuse to run without an explicit --seed.

Exit codes: 0 success, 2 validation error, 3 budget/overflow/precision error.
"""

from __future__ import annotations

import argparse
import csv
import importlib.resources
import json
import sys
import time
from fractions import Fraction

from . import __version__, bounds_tables, curves, large_values, mean_value, weyl_sum
from .errors import BudgetExceeded, DegenerateInput, DomainError, PrecisionError
from .poly_phase import IntPolynomial, PhasePoint

RANDOMIZED = {"mvt-mc", "exponent", "badset"}


def load_schema() -> dict:
    with importlib.resources.files("weyllab").joinpath("schema.json").open() as fh:
        return json.load(fh)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",")]


def _k_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _window(text: str):
    parts = [Fraction(p) for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window must be x0,x1,y0,y1")
    return tuple(parts)


def _point_pair(text: str) -> tuple[float, float]:
    parts = tuple(float(v) for v in text.split(","))
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("center must be z1,z2")
    return parts


def _add_omega_flags(sp: argparse.ArgumentParser) -> None:
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--omega", type=IntPolynomial.parse, help="coefficients c0,c1,...,ck (low to high)")
    g.add_argument("--monomial", type=int, help="shorthand for T^k")


def _get_omega(args) -> IntPolynomial:
    return args.omega if args.omega is not None else IntPolynomial.monomial(args.monomial)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weyllab", description=__doc__)
    ap.add_argument("--out", help="write the JSON document here (default stdout)")
    ap.add_argument("--csv", help="write the plot-ready CSV here")
    ap.add_argument("--seed", type=int, help="seed for randomized subcommands")
    ap.add_argument("--threads", type=int, default=1, help="worker count (results are worker-count independent)")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("tables", help="exponent tables for a k range")
    sp.add_argument("--k", type=_k_range, required=True, metavar="A..B")
    sp.add_argument("--rho", type=_fraction, default=Fraction(1))
    sp.add_argument("--md", help="write a Markdown table here")

    sp = sub.add_parser("sum", help="one Weyl sum, or a CSV batch")
    _add_omega_flags(sp)
    sp.add_argument("--x", type=_fraction)
    sp.add_argument("--y", type=_fraction)
    sp.add_argument("--N", type=int)
    sp.add_argument("--batch", help="CSV of rows x,y,N; emits x,y,N,re,im,abs,W rows")

    sp = sub.add_parser("wsum", help="completion sum and partial-max ratio")
    _add_omega_flags(sp)
    sp.add_argument("--x", type=_fraction, required=True)
    sp.add_argument("--y", type=_fraction, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--method", choices=("fft", "direct"), default="fft")

    sp = sub.add_parser("mvt-count", help="exact solution count J")
    _add_omega_flags(sp)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--budget", type=int, default=mean_value.DEFAULT_BUDGET)

    sp = sub.add_parser("mvt-mc", help="Monte-Carlo moment of |S| or W")
    _add_omega_flags(sp)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--which", choices=("S", "W"), default="S")

    sp = sub.add_parser("scan", help="large-value grid scan")
    _add_omega_flags(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--alpha", type=_fraction, required=True)
    sp.add_argument("--eps", type=_fraction, default=Fraction(1, 20))
    sp.add_argument("--window", type=_window, default=large_values.FULL_TORUS, metavar="x0,x1,y0,y1")
    sp.add_argument("--s", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--budget", type=int, default=2**22)
    sp.add_argument("--chunk", type=int, default=4096)

    sp = sub.add_parser("curve-sup", help="supremum of |S| along one curve")
    _add_omega_flags(sp)
    sp.add_argument("--curve", choices=("line", "circle"), required=True)
    sp.add_argument("--tau", type=float, default=1.0)
    sp.add_argument("--c", type=float, default=0.0)
    sp.add_argument("--center", type=_point_pair, default=(0.5, 0.5))
    sp.add_argument("--r", type=float, default=0.25)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--mode", choices=("empirical", "rigorous"), default="empirical")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--alpha", type=_fraction, help="needed in rigorous mode")
    sp.add_argument("--eps", type=_fraction, default=Fraction(1, 20))
    sp.add_argument("--with-w", action="store_true")

    sp = sub.add_parser("exponent", help="growth exponent of sup |S| along a curve family")
    _add_omega_flags(sp)
    sp.add_argument("--tau", type=float, default=1.0)
    sp.add_argument("--Ns", type=_int_list, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--budget", type=int, default=2**14)
    sp.add_argument("--median", action="store_true")

    sp = sub.add_parser("badset", help="exceedance experiment over a curve family")
    _add_omega_flags(sp)
    sp.add_argument("--family", choices=("projection", "line", "circle"), required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--budget", type=int, default=2**12)
    sp.add_argument("--tau", type=float, default=1.0)
    sp.add_argument("--r", type=float, default=0.25)
    return ap


def _do_tables(args):
    rows = []
    for k in args.k:
        tab = bounds_tables.exponent_table(k, args.rho)
        rows.append(
            {
                "k": k,
                "eta": tab.eta,
                "s0": tab.s0,
                "sigma0": str(tab.sigma0),
                **{name: str(v) for name, v in tab.bounds.items()},
            }
        )
    result = {"rho": str(args.rho), "theta_exact": str(bounds_tables.theta_exact()), "rows": rows}
    cols = ["k", "eta", "s0", "sigma0", "holder", "projection", "circle", "weyl_differencing", "vinogradov"]
    csv_rows = [[row[c] for c in cols] for row in rows]
    md = None
    if args.md:
        lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
        lines += ["| " + " | ".join(str(row[c]) for c in cols) + " |" for row in rows]
        md = "\n".join(lines) + "\n"
    return result, (cols, csv_rows), md


def _do_sum(args):
    omega = _get_omega(args)
    if args.batch:
        cols = ["x", "y", "N", "re", "im", "abs", "W"]
        out_rows = []
        with open(args.batch, newline="") as fh:
            for raw in csv.reader(fh):
                if not raw or raw[0].lstrip().startswith("#") or raw[0].strip() == "x":
                    continue
                x, y, N = Fraction(raw[0]), Fraction(raw[1]), int(raw[2])
                p = PhasePoint(x, y)
                s = weyl_sum.weyl_sum(omega, p, N)
                w = weyl_sum.completion_sum(omega, p, N).value
                out_rows.append([str(x), str(y), N, repr(s.real), repr(s.imag), repr(abs(s)), repr(w)])
        return {"rows": len(out_rows)}, (cols, out_rows), None
    if args.x is None or args.y is None or args.N is None:
        raise DomainError("need --x, --y and --N (or --batch)")
    p = PhasePoint(args.x, args.y)
    s = weyl_sum.weyl_sum(omega, p, args.N)
    result = {"x": str(args.x), "y": str(args.y), "N": args.N, "re": s.real, "im": s.imag, "abs": abs(s)}
    return result, None, None


def _do_wsum(args):
    omega = _get_omega(args)
    p = PhasePoint(args.x, args.y)
    comp = weyl_sum.completion_sum(omega, p, args.N, method=args.method)
    pmax = weyl_sum.partial_max(omega, p, args.N)
    result = {
        "x": str(args.x),
        "y": str(args.y),
        "N": args.N,
        "method": args.method,
        "W": comp.value,
        "partial_max": pmax,
        "domination_ratio": pmax / comp.value,
    }
    return result, None, None


def _do_mvt_count(args):
    omega = _get_omega(args)
    sc = mean_value.count_solutions(omega, args.s, args.N, budget=args.budget)
    return {"omega": str(omega), "s": sc.s, "N": sc.N, "J": str(sc.J)}, None, None


def _do_mvt_mc(args):
    omega = _get_omega(args)
    fn = mean_value.mc_moment_S if args.which == "S" else mean_value.mc_moment_W
    est = fn(omega, args.s, args.N, args.samples, args.seed)
    result = {
        "omega": str(omega),
        "which": args.which,
        "s": args.s,
        "N": args.N,
        "samples": est.samples,
        "mean": est.mean,
        "std_error": est.std_error,
    }
    return result, None, None


def _do_scan(args):
    omega = _get_omega(args)
    spec = large_values.grid_spec(args.N, args.alpha, args.eps, omega.degree)
    res = large_values.scan(
        omega, spec, window=args.window, s=args.s, t=args.t,
        chunk=args.chunk, budget=args.budget, collect_flagged=bool(args.csv),
    )
    result = {
        "N": spec.N,
        "alpha": str(spec.alpha),
        "eps": str(spec.eps),
        "k": spec.k,
        "zeta1": str(spec.zeta1),
        "zeta2": str(spec.zeta2),
        "window": res.window,
        "squares_scanned": res.squares_scanned,
        "large_count": res.large_count,
        "threshold": res.threshold,
        "lemma_bound": res.lemma_bound,
        "bound_ratio": res.bound_ratio,
        "s": res.s,
        "t": res.t,
        "max_value": res.max_value,
    }
    csv_payload = (["x", "y", "W"], [list(map(repr, row)) for row in res.flagged]) if args.csv else None
    return result, csv_payload, None


def _make_curve(args):
    if args.curve == "line":
        return curves.Line(args.tau, args.c)
    return curves.Circle(tuple(args.center), args.r)


def _do_curve_sup(args):
    omega = _get_omega(args)
    curve = _make_curve(args)
    sup = curves.sup_along(
        omega, curve, args.N, mode=args.mode, samples=args.samples,
        with_completion=args.with_w, alpha=args.alpha, eps=args.eps,
    )
    result = {
        "curve": args.curve,
        "N": args.N,
        "mode": sup.mode,
        "samples_used": sup.samples_used,
        "sup_S": sup.sup_S,
        "sup_W": sup.sup_W,
        "argmax": {"x": sup.argmax.x, "y": sup.argmax.y},
        "certified": sup.mode == "rigorous",
    }
    return result, None, None


def _do_exponent(args):
    omega = _get_omega(args)
    report = curves.exponent_along(
        omega, lambda c: curves.Line(args.tau, c), args.Ns, args.trials,
        args.seed, budget=args.budget, aggregate="median" if args.median else "mean",
    )
    result = {
        "tau": args.tau,
        "Ns": args.Ns,
        "trials": args.trials,
        "budget": args.budget,
        "aggregate": "median" if args.median else "mean",
        "slope": report.slope,
        "intercept": report.intercept,
        "residual_max": report.residual_max,
        "points": [[n, v] for n, v in report.points],
    }
    return result, (["N", "mean_sup"], [[n, repr(v)] for n, v in report.points]), None


def _do_badset(args):
    omega = _get_omega(args)
    rep = curves.bad_set_experiment(
        omega, args.family, args.N, args.alpha, args.trials, args.seed,
        budget=args.budget, tau=args.tau, radius=args.r,
    )
    result = {
        "family": rep.family,
        "N": rep.N,
        "alpha": rep.alpha,
        "trials": rep.trials,
        "budget": rep.budget,
        "exceed_fraction": rep.exceed_fraction,
        "theory_exponent": rep.theory_exponent,
    }
    return result, None, None


_HANDLERS = {
    "tables": _do_tables,
    "sum": _do_sum,
    "wsum": _do_wsum,
    "mvt-count": _do_mvt_count,
    "mvt-mc": _do_mvt_mc,
    "scan": _do_scan,
    "curve-sup": _do_curve_sup,
    "exponent": _do_exponent,
    "badset": _do_badset,
}


def _manifest(args, wall_time: float) -> dict:
    params = {}
    for key, val in sorted(vars(args).items()):
        if key in ("out", "csv", "md", "subcommand"):
            continue
        if isinstance(val, (IntPolynomial, Fraction)):
            params[key] = str(val)
        elif isinstance(val, tuple):
            params[key] = [str(v) for v in val]
        else:
            params[key] = val
    return {
        "subcommand": args.subcommand,
        "params": params,
        "seed": args.seed,
        "worker_count": args.threads,
        "version": __version__,
        "wall_time_s": wall_time,
    }


def _write_csv(path: str, manifest: dict, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        for key in ("subcommand", "seed", "worker_count", "version"):
            fh.write(f"# {key}={manifest[key]}\n")
        fh.write(f"# params={json.dumps(manifest['params'], sort_keys=True)}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.subcommand in RANDOMIZED and args.seed is None:
        print(f"error: --seed is required for {args.subcommand!r} (no implicit seeds)", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        result, csv_payload, md = _HANDLERS[args.subcommand](args)
    except (DomainError, DegenerateInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, OverflowError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    manifest = _manifest(args, time.perf_counter() - start)
    doc = json.dumps({"manifest": manifest, "result": result}, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    if args.csv and csv_payload is not None:
        _write_csv(args.csv, manifest, *csv_payload)
    if md is not None and getattr(args, "md", None):
        with open(args.md, "w") as fh:
            fh.write(md)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
