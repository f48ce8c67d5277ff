"""Command-line interface: ``gmd-extremes <command> [options]``.

Exit status is 0 on success, 2 on usage or domain errors and 1 on numeric
or I/O failures. Options may also come from a JSON file given with
``--config``; keys are option names with dashes replaced by underscores,
and explicit flags take precedence.
"""

import argparse
import json
import sys

from . import exact as ex_mod
from . import expansions as ex
from . import gmd, lab, report
from .errors import DomainError, NumericError, UsageError
from .norming import solve_norming


def parse_grid(text):
    """``start:stop:count`` (inclusive), a comma list, or a single number."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"grid {text!r} is not start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise argparse.ArgumentTypeError(f"grid {text!r} needs a positive count")
        if count == 1:
            return [start]
        step = (stop - start) / (count - 1)
        return [start + i * step if i < count - 1 else stop for i in range(count)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse grid {text!r}")


class _Usage(Exception):
    pass


def _require(cond, flag, message):
    if not cond:
        raise _Usage(f"{flag}: {message}")


def _params(args):
    _require(args.k > 0, "--k", f"shape must be positive, got {args.k}")
    _require(args.sigma > 0, "--sigma", f"scale must be positive, got {args.sigma}")
    return gmd.GmdParams(args.k, args.sigma)


def _norming(p, n, flag="--n"):
    _require(n is not None, flag, "is required")
    _require(3 <= n <= 1e300, flag, f"must lie in [3, 1e300], got {n}")
    return solve_norming(p, n)


def _n_grid(args, flag="--n-grid"):
    grid = args.n_grid
    _require(grid, flag, "must be nonempty")
    for n in grid:
        _require(3 <= n <= 1e300, flag, f"entries must lie in [3, 1e300], got {n}")
    return grid


def _order(args):
    try:
        return ex.ApproxOrder.parse(args.order)
    except (ValueError, KeyError):
        raise _Usage(f"--order: expected 1, 2, 3 (or first/second/third), got {args.order!r}")


def _emit_number(value, out):
    text = report.fmt_number(value) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit(records, args, columns=None):
    report.write_report(records, args.format, args.out, columns)


# --- command handlers ------------------------------------------------------------

def cmd_dist(args):
    p = _params(args)
    q = args.quantity
    if q == "quantile":
        _require(args.q is not None and 0 < args.q < 1, "--q", "must lie in (0, 1)")
        return _emit_number(gmd.quantile(p, args.q), args.out)
    if q == "sample":
        import numpy as np

        _require(args.count >= 1, "--count", "must be a positive integer")
        draws = gmd.sample(p, np.random.default_rng(args.seed), args.count)
        return _emit([{"value": float(v)} for v in draws], args)
    _require(args.x is not None, "--x", "is required")
    if q == "mills":
        _require(args.x > 0, "--x", "must be positive for the Mills tail")
        _require(args.terms in (1, 2, 3), "--terms", "must be 1, 2 or 3")
        return _emit_number(gmd.mills_tail(p, args.x, args.terms), args.out)
    fn = {"pdf": gmd.pdf, "cdf": gmd.cdf, "sf": gmd.sf, "log-sf": gmd.log_sf}[q]
    return _emit_number(fn(p, args.x), args.out)


def cmd_norming(args):
    p = _params(args)
    grid = [args.n] if args.n is not None else _n_grid(args)
    rows = []
    for n in grid:
        nm = _norming(p, n)
        rows.append({"k": p.k, "sigma": p.sigma, "n": nm.n, "b": nm.b,
                     "b_pow_2k": nm.b_pow_2k, "t": nm.t})
    _emit(rows, args)


def cmd_approx(args):
    p = _params(args)
    nm = _norming(p, args.n)
    order = _order(args)
    printed = args.coefficients == "printed"
    q = args.quantity
    if q == "max-cdf":
        value = ex.approx_max_cdf(p, nm, args.x, order, printed)
    elif q == "min-cdf":
        value = ex.approx_min_cdf(p, nm, args.y, order, printed)
    elif q == "cdf":
        value = ex.approx_joint_cdf(p, nm, args.x, args.y, order, printed)
    else:
        value = ex.approx_joint_pdf(p, nm, args.x, args.y, order, printed)
    _emit_number(value, args.out)


def cmd_exact(args):
    p = _params(args)
    nm = _norming(p, args.n)
    pt = ex_mod.JointPoint(args.x, args.y)
    fn = {
        "max-cdf": lambda: ex_mod.exact_max_cdf(p, nm, pt.x),
        "min-cdf": lambda: ex_mod.exact_min_cdf(p, nm, pt.y),
        "cdf": lambda: ex_mod.exact_joint_cdf(p, nm, pt),
        "pdf": lambda: ex_mod.exact_joint_pdf(p, nm, pt),
        "h": lambda: ex_mod.h_k_functional(p, nm, pt),
    }[args.quantity]
    _emit_number(fn(), args.out)


def cmd_errors(args):
    p = _params(args)
    records = lab.error_table(p, _n_grid(args), args.x_grid, args.y_grid,
                              printed=args.coefficients == "printed")
    _emit(records, args, list(lab.ERROR_COLUMNS))


def cmd_probe(args):
    p = _params(args)
    _require(args.id in lab.PROBES, "--id", f"unknown probe; choose from {sorted(lab.PROBES)}")
    grid = _n_grid(args)
    _require(len(grid) >= 2, "--n-grid", "needs at least two sizes")
    _require(all(b > a for a, b in zip(grid, grid[1:])), "--n-grid", "must be strictly increasing")
    results = lab.probe_both_stages(args.id, p, (args.x, args.y), grid,
                                    printed=args.coefficients == "printed")
    if args.format == "json":
        text = report.dumps_json(results)
        if args.out in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
    else:
        cols = ["functional_id", "stage", "k", "sigma", "x", "y", "extrapolated", "target",
                "abs_gap", "rel_gap"]
        _emit(results, args, cols)


def cmd_rates(args):
    p = _params(args)
    order = _order(args)
    grid = _n_grid(args)
    _require(len(grid) >= 2, "--n-grid", "needs at least two sizes")
    slope = lab.rate_fit(p, (args.x, args.y), order, grid, args.kind,
                         printed=args.coefficients == "printed")
    _emit([{"k": p.k, "sigma": p.sigma, "x": args.x, "y": args.y, "kind": args.kind,
            "order": int(order), "slope": slope}], args)


def cmd_mc(args):
    p = _params(args)
    _require(args.n is not None and args.n >= 3 and float(args.n).is_integer(), "--n",
             "block size must be an integer >= 3")
    _require(args.reps >= 1, "--reps", "must be positive")
    _require(args.n * args.reps <= lab.MC_BUDGET, "--reps",
             f"n * reps exceeds the budget of {lab.MC_BUDGET:.0e} draws")
    grid = [(x, y) for x in args.x_grid for y in args.y_grid]
    summary = lab.mc_block_extremes(p, int(args.n), args.reps, args.seed, grid)
    if args.format == "json":
        text = report.dumps_json(summary)
        if args.out in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
        return
    rows = [
        {"x": pt.x, "y": pt.y, "empirical": e, "exact": q, "abs_dev": abs(e - q)}
        for pt, e, q in zip(summary.grid, summary.empirical, summary.exact)
    ]
    _emit(rows, args)


def cmd_figures(args):
    _require(args.sigma > 0, "--sigma", "must be positive")
    _require(args.out not in (None, "-"), "--out", "figures need an output directory")
    for path in report.write_figures(args.which, args.out, args.sigma, args.plot):
        print(path)


# --- parser ----------------------------------------------------------------------------

def _common(sp, n=True, point=True, fmt="csv"):
    sp.add_argument("--k", type=float, default=1.0, help="shape k > 0")
    sp.add_argument("--sigma", type=float, default=1.0, help="scale sigma > 0")
    sp.add_argument("--config", help="JSON file with option defaults")
    sp.add_argument("--out", default=None, help="output file (default stdout)")
    sp.add_argument("--format", choices=["csv", "json"], default=fmt)
    if n:
        sp.add_argument("--n", type=float, default=None, help="sample size n >= 3")
    if point:
        sp.add_argument("--x", type=float, default=0.0)
        sp.add_argument("--y", type=float, default=0.0)


def _coeff_flag(sp):
    sp.add_argument("--coefficients", choices=["corrected", "printed"], default="corrected",
                    help="second-order coefficients to use (default corrected)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gmd-extremes",
        description="Extremes of the generalized Maxwell distribution: exact laws, "
                    "asymptotic expansions and their numerical verification.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    subs = {}

    sp = sub.add_parser("dist", help="evaluate the distribution")
    sp.add_argument("quantity", choices=["pdf", "cdf", "sf", "log-sf", "quantile", "mills", "sample"])
    _common(sp, n=False, point=False)
    sp.add_argument("--x", type=float, default=None)
    sp.add_argument("--q", type=float, default=None, help="probability level for quantile")
    sp.add_argument("--terms", type=int, default=3)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    subs["dist"] = sp

    sp = sub.add_parser("norming", help="solve 1 - F(b_n) = 1/n")
    _common(sp, point=False)
    sp.add_argument("--n-grid", type=parse_grid, default=None)
    subs["norming"] = sp

    sp = sub.add_parser("approx", help="order-1/2/3 approximants")
    sp.add_argument("quantity", choices=["max-cdf", "min-cdf", "cdf", "pdf"])
    _common(sp)
    sp.add_argument("--order", default="3")
    _coeff_flag(sp)
    subs["approx"] = sp

    sp = sub.add_parser("exact", help="exact finite-n laws")
    sp.add_argument("quantity", choices=["max-cdf", "min-cdf", "cdf", "pdf", "h"])
    _common(sp)
    subs["exact"] = sp

    sp = sub.add_parser("errors", help="absolute error table")
    _common(sp, n=False, point=False)
    sp.add_argument("--n-grid", type=parse_grid, default=[500.0])
    sp.add_argument("--x-grid", type=parse_grid, default=[2.0])
    sp.add_argument("--y-grid", type=parse_grid, default=[6.0])
    _coeff_flag(sp)
    subs["errors"] = sp

    sp = sub.add_parser("probe", help="Richardson-extrapolated limit probe")
    _common(sp, n=False, fmt="json")
    sp.add_argument("--id", required=True, help=", ".join(sorted(lab.PROBES)))
    sp.add_argument("--n-grid", type=parse_grid, default=list(lab.DEFAULT_N_GRID))
    _coeff_flag(sp)
    subs["probe"] = sp

    sp = sub.add_parser("rates", help="fitted convergence slope")
    _common(sp, n=False)
    sp.add_argument("--order", default="1")
    sp.add_argument("--kind", choices=["cdf", "pdf"], default="cdf")
    sp.add_argument("--n-grid", type=parse_grid, default=list(lab.RATE_N_GRID))
    _coeff_flag(sp)
    subs["rates"] = sp

    sp = sub.add_parser("mc", help="Monte Carlo block extremes vs the exact law")
    _common(sp, point=False, fmt="json")
    sp.add_argument("--reps", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=12345)
    sp.add_argument("--x-grid", type=parse_grid, default=[-1.0, 0.0, 1.0])
    sp.add_argument("--y-grid", type=parse_grid, default=[-1.0, 0.0, 1.0])
    subs["mc"] = sp

    sp = sub.add_parser("figures", help="write figure datasets (CSV, optional PNG)")
    sp.add_argument("--which", choices=["1", "2", "3", "4", "all"], default="all")
    sp.add_argument("--sigma", type=float, default=1.0)
    sp.add_argument("--config", help="JSON file with option defaults")
    sp.add_argument("--out", default=None, help="output directory")
    sp.add_argument("--plot", action="store_true", help="also render PNG figures")
    subs["figures"] = sp

    return parser, subs


HANDLERS = {
    "dist": cmd_dist, "norming": cmd_norming, "approx": cmd_approx, "exact": cmd_exact,
    "errors": cmd_errors, "probe": cmd_probe, "rates": cmd_rates, "mc": cmd_mc,
    "figures": cmd_figures,
}


def _apply_config(argv, parser, subs):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or known.command not in subs:
        return
    with open(known.config) as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise _Usage("--config: file must hold a JSON object")
    sp = subs[known.command]
    dests = {a.dest: a for a in sp._actions}
    defaults = {}
    for key, value in config.items():
        dest = key.replace("-", "_")
        if dest not in dests or dest in ("help", "config"):
            raise _Usage(f"--config: unknown option {key!r} for {known.command}")
        action = dests[dest]
        if action.type is parse_grid and not isinstance(value, list):
            value = parse_grid(value)
        defaults[dest] = value
    sp.set_defaults(**defaults)


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        _apply_config(argv, parser, subs)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except _Usage as exc:
        print(f"gmd-extremes: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, argparse.ArgumentTypeError) as exc:
        print(f"gmd-extremes: error: --config: {exc}", file=sys.stderr)
        return 2
    try:
        HANDLERS[args.command](args)
    except (_Usage, UsageError, DomainError) as exc:
        print(f"gmd-extremes: error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, ArithmeticError) as exc:
        print(f"gmd-extremes: numeric failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"gmd-extremes: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
