"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 disconnected graph, 3 edge-list parse error,
4 unstable time step.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import graph as gc
from .errors import (
    DisconnectedGraphError,
    EdgeListParseError,
    InvalidParameterError,
    NetRobustError,
    StabilityError,
)
from .robustness import (
    analyze,
    approximation_bound,
    design_degree,
    h_expected,
    h_star,
    h_star_closed_form,
)
from .sim import SimConfig, estimate_h_star, simulate

EXIT_OK, EXIT_USAGE, EXIT_DISCONNECTED, EXIT_PARSE, EXIT_STABILITY = 0, 1, 2, 3, 4

ANALYSIS_FIELDS = (
    "source", "n", "num_edges", "avg_degree", "avg_distance", "diameter",
    "algebraic_connectivity", "h_star", "kirchhoff", "lower_bound", "upper_bound",
    "star_ratio", "complete_ratio", "lower_tight", "upper_tight",
)

TABLE1_SIZES = (20, 40, 60)
TABLE1_FAMILIES = ("path", "star", "random-3-regular", "complete")
TABLE2_CASES = ((100, 4), (150, 6), (200, 8), (250, 10))
TABLE2_ALPHA = 25


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _dump_json(obj, fh):
    json.dump({k: _json_value(v) for k, v in obj.items()}, fh, indent=2)
    fh.write("\n")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


# ---------------------------------------------------------------------------
# gen


def _build_graph(args):
    fam = args.family
    if fam in gc.FAMILIES:
        if args.n is None:
            raise UsageError(f"--family {fam} requires --n")
        return gc.make_family(fam, args.n)
    if fam == "lollipop":
        if args.p is None or args.q is None:
            raise UsageError("--family lollipop requires --p and --q")
        return gc.make_lollipop(args.p, args.q)
    if args.n is None or args.k is None:
        raise UsageError("--family random-regular requires --n and --k")
    return gc.random_regular(args.n, args.k, args.seed)


def summary_line(g):
    return (f"n={g.n} edges={g.num_edges} avg_degree={gc.average_degree(g):.12g} "
            f"connected={str(gc.is_connected(g)).lower()}")


def cmd_gen(args):
    g = _build_graph(args)
    text = gc.save_edgelist(g)
    if args.out == "-":
        sys.stdout.write(text)
        print(summary_line(g), file=sys.stderr)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary_line(g))
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze


def analysis_record(g, source):
    rep = analyze(g)
    rec = {"source": source}
    for key in ANALYSIS_FIELDS[1:]:
        rec[key] = getattr(rep, key)
    return rec


def _read_graph(path):
    if path == "-":
        return gc.load_edgelist(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return gc.load_edgelist(text)


def cmd_analyze(args):
    g = _read_graph(args.file)
    rec = analysis_record(g, args.file)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(ANALYSIS_FIELDS)
        w.writerow([_fmt(rec[k]) for k in ANALYSIS_FIELDS])
    else:
        _dump_json(rec, sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# curve


def curve_rows(k_min, k_max, eps):
    if not 3 <= k_min <= k_max:
        raise UsageError(f"need 3 <= k-min <= k-max, got {k_min}, {k_max}")
    return [approximation_bound(k, eps) for k in range(k_min, k_max + 1)]


def cmd_curve(args):
    try:
        rows = curve_rows(args.k_min, args.k_max, args.eps)
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from None
    out = sys.stdout
    out.write("k,value\n")
    for pt in rows:
        out.write(f"{pt.k},{pt.value!r}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate


def _sim_config(args):
    try:
        return SimConfig(
            dt=args.dt, t_final=args.t_final, burn_in=args.burn_in, trials=args.trials,
            seed=args.seed, record_every=args.record_every, whole_horizon=args.whole_horizon,
        )
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from None


def cmd_simulate(args):
    cfg = _sim_config(args)
    g = _read_graph(args.file)
    res = simulate(g, cfg)
    theory = h_expected(g)
    if args.trajectory:
        with open(args.trajectory, "w", encoding="utf-8", newline="") as fh:
            fh.write("t,mean_variance\n")
            for t, v in zip(res.times, res.variance_trajectory):
                fh.write(f"{float(t)!r},{float(v)!r}\n")
    rc = res.config
    summary = {
        "estimate": res.time_avg_variance,
        "stderr": res.stderr,
        "theory_h_star": theory,
        "rel_error": abs(res.time_avg_variance - theory) / theory,
        "dt": rc.dt,
        "t_final": rc.t_final,
        "burn_in": rc.burn_in,
        "trials": rc.trials,
        "seed": rc.seed,
        "whole_horizon": rc.whole_horizon,
    }
    _dump_json(summary, sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduce


def table1_graph(family, n, seed):
    if family == "random-3-regular":
        return gc.random_regular(n, 3, seed)
    return gc.make_family(family, n)


def table1_rows(seed=0, trials=None, whole_horizon=False, simulate_cells=True):
    """Rows ``(family, n, seed|None, simulated, stderr, theory)`` for the size sweep."""
    cfg = SimConfig(seed=seed, whole_horizon=whole_horizon,
                    **({} if trials is None else {"trials": trials}))
    rows = []
    for family in TABLE1_FAMILIES:
        for n in TABLE1_SIZES:
            g = table1_graph(family, n, seed)
            theory = h_star(g)
            est = se = float("nan")
            if simulate_cells:
                est, se = estimate_h_star(g, cfg)
            rows.append({
                "family": family, "n": n,
                "seed": seed if family == "random-3-regular" else None,
                "simulated": est, "stderr": se, "theory": theory,
            })
    return rows


def table2_rows(seed=0, alpha=TABLE2_ALPHA):
    rows = []
    for n, _ in TABLE2_CASES:
        k = design_degree(n, alpha)
        g = gc.random_regular(n, k, seed)
        h_rr = h_star(g)
        h_k = h_star_closed_form("complete", n)
        rows.append({"n": n, "k": k, "seed": seed, "h_star_regular": h_rr,
                     "h_star_complete": h_k, "ratio": h_rr / h_k})
    return rows


def _aligned(rows, fields, fmt):
    cells = [[f for f in fields]] + [[fmt(r[f]) for f in fields] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(fields))]
    return "\n".join("  ".join(c[i].rjust(widths[i]) for i in range(len(fields))) for c in cells)


def _short(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.4g}"
    return str(v)


def cmd_reproduce(args):
    if args.which == "table1":
        rows = table1_rows(seed=args.seed, trials=args.trials, whole_horizon=args.whole_horizon,
                           simulate_cells=not args.theory_only)
        fields = ("family", "n", "seed", "simulated", "stderr", "theory")
    else:
        rows = table2_rows(seed=args.seed)
        fields = ("n", "k", "seed", "h_star_regular", "h_star_complete", "ratio")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow(["" if r[f] is None else _fmt(r[f]) for f in fields])
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    print(_aligned(rows, fields, _short))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="netrobust", description="Structural robustness of noisy consensus networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a graph as an edge list")
    g.add_argument("--family", required=True,
                   choices=("path", "cycle", "star", "complete", "lollipop", "random-regular"))
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="output path, or - for stdout")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="robustness report for an edge-list file")
    a.add_argument("file")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON record (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV header + one row")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("curve", help="approximation bound for random k-regular graphs as CSV")
    c.add_argument("--k-min", type=int, default=3)
    c.add_argument("--k-max", type=int, default=30)
    c.add_argument("--eps", type=float, default=0.0)
    c.set_defaults(func=cmd_curve)

    s = sub.add_parser("simulate", help="Monte Carlo noisy consensus on an edge-list file")
    s.add_argument("file")
    s.add_argument("--dt", type=float)
    s.add_argument("--t-final", type=float)
    s.add_argument("--burn-in", type=float)
    s.add_argument("--trials", type=_positive_int, default=16)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--record-every", type=_positive_int)
    s.add_argument("--whole-horizon", action="store_true",
                   help="average over the whole horizon, including the transient from x(0)=0")
    s.add_argument("--trajectory", help="write 't,mean_variance' CSV here")
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("reproduce", help="regenerate the size-sweep or sparse-design table")
    r.add_argument("which", choices=("table1", "table2"))
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=_positive_int)
    r.add_argument("--whole-horizon", action="store_true")
    r.add_argument("--theory-only", action="store_true", help="table1: skip simulation")
    r.add_argument("--csv", help="also write the table as CSV here")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"netrobust: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DisconnectedGraphError as exc:
        print(f"netrobust: disconnected graph: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except EdgeListParseError as exc:
        print(f"netrobust: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StabilityError as exc:
        print(f"netrobust: {exc}", file=sys.stderr)
        return EXIT_STABILITY
    except NetRobustError as exc:
        print(f"netrobust: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
