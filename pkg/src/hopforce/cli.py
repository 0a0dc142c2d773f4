"""Command-line surface: generate graphs, run simulations, exact solves,
spectral and analytic bounds, the ODE solver, and figure/table data.

Exit codes: 0 success, 2 configuration error, 3 instance too large,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds as _bounds
from . import engine, exact, graph, spectral
from .desolver import OdeStepFailure, solve
from .experiments import (ConfigError, ExperimentConfig, figure_data,
                          rows_to_csv, run_trials, table1_report)
from .models import (pairing_to_graph, sample_contiguous, sample_pairing,
                     trial_rng)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master random seed")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="parallel workers for independent trials")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _cmd_gen(args) -> None:
    rng = trial_rng(args.seed, 0)
    if args.model == "contiguous":
        cg = sample_contiguous(args.n, args.d, rng)
        comment = "# hamilton: " + " ".join(str(v) for v in cg.hamilton_order)
        text = graph.write_edge_list(cg.base, extra_comments=(comment,))
    else:
        g = pairing_to_graph(sample_pairing(args.n, args.d, rng))
        text = graph.write_edge_list(g)
    _write(text, args.out)


def _cmd_simulate(args) -> None:
    cfg = ExperimentConfig(
        strategy=args.strategy, d=args.d, n=args.n, trials=args.trials,
        master_seed=args.seed, jobs=args.jobs,
    )
    rows = run_trials(cfg)
    columns = [c for c in rows[0] if c != "statistic"]
    if args.format == "json":
        payload = [{c: r[c] for c in columns} for r in rows]
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write(rows_to_csv(rows, columns), args.out)
    if args.emit_trace:
        _emit_first_trace(cfg, args.emit_trace)


def _emit_first_trace(cfg: ExperimentConfig, path: str) -> None:
    from .strategies import degree_greedy_strategy, hamilton_hop_strategy

    rng = trial_rng(cfg.master_seed, 0)
    if cfg.strategy == "hamilton":
        res = hamilton_hop_strategy(sample_contiguous(cfg.n, cfg.d, rng))
    elif cfg.strategy == "greedy":
        res, _ = degree_greedy_strategy(cfg.n, rng, record_every=cfg.n + 1)
    else:
        raise ConfigError("--emit-trace applies to the hamilton/greedy strategies")
    with open(path, "w", newline="") as f:
        f.write(engine.trace_to_json(res.b1, res.hops))


def _load_graph(path: str) -> graph.RegularGraph:
    with open(path) as f:
        return graph.read_edge_list(f.read())


def _cmd_exact(args) -> None:
    g = _load_graph(args.graph)
    h, b1 = exact.optimal_set(g)
    if args.format == "json":
        _write(json.dumps({"hopping_number": h, "b1": sorted(b1)}) + "\n", args.out)
    else:
        _write(f"H = {h}\nB1 = {' '.join(str(v) for v in sorted(b1))}\n", args.out)


def _cmd_spectral(args) -> None:
    g = _load_graph(args.graph)
    summary = spectral.lambda_of(g)
    frac = _bounds.eml_fraction(g.d, min(summary.lambda_, g.d))
    if args.format == "json":
        _write(json.dumps({"lambda": summary.lambda_,
                           "eml_fraction": frac}) + "\n", args.out)
    else:
        _write(f"lambda = {summary.lambda_:.6g}\n"
               f"eml_fraction = {frac:.6g}\n", args.out)


def _report_rows(reports):
    return [
        {"d": r.d, "eml": r.eml_fraction, "config": r.config_fraction,
         "upper_rational": _bounds.rational_str(r.upper_rational),
         "upper_float": r.upper_float}
        for r in reports
    ]


def _emit_reports(reports, args) -> None:
    rows = _report_rows(reports)
    if args.format == "json":
        _write(json.dumps(rows, indent=2) + "\n", args.out)
    else:
        _write(rows_to_csv(
            rows, ["d", "eml", "config", "upper_rational", "upper_float"]),
            args.out)


def _cmd_bounds(args) -> None:
    if args.all_table1:
        _emit_reports(table1_report(), args)
    else:
        if args.d is None:
            raise ConfigError("give --d or --all-table1")
        _emit_reports([_bounds.bound_report(args.d)], args)


def _cmd_table1(args) -> None:
    _emit_reports(table1_report(), args)


def _cmd_ode(args) -> None:
    if args.d != 3:
        raise ConfigError("the drift tables are defined for d = 3 only")
    sol = solve(step=args.step)
    if args.emit_trajectory:
        rows = [
            {"x": x, "y0": y0, "y1": y1, "y2": y2, "y3": y3, "hopped": h}
            for x, (y0, y1, y2, y3), h in zip(sol.xs, sol.ys, sol.hopped)
        ]
        with open(args.emit_trajectory, "w", newline="") as f:
            f.write(rows_to_csv(rows, ["x", "y0", "y1", "y2", "y3", "hopped"]))
    if args.format == "json":
        _write(json.dumps({
            "x_hat": sol.x_hat, "hop_fraction": sol.hop_fraction,
            "implied_bound": sol.implied_bound,
            "termination": sol.termination,
            "halfstep_gap": sol.halfstep_gap,
        }) + "\n", args.out)
    else:
        _write(f"x_hat = {sol.x_hat:.6g}\n"
               f"hop_fraction = {sol.hop_fraction:.6g}\n"
               f"implied_bound = {sol.implied_bound:.6g}\n", args.out)


def _cmd_figure(args) -> None:
    _write(figure_data(args.which), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopforce",
        description="Hopping forcing on random regular graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a random regular graph")
    p.add_argument("--model", choices=("config", "contiguous"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("simulate", help="Monte Carlo strategy runs")
    p.add_argument("--strategy", choices=("hamilton", "greedy", "cycles"),
                   required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--emit-trace", default=None,
                   help="write the first trial's trace as JSON to this path")
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("exact", help="exact hopping number of a small graph")
    p.add_argument("--graph", required=True, help="edge-list file")
    _add_common(p)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("spectral", help="lambda and the spectral bound")
    p.add_argument("--graph", required=True, help="edge-list file")
    _add_common(p)
    p.set_defaults(func=_cmd_spectral)

    p = sub.add_parser("bounds", help="bound fractions for one degree")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--all-table1", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("table1", help="bound fractions for the standard degrees")
    _add_common(p)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("ode", help="degree-greedy ODE termination point")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--step", type=float, default=1e-6)
    p.add_argument("--emit-trajectory", default=None, metavar="FILE.csv")
    _add_common(p)
    p.set_defaults(func=_cmd_ode)

    p = sub.add_parser("figure", help="plottable CSV data")
    p.add_argument("--which", choices=("bounds-curve", "ode-trajectory"),
                   required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except exact.InstanceTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (AssertionError, OdeStepFailure, _bounds.BracketNotFound,
            _bounds.InvariantViolation) as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
