"""Command-line entry point: scenarios to CSV, plus a figure report.

Exit codes: 0 success, 2 configuration problem, 3 numerical failure.
"""

import argparse
import csv
import sys
from pathlib import Path

from . import config, plots, scenarios
from ._linalg import StationarySolveError
from .chain import ChainError
from .mobility import MobilityError
from .multirelay import MultiRelayError
from .phy import PhyError
from .simulator import SimulationError

EXIT_CONFIG = 2
EXIT_NUMERIC = 3

CONFIG_ERRORS = (config.ConfigError, MobilityError, PhyError, ChainError,
                 MultiRelayError, SimulationError)

SCENARIO_COMMANDS = {
    "per": scenarios.rows_per,
    "steady": scenarios.rows_steady,
    "curve": scenarios.rows_curve,
    "stationary-position": scenarios.rows_stationary_position,
    "stationary-sweep": scenarios.rows_stationary_sweep,
    "timeshare": scenarios.rows_timeshare,
    "sleep": scenarios.rows_sleep,
    "multirelay": scenarios.rows_multirelay,
    "simulate": scenarios.rows_simulate,
}


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(rows, out):
    """Write rows with a header; full-precision decimal floats, LF endings."""
    writer = csv.writer(out, lineterminator="\n")
    if not rows:
        return
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in header])


def _emit(rows, out_path):
    if out_path is None:
        write_csv(rows, sys.stdout)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="relaylink",
        description="Steady-state and Monte Carlo analysis of a two-hop "
                    "wireless link with a randomly walking relay.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **extra):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH",
                       help="JSON config file (defaults apply otherwise)")
        p.add_argument("--set", metavar="KEY=VALUE", action="append",
                       default=[], dest="overrides",
                       help="override one config key (repeatable)")
        p.add_argument("--seed", type=int, help="override the RNG seed")
        p.add_argument("--out", metavar="PATH", help="CSV output file "
                       "(default: standard output)")
        p.add_argument("--dump-config", action="store_true",
                       help="print the effective config as JSON and exit")
        return p

    p = add("walk", "relay walk kernel or its stationary law")
    p.add_argument("--what", choices=("kernel", "stationary"),
                   default="kernel")
    add("per", "hop packet error rates over the energy sweep")
    add("steady", "stationary metrics at one operating point")
    add("curve", "energy-throughput curves over speeds and energies")
    add("stationary-position", "frozen relay, metrics per position")
    add("stationary-sweep", "frozen-relay energy sweeps (midpoint, random)")
    add("timeshare", "two-level time sharing over a q grid")
    add("sleep", "sleep mode over a p_sleep grid")
    add("multirelay", "delay distribution and multi-relay delivery")
    add("simulate", "Monte Carlo replication vs analytical values")
    add("validate", "check config invariants and report violations")
    p = add("report", "run every figure scenario; write CSVs and images")
    p.add_argument("--out-dir", metavar="DIR", default="report",
                   help="output directory (default: report)")
    return parser


def run_report(cfg, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [
        ("tradeoff_curves", scenarios.rows_curve, plots.plot_curve),
        ("stationary_position", scenarios.rows_stationary_position,
         plots.plot_stationary_position),
        ("stationary_sweep", scenarios.rows_stationary_sweep,
         plots.plot_stationary_sweep),
        ("timeshare", scenarios.rows_timeshare, None),
        ("sleep", scenarios.rows_sleep, plots.plot_sleep),
        ("multirelay", scenarios.rows_multirelay, plots.plot_multirelay),
    ]
    produced = []
    cache = {}
    for name, fn, plot in jobs:
        rows = fn(cfg)
        cache[name] = rows
        csv_path = out / f"{name}.csv"
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
        produced.append(csv_path)
        if plot is not None:
            png = out / f"{name}.png"
            plot(rows, png)
            produced.append(png)
    # time-share figures need the single-level sweep as a baseline
    png = out / "timeshare.png"
    plots.plot_timeshare(cache["timeshare"], png, baseline=cache["tradeoff_curves"])
    produced.append(png)
    png = out / "timeshare_delays.png"
    plots.plot_timeshare_delays(cache["timeshare"], png)
    produced.append(png)
    for path in produced:
        print(path)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, matching the config exit code
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG

    try:
        overrides = dict(config.parse_override(p) for p in args.overrides)
        cfg = config.load_config(args.config, overrides)
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.dump_config:
            sys.stdout.write(config.dump_config(cfg))
            return 0

        if args.command == "validate":
            diagnostics = config.validate(cfg)
            for line in diagnostics:
                print(line)
            return EXIT_CONFIG if diagnostics else 0

        diagnostics = config.validate(cfg)
        if diagnostics:
            for line in diagnostics:
                print(line, file=sys.stderr)
            return EXIT_CONFIG

        if args.command == "report":
            return run_report(cfg, args.out_dir)
        if args.command == "walk":
            rows = scenarios.rows_walk(cfg, what=args.what)
        else:
            rows = SCENARIO_COMMANDS[args.command](cfg)
        _emit(rows, args.out)
        return 0
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (StationarySolveError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
