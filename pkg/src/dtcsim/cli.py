"""Command-line interface.

    dtcsim run --scenario noload.scn [--out results/] [--no-plots]
    dtcsim compare --scenario noload.scn [--out results/] [--no-plots]
    dtcsim sweep --scenario noload.scn --param control.torque_band \\
                 --values 0.25,0.5,1.0 [--out results/]

Exit status 0 on success, 1 on configuration errors, 2 on plant
divergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness, metrics
from .scenario import (ScenarioError, load_scenario, scenario_from_dict,
                       scenario_to_dict, set_by_path)


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="dtcsim",
        description="Induction-motor DTC simulator with fuzzy flux optimizer")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--scenario", required=True, help="scenario file (YAML)")
        p.add_argument("--out", default="results", help="output directory")
        p.add_argument("--no-plots", action="store_true",
                       help="skip figure rendering")

    run_p = sub.add_parser("run", help="run one scenario")
    common(run_p)
    cmp_p = sub.add_parser(
        "compare", help="run both controllers on one scenario and compare")
    common(cmp_p)
    sweep_p = sub.add_parser("sweep", help="batch-run a parameter sweep")
    common(sweep_p)
    sweep_p.add_argument("--param", required=True,
                         help="dotted scenario path, e.g. control.torque_band")
    sweep_p.add_argument("--values", required=True,
                         help="comma-separated values")
    return parser.parse_args(argv)


def _run_one(sc, out: Path, make_plots: bool) -> metrics.RippleReport:
    telemetry, rep = harness.run(sc)
    stem = f"{sc.name}_{sc.controller}"
    telemetry.write_csv(out / f"{stem}.csv")
    (out / f"{stem}_report.txt").write_text(harness.report_text(rep) + "\n")
    if make_plots:
        from . import plots
        plots.render_run(telemetry, out / f"{stem}.png",
                         title=f"{sc.name} ({sc.controller})")
    return rep


def cmd_run(args) -> int:
    sc = load_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rep = _run_one(sc, out, not args.no_plots)
    print(harness.report_text(rep))
    return 0


def cmd_compare(args) -> int:
    sc = load_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    tel = {}
    reps = {}
    for controller in ("conventional", "fuzzy"):
        sub = sc.with_controller(controller)
        tel[controller], reps[controller] = harness.run(sub)
        tel[controller].write_csv(out / f"{sc.name}_{controller}.csv")
    text = metrics.compare(reps["conventional"], reps["fuzzy"])
    (out / f"{sc.name}_compare.txt").write_text(text + "\n")
    if not args.no_plots:
        from . import plots
        plots.render_comparison(tel["conventional"], tel["fuzzy"],
                                ("conventional", "fuzzy"),
                                out / f"{sc.name}_compare.png",
                                title=sc.name)
    print(text)
    return 0


def cmd_sweep(args) -> int:
    base = load_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    if not values:
        raise ScenarioError("--values is empty")
    lines = []
    for raw in values:
        try:
            value: object = float(raw)
        except ValueError:
            value = raw
        doc = scenario_to_dict(base)
        set_by_path(doc, args.param, value)
        doc["name"] = f"{base.name}_{args.param.replace('.', '_')}_{raw}"
        sc = scenario_from_dict(doc)
        rep = _run_one(sc, out, not args.no_plots)
        lines.append(f"{args.param}={raw}: torque_ripple_rms="
                     f"{rep.torque_ripple_rms:.6g} N m, speed_ripple_rms="
                     f"{rep.speed_ripple_rms:.6g} rpm, flux_mean="
                     f"{rep.flux_mean:.6g} Wb")
    summary = "\n".join(lines)
    (out / f"{base.name}_sweep.txt").write_text(summary + "\n")
    print(summary)
    return 0


def main(argv=None) -> int:
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "compare":
            return cmd_compare(args)
        return cmd_sweep(args)
    except (ScenarioError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except harness.SimulationDiverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
