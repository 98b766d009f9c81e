"""Command-line interface.

Subcommands: ``compile``, ``simulate``, ``sweep``, ``partition``,
``stats``. Every command is deterministic given its resolved
configuration (including the seed), and every report embeds that
configuration. Flags override values from an optional JSON config file
(``--config``); unset options fall back to the documented defaults.

Exit codes: 0 success, 2 parse error (snapshot/circuit/usage),
3 validation error, 4 capacity error, 5 enumeration-guard error,
6 file/IO error, 1 unexpected failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .allocator import SwapMinimizing, Trivial, Vqa
from .benchmarks import build_benchmark
from .circuit import LogicalCircuit, circuit_stats, parse_qasm
from .compiler import compile_circuit, physical_to_qasm, swap_overhead
from .device import (
    CalibrationSeries,
    CalibrationSnapshot,
    load_series,
    load_snapshot,
    pooled_metric_values,
    scale_error_rates,
    series_statistics,
)
from .errors import (
    CapacityError,
    GuardError,
    QasmError,
    SnapshotParseError,
    ValidationError,
    VariaqError,
)
from .partition import evaluate_partitioning
from .reliability import ErrorModel, analytic_mibf, analytic_pst, monte_carlo
from .router import Baseline, CostModel, Vqm

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CAPACITY = 4
EXIT_GUARD = 5
EXIT_IO = 6

# Default experiment profile: error rates scaled down 10x, one million
# trials, four additional hops, SWAP-expansion cost model.
DEFAULTS = {
    "alloc": "vqa",
    "route": "vqm",
    "mah": 4,
    "cost_model": "cnot3",
    "first_n": 50,
    "trials": 1_000_000,
    "seed": 0,
    "scale": 10.0,
    "include_readout": True,
    "workers": 1,
    "format": "report",
    "bins": 20,
}

SWEEP_COLUMNS = [
    "benchmark", "snapshot_label", "alloc", "route", "mah", "cost_model",
    "first_n", "scale", "include_readout", "trials", "seed",
    "instructions", "original_2q", "inserted_swaps", "swap_cnots",
    "overhead_ratio", "pst_analytic", "pst_mc", "pst_ci95",
    "mibf_analytic", "mibf_mc", "mibf_is_analytic", "metric_class",
]

PARTITION_COLUMNS = [
    "benchmark", "snapshot_label", "stpt_one", "stpt_two", "pst_x", "pst_y",
    "region_x", "region_y", "gain_ratio", "recommendation", "n_partitions",
]

STATS_COLUMNS = ["metric", "field", "lo", "hi", "value"]


def _add_common(parser: argparse.ArgumentParser, *, snapshot=False, series=False,
                circuit=False, policies=False, simulation=False) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--out", help="output path (stdout when omitted)")
    parser.add_argument("--format", choices=["csv", "report"], help="output format")
    parser.add_argument("--plot", action="store_true",
                        help="also render figures next to the output file")
    parser.add_argument("--workers", type=int,
                        help="worker processes for Monte Carlo trials (output-invariant)")
    if snapshot:
        parser.add_argument("--snapshot", help="snapshot document path")
    if series:
        parser.add_argument("--series-dir", dest="series_dir",
                            help="directory of snapshot documents ordered by filename")
    if circuit:
        parser.add_argument("--circuit", help="QASM file or generator spec (gen:NAME)")
    if policies:
        parser.add_argument("--alloc", choices=["trivial", "swapmin", "vqa"])
        parser.add_argument("--route", choices=["baseline", "vqm"])
        parser.add_argument("--mah", type=int)
        parser.add_argument("--cost-model", dest="cost_model", choices=["unit", "cnot3"])
        parser.add_argument("--first-n", dest="first_n", type=int)
        parser.add_argument("--scale", type=float, help="divide all error rates by this factor")
    if simulation:
        parser.add_argument("--trials", type=int)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--include-readout", dest="include_readout",
                            choices=["true", "false"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="variaq",
        description="Variation-aware qubit mapping and reliability estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a circuit onto a snapshot")
    _add_common(p, snapshot=True, circuit=True, policies=True)

    p = sub.add_parser("simulate", help="compile, then estimate PST/MIBF")
    _add_common(p, snapshot=True, circuit=True, policies=True, simulation=True)

    p = sub.add_parser("sweep", help="recompile and evaluate per calibration day")
    _add_common(p, series=True, circuit=True, policies=True, simulation=True)

    p = sub.add_parser("partition", help="two weak copies vs one strong copy")
    _add_common(p, snapshot=True, circuit=True, policies=True, simulation=True)

    p = sub.add_parser("stats", help="calibration distribution statistics")
    _add_common(p, snapshot=True, series=True)
    p.add_argument("--bins", type=int, help="histogram bin count")

    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge CLI flags over the config file over the defaults."""
    config = {}
    if getattr(args, "config", None):
        try:
            config = json.loads(Path(args.config).read_text())
        except json.JSONDecodeError as exc:
            raise SnapshotParseError(f"config file {args.config}: {exc}") from exc
        if not isinstance(config, dict):
            raise SnapshotParseError(f"config file {args.config}: expected a JSON object")

    resolved = {"command": args.command}
    keys = [k for k in vars(args) if k not in ("command", "config", "plot")]
    for key in keys:
        cli_value = getattr(args, key)
        if cli_value is None:
            value = config.get(key, DEFAULTS.get(key))
        else:
            value = cli_value
        if key == "include_readout" and isinstance(value, str):
            value = value == "true"
        resolved[key] = value
    resolved["plot"] = bool(getattr(args, "plot", False))
    return resolved


def load_circuit_spec(spec: str | None) -> LogicalCircuit:
    if not spec:
        raise QasmError("no circuit given (use --circuit PATH or --circuit gen:NAME)")
    if spec.startswith("gen:"):
        try:
            return build_benchmark(spec[4:])
        except ValueError as exc:
            raise QasmError(str(exc)) from exc
    path = Path(spec)
    return parse_qasm(path.read_text(), name=path.stem)


def load_snapshot_spec(path: str | None, scale: float) -> CalibrationSnapshot:
    if not path:
        raise SnapshotParseError("no snapshot given (use --snapshot PATH)")
    snapshot = load_snapshot(Path(path).read_text())
    if scale != 1.0:
        snapshot = scale_error_rates(snapshot, scale)
    return snapshot


def make_policies(config: dict):
    alloc = {
        "trivial": Trivial(),
        "swapmin": SwapMinimizing(),
        "vqa": Vqa(first_n=config["first_n"]),
    }[config["alloc"]]
    cost = CostModel(config["cost_model"])
    route = Baseline() if config["route"] == "baseline" else Vqm(config["mah"], cost)
    return alloc, route


def _json_safe(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def embeddable_config(config: dict) -> dict:
    """The experiment parameters embedded in reports.

    Worker count and figure rendering cannot affect any result, so they
    are kept out of the echo; reports stay byte-identical across
    execution arrangements.
    """
    return {k: v for k, v in config.items() if k not in ("workers", "plot")}


def render_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"


def render_csv(columns: list[str], rows: list[dict], schema: str) -> str:
    buffer = io.StringIO()
    buffer.write(f"# {schema}\n")
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in columns})
    return buffer.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def evaluate(circuit: LogicalCircuit, snapshot: CalibrationSnapshot, config: dict) -> dict:
    """Compile and measure one (circuit, snapshot, policy) combination."""
    row, _ = evaluate_with_physical(circuit, snapshot, config)
    return row


def evaluate_with_physical(
    circuit: LogicalCircuit, snapshot: CalibrationSnapshot, config: dict
):
    alloc, route = make_policies(config)
    physical = compile_circuit(circuit, snapshot, alloc, route)
    model = ErrorModel(include_readout_errors=config["include_readout"])
    stats = monte_carlo(physical, model, config["trials"], config["seed"],
                        workers=config["workers"])
    overhead = swap_overhead(physical)
    original_2q = circuit_stats(circuit).two_qubit
    return {
        "benchmark": circuit.name,
        "snapshot_label": snapshot.label,
        "alloc": config["alloc"],
        "route": config["route"],
        "mah": config["mah"],
        "cost_model": config["cost_model"],
        "first_n": config["first_n"],
        "scale": config["scale"],
        "include_readout": config["include_readout"],
        "trials": stats.trials,
        "seed": stats.seed,
        "instructions": len(physical.instructions),
        "original_2q": original_2q,
        "inserted_swaps": overhead.inserted_swaps,
        "swap_cnots": overhead.inserted_swaps * 3,
        "overhead_ratio": overhead.overhead_ratio,
        "pst_analytic": analytic_pst(physical, model),
        "pst_mc": stats.pst,
        "pst_ci95": stats.pst_ci95,
        "mibf_analytic": _json_safe(analytic_mibf(physical, model)),
        "mibf_mc": _json_safe(stats.mibf),
        "mibf_is_analytic": stats.mibf_is_analytic,
        "metric_class": stats.metric_class,
    }, physical


def cmd_compile(config: dict) -> int:
    circuit = load_circuit_spec(config["circuit"])
    snapshot = load_snapshot_spec(config["snapshot"], config["scale"])
    alloc, route = make_policies(config)
    physical = compile_circuit(circuit, snapshot, alloc, route)
    overhead = swap_overhead(physical)
    report = {
        "schema": "variaq-compile-v1",
        "config": embeddable_config(config),
        "snapshot_label": snapshot.label,
        "benchmark": circuit.name,
        "initial_mapping": list(physical.initial_mapping.forward),
        "final_mapping": list(physical.final_mapping.forward),
        "counters": {
            "logical_instructions": physical.original_count,
            "physical_instructions": len(physical.instructions),
            "inserted_swaps": physical.inserted_swap_count,
            "swap_cnots": physical.inserted_swap_count * 3,
            "overhead_ratio": overhead.overhead_ratio,
        },
        "instructions": [
            {
                "kind": ins.kind,
                "qubits": list(ins.qubits),
                "origin": ins.origin,
                "failure_prob": ins.failure_prob,
                "gate": ins.gate,
                "params": ins.params,
                "cbit": ins.cbit,
            }
            for ins in physical.instructions
        ],
    }
    qasm = physical_to_qasm(physical)
    if config["out"]:
        emit(qasm, config["out"])
        emit(render_report(report), str(Path(config["out"]).with_suffix(".report.json")))
    else:
        sys.stdout.write(qasm)
    return EXIT_OK


def cmd_simulate(config: dict) -> int:
    circuit = load_circuit_spec(config["circuit"])
    snapshot = load_snapshot_spec(config["snapshot"], config["scale"])
    row, physical = evaluate_with_physical(circuit, snapshot, config)
    if config["format"] == "csv":
        emit(render_csv(SWEEP_COLUMNS, [row], "variaq-sweep-v1"), config["out"])
    else:
        emit(
            render_report(
                {
                    "schema": "variaq-simulate-v1",
                    "config": embeddable_config(config),
                    "result": row,
                }
            ),
            config["out"],
        )
    if config["plot"] and config["out"]:
        from .plotting import plot_failure_profile

        model = ErrorModel(include_readout_errors=config["include_readout"])
        plot_failure_profile(
            [model.failure_prob(ins) for ins in physical.instructions],
            [ins.origin for ins in physical.instructions],
            row,
            Path(config["out"]).with_suffix(".png"),
        )
    return EXIT_OK


def cmd_sweep(config: dict) -> int:
    if not config["series_dir"]:
        raise SnapshotParseError("no series given (use --series-dir PATH)")
    circuit = load_circuit_spec(config["circuit"])
    series = load_series(config["series_dir"])
    rows = []
    for snapshot in series:
        scaled = (
            scale_error_rates(snapshot, config["scale"]) if config["scale"] != 1.0 else snapshot
        )
        for route_name in ("baseline", "vqm"):
            day_config = dict(config, route=route_name)
            rows.append(evaluate(circuit, scaled, day_config))
    rows.sort(key=lambda r: (r["snapshot_label"], r["route"]))
    text = render_csv(SWEEP_COLUMNS, rows, "variaq-sweep-v1")
    emit(text, config["out"])
    if config["plot"] and config["out"]:
        from .plotting import plot_sweep

        plot_sweep(rows, Path(config["out"]).with_suffix(".png"))
    return EXIT_OK


def cmd_partition(config: dict) -> int:
    circuit = load_circuit_spec(config["circuit"])
    snapshot = load_snapshot_spec(config["snapshot"], config["scale"])
    alloc, route = make_policies(config)
    model = ErrorModel(include_readout_errors=config["include_readout"])
    report = evaluate_partitioning(circuit, snapshot, alloc, route, model)
    doc = {
        "benchmark": circuit.name,
        "snapshot_label": snapshot.label,
        "stpt_one": report.stpt_one,
        "stpt_two": report.stpt_two,
        "pst_x": report.plan.pst_x,
        "pst_y": report.plan.pst_y,
        "region_x": "-".join(map(str, report.plan.region_x)),
        "region_y": "-".join(map(str, report.plan.region_y)),
        "gain_ratio": _json_safe(report.gain_ratio),
        "recommendation": report.recommendation,
        "n_partitions": report.n_partitions,
    }
    if config["format"] == "csv":
        emit(render_csv(PARTITION_COLUMNS, [doc], "variaq-partition-v1"), config["out"])
    else:
        emit(
            render_report(
                {
                    "schema": "variaq-partition-v1",
                    "config": embeddable_config(config),
                    "result": dict(doc, full_device_pst=report.full_device_pst),
                }
            ),
            config["out"],
        )
    if config["plot"] and config["out"]:
        from .plotting import plot_partition

        plot_partition(doc, Path(config["out"]).with_suffix(".png"))
    return EXIT_OK


def cmd_stats(config: dict) -> int:
    import numpy as np

    if config.get("series_dir"):
        series = load_series(config["series_dir"])
    elif config.get("snapshot"):
        series = CalibrationSeries((load_snapshot(Path(config["snapshot"]).read_text()),))
    else:
        raise SnapshotParseError("stats needs --series-dir or --snapshot")
    stats = series_statistics(series)
    pools = pooled_metric_values(series)
    rows: list[dict] = []
    for metric in sorted(stats):
        s = stats[metric]
        for field in ("mean", "std", "min", "max"):
            rows.append({"metric": metric, "field": field, "lo": "", "hi": "",
                         "value": getattr(s, field)})
        counts, edges = np.histogram(pools[metric], bins=config["bins"])
        for i, count in enumerate(counts):
            rows.append({"metric": metric, "field": f"bin_{i:02d}",
                         "lo": float(edges[i]), "hi": float(edges[i + 1]),
                         "value": int(count)})
    emit(render_csv(STATS_COLUMNS, rows, "variaq-stats-v1"), config["out"])
    if config["plot"] and config["out"]:
        from .plotting import plot_metric_histograms

        prefix = Path(config["out"]).with_suffix("")
        plot_metric_histograms(pools, prefix, bins=config["bins"])
    return EXIT_OK


COMMANDS = {
    "compile": cmd_compile,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "partition": cmd_partition,
    "stats": cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        return COMMANDS[args.command](config)
    except (SnapshotParseError, QasmError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (VariaqError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
