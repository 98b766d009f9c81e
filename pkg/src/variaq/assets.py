"""Access to the data files bundled with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .circuit import LogicalCircuit, parse_qasm
from .device import CalibrationSeries, CalibrationSnapshot, load_series, load_snapshot


def _data_root() -> Path:
    return Path(str(resources.files("variaq"))) / "data"


def snapshot_path(name: str) -> Path:
    return _data_root() / "snapshots" / f"{name}.json"


def series_dir(name: str) -> Path:
    return _data_root() / "series" / name


def benchmark_path(name: str) -> Path:
    return _data_root() / "benchmarks" / f"{name}.qasm"


def bundled_snapshot(name: str) -> CalibrationSnapshot:
    return load_snapshot(snapshot_path(name).read_text())


def bundled_series(name: str) -> CalibrationSeries:
    return load_series(series_dir(name))


def bundled_benchmark(name: str) -> LogicalCircuit:
    return parse_qasm(benchmark_path(name).read_text(), name=name)
