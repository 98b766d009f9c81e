#!/usr/bin/env python3
"""Regenerate the bundled snapshots, series, and benchmark files.

Run from the repo root after changing fixture definitions:

    python scripts/make_data.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from variaq.benchmarks import benchmark_names, build_benchmark
from variaq.circuit import serialize_qasm
from variaq.device import CouplingLink, QubitCalibration, build_snapshot, save_snapshot
from variaq.synthetic import build_q20_snapshot, generate_synthetic_series

DATA = Path(__file__).resolve().parents[1] / "src" / "variaq" / "data"

# Small benchmarks are committed as files; the long non-terminating ones
# stay generator-only (tens of thousands of lines each).
BUNDLED_BENCHMARKS = ["alu-20", "ising-16", "ising-20", "qft-16", "qft-20", "cnt35-16", "rd84-20"]


def default_qubits(n, q1=0.001, ro=0.02, t1=80.0, t2=40.0):
    return [QubitCalibration(i, q1, ro, t1, t2) for i in range(n)]


def links(triples):
    return [CouplingLink(u, v, e) for u, v, e in triples]


def make_snapshots() -> None:
    out = DATA / "snapshots"
    out.mkdir(parents=True, exist_ok=True)

    # 5-qubit ring; a weak two-hop side (0.42) against a strong
    # three-hop detour (0.567).
    ring5 = build_snapshot(
        "ring5",
        "routing-demo",
        default_qubits(5),
        links([(0, 1, 0.4), (1, 2, 0.3), (2, 3, 0.3), (3, 4, 0.1), (4, 0, 0.1)]),
    )
    save_snapshot(ring5, out / "ring5.json")

    # 2x3 grid (A..F = 0..5 row-major) plus the C-D diagonal; three
    # 3-hop corner-to-corner routes with one clear winner (0-3-2-5).
    grid_topology = [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5), (2, 3)]
    routing_errors = {(0, 1): 0.3, (1, 2): 0.3, (3, 4): 0.4, (4, 5): 0.4,
                      (0, 3): 0.1, (1, 4): 0.5, (2, 5): 0.1, (2, 3): 0.1}
    save_snapshot(
        build_snapshot(
            "grid6", "routing-demo", default_qubits(6),
            links([(u, v, routing_errors[(u, v)]) for u, v in grid_topology]),
        ),
        out / "grid6_routing.json",
    )

    # Same topology, weighted for the allocation example: qubit 3 has
    # incident link successes 0.8/0.7/0.9 (strength 2.4), the 2-3 link
    # is the unique best and 3-4 the unique worst.
    allocation_errors = {(0, 1): 0.25, (1, 2): 0.22, (3, 4): 0.3, (4, 5): 0.2,
                         (0, 3): 0.2, (1, 4): 0.28, (2, 5): 0.15, (2, 3): 0.1}
    save_snapshot(
        build_snapshot(
            "grid6", "allocation-demo", default_qubits(6),
            links([(u, v, allocation_errors[(u, v)]) for u, v in grid_topology]),
        ),
        out / "grid6_allocation.json",
    )

    # 3x2 mesh (A0 B1 / C2 D3 / E4 F5) for the partition case study.
    # Column regions give copy PSTs 0.32 and 0.12 on a two-CNOT chain;
    # the strongest link (2-3) is unusable by any two-copy split.
    save_snapshot(
        build_snapshot(
            "mesh6",
            "partition-demo",
            [QubitCalibration(i, 0.0, 0.0, 80.0, 40.0) for i in range(6)],
            links([(0, 1, 0.65), (2, 3, 0.1), (4, 5, 0.7),
                   (0, 2, 0.2), (2, 4, 0.6), (1, 3, 0.6), (3, 5, 0.7)]),
        ),
        out / "mesh6_partition.json",
    )

    save_snapshot(build_q20_snapshot(), out / "q20_synthetic.json")


def make_series() -> None:
    out = DATA / "series" / "q20_week"
    out.mkdir(parents=True, exist_ok=True)
    # Seed picked so the pooled week statistics sit close to the
    # published distribution summaries.
    series = generate_synthetic_series(build_q20_snapshot(), days=7, seed=54)
    for i, snap in enumerate(series, start=1):
        save_snapshot(snap, out / f"day{i:02d}.json")


def make_benchmarks() -> None:
    out = DATA / "benchmarks"
    out.mkdir(parents=True, exist_ok=True)
    for name in BUNDLED_BENCHMARKS:
        (out / f"{name}.qasm").write_text(serialize_qasm(build_benchmark(name)))
    (out / "chain3.qasm").write_text(
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\ncx q[0],q[1];\ncx q[1],q[2];\n'
    )


if __name__ == "__main__":
    make_snapshots()
    make_series()
    make_benchmarks()
    print(f"wrote bundled data under {DATA}")
    unused = set(BUNDLED_BENCHMARKS) - set(benchmark_names())
    if unused:
        raise SystemExit(f"unknown benchmark names: {unused}")
