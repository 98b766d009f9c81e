from __future__ import annotations

import numpy as np
import pytest

from variaq.assets import bundled_snapshot
from variaq.circuit import LogicalCircuit, Measurement, OneQubitGate, TwoQubitGate
from variaq.device import CalibrationSnapshot, CouplingLink, QubitCalibration, build_snapshot


def make_snapshot(edges, n=None, q1=0.001, readout=0.02, t1=80.0, t2=40.0,
                  name="device", label="test") -> CalibrationSnapshot:
    """Snapshot from (u, v, error) triples with uniform qubit calibrations."""
    if n is None:
        n = 1 + max(max(u, v) for u, v, _ in edges)
    qubits = [QubitCalibration(i, q1, readout, t1, t2) for i in range(n)]
    links = [CouplingLink(u, v, e) for u, v, e in edges]
    return build_snapshot(name, label, qubits, links)


def random_connected_snapshot(rng: np.random.Generator, n: int,
                              max_error=0.3, extra_edge_prob=0.3) -> CalibrationSnapshot:
    """Random spanning tree plus extra edges; link errors in [0, max_error)."""
    edges = set()
    order = list(rng.permutation(n))
    for i in range(1, n):
        a = order[i]
        b = order[int(rng.integers(i))]
        edges.add((min(a, b), max(a, b)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges.add((u, v))
    triples = [(u, v, float(rng.uniform(0.0, max_error))) for u, v in sorted(edges)]
    return make_snapshot(triples, n=n)


def random_circuit(rng: np.random.Generator, n: int, n_instructions: int,
                   cx_fraction=0.5, measure_tail=True) -> LogicalCircuit:
    body = []
    gates = n_instructions - (n if measure_tail else 0)
    for _ in range(gates):
        if n >= 2 and rng.random() < cx_fraction:
            a = int(rng.integers(n))
            b = int(rng.integers(n - 1))
            if b >= a:
                b += 1
            body.append(TwoQubitGate(a, b))
        else:
            body.append(OneQubitGate("h", int(rng.integers(n))))
    if measure_tail:
        body += [Measurement(q, q) for q in range(n)]
    return LogicalCircuit("fuzz", n, n if measure_tail else 0, tuple(body))


@pytest.fixture(scope="session")
def ring5():
    return bundled_snapshot("ring5")


@pytest.fixture(scope="session")
def grid6_routing():
    return bundled_snapshot("grid6_routing")


@pytest.fixture(scope="session")
def grid6_allocation():
    return bundled_snapshot("grid6_allocation")


@pytest.fixture(scope="session")
def mesh6_partition():
    return bundled_snapshot("mesh6_partition")


@pytest.fixture(scope="session")
def q20():
    return bundled_snapshot("q20_synthetic")
