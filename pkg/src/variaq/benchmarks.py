"""Benchmark circuit generators.

The original micro-benchmark files are not distributable, so the repo
ships generated stand-ins: a textbook QFT, a Trotterized nearest-neighbor
Ising pattern, and seeded random circuits with per-benchmark gate-mix
profiles. Each named benchmark is sized to its published total
instruction count (measurement of every program qubit included); where a
structured pattern overshoots the target, the gate body is truncated at
the target, which is recorded here rather than hidden.
"""

from __future__ import annotations

import numpy as np

from .circuit import (
    Instruction,
    LogicalCircuit,
    Measurement,
    OneQubitGate,
    TwoQubitGate,
)

__all__ = ["BENCHMARK_SIZES", "benchmark_names", "build_benchmark", "qft", "ising"]

#: name -> (program qubits, total instructions including measures)
BENCHMARK_SIZES = {
    "alu-20": (20, 173),
    "ising-16": (16, 790),
    "ising-20": (20, 790),
    "qft-16": (16, 512),
    "qft-20": (20, 512),
    "cnt35-16": (16, 384),
    "rd84-20": (20, 1000),
    "gse-14": (14, 39_000),
    "inc-16": (16, 10_000),
    "dist-16": (16, 38_000),
    "sqrt-13": (13, 7_000),
    "rnd2-20": (20, 28_000),
}

_ONE_QUBIT_POOL = ("h", "x", "y", "z", "s", "t", "rx", "ry", "rz")
_PARAMETRIC = {"rx", "ry", "rz"}


def benchmark_names() -> list[str]:
    return sorted(BENCHMARK_SIZES)


def _measure_all(n: int) -> list[Instruction]:
    return [Measurement(q, q) for q in range(n)]


def _sized(name: str, n: int, body: list[Instruction], total: int) -> LogicalCircuit:
    gates = total - n
    if gates < 0:
        raise ValueError(f"{name}: target {total} smaller than the measurement tail")
    if len(body) < gates:
        raise ValueError(f"{name}: body has {len(body)} gates, target needs {gates}")
    instructions = tuple(body[:gates] + _measure_all(n))
    return LogicalCircuit(name=name, num_qubits=n, num_cbits=n, instructions=instructions)


def _qft_body(n: int) -> list[Instruction]:
    # Controlled-phase blocks as 2 CNOTs + 2 phase rotations.
    body: list[Instruction] = []
    for i in range(n):
        body.append(OneQubitGate("h", i))
        for j in range(i + 1, n):
            half = 2 ** (j - i + 1)
            body.append(OneQubitGate("u1", j, f"pi/{half}"))
            body.append(TwoQubitGate(j, i))
            body.append(OneQubitGate("u1", i, f"-pi/{half}"))
            body.append(TwoQubitGate(j, i))
    return body


def qft(n: int, total: int | None = None, name: str | None = None) -> LogicalCircuit:
    """Quantum Fourier transform over ``n`` qubits, measured at the end."""
    body = _qft_body(n)
    total = total if total is not None else len(body) + n
    return _sized(name or f"qft-{n}", n, body, total)


def _ising_body(n: int, steps: int) -> list[Instruction]:
    body: list[Instruction] = []
    for _ in range(steps):
        for q in range(n):
            body.append(OneQubitGate("rx", q, "0.3"))
        for q in range(n - 1):
            body.append(TwoQubitGate(q, q + 1))
            body.append(OneQubitGate("rz", q + 1, "0.7"))
            body.append(TwoQubitGate(q, q + 1))
    return body


def ising(
    n: int, steps: int = 10, total: int | None = None, name: str | None = None
) -> LogicalCircuit:
    """Trotterized transverse-field Ising chain: per step, an rx layer
    plus a ZZ block (CNOT, rz, CNOT) on every neighboring pair."""
    body = _ising_body(n, steps)
    total = total if total is not None else len(body) + n
    return _sized(name or f"ising-{n}", n, body, total)


def _random_1q(rng: np.random.Generator, q: int) -> OneQubitGate:
    gate = _ONE_QUBIT_POOL[int(rng.integers(len(_ONE_QUBIT_POOL)))]
    if gate in _PARAMETRIC:
        return OneQubitGate(gate, q, f"{rng.uniform(0.0, 6.2832):.4f}")
    return OneQubitGate(gate, q)


def _random_pair(rng: np.random.Generator, n: int) -> tuple[int, int]:
    a = int(rng.integers(n))
    b = int(rng.integers(n - 1))
    if b >= a:
        b += 1
    return a, b


def _random_body(
    rng: np.random.Generator, n: int, gates: int, cx_fraction: float
) -> list[Instruction]:
    body: list[Instruction] = []
    for _ in range(gates):
        if rng.random() < cx_fraction:
            body.append(TwoQubitGate(*_random_pair(rng, n)))
        else:
            body.append(_random_1q(rng, int(rng.integers(n))))
    return body


def _cx_chain(rng: np.random.Generator, n: int, gates: int) -> list[Instruction]:
    # Random walk of CNOTs: each gate chains off the previous target.
    body: list[Instruction] = []
    current = int(rng.integers(n))
    for _ in range(gates):
        nxt = int(rng.integers(n - 1))
        if nxt >= current:
            nxt += 1
        body.append(TwoQubitGate(current, nxt))
        current = nxt
    return body


def _random_benchmark(name: str, n: int, total: int, seed: int, cx_fraction: float) -> LogicalCircuit:
    rng = np.random.default_rng(seed)
    return _sized(name, n, _random_body(rng, n, total - n, cx_fraction), total)


def _gse(name: str, n: int, total: int, seed: int) -> LogicalCircuit:
    # Opens with a random CNOT chain before settling into the mixed body.
    rng = np.random.default_rng(seed)
    gates = total - n
    chain = max(1, gates // 20)
    body = _cx_chain(rng, n, chain) + _random_body(rng, n, gates - chain, 0.3)
    return _sized(name, n, body, total)


def _rnd2(name: str, n: int, total: int, seed: int) -> LogicalCircuit:
    # A few long-range CNOTs up front, then a 1q-dominated stream.
    rng = np.random.default_rng(seed)
    gates = total - n
    prefix = min(60, gates)
    body = [TwoQubitGate(*_random_pair(rng, n)) for _ in range(prefix)]
    body += _random_body(rng, n, gates - prefix, 0.05)
    return _sized(name, n, body, total)


_BUILDERS = {
    "alu-20": lambda: _random_benchmark("alu-20", 20, 173, seed=401, cx_fraction=0.45),
    "ising-16": lambda: ising(16, steps=13, total=790),
    "ising-20": lambda: ising(20, steps=10, total=790),
    "qft-16": lambda: qft(16, total=512),
    "qft-20": lambda: qft(20, total=512),
    "cnt35-16": lambda: _random_benchmark("cnt35-16", 16, 384, seed=402, cx_fraction=0.35),
    "rd84-20": lambda: _random_benchmark("rd84-20", 20, 1000, seed=403, cx_fraction=0.35),
    "gse-14": lambda: _gse("gse-14", 14, 39_000, seed=404),
    "inc-16": lambda: _random_benchmark("inc-16", 16, 10_000, seed=405, cx_fraction=0.4),
    "dist-16": lambda: _random_benchmark("dist-16", 16, 38_000, seed=406, cx_fraction=0.4),
    "sqrt-13": lambda: _random_benchmark("sqrt-13", 13, 7_000, seed=407, cx_fraction=0.4),
    "rnd2-20": lambda: _rnd2("rnd2-20", 20, 28_000, seed=408),
}


def build_benchmark(spec: str) -> LogicalCircuit:
    """Build a benchmark from a name or a generator spec.

    Accepted forms: a registered name (``ising-20``), ``qft:N``,
    ``ising:N[:STEPS]``, or ``random:N:GATES[:SEED]``.
    """
    builder = _BUILDERS.get(spec)
    if builder is not None:
        return builder()
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "qft" and len(parts) == 2:
            return qft(int(parts[1]))
        if kind == "ising" and len(parts) in (2, 3):
            steps = int(parts[2]) if len(parts) == 3 else 10
            return ising(int(parts[1]), steps=steps)
        if kind == "random" and len(parts) in (3, 4):
            n, gates = int(parts[1]), int(parts[2])
            seed = int(parts[3]) if len(parts) == 4 else 0
            return _random_benchmark(f"random-{n}x{gates}", n, gates + n, seed, 0.35)
    except ValueError as exc:
        raise ValueError(f"bad benchmark spec {spec!r}: {exc}") from exc
    raise ValueError(
        f"unknown benchmark {spec!r}; known names: {', '.join(benchmark_names())}"
    )
