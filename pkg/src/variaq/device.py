"""Device topology and calibration data.

A device is a connected graph of qubits joined by coupling links. Each
calibration snapshot annotates the graph with per-link two-qubit error
rates, per-qubit single-qubit and readout error rates, and T1/T2
coherence times. Coherence times are carried through to reports but are
never used as a failure source.

Snapshot documents are JSON::

    {
      "header": {"name": "...", "num_qubits": 6, "label": "2018-03-01"},
      "qubits": [{"id": 0, "single_qubit_error": 0.001,
                  "readout_error": 0.02, "t1_us": 80.0, "t2_us": 40.0}, ...],
      "links":  [{"u": 0, "v": 1, "two_qubit_error": 0.04}, ...]
    }

Probabilities are decimal fractions (0.04 means 4%). A series is a
directory of such documents, ordered by filename.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    ScalingError,
    SnapshotParseError,
    SnapshotValidationError,
    TopologyMismatchError,
)

__all__ = [
    "QubitCalibration",
    "CouplingLink",
    "CalibrationSnapshot",
    "CalibrationSeries",
    "MetricStats",
    "METRICS",
    "load_snapshot",
    "load_snapshot_file",
    "save_snapshot",
    "load_series",
    "scale_error_rates",
    "link_success",
    "connectivity_strength",
    "series_statistics",
    "average_snapshot",
    "restrict_snapshot",
]

#: Metric classes pooled by :func:`series_statistics`.
METRICS = ("t1_us", "t2_us", "single_qubit_error", "readout_error", "two_qubit_error")


@dataclass(frozen=True)
class QubitCalibration:
    """Calibration record for one qubit."""

    qubit: int
    single_qubit_error: float
    readout_error: float
    t1_us: float
    t2_us: float


@dataclass(frozen=True)
class CouplingLink:
    """Undirected coupling link with its two-qubit error rate.

    Endpoints are stored normalized with ``u < v``.
    """

    u: int
    v: int
    two_qubit_error: float

    @property
    def success(self) -> float:
        return 1.0 - self.two_qubit_error


@dataclass
class CalibrationSnapshot:
    """One calibration day: topology plus measured error rates.

    Treat instances as immutable after construction; derived adjacency
    structures are precomputed and shared, so mutating fields in place
    would desynchronize them.
    """

    name: str
    label: str
    qubits: tuple[QubitCalibration, ...]
    links: tuple[CouplingLink, ...]
    _adjacency: dict[int, tuple[int, ...]] = field(init=False, repr=False)
    _link_error: dict[tuple[int, int], float] = field(init=False, repr=False)
    _dist: dict[int, list[int]] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        adj: dict[int, list[int]] = {q.qubit: [] for q in self.qubits}
        err: dict[tuple[int, int], float] = {}
        for link in self.links:
            adj[link.u].append(link.v)
            adj[link.v].append(link.u)
            err[(link.u, link.v)] = link.two_qubit_error
        self._adjacency = {q: tuple(sorted(vs)) for q, vs in adj.items()}
        self._link_error = err

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    def neighbors(self, q: int) -> tuple[int, ...]:
        return self._adjacency[q]

    def degree(self, q: int) -> int:
        return len(self._adjacency[q])

    def has_link(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._link_error

    def link_error(self, u: int, v: int) -> float:
        return self._link_error[(min(u, v), max(u, v))]

    def link_success_prob(self, u: int, v: int) -> float:
        return 1.0 - self.link_error(u, v)

    def calibration(self, q: int) -> QubitCalibration:
        return self.qubits[q]

    def distances_from(self, src: int) -> list[int]:
        """Hop distances from ``src`` to every qubit (BFS, cached)."""
        cached = self._dist.get(src)
        if cached is not None:
            return cached
        dist = [-1] * self.num_qubits
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in self._adjacency[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        self._dist[src] = dist
        return dist

    def hop_distance(self, u: int, v: int) -> int:
        return self.distances_from(u)[v]

    def to_document(self) -> dict:
        return {
            "header": {
                "name": self.name,
                "num_qubits": self.num_qubits,
                "label": self.label,
            },
            "qubits": [
                {
                    "id": q.qubit,
                    "single_qubit_error": q.single_qubit_error,
                    "readout_error": q.readout_error,
                    "t1_us": q.t1_us,
                    "t2_us": q.t2_us,
                }
                for q in self.qubits
            ],
            "links": [
                {"u": l.u, "v": l.v, "two_qubit_error": l.two_qubit_error}
                for l in self.links
            ],
        }


@dataclass(frozen=True)
class CalibrationSeries:
    """Ordered calibration snapshots over one fixed topology."""

    snapshots: tuple[CalibrationSnapshot, ...]

    def __post_init__(self) -> None:
        if not self.snapshots:
            raise SnapshotValidationError("series must contain at least one snapshot")
        first = self.snapshots[0]
        key = _topology_key(first)
        for snap in self.snapshots[1:]:
            if _topology_key(snap) != key:
                raise TopologyMismatchError(
                    f"snapshot {snap.label!r} does not share the topology of {first.label!r}"
                )

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)


@dataclass(frozen=True)
class MetricStats:
    mean: float
    std: float
    min: float
    max: float


def _topology_key(snapshot: CalibrationSnapshot) -> tuple:
    return (snapshot.num_qubits, tuple((l.u, l.v) for l in snapshot.links))


def _is_probability(x: float) -> bool:
    return isinstance(x, (int, float)) and not math.isnan(x) and 0.0 <= x < 1.0


def build_snapshot(
    name: str,
    label: str,
    qubits: list[QubitCalibration],
    links: list[CouplingLink],
) -> CalibrationSnapshot:
    """Validate raw records and assemble a snapshot.

    Raises SnapshotValidationError on any invariant violation: qubit ids
    not dense, probabilities out of [0,1), non-positive coherence times,
    self-loops, duplicate links, endpoints without a calibration entry,
    or a disconnected coupling graph.
    """
    n = len(qubits)
    if n == 0:
        raise SnapshotValidationError("snapshot has no qubits")
    ids = sorted(q.qubit for q in qubits)
    if ids != list(range(n)):
        raise SnapshotValidationError(f"qubit ids must be dense 0..{n - 1}, got {ids}")
    ordered = tuple(sorted(qubits, key=lambda q: q.qubit))
    for q in ordered:
        for fieldname in ("single_qubit_error", "readout_error"):
            value = getattr(q, fieldname)
            if not _is_probability(value):
                raise SnapshotValidationError(
                    f"qubit {q.qubit}: {fieldname}={value!r} not in [0, 1)"
                )
        for fieldname in ("t1_us", "t2_us"):
            value = getattr(q, fieldname)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise SnapshotValidationError(
                    f"qubit {q.qubit}: {fieldname}={value!r} must be finite and positive"
                )

    seen: set[tuple[int, int]] = set()
    normalized = []
    for link in links:
        u, v = min(link.u, link.v), max(link.u, link.v)
        if u == v:
            raise SnapshotValidationError(f"link ({u}, {v}) is a self-loop")
        if not (0 <= u < n and 0 <= v < n):
            raise SnapshotValidationError(f"link ({u}, {v}) references an unknown qubit")
        if (u, v) in seen:
            raise SnapshotValidationError(f"duplicate link ({u}, {v})")
        if not _is_probability(link.two_qubit_error):
            raise SnapshotValidationError(
                f"link ({u}, {v}): two_qubit_error={link.two_qubit_error!r} not in [0, 1)"
            )
        seen.add((u, v))
        normalized.append(CouplingLink(u, v, link.two_qubit_error))
    normalized.sort(key=lambda l: (l.u, l.v))

    snapshot = CalibrationSnapshot(name=name, label=label, qubits=ordered, links=tuple(normalized))
    if n > 1:
        reached = sum(1 for d in snapshot.distances_from(0) if d >= 0)
        if reached != n:
            raise SnapshotValidationError(
                f"coupling graph is disconnected ({reached} of {n} qubits reachable from 0)"
            )
    return snapshot


def load_snapshot(text: str) -> CalibrationSnapshot:
    """Parse and validate a snapshot document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SnapshotParseError(f"invalid JSON: {exc}") from exc
    try:
        header = doc["header"]
        name = str(header["name"])
        label = str(header["label"])
        declared = int(header["num_qubits"])
        qubits = [
            QubitCalibration(
                qubit=int(entry["id"]),
                single_qubit_error=float(entry["single_qubit_error"]),
                readout_error=float(entry["readout_error"]),
                t1_us=float(entry["t1_us"]),
                t2_us=float(entry["t2_us"]),
            )
            for entry in doc["qubits"]
        ]
        links = [
            CouplingLink(int(entry["u"]), int(entry["v"]), float(entry["two_qubit_error"]))
            for entry in doc["links"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise SnapshotParseError(f"malformed snapshot document: {exc!r}") from exc
    if declared != len(qubits):
        raise SnapshotValidationError(
            f"header declares {declared} qubits but {len(qubits)} entries present"
        )
    return build_snapshot(name, label, qubits, links)


def load_snapshot_file(path: str | Path) -> CalibrationSnapshot:
    return load_snapshot(Path(path).read_text())


def save_snapshot(snapshot: CalibrationSnapshot, path: str | Path) -> None:
    Path(path).write_text(json.dumps(snapshot.to_document(), indent=2, sort_keys=True) + "\n")


def load_series(directory: str | Path) -> CalibrationSeries:
    """Load every ``*.json`` snapshot in a directory, ordered by filename."""
    paths = sorted(Path(directory).glob("*.json"))
    if not paths:
        raise SnapshotParseError(f"no snapshot documents found in {directory}")
    return CalibrationSeries(tuple(load_snapshot_file(p) for p in paths))


def scale_error_rates(snapshot: CalibrationSnapshot, factor: float) -> CalibrationSnapshot:
    """Divide every error probability by ``factor``; T1/T2 are untouched.

    Factors below 1 inflate the rates; a ScalingError is raised if any
    resulting probability would leave [0, 1).
    """
    if not (factor > 0):
        raise ScalingError(f"scale factor must be positive, got {factor!r}")

    def scaled(value: float, where: str) -> float:
        out = value / factor
        if not out < 1.0:
            raise ScalingError(f"{where}: {value} / {factor} = {out} leaves [0, 1)")
        return out

    qubits = tuple(
        QubitCalibration(
            qubit=q.qubit,
            single_qubit_error=scaled(q.single_qubit_error, f"qubit {q.qubit} 1q error"),
            readout_error=scaled(q.readout_error, f"qubit {q.qubit} readout error"),
            t1_us=q.t1_us,
            t2_us=q.t2_us,
        )
        for q in snapshot.qubits
    )
    links = tuple(
        CouplingLink(l.u, l.v, scaled(l.two_qubit_error, f"link ({l.u}, {l.v})"))
        for l in snapshot.links
    )
    return CalibrationSnapshot(snapshot.name, snapshot.label, qubits, links)


def link_success(link: CouplingLink, n_ops: int) -> float:
    """Probability that ``n_ops`` consecutive operations on the link all succeed."""
    if n_ops < 1:
        raise ValueError(f"n_ops must be >= 1, got {n_ops}")
    return (1.0 - link.two_qubit_error) ** n_ops

def connectivity_strength(snapshot: CalibrationSnapshot, q: int) -> float:
    """Sum of success probabilities over the links incident to ``q``.

    Computed with exact (correctly rounded) summation, so the result is
    independent of link enumeration order.
    """
    return math.fsum(snapshot.link_success_prob(q, v) for v in snapshot.neighbors(q))


def _population_stats(values: list[float]) -> MetricStats:
    n = len(values)
    mean = sum(values) / n
    var = sum((x - mean) ** 2 for x in values) / n
    return MetricStats(mean=mean, std=math.sqrt(var), min=min(values), max=max(values))


def pooled_metric_values(series: CalibrationSeries) -> dict[str, list[float]]:
    """Every observed value per metric class, pooled over entities and days."""
    pools: dict[str, list[float]] = {m: [] for m in METRICS}
    for snap in series:
        for q in snap.qubits:
            pools["t1_us"].append(q.t1_us)
            pools["t2_us"].append(q.t2_us)
            pools["single_qubit_error"].append(q.single_qubit_error)
            pools["readout_error"].append(q.readout_error)
        for link in snap.links:
            pools["two_qubit_error"].append(link.two_qubit_error)
    return pools


def series_statistics(series: CalibrationSeries) -> dict[str, MetricStats]:
    """Pooled mean/std/min/max per metric over all qubits, links and days.

    Uses the population standard deviation (the pooled values are treated
    as the full observed population, not a sample).
    """
    pools = pooled_metric_values(series)
    return {m: _population_stats(vals) for m, vals in pools.items() if vals}


def average_snapshot(series: CalibrationSeries) -> CalibrationSnapshot:
    """Arithmetic mean of every calibration quantity across the series."""
    snaps = series.snapshots
    n = len(snaps)
    first = snaps[0]
    qubits = tuple(
        QubitCalibration(
            qubit=i,
            single_qubit_error=sum(s.qubits[i].single_qubit_error for s in snaps) / n,
            readout_error=sum(s.qubits[i].readout_error for s in snaps) / n,
            t1_us=sum(s.qubits[i].t1_us for s in snaps) / n,
            t2_us=sum(s.qubits[i].t2_us for s in snaps) / n,
        )
        for i in range(first.num_qubits)
    )
    links = tuple(
        CouplingLink(
            link.u,
            link.v,
            sum(s.links[j].two_qubit_error for s in snaps) / n,
        )
        for j, link in enumerate(first.links)
    )
    label = first.label if n == 1 else f"mean-of-{n}[{first.label}..{snaps[-1].label}]"
    return CalibrationSnapshot(first.name, label, qubits, links)


def restrict_snapshot(
    snapshot: CalibrationSnapshot, vertices: tuple[int, ...] | frozenset[int]
) -> tuple[CalibrationSnapshot, tuple[int, ...]]:
    """Induced sub-device on ``vertices``, relabeled to dense ids.

    Returns the sub-snapshot and the original id of each new qubit, so
    ``original[i]`` is the device qubit behind sub-qubit ``i``. The
    induced subgraph must be connected.
    """
    original = tuple(sorted(vertices))
    remap = {orig: i for i, orig in enumerate(original)}
    qubits = [
        QubitCalibration(
            qubit=remap[orig],
            single_qubit_error=snapshot.qubits[orig].single_qubit_error,
            readout_error=snapshot.qubits[orig].readout_error,
            t1_us=snapshot.qubits[orig].t1_us,
            t2_us=snapshot.qubits[orig].t2_us,
        )
        for orig in original
    ]
    links = [
        CouplingLink(remap[l.u], remap[l.v], l.two_qubit_error)
        for l in snapshot.links
        if l.u in remap and l.v in remap
    ]
    sub = build_snapshot(snapshot.name, f"{snapshot.label}|{original}", qubits, links)
    return sub, original
