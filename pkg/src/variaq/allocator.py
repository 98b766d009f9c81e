"""Initial placement of program qubits onto physical qubits.

Three policies:

* ``Trivial`` — identity onto the first P physical qubits; the
  error-rate-independent control for experiments.
* ``SwapMinimizing`` — variation-blind baseline: a compact BFS region
  around a central qubit, with interaction-weighted placement that only
  considers hop distances.
* ``Vqa`` — variation-aware: pick the connected region with the highest
  total link success, then place the most frequently interacting qubit
  pairs (counted over the first N instructions) on the region's
  strongest links.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .circuit import LogicalCircuit, TwoQubitGate, interaction_counts
from .device import CalibrationSnapshot, connectivity_strength
from .errors import CapacityError, GuardError

SUBSET_ENUMERATION_GUARD = 200_000
DEFAULT_FIRST_N = 50
GREEDY_SEEDS = 5


@dataclass(frozen=True)
class Mapping:
    """Injective map from program qubits to physical qubits."""

    forward: tuple[int, ...]

    def physical(self, program_qubit: int) -> int:
        return self.forward[program_qubit]

    def inverse(self) -> dict[int, int]:
        return {p: q for q, p in enumerate(self.forward)}

    def __post_init__(self) -> None:
        if len(set(self.forward)) != len(self.forward):
            raise ValueError(f"mapping is not injective: {self.forward}")


@dataclass(frozen=True)
class Trivial:
    """Program qubit i sits on physical qubit i."""


@dataclass(frozen=True)
class SwapMinimizing:
    """Variation-blind compact region + distance-based placement."""


@dataclass(frozen=True)
class Vqa:
    """Variation-aware allocation; interaction counts taken over the
    first ``first_n`` instructions."""

    first_n: int = DEFAULT_FIRST_N


AllocPolicy = Trivial | SwapMinimizing | Vqa


def connected_subsets(snapshot: CalibrationSnapshot, k: int) -> Iterator[frozenset[int]]:
    """Enumerate every connected k-vertex subset exactly once (ESU)."""
    n = snapshot.num_qubits

    def extend(sub: set[int], ext: list[int], root: int) -> Iterator[frozenset[int]]:
        if len(sub) == k:
            yield frozenset(sub)
            return
        ext = list(ext)
        while ext:
            w = ext.pop(0)
            closure = sub | set(ext)
            new_ext = ext + [
                u
                for u in snapshot.neighbors(w)
                if u > root and u not in closure and u != w
                and not any(u in snapshot.neighbors(s) for s in sub)
            ]
            sub.add(w)
            yield from extend(sub, new_ext, root)
            sub.remove(w)

    for v in range(n):
        yield from extend({v}, [u for u in snapshot.neighbors(v) if u > v], v)


def region_strength(snapshot: CalibrationSnapshot, vertices: frozenset[int]) -> float:
    """Total success probability of the links induced by ``vertices``.

    Each induced link is counted once. Summing per-vertex connectivity
    strengths restricted to the region would double every term, so the
    ranking of candidate regions is identical either way.
    """
    return math.fsum(
        snapshot.link_success_prob(u, v)
        for u in vertices
        for v in snapshot.neighbors(u)
        if v > u and v in vertices
    )


def _greedy_region(snapshot: CalibrationSnapshot, k: int, seed_vertex: int) -> frozenset[int]:
    region = {seed_vertex}
    while len(region) < k:
        candidates = sorted(
            {v for u in region for v in snapshot.neighbors(u)} - region
        )
        if not candidates:
            break
        best = max(
            candidates,
            key=lambda v: (
                sum(snapshot.link_success_prob(u, v) for u in region if snapshot.has_link(u, v)),
                -v,
            ),
        )
        region.add(best)
    return frozenset(region)


def select_strongest_subgraph(
    snapshot: CalibrationSnapshot, k: int, *, guard: int = SUBSET_ENUMERATION_GUARD
) -> frozenset[int]:
    """Connected k-vertex region maximizing total induced link success.

    Exact enumeration while C(N, k) stays within the guard; beyond that,
    greedy expansion from the strongest seed vertices. For k=1 the
    induced-link objective is degenerate (always zero), so the single
    qubit with the highest connectivity strength is returned.
    """
    n = snapshot.num_qubits
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if k == 1:
        best = max(range(n), key=lambda q: (connectivity_strength(snapshot, q), -q))
        return frozenset({best})
    if k == n:
        return frozenset(range(n))

    def better(cand: frozenset[int], cur: tuple[float, tuple[int, ...]] | None):
        score = region_strength(snapshot, cand)
        key = tuple(sorted(cand))
        if cur is None or score > cur[0] or (score == cur[0] and key < cur[1]):
            return (score, key)
        return cur

    best: tuple[float, tuple[int, ...]] | None = None
    if math.comb(n, k) <= guard:
        for cand in connected_subsets(snapshot, k):
            best = better(cand, best)
    else:
        seeds = sorted(range(n), key=lambda q: (-connectivity_strength(snapshot, q), q))
        for seed_vertex in seeds[:GREEDY_SEEDS]:
            cand = _greedy_region(snapshot, k, seed_vertex)
            if len(cand) == k:
                best = better(cand, best)
    if best is None:
        raise GuardError(f"no connected region of size {k} found")
    return frozenset(best[1])


def _place_on_region(
    snapshot: CalibrationSnapshot,
    region: list[int],
    weights: np.ndarray,
    link_score: Callable[[int, int], float],
) -> tuple[int, ...]:
    """Greedy pair placement shared by the placement policies.

    Pairs are taken in descending interaction count. The busier qubit of
    a pair lands on the endpoint with the higher within-region link
    score; leftover qubits go next to their partner, falling back to the
    nearest free vertex.
    """
    num_program = weights.shape[0]
    region_set = set(region)
    in_region = lambda u, v: u in region_set and v in region_set

    vertex_score = {
        u: sum(link_score(u, v) for v in snapshot.neighbors(u) if v in region_set)
        for u in region
    }
    freq = weights.sum(axis=1)

    pairs = sorted(
        ((a, b) for a in range(num_program) for b in range(a + 1, num_program) if weights[a, b]),
        key=lambda p: (-weights[p[0], p[1]], p),
    )

    forward: list[int | None] = [None] * num_program
    free = set(region)

    def orient(pair: tuple[int, int], u: int, v: int) -> None:
        a, b = pair
        busy, quiet = (a, b) if (freq[a], -a) >= (freq[b], -b) else (b, a)
        strong, weak = (
            (u, v)
            if (vertex_score[u], -u) >= (vertex_score[v], -v)
            else (v, u)
        )
        forward[busy] = strong
        forward[quiet] = weak
        free.discard(u)
        free.discard(v)

    def nearest_free(anchor: int) -> int:
        dist = snapshot.distances_from(anchor)
        return min(free, key=lambda v: (dist[v], v))

    for a, b in pairs:
        placed_a, placed_b = forward[a] is not None, forward[b] is not None
        if placed_a and placed_b:
            continue
        if not placed_a and not placed_b:
            links = [
                (u, v)
                for u in sorted(free)
                for v in snapshot.neighbors(u)
                if v > u and v in free and in_region(u, v)
            ]
            if links:
                u, v = max(links, key=lambda e: (link_score(*e), (-e[0], -e[1])))
                orient((a, b), u, v)
            else:
                u = min(free)
                forward[a] = u
                free.discard(u)
                v = nearest_free(u)
                forward[b] = v
                free.discard(v)
        else:
            q = b if placed_a else a
            anchor = forward[a] if placed_a else forward[b]
            adjacent = [v for v in snapshot.neighbors(anchor) if v in free]
            if adjacent:
                v = max(adjacent, key=lambda v: (link_score(anchor, v), -v))
            else:
                v = nearest_free(anchor)
            forward[q] = v
            free.discard(v)

    # Qubits with no counted interactions: strongest free vertices first.
    leftovers = sorted(free, key=lambda v: (-vertex_score[v], v))
    for q in range(num_program):
        if forward[q] is None:
            forward[q] = leftovers.pop(0)
    return tuple(forward)  # type: ignore[arg-type]


def allocate(
    circuit: LogicalCircuit, snapshot: CalibrationSnapshot, policy: AllocPolicy
) -> Mapping:
    """Produce the initial program-qubit to physical-qubit mapping."""
    p = circuit.num_qubits
    n = snapshot.num_qubits
    if n == 1:
        raise CapacityError(
            "a 1-qubit device has no coupling links; it supports loading and "
            "statistics but not allocation or routing"
        )
    if p > n:
        raise CapacityError(f"circuit needs {p} qubits but the device has {n}")
    if p == 0:
        return Mapping(())

    if isinstance(policy, Trivial):
        return Mapping(tuple(range(p)))

    if isinstance(policy, SwapMinimizing):
        # Compact region around the minimum-eccentricity vertex; link
        # scores are flat so only distances and indices drive placement.
        ecc = {
            v: max(snapshot.distances_from(v))
            for v in range(n)
        }
        center = min(range(n), key=lambda v: (ecc[v], v))
        region = _bfs_region(snapshot, center, p)
        weights = interaction_counts(circuit, None)
        return Mapping(_place_on_region(snapshot, region, weights, lambda u, v: 1.0))

    region = sorted(select_strongest_subgraph(snapshot, p))
    weights = interaction_counts(circuit, policy.first_n)
    return Mapping(
        _place_on_region(snapshot, region, weights, snapshot.link_success_prob)
    )


def _bfs_region(snapshot: CalibrationSnapshot, center: int, size: int) -> list[int]:
    order = [center]
    seen = {center}
    i = 0
    while len(order) < size and i < len(order):
        for v in snapshot.neighbors(order[i]):
            if v not in seen:
                seen.add(v)
                order.append(v)
                if len(order) == size:
                    break
        i += 1
    return order[:size]


def estimated_swap_cost(
    circuit: LogicalCircuit,
    snapshot: CalibrationSnapshot,
    mapping: Mapping,
    first_n: int | None = None,
) -> float:
    """Sum of (hop distance - 1) over the two-qubit gates in the prefix.

    Zero when every interacting pair is already adjacent.
    """
    prefix = circuit.instructions if first_n is None else circuit.instructions[:first_n]
    cost = 0.0
    for ins in prefix:
        if isinstance(ins, TwoQubitGate):
            d = snapshot.hop_distance(mapping.physical(ins.control), mapping.physical(ins.target))
            cost += d - 1
    return cost
