"""Route selection for qubit movement.

Two policies: a variation-blind baseline that takes the minimum-hop path
(lexicographically smallest on ties), and a variation-aware search that
maximizes the route's overall success probability among paths within a
hop budget (shortest hop count plus a configurable number of additional
hops).

Two cost models are supported. ``UNIT`` charges one two-qubit operation
per traversed edge, which reproduces the plain product-of-link-successes
arithmetic. ``CNOT3`` charges each movement hop as a SWAP (3 CNOTs on
that link) and the final edge as the single entangling CNOT, matching
what the compiler actually emits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .device import CalibrationSnapshot
from .errors import GuardError

BRUTE_FORCE_VERTEX_GUARD = 12
DEFAULT_MAH = 4


class CostModel(Enum):
    UNIT = "unit"
    CNOT3 = "cnot3"


@dataclass(frozen=True)
class Route:
    """A simple path of physical qubits from source to destination."""

    path: tuple[int, ...]

    @property
    def hop_count(self) -> int:
        return len(self.path) - 1

    @property
    def source(self) -> int:
        return self.path[0]

    @property
    def destination(self) -> int:
        return self.path[-1]

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.path, self.path[1:]))


@dataclass(frozen=True)
class Baseline:
    """Fewest-SWAPs routing, blind to link error rates."""


@dataclass(frozen=True)
class Vqm:
    """Variation-aware routing with a maximum-additional-hop budget."""

    mah: int = DEFAULT_MAH
    cost_model: CostModel = CostModel.CNOT3


RoutePolicy = Baseline | Vqm


def _hop_factor(success: float, cost_model: CostModel) -> float:
    if cost_model is CostModel.UNIT:
        return success
    return success * success * success


def route_success_probability(
    route: Route, snapshot: CalibrationSnapshot, cost_model: CostModel
) -> float:
    """Overall success probability of a route.

    The product is accumulated left to right over the route's edges so
    that equal routes always evaluate to bitwise-equal probabilities.
    Under CNOT3 every edge except the last is a SWAP (3 CNOTs); the last
    edge carries the single gate CNOT.
    """
    edges = route.edges()
    prob = 1.0
    for u, v in edges[:-1]:
        prob *= _hop_factor(snapshot.link_success_prob(u, v), cost_model)
    u, v = edges[-1]
    prob *= snapshot.link_success_prob(u, v)
    return prob


def find_route_baseline(snapshot: CalibrationSnapshot, src: int, dst: int) -> Route:
    """Minimum-hop route; ties resolved to the lexicographically smallest
    vertex-index sequence, which the greedy smallest-neighbor descent of
    the BFS distance field produces exactly."""
    if src == dst:
        raise ValueError("source and destination must differ")
    dist = snapshot.distances_from(dst)
    if dist[src] < 0:
        raise ValueError(f"no path from {src} to {dst}")
    path = [src]
    current = src
    while current != dst:
        current = min(v for v in snapshot.neighbors(current) if dist[v] == dist[current] - 1)
        path.append(current)
    return Route(tuple(path))


def _strip_revisits(path: tuple[int, ...], dst: int) -> tuple[int, ...]:
    # Zero-error links make loops free; cut at the first arrival and
    # splice out any remaining repeated vertex.
    cut = path[: path.index(dst) + 1]
    out: list[int] = []
    index: dict[int, int] = {}
    for v in cut:
        if v in index:
            del out[index[v] + 1 :]
            index = {x: i for i, x in enumerate(out)}
        else:
            index[v] = len(out)
            out.append(v)
    return tuple(out)


def find_route_vqm(
    snapshot: CalibrationSnapshot,
    src: int,
    dst: int,
    mah: int = DEFAULT_MAH,
    cost_model: CostModel = CostModel.CNOT3,
) -> Route:
    """Maximum-success route within ``shortest_hops + mah`` hops.

    Exact search over a hop-layered state space (vertex, hops used): each
    layer keeps, per vertex, the best product reachable in exactly that
    many hops. Products are accumulated left to right exactly as
    :func:`route_success_probability` evaluates them, so the returned
    route's probability matches exhaustive enumeration bitwise. Ties are
    broken by fewer hops, then by lexicographically smallest path.
    """
    if src == dst:
        raise ValueError("source and destination must differ")
    if mah < 0:
        raise ValueError(f"mah must be >= 0, got {mah}")
    shortest = snapshot.distances_from(src)[dst]
    if shortest < 0:
        raise ValueError(f"no path from {src} to {dst}")
    budget = shortest + mah

    # layer[v] = (product over hops so far, path); one entry per vertex.
    layer: dict[int, tuple[float, tuple[int, ...]]] = {src: (1.0, (src,))}
    best: tuple[float, int, tuple[int, ...]] | None = None  # (prob, hops, path)

    for hops in range(1, budget + 1):
        # Candidate routes: extend a (hops-1)-hop prefix by the final edge.
        for u in sorted(layer):
            if not snapshot.has_link(u, dst):
                continue
            prefix_prob, prefix = layer[u]
            prob = prefix_prob * snapshot.link_success_prob(u, dst)
            path = prefix + (dst,)
            if (
                best is None
                or prob > best[0]
                or (prob == best[0] and hops == best[1] and path < best[2])
            ):
                best = (prob, hops, path)
        if hops == budget:
            break
        nxt: dict[int, tuple[float, tuple[int, ...]]] = {}
        for u in sorted(layer):
            prefix_prob, prefix = layer[u]
            for v in snapshot.neighbors(u):
                prob = prefix_prob * _hop_factor(snapshot.link_success_prob(u, v), cost_model)
                path = prefix + (v,)
                cur = nxt.get(v)
                if cur is None or prob > cur[0] or (prob == cur[0] and path < cur[1]):
                    nxt[v] = (prob, path)
        layer = nxt

    assert best is not None  # graph is connected, budget >= shortest
    return Route(_strip_revisits(best[2], dst))


def brute_force_best_route(
    snapshot: CalibrationSnapshot,
    src: int,
    dst: int,
    max_hops: int,
    cost_model: CostModel = CostModel.CNOT3,
    force: bool = False,
) -> Route:
    """Exhaustive enumeration of simple paths up to ``max_hops`` hops.

    Exact but exponential; guarded to small devices unless ``force``.
    Uses the same tie-break as :func:`find_route_vqm`.
    """
    if src == dst:
        raise ValueError("source and destination must differ")
    if snapshot.num_qubits > BRUTE_FORCE_VERTEX_GUARD and not force:
        raise GuardError(
            f"brute-force routing is guarded to {BRUTE_FORCE_VERTEX_GUARD} qubits "
            f"(device has {snapshot.num_qubits}); pass force=True to override"
        )

    best: tuple[float, int, tuple[int, ...]] | None = None
    path = [src]
    on_path = {src}

    def visit(u: int) -> None:
        nonlocal best
        for v in snapshot.neighbors(u):
            if v in on_path:
                continue
            path.append(v)
            if v == dst:
                route = tuple(path)
                prob = route_success_probability(Route(route), snapshot, cost_model)
                hops = len(route) - 1
                key = (prob, -hops, tuple(-x for x in route))
                if best is None or key > (best[0], -best[1], tuple(-x for x in best[2])):
                    best = (prob, hops, route)
            elif len(path) - 1 < max_hops:
                on_path.add(v)
                visit(v)
                on_path.remove(v)
            path.pop()

    visit(src)
    if best is None:
        raise ValueError(f"no path from {src} to {dst} within {max_hops} hops")
    return Route(best[2])


class RoutePlanner:
    """Route cache for one (snapshot, policy) compilation pass.

    Routing is a pure function of (source, destination), so repeated
    movements between the same physical locations reuse the search.
    """

    def __init__(self, snapshot: CalibrationSnapshot, policy: RoutePolicy):
        self.snapshot = snapshot
        self.policy = policy
        self._cache: dict[tuple[int, int], Route] = {}

    def route(self, src: int, dst: int) -> Route:
        key = (src, dst)
        cached = self._cache.get(key)
        if cached is None:
            if isinstance(self.policy, Baseline):
                cached = find_route_baseline(self.snapshot, src, dst)
            else:
                cached = find_route_vqm(
                    self.snapshot, src, dst, self.policy.mah, self.policy.cost_model
                )
            self._cache[key] = cached
        return cached
