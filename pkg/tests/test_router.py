import itertools

import numpy as np
import pytest

from variaq.errors import GuardError
from variaq.router import (
    Baseline,
    CostModel,
    Route,
    Vqm,
    brute_force_best_route,
    find_route_baseline,
    find_route_vqm,
    route_success_probability,
)

from conftest import make_snapshot, random_connected_snapshot


def all_simple_paths(snapshot, src, dst, max_hops):
    paths = []

    def walk(path, seen):
        u = path[-1]
        if u == dst:
            paths.append(tuple(path))
            return
        if len(path) - 1 == max_hops:
            return
        for v in snapshot.neighbors(u):
            if v not in seen:
                path.append(v)
                seen.add(v)
                walk(path, seen)
                seen.remove(v)
                path.pop()

    walk([src], {src})
    return paths


class TestRouteSuccessProbability:
    def test_worked_two_hop(self, ring5):
        assert route_success_probability(Route((0, 1, 2)), ring5, CostModel.UNIT) == pytest.approx(
            0.42, abs=1e-12
        )

    def test_worked_three_hop(self, ring5):
        assert route_success_probability(
            Route((0, 4, 3, 2)), ring5, CostModel.UNIT
        ) == pytest.approx(0.567, abs=1e-12)

    def test_single_hop_cnot3_is_one_cnot(self):
        snap = make_snapshot([(0, 1, 0.1)])
        assert route_success_probability(Route((0, 1)), snap, CostModel.CNOT3) == pytest.approx(
            0.9, abs=1e-15
        )

    def test_cnot3_charges_swaps_on_all_but_last(self):
        snap = make_snapshot([(0, 1, 0.1), (1, 2, 0.2)])
        expected = (0.9 ** 3) * 0.8
        assert route_success_probability(Route((0, 1, 2)), snap, CostModel.CNOT3) == pytest.approx(
            expected, abs=1e-15
        )


class TestBaseline:
    def test_adjacent_pair(self, ring5):
        assert find_route_baseline(ring5, 3, 4).path == (3, 4)

    def test_grid_corner_to_corner_is_three_hops(self, grid6_routing):
        assert find_route_baseline(grid6_routing, 0, 5).hop_count == 3

    def test_lexicographic_tie_break(self, grid6_routing):
        route = find_route_baseline(grid6_routing, 0, 5)
        shortest = min(len(p) for p in all_simple_paths(grid6_routing, 0, 5, 5))
        ties = sorted(p for p in all_simple_paths(grid6_routing, 0, 5, 5) if len(p) == shortest)
        assert route.path == ties[0]

    def test_deterministic(self, q20):
        first = find_route_baseline(q20, 0, 19)
        for _ in range(3):
            assert find_route_baseline(q20, 0, 19).path == first.path


class TestVqm:
    def test_uniform_errors_match_baseline_hops(self):
        snap = make_snapshot([(0, 1, 0.1), (1, 2, 0.1), (2, 3, 0.1), (0, 3, 0.1), (1, 3, 0.1)])
        base = find_route_baseline(snap, 0, 2)
        route = find_route_vqm(snap, 0, 2, mah=0, cost_model=CostModel.UNIT)
        assert route.hop_count == base.hop_count
        assert route_success_probability(route, snap, CostModel.UNIT) == route_success_probability(
            base, snap, CostModel.UNIT
        )

    def test_detour_beats_weak_direct_path(self, ring5):
        assert find_route_vqm(ring5, 0, 2, mah=1, cost_model=CostModel.UNIT).path == (0, 4, 3, 2)

    def test_mah_zero_keeps_shortest(self, ring5):
        assert find_route_vqm(ring5, 0, 2, mah=0, cost_model=CostModel.UNIT).path == (0, 1, 2)

    def test_grid_picks_strong_diagonal_route(self, grid6_routing):
        for cost_model in CostModel:
            assert find_route_vqm(grid6_routing, 0, 5, 4, cost_model).path == (0, 3, 2, 5)

    def test_hop_budget_respected(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            snap = random_connected_snapshot(rng, int(rng.integers(5, 10)))
            src, dst = 0, snap.num_qubits - 1
            base = find_route_baseline(snap, src, dst)
            for mah in (0, 1, 3):
                route = find_route_vqm(snap, src, dst, mah, CostModel.CNOT3)
                assert route.hop_count <= base.hop_count + mah

    def test_dominates_baseline(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            snap = random_connected_snapshot(rng, 8)
            base = find_route_baseline(snap, 0, 7)
            for cost_model in CostModel:
                route = find_route_vqm(snap, 0, 7, 2, cost_model)
                assert route_success_probability(
                    route, snap, cost_model
                ) >= route_success_probability(base, snap, cost_model)

    def test_monotone_in_mah(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            snap = random_connected_snapshot(rng, 8)
            previous = 0.0
            for mah in range(5):
                route = find_route_vqm(snap, 0, 7, mah, CostModel.UNIT)
                prob = route_success_probability(route, snap, CostModel.UNIT)
                assert prob >= previous
                previous = prob

    def test_route_is_simple_path(self):
        rng = np.random.default_rng(14)
        for _ in range(30):
            snap = random_connected_snapshot(rng, 9, max_error=0.2)
            route = find_route_vqm(snap, 0, 8, 4, CostModel.UNIT)
            assert len(set(route.path)) == len(route.path)
            for u, v in route.edges():
                assert snap.has_link(u, v)


class TestBruteForceEquivalence:
    def test_single_edge_graph(self):
        snap = make_snapshot([(0, 1, 0.1)])
        assert brute_force_best_route(snap, 0, 1, 3, CostModel.UNIT).path == (0, 1)

    def test_matches_vqm_on_grid_fixture(self, grid6_routing):
        snap = grid6_routing
        for src, dst in itertools.permutations(range(6), 2):
            shortest = snap.hop_distance(src, dst)
            for mah in (0, 1, 2):
                vqm = find_route_vqm(snap, src, dst, mah, CostModel.CNOT3)
                brute = brute_force_best_route(snap, src, dst, shortest + mah, CostModel.CNOT3)
                assert route_success_probability(
                    vqm, snap, CostModel.CNOT3
                ) == route_success_probability(brute, snap, CostModel.CNOT3)

    def test_matches_vqm_on_random_graphs(self):
        rng = np.random.default_rng(15)
        for i in range(25):
            snap = random_connected_snapshot(rng, int(rng.integers(5, 9)))
            cost_model = CostModel.UNIT if i % 2 == 0 else CostModel.CNOT3
            for src, dst in itertools.combinations(range(snap.num_qubits), 2):
                shortest = snap.hop_distance(src, dst)
                for mah in (0, 2):
                    vqm = find_route_vqm(snap, src, dst, mah, cost_model)
                    brute = brute_force_best_route(snap, src, dst, shortest + mah, cost_model)
                    assert route_success_probability(
                        vqm, snap, cost_model
                    ) == route_success_probability(brute, snap, cost_model)

    def test_size_guard(self, q20):
        with pytest.raises(GuardError):
            brute_force_best_route(q20, 0, 19, 5, CostModel.UNIT)
        route = brute_force_best_route(q20, 0, 1, 1, CostModel.UNIT, force=True)
        assert route.path == (0, 1)


class TestPolicies:
    def test_vqm_defaults(self):
        policy = Vqm()
        assert policy.mah == 4
        assert policy.cost_model is CostModel.CNOT3

    def test_baseline_is_singleton_config(self):
        assert Baseline() == Baseline()
