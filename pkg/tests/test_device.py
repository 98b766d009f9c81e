import json
import math

import pytest

from variaq.device import (
    CalibrationSeries,
    CouplingLink,
    average_snapshot,
    connectivity_strength,
    link_success,
    load_snapshot,
    restrict_snapshot,
    scale_error_rates,
    series_statistics,
)
from variaq.errors import (
    ScalingError,
    SnapshotParseError,
    SnapshotValidationError,
    TopologyMismatchError,
)

from conftest import make_snapshot


def doc(num_qubits, links, label="day-1"):
    return json.dumps(
        {
            "header": {"name": "dev", "num_qubits": num_qubits, "label": label},
            "qubits": [
                {"id": i, "single_qubit_error": 0.001, "readout_error": 0.02,
                 "t1_us": 80.0, "t2_us": 40.0}
                for i in range(num_qubits)
            ],
            "links": [{"u": u, "v": v, "two_qubit_error": e} for u, v, e in links],
        }
    )


class TestLoadSnapshot:
    def test_two_qubit_document(self):
        snap = load_snapshot(doc(2, [(0, 1, 0.05)]))
        assert snap.num_qubits == 2
        assert len(snap.links) == 1
        assert snap.link_error(0, 1) == 0.05

    def test_out_of_range_link_error(self):
        with pytest.raises(SnapshotValidationError):
            load_snapshot(doc(2, [(0, 1, 1.2)]))

    def test_bundled_q20_extremes(self, q20):
        errors = [l.two_qubit_error for l in q20.links]
        assert min(errors) == 0.02
        assert max(errors) == 0.15
        assert q20.link_error(14, 18) == 0.15
        assert q20.link_error(0, 1) == 0.04
        assert q20.num_qubits == 20
        assert "synthetic" in (q20.name + q20.label)

    def test_malformed_json(self):
        with pytest.raises(SnapshotParseError):
            load_snapshot("{not json")

    def test_missing_keys(self):
        with pytest.raises(SnapshotParseError):
            load_snapshot('{"header": {"name": "x"}}')

    def test_disconnected_graph_rejected(self):
        with pytest.raises(SnapshotValidationError, match="disconnected"):
            load_snapshot(doc(4, [(0, 1, 0.1), (2, 3, 0.1)]))

    def test_duplicate_link_rejected(self):
        with pytest.raises(SnapshotValidationError, match="duplicate"):
            load_snapshot(doc(2, [(0, 1, 0.1), (1, 0, 0.2)]))

    def test_self_loop_rejected(self):
        with pytest.raises(SnapshotValidationError, match="self-loop"):
            load_snapshot(doc(2, [(0, 0, 0.1), (0, 1, 0.1)]))

    def test_single_qubit_device_loads(self):
        snap = load_snapshot(doc(1, []))
        assert snap.num_qubits == 1
        assert snap.links == ()

    def test_header_count_mismatch(self):
        bad = json.loads(doc(2, [(0, 1, 0.1)]))
        bad["header"]["num_qubits"] = 3
        with pytest.raises(SnapshotValidationError):
            load_snapshot(json.dumps(bad))


class TestScaleErrorRates:
    def test_divides_worst_link(self, q20):
        scaled = scale_error_rates(q20, 10.0)
        assert scaled.link_error(14, 18) == 0.015

    def test_identity(self, q20):
        same = scale_error_rates(q20, 1.0)
        assert same.to_document() == q20.to_document()

    def test_simple_arithmetic(self):
        snap = make_snapshot([(0, 1, 0.04)])
        assert scale_error_rates(snap, 10.0).link_error(0, 1) == 0.004

    def test_t1_t2_untouched(self, q20):
        scaled = scale_error_rates(q20, 10.0)
        assert [q.t1_us for q in scaled.qubits] == [q.t1_us for q in q20.qubits]

    def test_inflating_beyond_one_rejected(self):
        snap = make_snapshot([(0, 1, 0.5)])
        with pytest.raises(ScalingError):
            scale_error_rates(snap, 0.4)

    def test_non_positive_factor_rejected(self, ring5):
        with pytest.raises(ScalingError):
            scale_error_rates(ring5, 0.0)

    def test_composition_matches_single_scale(self, q20):
        # scale(scale(s, a), b) == scale(s, a*b) holds in real arithmetic;
        # in doubles the two divisions can disagree by one rounding step,
        # so agreement is asserted to within 1 ulp on every rate.
        twice = scale_error_rates(scale_error_rates(q20, 10.0), 10.0)
        once = scale_error_rates(q20, 100.0)
        for a, b in zip(twice.links, once.links):
            assert abs(a.two_qubit_error - b.two_qubit_error) <= math.ulp(b.two_qubit_error)
        for a, b in zip(twice.qubits, once.qubits):
            assert abs(a.single_qubit_error - b.single_qubit_error) <= math.ulp(
                b.single_qubit_error
            )
            assert abs(a.readout_error - b.readout_error) <= math.ulp(b.readout_error)


class TestLinkSuccess:
    def test_error_free(self):
        assert link_success(CouplingLink(0, 1, 0.0), 3) == 1.0

    def test_single_op(self):
        assert link_success(CouplingLink(0, 1, 0.1), 1) == 0.9

    def test_three_ops_match_repeated_multiplication(self):
        expected = 1.0
        for _ in range(3):
            expected *= 0.9
        assert link_success(CouplingLink(0, 1, 0.1), 3) == pytest.approx(expected, abs=1e-15)
        assert link_success(CouplingLink(0, 1, 0.1), 3) == pytest.approx(0.729, abs=1e-12)

    def test_zero_ops_rejected(self):
        with pytest.raises(ValueError):
            link_success(CouplingLink(0, 1, 0.1), 0)


class TestConnectivityStrength:
    def test_worked_example(self, grid6_allocation):
        assert connectivity_strength(grid6_allocation, 3) == 2.4

    def test_two_links_extremes(self):
        snap = make_snapshot([(0, 1, 0.02), (1, 2, 0.15)])
        assert connectivity_strength(snap, 1) == 1.83

    def test_leaf_qubit(self):
        snap = make_snapshot([(0, 1, 0.1), (1, 2, 0.2)])
        assert connectivity_strength(snap, 0) == 0.9

    def test_no_incident_links_gives_zero(self):
        lone = load_snapshot(doc(1, []))
        assert connectivity_strength(lone, 0) == 0.0

    def test_bounded_by_degree(self, q20):
        for q in range(q20.num_qubits):
            assert connectivity_strength(q20, q) <= q20.degree(q)

    def test_equals_degree_only_for_perfect_links(self):
        perfect = make_snapshot([(0, 1, 0.0), (1, 2, 0.0)])
        assert connectivity_strength(perfect, 1) == perfect.degree(1)
        lossy = make_snapshot([(0, 1, 0.0), (1, 2, 0.01)])
        assert connectivity_strength(lossy, 1) < lossy.degree(1)


class TestSeriesStatistics:
    def test_constant_series(self):
        snap = make_snapshot([(0, 1, 0.05)])
        stats = series_statistics(CalibrationSeries((snap,)))
        assert stats["two_qubit_error"].mean == 0.05
        assert stats["two_qubit_error"].std == 0.0

    def test_two_day_link_mean(self):
        day1 = make_snapshot([(0, 1, 0.02)], label="d1")
        day2 = make_snapshot([(0, 1, 0.04)], label="d2")
        stats = series_statistics(CalibrationSeries((day1, day2)))
        assert stats["two_qubit_error"].mean == pytest.approx(0.03, abs=1e-15)
        assert stats["two_qubit_error"].min == 0.02
        assert stats["two_qubit_error"].max == 0.04

    def test_population_std(self):
        day1 = make_snapshot([(0, 1, 0.02)], label="d1")
        day2 = make_snapshot([(0, 1, 0.04)], label="d2")
        stats = series_statistics(CalibrationSeries((day1, day2)))
        assert stats["two_qubit_error"].std == pytest.approx(0.01, abs=1e-15)


class TestAverageSnapshot:
    def test_single_snapshot_identity(self, ring5):
        series = CalibrationSeries((ring5,))
        assert average_snapshot(series).to_document()["links"] == ring5.to_document()["links"]

    def test_two_day_mean(self):
        day1 = make_snapshot([(0, 1, 0.02)], label="d1")
        day2 = make_snapshot([(0, 1, 0.04)], label="d2")
        avg = average_snapshot(CalibrationSeries((day1, day2)))
        assert avg.link_error(0, 1) == pytest.approx(0.03, abs=1e-15)

    def test_constant_series(self):
        days = tuple(make_snapshot([(0, 1, 0.1)], label=f"d{i}") for i in range(3))
        assert average_snapshot(CalibrationSeries(days)).link_error(0, 1) == pytest.approx(
            0.1, abs=1e-15
        )

    def test_topology_mismatch(self):
        day1 = make_snapshot([(0, 1, 0.02)], label="d1")
        day2 = make_snapshot([(0, 1, 0.02), (1, 2, 0.1)], label="d2")
        with pytest.raises(TopologyMismatchError):
            CalibrationSeries((day1, day2))


class TestRestrictSnapshot:
    def test_induced_links_and_relabeling(self, mesh6_partition):
        sub, original = restrict_snapshot(mesh6_partition, (0, 2, 4))
        assert original == (0, 2, 4)
        assert sub.num_qubits == 3
        assert sub.link_error(0, 1) == mesh6_partition.link_error(0, 2)
        assert sub.link_error(1, 2) == mesh6_partition.link_error(2, 4)

    def test_disconnected_region_rejected(self, mesh6_partition):
        with pytest.raises(SnapshotValidationError):
            restrict_snapshot(mesh6_partition, (0, 5))
