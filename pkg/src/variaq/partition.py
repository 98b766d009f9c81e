"""Two concurrent program copies versus one copy on the strongest region.

For programs needing at most half the device, the machine can be split
into two disjoint connected regions running the same program in
parallel, doubling the trial rate but forcing at least one copy onto
weaker links. The figure of merit is successful trials per unit time
(STPT), with both arms executing one round per unit time: the two-copy
arm scores PST_X + PST_Y of its best partition, the one-copy arm scores
the PST of its best single placement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .allocator import AllocPolicy, connected_subsets
from .circuit import LogicalCircuit
from .compiler import PhysicalCircuit, compile_circuit
from .device import CalibrationSnapshot, restrict_snapshot
from .errors import CapacityError, GuardError
from .reliability import ErrorModel, analytic_pst
from .router import RoutePolicy

ONE_COPY = "one_copy"
TWO_COPIES = "two_copies"

SUBSET_GUARD = 200_000
PAIR_GUARD = 2_000_000

Region = tuple[int, ...]


@dataclass(frozen=True)
class PartitionPlan:
    """Best two-copy split: disjoint connected regions with their PSTs.

    ``region_x`` is the stronger copy's region.
    """

    region_x: Region
    region_y: Region
    pst_x: float
    pst_y: float
    circuit_x: PhysicalCircuit | None = None
    circuit_y: PhysicalCircuit | None = None


@dataclass(frozen=True)
class StptReport:
    stpt_one: float
    stpt_two: float
    gain_ratio: float
    recommendation: str
    plan: PartitionPlan
    n_partitions: int
    full_device_pst: float


def enumerate_partitions(
    snapshot: CalibrationSnapshot, k: int, *, guard: int = SUBSET_GUARD
) -> list[tuple[Region, Region]]:
    """All unordered pairs of disjoint connected k-qubit regions.

    Pairs are canonically ordered (each region sorted ascending, the
    lexicographically smaller region first, pairs sorted) so the result
    is deterministic.
    """
    n = snapshot.num_qubits
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if 2 * k > n:
        raise CapacityError(f"two regions of {k} qubits do not fit on {n} qubits")

    subsets: list[frozenset[int]] = []
    for sub in connected_subsets(snapshot, k):
        subsets.append(sub)
        if len(subsets) > guard:
            raise GuardError(
                f"more than {guard} connected {k}-qubit regions; enumeration guarded"
            )

    pairs: list[tuple[Region, Region]] = []
    if 2 * k == n:
        vertex_set = frozenset(range(n))
        members = set(subsets)
        for sub in subsets:
            if 0 not in sub:
                continue
            complement = vertex_set - sub
            if complement in members:
                pairs.append(_canonical_pair(sub, complement))
    else:
        if len(subsets) * len(subsets) > PAIR_GUARD:
            raise GuardError(
                f"{len(subsets)} regions give too many candidate pairs; enumeration guarded"
            )
        for i, a in enumerate(subsets):
            for b in subsets[i + 1 :]:
                if not (a & b):
                    pairs.append(_canonical_pair(a, b))
    pairs.sort()
    return pairs


def _canonical_pair(a: frozenset[int], b: frozenset[int]) -> tuple[Region, Region]:
    ta, tb = tuple(sorted(a)), tuple(sorted(b))
    return (ta, tb) if ta < tb else (tb, ta)


def compile_on_region(
    circuit: LogicalCircuit,
    snapshot: CalibrationSnapshot,
    region: Region,
    alloc_policy: AllocPolicy,
    route_policy: RoutePolicy,
) -> PhysicalCircuit:
    """Compile with allocation and routing confined to one region."""
    sub, _ = restrict_snapshot(snapshot, region)
    return compile_circuit(circuit, sub, alloc_policy, route_policy)


def evaluate_partitioning(
    circuit: LogicalCircuit,
    snapshot: CalibrationSnapshot,
    alloc_policy: AllocPolicy,
    route_policy: RoutePolicy,
    model: ErrorModel = ErrorModel(),
) -> StptReport:
    """Compare the best two-copy partition against one strong copy.

    The two-copy arm compiles the program independently on each region
    of every partition and keeps the pair maximizing PST_X + PST_Y. The
    one-copy arm may place the program anywhere, so its score is the
    best PST over the full-device compilation and every single region —
    its search space contains each copy's placement by construction.
    Recommendation goes to the higher STPT, ties to the single copy.
    """
    k = circuit.num_qubits
    pairs = enumerate_partitions(snapshot, k)
    if not pairs:
        raise CapacityError(
            f"device admits no pair of disjoint connected {k}-qubit regions"
        )

    compiled: dict[Region, PhysicalCircuit] = {}
    pst: dict[Region, float] = {}
    for pair in pairs:
        for region in pair:
            if region not in compiled:
                physical = compile_on_region(
                    circuit, snapshot, region, alloc_policy, route_policy
                )
                compiled[region] = physical
                pst[region] = analytic_pst(physical, model)

    best_pair = max(pairs, key=lambda p: (pst[p[0]] + pst[p[1]], tuple(map(_neg, p))))
    a, b = best_pair
    if (pst[a], a) >= (pst[b], b):
        strong, weak = a, b
    else:
        strong, weak = b, a
    plan = PartitionPlan(
        region_x=strong,
        region_y=weak,
        pst_x=pst[strong],
        pst_y=pst[weak],
        circuit_x=compiled[strong],
        circuit_y=compiled[weak],
    )
    stpt_two = pst[strong] + pst[weak]

    full = compile_circuit(circuit, snapshot, alloc_policy, route_policy)
    full_pst = analytic_pst(full, model)
    stpt_one = max(full_pst, max(pst.values()))

    gain_ratio = stpt_two / plan.pst_x if plan.pst_x > 0 else float("inf")
    recommendation = ONE_COPY if stpt_one >= stpt_two else TWO_COPIES
    return StptReport(
        stpt_one=stpt_one,
        stpt_two=stpt_two,
        gain_ratio=gain_ratio,
        recommendation=recommendation,
        plan=plan,
        n_partitions=len(pairs),
        full_device_pst=full_pst,
    )


def _neg(region: Region) -> tuple[int, ...]:
    return tuple(-x for x in region)
