"""End-to-end compilation: allocate, then route every two-qubit gate.

Instructions are processed in program order. When a CNOT's endpoints are
not adjacent, the control's data is moved along the selected route by
SWAPs (3 CNOTs each) until it sits next to the target; the gate then
executes on the route's final edge. SWAPs permanently update the
program-to-physical mapping. Every emitted instruction carries the
failure probability of its physical location.
"""

from __future__ import annotations

from dataclasses import dataclass

from .allocator import AllocPolicy, Mapping, allocate
from .circuit import (
    LogicalCircuit,
    Measurement,
    OneQubitGate,
    decompose_swap,
)
from .device import CalibrationSnapshot
from .router import RoutePlanner, RoutePolicy

ORIGIN_ORIGINAL = "original"
ORIGIN_ROUTING = "routing_swap"

KIND_ONE_QUBIT = "one_qubit"
KIND_CNOT = "cnot"
KIND_MEASURE = "measure"


@dataclass(frozen=True)
class PhysicalInstruction:
    kind: str
    qubits: tuple[int, ...]
    failure_prob: float
    origin: str
    gate: str = ""
    params: str = ""
    cbit: int = -1


@dataclass(frozen=True)
class SwapOverhead:
    inserted_swaps: int
    overhead_ratio: float


@dataclass
class PhysicalCircuit:
    snapshot: CalibrationSnapshot
    name: str
    num_program_qubits: int
    num_cbits: int
    instructions: tuple[PhysicalInstruction, ...]
    initial_mapping: Mapping
    final_mapping: Mapping
    original_count: int
    inserted_swap_count: int

    def __len__(self) -> int:
        return len(self.instructions)


def compile_circuit(
    circuit: LogicalCircuit,
    snapshot: CalibrationSnapshot,
    alloc_policy: AllocPolicy,
    route_policy: RoutePolicy,
) -> PhysicalCircuit:
    """Compile a logical circuit onto a calibrated device."""
    initial = allocate(circuit, snapshot, alloc_policy)
    planner = RoutePlanner(snapshot, route_policy)

    forward = list(initial.forward)
    occupant: dict[int, int | None] = {p: None for p in range(snapshot.num_qubits)}
    for q, p in enumerate(forward):
        occupant[p] = q

    out: list[PhysicalInstruction] = []
    swaps = 0

    def apply_swap(a: int, b: int) -> None:
        error = snapshot.link_error(a, b)
        for x, y in decompose_swap(a, b):
            out.append(
                PhysicalInstruction(KIND_CNOT, (x, y), error, ORIGIN_ROUTING)
            )
        qa, qb = occupant[a], occupant[b]
        occupant[a], occupant[b] = qb, qa
        if qa is not None:
            forward[qa] = b
        if qb is not None:
            forward[qb] = a

    for ins in circuit.instructions:
        if isinstance(ins, OneQubitGate):
            p = forward[ins.qubit]
            out.append(
                PhysicalInstruction(
                    KIND_ONE_QUBIT,
                    (p,),
                    snapshot.calibration(p).single_qubit_error,
                    ORIGIN_ORIGINAL,
                    gate=ins.name,
                    params=ins.params,
                )
            )
        elif isinstance(ins, Measurement):
            p = forward[ins.qubit]
            out.append(
                PhysicalInstruction(
                    KIND_MEASURE,
                    (p,),
                    snapshot.calibration(p).readout_error,
                    ORIGIN_ORIGINAL,
                    cbit=ins.cbit,
                )
            )
        else:
            pc, pt = forward[ins.control], forward[ins.target]
            if not snapshot.has_link(pc, pt):
                route = planner.route(pc, pt)
                for a, b in route.edges()[:-1]:
                    apply_swap(a, b)
                    swaps += 1
                pc = route.path[-2]
            out.append(
                PhysicalInstruction(
                    KIND_CNOT,
                    (pc, pt),
                    snapshot.link_error(pc, pt),
                    ORIGIN_ORIGINAL,
                )
            )

    return PhysicalCircuit(
        snapshot=snapshot,
        name=circuit.name,
        num_program_qubits=circuit.num_qubits,
        num_cbits=circuit.num_cbits,
        instructions=tuple(out),
        initial_mapping=initial,
        final_mapping=Mapping(tuple(forward)),
        original_count=len(circuit.instructions),
        inserted_swap_count=swaps,
    )


def verify_semantics(
    logical: LogicalCircuit,
    physical: PhysicalCircuit,
    trace: list[str] | None = None,
) -> bool:
    """Check that the physical stream realizes the logical interaction order.

    Only the label permutation induced by routing SWAPs is simulated:
    each original instruction must act on the physical qubits currently
    holding its logical operands, in the original program order, and
    every CNOT must sit on a coupling link. On mismatch, returns False
    and appends a diagnostic to ``trace`` when one is supplied.
    """

    def fail(message: str) -> bool:
        if trace is not None:
            trace.append(message)
        return False

    snapshot = physical.snapshot
    position = list(physical.initial_mapping.forward)
    stream = physical.instructions
    logical_iter = iter(enumerate(logical.instructions))
    i = 0
    while i < len(stream):
        ins = stream[i]
        if ins.origin == ORIGIN_ROUTING:
            if i + 2 >= len(stream):
                return fail(f"instruction {i}: truncated SWAP expansion")
            triple = stream[i : i + 3]
            a, b = triple[0].qubits
            expected = decompose_swap(a, b)
            for t, (x, y) in zip(triple, expected):
                if t.kind != KIND_CNOT or t.origin != ORIGIN_ROUTING or t.qubits != (x, y):
                    return fail(f"instruction {i}: malformed SWAP expansion {triple}")
            if not snapshot.has_link(a, b):
                return fail(f"instruction {i}: SWAP on non-adjacent pair ({a}, {b})")
            for q in range(len(position)):
                if position[q] == a:
                    position[q] = b
                elif position[q] == b:
                    position[q] = a
            i += 3
            continue

        try:
            index, expected_ins = next(logical_iter)
        except StopIteration:
            return fail(f"instruction {i}: extra original instruction {ins}")
        if isinstance(expected_ins, OneQubitGate):
            ok = (
                ins.kind == KIND_ONE_QUBIT
                and ins.gate == expected_ins.name
                and ins.qubits == (position[expected_ins.qubit],)
            )
        elif isinstance(expected_ins, Measurement):
            ok = (
                ins.kind == KIND_MEASURE
                and ins.qubits == (position[expected_ins.qubit],)
                and ins.cbit == expected_ins.cbit
            )
        else:
            ok = (
                ins.kind == KIND_CNOT
                and ins.qubits
                == (position[expected_ins.control], position[expected_ins.target])
                and snapshot.has_link(*ins.qubits)
            )
        if not ok:
            return fail(
                f"instruction {i}: {ins} does not realize logical instruction "
                f"{index} ({expected_ins}) under mapping {position}"
            )
        i += 1

    leftover = next(logical_iter, None)
    if leftover is not None:
        return fail(f"logical instruction {leftover[0]} was never emitted")
    if position != list(physical.final_mapping.forward):
        return fail(
            f"final mapping mismatch: replay gives {position}, "
            f"circuit records {physical.final_mapping.forward}"
        )
    return True


def swap_overhead(physical: PhysicalCircuit) -> SwapOverhead:
    """Inserted SWAP count and inserted-to-original two-qubit op ratio."""
    inserted_cnots = sum(
        1 for ins in physical.instructions if ins.origin == ORIGIN_ROUTING
    )
    original_cnots = sum(
        1
        for ins in physical.instructions
        if ins.origin == ORIGIN_ORIGINAL and ins.kind == KIND_CNOT
    )
    ratio = inserted_cnots / original_cnots if original_cnots else 0.0
    return SwapOverhead(inserted_swaps=inserted_cnots // 3, overhead_ratio=ratio)


def physical_to_qasm(physical: PhysicalCircuit) -> str:
    """Serialize the compiled stream over physical qubit indices."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{physical.snapshot.num_qubits}];",
    ]
    if physical.num_cbits:
        lines.append(f"creg c[{physical.num_cbits}];")
    for ins in physical.instructions:
        if ins.kind == KIND_ONE_QUBIT:
            params = f"({ins.params})" if ins.params else ""
            lines.append(f"{ins.gate}{params} q[{ins.qubits[0]}];")
        elif ins.kind == KIND_CNOT:
            lines.append(f"cx q[{ins.qubits[0]}],q[{ins.qubits[1]}];")
        else:
            lines.append(f"measure q[{ins.qubits[0]}] -> c[{ins.cbit}];")
    return "\n".join(lines) + "\n"
