"""Logical circuit representation and a QASM 2.0 subset parser.

The accepted subset: one ``qreg``, optional ``creg``, the single-qubit
gates {h, x, y, z, s, t, rx, ry, rz, u1, u2, u3} (parameters kept as
opaque text), ``cx``, indexed ``measure``, and ``barrier`` as a no-op.
Gate semantics are deliberately not modeled: the failure analysis only
needs each instruction's class and location.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import QasmSyntaxError, UnsupportedConstructError

ONE_QUBIT_GATES = frozenset(
    {"h", "x", "y", "z", "s", "t", "rx", "ry", "rz", "u1", "u2", "u3"}
)
PARAMETRIC_GATES = frozenset({"rx", "ry", "rz", "u1", "u2", "u3"})

_UNSUPPORTED_LEADS = ("if", "gate", "opaque", "reset")


@dataclass(frozen=True)
class OneQubitGate:
    name: str
    qubit: int
    params: str = ""


@dataclass(frozen=True)
class TwoQubitGate:
    """A CNOT; the only two-qubit instruction in the IR."""

    control: int
    target: int


@dataclass(frozen=True)
class Measurement:
    qubit: int
    cbit: int


Instruction = OneQubitGate | TwoQubitGate | Measurement


@dataclass(frozen=True)
class LogicalCircuit:
    name: str
    num_qubits: int
    num_cbits: int
    instructions: tuple[Instruction, ...]

    def __len__(self) -> int:
        return len(self.instructions)


@dataclass(frozen=True)
class CircuitStats:
    total: int
    one_qubit: int
    two_qubit: int
    measure: int


_QARG = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\[(\d+)\]$")


def _split_statements(text: str) -> list[tuple[int, str]]:
    """Split source into (line, statement) pairs, dropping // comments."""
    statements = []
    buffer: list[str] = []
    start_line = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        for ch in line:
            # Braces open gate-definition bodies, which the subset
            # rejects; flushing on them lets the parser name the
            # construct instead of tripping over an unterminated tail.
            if ch in ";{}":
                stmt = "".join(buffer).strip()
                if stmt:
                    statements.append((start_line, stmt))
                buffer = []
                start_line = lineno
            else:
                if not buffer or not "".join(buffer).strip():
                    start_line = lineno
                buffer.append(ch)
        buffer.append(" ")
    trailing = "".join(buffer).strip()
    if trailing:
        raise QasmSyntaxError(f"statement missing ';': {trailing!r}", start_line)
    return statements


def _parse_qarg(token: str, register: str, size: int, line: int) -> int:
    match = _QARG.match(token.strip())
    if not match:
        raise QasmSyntaxError(f"expected an indexed register argument, got {token!r}", line)
    reg, idx = match.group(1), int(match.group(2))
    if reg != register:
        raise QasmSyntaxError(f"unknown register {reg!r} (declared: {register!r})", line)
    if idx >= size:
        raise QasmSyntaxError(f"index {idx} out of range for {register}[{size}]", line)
    return idx


def parse_qasm(text: str, name: str = "circuit") -> LogicalCircuit:
    """Parse the accepted OpenQASM 2.0 subset into a LogicalCircuit."""
    qreg: tuple[str, int] | None = None
    creg: tuple[str, int] | None = None
    instructions: list[Instruction] = []

    for line, stmt in _split_statements(text):
        head = stmt.split(None, 1)[0]
        if head == "OPENQASM":
            continue
        if head == "include":
            continue
        if head == "barrier":
            continue
        for lead in _UNSUPPORTED_LEADS:
            if head == lead or head.startswith(lead + "("):
                raise UnsupportedConstructError(f"{lead!r} statement", line)
        if head in ("qreg", "creg"):
            match = re.match(r"^(qreg|creg)\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[(\d+)\]$", stmt)
            if not match:
                raise QasmSyntaxError(f"malformed register declaration: {stmt!r}", line)
            reg = (match.group(2), int(match.group(3)))
            if head == "qreg":
                if qreg is not None:
                    raise UnsupportedConstructError("multiple qreg declarations", line)
                qreg = reg
            else:
                if creg is not None:
                    raise UnsupportedConstructError("multiple creg declarations", line)
                creg = reg
            continue

        if qreg is None:
            raise QasmSyntaxError(f"instruction before qreg declaration: {stmt!r}", line)
        qname, qsize = qreg

        if head == "measure":
            match = re.match(r"^measure\s+(.+?)\s*->\s*(.+)$", stmt)
            if not match:
                raise QasmSyntaxError(f"malformed measure: {stmt!r}", line)
            if creg is None:
                raise QasmSyntaxError("measure before creg declaration", line)
            qarg = match.group(1)
            if _QARG.match(qarg.strip()) is None and qarg.strip() == qname:
                raise UnsupportedConstructError("whole-register measure", line)
            q = _parse_qarg(qarg, qname, qsize, line)
            c = _parse_qarg(match.group(2), creg[0], creg[1], line)
            instructions.append(Measurement(q, c))
            continue

        if head == "cx" or head.startswith("cx("):
            body = stmt[2:].strip()
            args = [a for a in body.split(",")]
            if len(args) != 2:
                raise QasmSyntaxError(f"cx takes two arguments: {stmt!r}", line)
            control = _parse_qarg(args[0], qname, qsize, line)
            target = _parse_qarg(args[1], qname, qsize, line)
            if control == target:
                raise QasmSyntaxError("cx control and target must differ", line)
            instructions.append(TwoQubitGate(control, target))
            continue

        match = re.match(r"^([a-z][a-z0-9]*)\s*(\(([^)]*)\))?\s+(.+)$", stmt)
        if not match:
            raise QasmSyntaxError(f"unrecognized statement: {stmt!r}", line)
        gate, params, qarg = match.group(1), match.group(3) or "", match.group(4)
        if gate not in ONE_QUBIT_GATES:
            raise UnsupportedConstructError(f"gate {gate!r}", line)
        if params and gate not in PARAMETRIC_GATES:
            raise QasmSyntaxError(f"gate {gate!r} takes no parameters", line)
        if gate in PARAMETRIC_GATES and not params:
            raise QasmSyntaxError(f"gate {gate!r} requires parameters", line)
        q = _parse_qarg(qarg, qname, qsize, line)
        instructions.append(OneQubitGate(gate, q, params.strip()))

    if qreg is None:
        raise QasmSyntaxError("no qreg declaration found", 1)
    return LogicalCircuit(
        name=name,
        num_qubits=qreg[1],
        num_cbits=creg[1] if creg else 0,
        instructions=tuple(instructions),
    )


def parse_qasm_file(path, name: str | None = None) -> LogicalCircuit:
    from pathlib import Path

    p = Path(path)
    return parse_qasm(p.read_text(), name=name or p.stem)


def serialize_qasm(circuit: LogicalCircuit) -> str:
    """Emit the circuit back as QASM text in the accepted subset."""
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    if circuit.num_cbits:
        lines.append(f"creg c[{circuit.num_cbits}];")
    for ins in circuit.instructions:
        if isinstance(ins, OneQubitGate):
            params = f"({ins.params})" if ins.params else ""
            lines.append(f"{ins.name}{params} q[{ins.qubit}];")
        elif isinstance(ins, TwoQubitGate):
            lines.append(f"cx q[{ins.control}],q[{ins.target}];")
        else:
            lines.append(f"measure q[{ins.qubit}] -> c[{ins.cbit}];")
    return "\n".join(lines) + "\n"


def interaction_counts(circuit: LogicalCircuit, first_n: int | None = None) -> np.ndarray:
    """Symmetric matrix of two-qubit interaction counts per program-qubit pair.

    Only the first ``first_n`` instructions are scanned (all instruction
    kinds count toward the prefix length); ``None`` scans the whole
    program.
    """
    if first_n is not None and first_n < 0:
        raise ValueError(f"first_n must be >= 0, got {first_n}")
    counts = np.zeros((circuit.num_qubits, circuit.num_qubits), dtype=np.int64)
    prefix = circuit.instructions if first_n is None else circuit.instructions[:first_n]
    for ins in prefix:
        if isinstance(ins, TwoQubitGate):
            counts[ins.control, ins.target] += 1
            counts[ins.target, ins.control] += 1
    return counts


def decompose_swap(a: int, b: int) -> tuple[tuple[int, int], ...]:
    """Expand a SWAP of neighboring physical qubits into its 3 CNOTs."""
    return ((a, b), (b, a), (a, b))


def circuit_stats(circuit: LogicalCircuit) -> CircuitStats:
    one = sum(1 for i in circuit.instructions if isinstance(i, OneQubitGate))
    two = sum(1 for i in circuit.instructions if isinstance(i, TwoQubitGate))
    meas = sum(1 for i in circuit.instructions if isinstance(i, Measurement))
    return CircuitStats(total=len(circuit.instructions), one_qubit=one, two_qubit=two, measure=meas)
