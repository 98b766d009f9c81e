import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from variaq.circuit import (
    LogicalCircuit,
    Measurement,
    OneQubitGate,
    TwoQubitGate,
    circuit_stats,
    decompose_swap,
    interaction_counts,
    parse_qasm,
    serialize_qasm,
)
from variaq.errors import QasmSyntaxError, UnsupportedConstructError


class TestParseQasm:
    def test_single_cx(self):
        circuit = parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\n")
        assert circuit.num_qubits == 2
        assert circuit.instructions == (TwoQubitGate(0, 1),)

    def test_empty_body(self):
        circuit = parse_qasm('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[4];\ncreg c[4];\n')
        assert circuit.num_qubits == 4
        assert circuit.instructions == ()

    def test_gates_and_measure(self):
        text = """
        OPENQASM 2.0;
        qreg q[3];
        creg c[3];
        h q[0];
        rx(pi/2) q[1];
        cx q[0],q[2];
        barrier q;
        measure q[2] -> c[2];
        """
        circuit = parse_qasm(text)
        assert circuit.instructions == (
            OneQubitGate("h", 0),
            OneQubitGate("rx", 1, "pi/2"),
            TwoQubitGate(0, 2),
            Measurement(2, 2),
        )

    def test_comments_ignored(self):
        circuit = parse_qasm("OPENQASM 2.0;\nqreg q[1]; // register\n// nothing\nx q[0];\n")
        assert circuit.instructions == (OneQubitGate("x", 0),)

    def test_syntax_error_carries_line(self):
        with pytest.raises(QasmSyntaxError) as err:
            parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0];\n")
        assert err.value.line == 3

    def test_classical_control_unsupported(self):
        with pytest.raises(UnsupportedConstructError, match="'if'"):
            parse_qasm("OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nif(c==1) x q[0];\n")

    def test_gate_definition_unsupported(self):
        with pytest.raises(UnsupportedConstructError, match="'gate'"):
            parse_qasm("OPENQASM 2.0;\nqreg q[1];\ngate foo a { x a; }\n")

    def test_unknown_gate_named(self):
        with pytest.raises(UnsupportedConstructError, match="'ccx'"):
            parse_qasm("OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1];\n")

    def test_out_of_range_index(self):
        with pytest.raises(QasmSyntaxError, match="out of range"):
            parse_qasm("OPENQASM 2.0;\nqreg q[2];\nx q[5];\n")

    def test_missing_semicolon(self):
        with pytest.raises(QasmSyntaxError, match="missing"):
            parse_qasm("OPENQASM 2.0;\nqreg q[2];\nx q[0]\n")

    def test_instruction_count_matches_statements(self):
        text = "OPENQASM 2.0;\nqreg q[2];\n" + "h q[0];\n" * 7 + "cx q[0],q[1];\n"
        assert len(parse_qasm(text)) == 8


class TestRoundTrip:
    def test_parse_serialize_parse_fixed_point(self):
        text = (
            "OPENQASM 2.0;\nqreg q[3];\ncreg c[3];\n"
            "h q[0];\nu3(0.1,0.2,0.3) q[1];\ncx q[1],q[2];\nmeasure q[0] -> c[0];\n"
        )
        once = parse_qasm(text)
        twice = parse_qasm(serialize_qasm(once))
        assert once.instructions == twice.instructions
        assert serialize_qasm(once) == serialize_qasm(twice)

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_random_circuits_round_trip(self, data):
        n = data.draw(st.integers(2, 6))
        instructions = []
        for _ in range(data.draw(st.integers(0, 30))):
            kind = data.draw(st.sampled_from(["1q", "cx", "measure"]))
            if kind == "1q":
                gate = data.draw(st.sampled_from(["h", "x", "s", "rz"]))
                params = "1.5" if gate == "rz" else ""
                instructions.append(OneQubitGate(gate, data.draw(st.integers(0, n - 1)), params))
            elif kind == "cx":
                a = data.draw(st.integers(0, n - 1))
                b = data.draw(st.integers(0, n - 2))
                instructions.append(TwoQubitGate(a, b if b < a else b + 1))
            else:
                q = data.draw(st.integers(0, n - 1))
                instructions.append(Measurement(q, q))
        circuit = LogicalCircuit("fuzz", n, n, tuple(instructions))
        assert parse_qasm(serialize_qasm(circuit)).instructions == circuit.instructions


class TestInteractionCounts:
    def test_one_qubit_only_circuit(self):
        circuit = parse_qasm("OPENQASM 2.0;\nqreg q[3];\nh q[0];\nx q[1];\n")
        assert not interaction_counts(circuit).any()

    def test_hand_counts(self):
        circuit = LogicalCircuit(
            "c", 3, 0, (TwoQubitGate(0, 1), TwoQubitGate(0, 1), TwoQubitGate(1, 2))
        )
        counts = interaction_counts(circuit)
        assert counts[0, 1] == counts[1, 0] == 2
        assert counts[1, 2] == counts[2, 1] == 1
        assert counts[0, 2] == 0

    def test_prefix_cuts_counting(self):
        circuit = LogicalCircuit(
            "c", 3, 0, (TwoQubitGate(0, 1), TwoQubitGate(0, 1), TwoQubitGate(1, 2))
        )
        counts = interaction_counts(circuit, first_n=2)
        assert counts[0, 1] == 2
        assert counts[1, 2] == 0

    def test_zero_prefix_is_zero_matrix(self):
        circuit = LogicalCircuit("c", 3, 0, (TwoQubitGate(0, 1),))
        assert not interaction_counts(circuit, first_n=0).any()

    def test_monotone_in_prefix_length(self):
        rng = np.random.default_rng(7)
        instructions = tuple(
            TwoQubitGate(int(a), int(b))
            for a, b in ((rng.integers(4), (rng.integers(3) + 1)) for _ in range(20))
            if a != b
        ) or (TwoQubitGate(0, 1),)
        circuit = LogicalCircuit("c", 5, 0, instructions)
        previous = interaction_counts(circuit, first_n=0)
        for n in range(1, len(instructions) + 1):
            current = interaction_counts(circuit, first_n=n)
            assert (current >= previous).all()
            previous = current


class TestDecomposeSwap:
    def test_worked_pattern(self):
        assert decompose_swap(3, 4) == ((3, 4), (4, 3), (3, 4))

    def test_length_three(self):
        assert len(decompose_swap(0, 1)) == 3

    def test_permutation_semantics(self):
        # Tracked labels: each CNOT(a, b) of a SWAP expansion, replayed as
        # a classical XOR network, exchanges the two labels.
        for a, b in [(0, 1), (5, 2)]:
            state = {a: "A", b: "B"}
            xor = {a: {a}, b: {b}}
            for control, target in decompose_swap(a, b):
                xor[target] = xor[target] ^ xor[control]
            assert xor[a] == {b} and xor[b] == {a}


class TestCircuitStats:
    def test_empty(self):
        stats = circuit_stats(LogicalCircuit("e", 2, 0, ()))
        assert (stats.total, stats.one_qubit, stats.two_qubit, stats.measure) == (0, 0, 0, 0)

    def test_mixed(self):
        circuit = LogicalCircuit(
            "m", 2, 2, (TwoQubitGate(0, 1), OneQubitGate("h", 0), Measurement(0, 0))
        )
        stats = circuit_stats(circuit)
        assert (stats.total, stats.one_qubit, stats.two_qubit, stats.measure) == (3, 1, 1, 1)

    def test_counts_partition_total(self):
        circuit = LogicalCircuit(
            "p", 3, 3,
            (OneQubitGate("h", 0), TwoQubitGate(0, 1), Measurement(1, 1), OneQubitGate("x", 2)),
        )
        stats = circuit_stats(circuit)
        assert stats.one_qubit + stats.two_qubit + stats.measure == stats.total == 4
