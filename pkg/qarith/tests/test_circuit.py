"""Tests for the circuit representation and its text format."""

from __future__ import annotations

import math

import pytest

from qarith.app.core.circuit import (
    Circuit,
    GateKind,
    Operation,
    append,
    from_text,
    inverse,
    to_text,
)
from qarith.app.core.errors import MalformedOperationError


@pytest.mark.parametrize(
    "kwargs,message",
    [
        ({"kind": GateKind.CNOT, "qubits": (1, 1)}, "duplicate"),
        ({"kind": GateKind.TOFFOLI, "qubits": (0, 1)}, "expects 3"),
        ({"kind": GateKind.FANOUT, "qubits": (0,)}, "fanout"),
        ({"kind": GateKind.RY, "qubits": (0,), "angle": math.inf}, "finite"),
        ({"kind": GateKind.H, "qubits": (0,), "angle": 0.5}, "no angle"),
        ({"kind": GateKind.MEASURE_Z, "qubits": (0,)}, "one bit"),
        ({"kind": GateKind.X, "qubits": (0,), "cbits": (0,)}, "no classical"),
        ({"kind": GateKind.X, "qubits": (-1,)}, "negative"),
        (
            {"kind": GateKind.RELPHASE, "qubits": (0, 1, 2), "variant": "RT9"},
            "variant",
        ),
        (
            {
                "kind": GateKind.CLASSICAL,
                "qubits": (0,),
                "cbits": (0,),
                "inner": GateKind.MEASURE_Z,
            },
            "unitary",
        ),
    ],
)
def test_operation_rejects_malformed_input(kwargs, message) -> None:
    with pytest.raises(MalformedOperationError) as excinfo:
        Operation(**kwargs)

    assert message in str(excinfo.value)


def test_append_returns_new_circuit() -> None:
    circuit = Circuit().h(0)
    extended = append(circuit, Operation(GateKind.CNOT, (0, 1)))

    assert len(circuit) == 1
    assert len(extended) == 2
    assert extended.width == 2


def test_width_counts_declared_ancillae() -> None:
    circuit = Circuit(ancillae={5}).cx(0, 1)

    assert circuit.qubits == [0, 1, 5]
    assert circuit.width == 3
    assert circuit.num_qubits == 6


def test_writes_ignores_diagonal_gates_and_controls() -> None:
    assert Operation(GateKind.T, (0,)).writes == frozenset()
    assert Operation(GateKind.CZ, (0, 1)).writes == frozenset()
    assert Operation(GateKind.CNOT, (0, 1)).writes == {1}
    assert Operation(GateKind.FANOUT, (0, 1, 2)).writes == {1, 2}
    assert Operation(GateKind.TOFFOLI, (0, 1, 2)).writes == {2}


def test_fanout_counts_one_cnot_per_target() -> None:
    circuit = Circuit().fanout(0, (1, 2, 3))

    assert circuit.ops[0].cnot_weight == 3


def test_inverse_reverses_and_daggers() -> None:
    circuit = Circuit().h(0).t(0).s(1).ry(2, 0.25).cx(0, 1)

    undone = inverse(circuit)

    assert [op.kind for op in undone.ops] == [
        GateKind.CNOT,
        GateKind.RY,
        GateKind.SDG,
        GateKind.TDG,
        GateKind.H,
    ]
    assert undone.ops[1].angle == -0.25


def test_inverse_rejects_measurements() -> None:
    circuit = Circuit().measure_z(0, 0)

    with pytest.raises(MalformedOperationError):
        inverse(circuit)


def test_text_format_preserves_every_field() -> None:
    circuit = Circuit(ancillae={3}, name="demo")
    circuit.h(0).ry(1, -0.5).ccx(0, 1, 3, tag="head").relphase(0, 1, 2, "RT4")
    circuit.fanout(0, (1, 2)).measure_z(3, 0).classically(GateKind.CZ, (0, 1), 0)

    parsed = from_text(to_text(circuit))

    assert parsed.ops == circuit.ops
    assert parsed.ancillae == {3}


def test_from_text_skips_comments_and_reports_line_numbers() -> None:
    text = "# header\nANCILLA q2\nH q0  # trailing\n\nCNOT q0 q1\nFOO q1\n"

    with pytest.raises(MalformedOperationError) as excinfo:
        from_text(text)

    assert "line 6" in str(excinfo.value)
    assert from_text(text.rsplit("FOO", 1)[0]).width == 3


def test_to_text_writes_classical_control() -> None:
    circuit = Circuit().measure_x(2, 1).classically(GateKind.CZ, (0, 1), 1)

    assert to_text(circuit) == "MeasureX q2 -> c1\nCZ q0 q1 if c1\n"
    assert circuit.num_cbits == 2
