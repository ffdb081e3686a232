"""Tests for the arithmetic circuit builders."""

from __future__ import annotations

import pytest

from qarith.app.core.arith import (
    HEAD_TAG,
    PROPAGATE_TAG,
    AdderSpec,
    ClaVariant,
    Family,
    build,
    build_cla_adder,
    build_ctrl_adder,
    build_multiplier,
    build_takahashi_adder,
    hybrid_policy,
    propagate_wires,
)
from qarith.app.core.circuit import GateKind
from qarith.app.core.errors import PolicyError, UnsupportedWidthError
from qarith.app.core.expansion import ExpansionPolicy, expand
from qarith.app.core.schedule import report
from qarith.app.core.toffoli import DecompKind
from qarith.app.services.resources import adder_formulas, multiplier_formulas


@pytest.mark.parametrize("n", [2, 3, 4, 8])
def test_ctrl_adder_gate_counts(n: int) -> None:
    circuit, registers = build_ctrl_adder(n)

    assert circuit.count(GateKind.TOFFOLI) == 3 * n + 2
    assert circuit.count(GateKind.CNOT) == 2 * (2 * n - 3)
    assert report(circuit).depth == 5 * n - 1
    assert circuit.width == 2 * n + 3
    assert registers.control == 0
    assert registers.carry == 2 * n + 1


@pytest.mark.parametrize("n", [2, 5])
def test_takahashi_adder_is_ancilla_free(n: int) -> None:
    circuit, registers = build_takahashi_adder(n)

    assert circuit.ancillae == set()
    assert circuit.width == 2 * n + 1
    assert circuit.count(GateKind.TOFFOLI) == 2 * n - 1
    assert registers.carry == 2 * n


@pytest.mark.parametrize("n,toffolis", [(4, 15), (8, 46), (16, 117)])
def test_cla_toffoli_counts(n: int, toffolis: int) -> None:
    circuit, _ = build_cla_adder(n)

    assert circuit.count(GateKind.TOFFOLI) == toffolis


@pytest.mark.parametrize("n", [2, 3, 4, 8, 16])
def test_cla_width_is_three_n_plus_propagate_wires(n: int) -> None:
    circuit, registers = build_cla_adder(n)

    assert circuit.width == 3 * n + propagate_wires(n)
    assert registers.carry == 3 * n - 1
    assert len(registers.ancillae) == n - 1 + propagate_wires(n)


def test_cla_width_at_four_bits() -> None:
    circuit, _ = build_cla_adder(4)

    assert circuit.width == 13
    assert PROPAGATE_TAG in circuit.tags


def test_cla_rtx_variant_uses_measurement_uncompute() -> None:
    circuit, registers = build_cla_adder(8, ClaVariant.OONISHI_RTX)
    result = report(circuit)

    assert circuit.count(GateKind.TOFFOLI) == 0
    assert result.measurement_count > 0
    assert result.measurement_count == result.cz_count
    assert result.width == 3 * 8 + propagate_wires(8)
    assert registers.ancillae == sorted(circuit.ancillae)


def test_cla_four_ancilla_variant_adds_ancilla_blocks() -> None:
    plain, _ = build_cla_adder(8)
    lowered, _ = build_cla_adder(8, ClaVariant.EXACT_4AT1)

    result = report(lowered)

    assert result.t_count == 7 * plain.count(GateKind.TOFFOLI)
    assert result.width > plain.width
    assert (result.width - plain.width) % 4 == 0


def test_multiplier_layout_and_counts() -> None:
    n = 4
    circuit, registers = build_multiplier(n)

    assert registers.product == list(range(2 * n, 4 * n))
    assert circuit.width == 4 * n + 1
    assert circuit.count(GateKind.TOFFOLI) == 3 * n * n - 2
    assert circuit.count(GateKind.FANOUT) == 2
    head = [op for op in circuit.ops if op.tag == HEAD_TAG]
    assert len(head) == n
    assert report(circuit).depth > 0
    wires = [set(op.qubits) for op in head]
    assert all(not (x & y) for i, x in enumerate(wires) for y in wires[i + 1 :])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hybrid_multiplier_matches_formulas(n: int) -> None:
    circuit, _ = build_multiplier(n)

    result = report(expand(circuit, hybrid_policy()))
    expected = multiplier_formulas(n)

    assert result.t_count == 7 * (3 * n * n - 2)
    assert result.width == expected["Qub"]


@pytest.mark.parametrize("n,scheduled,closed_form", [(2, 69, 67), (4, 315, 319)])
def test_hybrid_multiplier_scheduled_depth(
    n: int, scheduled: int, closed_form: int
) -> None:
    circuit, _ = build_multiplier(n)

    result = report(expand(circuit, hybrid_policy()))

    assert result.depth == scheduled
    assert multiplier_formulas(n)["D"] == closed_form


@pytest.mark.parametrize(
    "kind,legacy,depths",
    [
        (DecompKind.A0T3, True, {4: 145, 8: 273, 12: 401}),
        (DecompKind.A4T1, False, {4: 103, 8: 195, 12: 287}),
    ],
)
def test_expanded_ctrl_adder_depth_matches_formula(kind, legacy, depths) -> None:
    policy = ExpansionPolicy(default=kind, use_legacy_0at3_depth=legacy)
    for n, depth in depths.items():
        circuit, _ = build_ctrl_adder(n)

        result = report(expand(circuit, policy))

        assert result.depth == depth
        assert adder_formulas(n, kind)["D"] == depth


@pytest.mark.parametrize("n", list(range(2, 13)))
def test_expanded_ctrl_adder_cnot_counts(n: int) -> None:
    circuit, _ = build_ctrl_adder(n)

    exact = report(expand(circuit, ExpansionPolicy()))
    zero = report(expand(circuit, ExpansionPolicy(default=DecompKind.A0T3)))

    assert exact.cnot_count == 52 * n + 26
    assert zero.cnot_count == 25 * n + 8
    assert exact.t_depth == 3 * n + 2
    assert exact.width == adder_formulas(n, DecompKind.A4T1)["Qub"]


def test_build_dispatches_by_family() -> None:
    circuit, registers = build(AdderSpec(3, Family.TAKAHASHI))

    assert circuit.name == "takahashi-3"
    assert registers.a == [0, 1, 2]


@pytest.mark.parametrize(
    "builder",
    [build_ctrl_adder, build_takahashi_adder, build_cla_adder, build_multiplier],
)
def test_builders_reject_width_one(builder) -> None:
    with pytest.raises(UnsupportedWidthError):
        builder(1)


def test_variant_only_applies_to_lookahead() -> None:
    with pytest.raises(PolicyError):
        AdderSpec(4, Family.CTRL_RIPPLE, ClaVariant.EXACT_4AT1)
