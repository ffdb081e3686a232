"""Tests for the branching simulator and the arithmetic oracles."""

from __future__ import annotations

import numpy as np
import pytest

from qarith.app.core.arith import AdderSpec, ClaVariant, Family, hybrid_policy
from qarith.app.core.circuit import Circuit, GateKind
from qarith.app.core.config import SimulatorConfig
from qarith.app.core.errors import CapacityError, ShapeError
from qarith.app.core.expansion import ExpansionPolicy, Replacement
from qarith.app.core.simulator import (
    EquivMode,
    assert_equiv,
    simulate,
    verify_arithmetic,
)
from qarith.app.core.toffoli import DecompKind


def test_simulate_basis_permutation() -> None:
    circuit = Circuit().x(0).ccx(0, 1, 2)

    (branch,) = simulate(circuit, 0b010)

    assert branch.outcomes == []
    assert branch.probability == 1.0
    assert abs(branch.state[0b111]) == pytest.approx(1.0)


def test_measurement_forks_and_resets() -> None:
    circuit = Circuit().h(0).measure_z(0, 0).cx(1, 2)

    branches = simulate(circuit, 0b010)

    assert [branch.key for branch in branches] == [((0, 0),), ((0, 1),)]
    for branch in branches:
        assert branch.probability == pytest.approx(0.5)
        assert abs(branch.state[0b110]) == pytest.approx(1.0)


def test_zero_probability_branch_is_dropped() -> None:
    circuit = Circuit().measure_z(0, 0)

    assert len(simulate(circuit, 0)) == 1


def test_classical_control_fires_on_one() -> None:
    circuit = Circuit().x(0).measure_z(0, 0).classically(GateKind.X, (1,), 0)

    (branch,) = simulate(circuit, 0)

    assert branch.bits == {0: 1}
    assert abs(branch.state[0b10]) == pytest.approx(1.0)


def test_ry_rotates_toward_one() -> None:
    circuit = Circuit().ry(0, np.pi)

    (branch,) = simulate(circuit, 0)

    assert abs(branch.state[1]) == pytest.approx(1.0)


def test_width_cap_is_enforced() -> None:
    circuit = Circuit().cx(0, 5)

    with pytest.raises(CapacityError):
        simulate(circuit, 0, SimulatorConfig(width_cap=4))


def test_assert_equiv_rejects_undeclared_extra_wires() -> None:
    with pytest.raises(ShapeError):
        assert_equiv(Circuit().cx(0, 1), Circuit().cx(0, 1).x(2))


def test_assert_equiv_reports_counterexample() -> None:
    verdict = assert_equiv(Circuit().ccx(0, 1, 2), Circuit().cx(0, 2).x(1).x(1))

    assert not verdict.equal
    assert verdict.counterexample is not None
    assert verdict.max_deviation > 0.5


def test_global_phase_mode_ignores_a_common_phase() -> None:
    plain = Circuit().x(0)
    phased = Circuit().x(0).z(0).x(0).z(0).x(0)

    assert not assert_equiv(plain, phased).equal
    assert assert_equiv(plain, phased, EquivMode.GLOBAL_PHASE).equal


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("kind", [DecompKind.ST, DecompKind.A0T3, DecompKind.A4T1])
def test_ctrl_adder_is_exact_under_every_exact_lowering(
    n: int, kind: DecompKind
) -> None:
    verdict = verify_arithmetic(
        AdderSpec(n, Family.CTRL_RIPPLE), ExpansionPolicy(default=kind)
    )

    assert verdict.equal, verdict.counterexample
    assert verdict.checked == 2 * 4**n


@pytest.mark.parametrize("n", [2, 3])
def test_ctrl_adder_with_odb_holds_on_every_branch(n: int) -> None:
    policy = ExpansionPolicy(odb_enabled=True)

    verdict = verify_arithmetic(AdderSpec(n, Family.CTRL_RIPPLE), policy)

    assert verdict.equal, verdict.counterexample
    assert verdict.checked == 2 * 2 * 4**n


@pytest.mark.parametrize("replacement", list(Replacement))
def test_ctrl_adder_with_single_replacements(replacement: Replacement) -> None:
    policy = ExpansionPolicy(replacement=replacement, allow_relative_phase=True)

    verdict = verify_arithmetic(AdderSpec(2, Family.CTRL_RIPPLE), policy)

    assert verdict.equal, verdict.counterexample


@pytest.mark.parametrize("n", [2, 3])
def test_takahashi_adder(n: int) -> None:
    assert verify_arithmetic(AdderSpec(n, Family.TAKAHASHI)).equal
    assert verify_arithmetic(AdderSpec(n, Family.TAKAHASHI), ExpansionPolicy()).equal


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cla_adder(n: int) -> None:
    verdict = verify_arithmetic(AdderSpec(n, Family.CARRY_LOOKAHEAD))

    assert verdict.equal, verdict.counterexample


@pytest.mark.parametrize(
    "variant,n",
    [
        (ClaVariant.OONISHI_RTX, 4),
        (ClaVariant.EXACT_4AT1, 2),
        (ClaVariant.ALL_SEQUENTIAL_4AT1, 2),
    ],
)
def test_cla_variants(variant: ClaVariant, n: int) -> None:
    verdict = verify_arithmetic(AdderSpec(n, Family.CARRY_LOOKAHEAD, variant))

    assert verdict.equal, verdict.counterexample


def test_hybrid_multiplier() -> None:
    verdict = verify_arithmetic(AdderSpec(2, Family.MULTIPLIER), hybrid_policy())

    assert verdict.equal, verdict.counterexample
    assert verdict.checked == 16


def test_verify_respects_width_cap() -> None:
    with pytest.raises(CapacityError):
        verify_arithmetic(
            AdderSpec(3, Family.CTRL_RIPPLE),
            ExpansionPolicy(),
            SimulatorConfig(width_cap=8),
        )
