"""Dense state-vector simulation with measurement branching.

Qubit 0 is the least significant bit of a basis-state index. Every
measurement forks the running branches by outcome; branches of zero
probability are dropped. Measured wires are reset to |0>.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .arith import AdderSpec, Family, RegisterMap, build
from .circuit import MEASUREMENTS, Circuit, GateKind, Operation
from .config import SimulatorConfig
from .errors import CapacityError, ShapeError
from .expansion import ExpansionPolicy, expand
from .toffoli import DecompKind, fragment

logger = logging.getLogger(__name__)

_SQRT_HALF = 1 / math.sqrt(2)
_OMEGA = np.exp(1j * math.pi / 4)

_MATRICES: Dict[GateKind, np.ndarray] = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF,
}

_PHASES: Dict[GateKind, complex] = {
    GateKind.Z: -1,
    GateKind.S: 1j,
    GateKind.SDG: -1j,
    GateKind.T: _OMEGA,
    GateKind.TDG: np.conj(_OMEGA),
    GateKind.CZ: -1,
}


def _ry(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass
class BranchState:
    outcomes: List[Tuple[int, int]] = field(default_factory=list)
    probability: float = 1.0
    state: np.ndarray = field(default_factory=lambda: np.ones(1, dtype=complex))

    @property
    def key(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(self.outcomes)

    @property
    def bits(self) -> Dict[int, int]:
        return dict(self.outcomes)


class _Register:
    """State tensor of shape (2,) * width; wire q lives on axis width-1-q."""

    def __init__(self, width: int, tensor: np.ndarray) -> None:
        self.width = width
        self.tensor = tensor

    @classmethod
    def basis(cls, width: int, index: int) -> "_Register":
        flat = np.zeros(1 << width, dtype=complex)
        flat[index] = 1
        return cls(width, flat.reshape((2,) * width))

    def copy(self) -> "_Register":
        return _Register(self.width, self.tensor.copy())

    def index(self, fixed: Dict[int, int]) -> Tuple:
        slots: List[object] = [slice(None)] * self.width
        for wire, value in fixed.items():
            slots[self.width - 1 - wire] = value
        return tuple(slots)

    def matrix(
        self, target: int, matrix: np.ndarray, controls: Sequence[int] = ()
    ) -> None:
        on = {c: 1 for c in controls}
        low, high = self.index({**on, target: 0}), self.index({**on, target: 1})
        zero, one = self.tensor[low].copy(), self.tensor[high].copy()
        self.tensor[low] = matrix[0, 0] * zero + matrix[0, 1] * one
        self.tensor[high] = matrix[1, 0] * zero + matrix[1, 1] * one

    def flip(self, target: int, controls: Sequence[int] = ()) -> None:
        on = {c: 1 for c in controls}
        low, high = self.index({**on, target: 0}), self.index({**on, target: 1})
        swap = self.tensor[low].copy()
        self.tensor[low] = self.tensor[high]
        self.tensor[high] = swap

    def phase(self, wires: Sequence[int], factor: complex) -> None:
        self.tensor[self.index({w: 1 for w in wires})] *= factor

    def weight(self, wire: int) -> float:
        return float(np.sum(np.abs(self.tensor[self.index({wire: 1})]) ** 2))

    def collapse(self, wire: int, outcome: int, probability: float) -> None:
        """Keep ``outcome`` on ``wire``, move it to |0>, renormalise."""

        low, high = self.index({wire: 0}), self.index({wire: 1})
        if outcome:
            self.tensor[low] = self.tensor[high]
        self.tensor[high] = 0
        self.tensor /= math.sqrt(probability)

    def flat(self) -> np.ndarray:
        return self.tensor.reshape(-1)


def _apply(register: _Register, op: Operation) -> None:
    gate, qubits = op.gate, op.qubits
    if gate in _PHASES:
        register.phase(qubits, _PHASES[gate])
    elif gate in _MATRICES:
        register.matrix(qubits[0], _MATRICES[gate])
    elif gate is GateKind.RY:
        register.matrix(qubits[0], _ry(op.angle))  # type: ignore[arg-type]
    elif gate is GateKind.CRY:
        register.matrix(qubits[1], _ry(op.angle), qubits[:1])  # type: ignore[arg-type]
    elif gate in (GateKind.CNOT, GateKind.TOFFOLI):
        register.flip(qubits[-1], qubits[:-1])
    elif gate is GateKind.FANOUT:
        for target in qubits[1:]:
            register.flip(target, qubits[:1])
    elif gate is GateKind.RELPHASE:
        piece = fragment(DecompKind.from_variant(op.variant or ""))
        for inner in piece.ops:
            _apply(register, inner.remap(qubits))
    else:  # pragma: no cover - measurement kinds are handled by the caller
        raise ValueError(f"cannot apply {gate.value} as a unitary")


def _check_width(circuit: Circuit, cap: int) -> int:
    width = circuit.num_qubits
    if width > cap:
        raise CapacityError(f"circuit needs {width} qubits, cap is {cap}")
    return width


def simulate(
    circuit: Circuit,
    basis_index: int,
    config: Optional[SimulatorConfig] = None,
    width: Optional[int] = None,
) -> List[BranchState]:
    """Run ``circuit`` on one computational basis state.

    ``width`` widens the register beyond the circuit's own wires, which lets
    two circuits be compared over the same index space.
    """

    config = config or SimulatorConfig()
    size = max(_check_width(circuit, config.width_cap), width or 0)
    if size > config.width_cap:
        raise CapacityError(f"circuit needs {size} qubits, cap is {config.width_cap}")
    if not 0 <= basis_index < (1 << size):
        raise ShapeError(f"basis index {basis_index} outside {size} qubits")

    branches: List[Tuple[_Register, float, List[Tuple[int, int]]]] = [
        (_Register.basis(size, basis_index), 1.0, [])
    ]
    for op in circuit.ops:
        if op.kind in MEASUREMENTS:
            wire, bit = op.qubits[0], op.cbits[0]
            forked = []
            for register, probability, outcomes in branches:
                if op.kind is GateKind.MEASURE_X:
                    register.matrix(wire, _MATRICES[GateKind.H])
                one = register.weight(wire)
                for outcome, weight in ((0, 1 - one), (1, one)):
                    if weight <= config.probability_tolerance:
                        continue
                    child = register.copy()
                    child.collapse(wire, outcome, weight)
                    forked.append((child, probability * weight, [*outcomes, (bit, outcome)]))
            branches = forked
        elif op.kind is GateKind.CLASSICAL:
            for register, _, outcomes in branches:
                if dict(outcomes).get(op.cbits[0], 0):
                    _apply(register, op)
        else:
            for register, _, _ in branches:
                _apply(register, op)

    result = [
        BranchState(outcomes, probability, register.flat())
        for register, probability, outcomes in branches
    ]
    total = sum(branch.probability for branch in result)
    if abs(total - 1) > config.probability_tolerance:
        logger.warning("branch probabilities sum to %.12f", total)
    for branch in result:
        norm = float(np.linalg.norm(branch.state))
        if abs(norm - 1) > max(config.norm_tolerance, 1e-9):
            logger.warning("branch %s has norm %.15f", branch.key, norm)
    return result


class EquivMode(str, Enum):
    EXACT = "exact"
    GLOBAL_PHASE = "global-phase"
    RELATIVE_PHASE_ON_SUBSPACE = "relative-phase"


@dataclass
class Verdict:
    equal: bool
    max_deviation: float = 0.0
    checked: int = 0
    counterexample: Optional[Dict[str, object]] = None

    def snapshot(self) -> Dict[str, object]:
        return {
            "equal": self.equal,
            "max_deviation": self.max_deviation,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }


def _domain(width: int, zero_wires: Sequence[int]) -> Iterator[int]:
    mask = sum(1 << w for w in zero_wires)
    for index in range(1 << width):
        if not index & mask:
            yield index


def _pair_branches(
    left: List[BranchState], right: List[BranchState]
) -> Optional[List[Tuple[BranchState, BranchState]]]:
    if len(right) == 1 and not right[0].outcomes:
        return [(branch, right[0]) for branch in left]
    if len(left) == 1 and not left[0].outcomes:
        return [(left[0], branch) for branch in right]
    by_key = {branch.key: branch for branch in right}
    if set(by_key) != {branch.key for branch in left}:
        return None
    return [(branch, by_key[branch.key]) for branch in left]


def assert_equiv(
    circ_a: Circuit,
    circ_b: Circuit,
    mode: EquivMode = EquivMode.EXACT,
    zero_wires: Sequence[int] = (),
    config: Optional[SimulatorConfig] = None,
) -> Verdict:
    """Compare two circuits on every basis input of their common register.

    Declared ancillae of either circuit, plus ``zero_wires``, are held at |0>
    on input. Wires that only one circuit touches must be declared ancillae of
    that circuit. Branching circuits are compared branch by branch against a
    deterministic partner, or outcome by outcome against another branching
    circuit.
    """

    config = config or SimulatorConfig()
    wires_a, wires_b = set(circ_a.qubits), set(circ_b.qubits)
    stray = (wires_a ^ wires_b) - (circ_a.ancillae | circ_b.ancillae)
    if stray:
        raise ShapeError(f"wires {sorted(stray)} appear in only one circuit")
    width = max(circ_a.num_qubits, circ_b.num_qubits)
    fixed = sorted(circ_a.ancillae | circ_b.ancillae | set(zero_wires))

    pairs: List[Tuple[int, BranchState, BranchState]] = []
    for index in _domain(width, fixed):
        left = simulate(circ_a, index, config, width)
        right = simulate(circ_b, index, config, width)
        matched = _pair_branches(left, right)
        if matched is None:
            return Verdict(
                equal=False,
                max_deviation=math.inf,
                counterexample={"input": index, "reason": "measurement outcomes differ"},
            )
        pairs.extend((index, a, b) for a, b in matched)

    phase = 1 + 0j
    if mode is EquivMode.GLOBAL_PHASE:
        overlap = sum(np.vdot(b.state, a.state) for _, a, b in pairs)
        phase = overlap / abs(overlap) if abs(overlap) > 0 else 1

    verdict = Verdict(equal=True, checked=len(pairs))
    for index, a, b in pairs:
        local = phase
        if mode is EquivMode.RELATIVE_PHASE_ON_SUBSPACE:
            overlap = np.vdot(b.state, a.state)
            local = overlap / abs(overlap) if abs(overlap) > 0 else 1
        deviation = float(np.max(np.abs(a.state - local * b.state)))
        if deviation > verdict.max_deviation:
            verdict.max_deviation = deviation
            if deviation > 1e-9:
                verdict.equal = False
                verdict.counterexample = {
                    "input": index,
                    "outcomes": list(a.outcomes),
                    "deviation": deviation,
                }
    logger.info(
        "equivalence %s over %d branch pairs: %s (max deviation %.3g)",
        mode.value,
        verdict.checked,
        verdict.equal,
        verdict.max_deviation,
    )
    return verdict


def _pack(assignments: Sequence[Tuple[Sequence[int], int]]) -> int:
    index = 0
    for wires, value in assignments:
        for position, wire in enumerate(wires):
            if (value >> position) & 1:
                index |= 1 << wire
    return index


def _cases(
    spec: AdderSpec, registers: RegisterMap
) -> Iterator[Tuple[Dict[str, int], int, int]]:
    """(operands, input index, expected output index) for every operand choice."""

    n = spec.n
    top = 1 << n
    controls = (0, 1) if spec.family is Family.CTRL_RIPPLE else (1,)
    for ctrl in controls:
        for a in range(top):
            for b in range(top):
                operands = {"a": a, "b": b}
                before = [(registers.a, a), (registers.b, b)]
                if spec.family is Family.MULTIPLIER:
                    after = before + [(registers.product, a * b)]
                else:
                    total = b + ctrl * a
                    after = [
                        (registers.a, a),
                        (registers.b, total % top),
                        ([registers.carry], total >> n),  # type: ignore[list-item]
                    ]
                if registers.control is not None:
                    operands["ctrl"] = ctrl
                    before.append(([registers.control], ctrl))
                    after.append(([registers.control], ctrl))
                yield operands, _pack(before), _pack(after)


def verify_arithmetic(
    spec: AdderSpec,
    policy: Optional[ExpansionPolicy] = None,
    config: Optional[SimulatorConfig] = None,
) -> Verdict:
    """Check the (expanded) circuit against classical arithmetic on every input.

    Every measurement branch must land on the expected basis state, with all
    ancillae back in |0>, to within the configured fidelity tolerance.
    """

    config = config or SimulatorConfig()
    circuit, registers = build(spec)
    if policy is not None:
        circuit = expand(circuit, policy)
    _check_width(circuit, config.width_cap)

    verdict = Verdict(equal=True)
    for operands, source, expected in _cases(spec, registers):
        for branch in simulate(circuit, source, config):
            verdict.checked += 1
            fidelity = float(abs(branch.state[expected]) ** 2)
            deviation = 1 - fidelity
            if deviation > verdict.max_deviation:
                verdict.max_deviation = deviation
            if deviation > config.fidelity_tolerance and verdict.equal:
                verdict.equal = False
                verdict.counterexample = {
                    "operands": operands,
                    "outcomes": list(branch.outcomes),
                    "deviation": deviation,
                }
    log = logger.info if verdict.equal else logger.warning
    log(
        "verified %s n=%d over %d branches: %s",
        spec.family.value,
        spec.n,
        verdict.checked,
        "pass" if verdict.equal else "FAIL",
    )
    return verdict
