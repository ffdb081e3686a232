"""Gate-level circuit representation and its line-oriented text format."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import MalformedOperationError


class GateKind(str, Enum):
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    S = "S"
    SDG = "Sdg"
    T = "T"
    TDG = "Tdg"
    RY = "Ry"
    CNOT = "CNOT"
    FANOUT = "FanoutCNOT"
    CZ = "CZ"
    CRY = "CRy"
    TOFFOLI = "Toffoli"
    RELPHASE = "RelPhaseToffoli"
    MEASURE_X = "MeasureX"
    MEASURE_Z = "MeasureZ"
    CLASSICAL = "CC"


RELPHASE_VARIANTS = ("RT3", "RT4", "AND", "BARENCO")

_ARITY: Dict[GateKind, int] = {
    GateKind.X: 1,
    GateKind.Y: 1,
    GateKind.Z: 1,
    GateKind.H: 1,
    GateKind.S: 1,
    GateKind.SDG: 1,
    GateKind.T: 1,
    GateKind.TDG: 1,
    GateKind.RY: 1,
    GateKind.CNOT: 2,
    GateKind.CZ: 2,
    GateKind.CRY: 2,
    GateKind.TOFFOLI: 3,
    GateKind.RELPHASE: 3,
    GateKind.MEASURE_X: 1,
    GateKind.MEASURE_Z: 1,
}

T_KINDS: FrozenSet[GateKind] = frozenset({GateKind.T, GateKind.TDG})
MEASUREMENTS: FrozenSet[GateKind] = frozenset(
    {GateKind.MEASURE_X, GateKind.MEASURE_Z}
)
ANGLED: FrozenSet[GateKind] = frozenset({GateKind.RY, GateKind.CRY})
DIAGONAL: FrozenSet[GateKind] = frozenset(
    {GateKind.Z, GateKind.S, GateKind.SDG, GateKind.T, GateKind.TDG, GateKind.CZ}
)
OPAQUE: FrozenSet[GateKind] = frozenset({GateKind.TOFFOLI, GateKind.RELPHASE})

_DAGGER: Dict[GateKind, GateKind] = {
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
}
_SELF_INVERSE: FrozenSet[GateKind] = frozenset(
    {
        GateKind.X,
        GateKind.Y,
        GateKind.Z,
        GateKind.H,
        GateKind.CNOT,
        GateKind.FANOUT,
        GateKind.CZ,
        GateKind.TOFFOLI,
    }
)


@dataclass(frozen=True)
class Operation:
    kind: GateKind
    qubits: Tuple[int, ...]
    cbits: Tuple[int, ...] = ()
    angle: Optional[float] = None
    inner: Optional[GateKind] = None
    variant: Optional[str] = None
    tag: Optional[str] = None

    def __post_init__(self) -> None:
        if any(q < 0 for q in self.qubits):
            raise MalformedOperationError(f"negative qubit id in {self.kind.value}")
        if len(set(self.qubits)) != len(self.qubits):
            raise MalformedOperationError(
                f"duplicate qubit in {self.kind.value} {list(self.qubits)}"
            )
        gate = self.inner if self.kind is GateKind.CLASSICAL else self.kind
        if self.kind is GateKind.CLASSICAL:
            if gate is None or gate in MEASUREMENTS or gate in OPAQUE:
                raise MalformedOperationError(
                    "classically controlled gate needs a unitary inner gate"
                )
            if gate is GateKind.CLASSICAL:
                raise MalformedOperationError("nested classical control")
            if len(self.cbits) != 1:
                raise MalformedOperationError("classical control reads one bit")
        elif self.kind in MEASUREMENTS:
            if len(self.cbits) != 1:
                raise MalformedOperationError("measurement writes one bit")
        elif self.cbits:
            raise MalformedOperationError(f"{self.kind.value} takes no classical bits")

        if gate is GateKind.FANOUT:
            if len(self.qubits) < 2:
                raise MalformedOperationError("fanout needs a control and a target")
        elif len(self.qubits) != _ARITY[gate]:
            raise MalformedOperationError(
                f"{gate.value} expects {_ARITY[gate]} qubits, got {len(self.qubits)}"
            )
        if gate in ANGLED:
            if self.angle is None or not math.isfinite(self.angle):
                raise MalformedOperationError(f"{gate.value} needs a finite angle")
        elif self.angle is not None:
            raise MalformedOperationError(f"{gate.value} takes no angle")
        if self.kind is GateKind.RELPHASE:
            if self.variant not in RELPHASE_VARIANTS:
                raise MalformedOperationError(
                    f"unknown relative-phase variant {self.variant!r}"
                )
        elif self.variant is not None:
            raise MalformedOperationError(f"{self.kind.value} takes no variant")

    @property
    def gate(self) -> GateKind:
        """The gate applied to the qubits, looking through classical control."""

        return self.inner if self.kind is GateKind.CLASSICAL else self.kind  # type: ignore[return-value]

    @property
    def is_t(self) -> bool:
        return self.kind in T_KINDS

    @property
    def cnot_weight(self) -> int:
        if self.gate is GateKind.CNOT:
            return 1
        if self.gate is GateKind.FANOUT:
            return len(self.qubits) - 1
        return 0

    @property
    def writes(self) -> FrozenSet[int]:
        """Qubits whose computational-basis value the operation may change."""

        gate = self.gate
        if gate in DIAGONAL:
            return frozenset()
        if gate in (GateKind.CNOT, GateKind.CRY):
            return frozenset(self.qubits[1:])
        if gate is GateKind.FANOUT:
            return frozenset(self.qubits[1:])
        if gate in OPAQUE:
            return frozenset(self.qubits[2:])
        return frozenset(self.qubits)

    def dagger(self) -> "Operation":
        if self.kind in _SELF_INVERSE:
            return self
        if self.kind in _DAGGER:
            return Operation(_DAGGER[self.kind], self.qubits, tag=self.tag)
        if self.kind in ANGLED:
            return Operation(self.kind, self.qubits, angle=-self.angle, tag=self.tag)  # type: ignore[operator]
        if self.kind is GateKind.RELPHASE and self.variant == "RT3":
            return self
        raise MalformedOperationError(f"{self.kind.value} has no gate-level inverse")

    def remap(self, wires: Sequence[int], cbits: Sequence[int] = ()) -> "Operation":
        """Return the operation with qubit ``i`` replaced by ``wires[i]``."""

        return Operation(
            self.kind,
            tuple(wires[q] for q in self.qubits),
            tuple(cbits[c] for c in self.cbits),
            self.angle,
            self.inner,
            self.variant,
            self.tag,
        )


def _op(kind: GateKind, *qubits: int, **kwargs) -> Operation:
    return Operation(kind, tuple(qubits), **kwargs)


@dataclass
class Circuit:
    """Ordered list of operations.

    Program order is the only ordering; schedules are derived on demand.
    ``ancillae`` lists the wires that must start (and end) in ``|0>``.
    Builders mutate a circuit until they hand it out; consumers treat it as
    a value and use :meth:`copy` before changing it.
    """

    ops: List[Operation] = field(default_factory=list)
    ancillae: Set[int] = field(default_factory=set)
    name: str = ""

    def append(self, op: Operation) -> "Circuit":
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[Operation]) -> "Circuit":
        self.ops.extend(ops)
        return self

    def copy(self) -> "Circuit":
        return Circuit(list(self.ops), set(self.ancillae), self.name)

    @property
    def qubits(self) -> List[int]:
        seen: Set[int] = set(self.ancillae)
        for op in self.ops:
            seen.update(op.qubits)
        return sorted(seen)

    @property
    def width(self) -> int:
        return len(self.qubits)

    @property
    def num_qubits(self) -> int:
        """Size of the dense register needed to hold every wire id."""

        qubits = self.qubits
        return qubits[-1] + 1 if qubits else 0

    @property
    def num_cbits(self) -> int:
        bits = [c for op in self.ops for c in op.cbits]
        return max(bits) + 1 if bits else 0

    @property
    def tags(self) -> Set[str]:
        return {op.tag for op in self.ops if op.tag is not None}

    def count(self, *kinds: GateKind) -> int:
        return sum(1 for op in self.ops if op.kind in kinds)

    def __len__(self) -> int:
        return len(self.ops)

    # Gate helpers used by fragments and builders.

    def x(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.X, q))

    def y(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.Y, q))

    def z(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.Z, q))

    def h(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.H, q))

    def s(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.S, q))

    def sdg(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.SDG, q))

    def t(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.T, q))

    def tdg(self, q: int) -> "Circuit":
        return self.append(_op(GateKind.TDG, q))

    def ry(self, q: int, angle: float) -> "Circuit":
        return self.append(_op(GateKind.RY, q, angle=angle))

    def cx(self, control: int, target: int) -> "Circuit":
        return self.append(_op(GateKind.CNOT, control, target))

    def cz(self, a: int, b: int) -> "Circuit":
        return self.append(_op(GateKind.CZ, a, b))

    def cry(self, control: int, target: int, angle: float) -> "Circuit":
        return self.append(_op(GateKind.CRY, control, target, angle=angle))

    def fanout(self, control: int, targets: Sequence[int]) -> "Circuit":
        return self.append(_op(GateKind.FANOUT, control, *targets))

    def ccx(self, a: int, b: int, target: int, tag: Optional[str] = None) -> "Circuit":
        return self.append(_op(GateKind.TOFFOLI, a, b, target, tag=tag))

    def relphase(self, a: int, b: int, target: int, variant: str) -> "Circuit":
        return self.append(_op(GateKind.RELPHASE, a, b, target, variant=variant))

    def measure_z(self, q: int, bit: int) -> "Circuit":
        return self.append(_op(GateKind.MEASURE_Z, q, cbits=(bit,)))

    def measure_x(self, q: int, bit: int) -> "Circuit":
        return self.append(_op(GateKind.MEASURE_X, q, cbits=(bit,)))

    def classically(
        self, inner: GateKind, qubits: Sequence[int], bit: int
    ) -> "Circuit":
        return self.append(
            Operation(GateKind.CLASSICAL, tuple(qubits), (bit,), inner=inner)
        )


def append(circuit: Circuit, op: Operation) -> Circuit:
    """Return a new circuit with ``op`` appended to ``circuit``."""

    return circuit.copy().append(op)


def inverse(circuit: Circuit) -> Circuit:
    """Reverse a unitary circuit and dagger every gate."""

    ops = [op.dagger() for op in reversed(circuit.ops)]
    return Circuit(ops, set(circuit.ancillae), f"{circuit.name}^-1" if circuit.name else "")


def to_text(circuit: Circuit) -> str:
    """Serialize ``circuit`` as one operation per line."""

    lines: List[str] = []
    if circuit.ancillae:
        lines.append("ANCILLA " + " ".join(f"q{q}" for q in sorted(circuit.ancillae)))
    for op in circuit.ops:
        gate = op.gate
        head = gate.value
        if op.angle is not None:
            head += f"({op.angle!r})"
        elif op.variant is not None:
            head += f"({op.variant})"
        parts = [head, *(f"q{q}" for q in op.qubits)]
        if op.kind in MEASUREMENTS:
            parts += ["->", f"c{op.cbits[0]}"]
        elif op.kind is GateKind.CLASSICAL:
            parts += ["if", f"c{op.cbits[0]}"]
        if op.tag is not None:
            parts.append(f"@{op.tag}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def _wire(token: str, prefix: str) -> int:
    if not token.startswith(prefix) or not token[1:].isdigit():
        raise MalformedOperationError(f"expected {prefix}<index>, got {token!r}")
    return int(token[1:])


def _parse_line(line: str) -> Operation:
    tokens = line.split()
    head, rest = tokens[0], tokens[1:]
    tag: Optional[str] = None
    if rest and rest[-1].startswith("@"):
        tag = rest.pop()[1:]
    cbits: Tuple[int, ...] = ()
    classical = False
    if len(rest) >= 2 and rest[-2] in ("->", "if"):
        classical = rest[-2] == "if"
        cbits = (_wire(rest[-1], "c"),)
        rest = rest[:-2]
    qubits = tuple(_wire(token, "q") for token in rest)

    name, _, param = head.partition("(")
    param = param.rstrip(")")
    try:
        gate = GateKind(name)
    except ValueError as exc:
        raise MalformedOperationError(f"unknown gate {name!r}") from exc
    angle = float(param) if param and gate in ANGLED else None
    variant = param if param and gate is GateKind.RELPHASE else None
    if classical:
        return Operation(
            GateKind.CLASSICAL, qubits, cbits, angle=angle, inner=gate, tag=tag
        )
    return Operation(gate, qubits, cbits, angle=angle, variant=variant, tag=tag)


def from_text(text: str) -> Circuit:
    """Parse the format written by :func:`to_text`."""

    circuit = Circuit()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ANCILLA"):
            circuit.ancillae.update(_wire(t, "q") for t in line.split()[1:])
            continue
        try:
            circuit.append(_parse_line(line))
        except MalformedOperationError as exc:
            raise MalformedOperationError(f"line {number}: {exc}") from exc
    return circuit
