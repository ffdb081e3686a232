"""Dictionary of Toffoli lowerings to Clifford+T and the measurement uncompute."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from .circuit import Circuit, GateKind, inverse
from .schedule import report

# Fragment wire layout: controls a, b; target c; ancillae from 3 upwards.
A, B, C = 0, 1, 2


class DecompKind(str, Enum):
    ST = "st"
    A0T3 = "0at3"
    A4T1 = "4at1"
    RT3 = "rt3"
    RT4 = "rt4"
    AND = "and"
    BARENCO = "barenco"

    @property
    def exact(self) -> bool:
        return self in (DecompKind.ST, DecompKind.A0T3, DecompKind.A4T1)

    @property
    def relative_phase(self) -> bool:
        return not self.exact

    @property
    def ancillae(self) -> int:
        return 4 if self is DecompKind.A4T1 else 0

    @classmethod
    def from_variant(cls, variant: str) -> "DecompKind":
        """Map a ``RelPhaseToffoli`` variant tag to its lowering."""

        return cls(variant.lower())

    @property
    def variant(self) -> str:
        return self.name


@dataclass(frozen=True)
class CostRow:
    depth: int
    cnot_c: int
    t_d: int
    t_c: int
    ancillae: int = 0
    legacy_depth: Optional[int] = None
    caveat: Optional[str] = None

    def depth_for(self, legacy: bool) -> int:
        if legacy and self.legacy_depth is not None:
            return self.legacy_depth
        return self.depth

    def snapshot(self) -> Dict[str, object]:
        return {
            "depth": self.depth,
            "cnot_c": self.cnot_c,
            "t_d": self.t_d,
            "t_c": self.t_c,
            "ancillae": self.ancillae,
            "legacy_depth": self.legacy_depth,
            "caveat": self.caveat,
        }


PUBLISHED_COSTS: Dict[DecompKind, CostRow] = {
    DecompKind.ST: CostRow(depth=13, cnot_c=6, t_d=6, t_c=7),
    DecompKind.A0T3: CostRow(depth=9, cnot_c=7, t_d=3, t_c=7, legacy_depth=10),
    DecompKind.A4T1: CostRow(depth=7, cnot_c=16, t_d=1, t_c=7, ancillae=4),
    DecompKind.RT3: CostRow(depth=9, cnot_c=3, t_d=4, t_c=4),
    DecompKind.RT4: CostRow(depth=10, cnot_c=4, t_d=4, t_c=4),
    DecompKind.AND: CostRow(depth=9, cnot_c=6, t_d=2, t_c=4),
}

BARENCO_CAVEAT = "Ry rotations are not Clifford+T; T-count reported as zero"


def _standard() -> Circuit:
    c = Circuit(name="ST")
    c.h(C).t(C).cx(B, C).tdg(C).cx(A, C).t(C).cx(B, C).tdg(C).cx(A, C).h(C)
    c.cx(A, B).tdg(B).cx(A, B).t(B).t(A)
    return c


def _zero_ancilla(legacy: bool) -> Circuit:
    c = Circuit(name="0AT3")
    c.h(C).tdg(A).t(B).t(C)
    c.cx(A, B).cx(C, A).tdg(A)
    if legacy:
        # ten layers
        c.cx(B, A).cx(B, C)
    else:
        c.cx(B, C).cx(B, A)
    c.tdg(A).tdg(B).t(C)
    c.cx(C, A).s(A).cx(B, C).cx(A, B).h(C)
    return c


_ENCODER: List[List[Tuple[int, int]]] = [
    [(B, 5), (A, 3)],
    [(B, 4), (C, 5), (3, 6)],
    [(A, 4), (C, 6), (5, 3)],
]


def _four_ancilla() -> Circuit:
    c = Circuit(ancillae={3, 4, 5, 6}, name="4AT1")
    c.h(C)
    for layer in _ENCODER:
        for control, target in layer:
            c.cx(control, target)
    for q in (A, B, C, 3):
        c.t(q)
    for q in (4, 5, 6):
        c.tdg(q)
    for layer in reversed(_ENCODER):
        for control, target in reversed(layer):
            c.cx(control, target)
    c.h(C)
    return c


def _rt3() -> Circuit:
    c = Circuit(name="RT3")
    c.h(C).t(C).cx(B, C).tdg(C).cx(A, C).t(C).cx(B, C).tdg(C).h(C)
    return c


def _rt4() -> Circuit:
    c = Circuit(name="RT4")
    c.h(C).tdg(C).cx(A, C).t(C).cx(B, C).tdg(C).cx(A, C).t(C).cx(B, C).h(C)
    return c


def _logical_and() -> Circuit:
    c = Circuit(name="AND")
    c.h(C).t(C).cx(A, C).cx(B, C).fanout(C, (A, B))
    c.tdg(A).tdg(B).t(C)
    c.fanout(C, (A, B)).h(C).s(C)
    return c


def _barenco() -> Circuit:
    quarter = math.pi / 4
    c = Circuit(name="BARENCO")
    c.ry(C, quarter).cx(B, C).ry(C, quarter).cx(A, C)
    c.ry(C, -quarter).cx(B, C).ry(C, -quarter)
    return c


_BUILDERS: Dict[DecompKind, Callable[[], Circuit]] = {
    DecompKind.ST: _standard,
    DecompKind.A4T1: _four_ancilla,
    DecompKind.RT3: _rt3,
    DecompKind.RT4: _rt4,
    DecompKind.AND: _logical_and,
    DecompKind.BARENCO: _barenco,
}


def fragment(kind: DecompKind, legacy: bool = False) -> Circuit:
    """Clifford+T circuit for one Toffoli on wires (a=0, b=1, target=2).

    ``legacy`` only affects :attr:`DecompKind.A0T3` and selects the ten-layer
    ordering.
    """

    if kind is DecompKind.A0T3:
        return _zero_ancilla(legacy)
    return _BUILDERS[kind]()


def inverse_fragment(kind: DecompKind) -> Circuit:
    """The fragment run backwards (IRT3, IRT4, ...)."""

    return inverse(fragment(kind))


def uncompute_fragment(bit: int = 0) -> Circuit:
    """Measurement-based uncompute of a computed AND on wire 2.

    The ancilla is measured in the X basis by H + MeasureZ; outcome 1 leaves a
    CZ phase on the controls, which the classically controlled CZ removes.
    The measurement resets the ancilla to |0>.
    """

    c = Circuit(name="UNCOMPUTE")
    c.h(C).measure_z(C, bit)
    c.classically(GateKind.CZ, (A, B), bit)
    return c


def cost_table() -> List[Tuple[DecompKind, CostRow]]:
    rows = [(kind, PUBLISHED_COSTS[kind]) for kind in PUBLISHED_COSTS]
    derived = report(fragment(DecompKind.BARENCO))
    rows.append(
        (
            DecompKind.BARENCO,
            CostRow(
                depth=derived.depth,
                cnot_c=derived.cnot_count,
                t_d=derived.t_depth_parallel,
                t_c=derived.t_count,
                caveat=BARENCO_CAVEAT,
            ),
        )
    )
    return rows


def cost_row(kind: DecompKind) -> CostRow:
    return dict(cost_table())[kind]
