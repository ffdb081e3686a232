"""Builders for the ripple-carry, carry-lookahead and multiplier circuits.

All builders emit Toffoli + CNOT (+ X) circuits; Clifford+T lowering is left
to :func:`qarith.app.core.expansion.expand`. Qubit 0 is the least significant
bit of every register listed in the returned :class:`RegisterMap`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .circuit import Circuit, GateKind
from .errors import PolicyError, UnsupportedWidthError
from .expansion import ExpansionPolicy, expand
from .toffoli import DecompKind

logger = logging.getLogger(__name__)

HEAD_TAG = "head"
PROPAGATE_TAG = "propagate"


class Family(str, Enum):
    CTRL_RIPPLE = "ctrl-adder"
    TAKAHASHI = "takahashi"
    CARRY_LOOKAHEAD = "cla"
    MULTIPLIER = "multiplier"


class ClaVariant(str, Enum):
    OONISHI_RTX = "rtx"
    EXACT_4AT1 = "4at1"
    ALL_SEQUENTIAL_4AT1 = "4at1-seq"

    @property
    def serial_t(self) -> bool:
        return self is ClaVariant.ALL_SEQUENTIAL_4AT1


@dataclass(frozen=True)
class AdderSpec:
    n: int
    family: Family
    variant: Optional[ClaVariant] = None

    def __post_init__(self) -> None:
        _require_width(self.n)
        if self.variant is not None and self.family is not Family.CARRY_LOOKAHEAD:
            raise PolicyError("a variant only applies to the carry-lookahead adder")


@dataclass
class RegisterMap:
    a: List[int] = field(default_factory=list)
    b: List[int] = field(default_factory=list)
    control: Optional[int] = None
    carry: Optional[int] = None
    product: List[int] = field(default_factory=list)
    ancillae: List[int] = field(default_factory=list)

    def snapshot(self) -> Dict[str, object]:
        return {
            "control": self.control,
            "a": list(self.a),
            "b": list(self.b),
            "carry": self.carry,
            "product": list(self.product),
            "ancillae": list(self.ancillae),
        }


def _require_width(n: int) -> None:
    if n < 2:
        raise UnsupportedWidthError(f"operand width must be at least 2, got {n}")


def _ctrl_add_into(
    circuit: Circuit,
    ctrl: int,
    a: Sequence[int],
    b: Sequence[int],
    z: int,
    anc: int,
) -> None:
    """b += ctrl * a, carry-out xored into z; anc is borrowed clean."""

    n = len(a)
    for i in range(1, n):
        circuit.cx(a[i], b[i])
    for i in range(n - 2, 0, -1):
        circuit.cx(a[i], a[i + 1])
    for i in range(n - 1):
        circuit.ccx(a[i], b[i], a[i + 1])
    circuit.ccx(a[n - 1], b[n - 1], anc)
    circuit.ccx(ctrl, anc, z)
    circuit.ccx(a[n - 1], b[n - 1], anc)
    for i in range(n - 1, 0, -1):
        circuit.ccx(ctrl, a[i], b[i])
        circuit.ccx(a[i - 1], b[i - 1], a[i])
    for i in range(1, n - 1):
        circuit.cx(a[i], a[i + 1])
    circuit.ccx(ctrl, a[n - 1], z)
    circuit.ccx(ctrl, a[0], b[0])
    for i in range(1, n):
        circuit.cx(a[i], b[i])


def build_ctrl_adder(n: int) -> Tuple[Circuit, RegisterMap]:
    """Controlled ripple-carry adder |c, a, b, 0> -> |c, a, b + c*a>.

    Layout: control 0, a 1..n, b n+1..2n, carry-out 2n+1, ancilla 2n+2.
    """

    _require_width(n)
    registers = RegisterMap(
        control=0,
        a=list(range(1, n + 1)),
        b=list(range(n + 1, 2 * n + 1)),
        carry=2 * n + 1,
        ancillae=[2 * n + 2],
    )
    circuit = Circuit(ancillae=set(registers.ancillae), name=f"ctrl-adder-{n}")
    _ctrl_add_into(
        circuit,
        registers.control,  # type: ignore[arg-type]
        registers.a,
        registers.b,
        registers.carry,  # type: ignore[arg-type]
        registers.ancillae[0],
    )
    logger.info("built controlled adder n=%d with %d ops", n, len(circuit))
    return circuit, registers


def build_takahashi_adder(n: int) -> Tuple[Circuit, RegisterMap]:
    """Ancilla-free ripple-carry adder |a, b, 0> -> |a, a + b>."""

    _require_width(n)
    a = list(range(n))
    b = list(range(n, 2 * n))
    z = 2 * n
    wide = a + [z]
    circuit = Circuit(name=f"takahashi-{n}")
    for i in range(1, n):
        circuit.cx(a[i], b[i])
    for i in range(n - 1, 0, -1):
        circuit.cx(wide[i], wide[i + 1])
    for i in range(n):
        circuit.ccx(a[i], b[i], wide[i + 1])
    for i in range(n - 1, 0, -1):
        circuit.cx(a[i], b[i])
        circuit.ccx(a[i - 1], b[i - 1], a[i])
    for i in range(1, n - 1):
        circuit.cx(a[i], a[i + 1])
    for i in range(n):
        circuit.cx(a[i], b[i])
    logger.info("built Takahashi adder n=%d with %d ops", n, len(circuit))
    return circuit, RegisterMap(a=a, b=b, carry=z)


def _log2(n: int) -> int:
    return n.bit_length() - 1


def _c_rounds_top(n: int) -> int:
    """Largest t with 2**t <= 2n/3, or -1."""

    t = -1
    while 3 * (1 << (t + 1)) <= 2 * n:
        t += 1
    return t


def propagate_wires(n: int) -> int:
    return n - bin(n).count("1") - _log2(n)


@dataclass
class _Lookahead:
    """Wire bookkeeping of the in-place carry-lookahead adder."""

    a: List[int]
    b: List[int]
    z: Dict[int, int]
    p: Dict[Tuple[int, int], int]

    def prop(self, t: int, m: int) -> int:
        return self.b[m] if t == 0 else self.p[(t, m)]

    def network(self, width: int) -> List[Tuple[int, int, int, Optional[str]]]:
        """Toffolis turning generate bits in z into carries for ``width`` bits."""

        ops: List[Tuple[int, int, int, Optional[str]]] = []
        top = _log2(width)
        propagate = [
            (self.prop(t - 1, 2 * m), self.prop(t - 1, 2 * m + 1), self.p[(t, m)])
            for t in range(1, top)
            for m in range(1, width // (1 << t))
        ]
        ops.extend((x, y, target, PROPAGATE_TAG) for x, y, target in propagate)
        for t in range(1, top + 1):
            half, step = 1 << (t - 1), 1 << t
            for m in range(width // step):
                source, target = self.z[step * m + half], self.z[step * m + step]
                ops.append((source, self.prop(t - 1, 2 * m + 1), target, None))
        for t in range(_c_rounds_top(width), 0, -1):
            half, step = 1 << (t - 1), 1 << t
            for m in range(1, (width - half) // step + 1):
                source, target = self.z[step * m], self.z[step * m + half]
                ops.append((source, self.prop(t - 1, 2 * m), target, None))
        ops.extend(
            (x, y, target, PROPAGATE_TAG) for x, y, target in reversed(propagate)
        )
        return ops


def cla_policy(variant: ClaVariant) -> ExpansionPolicy:
    if variant is ClaVariant.OONISHI_RTX:
        return ExpansionPolicy(
            default=DecompKind.RT4,
            odb_enabled=True,
            odb_kind=DecompKind.RT3,
            allow_relative_phase=True,
        )
    return ExpansionPolicy(default=DecompKind.A4T1)


def build_cla_adder(
    n: int, variant: Optional[ClaVariant] = None
) -> Tuple[Circuit, RegisterMap]:
    """In-place carry-lookahead adder |a, b, 0> -> |a, a + b>.

    Layout: a 0..n-1, b n..2n-1, carries z[1..n] at 2n..3n-1 (z[n] is the
    carry-out), then the propagate ancillae. With a ``variant`` the returned
    circuit is already lowered with that variant's policy.
    """

    _require_width(n)
    a = list(range(n))
    b = list(range(n, 2 * n))
    z = {i: 2 * n + i - 1 for i in range(1, n + 1)}
    p: Dict[Tuple[int, int], int] = {}
    wire = 3 * n
    for t in range(1, _log2(n)):
        for m in range(1, n // (1 << t)):
            p[(t, m)] = wire
            wire += 1
    layout = _Lookahead(a, b, z, p)
    ancillae = [z[i] for i in range(1, n)] + sorted(p.values())

    circuit = Circuit(ancillae=set(ancillae), name=f"cla-{n}")
    for i in range(n):
        circuit.ccx(a[i], b[i], z[i + 1])
    for i in range(n):
        circuit.cx(a[i], b[i])
    for x, y, target, tag in layout.network(n):
        circuit.ccx(x, y, target, tag=tag)
    for i in range(1, n):
        circuit.cx(z[i], b[i])
    for i in range(n - 1):
        circuit.x(b[i])
    for i in range(1, n - 1):
        circuit.cx(a[i], b[i])
    for x, y, target, tag in reversed(layout.network(n - 1)):
        circuit.ccx(x, y, target, tag=tag)
    for i in range(1, n - 1):
        circuit.cx(a[i], b[i])
    for i in range(n - 1):
        circuit.ccx(a[i], b[i], z[i + 1])
    for i in range(n - 1):
        circuit.x(b[i])

    registers = RegisterMap(a=a, b=b, carry=z[n], ancillae=ancillae)
    logger.info(
        "built carry-lookahead adder n=%d: %d Toffolis, width %d",
        n,
        circuit.count(GateKind.TOFFOLI),
        circuit.width,
    )
    if variant is not None:
        circuit = expand(circuit, cla_policy(variant))
        registers.ancillae = sorted(circuit.ancillae)
    return circuit, registers


def build_multiplier(n: int) -> Tuple[Circuit, RegisterMap]:
    """Ripple-carry multiplier |a, b, 0> -> |a, b, a*b>.

    Layout: a 0..n-1, b n..2n-1, product 2n..4n-1, ancilla 4n. The head
    computes the partial product a*b_0 with n mutually disjoint Toffolis by
    fanning b_0 out onto the still-empty high product wires; n-1 controlled
    adders then accumulate a*b_k.
    """

    _require_width(n)
    a = list(range(n))
    b = list(range(n, 2 * n))
    p = list(range(2 * n, 4 * n))
    anc = 4 * n
    circuit = Circuit(ancillae={anc}, name=f"multiplier-{n}")

    copies = p[n : 2 * n - 1]
    circuit.fanout(b[0], copies)
    circuit.ccx(a[0], b[0], p[0], tag=HEAD_TAG)
    for i in range(1, n):
        circuit.ccx(a[i], copies[i - 1], p[i], tag=HEAD_TAG)
    circuit.fanout(b[0], copies)

    for k in range(1, n):
        _ctrl_add_into(circuit, b[k], a, p[k : k + n], p[k + n], anc)

    logger.info("built multiplier n=%d with %d ops", n, len(circuit))
    return circuit, RegisterMap(a=a, b=b, product=p, ancillae=[anc])


def hybrid_policy() -> ExpansionPolicy:
    """Legacy 0AT3 on the parallel head, 4AT1 everywhere else."""

    return ExpansionPolicy(
        default=DecompKind.A4T1,
        overrides={HEAD_TAG: DecompKind.A0T3},
        use_legacy_0at3_depth=True,
    )


def build(spec: AdderSpec) -> Tuple[Circuit, RegisterMap]:
    if spec.family is Family.CTRL_RIPPLE:
        return build_ctrl_adder(spec.n)
    if spec.family is Family.TAKAHASHI:
        return build_takahashi_adder(spec.n)
    if spec.family is Family.CARRY_LOOKAHEAD:
        return build_cla_adder(spec.n, spec.variant)
    return build_multiplier(spec.n)
