"""Lowering of Toffoli gates to Clifford+T according to an expansion policy."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .circuit import MEASUREMENTS, OPAQUE, Circuit, GateKind, Operation
from .errors import NotOdbEligibleError, PolicyError
from .schedule import schedule_asap
from .toffoli import DecompKind, fragment, inverse_fragment, uncompute_fragment

logger = logging.getLogger(__name__)

ODB_KINDS = (DecompKind.RT3, DecompKind.RT4, DecompKind.AND)


class Replacement(str, Enum):
    """Single-Toffoli replacements that compute onto a fresh ancilla."""

    RT3_PAIR = "rt3-pair"
    RT4_PAIR = "rt4-pair"
    RT3_ODB = "rt3-odb"
    RT4_ODB = "rt4-odb"

    @property
    def kind(self) -> DecompKind:
        return DecompKind.RT3 if self.name.startswith("RT3") else DecompKind.RT4

    @property
    def measured(self) -> bool:
        return self.name.endswith("ODB")


@dataclass(frozen=True)
class ExpansionPolicy:
    default: DecompKind = DecompKind.A4T1
    overrides: Dict[str, DecompKind] = field(default_factory=dict)
    odb_enabled: bool = False
    odb_kind: DecompKind = DecompKind.RT3
    phase_fix: bool = False
    use_legacy_0at3_depth: bool = False
    replacement: Optional[Replacement] = None
    allow_relative_phase: bool = False

    def check(self, circuit: Circuit) -> None:
        missing = sorted(set(self.overrides) - circuit.tags)
        if missing:
            raise PolicyError(f"region tags not present in circuit: {missing}")
        if not self.allow_relative_phase:
            for kind in (self.default, *self.overrides.values()):
                if kind.relative_phase:
                    raise PolicyError(
                        f"{kind.value} is relative-phase; an exact lowering is required"
                    )
        if self.odb_enabled and self.odb_kind not in ODB_KINDS:
            raise PolicyError(f"{self.odb_kind.value} cannot compute an ODB pair")

    def kind_for(self, op: Operation) -> DecompKind:
        if op.kind is GateKind.RELPHASE:
            return DecompKind.from_variant(op.variant or "")
        if op.tag is not None and op.tag in self.overrides:
            return self.overrides[op.tag]
        return self.default


@dataclass
class _Block:
    wires: List[int]
    last_moment: int


class _AncillaPool:
    """Hands out ancilla blocks per opaque moment of the unexpanded circuit.

    Toffolis in one moment get distinct blocks; a block becomes available
    again to every later moment.
    """

    def __init__(self, circuit: Circuit) -> None:
        self._moments = schedule_asap(circuit).assignment
        self._next = circuit.num_qubits
        self._blocks: Dict[int, List[_Block]] = {}

    def take(self, index: int, size: int) -> List[int]:
        moment = self._moments[index]
        blocks = self._blocks.setdefault(size, [])
        for block in blocks:
            if block.last_moment < moment:
                block.last_moment = moment
                return block.wires
        wires = list(range(self._next, self._next + size))
        self._next += size
        blocks.append(_Block(wires, moment))
        return wires


def _emit(out: Circuit, piece: Circuit, wires: Sequence[int], bit: int = 0) -> None:
    cbits = [bit]
    out.extend(op.remap(wires, cbits) for op in piece.ops)


def _target_clear(circuit: Circuit, target: int, upto: int) -> bool:
    """Whether every write to ``target`` before ``upto`` is undone.

    Each Toffoli writer must be cancelled by a later Toffoli with the same
    controls, with neither control written in between.
    """

    open_terms: Dict[frozenset, int] = {}
    for index, op in enumerate(circuit.ops[:upto]):
        if target not in op.writes:
            continue
        if op.kind is not GateKind.TOFFOLI:
            return False
        term = frozenset(op.qubits[:2])
        if term not in open_terms:
            open_terms[term] = index
            continue
        between = circuit.ops[open_terms.pop(term) + 1 : index]
        if any(term & other.writes for other in between):
            return False
    return not open_terms


def _odb_problem(circuit: Circuit, first: int, second: int) -> Optional[str]:
    """Reason the pair is not eligible, or ``None``."""

    ops = circuit.ops
    if not (0 <= first < second < len(ops)):
        return "indices out of order or range"
    head, tail = ops[first], ops[second]
    if head.kind is not GateKind.TOFFOLI or tail.kind is not GateKind.TOFFOLI:
        return "both operations must be Toffoli gates"
    if set(head.qubits[:2]) != set(tail.qubits[:2]) or head.qubits[2] != tail.qubits[2]:
        return "Toffolis must share both controls and the target"
    controls, target = set(head.qubits[:2]), head.qubits[2]
    if target not in circuit.ancillae:
        return f"target q{target} is not a declared ancilla"
    if not _target_clear(circuit, target, first):
        return f"target q{target} is not known to be |0> before the pair"
    for op in ops[first + 1 : second]:
        if op.kind in MEASUREMENTS and target in op.qubits:
            return f"target q{target} is measured between the pair"
        if target in op.writes:
            return f"target q{target} is modified between the pair"
        if controls & op.writes:
            return "a control is modified between the pair"
    return None


def find_odb_pairs(circuit: Circuit) -> List[Tuple[int, int]]:
    """Compute/uncompute Toffoli pairs on declared ancillae.

    The uncompute partner of a Toffoli is the next operation that writes its
    target; the pair qualifies only when that partner repeats the Toffoli.
    """

    pairs: List[Tuple[int, int]] = []
    taken = set()
    ops = circuit.ops
    for first, op in enumerate(ops):
        if first in taken or op.kind is not GateKind.TOFFOLI:
            continue
        target = op.qubits[2]
        if target not in circuit.ancillae:
            continue
        partner = next(
            (j for j in range(first + 1, len(ops)) if target in ops[j].writes), None
        )
        if partner is None or _odb_problem(circuit, first, partner) is not None:
            continue
        pairs.append((first, partner))
        taken.update((first, partner))
    return pairs


def _odb_compute(kind: DecompKind, phase_fix: bool) -> Circuit:
    piece = fragment(kind)
    if phase_fix and kind in (DecompKind.RT3, DecompKind.RT4):
        piece.sdg(2)
    return piece


def odb_pair_replace(
    circuit: Circuit,
    first: int,
    second: int,
    kind: DecompKind = DecompKind.RT3,
    phase_fix: bool = False,
) -> Circuit:
    """Replace a compute/uncompute Toffoli pair by a relative-phase compute and
    a measurement-based uncompute.

    The target of the pair must be a declared ancilla in |0>, read only as a
    control between the two Toffolis while both controls stay untouched.
    ``phase_fix`` appends Sdg on the ancilla after RT3/RT4, which removes the
    residual ``i`` phase on the |11> control block.
    """

    if kind not in ODB_KINDS:
        raise PolicyError(f"{kind.value} cannot compute an ODB pair")
    problem = _odb_problem(circuit, first, second)
    if problem is not None:
        raise NotOdbEligibleError(problem)

    head = circuit.ops[first]
    bit = circuit.num_cbits
    out = Circuit(ancillae=set(circuit.ancillae), name=circuit.name)
    for index, op in enumerate(circuit.ops):
        if index == first:
            _emit(out, _odb_compute(kind, phase_fix), op.qubits)
        elif index == second:
            _emit(out, uncompute_fragment(), head.qubits, bit)
        else:
            out.append(op)
    return out


def _replacement_piece(replacement: Replacement) -> Circuit:
    # wires: a, b, target, fresh ancilla
    piece = Circuit()
    rt = fragment(replacement.kind)
    piece.extend(op.remap((0, 1, 3)) for op in rt.ops)
    piece.cx(3, 2)
    if replacement.measured:
        piece.extend(op.remap((0, 1, 3), (0,)) for op in uncompute_fragment().ops)
    else:
        inverse = inverse_fragment(replacement.kind)
        piece.extend(op.remap((0, 1, 3)) for op in inverse.ops)
    return piece


def expand(circuit: Circuit, policy: ExpansionPolicy) -> Circuit:
    """Lower every Toffoli in ``circuit`` to Clifford+T.

    Operations other than Toffoli and relative-phase Toffoli pass through
    unchanged. New ancilla wires are numbered after the highest wire in use and
    declared as ancillae of the result; new classical bits follow the existing
    ones.
    """

    policy.check(circuit)
    pairs = dict(find_odb_pairs(circuit)) if policy.odb_enabled else {}
    partners = {second: first for first, second in pairs.items()}
    pool = _AncillaPool(circuit)
    out = Circuit(ancillae=set(circuit.ancillae), name=circuit.name)
    bit = circuit.num_cbits

    for index, op in enumerate(circuit.ops):
        if index in pairs:
            logger.debug("ODB compute at op %d with %s", index, policy.odb_kind.value)
            _emit(out, _odb_compute(policy.odb_kind, policy.phase_fix), op.qubits)
            continue
        if index in partners:
            logger.debug("ODB uncompute at op %d into c%d", index, bit)
            _emit(out, uncompute_fragment(), circuit.ops[partners[index]].qubits, bit)
            bit += 1
            continue
        if op.kind not in OPAQUE:
            out.append(op)
            continue

        if op.kind is GateKind.TOFFOLI and policy.replacement is not None:
            ancilla = pool.take(index, 1)
            out.ancillae.update(ancilla)
            piece = _replacement_piece(policy.replacement)
            _emit(out, piece, [*op.qubits, *ancilla], bit)
            if policy.replacement.measured:
                bit += 1
            continue

        kind = policy.kind_for(op)
        ancillae = pool.take(index, kind.ancillae) if kind.ancillae else []
        out.ancillae.update(ancillae)
        piece = fragment(kind, legacy=policy.use_legacy_0at3_depth)
        _emit(out, piece, [*op.qubits, *ancillae])

    logger.info(
        "expanded %s: %d ops -> %d ops, %d ODB pairs",
        circuit.name or "circuit",
        len(circuit.ops),
        len(out.ops),
        len(pairs),
    )
    return out
