"""ASAP scheduling and the resource report derived from it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Tuple

from .circuit import OPAQUE, Circuit, GateKind, MEASUREMENTS, Operation

_DISTILLERY = ("distillery",)


def _resources(op: Operation, serial_t: bool) -> List[Hashable]:
    keys: List[Hashable] = [("q", q) for q in op.qubits]
    keys.extend(("c", c) for c in op.cbits)
    if serial_t and op.is_t:
        keys.append(_DISTILLERY)
    return keys


@dataclass
class Schedule:
    moments: List[List[int]] = field(default_factory=list)
    assignment: List[int] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.moments)

    def operations(self, circuit: Circuit, moment: int) -> List[Operation]:
        return [circuit.ops[i] for i in self.moments[moment]]


def schedule_asap(circuit: Circuit, serial_t: bool = False) -> Schedule:
    """Place every operation in the earliest moment its dependencies allow.

    Qubits and classical bits are the shared resources. With ``serial_t`` all
    T/Tdg gates additionally share one distillation resource, so no two of
    them run in the same moment.
    """

    free_at: Dict[Hashable, int] = {}
    schedule = Schedule()
    for index, op in enumerate(circuit.ops):
        keys = _resources(op, serial_t)
        moment = max((free_at.get(key, 0) for key in keys), default=0)
        for key in keys:
            free_at[key] = moment + 1
        if moment == len(schedule.moments):
            schedule.moments.append([])
        schedule.moments[moment].append(index)
        schedule.assignment.append(moment)
    return schedule


def t_stages(circuit: Circuit) -> List[int]:
    """T stage of every operation.

    A T/Tdg gate sits one stage after the latest T gate it depends on; every
    other operation inherits the largest stage among its inputs.
    """

    stage_of: Dict[Hashable, int] = {}
    stages: List[int] = []
    for op in circuit.ops:
        keys = _resources(op, serial_t=False)
        stage = max((stage_of.get(key, 0) for key in keys), default=0)
        if op.is_t:
            stage += 1
        for key in keys:
            stage_of[key] = stage
        stages.append(stage)
    return stages


@dataclass(frozen=True)
class ResourceReport:
    depth: int = 0
    t_depth_parallel: int = 0
    t_depth_sequential: int = 0
    t_count: int = 0
    cnot_count: int = 0
    cz_count: int = 0
    measurement_count: int = 0
    width: int = 0
    unexpanded: int = 0
    sequential: bool = False

    @property
    def t_depth(self) -> int:
        return self.t_depth_sequential if self.sequential else self.t_depth_parallel

    @property
    def kq(self) -> int:
        return self.depth * self.width

    @property
    def kq_t(self) -> int:
        return self.t_depth * self.width

    @property
    def has_unexpanded(self) -> bool:
        return self.unexpanded > 0

    def snapshot(self) -> Dict[str, object]:
        return {
            "depth": self.depth,
            "t_depth_parallel": self.t_depth_parallel,
            "t_depth_sequential": self.t_depth_sequential,
            "t_count": self.t_count,
            "cnot_count": self.cnot_count,
            "cz_count": self.cz_count,
            "measurement_count": self.measurement_count,
            "width": self.width,
            "kq": self.kq,
            "kq_t": self.kq_t,
            "unexpanded": self.unexpanded,
            "sequential": self.sequential,
        }


def _counts(circuit: Circuit) -> Tuple[int, int, int, int, int]:
    t_count = cnot = cz = measurements = opaque = 0
    for op in circuit.ops:
        if op.is_t:
            t_count += 1
        cnot += op.cnot_weight
        if op.gate is GateKind.CZ:
            cz += 1
        if op.kind in MEASUREMENTS:
            measurements += 1
        if op.kind in OPAQUE:
            opaque += 1
    return t_count, cnot, cz, measurements, opaque


def report(circuit: Circuit, serial_t: bool = False) -> ResourceReport:
    """Resource report of ``circuit``.

    Toffoli and relative-phase Toffoli gates still present are scheduled as
    opaque one-layer gates, contribute nothing to the T and CNOT counts, and
    are counted in ``unexpanded``. ``serial_t`` selects the one-at-a-time
    distillation mode for both the depth and the T metric used by ``kq_t``.

    ``t_depth_parallel`` is the T-stage depth from :func:`t_stages`, the
    longest chain of T/Tdg gates linked through shared wires. It is not the
    number of ASAP moments holding a T gate: the four-ancilla fragment spreads
    its seven parallel T gates over several moments and still reports 1.
    """

    t_count, cnot, cz, measurements, opaque = _counts(circuit)
    stages = t_stages(circuit)
    return ResourceReport(
        depth=schedule_asap(circuit, serial_t=serial_t).depth,
        t_depth_parallel=max(stages, default=0),
        t_depth_sequential=t_count,
        t_count=t_count,
        cnot_count=cnot,
        cz_count=cz,
        measurement_count=measurements,
        width=circuit.width,
        unexpanded=opaque,
        sequential=serial_t,
    )
