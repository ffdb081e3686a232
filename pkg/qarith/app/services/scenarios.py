"""Ripple-carry versus carry-lookahead comparison over the KQ metric."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.arith import (
    ClaVariant,
    build_cla_adder,
    build_ctrl_adder,
    build_takahashi_adder,
)
from ..core.circuit import Circuit
from ..core.expansion import ExpansionPolicy, expand
from ..core.schedule import report
from ..core.toffoli import DecompKind

logger = logging.getLogger(__name__)


class ScenarioId(str, Enum):
    RC_CTRL_4AT1 = "rc-ctrl-4at1"
    RC_TAKAHASHI_4AT1 = "rc-takahashi-4at1"
    CL_RTX = "cl-rtx"
    CL_4AT1 = "cl-4at1"
    CL_4AT1_SEQ = "cl-4at1-seq"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def ripple_carry(self) -> bool:
        return self.value.startswith("rc-")


_LABELS: Dict[ScenarioId, str] = {
    ScenarioId.RC_CTRL_4AT1: "RC: 4AT1 (controlled adder)",
    ScenarioId.RC_TAKAHASHI_4AT1: "RC: 4AT1 (Takahashi)",
    ScenarioId.CL_RTX: "CL: RT3 & RT4",
    ScenarioId.CL_4AT1: "CL: 4AT1",
    ScenarioId.CL_4AT1_SEQ: "CL: 4AT1 all-sequential",
}

_EXACT = ExpansionPolicy(default=DecompKind.A4T1)


def _ripple(
    builder: Callable[[int], Tuple[Circuit, object]]
) -> Callable[[int], Circuit]:
    return lambda n: expand(builder(n)[0], _EXACT)


def _lookahead(variant: ClaVariant) -> Callable[[int], Circuit]:
    return lambda n: build_cla_adder(n, variant)[0]


_BUILDERS: Dict[ScenarioId, Callable[[int], Circuit]] = {
    ScenarioId.RC_CTRL_4AT1: _ripple(build_ctrl_adder),
    ScenarioId.RC_TAKAHASHI_4AT1: _ripple(build_takahashi_adder),
    ScenarioId.CL_RTX: _lookahead(ClaVariant.OONISHI_RTX),
    ScenarioId.CL_4AT1: _lookahead(ClaVariant.EXACT_4AT1),
    ScenarioId.CL_4AT1_SEQ: _lookahead(ClaVariant.ALL_SEQUENTIAL_4AT1),
}


@dataclass(frozen=True)
class ScenarioRow:
    n: int
    scenario: ScenarioId
    depth: int
    t_depth: int
    t_count: int
    width: int
    kq: int
    kq_t: int

    def snapshot(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "scenario": self.scenario.value,
            "depth": self.depth,
            "t_depth": self.t_depth,
            "t_count": self.t_count,
            "width": self.width,
            "kq": self.kq,
            "kq_t": self.kq_t,
        }


def scenario_row(n: int, scenario: ScenarioId) -> ScenarioRow:
    circuit = _BUILDERS[scenario](n)
    result = report(circuit, serial_t=scenario is ScenarioId.CL_4AT1_SEQ)
    return ScenarioRow(
        n=n,
        scenario=scenario,
        depth=result.depth,
        t_depth=result.t_depth,
        t_count=result.t_count,
        width=result.width,
        kq=result.kq,
        kq_t=result.kq_t,
    )


def compare_scenarios(
    ns: Iterable[int], scenarios: Sequence[ScenarioId] = tuple(ScenarioId)
) -> List[ScenarioRow]:
    """KQ of every scenario at every width, ordered by n then scenario."""

    rows = [scenario_row(n, scenario) for n in ns for scenario in scenarios]
    logger.info("compared %d scenarios over %d rows", len(scenarios), len(rows))
    return rows


@dataclass(frozen=True)
class Crossover:
    rc: ScenarioId
    cl: ScenarioId
    n: int
    qubits: int


def crossover(
    rows: Sequence[ScenarioRow], rc: ScenarioId, cl: ScenarioId
) -> Optional[Crossover]:
    """First n at which the carry-lookahead curve is no worse than ripple-carry.

    ``qubits`` is the carry-lookahead width at that n.
    """

    by_n: Dict[int, Dict[ScenarioId, ScenarioRow]] = {}
    for row in rows:
        by_n.setdefault(row.n, {})[row.scenario] = row
    for n in sorted(by_n):
        pair = by_n[n]
        if rc in pair and cl in pair and pair[cl].kq <= pair[rc].kq:
            return Crossover(rc=rc, cl=cl, n=n, qubits=pair[cl].width)
    return None


def crossovers(rows: Sequence[ScenarioRow]) -> List[Crossover]:
    found = []
    for rc in (s for s in ScenarioId if s.ripple_carry):
        for cl in (s for s in ScenarioId if not s.ripple_carry):
            point = crossover(rows, rc, cl)
            if point is not None:
                found.append(point)
    return found
