"""Closed-form cost model for the controlled adder and the multiplier."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Union

from pydantic import BaseModel, Field

from ..core.errors import FormulaDomainError
from ..core.schedule import ResourceReport
from ..core.toffoli import DecompKind, cost_row

HYBRID = "hybrid"


@dataclass(frozen=True)
class FormulaInputs:
    n: int
    D_t: int
    T_d: int
    A: int
    C: int

    @classmethod
    def for_kind(cls, n: int, kind: DecompKind, legacy: bool = True) -> "FormulaInputs":
        if n < 2:
            raise FormulaDomainError(f"cost formulas start at n=2, got n={n}")
        row = cost_row(kind)
        return cls(
            n=n, D_t=row.depth_for(legacy), T_d=row.t_d, A=row.ancillae, C=row.cnot_c
        )


def adder_formulas(n: int, kind: DecompKind, legacy: bool = True) -> Dict[str, int]:
    """Depth, T-depth, width and CNOT count of the expanded controlled adder.

    ``legacy`` takes the ten-layer depth for 0AT3, which is the value the
    published tables are computed with.
    """

    f = FormulaInputs.for_kind(n, kind, legacy)
    toffolis = 3 * n + 2
    return {
        "D": toffolis * f.D_t + 2 * n - 3,
        "T": toffolis * f.T_d,
        "Qub": 2 * n + 3 + f.A,
        "CNOT": 2 * (2 * n - 3) + f.C * toffolis,
    }


def multiplier_formulas(
    n: int, kind: Union[DecompKind, str] = HYBRID
) -> Dict[str, int]:
    if n < 2:
        raise FormulaDomainError(f"cost formulas start at n=2, got n={n}")
    sequential = 3 * n * n - n - 2
    if kind == HYBRID:
        return {
            "D": 10 + 7 * sequential + (2 * n - 3) * (n - 1),
            "T": 3 + sequential,
            "Qub": 4 * n + 5,
        }
    f = FormulaInputs.for_kind(n, DecompKind(kind))
    return {
        "D": (3 * n * n - 2) * f.D_t + (n - 1) * (2 * n - 3),
        "T": sequential * f.T_d,
        "Qub": 4 * n + 1 + f.A,
    }


def rtx_single_replacement_formulas(n: int) -> Dict[str, float]:
    """Controlled-adder totals when every Toffoli is replaced by RT3/RT4 on a
    fresh ancilla (compute, copy, uncompute)."""

    if n < 2:
        raise FormulaDomainError(f"cost formulas start at n=2, got n={n}")
    toffolis = 3 * n + 2
    wiring = 2 * (2 * n - 3)
    rt3, rt4 = cost_row(DecompKind.RT3).cnot_c, cost_row(DecompKind.RT4).cnot_c
    cnot_rt3 = (rt3 + 1 + rt3) * toffolis + wiring
    cnot_rt4 = (rt4 + 1 + rt4) * toffolis + wiring
    cnot_4at1 = adder_formulas(n, DecompKind.A4T1)["CNOT"]
    cnot_0at3 = adder_formulas(n, DecompKind.A0T3)["CNOT"]
    return {
        "T_count": cost_row(DecompKind.RT3).t_c * toffolis,
        "CNOT_RT3": cnot_rt3,
        "CNOT_RT4": cnot_rt4,
        "ratio_rt3_4at1": cnot_rt3 / cnot_4at1,
        "ratio_rt4_4at1": cnot_rt4 / cnot_4at1,
        "ratio_rt3_0at3": cnot_rt3 / cnot_0at3,
    }


def kq(report: ResourceReport) -> Dict[str, int]:
    return {"kq": report.kq, "kq_t": report.kq_t}


def improvement(
    n: int,
    baseline: DecompKind = DecompKind.A0T3,
    candidate: DecompKind = DecompKind.A4T1,
) -> Dict[str, float]:
    """Fractional depth and T-depth reduction of ``candidate`` over ``baseline``."""

    before = adder_formulas(n, baseline)
    after = adder_formulas(n, candidate)
    return {
        "depth": 1 - after["D"] / before["D"],
        "t_depth": 1 - after["T"] / before["T"],
    }


def _series_row(n: int, values: Dict[str, int]) -> Dict[str, int]:
    row = {"n": n, **values}
    row["KQ"] = values["D"] * values["Qub"]
    row["KQ_T"] = values["T"] * values["Qub"]
    return row


def adder_kq_series(kind: DecompKind, ns: Iterable[int]) -> List[Dict[str, int]]:
    return [_series_row(n, adder_formulas(n, kind)) for n in ns]


def multiplier_kq_series(
    kind: Union[DecompKind, str], ns: Iterable[int]
) -> List[Dict[str, int]]:
    return [_series_row(n, multiplier_formulas(n, kind)) for n in ns]


def odb_cnot_saving(baseline: DecompKind, kind: DecompKind = DecompKind.RT3) -> int:
    """CNOTs saved on one Toffoli pair (with its middle CNOT) by ODB.

    The classically controlled CZ of the uncompute is counted as if it always
    fires.
    """

    pair = 2 * cost_row(baseline).cnot_c + 1
    odb = cost_row(kind).cnot_c + 1 + 1
    return pair - odb


class TradeoffParams(BaseModel):
    meas_error: float = Field(default=0.4, ge=0, le=1)
    cnot_error: float = Field(default=0.01, ge=0, le=1)
    cnot_overhead: float = Field(default=5, ge=1)
    cnots_saved_per_pair: int = Field(default=10, ge=0)


@dataclass(frozen=True)
class TradeoffResult:
    physical_cnots_replaced: float
    beneficial: bool

    def snapshot(self) -> Dict[str, object]:
        return {
            "physical_cnots_replaced": self.physical_cnots_replaced,
            "beneficial": self.beneficial,
        }


def cnot_measure_tradeoff(params: TradeoffParams) -> TradeoffResult:
    """First-order error budget: one measurement against the physical CNOTs it
    replaces."""

    replaced = params.cnots_saved_per_pair * params.cnot_overhead
    return TradeoffResult(
        physical_cnots_replaced=replaced,
        beneficial=params.meas_error < replaced * params.cnot_error,
    )
