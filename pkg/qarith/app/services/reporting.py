"""CSV/JSON rows and SVG charts for the command-line reports."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Sequence

import matplotlib as mpl

mpl.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..core.schedule import ResourceReport  # noqa: E402
from .scenarios import ScenarioId, ScenarioRow  # noqa: E402

REPORT_COLUMNS = [
    "n",
    "family",
    "decomp",
    "depth",
    "t_depth",
    "t_count",
    "cnot",
    "width",
    "kq",
    "kq_t",
]


def report_row(
    n: int, family: str, decomp: str, report: ResourceReport
) -> Dict[str, object]:
    return {
        "n": n,
        "family": family,
        "decomp": decomp,
        "depth": report.depth,
        "t_depth": report.t_depth,
        "t_count": report.t_count,
        "cnot": report.cnot_count,
        "width": report.width,
        "kq": report.kq,
        "kq_t": report.kq_t,
    }


def to_csv(rows: Sequence[Mapping[str, object]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({column: row.get(column) for column in columns})
    return buffer.getvalue()


def to_json(rows: Sequence[Mapping[str, object]]) -> str:
    return json.dumps(list(rows), indent=2, ensure_ascii=False) + "\n"


def render(
    rows: Sequence[Mapping[str, object]], columns: Sequence[str], fmt: str
) -> str:
    return to_json(rows) if fmt == "json" else to_csv(rows, columns)


def scenario_series(rows: Iterable[ScenarioRow]) -> Dict[ScenarioId, List[ScenarioRow]]:
    series: Dict[ScenarioId, List[ScenarioRow]] = {}
    for row in rows:
        series.setdefault(row.scenario, []).append(row)
    for points in series.values():
        points.sort(key=lambda row: row.n)
    return series


def write_kq_chart(rows: Iterable[ScenarioRow], path: Path) -> None:
    """Line chart of KQ against n, one series per scenario.

    The file carries no date and a fixed id salt, so identical rows give
    identical bytes.
    """

    mpl.rcParams["svg.hashsalt"] = "qarith"
    fig = plt.figure(figsize=(8, 5), frameon=True)
    ax = fig.add_subplot(1, 1, 1)
    for scenario, points in scenario_series(rows).items():
        ax.plot(
            [row.n for row in points],
            [row.kq for row in points],
            marker="o" if scenario.ripple_carry else None,
            markersize=3,
            label=scenario.label,
        )
    ax.set_xlabel("n (bits)")
    ax.set_ylabel("KQ (depth x width)")
    ax.set_yscale("log")
    ax.grid(True, which="both", linewidth=0.3)
    ax.legend(loc="upper left", fontsize="small")
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
