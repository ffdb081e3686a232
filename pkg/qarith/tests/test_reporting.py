"""Tests for CSV/JSON rendering and the SVG chart."""

from __future__ import annotations

import json
from pathlib import Path

from qarith.app.core.circuit import Circuit
from qarith.app.core.config import AppConfig, ScenarioConfig
from qarith.app.core.schedule import report
from qarith.app.services.reporting import (
    REPORT_COLUMNS,
    render,
    report_row,
    scenario_series,
    to_csv,
    write_kq_chart,
)
from qarith.app.services.scenarios import ScenarioId, ScenarioRow
from qarith.scripts.export_scenarios import export


def _rows():
    return [
        ScenarioRow(8, ScenarioId.CL_RTX, 50, 10, 20, 30, 1500, 300),
        ScenarioRow(4, ScenarioId.CL_RTX, 30, 8, 10, 15, 450, 120),
        ScenarioRow(4, ScenarioId.RC_CTRL_4AT1, 103, 14, 98, 15, 1545, 210),
    ]


def test_report_row_uses_fixed_columns() -> None:
    row = report_row(2, "demo", "st", report(Circuit().t(0).cx(0, 1)))

    assert list(row) == REPORT_COLUMNS
    assert row["kq"] == 4
    assert row["cnot"] == 1


def test_csv_has_stable_header_and_unix_newlines() -> None:
    text = to_csv([{"n": 2, "kq": 4, "ignored": 1}], ["n", "kq"])

    assert text == "n,kq\n2,4\n"


def test_render_json() -> None:
    rows = [{"n": 2, "kq": 4}]

    assert json.loads(render(rows, ["n", "kq"], "json")) == rows
    assert render(rows, ["n", "kq"], "csv").startswith("n,kq\n")


def test_scenario_series_groups_and_sorts() -> None:
    series = scenario_series(_rows())

    assert set(series) == {ScenarioId.CL_RTX, ScenarioId.RC_CTRL_4AT1}
    assert [row.n for row in series[ScenarioId.CL_RTX]] == [4, 8]


def test_chart_is_byte_stable(tmp_path: Path) -> None:
    first, second = tmp_path / "a.svg", tmp_path / "nested" / "b.svg"

    write_kq_chart(_rows(), first)
    write_kq_chart(_rows(), second)

    content = first.read_text(encoding="utf-8")
    assert content.lstrip().startswith("<?xml")
    assert "<svg" in content
    assert content == second.read_text(encoding="utf-8")


def test_export_script_writes_table_and_chart(tmp_path: Path) -> None:
    config = AppConfig(scenarios=ScenarioConfig(n_min=4, n_max=8, n_step=4))

    export(config, tmp_path / "out")

    table = tmp_path / "out" / "scenarios.csv"
    lines = table.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,scenario,depth,t_depth,t_count,width,kq,kq_t"
    assert len(lines) == 1 + 2 * len(ScenarioId)
    assert (tmp_path / "out" / "scenarios.svg").exists()
