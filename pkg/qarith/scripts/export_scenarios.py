#!/usr/bin/env python3
"""Export the adder scenario comparison as a CSV table and an SVG chart."""

from __future__ import annotations

import argparse
from pathlib import Path

from qarith.app.core.config import AppConfig
from qarith.app.services.reporting import to_csv, write_kq_chart
from qarith.app.services.scenarios import compare_scenarios

COLUMNS = ["n", "scenario", "depth", "t_depth", "t_count", "width", "kq", "kq_t"]


def export(config: AppConfig, output_dir: Path) -> None:
    settings = config.scenarios
    rows = compare_scenarios(range(settings.n_min, settings.n_max + 1, settings.n_step))
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / "scenarios.csv").write_text(
        to_csv([row.snapshot() for row in rows], COLUMNS), encoding="utf-8"
    )
    write_kq_chart(rows, output_dir / "scenarios.svg")


def main() -> None:
    parser = argparse.ArgumentParser(
        description="Write scenarios.csv and scenarios.svg for the configured n range."
    )
    parser.add_argument(
        "--config",
        default="qarith/config/app.yaml",
        help="Path to the application config (default qarith/config/app.yaml).",
    )
    parser.add_argument(
        "--n-max",
        type=int,
        help="Largest operand width. Defaults to scenarios.n_max from the config.",
    )
    parser.add_argument(
        "--output-dir",
        required=True,
        help="Directory that receives scenarios.csv and scenarios.svg.",
    )
    args = parser.parse_args()

    config = AppConfig.from_yaml(Path(args.config))
    if args.n_max:
        config.scenarios.n_max = args.n_max

    export(config, Path(args.output_dir))


if __name__ == "__main__":
    main()
