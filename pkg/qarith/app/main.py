"""Command-line entry point for the arithmetic resource toolkit."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from datetime import datetime, timezone
from logging import config as logging_config
from pathlib import Path
from typing import Dict, Optional, Sequence

from pydantic import ValidationError

from .core.arith import AdderSpec, ClaVariant, Family, build, hybrid_policy
from .core.circuit import Circuit, from_text, to_text
from .core.config import AppConfig, load_config
from .core.errors import QarithError
from .core.expansion import ExpansionPolicy, Replacement, expand
from .core.schedule import report
from .core.simulator import verify_arithmetic
from .core.toffoli import DecompKind, cost_table
from .services.reporting import (
    REPORT_COLUMNS,
    render,
    report_row,
    write_kq_chart,
)
from .services.resources import (
    HYBRID,
    TradeoffParams,
    adder_kq_series,
    cnot_measure_tradeoff,
    multiplier_kq_series,
    odb_cnot_saving,
)
from .services.scenarios import ScenarioId, compare_scenarios, crossovers
from .services.topology import (
    builtin_graph,
    builtin_graphs,
    cnot_overhead_estimate,
    summarize,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

DECOMP_CHOICES = ["st", "0at3", "4at1", "rt3", "rt4", "and"]


class JsonFormatter(logging.Formatter):
    """Simple JSON formatter for structured logging."""

    def format(self, record: logging.LogRecord) -> str:  # type: ignore[override]
        log_record = {
            "timestamp": datetime.fromtimestamp(
                record.created, tz=timezone.utc
            ).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            log_record["exc_info"] = self.formatException(record.exc_info)
        if record.stack_info:
            log_record["stack_info"] = self.formatStack(record.stack_info)
        if record.pathname:
            log_record["path"] = record.pathname
        if record.funcName:
            log_record["func"] = record.funcName
        if record.lineno:
            log_record["line"] = record.lineno
        return json.dumps(log_record, ensure_ascii=False)


def configure_logging() -> None:
    if getattr(configure_logging, "_configured", False):
        return

    log_level = (
        os.getenv("QARITH_LOG_LEVEL") or os.getenv("LOG_LEVEL") or "WARNING"
    ).upper()

    logging_config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {"json": {"()": JsonFormatter}},
            "handlers": {
                "default": {
                    "class": "logging.StreamHandler",
                    "formatter": "json",
                    "stream": "ext://sys.stderr",
                }
            },
            "root": {"handlers": ["default"], "level": log_level},
        }
    )

    configure_logging._configured = True  # type: ignore[attr-defined]


logger = logging.getLogger(__name__)


class UsageError(QarithError):
    """Command-line arguments that parse but do not fit together."""


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_circuit(path: Optional[str]) -> Circuit:
    if path and path != "-":
        return from_text(Path(path).read_text(encoding="utf-8"))
    return from_text(sys.stdin.read())


def _policy(args: argparse.Namespace, config: AppConfig) -> ExpansionPolicy:
    if getattr(args, "hybrid", False):
        return hybrid_policy()
    replacement = getattr(args, "replacement", None)
    if replacement:
        return ExpansionPolicy(
            replacement=Replacement(replacement), allow_relative_phase=True
        )
    kind = DecompKind(args.decomp) if args.decomp else config.expansion.default_decomp
    odb_kind = DecompKind(args.odb_kind) if args.odb_kind else config.expansion.odb_kind
    return ExpansionPolicy(
        default=kind,
        odb_enabled=args.odb,
        odb_kind=odb_kind,
        phase_fix=args.phase_fix or config.expansion.odb_phase_fix,
        use_legacy_0at3_depth=config.expansion.legacy_0at3 and not args.scheduled,
        allow_relative_phase=kind.relative_phase,
    )


def _spec(args: argparse.Namespace) -> AdderSpec:
    variant = ClaVariant(args.variant) if args.variant else None
    return AdderSpec(n=args.n, family=Family(args.family), variant=variant)


def _built(args: argparse.Namespace, config: AppConfig) -> Circuit:
    spec = _spec(args)
    circuit, _ = build(spec)
    if spec.variant is None:
        circuit = expand(circuit, _policy(args, config))
    return circuit


def _decomp_label(args: argparse.Namespace, config: AppConfig) -> str:
    if getattr(args, "variant", None):
        return args.variant
    if getattr(args, "hybrid", False):
        return HYBRID
    if getattr(args, "replacement", None):
        return args.replacement
    label = args.decomp or config.expansion.default_decomp.value
    return f"{label}+odb" if args.odb else label


def cmd_build(args: argparse.Namespace, config: AppConfig) -> int:
    circuit, _ = build(_spec(args))
    _emit(to_text(circuit), args.output)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, config: AppConfig) -> int:
    circuit = expand(_read_circuit(args.input), _policy(args, config))
    _emit(to_text(circuit), args.output)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, config: AppConfig) -> int:
    if args.formula:
        kind = args.decomp or config.expansion.default_decomp.value
        if args.hybrid:
            kind = HYBRID
        top = args.n_max or args.n
        if not top:
            raise UsageError("--formula needs --n or --n-max")
        ns = range(config.scenarios.n_min, top + 1)
        if args.family == Family.MULTIPLIER.value:
            rows = multiplier_kq_series(kind, ns)
        else:
            rows = adder_kq_series(DecompKind(kind), ns)
        columns = ["n", "D", "T", "Qub", "CNOT", "KQ", "KQ_T"]
        sys.stdout.write(render(rows, columns, args.format))
        return EXIT_OK

    if args.input:
        circuit, n, family = _read_circuit(args.input), 0, "circuit"
    elif args.family and args.n:
        circuit, n, family = _built(args, config), args.n, args.family
    else:
        raise UsageError("analyze needs --input or --family with --n")
    serial = args.serial_t or args.variant == ClaVariant.ALL_SEQUENTIAL_4AT1.value
    result = report(circuit, serial_t=serial)
    if result.has_unexpanded:
        logger.warning("report includes %d unexpanded Toffoli gates", result.unexpanded)
    row = report_row(n, family, _decomp_label(args, config), result)
    sys.stdout.write(render([row], REPORT_COLUMNS, args.format))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, config: AppConfig) -> int:
    n_min = args.n_min or config.scenarios.n_min
    n_max = args.n_max or config.scenarios.n_max
    step = args.n_step or config.scenarios.n_step
    if args.scenarios == "all":
        scenarios = list(ScenarioId)
    else:
        scenarios = [ScenarioId(name) for name in args.scenarios.split(",")]
    rows = compare_scenarios(range(n_min, n_max + 1, step), scenarios)
    columns = ["n", "scenario", "depth", "t_depth", "t_count", "width", "kq", "kq_t"]
    _emit(render([row.snapshot() for row in rows], columns, args.format), args.output)
    if args.svg:
        write_kq_chart(rows, Path(args.svg))
    if args.crossovers:
        points = [
            {"rc": p.rc.value, "cl": p.cl.value, "n": p.n, "qubits": p.qubits}
            for p in crossovers(rows)
        ]
        sys.stderr.write(json.dumps(points) + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: AppConfig) -> int:
    spec = _spec(args)
    policy = None if spec.variant is not None else _policy(args, config)
    verdict = verify_arithmetic(spec, policy, config.simulator)
    sys.stdout.write(json.dumps(verdict.snapshot(), default=str) + "\n")
    return EXIT_OK if verdict.equal else EXIT_VERIFY_FAILED


def cmd_tradeoff(args: argparse.Namespace, config: AppConfig) -> int:
    defaults = config.tradeoff
    overhead = args.overhead if args.overhead is not None else defaults.cnot_overhead
    if args.graph:
        device = builtin_graph(args.graph, config.topology.data_dir)
        overhead = cnot_overhead_estimate(device)
    saved = args.saved
    if saved is None:
        saved = odb_cnot_saving(DecompKind(args.baseline))
    meas_error = args.meas_error if args.meas_error is not None else defaults.meas_error
    cnot_error = args.cnot_error if args.cnot_error is not None else defaults.cnot_error
    params = TradeoffParams(
        meas_error=meas_error,
        cnot_error=cnot_error,
        cnot_overhead=overhead,
        cnots_saved_per_pair=saved,
    )
    result = cnot_measure_tradeoff(params)
    sys.stdout.write(json.dumps({**params.dict(), **result.snapshot()}) + "\n")
    return EXIT_OK


def cmd_topology(args: argparse.Namespace, config: AppConfig) -> int:
    data_dir = config.topology.data_dir
    if args.graph == "all":
        graphs = builtin_graphs(data_dir)
    else:
        graphs = [builtin_graph(args.graph, data_dir)]
    metrics = ["name", *args.metrics.split(",")]
    rows = [summarize(graph) for graph in graphs]
    selected = [{key: row[key] for key in metrics} for row in rows]
    sys.stdout.write(render(selected, metrics, args.format))
    return EXIT_OK


def cmd_cost_table(args: argparse.Namespace, config: AppConfig) -> int:
    rows = [{"kind": kind.value, **row.snapshot()} for kind, row in cost_table()]
    columns = ["kind", "depth", "cnot_c", "t_d", "t_c", "ancillae"]
    columns += ["legacy_depth", "caveat"]
    if not args.all:
        rows = [row for row in rows if row["kind"] != DecompKind.BARENCO.value]
    sys.stdout.write(render(rows, columns, args.format))
    return EXIT_OK


def _add_family(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--family", choices=[f.value for f in Family], required=required
    )
    parser.add_argument("--n", type=int, required=required)
    parser.add_argument("--variant", choices=[v.value for v in ClaVariant])


def _add_policy(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--decomp", choices=DECOMP_CHOICES)
    parser.add_argument(
        "--odb", action="store_true", help="measure out paired Toffolis"
    )
    parser.add_argument("--odb-kind", choices=["rt3", "rt4", "and"])
    parser.add_argument("--phase-fix", action="store_true")
    parser.add_argument(
        "--hybrid", action="store_true", help="0AT3 head, 4AT1 elsewhere"
    )
    parser.add_argument("--replacement", choices=[r.value for r in Replacement])
    parser.add_argument(
        "--scheduled", action="store_true", help="use the nine-layer 0AT3 ordering"
    )


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qarith",
        description="Build, lower, verify and cost quantum arithmetic circuits.",
    )
    parser.add_argument("--config", help="Path to a YAML configuration file.")
    parser.add_argument(
        "--meta", action="store_true", help="Print run metadata to stderr."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    build_cmd = commands.add_parser("build", help="emit an unexpanded circuit")
    _add_family(build_cmd)
    build_cmd.add_argument("--output")
    build_cmd.set_defaults(handler=cmd_build)

    decompose = commands.add_parser("decompose", help="lower Toffolis to Clifford+T")
    decompose.add_argument("--input", help="circuit text file, '-' for stdin")
    decompose.add_argument("--output")
    _add_policy(decompose)
    decompose.set_defaults(handler=cmd_decompose)

    analyze = commands.add_parser("analyze", help="resource report of a circuit")
    analyze.add_argument("--input")
    _add_family(analyze, required=False)
    _add_policy(analyze)
    analyze.add_argument("--serial-t", action="store_true")
    analyze.add_argument("--formula", action="store_true", help="closed-form KQ series")
    analyze.add_argument("--n-max", type=int)
    _add_format(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    compare = commands.add_parser("compare", help="ripple-carry vs carry-lookahead KQ")
    compare.add_argument("--scenarios", default="all")
    compare.add_argument("--n-min", type=int)
    compare.add_argument("--n-max", type=int)
    compare.add_argument("--n-step", type=int)
    compare.add_argument("--svg")
    compare.add_argument("--output")
    compare.add_argument("--crossovers", action="store_true")
    _add_format(compare)
    compare.set_defaults(handler=cmd_compare)

    verify = commands.add_parser("verify", help="exhaustive simulation check")
    _add_family(verify)
    _add_policy(verify)
    verify.set_defaults(handler=cmd_verify)

    tradeoff = commands.add_parser("tradeoff", help="CNOT vs measurement error budget")
    tradeoff.add_argument("--meas-error", type=float)
    tradeoff.add_argument("--cnot-error", type=float)
    tradeoff.add_argument("--overhead", type=float)
    tradeoff.add_argument("--saved", type=int)
    tradeoff.add_argument("--baseline", choices=["st", "0at3", "4at1"], default="0at3")
    tradeoff.add_argument("--graph")
    tradeoff.set_defaults(handler=cmd_tradeoff)

    topology = commands.add_parser("topology", help="coupling-graph metrics")
    topology.add_argument("--graph", default="all")
    topology.add_argument(
        "--metrics", default="nodes,edges,cpl,cc,diameter,cnot_overhead"
    )
    _add_format(topology)
    topology.set_defaults(handler=cmd_topology)

    table = commands.add_parser("cost-table", help="Toffoli decomposition costs")
    table.add_argument("--all", action="store_true", help="include derived rows")
    _add_format(table)
    table.set_defaults(handler=cmd_cost_table)
    return parser


def _fail(exc: Exception) -> int:
    detail = str(exc) if not isinstance(exc, KeyError) else f"unknown name {exc}"
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "detail": detail}) + "\n")
    return EXIT_USAGE


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = load_config(Path(args.config) if args.config else None)
        if args.meta:
            meta: Dict[str, object] = {
                "command": args.command,
                "argv": list(argv or []),
            }
            sys.stderr.write(json.dumps(meta) + "\n")
        return args.handler(args, config)
    except (QarithError, ValidationError, KeyError, ValueError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        return _fail(exc)


def main() -> None:
    configure_logging()
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
