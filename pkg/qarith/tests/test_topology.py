"""Tests for device coupling graphs and their metrics."""

from __future__ import annotations

from pathlib import Path

import networkx as nx
import pytest

from qarith.app.core.errors import DisconnectedGraphError, GraphFormatError
from qarith.app.services.topology import (
    DeviceGraph,
    builtin_graph,
    builtin_graphs,
    clustering_coefficient,
    cnot_overhead_estimate,
    cpl,
    grid,
    load_graph,
    parse_graph,
    summarize,
)


def test_builtin_graph_sizes() -> None:
    sizes = {graph.name: (graph.nodes, len(graph.edges)) for graph in builtin_graphs()}

    assert sizes == {
        "grid_4x5": (20, 31),
        "grid_7x8": (56, 97),
        "tokyo": (20, 43),
        "rochester": (54, 59),
        "sycamore": (54, 88),
        "hummingbird": (64, 70),
    }


@pytest.mark.parametrize(
    "name,expected,tolerance",
    [
        ("grid_4x5", 3.0, 1e-9),
        ("grid_7x8", 5.0, 0.1),
        ("tokyo", 2.25, 0.1),
        ("sycamore", 4.98, 0.15),
        ("rochester", 7.39, 0.2),
        ("hummingbird", 7.89, 0.2),
    ],
)
def test_characteristic_path_length(
    name: str, expected: float, tolerance: float
) -> None:
    assert cpl(builtin_graph(name)) == pytest.approx(expected, abs=tolerance)


def test_clustering_coefficient() -> None:
    assert clustering_coefficient(builtin_graph("tokyo")) == pytest.approx(
        0.47, abs=0.03
    )
    for name in ("grid_4x5", "grid_7x8", "rochester", "sycamore", "hummingbird"):
        assert clustering_coefficient(builtin_graph(name)) == 0.0


@pytest.mark.parametrize(
    "name,overhead",
    [
        ("tokyo", 2),
        ("grid_4x5", 3),
        ("sycamore", 5),
        ("rochester", 7),
        ("hummingbird", 8),
    ],
)
def test_cnot_overhead_rounds_path_length(name: str, overhead: int) -> None:
    assert cnot_overhead_estimate(builtin_graph(name)) == overhead


def test_disconnected_graph_has_no_path_length() -> None:
    graph = nx.Graph()
    graph.add_nodes_from(range(4))
    graph.add_edges_from([(0, 1), (2, 3)])

    with pytest.raises(DisconnectedGraphError):
        cpl(DeviceGraph("split", graph))


@pytest.mark.parametrize(
    "text,message",
    [
        ("", "header"),
        ("3 2\n0 1\n", "declares"),
        ("3 1\n1 1\n", "self-loop"),
        ("3 1\n0 3\n", "outside"),
        ("3 2\n0 1\n1 0\n", "duplicate"),
        ("3 1\n0 x\n", "invalid literal"),
    ],
)
def test_parse_graph_rejects_malformed_files(text: str, message: str) -> None:
    with pytest.raises(GraphFormatError) as excinfo:
        parse_graph(text, "bad")

    assert message in str(excinfo.value)


def test_load_graph_names_graph_after_file(tmp_path: Path) -> None:
    path = tmp_path / "ring.txt"
    path.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n", encoding="utf-8")

    ring = load_graph(path)

    assert ring.name == "ring"
    assert cpl(ring) == pytest.approx(4 / 3)


def test_builtin_graph_unknown_name() -> None:
    with pytest.raises(KeyError):
        builtin_graph("falcon")


def test_summarize_grid() -> None:
    summary = summarize(grid(4, 5))

    assert summary == {
        "name": "grid_4x5",
        "nodes": 20,
        "edges": 31,
        "cpl": 3.0,
        "cc": 0.0,
        "diameter": 7,
        "cnot_overhead": 3,
    }
