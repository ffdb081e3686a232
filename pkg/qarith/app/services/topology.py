"""Device coupling graphs and their connectivity metrics."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

import networkx as nx

from ..core.config import DEFAULT_TOPOLOGY_DIR
from ..core.errors import DisconnectedGraphError, GraphFormatError

logger = logging.getLogger(__name__)

DEVICE_FILES: Dict[str, str] = {
    "tokyo": "tokyo.txt",
    "rochester": "rochester.txt",
    "sycamore": "sycamore.txt",
    "hummingbird": "hummingbird.txt",
}


@dataclass(frozen=True)
class DeviceGraph:
    name: str
    graph: nx.Graph

    @property
    def nodes(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def edges(self) -> List[tuple]:
        return sorted(tuple(sorted(edge)) for edge in self.graph.edges())


def grid(rows: int, columns: int) -> DeviceGraph:
    graph = nx.convert_node_labels_to_integers(
        nx.grid_2d_graph(rows, columns), ordering="sorted"
    )
    return DeviceGraph(f"grid_{rows}x{columns}", graph)


def parse_graph(text: str, name: str) -> DeviceGraph:
    """Parse ``n m`` followed by ``m`` lines of ``u v``."""

    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphFormatError(f"{name}: missing 'n m' header")
    try:
        nodes, count = int(lines[0][0]), int(lines[0][1])
        pairs = [(int(u), int(v)) for u, v in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"{name}: {exc}") from exc
    if len(pairs) != count:
        raise GraphFormatError(f"{name}: header declares {count} edges, found {len(pairs)}")
    graph = nx.Graph()
    graph.add_nodes_from(range(nodes))
    for u, v in pairs:
        if u == v:
            raise GraphFormatError(f"{name}: self-loop on {u}")
        if not (0 <= u < nodes and 0 <= v < nodes):
            raise GraphFormatError(f"{name}: edge {u}-{v} outside {nodes} nodes")
        if graph.has_edge(u, v):
            raise GraphFormatError(f"{name}: duplicate edge {u}-{v}")
        graph.add_edge(u, v)
    return DeviceGraph(name, graph)


def load_graph(path: Path, name: Optional[str] = None) -> DeviceGraph:
    return parse_graph(path.read_text(encoding="utf-8"), name or path.stem)


def builtin_graphs(data_dir: Optional[Path] = None) -> List[DeviceGraph]:
    data_dir = data_dir or DEFAULT_TOPOLOGY_DIR
    graphs = [grid(4, 5), grid(7, 8)]
    graphs.extend(load_graph(data_dir / file, name) for name, file in DEVICE_FILES.items())
    return graphs


def builtin_graph(name: str, data_dir: Optional[Path] = None) -> DeviceGraph:
    for graph in builtin_graphs(data_dir):
        if graph.name == name:
            return graph
    raise KeyError(name)


def cpl(device: DeviceGraph) -> float:
    """Mean shortest-path length over unordered pairs of distinct nodes."""

    graph = device.graph
    if graph.number_of_nodes() < 2 or not nx.is_connected(graph):
        raise DisconnectedGraphError(f"{device.name} is not a connected graph")
    return float(nx.average_shortest_path_length(graph))


def clustering_coefficient(device: DeviceGraph) -> float:
    if device.graph.number_of_nodes() == 0:
        return 0.0
    return float(nx.average_clustering(device.graph))


def cnot_overhead_estimate(device: DeviceGraph) -> int:
    """Physical CNOTs per logical CNOT, taken as the rounded path length."""

    return math.floor(cpl(device) + 0.5)


def summarize(device: DeviceGraph) -> Dict[str, object]:
    path_length = cpl(device)
    summary = {
        "name": device.name,
        "nodes": device.nodes,
        "edges": device.graph.number_of_edges(),
        "cpl": round(path_length, 4),
        "cc": round(clustering_coefficient(device), 4),
        "diameter": nx.diameter(device.graph),
        "cnot_overhead": math.floor(path_length + 0.5),
    }
    logger.debug("topology summary %s", summary)
    return summary
