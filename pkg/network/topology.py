"""
Lattice construction and read-only graph queries.

Nodes are indexed row-major (index = row * cols + col). Channels are keyed by
the sorted endpoint pair, so lookups are symmetric in argument order.
"""

from typing import Optional

import networkx as nx
import numpy as np

from core.exceptions import InvalidDimensionsError, InvalidNodeError
from core.logging_config import get_logger
from models.network import Channel, Network, NodeState, SimParams, channel_key

logger = get_logger(__name__)


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    return np.random.default_rng(seed)


def build_lattice(params: SimParams, rng: np.random.Generator) -> Network:
    if params.rows < 2 or params.cols < 2:
        raise InvalidDimensionsError(
            f"Lattice needs at least 2 rows and 2 cols, got {params.rows}x{params.cols}"
        )

    grid = nx.grid_2d_graph(params.rows, params.cols)
    graph = nx.relabel_nodes(grid, {(r, c): r * params.cols + c for r, c in grid.nodes})
    node_count = params.rows * params.cols

    keys = sorted(channel_key(a, b) for a, b in graph.edges)
    fidelities = rng.uniform(params.fidelity_low, params.fidelity_high, size=len(keys))

    channels = {}
    for key, drawn in zip(keys, fidelities):
        fidelity = float(drawn)
        channels[key] = Channel(
            a=key[0],
            b=key[1],
            epr_count=params.initial_epr,
            fidelity=fidelity,
            initial_fidelity=fidelity,
        )

    nodes = [
        NodeState(id=i, free_qubits=params.initial_qubits, capacity=params.capacity)
        for i in range(node_count)
    ]
    adjacency = [sorted(graph.neighbors(i)) for i in range(node_count)]

    distances = dict(nx.all_pairs_shortest_path_length(graph))
    hop_distances = [[distances[a][b] for b in range(node_count)] for a in range(node_count)]

    logger.debug(f"Built {params.rows}x{params.cols} lattice: {node_count} nodes, {len(channels)} channels")
    return Network(
        rows=params.rows,
        cols=params.cols,
        nodes=nodes,
        channels=channels,
        adjacency=adjacency,
        hop_distances=hop_distances,
    )


def check_node(net: Network, n: int) -> None:
    if not 0 <= n < net.node_count:
        raise InvalidNodeError(n, net.node_count)


def neighbors(net: Network, n: int) -> list[int]:
    check_node(net, n)
    return list(net.adjacency[n])


def channel_between(net: Network, a: int, b: int) -> Optional[Channel]:
    return net.channels.get(channel_key(a, b))


def lattice_hop_distance(net: Network, a: int, b: int) -> int:
    check_node(net, a)
    check_node(net, b)
    return net.hop_distances[a][b]


def network_to_dict(net: Network) -> dict:
    return {
        "rows": net.rows,
        "cols": net.cols,
        "nodes": [
            {"id": node.id, "free_qubits": node.free_qubits, "capacity": node.capacity}
            for node in net.nodes
        ],
        "channels": [
            {
                "endpoints": [channel.a, channel.b],
                "epr_count": channel.epr_count,
                "fidelity": channel.fidelity,
                "initial_fidelity": channel.initial_fidelity,
            }
            for channel in net.sorted_channels()
        ],
    }
