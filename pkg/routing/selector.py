import math
from typing import Optional

from core.exceptions import InvalidRouteError
from core.logging_config import get_logger
from models.network import Network
from models.route import Route, Strategy
from network.topology import channel_between, check_node
from routing.cache import get_candidate_routes

logger = get_logger(__name__)


def validate_route(net: Network, route: Route) -> None:
    for node in route.nodes:
        check_node(net, node)
    for a, b in route.edges:
        if channel_between(net, a, b) is None:
            raise InvalidRouteError(f"Route {route} has non-adjacent hop ({a}, {b})")


def score_route(net: Network, route: Route, strategy: Strategy, epr_aggregate: str = "sum") -> float:
    """Score a route under one strategy; higher is better.

    MAX_FIDELITY: product of channel fidelities along the route.
    MAX_EPR: sum (or minimum, with epr_aggregate="min") of channel EPR counts.
    MAX_QUBITS: sum of free qubits over every node, endpoints included.
    """
    validate_route(net, route)
    return _route_score(net, route, strategy, epr_aggregate)


def _route_score(net: Network, route: Route, strategy: Strategy, epr_aggregate: str) -> float:
    match strategy:
        case Strategy.MAX_FIDELITY:
            return math.prod(channel_between(net, a, b).fidelity for a, b in route.edges)
        case Strategy.MAX_EPR:
            counts = [channel_between(net, a, b).epr_count for a, b in route.edges]
            return min(counts) if epr_aggregate == "min" else sum(counts)
        case Strategy.MAX_QUBITS:
            return sum(net.nodes[n].free_qubits for n in route.nodes)
        case _:
            raise ValueError(f"Unsupported strategy: {strategy}")


def select_route(
    net: Network,
    src: int,
    dst: int,
    edge_len: int,
    strategy: Strategy,
    epr_aggregate: str = "sum",
) -> Optional[Route]:
    """Best-scoring route of exactly edge_len edges; ties go to the smallest node sequence."""
    candidates = get_candidate_routes(net, src, dst, edge_len)
    best: Optional[Route] = None
    best_score = -math.inf
    for route in candidates:
        score = _route_score(net, route, strategy, epr_aggregate)
        if score > best_score:
            best, best_score = route, score

    if best is None:
        logger.debug(f"No route of length {edge_len} from {src} to {dst}")
    return best
