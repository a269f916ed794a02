from typing import List

from core.logging_config import get_logger
from models.network import Network
from models.route import Route
from routing.paths import enumerate_simple_paths

logger = get_logger(__name__)


def get_candidate_routes(net: Network, src: int, dst: int, edge_len: int) -> List[Route]:
    key = (src, dst, edge_len)
    cached = net.path_cache.get(key)
    if cached is not None:
        return cached

    routes = enumerate_simple_paths(net, src, dst, edge_len)
    logger.debug(f"Cache miss for src={src}, dst={dst}, edge_len={edge_len} - {len(routes)} candidate routes")
    net.path_cache[key] = routes
    return routes
