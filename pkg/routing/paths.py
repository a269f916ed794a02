from core.exceptions import InvalidRouteError
from models.network import Network
from models.route import Route
from network.topology import check_node


def enumerate_simple_paths(net: Network, src: int, dst: int, edge_len: int) -> list[Route]:
    """All simple paths from src to dst with exactly edge_len edges, in lexicographic order."""
    check_node(net, src)
    check_node(net, dst)
    if src == dst:
        raise InvalidRouteError(f"Source and destination are both node {src}")
    if edge_len < 1:
        raise InvalidRouteError(f"Route length must be at least 1, got {edge_len}")

    to_dst = [row[dst] for row in net.hop_distances]
    if to_dst[src] > edge_len:
        return []

    found: list[Route] = []
    path = [src]
    visited = {src}

    def extend(node: int, remaining: int) -> None:
        if remaining == 0:
            if node == dst:
                found.append(Route(tuple(path)))
            return
        for nxt in net.adjacency[node]:
            if nxt in visited or to_dst[nxt] > remaining - 1:
                continue
            # dst may only appear as the last node
            if nxt == dst and remaining != 1:
                continue
            visited.add(nxt)
            path.append(nxt)
            extend(nxt, remaining - 1)
            path.pop()
            visited.remove(nxt)

    extend(src, edge_len)
    return found
