from dataclasses import dataclass
from enum import Enum

from core.exceptions import InvalidRouteError


class Strategy(str, Enum):
    MAX_FIDELITY = "max_fidelity"
    MAX_EPR = "max_epr"
    MAX_QUBITS = "max_qubits"

    @property
    def index(self) -> int:
        return list(Strategy).index(self)


@dataclass(frozen=True, order=True)
class Route:
    """Ordered simple path, compared lexicographically on the node sequence."""
    nodes: tuple[int, ...]

    def __post_init__(self):
        if len(self.nodes) < 2:
            raise InvalidRouteError(f"Route needs at least 2 nodes, got {list(self.nodes)}")
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidRouteError(f"Route {list(self.nodes)} revisits a node")

    @property
    def edge_count(self) -> int:
        return len(self.nodes) - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.nodes, self.nodes[1:]))

    @property
    def src(self) -> int:
        return self.nodes[0]

    @property
    def dst(self) -> int:
        return self.nodes[-1]

    def __str__(self) -> str:
        return " -> ".join(str(n) for n in self.nodes)
