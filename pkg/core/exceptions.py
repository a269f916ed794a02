class QNetError(Exception):
    pass


class InvalidDimensionsError(QNetError, ValueError):
    pass


class InvalidNodeError(QNetError, ValueError):
    def __init__(self, node: int, node_count: int):
        self.node = node
        self.node_count = node_count
        super().__init__(f"Invalid node id {node} (network has {node_count} nodes)")


class NotAdjacentError(QNetError, ValueError):
    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        super().__init__(f"Nodes {a} and {b} do not share a channel")


class InsufficientQubitsError(QNetError):
    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        super().__init__(f"Cannot create EPR pair on ({a}, {b}): an endpoint has no free qubit")


class NoEprAvailableError(QNetError):
    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        super().__init__(f"No EPR pair available on channel ({a}, {b})")


class InvalidRouteError(QNetError, ValueError):
    pass


class EndpointSelectionError(QNetError, ValueError):
    pass


class ConfigError(QNetError, ValueError):
    """Configuration problem, tied to the line (or flag) that caused it."""

    def __init__(self, message: str, line: int | None = None, key: str | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.key = key
        self.source = source
        super().__init__(self._render())

    def _render(self) -> str:
        parts = []
        if self.line is not None:
            parts.append(f"line {self.line}")
        elif self.source:
            parts.append(self.source)
        if self.key:
            parts.append(self.key)
        parts.append(self.message)
        return ": ".join(parts)
