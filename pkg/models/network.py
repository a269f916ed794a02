from dataclasses import dataclass, field
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator


class SimParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    rows: int = Field(3, ge=1)
    cols: int = Field(4, ge=1)
    capacity: int = Field(10, gt=0)
    initial_qubits: int = Field(8, ge=0)
    initial_epr: int = Field(1, ge=0)
    f_min: float = Field(0.5, gt=0.0, le=1.0)
    fidelity_low: float = Field(0.85, le=1.0)
    fidelity_high: float = Field(1.0, le=1.0)
    gamma: float = Field(0.995, gt=0.0, le=1.0)
    p_loss: float = Field(0.01, ge=0.0, le=1.0)
    p_regen: float = Field(0.2, ge=0.0, le=1.0)
    max_recalcs: int = Field(10, gt=0)
    seed: int = Field(0, ge=0, lt=2**64)
    epr_aggregate: Literal["sum", "min"] = "sum"
    decoherence_scope: Literal["network", "route"] = "network"

    @field_validator("initial_qubits")
    @classmethod
    def _qubits_within_capacity(cls, v: int, info: ValidationInfo) -> int:
        capacity = info.data.get("capacity")
        if capacity is not None and v > capacity:
            raise ValueError(f"initial_qubits ({v}) exceeds capacity ({capacity})")
        return v

    @field_validator("fidelity_low")
    @classmethod
    def _low_above_floor(cls, v: float, info: ValidationInfo) -> float:
        f_min = info.data.get("f_min")
        if f_min is not None and v < f_min:
            raise ValueError(f"fidelity_low ({v}) is below f_min ({f_min})")
        return v

    @field_validator("fidelity_high")
    @classmethod
    def _high_above_low(cls, v: float, info: ValidationInfo) -> float:
        low = info.data.get("fidelity_low")
        if low is not None and v < low:
            raise ValueError(f"fidelity_high ({v}) is below fidelity_low ({low})")
        return v


@dataclass
class NodeState:
    id: int
    free_qubits: int
    capacity: int


@dataclass
class Channel:
    """Undirected link; a < b always."""
    a: int
    b: int
    epr_count: int
    fidelity: float
    initial_fidelity: float

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.a, self.b)


ChannelKey = tuple[int, int]


def channel_key(a: int, b: int) -> ChannelKey:
    return (a, b) if a < b else (b, a)


@dataclass
class Network:
    # hop_distances: all-pairs BFS table fixed at build time.
    # path_cache: candidate routes per (src, dst, edge_len), excluded from equality.
    rows: int
    cols: int
    nodes: list[NodeState]
    channels: dict[ChannelKey, Channel]
    adjacency: list[list[int]]
    hop_distances: list[list[int]] = field(repr=False)
    path_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def sorted_channels(self) -> list[Channel]:
        return [self.channels[key] for key in sorted(self.channels)]
