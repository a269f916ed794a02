from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from models.network import SimParams
from models.route import Strategy


DEFAULT_ROUTE_LENGTHS = [2, 3, 4, 5, 6, 7, 8]


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    sim: SimParams = Field(default_factory=SimParams)
    qubits_per_run: int = Field(100, gt=0)
    replications: int = Field(100, gt=0)
    route_lengths: List[int] = Field(default_factory=lambda: list(DEFAULT_ROUTE_LENGTHS), min_length=1)
    strategies: List[Strategy] = Field(default_factory=lambda: list(Strategy), min_length=1)
    master_seed: int = Field(0, ge=0, lt=2**64)
    workers: int = Field(1, gt=0)

    @field_validator("route_lengths")
    @classmethod
    def _positive_lengths(cls, v: List[int]) -> List[int]:
        for length in v:
            if length < 1:
                raise ValueError(f"route length must be positive, got {length}")
        return v


class ReplicationResult(BaseModel):
    # mean_delivered_fidelity is None when no qubit was delivered
    mean_delivered_fidelity: Optional[float] = Field(None, ge=0.0, le=1.0)
    epr_per_qubit: float = Field(ge=0.0)
    recalc_per_qubit: float = Field(ge=0.0)
    delivery_rate: float = Field(ge=0.0, le=1.0)


class ReplicationRecord(BaseModel):
    strategy: Strategy
    route_length: int
    replication: int
    result: ReplicationResult


class TableRow(BaseModel):
    strategy: Strategy
    route_length: int
    # None when no replication delivered a qubit
    mean_fidelity: Optional[float] = None
    std_fidelity: Optional[float] = Field(None, ge=0.0)
    mean_epr_per_qubit: float
    std_epr_per_qubit: float = Field(ge=0.0)
    mean_recalc_per_qubit: float
    std_recalc_per_qubit: float = Field(ge=0.0)
    delivery_rate: float = Field(ge=0.0, le=1.0)


class ExperimentTable(BaseModel):
    rows: List[TableRow]
    raw: List[ReplicationRecord] = Field(default_factory=list)

    def row(self, strategy: Strategy, route_length: int) -> TableRow:
        for row in self.rows:
            if row.strategy == strategy and row.route_length == route_length:
                return row
        raise KeyError((strategy, route_length))


class TrendCheck(BaseModel):
    """MaxEpr against the other two strategies at one route length."""
    route_length: int
    fidelity_highest: bool
    recalc_highest: bool

    @property
    def passed(self) -> bool:
        return self.fidelity_highest and self.recalc_highest
