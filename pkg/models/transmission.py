from dataclasses import dataclass, field
from typing import Literal, Optional

from models.route import Route


@dataclass
class InteractionLog:
    entangle_count: int = 0
    teleport_count: int = 0
    qubits_consumed: int = 0
    qubits_lost: int = 0
    qubits_regenerated: int = 0


EventKind = Literal["route", "teleport", "create", "create_failed", "recalc", "give_up"]


@dataclass(frozen=True)
class TransmissionEvent:
    kind: EventKind
    node: int
    next_node: Optional[int] = None
    fidelity: Optional[float] = None
    route: Optional[Route] = None
    detail: str = ""


@dataclass
class TransmissionOutcome:
    delivered: bool
    end_to_end_fidelity: Optional[float]
    eprs_created: int = 0
    recalculations: int = 0
    hops_taken: int = 0
    per_hop_fidelities: list[float] = field(default_factory=list)
    path: list[int] = field(default_factory=list)
    final_route: Optional[Route] = None
    events: list[TransmissionEvent] = field(default_factory=list)
