"""Opportunistic hop-by-hop transmission of a single qubit."""

import math
from typing import Optional

import numpy as np

from core.exceptions import InsufficientQubitsError, InvalidRouteError
from core.logging_config import get_logger
from models.network import Network, SimParams, channel_key
from models.route import Route, Strategy
from models.transmission import InteractionLog, TransmissionEvent, TransmissionOutcome
from network.dynamics import create_epr, interaction_tick, teleport_hop
from network.topology import channel_between, check_node, lattice_hop_distance
from routing.cache import get_candidate_routes
from routing.selector import select_route

logger = get_logger(__name__)

# Extra edges a recalculated route may use beyond the remaining budget
RECALC_SLACK = 2


def recalculate_route(
    net: Network,
    current: int,
    dst: int,
    remaining: int,
    strategy: Strategy,
    epr_aggregate: str = "sum",
) -> Optional[Route]:
    """Shortest feasible detour from current, searched up to remaining + RECALC_SLACK edges."""
    shortest = lattice_hop_distance(net, current, dst)
    for length in range(shortest, remaining + RECALC_SLACK + 1):
        if get_candidate_routes(net, current, dst, length):
            return select_route(net, current, dst, length, strategy, epr_aggregate)
    return None


def send_qubit(
    net: Network,
    src: int,
    dst: int,
    edge_len: int,
    strategy: Strategy,
    params: SimParams,
    rng: np.random.Generator,
    log: InteractionLog,
    trace: bool = False,
) -> TransmissionOutcome:
    check_node(net, src)
    check_node(net, dst)
    if src == dst:
        raise InvalidRouteError(f"Source and destination are both node {src}")

    events: list[TransmissionEvent] = []

    def record(kind, node, **kwargs):
        if trace:
            events.append(TransmissionEvent(kind=kind, node=node, **kwargs))

    def tick(route: Route):
        scope = None
        if params.decoherence_scope == "route":
            scope = [channel_key(a, b) for a, b in route.edges]
        interaction_tick(net, params, rng, log, scope)

    outcome = TransmissionOutcome(delivered=False, end_to_end_fidelity=None, path=[src], events=events)

    route = select_route(net, src, dst, edge_len, strategy, params.epr_aggregate)
    if route is None:
        record("give_up", src, detail=f"no route of length {edge_len}")
        return outcome
    record("route", src, route=route)
    outcome.final_route = route

    current, position = src, 0
    while current != dst:
        nxt = route.nodes[position + 1]
        channel = channel_between(net, current, nxt)

        if channel.epr_count < 1:
            try:
                create_epr(net, current, nxt, log)
                created = True
            except InsufficientQubitsError:
                created = False
            tick(route)

            if created:
                outcome.eprs_created += 1
                record("create", current, next_node=nxt)
            else:
                record("create_failed", current, next_node=nxt)
                if outcome.recalculations >= params.max_recalcs:
                    logger.debug(f"Giving up at node {current}: recalculation limit {params.max_recalcs} reached")
                    record("give_up", current, detail="recalculation limit reached")
                    return outcome
                outcome.recalculations += 1
                remaining = edge_len - outcome.hops_taken
                route = recalculate_route(net, current, dst, remaining, strategy, params.epr_aggregate)
                if route is None:
                    logger.debug(f"Giving up at node {current}: no feasible detour within {remaining + RECALC_SLACK} edges")
                    record("give_up", current, detail="no feasible detour")
                    return outcome
                logger.debug(f"Recalculated route from node {current}: {route}")
                record("recalc", current, route=route)
                outcome.final_route = route
                position = 0
                continue

        fidelity = teleport_hop(net, current, nxt, log)
        tick(route)
        record("teleport", current, next_node=nxt, fidelity=fidelity)
        outcome.per_hop_fidelities.append(fidelity)
        outcome.hops_taken += 1
        outcome.path.append(nxt)
        current = nxt
        position += 1

    outcome.delivered = True
    outcome.end_to_end_fidelity = math.prod(outcome.per_hop_fidelities)
    return outcome
