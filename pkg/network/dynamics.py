from typing import Iterable, Optional

import numpy as np

from core.exceptions import InsufficientQubitsError, NoEprAvailableError, NotAdjacentError
from models.network import Channel, ChannelKey, Network, SimParams
from models.transmission import InteractionLog
from network.topology import channel_between, check_node


def _require_channel(net: Network, a: int, b: int) -> Channel:
    check_node(net, a)
    check_node(net, b)
    channel = channel_between(net, a, b)
    if channel is None:
        raise NotAdjacentError(a, b)
    return channel


def create_epr(net: Network, a: int, b: int, log: InteractionLog) -> None:
    channel = _require_channel(net, a, b)
    node_a, node_b = net.nodes[a], net.nodes[b]
    if node_a.free_qubits < 1 or node_b.free_qubits < 1:
        raise InsufficientQubitsError(a, b)

    node_a.free_qubits -= 1
    node_b.free_qubits -= 1
    channel.epr_count += 1
    channel.fidelity = channel.initial_fidelity
    log.entangle_count += 1
    log.qubits_consumed += 2


def teleport_hop(net: Network, a: int, b: int, log: InteractionLog) -> float:
    """Consume one pair on (a, b); returns the channel fidelity at consumption time."""
    channel = _require_channel(net, a, b)
    if channel.epr_count < 1:
        raise NoEprAvailableError(a, b)

    channel.epr_count -= 1
    log.teleport_count += 1
    return channel.fidelity


def interaction_tick(
    net: Network,
    params: SimParams,
    rng: np.random.Generator,
    log: InteractionLog,
    scope: Optional[Iterable[ChannelKey]] = None,
) -> None:
    keys = sorted(net.channels) if scope is None else sorted(scope)
    gamma, f_min = params.gamma, params.f_min
    for key in keys:
        channel = net.channels[key]
        channel.fidelity = min(1.0, max(f_min, channel.fidelity * gamma))

    # Element 2i decides loss at node i, element 2i + 1 regeneration
    draws = rng.random(2 * len(net.nodes))
    p_loss, p_regen = params.p_loss, params.p_regen
    for node in net.nodes:
        if draws[2 * node.id] < p_loss and node.free_qubits > 0:
            node.free_qubits -= 1
            log.qubits_lost += 1
        if draws[2 * node.id + 1] < p_regen and node.free_qubits < node.capacity:
            node.free_qubits += 1
            log.qubits_regenerated += 1
