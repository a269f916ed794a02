import copy

import pytest

from core.exceptions import InvalidNodeError, InvalidRouteError
from engine.transmission import recalculate_route, send_qubit
from models.network import SimParams
from models.route import Strategy
from models.transmission import InteractionLog
from network.topology import build_lattice, channel_between, lattice_hop_distance, make_rng


def _identity_params(**overrides):
    values = dict(gamma=1.0, p_loss=0.0, p_regen=0.0, fidelity_low=1.0, fidelity_high=1.0)
    values.update(overrides)
    return SimParams(**values)


def _send(net, params, src, dst, edge_len, strategy=Strategy.MAX_FIDELITY, seed=0, log=None, trace=False):
    return send_qubit(net, src, dst, edge_len, strategy, params, make_rng(seed), log or InteractionLog(), trace=trace)


@pytest.mark.unit
class TestSendQubit:

    def test_fully_provisioned_network(self):
        params = _identity_params(initial_epr=1)
        net = build_lattice(params, make_rng(0))

        outcome = _send(net, params, 0, 3, 3)

        assert outcome.delivered is True
        assert outcome.end_to_end_fidelity == 1.0
        assert outcome.eprs_created == 0
        assert outcome.recalculations == 0
        assert outcome.hops_taken == 3
        assert outcome.path == [0, 1, 2, 3]

    def test_every_hop_creates_a_pair_when_channels_are_empty(self):
        params = _identity_params(initial_epr=0, initial_qubits=8)
        net = build_lattice(params, make_rng(0))

        outcome = _send(net, params, 0, 3, 3)

        assert outcome.delivered is True
        assert outcome.eprs_created == 3
        assert outcome.recalculations == 0
        assert [node.free_qubits for node in net.nodes[:4]] == [7, 6, 6, 7]

    def test_dead_network_hits_recalculation_cap(self):
        params = _identity_params(initial_epr=0, initial_qubits=0, max_recalcs=4)
        net = build_lattice(params, make_rng(0))

        outcome = _send(net, params, 0, 3, 3)

        assert outcome.delivered is False
        assert outcome.recalculations == 4
        assert outcome.end_to_end_fidelity is None
        assert outcome.hops_taken == 0

    def test_no_route_of_requested_length(self):
        params = _identity_params()
        net = build_lattice(params, make_rng(0))

        outcome = _send(net, params, 0, 3, 1)

        assert outcome.delivered is False
        assert outcome.recalculations == 0
        assert outcome.final_route is None

    def test_recalculation_recovers_after_regeneration(self):
        params = _identity_params(initial_epr=0, p_regen=1.0)
        net = build_lattice(params, make_rng(0))
        net.nodes[1].free_qubits = 0

        outcome = _send(net, params, 0, 3, 3, trace=True)

        assert outcome.delivered is True
        assert outcome.recalculations == 1
        assert outcome.eprs_created == 3
        assert [event.kind for event in outcome.events][:3] == ["route", "create_failed", "recalc"]

    def test_fidelity_is_product_of_hops(self):
        params = SimParams(gamma=0.99, p_loss=0.0, p_regen=0.0)
        net = build_lattice(params, make_rng(4))

        outcome = _send(net, params, 0, 11, 5)

        assert outcome.delivered is True
        product = 1.0
        for value in outcome.per_hop_fidelities:
            product *= value
        assert outcome.end_to_end_fidelity == pytest.approx(product, abs=1e-12)
        assert outcome.end_to_end_fidelity <= min(outcome.per_hop_fidelities)

    def test_counters_match_interaction_log(self):
        params = SimParams(initial_epr=0, p_loss=0.05)
        net = build_lattice(params, make_rng(2))
        log = InteractionLog()

        for _ in range(20):
            entangled, teleported = log.entangle_count, log.teleport_count
            outcome = _send(net, params, 0, 11, 5, strategy=Strategy.MAX_QUBITS, log=log)
            assert outcome.eprs_created == log.entangle_count - entangled
            assert outcome.hops_taken == log.teleport_count - teleported

    def test_delivered_route_is_at_least_bfs_distance(self, lattice_3x4, default_params):
        for _ in range(10):
            outcome = _send(lattice_3x4, default_params, 0, 7, 6, strategy=Strategy.MAX_EPR)
            if outcome.delivered:
                assert outcome.hops_taken >= lattice_hop_distance(lattice_3x4, 0, 7)

    def test_same_snapshot_and_seed_give_same_outcome(self, lattice_3x4, default_params):
        twin = copy.deepcopy(lattice_3x4)

        first = _send(lattice_3x4, default_params, 0, 11, 7, seed=21)
        second = _send(twin, default_params, 0, 11, 7, seed=21)

        assert first == second
        assert lattice_3x4 == twin

    def test_identity_outcome_independent_of_seed(self):
        params = _identity_params(initial_epr=5)
        outcomes = [_send(build_lattice(params, make_rng(0)), params, 0, 11, 5, seed=seed) for seed in (1, 2, 3)]
        assert outcomes[0] == outcomes[1] == outcomes[2]

    def test_trace_records_each_teleport(self):
        params = _identity_params(initial_epr=0)
        net = build_lattice(params, make_rng(0))

        outcome = _send(net, params, 0, 5, 2, trace=True)

        kinds = [event.kind for event in outcome.events]
        assert kinds == ["route", "create", "teleport", "create", "teleport"]
        assert outcome.events[0].route.nodes == (0, 1, 5)

    def test_no_trace_by_default(self, lattice_3x4, default_params):
        assert _send(lattice_3x4, default_params, 0, 5, 2).events == []

    def test_route_scoped_decay_only_touches_route(self):
        params = SimParams(gamma=0.9, f_min=0.1, fidelity_low=1.0, p_loss=0.0, p_regen=0.0, decoherence_scope="route")
        net = build_lattice(params, make_rng(0))

        _send(net, params, 0, 3, 3)

        assert channel_between(net, 0, 1).fidelity < 1.0
        assert channel_between(net, 8, 9).fidelity == 1.0

    def test_same_endpoints_rejected(self, lattice_3x4, default_params):
        with pytest.raises(InvalidRouteError):
            _send(lattice_3x4, default_params, 4, 4, 2)

    def test_invalid_endpoint_rejected(self, lattice_3x4, default_params):
        with pytest.raises(InvalidNodeError):
            _send(lattice_3x4, default_params, 0, 40, 2)


@pytest.mark.unit
class TestRecalculateRoute:

    def test_prefers_shortest_feasible_length(self, lattice_3x4):
        route = recalculate_route(lattice_3x4, 0, 3, 5, Strategy.MAX_FIDELITY)
        assert route.nodes == (0, 1, 2, 3)

    def test_slack_allows_overrun(self, lattice_3x4):
        route = recalculate_route(lattice_3x4, 0, 5, 0, Strategy.MAX_FIDELITY)
        assert route.edge_count == 2

    def test_none_when_destination_out_of_reach(self, lattice_3x4):
        assert recalculate_route(lattice_3x4, 0, 11, 1, Strategy.MAX_FIDELITY) is None
