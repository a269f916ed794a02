import pytest

from models.network import SimParams
from models.transmission import InteractionLog
from network.topology import build_lattice, make_rng


@pytest.fixture
def default_params():
    return SimParams()


@pytest.fixture
def identity_params():
    """No decay, no loss, no regeneration and perfect channels."""
    return SimParams(gamma=1.0, p_loss=0.0, p_regen=0.0, fidelity_low=1.0, fidelity_high=1.0)


@pytest.fixture
def lattice_3x4(default_params):
    return build_lattice(default_params, make_rng(default_params.seed))


@pytest.fixture
def lattice_2x2():
    params = SimParams(rows=2, cols=2)
    return build_lattice(params, make_rng(params.seed))


@pytest.fixture
def interaction_log():
    return InteractionLog()


@pytest.fixture
def rng():
    return make_rng(1234)


def snapshot(net):
    """Hashable copy of all mutable resource state."""
    return (
        tuple(node.free_qubits for node in net.nodes),
        tuple((c.epr_count, c.fidelity) for c in net.sorted_channels()),
    )
