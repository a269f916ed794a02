import multiprocessing as mp
from typing import List, Tuple

import numpy as np

from core.exceptions import ConfigError, EndpointSelectionError
from core.logging_config import context_logger, get_logger
from engine.transmission import send_qubit
from experiment.stats import mean_std
from models.experiment import ExperimentConfig, ExperimentTable, ReplicationRecord, ReplicationResult, TableRow
from models.network import Network
from models.route import Strategy
from models.transmission import InteractionLog
from network.topology import build_lattice, check_node, lattice_hop_distance, make_rng

logger = get_logger(__name__)


def endpoints_for_length(net: Network, edge_len: int, src: int = 0) -> Tuple[int, int]:
    """src and the farthest node at distance <= edge_len with the parity of edge_len.

    Ties go to the smallest node index.
    """
    check_node(net, src)
    best, best_distance = None, -1
    for node in range(net.node_count):
        if node == src:
            continue
        distance = lattice_hop_distance(net, src, node)
        if distance <= edge_len and distance % 2 == edge_len % 2 and distance > best_distance:
            best, best_distance = node, distance
    if best is None:
        raise EndpointSelectionError(f"No destination from node {src} compatible with route length {edge_len}")
    return src, best


def replication_seed(config: ExperimentConfig, strategy: Strategy, edge_len: int, rep_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([config.master_seed, strategy.index, edge_len, rep_index])


def run_replication(config: ExperimentConfig, strategy: Strategy, edge_len: int, rep_index: int) -> ReplicationResult:
    if not 0 <= rep_index < config.replications:
        raise ConfigError(f"replication index {rep_index} outside [0, {config.replications})", key="replications")

    rng = make_rng(replication_seed(config, strategy, edge_len, rep_index))
    net = build_lattice(config.sim, rng)
    src, dst = endpoints_for_length(net, edge_len)
    log = InteractionLog()

    fidelities = []
    eprs_created = 0
    recalculations = 0
    for _ in range(config.qubits_per_run):
        outcome = send_qubit(net, src, dst, edge_len, strategy, config.sim, rng, log)
        eprs_created += outcome.eprs_created
        recalculations += outcome.recalculations
        if outcome.delivered:
            fidelities.append(outcome.end_to_end_fidelity)

    qubits = config.qubits_per_run
    mean_fidelity = min(1.0, float(np.mean(fidelities))) if fidelities else None
    result = ReplicationResult(
        mean_delivered_fidelity=mean_fidelity,
        epr_per_qubit=eprs_created / qubits,
        recalc_per_qubit=recalculations / qubits,
        delivery_rate=len(fidelities) / qubits,
    )
    rep_logger = context_logger(__name__, strategy=strategy.value, route_length=edge_len, replication=rep_index)
    rep_logger.debug(
        f"Replication {rep_index} ({strategy.value}, length {edge_len}, {src}->{dst}): "
        f"delivered {len(fidelities)}/{qubits}, eprs {eprs_created}, recalcs {recalculations}"
    )
    return result


def _run_task(task: Tuple[ExperimentConfig, Strategy, int, int]) -> ReplicationResult:
    return run_replication(*task)


def aggregate(strategy: Strategy, edge_len: int, results: List[ReplicationResult]) -> TableRow:
    # Fidelity only over replications that delivered; None when none did
    delivered = [r.mean_delivered_fidelity for r in results if r.mean_delivered_fidelity is not None]
    mean_fidelity, std_fidelity = mean_std(delivered) if delivered else (None, None)
    mean_epr, std_epr = mean_std([r.epr_per_qubit for r in results])
    mean_recalc, std_recalc = mean_std([r.recalc_per_qubit for r in results])
    mean_rate, _ = mean_std([r.delivery_rate for r in results])
    return TableRow(
        strategy=strategy,
        route_length=edge_len,
        mean_fidelity=None if mean_fidelity is None else min(1.0, mean_fidelity),
        std_fidelity=std_fidelity,
        mean_epr_per_qubit=mean_epr,
        std_epr_per_qubit=std_epr,
        mean_recalc_per_qubit=mean_recalc,
        std_recalc_per_qubit=std_recalc,
        delivery_rate=min(1.0, mean_rate),
    )


def run_experiment(config: ExperimentConfig, workers: int | None = None) -> ExperimentTable:
    # Rows follow the declared strategy order, lengths ascending
    workers = workers or config.workers
    lengths = sorted(config.route_lengths)
    combos = [(strategy, length) for strategy in config.strategies for length in lengths]
    tasks = [
        (config, strategy, length, rep)
        for strategy, length in combos
        for rep in range(config.replications)
    ]
    logger.info(
        f"Running experiment: {len(config.strategies)} strategies x {len(lengths)} lengths x "
        f"{config.replications} replications x {config.qubits_per_run} qubits on {workers} worker(s)"
    )

    if workers > 1:
        with mp.Pool(workers) as pool:
            results = pool.map(_run_task, tasks)
    else:
        results = [_run_task(task) for task in tasks]

    rows = []
    raw = []
    for i, (strategy, length) in enumerate(combos):
        chunk = results[i * config.replications:(i + 1) * config.replications]
        raw.extend(
            ReplicationRecord(strategy=strategy, route_length=length, replication=rep, result=result)
            for rep, result in enumerate(chunk)
        )
        row = aggregate(strategy, length, chunk)
        fidelity = "n/a" if row.mean_fidelity is None else f"{row.mean_fidelity:.4f}"
        context_logger(__name__, strategy=strategy.value, route_length=length).info(
            f"{strategy.value} length {length}: fidelity {fidelity}, "
            f"epr/qubit {row.mean_epr_per_qubit:.4f}, recalc/qubit {row.mean_recalc_per_qubit:.4f}, "
            f"delivery {row.delivery_rate:.4f}"
        )
        rows.append(row)

    return ExperimentTable(rows=rows, raw=raw)
