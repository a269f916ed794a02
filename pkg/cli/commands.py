import json
from contextlib import contextmanager
from pathlib import Path
from typing import Optional, Tuple

import click

from cli.config_parser import parse_config
from cli.csv_output import emit_raw_replications, write_table_csv
from core.config import QNET_CONFIG, QNET_WORKERS
from core.exceptions import ConfigError, QNetError
from core.logging_config import get_logger
from engine.transmission import send_qubit
from experiment.runner import endpoints_for_length, run_experiment
from experiment.trend import format_trend_report, trend_report
from models.experiment import ExperimentConfig
from models.route import Strategy
from models.transmission import InteractionLog, TransmissionOutcome
from network.topology import build_lattice, make_rng, network_to_dict

logger = get_logger(__name__)


def config_options(command):
    command = click.option(
        "--set", "sets", multiple=True, metavar="KEY=VALUE",
        help="Override one config key; repeatable.",
    )(command)
    command = click.option("--seed", type=int, default=None, help="Sets both seed and master_seed.")(command)
    command = click.option(
        "--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
        default=None, help="Config file in key = value format.",
    )(command)
    return command


def load_config(config_path: Optional[Path], sets: Tuple[str, ...], seed: Optional[int]) -> ExperimentConfig:
    if config_path is None and QNET_CONFIG:
        config_path = Path(QNET_CONFIG)
    text = config_path.read_text(encoding="utf-8") if config_path else ""

    overrides = {}
    for item in sets:
        if "=" not in item:
            raise ConfigError(f"expected KEY=VALUE, got '{item}'", source="--set")
        key, value = (part.strip() for part in item.split("=", 1))
        overrides[key] = value
    if seed is not None:
        overrides["seed"] = str(seed)
        overrides["master_seed"] = str(seed)

    config = parse_config(text, overrides, defaults={"workers": str(QNET_WORKERS)})
    logger.info(f"Loaded config from {config_path or 'defaults'} with {len(overrides)} flag override(s)")
    return config


@contextmanager
def _binary_sink(path: Optional[Path]):
    if path is None:
        yield click.get_binary_stream("stdout")
    else:
        with open(path, "wb") as sink:
            yield sink


@contextmanager
def _diagnostics():
    """Turn simulator errors into a nonzero exit with a one-line message."""
    try:
        yield
    except QNetError as e:
        logger.error(f"Aborting: {e}")
        raise click.ClickException(str(e))


@click.command()
@config_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Summary CSV path (stdout when omitted).")
@click.option("--raw-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Per-replication CSV path.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes for replications.")
def run(config_path, seed, sets, out, raw_out, workers):
    """Run the full experiment and write the summary table."""
    with _diagnostics():
        config = load_config(config_path, sets, seed)
        table = run_experiment(config, workers=workers)

        with _binary_sink(out) as sink:
            write_table_csv(table, sink)
        if raw_out is not None:
            with _binary_sink(raw_out) as sink:
                emit_raw_replications(table.raw, sink)
            logger.info(f"Wrote {len(table.raw)} replication rows to {raw_out}")

        checks = trend_report(table)
        if checks:
            click.echo("Trend check (max_epr: highest fidelity and most recalculations):", err=out is None)
            for line in format_trend_report(checks):
                click.echo(f"  {line}", err=out is None)


def _format_outcome(outcome: TransmissionOutcome) -> list[str]:
    lines = []
    for event in outcome.events:
        match event.kind:
            case "route":
                lines.append(f"route selected at {event.node}: {event.route}")
            case "create":
                lines.append(f"  created EPR pair on ({event.node}, {event.next_node})")
            case "create_failed":
                lines.append(f"  cannot create EPR pair on ({event.node}, {event.next_node}): no free qubit")
            case "teleport":
                lines.append(f"  hop {event.node} -> {event.next_node}: fidelity {event.fidelity:.6f}")
            case "recalc":
                lines.append(f"route recalculated at {event.node}: {event.route}")
            case "give_up":
                lines.append(f"gave up at {event.node}: {event.detail}")
    if outcome.delivered:
        lines.append(f"delivered: fidelity {outcome.end_to_end_fidelity:.6f}")
    else:
        lines.append("not delivered")
    lines.append(
        f"hops {outcome.hops_taken}, EPRs created {outcome.eprs_created}, "
        f"recalculations {outcome.recalculations}"
    )
    return lines


@click.command()
@config_options
@click.option("--strategy", type=click.Choice([s.value for s in Strategy]), default=Strategy.MAX_FIDELITY.value)
@click.option("--length", "edge_len", type=click.IntRange(min=1), default=3, help="Route length in edges.")
@click.option("--src", type=int, default=None)
@click.option("--dst", type=int, default=None)
def single(config_path, seed, sets, strategy, edge_len, src, dst):
    """Send one qubit and print its hop-by-hop trace."""
    with _diagnostics():
        config = load_config(config_path, sets, seed)
        rng = make_rng(config.sim.seed)
        net = build_lattice(config.sim, rng)
        if src is None and dst is None:
            src, dst = endpoints_for_length(net, edge_len)
        elif dst is None:
            _, dst = endpoints_for_length(net, edge_len, src)
        elif src is None:
            _, src = endpoints_for_length(net, edge_len, dst)

        click.echo(f"sending qubit {src} -> {dst}, length {edge_len}, strategy {strategy}")
        outcome = send_qubit(net, src, dst, edge_len, Strategy(strategy), config.sim, rng, InteractionLog(), trace=True)
        for line in _format_outcome(outcome):
            click.echo(line)


@click.command()
@config_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="JSON output path (stdout when omitted).")
def topology(config_path, seed, sets, out):
    """Dump the generated network as JSON."""
    with _diagnostics():
        config = load_config(config_path, sets, seed)
        net = build_lattice(config.sim, make_rng(config.sim.seed))
        payload = json.dumps(network_to_dict(net), indent=2, sort_keys=True) + "\n"
        with _binary_sink(out) as sink:
            sink.write(payload.encode("utf-8"))
            sink.flush()
