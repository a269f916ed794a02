import click

from cli.commands import run, single, topology
from core.logging_config import setup_logging, get_logger

logger = get_logger(__name__)


@click.group()
@click.option("--log-level", default=None, help="Overrides LOG_LEVEL.")
@click.option("--json-logs/--plain-logs", default=None, help="Overrides JSON_LOGS.")
def main(log_level, json_logs):
    """Opportunistic quantum-network routing simulator."""
    setup_logging(log_level.upper() if log_level else None, json_logs)
    logger.debug("Simulator starting up...")


main.add_command(run)
main.add_command(single)
main.add_command(topology)


if __name__ == "__main__":
    main()
