from typing import List

from core.logging_config import get_logger
from models.experiment import ExperimentTable, TrendCheck
from models.route import Strategy

logger = get_logger(__name__)


def trend_report(table: ExperimentTable) -> List[TrendCheck]:
    """Per route length: does MAX_EPR have the highest mean fidelity and the most recalculations?"""
    present = {row.strategy for row in table.rows}
    if present != set(Strategy):
        logger.warning("Trend report skipped: needs all three strategies in the table")
        return []

    checks = []
    lengths = sorted({row.route_length for row in table.rows})
    for length in lengths:
        epr = table.row(Strategy.MAX_EPR, length)
        others = [table.row(s, length) for s in (Strategy.MAX_FIDELITY, Strategy.MAX_QUBITS)]
        checks.append(TrendCheck(
            route_length=length,
            fidelity_highest=epr.mean_fidelity is not None and all(
                o.mean_fidelity is None or epr.mean_fidelity > o.mean_fidelity for o in others
            ),
            recalc_highest=all(epr.mean_recalc_per_qubit > o.mean_recalc_per_qubit for o in others),
        ))
    return checks


def format_trend_report(checks: List[TrendCheck]) -> List[str]:
    lines = []
    for check in checks:
        status = "PASS" if check.passed else "DEVIATE"
        lines.append(
            f"length {check.route_length}: {status} "
            f"(max_epr fidelity highest: {'yes' if check.fidelity_highest else 'no'}, "
            f"recalcs highest: {'yes' if check.recalc_highest else 'no'})"
        )
    return lines
