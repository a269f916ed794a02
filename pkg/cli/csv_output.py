import csv
import io
from typing import BinaryIO, Iterable, Optional

from models.experiment import ExperimentTable, ReplicationRecord

TABLE_HEADER = [
    "strategy",
    "route_length",
    "mean_fidelity",
    "std_fidelity",
    "mean_epr_per_qubit",
    "std_epr_per_qubit",
    "mean_recalc_per_qubit",
    "std_recalc_per_qubit",
    "delivery_rate",
]

RAW_HEADER = [
    "strategy",
    "route_length",
    "replication",
    "mean_fidelity",
    "epr_per_qubit",
    "recalc_per_qubit",
    "delivery_rate",
]


def _real(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.6f}"


def _write_rows(header: list[str], rows: Iterable[list[str]], sink: BinaryIO) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sink.write(buffer.getvalue().encode("utf-8"))
    sink.flush()


def write_table_csv(table: ExperimentTable, sink: BinaryIO) -> None:
    rows = (
        [
            row.strategy.value,
            str(row.route_length),
            _real(row.mean_fidelity),
            _real(row.std_fidelity),
            _real(row.mean_epr_per_qubit),
            _real(row.std_epr_per_qubit),
            _real(row.mean_recalc_per_qubit),
            _real(row.std_recalc_per_qubit),
            _real(row.delivery_rate),
        ]
        for row in table.rows
    )
    _write_rows(TABLE_HEADER, rows, sink)


def emit_raw_replications(records: Iterable[ReplicationRecord], sink: BinaryIO) -> None:
    rows = (
        [
            record.strategy.value,
            str(record.route_length),
            str(record.replication),
            _real(record.result.mean_delivered_fidelity),
            _real(record.result.epr_per_qubit),
            _real(record.result.recalc_per_qubit),
            _real(record.result.delivery_rate),
        ]
        for record in records
    )
    _write_rows(RAW_HEADER, rows, sink)
