import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, MutableMapping

from core.config import JSON_LOGS, LOG_LEVEL

CONSOLE_FORMAT = "%(asctime)s %(levelname)s [%(processName)s] %(name)s: %(message)s"
CONSOLE_DATEFMT = "%H:%M:%S"


class StructuredFormatter(logging.Formatter):
    """One JSON object per record; extra_fields are merged into the top level."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "source": f"{record.module}:{record.funcName}:{record.lineno}",
            "process": record.processName,
        }
        entry.update(getattr(record, "extra_fields", {}))
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


class ColoredFormatter(logging.Formatter):
    LEVEL_COLORS = {
        logging.DEBUG: "\033[36m",
        logging.INFO: "\033[32m",
        logging.WARNING: "\033[33m",
        logging.ERROR: "\033[31m",
        logging.CRITICAL: "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        color = self.LEVEL_COLORS.get(record.levelno)
        if color is None:
            return super().format(record)
        colored = logging.makeLogRecord(record.__dict__)
        colored.levelname = f"{color}{record.levelname:<7}{self.RESET}"
        return super().format(colored)


class SimulationLogAdapter(logging.LoggerAdapter):
    """Attaches fixed simulation context (strategy, route length, ...) to every record."""

    def process(self, msg: str, kwargs: MutableMapping[str, Any]):
        extra = dict(kwargs.get("extra") or {})
        extra["extra_fields"] = {**self.extra, **extra.get("extra_fields", {})}
        kwargs["extra"] = extra
        return msg, kwargs


def setup_logging(log_level: str | None = None, json_logs: bool | None = None) -> logging.Logger:
    level = (log_level or LOG_LEVEL).upper()
    use_json = JSON_LOGS if json_logs is None else json_logs

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    if use_json:
        handler.setFormatter(StructuredFormatter())
    else:
        handler.setFormatter(ColoredFormatter(fmt=CONSOLE_FORMAT, datefmt=CONSOLE_DATEFMT))

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for existing in root_logger.handlers[:]:
        root_logger.removeHandler(existing)
    root_logger.addHandler(handler)

    logging.captureWarnings(True)
    return root_logger


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def context_logger(name: str, **context: Any) -> SimulationLogAdapter:
    return SimulationLogAdapter(logging.getLogger(name), context)
