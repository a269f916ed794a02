"""
Flat `key = value` experiment configuration.

Format:
    # comment
    rows = 3
    gamma = 0.995
    route_lengths = 2, 3, 4
    strategies = max_fidelity, max_epr

Keys are the field names of SimParams and ExperimentConfig (except `sim`).
Layers, lowest to highest precedence: built-in defaults, `defaults`
argument, file contents, `overrides` argument.
"""

import typing
from typing import Dict, List, Mapping, Optional, Tuple

from pydantic import ValidationError

from core.exceptions import ConfigError
from core.logging_config import get_logger
from models.experiment import ExperimentConfig
from models.network import SimParams
from models.route import Strategy

logger = get_logger(__name__)

SIM_KEYS = list(SimParams.model_fields)
EXPERIMENT_KEYS = [name for name in ExperimentConfig.model_fields if name != "sim"]
ALL_KEYS = SIM_KEYS + EXPERIMENT_KEYS

# key -> (line number or None, human-readable origin)
Origin = Tuple[Optional[int], str]


def _field_annotation(key: str):
    if key in SimParams.model_fields:
        return SimParams.model_fields[key].annotation
    return ExperimentConfig.model_fields[key].annotation


def _convert(key: str, raw: str):
    annotation = _field_annotation(key)
    origin = typing.get_origin(annotation)
    if origin in (list, List):
        (item_type,) = typing.get_args(annotation)
        items = [part.strip() for part in raw.split(",") if part.strip()]
        if item_type is Strategy:
            valid = ", ".join(s.value for s in Strategy)
            converted = []
            for item in items:
                try:
                    converted.append(Strategy(item))
                except ValueError:
                    raise ValueError(f"unknown strategy '{item}' (expected one of: {valid})")
            return converted
        return [_scalar(item_type, item) for item in items]
    if annotation in (int, float):
        return _scalar(annotation, raw)
    return raw


def _scalar(kind, raw: str):
    try:
        return kind(raw)
    except ValueError:
        raise ValueError(f"expected {kind.__name__}, got '{raw}'")


def _read_lines(text: str) -> Dict[str, Tuple[str, int]]:
    values: Dict[str, Tuple[str, int]] = {}
    # UTF-8 byte-order mark
    text = text.removeprefix("\ufeff")
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"malformed line '{line.strip()}' (expected key = value)", line=number)
        key, raw = (part.strip() for part in content.split("=", 1))
        if not key:
            raise ConfigError("missing key before '='", line=number)
        if key not in ALL_KEYS:
            raise ConfigError("unknown key", line=number, key=key)
        values[key] = (raw, number)
    return values


def parse_config(
    text: str,
    overrides: Optional[Mapping[str, str]] = None,
    defaults: Optional[Mapping[str, str]] = None,
) -> ExperimentConfig:
    raw_values: Dict[str, str] = {}
    origins: Dict[str, Origin] = {}

    for layer, label in ((defaults or {}, "default"), (overrides or {}, "--set")):
        for key in layer:
            if key not in ALL_KEYS:
                raise ConfigError("unknown key", key=key, source=label)

    for key, raw in (defaults or {}).items():
        raw_values[key] = str(raw)
        origins[key] = (None, "default")
    for key, (raw, number) in _read_lines(text).items():
        raw_values[key] = raw
        origins[key] = (number, "config file")
    for key, raw in (overrides or {}).items():
        raw_values[key] = str(raw)
        origins[key] = (None, "--set")

    converted = {}
    for key, raw in raw_values.items():
        try:
            converted[key] = _convert(key, raw)
        except ValueError as e:
            line, source = origins[key]
            raise ConfigError(str(e), line=line, key=key, source=source)

    sim_values = {k: v for k, v in converted.items() if k in SIM_KEYS}
    experiment_values = {k: v for k, v in converted.items() if k in EXPERIMENT_KEYS}
    try:
        sim = SimParams(**sim_values)
        config = ExperimentConfig(sim=sim, **experiment_values)
    except ValidationError as e:
        raise _to_config_error(e, origins)

    logger.debug(f"Parsed config with {len(converted)} explicit keys")
    return config


def _to_config_error(error: ValidationError, origins: Dict[str, Origin]) -> ConfigError:
    first = error.errors()[0]
    key = next((part for part in first["loc"] if isinstance(part, str) and part in ALL_KEYS), None)
    message = first["msg"].removeprefix("Value error, ")
    line, source = origins.get(key, (None, "default"))
    return ConfigError(message, line=line, key=key, source=source)


def _render_value(value) -> str:
    if isinstance(value, list):
        return ", ".join(_render_value(item) for item in value)
    if isinstance(value, Strategy):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_config(config: ExperimentConfig) -> str:
    lines = ["# simulation parameters"]
    for key in SIM_KEYS:
        lines.append(f"{key} = {_render_value(getattr(config.sim, key))}")
    lines.append("")
    lines.append("# experiment protocol")
    for key in EXPERIMENT_KEYS:
        lines.append(f"{key} = {_render_value(getattr(config, key))}")
    return "\n".join(lines) + "\n"
