"""Config files, overrides and per-command settings."""

from codet.config.parser import ConfigValue, load_config_file, parse_config, parse_override
from codet.config.schema import (
    EvaluateSettings,
    GradcheckSettings,
    SamplingSettings,
    TrainSettings,
    build_settings,
    config_hash,
    resolve_settings,
)

__all__ = [
    "ConfigValue",
    "EvaluateSettings",
    "GradcheckSettings",
    "SamplingSettings",
    "TrainSettings",
    "build_settings",
    "config_hash",
    "load_config_file",
    "parse_config",
    "parse_override",
    "resolve_settings",
]
