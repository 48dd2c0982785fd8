"""
Configuration document loading.
"""

from .loader import (
    bundled_names,
    config_schema,
    dump_config,
    load_experiment,
    load_model,
    parse_overrides,
)

__all__ = [
    "bundled_names",
    "config_schema",
    "dump_config",
    "load_experiment",
    "load_model",
    "parse_overrides",
]
