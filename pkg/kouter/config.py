"""
Persistent defaults for the `gen` and `bench` subcommands.

Lookup order: built-in DEFAULTS, then the JSON file (configs/defaults.json
unless another path is given), then explicit command-line flags.
"""

import copy
import json
import os
from typing import Any, Dict, Optional

from .errors import KouterError
from .logs import log_message, tag

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_CONFIG_PATH = os.path.join(REPO_ROOT, "configs", "defaults.json")

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "gen": {
        "k": 2,
        "n": 60,
        "seed": 0,
        "chords": 0.3,
        "spokes": 0.5,
        "max_retries": 8,
    },
    "bench": {
        "ks": [1, 2, 3],
        "ns": [1024, 2048, 4096],
        "repeats": 5,
        "seed": 0,
        "workers": 1,
        "chords": 0.3,
        "spokes": 0.5,
        "max_n_ratio": 2.5,
        "max_k_ratio": 4.0,
    },
}


def load_config(path: Optional[str] = None) -> Dict[str, Dict[str, Any]]:
    """Built-in defaults overlaid with the sections of the JSON config file."""
    config = copy.deepcopy(DEFAULTS)
    explicit = path is not None
    path = path or DEFAULT_CONFIG_PATH
    if not os.path.exists(path):
        if explicit:
            raise KouterError(f"Config file not found: {path}")
        return config

    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise KouterError(f"Invalid JSON in config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise KouterError(f"Config {path} must hold a JSON object.")

    for section, values in data.items():
        if section not in config:
            log_message(tag("warn", f"Ignoring unknown config section '{section}' in {path}."), err=True)
            continue
        if not isinstance(values, dict):
            raise KouterError(f"Config section '{section}' in {path} must be an object.")
        config[section].update(values)
    return config


def resolve(config: Dict[str, Dict[str, Any]], section: str, key: str, flag_value: Any) -> Any:
    """Explicit flag wins over the config value."""
    if flag_value is not None:
        return flag_value
    return config[section][key]
