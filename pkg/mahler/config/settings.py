#!/usr/bin/env python3
"""
Configuration loading: base YAML, optional override file, command-line values.
"""

import sys
from pathlib import Path

import yaml

ROOT = Path(__file__).parent.parent.parent
CONFIG_DIR = ROOT / 'config'
BASE_CONFIG = CONFIG_DIR / 'mahler-config.yaml'
LOCAL_CONFIG = CONFIG_DIR / 'mahler-config.local.yaml'
CHECKS_FILE = CONFIG_DIR / 'checks.yaml'

# command-line flag -> config path
OVERRIDES = {
    'precision': ('precision_bits',),
    'order': ('series_order',),
    'seed': ('seed',),
    'output': ('output',),
    'workers': ('executor', 'max_workers'),
    'executor': ('executor', 'kind'),
    'cache': ('cache', 'backend'),
}


def load_yaml(file_path):
    """Load YAML file safely; returns (data, error)."""
    try:
        with open(file_path, 'r') as f:
            return yaml.safe_load(f), None
    except yaml.YAMLError as e:
        return None, str(e)
    except OSError as e:
        return None, str(e)


def deep_merge(base, override):
    result = base.copy()

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value

    return result


def _load_or_exit(path):
    data, err = load_yaml(path)
    if err:
        print(f"ERROR: Could not load {path}: {err}", file=sys.stderr)
        sys.exit(1)
    return data or {}


def load_config(override=None):
    """
    Load configuration with an optional override file.
    - Default: config/mahler-config.yaml
    - override='local': merges config/mahler-config.local.yaml
    - override=<path>: merges that file
    """
    config = _load_or_exit(BASE_CONFIG)
    if override:
        path = LOCAL_CONFIG if override == 'local' else Path(override)
        if not path.exists():
            print(f"ERROR: Config override not found: {path}", file=sys.stderr)
            sys.exit(1)
        config = deep_merge(config, _load_or_exit(path))
    return config


def apply_overrides(config, values):
    """Copy non-None command-line values into the config (see OVERRIDES)."""
    result = deep_merge(config, {})
    for flag, path in OVERRIDES.items():
        value = values.get(flag)
        if value is None:
            continue
        node = result
        for key in path[:-1]:
            node[key] = dict(node.get(key) or {})
            node = node[key]
        node[path[-1]] = value
    return result


def load_checks():
    """Acceptance checks from config/checks.yaml; a missing file means no overrides."""
    if not CHECKS_FILE.exists():
        return {}
    return _load_or_exit(CHECKS_FILE)
