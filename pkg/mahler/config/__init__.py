"""
Layered YAML configuration and schema validation.
"""

from .settings import apply_overrides, deep_merge, load_checks, load_config, load_yaml
from .validation import validate_against_schema, validate_config, validate_recipe, validate_report

__all__ = [
    'apply_overrides', 'deep_merge', 'load_checks', 'load_config', 'load_yaml',
    'validate_against_schema', 'validate_config', 'validate_recipe', 'validate_report',
]
