#!/usr/bin/env python3
"""
Configuration, recipe and report validation against the JSON schemas in schemas/.
"""

import json
import sys
from functools import lru_cache
from pathlib import Path

SCHEMA_DIR = Path(__file__).parent.parent.parent / 'schemas'


def _jsonschema():
    try:
        import jsonschema
    except ImportError:
        print("Error: jsonschema package not installed. Install with: pip install jsonschema")
        sys.exit(1)
    return jsonschema


@lru_cache(maxsize=None)
def load_schema(name):
    schema_file = SCHEMA_DIR / name
    with open(schema_file, 'r') as f:
        return json.load(f)


def validate_against_schema(instance, schema_name):
    """
    Validate a document against one of the schemas.
    Returns (is_valid, errors_list)
    """
    jsonschema = _jsonschema()
    schema_file = SCHEMA_DIR / schema_name
    if not schema_file.exists():
        return False, [f"Schema file not found: {schema_file}"]

    try:
        schema = load_schema(schema_name)
    except (OSError, ValueError) as e:
        return False, [f"Error loading schema file: {e}"]

    try:
        jsonschema.validate(instance=instance, schema=schema)
        return True, []
    except jsonschema.ValidationError as e:
        error_path = ' -> '.join(str(p) for p in e.path) if e.path else 'root'
        return False, [f"Schema validation failed at '{error_path}': {e.message}"]
    except jsonschema.SchemaError as e:
        return False, [f"Schema file is invalid: {e.message}"]


def check_invariants(config):
    """Cross-field rules a schema cannot state. Returns list of errors."""
    errors = []
    precision = config.get('precision_bits', 0)
    abs_tol = config.get('quadrature', {}).get('abs_tol')
    if abs_tol is not None and isinstance(precision, int) and precision >= 64:
        floor = 2.0 ** -(precision - 16)
        if abs_tol < floor:
            errors.append(f"quadrature.abs_tol {abs_tol} is below 2^-({precision}-16) = {floor:.3e}")
    return errors


def validate_config(config):
    """Schema plus invariants for a merged config. Returns (is_valid, errors)."""
    is_valid, errors = validate_against_schema(config, 'config-schema.json')
    if not is_valid:
        return False, errors
    errors = check_invariants(config)
    return len(errors) == 0, errors


def validate_recipe(recipe):
    return validate_against_schema(recipe, 'recipe-schema.json')


def validate_report(report):
    return validate_against_schema(report, 'report-schema.json')
