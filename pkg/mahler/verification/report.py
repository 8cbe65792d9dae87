#!/usr/bin/env python3
"""
Report assembly and serialization.

Reports carry no timestamps or host data: the same config and command give
the same bytes.
"""

import csv
import io
import json
import logging
from pathlib import Path

import mpmath

from ..config import validate_report

logger = logging.getLogger(__name__)

SCHEMA_VERSION = '1.0.0'
FORMATS = ('json', 'csv', 'text')
COLUMNS = ('check', 'computed', 'target', 'tolerance', 'pass', 'kind')


def jsonable(value, digits=30):
    """mpmath numbers become strings; fractions, sympy objects and the rest fall back to str()."""
    if isinstance(value, dict):
        return {str(k): jsonable(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v, digits) for v in value]
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, digits)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def build_report(command, config, rows, data=None):
    report = {
        'schema_version': SCHEMA_VERSION,
        'header': {
            'command': command,
            'precision_bits': int(config.get('precision_bits', 256)),
            'series_order': int(config.get('series_order', 200)),
            'seed': int(config.get('seed', 1)),
        },
        'rows': list(rows),
    }
    if data is not None:
        report['data'] = jsonable(data)
    return report


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_csv(report):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report['rows']:
        writer.writerow({k: row[k] for k in COLUMNS})
    return buffer.getvalue()


def render_text(report):
    header = report['header']
    lines = [
        f"command: {header['command']}",
        f"precision_bits: {header['precision_bits']}  series_order: {header['series_order']}  seed: {header['seed']}",
        "",
    ]
    width = max([len(r['check']) for r in report['rows']] + [5])
    for row in report['rows']:
        status = "PASS" if row['pass'] else "FAIL"
        tol = f"{row['tolerance']:.1e}" if row['tolerance'] is not None else "-"
        lines.append(f"{status}  {row['check']:<{width}}  {row['computed']}  (target {row['target']}, tol {tol})")
    if 'data' in report:
        lines += ["", json.dumps(report['data'], sort_keys=True, indent=2)]
    return "\n".join(lines) + "\n"


RENDERERS = {'json': render_json, 'csv': render_csv, 'text': render_text}


def render(report, fmt='json'):
    if fmt not in RENDERERS:
        raise ValueError(f"Unknown report format '{fmt}' (expected one of {', '.join(FORMATS)})")
    return RENDERERS[fmt](report)


def write_report(report, path, fmt='json'):
    """Validate against the report schema, then write. Returns (is_valid, errors)."""
    is_valid, errors = validate_report(report)
    if not is_valid:
        return False, errors
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(report, fmt))
    logger.debug("wrote %s report to %s", fmt, path)
    return True, []
