#!/usr/bin/env python3
"""
Verification utilities - console output and exit codes shared by the commands.
"""

import logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NUMERIC = 2
EXIT_EXACT = 3
EXIT_USAGE = 4


def _print_phase(phase_num, phase_name, detail=None):
    """Helper to print phase headers."""
    print(f"\n{'='*60}")
    if phase_num is not None:
        suffix = f" ({detail})" if detail else ""
        print(f"PHASE {phase_num}: {phase_name}{suffix}")
    else:
        print(f"{phase_name}")
    print(f"{'='*60}")


def print_rows(rows, indent="  "):
    """One [OK]/[FAILED] line per comparison row."""
    for row in rows:
        marker = "[OK]" if row['pass'] else "[FAILED]"
        line = f"{indent}{marker} {row['check']}: {row['computed']}"
        if not row['pass'] or row['kind'] == 'numeric':
            line += f" (target {row['target']}"
            if row['tolerance'] is not None:
                line += f", tol {row['tolerance']:.1e}"
            line += ")"
        print(line)


def print_summary(rows):
    failed = [r for r in rows if not r['pass']]
    print("=" * 60)
    if failed:
        print(f"[FAILED] {len(failed)} of {len(rows)} checks failed")
    else:
        print(f"[OK] ALL {len(rows)} CHECKS PASSED")
    print("=" * 60)


def exit_code(rows):
    """0 when every row passes; an exact failure outranks a numeric one."""
    failed = [r for r in rows if not r['pass']]
    if any(r['kind'] == 'exact' for r in failed):
        return EXIT_EXACT
    if failed:
        return EXIT_NUMERIC
    return EXIT_OK


def configure_logging(verbose=False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
