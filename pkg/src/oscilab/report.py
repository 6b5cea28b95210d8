"""Machine-readable report schema shared by the verification suites.

Reports are canonical JSON (sorted keys, fixed separators) so that identical
configuration and seed produce byte-identical files.
"""

from __future__ import annotations

import json

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "check", "suite_report", "functional_report", "dump_json"]


def check(
    name: str,
    anchor: str,
    status: bool | str,
    measured=None,
    tolerance=None,
) -> dict:
    """One verification entry.  anchor states the inequality or identity the
    check exercises, in plain mathematical notation."""
    if isinstance(status, bool):
        status = "pass" if status else "fail"
    return {
        "name": name,
        "paper_anchor": anchor,
        "status": status,
        "measured_constant": measured,
        "tolerance": tolerance,
    }


def suite_report(suite: str, config: dict, checks: list) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "config": config,
        "checks": checks,
        "passed": all(c["status"] != "fail" for c in checks),
    }


def functional_report(
    name: str, params: dict, value, witness=None, method: str = "", constants=None
) -> dict:
    return {
        "name": name,
        "params": params,
        "value": value,
        "witness": witness,
        "method": method,
        "constants": constants or {},
    }


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
