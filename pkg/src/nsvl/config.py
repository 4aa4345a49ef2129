"""Run configuration: flat key=value config files merged with CLI flags.

File format: one ``section.key=value`` per line, ``#`` comments allowed.
Flags override file values (a warning names the overridden key); the
``NSVL_SEED`` environment variable overrides every other seed source.
Unknown keys are rejected with the offending token.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

from . import catalog
from .errors import UsageError

__all__ = ["parse_config_file", "merge_values", "resolve_seed", "family_params"]

_FIXED_KEYS = {
    "family.name", "family.nu",
    "grid.x", "grid.y", "grid.z", "grid.times", "grid.cylindrical",
    "run.seed", "run.out", "run.mode", "run.samples", "run.tol",
    "run.trajectories", "run.tau", "run.figures", "run.epsilon",
    "generator.id", "generator.kind", "generator.coeffs", "generator.constant",
    "case.a", "case.b", "case.c", "case.d", "case.e",
    "case.g0", "case.h0", "case.r0", "case.k0", "case.id",
    "mesh.which", "mesh.level", "mesh.extent", "mesh.resolution",
}

_FAMILY_PARAM_KEYS = {
    f"family.{p}"
    for entry in catalog.list_families()
    for p in entry["parameters"]
}

ALLOWED_KEYS = _FIXED_KEYS | _FAMILY_PARAM_KEYS


def parse_config_file(path: str | Path) -> dict[str, str]:
    path = Path(path)
    if not path.exists():
        raise UsageError(f"config file not found: {path}")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in ALLOWED_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def merge_values(file_values: dict[str, str], flag_values: dict[str, str | None],
                 warn=lambda msg: print(msg, file=sys.stderr)) -> dict[str, str]:
    """Flags beat file values; conflicting keys emit a warning."""
    merged = dict(file_values)
    for key, val in flag_values.items():
        if val is None:
            continue
        if key in merged and merged[key] != str(val):
            warn(f"warning: flag overrides config value for {key} "
                 f"({merged[key]!r} -> {val!r})")
        merged[key] = str(val)
    return merged


def resolve_seed(merged: dict[str, str], default: int = 20240) -> int:
    env = os.environ.get("NSVL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"NSVL_SEED must be an integer, got {env!r}") from None
    raw = merged.get("run.seed")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"run.seed must be an integer, got {raw!r}") from None


def family_params(merged: dict[str, str], family: str) -> dict[str, float]:
    """Collect family.<param> entries, validated against the family's names."""
    names = None
    for entry in catalog.list_families():
        if entry["family"] == family:
            names = set(entry["parameters"])
            break
    if names is None:
        raise UsageError(f"unknown family {family!r}")
    params: dict[str, float] = {}
    for key, val in merged.items():
        if not key.startswith("family.") or key in ("family.name", "family.nu"):
            continue
        pname = key.split(".", 1)[1]
        if pname not in names:
            raise UsageError(f"unknown parameter {key!r} for family {family}")
        try:
            params[pname] = float(val)
        except ValueError:
            raise UsageError(f"{key} must be a number, got {val!r}") from None
    return params
