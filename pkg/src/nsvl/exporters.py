"""Deterministic file outputs: CSV, legacy VTK, JSON reports, manifests.

Every number is written with 17 significant digits so a parse/format
round trip is the identity on doubles; same config plus same seed means
byte-identical CSV/JSON.  Each run collects its files into an
OutputManifest (path, format tag, sha256) written next to the outputs.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import IoError

__all__ = [
    "fmt",
    "OutputManifest",
    "write_csv",
    "write_json_report",
    "write_vtk_structured",
    "write_vtk_polydata",
]


def fmt(v) -> str:
    """17-significant-digit text form (round-trip exact for doubles)."""
    if isinstance(v, str):
        return v
    f = float(v)
    if math.isnan(f):
        return "nan"
    return format(f, ".17g")


@dataclass
class OutputManifest:
    entries: list[dict] = field(default_factory=list)

    def add(self, path: Path, format_tag: str) -> None:
        digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        self.entries.append({"path": str(path), "format": format_tag,
                             "sha256": digest})

    def write(self, path: Path) -> Path:
        payload = {"files": self.entries}
        path = Path(path)
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return path


def _open_out(path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {path.parent}: {exc}") from exc
    return path


def write_csv(path, header: tuple[str, ...], rows, meta: dict | None = None) -> Path:
    """Comma-separated table; metadata (seed, config echo) as '#' comment
    lines above the exact header row."""
    path = _open_out(path)
    lines = []
    for key, val in (meta or {}).items():
        lines.append(f"# {key}={val}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def write_json_report(path, payload: dict) -> Path:
    path = _open_out(path)
    try:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def _vtk_header(title: str) -> list[str]:
    return ["# vtk DataFile Version 3.0", title, "ASCII"]


def write_vtk_structured(path, dims: tuple[int, int, int], points,
                         point_data: dict[str, list[float]],
                         title: str = "structured sweep") -> Path:
    """Legacy ASCII STRUCTURED_GRID with scalar point data."""
    path = _open_out(path)
    pts = list(points)
    n = len(pts)
    if n != dims[0] * dims[1] * dims[2]:
        raise IoError(f"point count {n} does not match dims {dims}")
    lines = _vtk_header(title)
    # dims[0] must be the fastest-varying index of the emitted point order
    lines.append("DATASET STRUCTURED_GRID")
    lines.append(f"DIMENSIONS {dims[0]} {dims[1]} {dims[2]}")
    lines.append(f"POINTS {n} double")
    for p in pts:
        lines.append(f"{fmt(p[0])} {fmt(p[1])} {fmt(p[2])}")
    lines.append(f"POINT_DATA {n}")
    for name, values in point_data.items():
        if len(values) != n:
            raise IoError(f"field {name} has {len(values)} values for {n} points")
        lines.append(f"SCALARS {name} double 1")
        lines.append("LOOKUP_TABLE default")
        lines.extend(fmt(v) for v in values)
    path.write_text("\n".join(lines) + "\n")
    return path


def write_vtk_polydata(path, vertices: np.ndarray, faces: np.ndarray,
                       point_data: dict[str, np.ndarray] | None = None,
                       title: str = "invariant surface") -> Path:
    """Legacy ASCII POLYDATA triangle mesh."""
    path = _open_out(path)
    lines = _vtk_header(title)
    lines.append("DATASET POLYDATA")
    lines.append(f"POINTS {len(vertices)} double")
    for v in vertices:
        lines.append(f"{fmt(v[0])} {fmt(v[1])} {fmt(v[2])}")
    lines.append(f"POLYGONS {len(faces)} {4 * len(faces)}")
    for f in faces:
        lines.append(f"3 {int(f[0])} {int(f[1])} {int(f[2])}")
    if point_data:
        lines.append(f"POINT_DATA {len(vertices)}")
        for name, values in point_data.items():
            lines.append(f"SCALARS {name} double 1")
            lines.append("LOOKUP_TABLE default")
            lines.extend(fmt(v) for v in values)
    path.write_text("\n".join(lines) + "\n")
    return path
