"""Figure rendering for the report paths.

Each CLI command that writes delimited output also renders a PNG next to
it (disable with --no-figures).  Figures are summaries for a quick look;
the CSV/VTK/JSON files stay the quantitative artifacts.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "sweep_figure",
    "residual_figure",
    "brackets_figure",
    "mesh_figure",
    "audit_figure",
]

_FIGSIZE = (7.0, 5.0)


def _save(fig, path: Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def sweep_figure(rows, path, title="alignment sweep") -> Path:
    """Dynamic angle over the sweep: phi against radius, colored by time."""
    ok = [r for r in rows if r.flag == "ok"]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=_FIGSIZE)
    if ok:
        rad = [math.hypot(r.point.x, r.point.y) for r in ok]
        phi = [r.phi for r in ok]
        ts = [r.point.t for r in ok]
        sc = ax1.scatter(rad, phi, c=ts, s=4, cmap="viridis")
        fig.colorbar(sc, ax=ax1, label="t")
    ax1.set_xlabel("r = sqrt(x^2 + y^2)")
    ax1.set_ylabel("phi [rad]")
    ax1.set_title(title)
    counts = {}
    for r in rows:
        key = r.flag.split(":")[0]
        counts[key] = counts.get(key, 0) + 1
    ax2.bar(range(len(counts)), list(counts.values()))
    ax2.set_xticks(range(len(counts)), list(counts.keys()),
                   rotation=20, ha="right", fontsize=8)
    ax2.set_ylabel("points")
    ax2.set_title("point classification")
    return _save(fig, path)


def residual_figure(reports: dict[str, dict], path,
                    title="momentum / continuity residuals") -> Path:
    """Log-scale bars of max residuals, one group per report."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    labels = list(reports)
    width = 0.2
    xs = np.arange(len(labels))
    comps = ["max |mom1|", "max |mom2|", "max |mom3|", "max |div|"]
    for i in range(4):
        vals = []
        for lab in labels:
            rep = reports[lab]
            vals.append(rep["max_mom"][i] if i < 3 else rep["max_div"])
        ax.bar(xs + (i - 1.5) * width, [max(v, 1e-20) for v in vals],
               width, label=comps[i])
    ax.set_yscale("log")
    ax.set_xticks(xs, labels, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("residual magnitude")
    ax.set_title(title)
    ax.legend(fontsize=8)
    return _save(fig, path)


def brackets_figure(report: list[dict], path) -> Path:
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    tags = [r["relation"] for r in report]
    devs = [max(r["max_dev"], 1e-20) for r in report]
    colors = ["tab:blue" if r["pass"] else "tab:red" for r in report]
    ax.bar(range(len(tags)), devs, color=colors)
    ax.set_yscale("log")
    ax.set_xticks(range(len(tags)), tags, rotation=90, fontsize=7)
    ax.set_ylabel("max deviation")
    ax.set_title("commutator table deviations")
    return _save(fig, path)


def mesh_figure(mesh, path, title="invariant surface") -> Path:
    fig = plt.figure(figsize=_FIGSIZE)
    ax = fig.add_subplot(projection="3d")
    v, f = mesh.vertices, mesh.faces
    ax.plot_trisurf(v[:, 0], v[:, 1], f, v[:, 2],
                    cmap="viridis", linewidth=0.1, alpha=0.9)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    ax.set_title(f"{title} (level {mesh.level:g})")
    return _save(fig, path)


def audit_figure(entries: list[dict], path) -> Path:
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    labels, printed, corrected = [], [], []
    for e in entries:
        labels.append(e.get("formula", "?"))
        printed.append(max(float(e.get("max_dev", e.get("drift_printed", 0.0)) or 0.0), 1e-20))
        corr = e.get("max_dev_corrected", e.get("drift_calibrated",
                                                e.get("drift_recomputed")))
        corrected.append(max(float(corr), 1e-20) if corr is not None else None)
    xs = np.arange(len(labels))
    ax.bar(xs - 0.2, printed, 0.4, label="printed form")
    ax.bar(xs + 0.2, [c if c is not None else 1e-20 for c in corrected],
           0.4, label="implemented/corrected")
    ax.set_yscale("log")
    ax.set_xticks(xs, labels, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("max deviation / drift")
    ax.set_title("printed-formula audit")
    ax.legend(fontsize=8)
    return _save(fig, path)
