"""Pointwise turbulence diagnostics.

Vorticity, strain, dissipation, enstrophy, and the alignment quantities:
stretching rate alpha = xi . S xi, the perpendicular component
chi = xi ^ S xi (xi the unit vorticity), and the dynamic angle
phi = atan2(|chi|, alpha), fixed to [0, pi] so that compression
(alpha < 0) maps to obtuse angles.

All diagnostics are derived from the velocity jet, never from printed
vorticity formulas; the formula audit in :mod:`nsvl.verify` is where the
printed expressions are confronted with these curls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import catalog
from .catalog import FlowField, FlowJet, JetMode, Point4
from .errors import (
    DegenerateStretchError,
    DegenerateVorticityError,
    DomainError,
    EmptyGridError,
    NotImplementedAnalytic,
)
from .gridspec import GridSpec

__all__ = [
    "AlignmentSample",
    "SweepRow",
    "vorticity",
    "strain",
    "dissipation",
    "enstrophy",
    "alignment",
    "alignment_sweep",
    "SWEEP_COLUMNS",
]

OMEGA_FLOOR_REL = 1e-12
STRETCH_FLOOR_REL = 1e-12

SWEEP_COLUMNS = ("x", "y", "z", "t", "w1", "w2", "w3", "alpha", "chi", "phi",
                 "enstrophy", "dissipation", "flag")


@dataclass(frozen=True)
class AlignmentSample:
    omega: np.ndarray
    s_omega: np.ndarray
    alpha: float
    chi: np.ndarray
    chi_norm: float
    phi: float


@dataclass(frozen=True)
class SweepRow:
    point: Point4
    flag: str
    omega: np.ndarray | None = None
    alpha: float = math.nan
    chi_norm: float = math.nan
    phi: float = math.nan
    enstrophy: float = math.nan
    dissipation: float = math.nan


def _guard(field_like, pt: Point4):
    if isinstance(field_like, FlowField):
        return catalog.domain_guard(field_like, pt)
    return field_like.domain_guard(pt)


def _jet(field_like, pt: Point4, mode) -> FlowJet:
    if isinstance(field_like, FlowField):
        return catalog.eval_jet(field_like, pt, mode)
    return field_like.eval_jet(pt, mode)


def _rate(field_like) -> float:
    return getattr(field_like, "characteristic_rate", 1.0)


def vorticity(jet: FlowJet) -> np.ndarray:
    """curl u from the velocity gradient."""
    du = jet.du
    return np.array([du[2, 1] - du[1, 2],
                     du[0, 2] - du[2, 0],
                     du[1, 0] - du[0, 1]])


def strain(jet: FlowJet) -> np.ndarray:
    """Symmetric part of the velocity gradient (exactly symmetric)."""
    return 0.5 * (jet.du + jet.du.T)


def dissipation(s: np.ndarray) -> float:
    """S_ij S_ij."""
    return float((s * s).sum())


def enstrophy(omega: np.ndarray) -> float:
    return float(omega @ omega)


def alignment(jet: FlowJet, rate_scale: float = 1.0) -> AlignmentSample:
    """Stretching rate, chi vector and dynamic angle at one point.

    Raises DegenerateVorticityError below the vorticity floor and
    DegenerateStretchError when S omega vanishes (angle undefined).
    """
    omega = vorticity(jet)
    w = float(np.linalg.norm(omega))
    floor = OMEGA_FLOOR_REL * max(rate_scale, 1e-300)
    if w <= floor:
        raise DegenerateVorticityError(f"|omega| = {w} below floor {floor}")
    s = strain(jet)
    xi = omega / w
    s_xi = s @ xi
    if float(np.linalg.norm(s_xi)) <= STRETCH_FLOOR_REL * max(rate_scale, 1e-300):
        raise DegenerateStretchError("S omega vanishes; dynamic angle undefined")
    alpha = float(xi @ s_xi)
    chi = np.cross(xi, s_xi)
    chi_norm = float(np.linalg.norm(chi))
    phi = math.atan2(chi_norm, alpha)
    return AlignmentSample(omega, s @ omega, alpha, chi, chi_norm, phi)


def _jet_with_fallback(field_like, pt: Point4, mode) -> FlowJet:
    try:
        return _jet(field_like, pt, mode)
    except NotImplementedAnalytic:
        return _jet(field_like, pt, JetMode.FINITE_DIFF)


def alignment_sweep(field_like, grid: GridSpec,
                    mode: JetMode | str = JetMode.ANALYTIC) -> list[SweepRow]:
    """Alignment diagnostics over a grid, one row per point.

    Rejected points keep their row with the rejection reason in the flag;
    numeric columns are NaN there.
    """
    if grid.n_points == 0:
        raise EmptyGridError("grid has no points")
    rows: list[SweepRow] = []
    rate = _rate(field_like)
    for pt in grid.points():
        g = _guard(field_like, pt)
        if not g.accepted:
            rows.append(SweepRow(pt, f"rejected: {g.reason}"))
            continue
        try:
            jet = _jet_with_fallback(field_like, pt, mode)
        except DomainError as exc:
            rows.append(SweepRow(pt, f"rejected: {exc}"))
            continue
        omega = vorticity(jet)
        s = strain(jet)
        ens = enstrophy(omega)
        diss = dissipation(s)
        try:
            samp = alignment(jet, rate)
        except DegenerateVorticityError:
            rows.append(SweepRow(pt, "degenerate-vorticity", omega,
                                 enstrophy=ens, dissipation=diss))
            continue
        except DegenerateStretchError:
            rows.append(SweepRow(pt, "degenerate-stretch", omega,
                                 enstrophy=ens, dissipation=diss))
            continue
        rows.append(SweepRow(pt, "ok", omega, samp.alpha, samp.chi_norm,
                             samp.phi, ens, diss))
    return rows


def sweep_row_values(row: SweepRow) -> list[float | str]:
    """Flatten a sweep row into the frozen CSV column order."""
    om = row.omega if row.omega is not None else (math.nan,) * 3
    return [row.point.x, row.point.y, row.point.z, row.point.t,
            float(om[0]), float(om[1]), float(om[2]),
            row.alpha, row.chi_norm, row.phi,
            row.enstrophy, row.dissipation, row.flag]
