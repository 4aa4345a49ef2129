"""Numerical referee for the solution catalog.

``ns_residual`` assembles the momentum residual
u_t + (u . grad) u + grad p - nu lap u and the continuity residual
div u from evaluated jets over a grid and reduces them to a report.
``reduced_ode_check`` plugs the one-dimensional profile functions of the
separable families into their governing ODEs/PDE through an independent
derivative route.  ``vorticity_formula_audit`` confronts printed
vorticity (and one printed angle) formulas with the curl of the actual
field and reports measured correction factors where they disagree.

Momentum tolerances scale with a per-family characteristic rate (the
residual has units 1/time^2, so a bare absolute tolerance would be
meaningless across families).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import catalog, kinematics
from .catalog import FamilyId, FlowField, JetMode, Point4
from .errors import AllPointsRejectedError, DomainError, UnsupportedFamilyError
from .gridspec import GridSpec, grid_from_dict

__all__ = [
    "ResidualReport",
    "ns_residual",
    "reduced_ode_check",
    "vorticity_formula_audit",
    "standard_grid",
    "standard_field",
    "momentum_tolerance",
    "divergence_tolerance",
]

MOM_TOL_ANALYTIC = 1e-6
MOM_TOL_FINITE_DIFF = 1e-4
DIV_TOL = 1e-8


def momentum_tolerance(field: FlowField, mode: JetMode | str) -> float:
    base = MOM_TOL_ANALYTIC if JetMode(mode) is JetMode.ANALYTIC else MOM_TOL_FINITE_DIFF
    r = field.characteristic_rate
    return base * (1.0 + r * r)


def divergence_tolerance(field: FlowField) -> float:
    return DIV_TOL * (1.0 + field.characteristic_rate)


@dataclass(frozen=True)
class ResidualReport:
    max_mom: tuple[float, float, float]
    mean_mom: tuple[float, float, float]
    max_div: float
    n_points: int
    n_rejected: int
    mode: str

    @property
    def max_mom_inf(self) -> float:
        return max(self.max_mom)

    def to_dict(self) -> dict:
        return {
            "max_mom": list(self.max_mom),
            "mean_mom": list(self.mean_mom),
            "max_div": self.max_div,
            "n_points": self.n_points,
            "n_rejected": self.n_rejected,
            "mode": self.mode,
        }


def _field_guard(field_like, pt):
    if isinstance(field_like, FlowField):
        return catalog.domain_guard(field_like, pt)
    return field_like.domain_guard(pt)


def _field_jet(field_like, pt, mode):
    if isinstance(field_like, FlowField):
        return catalog.eval_jet(field_like, pt, mode)
    return field_like.eval_jet(pt, mode)


def ns_residual(field_like, grid: GridSpec,
                mode: JetMode | str = JetMode.ANALYTIC,
                nu: float | None = None) -> ResidualReport:
    """Momentum and continuity residuals of a flow over a grid."""
    mode = JetMode(mode)
    if nu is None:
        nu = field_like.nu
    abs1: list[float] = []
    abs2: list[float] = []
    abs3: list[float] = []
    max_mom = [0.0, 0.0, 0.0]
    max_div = 0.0
    n_rejected = 0
    n_points = 0
    for pt in grid.points():
        g = _field_guard(field_like, pt)
        if not g.accepted:
            n_rejected += 1
            continue
        try:
            jet = _field_jet(field_like, pt, mode)
        except DomainError:
            # a guard-accepted point whose FD stencil leaves the domain
            n_rejected += 1
            continue
        n_points += 1
        u = np.array([jet.state.u1, jet.state.u2, jet.state.u3])
        mom = jet.dudt + jet.du @ u + jet.dp - nu * jet.d2u.sum(axis=1)
        div = jet.du[0, 0] + jet.du[1, 1] + jet.du[2, 2]
        a = abs(float(mom[0]))
        b = abs(float(mom[1]))
        c = abs(float(mom[2]))
        abs1.append(a)
        abs2.append(b)
        abs3.append(c)
        max_mom[0] = max(max_mom[0], a)
        max_mom[1] = max(max_mom[1], b)
        max_mom[2] = max(max_mom[2], c)
        max_div = max(max_div, abs(float(div)))
    if n_points == 0:
        raise AllPointsRejectedError("every grid point failed the validity guard")
    mean = (math.fsum(abs1) / n_points, math.fsum(abs2) / n_points,
            math.fsum(abs3) / n_points)
    return ResidualReport(tuple(max_mom), mean, max_div, n_points, n_rejected,
                          mode.value)


# ---------------------------------------------------------------------------
# finite-difference scalar derivatives (independent of the analytic recurrences)
# ---------------------------------------------------------------------------

def _fd1(fn, x: float, h: float) -> float:
    return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h)


def _fd2(fn, x: float, h: float) -> float:
    return (-fn(x + 2 * h) + 16 * fn(x + h) - 30 * fn(x)
            + 16 * fn(x - h) - fn(x - 2 * h)) / (12 * h * h)


def _linspace(lo, hi, n):
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def reduced_ode_check(family: FamilyId | str, params: dict | None = None,
                      samples: int = 41, nu: float | None = None,
                      fd_scale: float = 1.0) -> dict[str, float]:
    """Max |residual| of each family profile in its governing ODE/PDE.

    Separable-profile families only; derivatives are finite differences
    except for the steady vortex profile, whose closed-form derivatives
    are plugged in directly.  ``fd_scale`` multiplies the difference steps
    (refinement studies).
    """
    fid = catalog.FamilyId(family) if not isinstance(family, FamilyId) else family
    if nu is None:
        nu = 0.25 if fid in (FamilyId.BURGERS_VORTEX, FamilyId.BURGERS_LUNDGREN,
                             FamilyId.SECH_VORTEX, FamilyId.AXISYM_BESSEL) else 0.5
    field = catalog.make_field(fid, params, nu)
    p = field.params
    prof = field._impl.profiles
    out: dict[str, float] = {}

    if fid is FamilyId.KUMMER_SHEAR:
        k1, sigma, G, H = p["k1"], p["sigma"], p["G"], p["H"]
        Y, T, Phi = prof["Y"], prof["T"], prof["Phi"]
        worst = 0.0
        for y in _linspace(-2.0, 2.0, samples):
            h = fd_scale * 1e-3 * (1.0 + abs(y))
            res = nu * _fd2(Y, y, h) - k1 * y * _fd1(Y, y, h) + G * Y(y)
            worst = max(worst, abs(res))
        out["(4.9b)"] = worst
        worst = 0.0
        for z in _linspace(-1.5, 2.5, samples):
            h = fd_scale * 1e-3 * (1.0 + abs(z))
            res = nu * _fd2(T, z, h) + (k1 * z - sigma) * _fd1(T, z, h) - H * T(z)
            worst = max(worst, abs(res))
        out["(4.9c)"] = worst
        worst = 0.0
        for t in _linspace(0.0, 2.0, samples):
            res = _fd1(Phi, t, fd_scale * 1e-3) - (H - G) * Phi(t)
            worst = max(worst, abs(res))
        out["(4.9a)"] = worst
        return out

    if fid is FamilyId.AXISYM_BESSEL:
        alpha0, delta = p["alpha0"], p["delta"]
        N = prof["N"]
        worst = 0.0
        for r in _linspace(0.5, 4.0, samples):
            h = fd_scale * 1e-4 * (1.0 + r)
            res = nu * _fd2(N, r, h) - (alpha0 - nu) / r * _fd1(N, r, h) + delta * N(r)
            worst = max(worst, abs(res))
        return {"(4.66b)": worst}

    if fid is FamilyId.BURGERS_VORTEX:
        gamma = p["gamma"]
        terms = field._impl  # closed-form f, f_r/r, f_rr via the family helpers
        worst = 0.0
        for r in _linspace(0.05, 5.0, samples):
            jet = catalog.eval_jet(field, Point4(r, 0.0, 0.0, 0.0))
            # recover f, f_r from the jet: u2 = -g y/2 + x f => at y=0, u2/x = f
            f = (jet.state.u2 + 0.5 * gamma * 0.0) / r
            # f_r from du: d(u2)/dx at y=0 is f + x f_x = f + r f_r
            f_r = (jet.du[1, 0] - f) / r
            # second derivative via the stored per-axis seconds:
            # u2_xx = 2 f_x + x f_xx at y=0 -> f_rr = (u2_xx - 2 f_r)/r
            f_rr = (jet.d2u[1, 0] - 2.0 * f_r) / r
            res = f_rr + (gamma * r / (2.0 * nu) + 3.0 / r) * f_r + gamma / nu * f
            worst = max(worst, abs(res))
        return {"(4.75)": worst}

    if fid in (FamilyId.BURGERS_LUNDGREN, FamilyId.SECH_VORTEX):
        gamma = p["gamma"]
        f = prof["f"]
        worst = 0.0
        t_vals = _linspace(0.2 / gamma, 5.0 / gamma, 9)
        r_vals = _linspace(0.05, 4.0, samples)
        for t in t_vals:
            for r in r_vals:
                hr = fd_scale * 1e-4 * (1.0 + r)
                ht = fd_scale * 1e-4 * (1.0 + t)
                f_t = _fd1(lambda s: f(r, s), t, ht)
                f_r = _fd1(lambda s: f(s, t), r, hr)
                f_rr = _fd2(lambda s: f(s, t), r, hr)
                res = f_t - nu * f_rr - (0.5 * gamma * r + 3.0 * nu / r) * f_r \
                    - gamma * f(r, t)
                worst = max(worst, abs(res))
        return {"(4.82)": worst}

    raise UnsupportedFamilyError(f"no reduced profile equations for {fid.value}")


# ---------------------------------------------------------------------------
# printed-formula audit
# ---------------------------------------------------------------------------

def _curl_w3(field, pt):
    return kinematics.vorticity(catalog.eval_jet(field, pt))


def _fit_ratio(actual: list[float], shape: list[float]) -> float:
    num = math.fsum(a * s for a, s in zip(actual, shape))
    den = math.fsum(s * s for s in shape)
    return num / den


def vorticity_formula_audit(family: FamilyId | str, params: dict | None = None,
                            nu: float | None = None) -> list[dict]:
    """Compare curl-of-field against printed vorticity/angle formulas.

    Returns one entry per printed formula: agreement, or the measured
    discrepancy together with a fitted correction factor and the agreement
    of the corrected form.
    """
    fid = catalog.FamilyId(family) if not isinstance(family, FamilyId) else family
    if nu is None:
        nu = 0.25 if fid in (FamilyId.BURGERS_VORTEX, FamilyId.BURGERS_LUNDGREN) else 0.5
    field = catalog.make_field(fid, params, nu)
    p = field.params
    entries: list[dict] = []

    def entry(formula, status, max_dev, **extra):
        d = {"family": fid.value, "formula": formula, "status": status,
             "max_dev": max_dev}
        d.update(extra)
        entries.append(d)

    if fid is FamilyId.BURGERS_SHEAR_LAYER:
        gamma, A = p["gamma"], p["A"]
        ys = _linspace(-2.0, 2.0, 21)
        actual = [float(_curl_w3(field, Point4(0.3, y, 0.1, 0.0))[2]) for y in ys]
        printed = [-A * math.sqrt(2.0 * nu / gamma)
                   * math.exp(-gamma * y * y / (2.0 * nu)) for y in ys]
        dev = max(abs(a - b) for a, b in zip(actual, printed))
        ratio = _fit_ratio(actual, printed)
        corrected = [r * ratio for r in printed]
        dev_c = max(abs(a - b) for a, b in zip(actual, corrected))
        entry("(4.15)", "discrepancy", dev,
              correction_factor=ratio,
              expected_factor=math.sqrt(gamma / nu),
              corrected_form="-sqrt(2) A exp(-gamma y^2 / (2 nu))",
              max_dev_corrected=dev_c)
        return entries

    if fid is FamilyId.EXP_SADDLE:
        A, k1 = p["A"], p["k1"]
        pts = [Point4(0.5, y, z, 0.0) for y in _linspace(-1.5, 1.5, 7)
               for z in _linspace(-1.5, 1.5, 7)]
        dev = 0.0
        for pt in pts:
            om = kinematics.vorticity(catalog.eval_jet(field, pt))
            E = math.exp(k1 * (pt.y ** 2 - pt.z ** 2) / (2.0 * nu))
            w2 = -A * k1 / nu * pt.z * E
            w3 = -A * k1 / nu * pt.y * E
            dev = max(dev, abs(om[0]), abs(om[1] - w2), abs(om[2] - w3))
        entry("(4.20a)-(4.20b)", "match", dev)
        # printed tan(phi) = 2xy/(y^2-z^2); the field is x-independent and the
        # hyperbola identity forces 2yz/(y^2-z^2).  The angle branch here is
        # [0, pi] with chi = |xi ^ S xi| >= 0, so the signed quantity lives in
        # the chi component along x: (chi . x_hat)/alpha.
        dev_p = 0.0
        dev_c = 0.0
        rate = field.characteristic_rate
        for pt in pts:
            if abs(pt.y ** 2 - pt.z ** 2) < 0.3 or abs(pt.y) < 0.2:
                continue
            samp = kinematics.alignment(catalog.eval_jet(field, pt), rate)
            signed_tan = float(samp.chi[0]) / samp.alpha
            dev_p = max(dev_p, abs(signed_tan - 2 * pt.x * pt.y / (pt.y ** 2 - pt.z ** 2)))
            dev_c = max(dev_c, abs(signed_tan - 2 * pt.y * pt.z / (pt.y ** 2 - pt.z ** 2)))
        entry("(4.21)", "discrepancy", dev_p,
              corrected_form="(chi . x_hat)/alpha = 2yz/(y^2 - z^2); tan(phi) = |sinh 2 theta| on the unit hyperbola",
              max_dev_corrected=dev_c)
        return entries

    if fid is FamilyId.BESSEL_TRANSIENT:
        A, gamma = p["A"], p["gamma"]
        ys = _linspace(0.2, 3.0, 21)
        t = 0.4
        actual = [float(_curl_w3(field, Point4(0.0, y, 0.0, t))[2]) for y in ys]
        shape = []
        for y in ys:
            s = gamma * y * y / (4.0 * nu)
            import nsvl.specfun as sf
            shape.append(math.exp(-0.5 * gamma * t) * y ** 1.5
                         * (sf.bessel_i_scaled(-0.25, s) - sf.bessel_i_scaled(0.75, s)))
        ratio = _fit_ratio(actual, shape)
        dev_c = max(abs(a - ratio * s) for a, s in zip(actual, shape))
        entry("(4.23)", "undetermined-prefactor", math.nan,
              correction_factor=ratio,
              expected_factor=A * gamma / (2.0 * nu),
              corrected_form="B = A gamma/(2 nu) in the printed shape",
              max_dev_corrected=dev_c)
        return entries

    if fid is FamilyId.BURGERS_VORTEX:
        gamma, f0 = p["gamma"], p["f0"]
        a = field.derived["a"]
        rs = _linspace(0.0, 4.0, 21)
        dev = 0.0
        for r in rs:
            om3 = float(_curl_w3(field, Point4(r, 0.0, 0.2, 0.0))[2])
            dev = max(dev, abs(om3 - 2.0 * a * f0 * math.exp(-a * r * r)))
        entry("(4.79)", "match", dev)
        return entries

    if fid is FamilyId.BURGERS_LUNDGREN:
        gamma, f0 = p["gamma"], p["f0"]
        a = field.derived["a"]
        dev_p = 0.0
        dev_c = 0.0
        ratios = []
        for t in (0.4, 1.0, 2.5):
            s_t = -math.expm1(-gamma * t)
            for r in _linspace(0.0, 3.0, 13):
                om3 = float(_curl_w3(field, Point4(r, 0.0, 0.0, t))[2])
                printed = 2.0 * a * f0 * math.exp(1.0 - a * r * r / s_t) / s_t
                corrected = 2.0 * a * f0 / s_t * math.exp(-a * r * r / s_t)
                dev_p = max(dev_p, abs(om3 - printed))
                dev_c = max(dev_c, abs(om3 - corrected))
                ratios.append(om3 / printed)
        entry("(4.84)", "discrepancy", dev_p,
              correction_factor=ratios[0],
              expected_factor=1.0 / math.e,
              corrected_form="omega3 = (2 a f0 / s) exp(-a r^2 / s), s = 1 - exp(-gamma t)",
              max_dev_corrected=dev_c)
        return entries

    if fid is FamilyId.AXISYM_SOURCE:
        beta0, gamma0, a0 = p["beta0"], p["gamma0"], p["a0"]
        dev = 0.0
        for t in (0.5, 1.2):
            for x in _linspace(0.4, 2.0, 5):
                for y in _linspace(-1.6, 1.6, 5):
                    om = kinematics.vorticity(catalog.eval_jet(field, Point4(x, y, 0.3, t)))
                    r2 = x * x + y * y
                    coef = a0 / nu - 0.5 * gamma0 * (nu * t) ** -1.5 \
                        * math.exp(-r2 / (4.0 * nu * t))
                    dev = max(dev, abs(om[0] - coef * y), abs(om[1] + coef * x),
                              abs(om[2]))
        entry("(4.87)", "match", dev)
        return entries

    raise UnsupportedFamilyError(f"no printed vorticity formula cataloged for {fid.value}")


# ---------------------------------------------------------------------------
# standard (frozen) verification grids
# ---------------------------------------------------------------------------

def _load_grid_table() -> dict:
    text = resources.files("nsvl.data").joinpath("standard_grids.json").read_text()
    return json.loads(text)


def standard_grid(family: FamilyId | str) -> GridSpec:
    fid = catalog.FamilyId(family) if not isinstance(family, FamilyId) else family
    return grid_from_dict(_load_grid_table()[fid.value]["grid"])


def standard_field(family: FamilyId | str) -> FlowField:
    fid = catalog.FamilyId(family) if not isinstance(family, FamilyId) else family
    entry = _load_grid_table()[fid.value]
    return catalog.make_field(fid, entry.get("params"), entry["nu"])
