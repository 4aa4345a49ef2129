"""Registry of exact incompressible Navier-Stokes solution families.

Each family maps a spacetime point to velocity and density-normalized
pressure, exposes analytic first derivatives (velocity gradient, time
derivative, per-axis second derivatives, pressure gradient) and declares
a validity domain that is enforced, never silently extrapolated.

Pressure conventions worth noting:

* the stretched-vortex families integrate the radial momentum balance
  pi_r = r f^2 - gamma^2 r / 4 in closed form, which brings in the
  exponential integral; near the axis the combination is evaluated
  through series-stable helpers so the removable singularity stays
  removable in floating point;
* the irrotational family has no printed pressure; the unsteady
  Bernoulli form p = -phi_t - |grad phi|^2 / 2 is used, which makes the
  momentum residual vanish identically (additive time gauge fixed to 0).

Formula tags such as "(4.70)-(4.77)" in the metadata name the printed
equations of record each family realizes; audit reports use the same tags.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from . import specfun
from .errors import DomainError, ParamError

__all__ = [
    "Point4",
    "FlowState",
    "FlowJet",
    "Guard",
    "ACCEPT",
    "FamilyId",
    "FlowField",
    "make_field",
    "eval_state",
    "eval_jet",
    "domain_guard",
    "list_families",
    "default_params",
]

_SQRT2 = math.sqrt(2.0)
_LN2 = math.log(2.0)

# Finite-difference steps: 4th-order central for first derivatives,
# 2nd-order for the per-axis second derivatives.
FD_H1_SCALE = 1e-4
FD_H2_SCALE = 1e-3

R_MIN = 1e-8   # axis guard for 1/r^2 families
T_MIN = 1e-8   # time guard for t^(-1/2) / 1/(1-exp(-gamma t)) families
ERFI_ARG_MAX = 5.0     # growing-branch window for the erf-product family
ERFI_ARG_OVERFLOW = 25.0
KUMMER_ARG_MAX = 50.0


class Point4(NamedTuple):
    x: float
    y: float
    z: float
    t: float


class FlowState(NamedTuple):
    u1: float
    u2: float
    u3: float
    p: float


@dataclass(frozen=True)
class FlowJet:
    """First-order jet of a flow at a point.

    du[i][j] = d u_i / d x_j, d2u[i][j] = d^2 u_i / d x_j^2 (so the
    Laplacian of u_i is d2u[i].sum()), dp = pressure gradient.
    """

    state: FlowState
    du: np.ndarray
    dudt: np.ndarray
    d2u: np.ndarray
    dp: np.ndarray


class Guard(NamedTuple):
    accepted: bool
    reason: str | None = None


ACCEPT = Guard(True, None)


def _reject(reason: str) -> Guard:
    return Guard(False, reason)


class JetMode(str, enum.Enum):
    ANALYTIC = "analytic"
    FINITE_DIFF = "finite-diff"


class FamilyId(str, enum.Enum):
    KUMMER_SHEAR = "kummer-shear"
    ERF_PRODUCT_SHEAR = "erf-product-shear"
    BURGERS_SHEAR_LAYER = "burgers-shear-layer"
    EXP_SADDLE = "exp-saddle"
    BESSEL_TRANSIENT = "bessel-transient"
    IRROTATIONAL_POTENTIAL = "irrotational-potential"
    SCALE_INVARIANT = "scale-invariant"
    AXISYM_SOURCE = "axisym-source"
    AXISYM_BESSEL = "axisym-bessel"
    BURGERS_VORTEX = "burgers-vortex"
    BURGERS_LUNDGREN = "burgers-lundgren"
    SECH_VORTEX = "sech-vortex"


# ---------------------------------------------------------------------------
# series-stable helpers for the stretched-vortex profiles
# ---------------------------------------------------------------------------

def _h0(s: float) -> float:
    """(1 - exp(-s)) / s, with h0(0) = 1."""
    if abs(s) < 1e-12:
        return 1.0 - 0.5 * s
    return -math.expm1(-s) / s


def _h1(s: float) -> float:
    """d/ds of _h0; cancellation-free near 0."""
    if abs(s) < 0.01:
        return (-1.0 / 2.0 + s * (1.0 / 3.0 + s * (-1.0 / 8.0 + s * (
            1.0 / 30.0 + s * (-1.0 / 144.0 + s * (1.0 / 840.0 - s / 5760.0))))))
    return (math.exp(-s) * (1.0 + s) - 1.0) / (s * s)


def _h2(s: float) -> float:
    """d2/ds2 of _h0; cancellation-free near 0."""
    if abs(s) < 0.05:
        return (1.0 / 3.0 + s * (-1.0 / 4.0 + s * (1.0 / 10.0 + s * (
            -1.0 / 36.0 + s * (1.0 / 168.0 - s / 960.0)))))
    return (2.0 - math.exp(-s) * (2.0 + s * (2.0 + s))) / (s * s * s)


def _ei_diff(s: float) -> float:
    """Ei(-s) - Ei(-2s) for s > 0, with the finite limit -log(2) at 0."""
    if s < 1e-4:
        return -_LN2 + s * (1.0 - s * (3.0 / 4.0 - s * 7.0 / 18.0))
    return specfun.expint_ei(-s).value - specfun.expint_ei(-2.0 * s).value


def _logistic(u: float) -> float:
    if u >= 0.0:
        return 1.0 / (1.0 + math.exp(-u))
    e = math.exp(u)
    return e / (1.0 + e)


# ---------------------------------------------------------------------------
# family evaluators
# ---------------------------------------------------------------------------

class _Evaluator:
    """Closed-form state/jet/guard closures for one parameterized family."""

    def __init__(self, state, jet, guard, profiles=None, extras=None):
        self.state = state            # (x,y,z,t) -> FlowState
        self.jet = jet                # (x,y,z,t) -> FlowJet or None (no analytic jet)
        self.guard = guard            # (x,y,z,t) -> Guard
        self.profiles = profiles or {}
        self.extras = extras or {}


def _jet_arrays(state, du_rows, dudt, d2u_rows, dp) -> FlowJet:
    return FlowJet(
        state=state,
        du=np.array(du_rows, dtype=float),
        dudt=np.array(dudt, dtype=float),
        d2u=np.array(d2u_rows, dtype=float),
        dp=np.array(dp, dtype=float),
    )


def _swirl2d_terms(alpha: float, beta: float, x: float, y: float):
    """Velocity and derivatives of u_12 = ((alpha x - beta y), (beta x + alpha y)) / r^2."""
    r2 = x * x + y * y
    r4 = r2 * r2
    r6 = r4 * r2
    u1 = (alpha * x - beta * y) / r2
    u2 = (beta * x + alpha * y) / r2
    p1x = (y * y - x * x) / r4
    p1y = -2.0 * x * y / r4
    p2y = -p1x
    u1x = alpha * p1x - beta * p1y
    u1y = alpha * p1y - beta * p2y
    u2x = beta * p1x + alpha * p1y
    u2y = beta * p1y + alpha * p2y
    f1xx = -2.0 * x / r4 - 4.0 * x * (y * y - x * x) / r6
    f1yy = -2.0 * x / r4 + 8.0 * x * y * y / r6
    f2xx = -2.0 * y / r4 + 8.0 * x * x * y / r6
    f2yy = -2.0 * y / r4 - 4.0 * y * (x * x - y * y) / r6
    u1xx = alpha * f1xx - beta * f2xx
    u1yy = alpha * f1yy - beta * f2yy
    u2xx = beta * f1xx + alpha * f2xx
    u2yy = beta * f1yy + alpha * f2yy
    return u1, u2, u1x, u1y, u2x, u2y, u1xx, u1yy, u2xx, u2yy


def _vortex_evaluator(gamma: float, f_terms, pressure, f_time=None, guard=None,
                      profiles=None, extras=None) -> _Evaluator:
    """Shared assembly for u = (-g x/2 - y f, -g y/2 + x f, g z) swirl fields.

    f_terms(r2, t) must return (f, f_r/r, f_rr); f_time(r2, t) returns
    df/dt (None for steady profiles); pressure(x, y, z, t, r2, f) the
    closed-form p.
    """

    def state(x, y, z, t):
        r2 = x * x + y * y
        f, _, _ = f_terms(r2, t)
        p = pressure(x, y, z, t, r2, f)
        return FlowState(-0.5 * gamma * x - y * f, -0.5 * gamma * y + x * f,
                         gamma * z, p)

    def jet(x, y, z, t):
        r2 = x * x + y * y
        f, fr_or, f_rr = f_terms(r2, t)
        p = pressure(x, y, z, t, r2, f)
        st = FlowState(-0.5 * gamma * x - y * f, -0.5 * gamma * y + x * f,
                       gamma * z, p)
        if r2 < 1e-28:
            f_xx = f_yy = f_rr
        else:
            cx2 = x * x / r2
            cy2 = y * y / r2
            f_xx = f_rr * cx2 + fr_or * cy2
            f_yy = f_rr * cy2 + fr_or * cx2
        xy_fr = x * y * fr_or
        du = ((-0.5 * gamma - xy_fr, -f - y * y * fr_or, 0.0),
              (f + x * x * fr_or, -0.5 * gamma + xy_fr, 0.0),
              (0.0, 0.0, gamma))
        d2u = ((-y * f_xx, -2.0 * y * fr_or - y * f_yy, 0.0),
               (2.0 * x * fr_or + x * f_xx, x * f_yy, 0.0),
               (0.0, 0.0, 0.0))
        if f_time is None:
            dudt = (0.0, 0.0, 0.0)
        else:
            ft = f_time(r2, t)
            dudt = (-y * ft, x * ft, 0.0)
        q = f * f - 0.25 * gamma * gamma
        dp = (x * q, y * q, -gamma * gamma * z)
        return _jet_arrays(st, du, dudt, d2u, dp)

    return _Evaluator(state, jet, guard or (lambda x, y, z, t: ACCEPT),
                      profiles=profiles, extras=extras)


# --- kummer-shear -----------------------------------------------------------

def _build_kummer_shear(p: dict, nu: float) -> _Evaluator:
    k1, sigma, G, H = p["k1"], p["sigma"], p["G"], p["H"]
    c1, c2, c3, c4, c5, tau0 = p["c1"], p["c2"], p["c3"], p["c4"], p["c5"], p["tau0"]
    a2 = -G / (2.0 * k1)
    a3 = 0.5 - G / (2.0 * k1)
    b4 = -H / (2.0 * k1)
    b5 = 0.5 - H / (2.0 * k1)
    z0 = sigma / k1

    @lru_cache(maxsize=None)
    def Y3(y: float):
        s = k1 * y * y / (2.0 * nu)
        m2 = specfun.kummer_m(a2, 0.5, s).value
        m3 = specfun.kummer_m(a3, 1.5, s).value
        ds = k1 * y / nu
        m2p = specfun.kummer_m_prime(a2, 0.5, s)
        m3p = specfun.kummer_m_prime(a3, 1.5, s)
        Y = c2 * m2 + y * c3 * m3
        Yp = c2 * m2p * ds + c3 * (m3 + y * m3p * ds)
        Ypp = (k1 * y * Yp - G * Y) / nu
        return Y, Yp, Ypp

    @lru_cache(maxsize=None)
    def T3(z: float):
        w = z - z0
        s = -k1 * w * w / (2.0 * nu)
        m4 = specfun.kummer_m(b4, 0.5, s).value
        m5 = specfun.kummer_m(b5, 1.5, s).value
        ds = -k1 * w / nu
        m4p = specfun.kummer_m_prime(b4, 0.5, s)
        m5p = specfun.kummer_m_prime(b5, 1.5, s)
        T = c4 * m4 + w * c5 * m5
        Tp = c4 * m4p * ds + c5 * (m5 + w * m5p * ds)
        Tpp = (H * T - (k1 * z - sigma) * Tp) / nu
        return T, Tp, Tpp

    def Phi(t: float) -> float:
        return c1 * math.exp((H - G) * t)

    def pressure(y, z):
        return -0.5 * k1 * k1 * z * z + k1 * sigma * z + tau0 - 0.5 * k1 * k1 * y * y

    def state(x, y, z, t):
        u1 = Phi(t) * Y3(y)[0] * T3(z)[0]
        return FlowState(u1, k1 * y, sigma - k1 * z, pressure(y, z))

    def jet(x, y, z, t):
        Y, Yp, Ypp = Y3(y)
        T, Tp, Tpp = T3(z)
        ph = Phi(t)
        u1 = ph * Y * T
        st = FlowState(u1, k1 * y, sigma - k1 * z, pressure(y, z))
        du = ((0.0, ph * Yp * T, ph * Y * Tp),
              (0.0, k1, 0.0),
              (0.0, 0.0, -k1))
        d2u = ((0.0, ph * Ypp * T, ph * Y * Tpp),
               (0.0, 0.0, 0.0),
               (0.0, 0.0, 0.0))
        dudt = ((H - G) * u1, 0.0, 0.0)
        dp = (0.0, -k1 * k1 * y, -k1 * k1 * z + k1 * sigma)
        return _jet_arrays(st, du, dudt, d2u, dp)

    def guard(x, y, z, t):
        if abs(k1) * y * y / (2.0 * nu) > KUMMER_ARG_MAX:
            return _reject("Kummer series argument |k1 y^2/(2 nu)| > 50")
        if abs(k1) * (z - z0) ** 2 / (2.0 * nu) > KUMMER_ARG_MAX:
            return _reject("Kummer series argument |k1 (z - sigma/k1)^2/(2 nu)| > 50")
        return ACCEPT

    return _Evaluator(state, jet, guard,
                      profiles={"Y": lambda y: Y3(y)[0],
                                "T": lambda z: T3(z)[0],
                                "Phi": Phi})


# --- erf-product shear ------------------------------------------------------

def _build_erf_product(p: dict, nu: float) -> _Evaluator:
    k1 = p["k1"]
    c2, c3, c4, c5 = p["c2"], p["c3"], p["c4"], p["c5"]
    kap = abs(k1)
    beta = math.sqrt(kap / (2.0 * nu))
    S = math.sqrt(math.pi * nu / kap)

    if k1 > 0:
        def Fy(y):
            return c2 - c3 * S * specfun.erf_pair(beta * y)[1].value

        def Fz(z):
            return c4 + c5 * S * math.erf(beta * z)
    else:
        def Fy(y):
            return c2 + c3 * S * math.erf(beta * y)

        def Fz(z):
            return c4 - c5 * S * specfun.erf_pair(beta * z)[1].value

    sgn_y = -1.0 if k1 > 0 else 1.0

    def Fyp(y):
        return sgn_y * _SQRT2 * c3 * math.exp(k1 * y * y / (2.0 * nu))

    def Fzp(z):
        return -sgn_y * _SQRT2 * c5 * math.exp(-k1 * z * z / (2.0 * nu))

    def pressure(y, z):
        return -0.5 * k1 * k1 * (y * y + z * z)

    def state(x, y, z, t):
        return FlowState(Fy(y) * Fz(z), k1 * y, -k1 * z, pressure(y, z))

    def jet(x, y, z, t):
        fy, fz = Fy(y), Fz(z)
        fyp, fzp = Fyp(y), Fzp(z)
        fypp = (k1 * y / nu) * fyp
        fzpp = (-k1 * z / nu) * fzp
        st = FlowState(fy * fz, k1 * y, -k1 * z, pressure(y, z))
        du = ((0.0, fyp * fz, fy * fzp), (0.0, k1, 0.0), (0.0, 0.0, -k1))
        d2u = ((0.0, fypp * fz, fy * fzpp), (0.0,) * 3, (0.0,) * 3)
        dp = (0.0, -k1 * k1 * y, -k1 * k1 * z)
        return _jet_arrays(st, du, (0.0, 0.0, 0.0), d2u, dp)

    def guard(x, y, z, t):
        grow = y if k1 > 0 else z
        if abs(beta * grow) > ERFI_ARG_MAX:
            return _reject("erfi-branch argument beyond the validity window |arg| <= 5")
        return ACCEPT

    return _Evaluator(state, jet, guard)


# --- burgers shear layer ----------------------------------------------------

def _build_burgers_shear(p: dict, nu: float) -> _Evaluator:
    gamma, A, B = p["gamma"], p["A"], p["B"]
    cc = math.sqrt(gamma / (2.0 * nu))
    amp = A * math.sqrt(math.pi * nu / gamma)

    def Y(y):
        return amp * math.erf(cc * y) + B

    def Yp(y):
        return _SQRT2 * A * math.exp(-gamma * y * y / (2.0 * nu))

    def pressure(y, z):
        return -0.5 * gamma * gamma * (y * y + z * z)

    def state(x, y, z, t):
        return FlowState(Y(y), -gamma * y, gamma * z, pressure(y, z))

    def jet(x, y, z, t):
        yp = Yp(y)
        st = FlowState(Y(y), -gamma * y, gamma * z, pressure(y, z))
        du = ((0.0, yp, 0.0), (0.0, -gamma, 0.0), (0.0, 0.0, gamma))
        d2u = ((0.0, -(gamma * y / nu) * yp, 0.0), (0.0,) * 3, (0.0,) * 3)
        dp = (0.0, -gamma * gamma * y, -gamma * gamma * z)
        return _jet_arrays(st, du, (0.0, 0.0, 0.0), d2u, dp)

    return _Evaluator(state, jet, lambda x, y, z, t: ACCEPT,
                      profiles={"Y": Y})


# --- exponential saddle -----------------------------------------------------

def _build_exp_saddle(p: dict, nu: float) -> _Evaluator:
    A, k1 = p["A"], p["k1"]

    def pressure(y, z):
        return -0.5 * k1 * k1 * (y * y + z * z)

    def state(x, y, z, t):
        u1 = A * math.exp(k1 * (y * y - z * z) / (2.0 * nu))
        return FlowState(u1, k1 * y, -k1 * z, pressure(y, z))

    def jet(x, y, z, t):
        u1 = A * math.exp(k1 * (y * y - z * z) / (2.0 * nu))
        st = FlowState(u1, k1 * y, -k1 * z, pressure(y, z))
        gy = k1 * y / nu
        gz = k1 * z / nu
        du = ((0.0, gy * u1, -gz * u1), (0.0, k1, 0.0), (0.0, 0.0, -k1))
        d2u = ((0.0, (k1 / nu + gy * gy) * u1, (-k1 / nu + gz * gz) * u1),
               (0.0,) * 3, (0.0,) * 3)
        dp = (0.0, -k1 * k1 * y, -k1 * k1 * z)
        return _jet_arrays(st, du, (0.0, 0.0, 0.0), d2u, dp)

    def guard(x, y, z, t):
        if abs(k1 * (y * y - z * z) / (2.0 * nu)) > 600.0:
            return _reject("exponent beyond overflow window")
        return ACCEPT

    return _Evaluator(state, jet, guard)


# --- bessel transient -------------------------------------------------------

def _build_bessel_transient(p: dict, nu: float) -> _Evaluator:
    A, gamma = p["A"], p["gamma"]

    @lru_cache(maxsize=None)
    def g3(y: float):
        s = gamma * y * y / (4.0 * nu)
        im = specfun.bessel_i_scaled(-0.25, s)
        ip = specfun.bessel_i_scaled(0.75, s)
        g = math.sqrt(y) * im
        gp = (gamma / (2.0 * nu)) * y ** 1.5 * (ip - im)
        gpp = -(gamma * y * gp + 0.5 * gamma * g) / nu
        return g, gp, gpp

    def pressure(y, z):
        return -0.5 * gamma * gamma * (y * y + z * z)

    def state(x, y, z, t):
        u1 = A * math.exp(-0.5 * gamma * t) * g3(y)[0]
        return FlowState(u1, -gamma * y, gamma * z, pressure(y, z))

    def jet(x, y, z, t):
        g, gp, gpp = g3(y)
        e = A * math.exp(-0.5 * gamma * t)
        st = FlowState(e * g, -gamma * y, gamma * z, pressure(y, z))
        du = ((0.0, e * gp, 0.0), (0.0, -gamma, 0.0), (0.0, 0.0, gamma))
        d2u = ((0.0, e * gpp, 0.0), (0.0,) * 3, (0.0,) * 3)
        dudt = (-0.5 * gamma * e * g, 0.0, 0.0)
        dp = (0.0, -gamma * gamma * y, -gamma * gamma * z)
        return _jet_arrays(st, du, dudt, d2u, dp)

    def guard(x, y, z, t):
        if y <= 0.0:
            return _reject("y <= 0: y^(1/2) branch requires y > 0")
        return ACCEPT

    return _Evaluator(state, jet, guard, profiles={"Y": lambda y: g3(y)[0]})


# --- irrotational potential -------------------------------------------------

def _build_irrotational(p: dict, nu: float) -> _Evaluator:
    c1, c2, c3 = p["c1"], p["c2"], p["c3"]
    l1, l2, l3 = p["lam1"], p["lam2"], p["lam3"]
    phi0 = p["phi0"]

    def comps(t):
        return c1 * math.exp(-l1 * t), c2 * math.exp(-l2 * t), c3 * math.exp(-l3 * t)

    def state(x, y, z, t):
        e1, e2, e3 = comps(t)
        u1 = e1 + l1 * x
        u2 = e2 + l2 * y
        u3 = e3 + l3 * z
        p_val = (l1 * e1 * x + l2 * e2 * y + l3 * e3 * z
                 - 0.5 * (u1 * u1 + u2 * u2 + u3 * u3))
        return FlowState(u1, u2, u3, p_val)

    def jet(x, y, z, t):
        st = state(x, y, z, t)
        e1, e2, e3 = comps(t)
        du = ((l1, 0.0, 0.0), (0.0, l2, 0.0), (0.0, 0.0, l3))
        dudt = (-l1 * e1, -l2 * e2, -l3 * e3)
        d2u = ((0.0,) * 3,) * 3
        dp = (-l1 * l1 * x, -l2 * l2 * y, -l3 * l3 * z)
        return _jet_arrays(st, du, dudt, d2u, dp)

    def potential(pt: Point4) -> float:
        e1, e2, e3 = comps(pt.t)
        return (0.5 * (l1 * pt.x ** 2 + l2 * pt.y ** 2 + l3 * pt.z ** 2)
                + e1 * pt.x + e2 * pt.y + e3 * pt.z + phi0)

    return _Evaluator(state, jet, lambda x, y, z, t: ACCEPT,
                      extras={"potential": potential})


# --- scale invariant --------------------------------------------------------

def _build_scale_invariant(p: dict, nu: float) -> _Evaluator:
    a, b, c, c0 = p["a"], p["b"], p["c"], p["c0"]
    c1, c2, c3, c4 = p["c1"], p["c2"], p["c3"], p["c4"]
    sq_nu = math.sqrt(nu)
    has_erfi = c2 != 0.0 or c4 != 0.0
    C = math.exp(c * c / nu) / math.sqrt(math.pi * nu)

    @lru_cache(maxsize=None)
    def wpack(rho: float):
        E = math.exp(rho * (4.0 * c - rho) / (4.0 * nu))
        psi = (2.0 * c - rho) / (2.0 * sq_nu)
        erfi_psi = specfun.erf_pair(psi)[1].value if has_erfi else 0.0
        wp = (2.0 * c - rho) / (2.0 * nu)
        w12 = E * (c1 - c2 * erfi_psi)
        w12p = wp * w12 + c2 * C
        w12pp = -w12 / (2.0 * nu) + wp * w12p
        w34 = E * (c3 - c4 * erfi_psi)
        w34p = wp * w34 + c4 * C
        w34pp = -w34 / (2.0 * nu) + wp * w34p
        return w12, w12p, w12pp, w34, w34p, w34pp

    def state(x, y, z, t):
        rt = math.sqrt(t)
        rho = x / rt
        w12, _, _, w34, _, _ = wpack(rho)
        fac = sq_nu / rt
        p_val = c0 / t + (0.5 * c * x - a * y - b * z) / (t * rt)
        return FlowState(c / rt, -2.0 * a / rt + fac * w12,
                         -2.0 * b / rt + fac * w34, p_val)

    def jet(x, y, z, t):
        rt = math.sqrt(t)
        rho = x / rt
        w12, w12p, w12pp, w34, w34p, w34pp = wpack(rho)
        st = state(x, y, z, t)
        t32 = t * rt
        du = ((0.0, 0.0, 0.0),
              (sq_nu / t * w12p, 0.0, 0.0),
              (sq_nu / t * w34p, 0.0, 0.0))
        d2u = ((0.0,) * 3,
               (sq_nu / t32 * w12pp, 0.0, 0.0),
               (sq_nu / t32 * w34pp, 0.0, 0.0))
        dudt = (-0.5 * c / t32,
                a / t32 - 0.5 * sq_nu / t32 * (w12 + rho * w12p),
                b / t32 - 0.5 * sq_nu / t32 * (w34 + rho * w34p))
        dp = (0.5 * c / t32, -a / t32, -b / t32)
        return _jet_arrays(st, du, dudt, d2u, dp)

    def guard(x, y, z, t):
        if t <= T_MIN:
            return _reject("t^(-1/2) singularity: requires t > 0")
        if has_erfi:
            psi = (2.0 * c - x / math.sqrt(t)) / (2.0 * sq_nu)
            if abs(psi) > ERFI_ARG_OVERFLOW:
                return _reject("erfi argument beyond overflow window")
        return ACCEPT

    return _Evaluator(state, jet, guard)


# --- axisymmetric source (heat-kernel axial flow) ---------------------------

def _build_axisym_source(p: dict, nu: float) -> _Evaluator:
    beta0, gamma0, a0, b0 = p["beta0"], p["gamma0"], p["a0"], p["b0"]

    def pressure(r2, z):
        return -(nu * nu + beta0 * beta0) / (2.0 * r2) + a0 * z + b0

    def gauss(r2, t):
        return gamma0 / math.sqrt(nu * t) * math.exp(-r2 / (4.0 * nu * t))

    def state(x, y, z, t):
        r2 = x * x + y * y
        u1 = (nu * x - beta0 * y) / r2
        u2 = (beta0 * x + nu * y) / r2
        u3 = gauss(r2, t) + a0 / (2.0 * nu) * r2
        return FlowState(u1, u2, u3, pressure(r2, z))

    def jet(x, y, z, t):
        r2 = x * x + y * y
        u1, u2, u1x, u1y, u2x, u2y, u1xx, u1yy, u2xx, u2yy = \
            _swirl2d_terms(nu, beta0, x, y)
        G = gauss(r2, t)
        m = -G / (2.0 * nu * t) + a0 / nu
        curv = G / (4.0 * nu * nu * t * t)
        u3 = G + a0 / (2.0 * nu) * r2
        st = FlowState(u1, u2, u3, pressure(r2, z))
        du = ((u1x, u1y, 0.0), (u2x, u2y, 0.0), (x * m, y * m, 0.0))
        d2u = ((u1xx, u1yy, 0.0), (u2xx, u2yy, 0.0),
               (m + x * x * curv, m + y * y * curv, 0.0))
        dudt = (0.0, 0.0, G * (-0.5 / t + r2 / (4.0 * nu * t * t)))
        pr4 = (nu * nu + beta0 * beta0) / (r2 * r2)
        dp = (x * pr4, y * pr4, a0)
        return _jet_arrays(st, du, dudt, d2u, dp)

    def guard(x, y, z, t):
        if x * x + y * y <= R_MIN * R_MIN:
            return _reject("r=0 singularity")
        if t <= T_MIN:
            return _reject("(nu t)^(-1/2) singularity: requires t > 0")
        return ACCEPT

    return _Evaluator(state, jet, guard)


# --- axisymmetric bessel mode -----------------------------------------------

def _build_axisym_bessel(p: dict, nu: float) -> _Evaluator:
    alpha0, beta0, delta = p["alpha0"], p["beta0"], p["delta"]
    M0, c1, c2, a0, b0 = p["M0"], p["c1"], p["c2"], p["a0"], p["b0"]
    mu = alpha0 / (2.0 * nu)
    k = math.sqrt(delta / nu)

    @lru_cache(maxsize=None)
    def N3(r: float):
        kr = k * r
        z = c1 * specfun.bessel_cyl("J", mu, kr).value \
            + c2 * specfun.bessel_cyl("Y", mu, kr).value
        zm = c1 * specfun.bessel_cyl("J", mu - 1.0, kr).value \
            + c2 * specfun.bessel_cyl("Y", mu - 1.0, kr).value
        rmu = r ** mu
        N = rmu * z
        Np = k * rmu * zm
        Npp = ((alpha0 - nu) / r * Np - delta * N) / nu
        return N, Np, Npp

    def pressure(r2, z):
        return -(alpha0 * alpha0 + beta0 * beta0) / (2.0 * r2) + a0 * z + b0

    def state(x, y, z, t):
        r2 = x * x + y * y
        r = math.sqrt(r2)
        u1 = (alpha0 * x - beta0 * y) / r2
        u2 = (beta0 * x + alpha0 * y) / r2
        u3 = M0 * math.exp(-delta * t) * N3(r)[0] - a0 * t
        return FlowState(u1, u2, u3, pressure(r2, z))

    def jet(x, y, z, t):
        r2 = x * x + y * y
        r = math.sqrt(r2)
        u1, u2, u1x, u1y, u2x, u2y, u1xx, u1yy, u2xx, u2yy = \
            _swirl2d_terms(alpha0, beta0, x, y)
        N, Np, Npp = N3(r)
        E = M0 * math.exp(-delta * t)
        u3 = E * N - a0 * t
        st = FlowState(u1, u2, u3, pressure(r2, z))
        cx2 = x * x / r2
        cy2 = y * y / r2
        du = ((u1x, u1y, 0.0), (u2x, u2y, 0.0),
              (E * Np * x / r, E * Np * y / r, 0.0))
        d2u = ((u1xx, u1yy, 0.0), (u2xx, u2yy, 0.0),
               (E * (Npp * cx2 + Np / r * cy2), E * (Npp * cy2 + Np / r * cx2), 0.0))
        dudt = (0.0, 0.0, -delta * E * N - a0)
        pr4 = (alpha0 * alpha0 + beta0 * beta0) / (r2 * r2)
        dp = (x * pr4, y * pr4, a0)
        return _jet_arrays(st, du, dudt, d2u, dp)

    def guard(x, y, z, t):
        if x * x + y * y <= R_MIN * R_MIN:
            return _reject("r=0 singularity")
        return ACCEPT

    return _Evaluator(state, jet, guard, profiles={"N": lambda r: N3(r)[0]})


# --- burgers vortex ---------------------------------------------------------

def _build_burgers_vortex(p: dict, nu: float) -> _Evaluator:
    gamma, f0, f1 = p["gamma"], p["f0"], p["f1"]
    a = gamma / (4.0 * nu)
    g = f0 - f1

    def f_terms(r2, t):
        s = a * r2
        f = g * a * _h0(s)
        fr_or = 2.0 * a * a * g * _h1(s)
        f_rr = 2.0 * a * a * g * (_h1(s) + 2.0 * s * _h2(s))
        if f1 != 0.0:
            f += f1 / r2
            fr_or += -2.0 * f1 / (r2 * r2)
            f_rr += 6.0 * f1 / (r2 * r2)
        return f, fr_or, f_rr

    def pressure(x, y, z, t, r2, f):
        base = -0.5 * gamma * gamma * (z * z + 0.25 * r2)
        if f1 == 0.0:
            s = a * r2
            h = _h0(s)
            return base - 0.5 * f0 * f0 * a * a * r2 * h * h \
                + a * f0 * f0 * _ei_diff(s)
        s = a * r2
        e1 = math.exp(-s)
        e2 = math.exp(-2.0 * s)
        ei1 = specfun.expint_ei(-s).value
        ei2 = specfun.expint_ei(-2.0 * s).value
        return base - f0 * f0 / (2.0 * r2) \
            + f0 * g * (e1 / r2 + a * ei1) \
            - 0.5 * g * g * (e2 / r2 + 2.0 * a * ei2)

    def guard(x, y, z, t):
        if f1 != 0.0 and x * x + y * y <= R_MIN * R_MIN:
            return _reject("r=0 singularity for f1 != 0")
        return ACCEPT

    def profile(r):
        return f_terms(r * r, 0.0)[0]

    return _Evaluator(*_vortex_as_args(gamma, f_terms, pressure, None, guard),
                      profiles={"f": profile}, extras={"a": a})


def _vortex_as_args(gamma, f_terms, pressure, f_time, guard):
    ev = _vortex_evaluator(gamma, f_terms, pressure, f_time=f_time, guard=guard)
    return ev.state, ev.jet, ev.guard


# --- burgers-lundgren vortex ------------------------------------------------

def _build_burgers_lundgren(p: dict, nu: float) -> _Evaluator:
    gamma, f0 = p["gamma"], p["f0"]
    a = gamma / (4.0 * nu)

    def decay(t):
        s_t = -math.expm1(-gamma * t)      # 1 - exp(-gamma t)
        return a / s_t, s_t

    def f_terms(r2, t):
        b, _ = decay(t)
        w = b * r2
        f = f0 * b * _h0(w)
        fr_or = 2.0 * b * b * f0 * _h1(w)
        f_rr = 2.0 * b * b * f0 * (_h1(w) + 2.0 * w * _h2(w))
        return f, fr_or, f_rr

    def f_time(r2, t):
        b, s_t = decay(t)
        bdot = -b * gamma * math.exp(-gamma * t) / s_t
        w = b * r2
        return f0 * bdot * (_h0(w) + w * _h1(w))   # = f0 * bdot * exp(-w)

    def pressure(x, y, z, t, r2, f):
        b, _ = decay(t)
        w = b * r2
        h = _h0(w)
        return -0.5 * gamma * gamma * (z * z + 0.25 * r2) \
            - 0.5 * f0 * f0 * b * b * r2 * h * h + b * f0 * f0 * _ei_diff(w)

    def guard(x, y, z, t):
        if t <= T_MIN:
            return _reject("1/(1 - exp(-gamma t)) factor: requires t > 0")
        return ACCEPT

    def profile(r, t):
        return f_terms(r * r, t)[0]

    return _Evaluator(*_vortex_as_args(gamma, f_terms, pressure, f_time, guard),
                      profiles={"f": profile}, extras={"a": a})


# --- sech-envelope vortex ---------------------------------------------------

def _build_sech_vortex(p: dict, nu: float) -> _Evaluator:
    gamma, f0 = p["gamma"], p["f0"]
    a = gamma / (4.0 * nu)

    def coeffs(t):
        sig = _logistic(gamma * t)
        ct = a * sig
        ch = math.cosh(0.5 * gamma * t)
        At = 0.5 * f0 / (ch * ch)
        return At, ct, sig

    def f_terms(r2, t):
        At, ct, _ = coeffs(t)
        f = At * math.exp(-ct * r2)
        fr_or = -2.0 * ct * f
        f_rr = (-2.0 * ct + 4.0 * ct * ct * r2) * f
        return f, fr_or, f_rr

    def f_time(r2, t):
        At, ct, sig = coeffs(t)
        f = At * math.exp(-ct * r2)
        cdot = a * gamma * sig * (1.0 - sig)
        return f * (-gamma * math.tanh(0.5 * gamma * t) - cdot * r2)

    def pressure(x, y, z, t, r2, f):
        At, ct, _ = coeffs(t)
        base = -0.5 * gamma * gamma * (z * z + 0.25 * r2)
        if At == 0.0:
            return base
        return base - At * At / (4.0 * ct) * math.exp(-2.0 * ct * r2)

    def profile(r, t):
        return f_terms(r * r, t)[0]

    return _Evaluator(*_vortex_as_args(gamma, f_terms, pressure, f_time, None),
                      profiles={"f": profile}, extras={"a": a})


# ---------------------------------------------------------------------------
# family metadata and validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _FamilyMeta:
    fid: FamilyId
    params: tuple[str, ...]
    defaults: dict
    equations: str
    domain: str
    builder: Callable[[dict, float], _Evaluator]
    rate: Callable[[dict, float], float]
    validate: Callable[[dict, float], None]


def _positive(name):
    def check(p, nu):
        if p[name] <= 0.0:
            raise ParamError(f"{name} > 0 is required, got {p[name]}")
    return check


def _nonzero(name):
    def check(p, nu):
        if p[name] == 0.0:
            raise ParamError(f"{name} must be nonzero")
    return check


def _checks(*fns):
    def run(p, nu):
        for fn in fns:
            fn(p, nu)
    return run


def _check_lambda_sum(p, nu):
    s = p["lam1"] + p["lam2"] + p["lam3"]
    if abs(s) > 1e-12 * max(1.0, abs(p["lam1"]), abs(p["lam2"]), abs(p["lam3"])):
        raise ParamError(f"lam1 + lam2 + lam3 = 0 is required, got sum {s}")


_REGISTRY: dict[FamilyId, _FamilyMeta] = {}


def _register(meta: _FamilyMeta) -> None:
    _REGISTRY[meta.fid] = meta


_register(_FamilyMeta(
    FamilyId.KUMMER_SHEAR,
    ("k1", "sigma", "G", "H", "c1", "c2", "c3", "c4", "c5", "tau0"),
    {"k1": 1.0, "sigma": 0.5, "G": 0.3, "H": 0.2, "c1": 1.0, "c2": 0.7,
     "c3": 0.3, "c4": 1.0, "c5": 0.4, "tau0": 0.0},
    "(4.11a)-(4.11d)",
    "Kummer arguments |k1 y^2/(2 nu)| and |k1 (z - sigma/k1)^2/(2 nu)| <= 50",
    _build_kummer_shear,
    lambda p, nu: abs(p["k1"]),
    _nonzero("k1"),
))
_register(_FamilyMeta(
    FamilyId.ERF_PRODUCT_SHEAR,
    ("k1", "c2", "c3", "c4", "c5"),
    {"k1": 1.0, "c2": 1.0, "c3": 0.5, "c4": 1.0, "c5": 0.5},
    "(4.12)",
    "growing-branch coordinate limited to |arg| <= 5 of the erfi argument",
    _build_erf_product,
    lambda p, nu: abs(p["k1"]),
    _nonzero("k1"),
))
_register(_FamilyMeta(
    FamilyId.BURGERS_SHEAR_LAYER,
    ("gamma", "A", "B"),
    {"gamma": 1.0, "A": 1.0, "B": 2.0},
    "(4.13)-(4.14)",
    "entire",
    _build_burgers_shear,
    lambda p, nu: p["gamma"],
    _positive("gamma"),
))
_register(_FamilyMeta(
    FamilyId.EXP_SADDLE,
    ("A", "k1"),
    {"A": 1.0, "k1": -0.5},
    "(4.19a)-(4.19c)",
    "exponent |k1 (y^2 - z^2)/(2 nu)| <= 600",
    _build_exp_saddle,
    lambda p, nu: abs(p["k1"]),
    _nonzero("k1"),
))
_register(_FamilyMeta(
    FamilyId.BESSEL_TRANSIENT,
    ("A", "gamma"),
    {"A": 1.0, "gamma": 1.0},
    "(4.22a)-(4.22d)",
    "y > 0",
    _build_bessel_transient,
    lambda p, nu: p["gamma"],
    _positive("gamma"),
))
_register(_FamilyMeta(
    FamilyId.IRROTATIONAL_POTENTIAL,
    ("c1", "c2", "c3", "lam1", "lam2", "lam3", "phi0"),
    {"c1": 1.0, "c2": -0.5, "c3": 0.7, "lam1": 0.5, "lam2": 0.3,
     "lam3": -0.8, "phi0": 0.0},
    "(4.36)-(4.37)",
    "entire",
    _build_irrotational,
    lambda p, nu: max(abs(p["lam1"]), abs(p["lam2"]), abs(p["lam3"]), 1e-30),
    _check_lambda_sum,
))
_register(_FamilyMeta(
    FamilyId.SCALE_INVARIANT,
    ("a", "b", "c", "c0", "c1", "c2", "c3", "c4"),
    {"a": 0.4, "b": -0.3, "c": 0.4, "c0": 0.2, "c1": 0.6, "c2": 0.3,
     "c3": -0.5, "c4": 0.2},
    "(4.41a)-(4.41d)",
    "t > 0; erfi argument within overflow window when c2 or c4 is nonzero",
    _build_scale_invariant,
    lambda p, nu: 1.0,
    lambda p, nu: None,
))
_register(_FamilyMeta(
    FamilyId.AXISYM_SOURCE,
    ("beta0", "gamma0", "a0", "b0"),
    {"beta0": 0.25, "gamma0": 1.0, "a0": 0.2, "b0": 0.0},
    "(4.61)-(4.62c)",
    "r > 0 and t > 0",
    _build_axisym_source,
    lambda p, nu: max(nu, abs(p["beta0"]), abs(p["a0"])),
    lambda p, nu: None,
))
_register(_FamilyMeta(
    FamilyId.AXISYM_BESSEL,
    ("alpha0", "beta0", "delta", "M0", "c1", "c2", "a0", "b0"),
    {"alpha0": 0.5, "beta0": 0.25, "delta": 1.0, "M0": 1.0, "c1": 1.0,
     "c2": 0.3, "a0": 0.2, "b0": 0.0},
    "(4.67)-(4.69c)",
    "r > 0",
    _build_axisym_bessel,
    lambda p, nu: max(p["delta"], abs(p["alpha0"]), abs(p["beta0"])),
    _positive("delta"),
))
_register(_FamilyMeta(
    FamilyId.BURGERS_VORTEX,
    ("gamma", "f0", "f1"),
    {"gamma": 1.0, "f0": 1.0, "f1": 0.0},
    "(4.70)-(4.77)",
    "entire for f1 = 0; r > 0 otherwise",
    _build_burgers_vortex,
    lambda p, nu: p["gamma"],
    _positive("gamma"),
))
_register(_FamilyMeta(
    FamilyId.BURGERS_LUNDGREN,
    ("gamma", "f0"),
    {"gamma": 1.0, "f0": 1.0},
    "(4.81)-(4.84)",
    "t > 0",
    _build_burgers_lundgren,
    lambda p, nu: p["gamma"],
    _positive("gamma"),
))
_register(_FamilyMeta(
    FamilyId.SECH_VORTEX,
    ("gamma", "f0"),
    {"gamma": 1.0, "f0": 1.0},
    "(4.85)-(4.86)",
    "entire",
    _build_sech_vortex,
    lambda p, nu: p["gamma"],
    _positive("gamma"),
))


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowField:
    """An immutable parameterized exact solution."""

    family: FamilyId
    params: dict
    nu: float
    derived: dict
    characteristic_rate: float
    _impl: _Evaluator

    def potential(self, pt: Point4) -> float:
        fn = self._impl.extras.get("potential")
        if fn is None:
            raise AttributeError(f"{self.family.value} has no velocity potential")
        return fn(pt)


def _coerce_family(family: FamilyId | str) -> FamilyId:
    if isinstance(family, FamilyId):
        return family
    try:
        return FamilyId(family)
    except ValueError:
        raise ParamError(f"unknown family {family!r}") from None


def default_params(family: FamilyId | str) -> dict:
    return dict(_REGISTRY[_coerce_family(family)].defaults)


def make_field(family: FamilyId | str, params: dict | None = None,
               nu: float = 1.0) -> FlowField:
    fid = _coerce_family(family)
    meta = _REGISTRY[fid]
    if nu <= 0.0:
        raise ParamError(f"nu > 0 is required, got {nu}")
    full = dict(meta.defaults)
    for key, val in (params or {}).items():
        if key not in meta.params:
            raise ParamError(f"{fid.value}: unknown parameter {key!r}")
        full[key] = float(val)
    meta.validate(full, nu)
    impl = meta.builder(full, nu)
    derived = dict(impl.extras)
    derived.pop("potential", None)
    if fid is FamilyId.AXISYM_BESSEL:
        derived["mu"] = full["alpha0"] / (2.0 * nu)
    return FlowField(fid, full, nu, derived, meta.rate(full, nu), impl)


def domain_guard(field: FlowField, pt: Point4) -> Guard:
    return field._impl.guard(pt.x, pt.y, pt.z, pt.t)


def eval_state(field: FlowField, pt: Point4) -> FlowState:
    g = field._impl.guard(pt.x, pt.y, pt.z, pt.t)
    if not g.accepted:
        raise DomainError(f"{field.family.value} at {tuple(pt)}: {g.reason}")
    return field._impl.state(pt.x, pt.y, pt.z, pt.t)


def _fd_jet(field: FlowField, pt: Point4) -> FlowJet:
    """4th-order central first derivatives, 2nd-order per-axis seconds."""
    st = eval_state(field, pt)
    base = [pt.x, pt.y, pt.z, pt.t]

    def at(idx, delta):
        q = list(base)
        q[idx] += delta
        return eval_state(field, Point4(*q))

    du = np.zeros((3, 3))
    d2u = np.zeros((3, 3))
    dp = np.zeros(3)
    for j in range(3):
        h = FD_H1_SCALE * (1.0 + abs(base[j]))
        sp2, sp1 = at(j, 2 * h), at(j, h)
        sm1, sm2 = at(j, -h), at(j, -2 * h)
        for i in range(3):
            du[i, j] = (-sp2[i] + 8 * sp1[i] - 8 * sm1[i] + sm2[i]) / (12 * h)
        dp[j] = (-sp2.p + 8 * sp1.p - 8 * sm1.p + sm2.p) / (12 * h)
        h2 = FD_H2_SCALE * (1.0 + abs(base[j]))
        qp, qm = at(j, h2), at(j, -h2)
        for i in range(3):
            d2u[i, j] = (qp[i] - 2 * st[i] + qm[i]) / (h2 * h2)
    ht = FD_H1_SCALE * (1.0 + abs(base[3]))
    tp2, tp1 = at(3, 2 * ht), at(3, ht)
    tm1, tm2 = at(3, -ht), at(3, -2 * ht)
    dudt = np.array([(-tp2[i] + 8 * tp1[i] - 8 * tm1[i] + tm2[i]) / (12 * ht)
                     for i in range(3)])
    return FlowJet(st, du, dudt, d2u, dp)


def eval_jet(field: FlowField, pt: Point4,
             mode: JetMode | str = JetMode.ANALYTIC) -> FlowJet:
    mode = JetMode(mode)
    g = field._impl.guard(pt.x, pt.y, pt.z, pt.t)
    if not g.accepted:
        raise DomainError(f"{field.family.value} at {tuple(pt)}: {g.reason}")
    if mode is JetMode.ANALYTIC:
        return field._impl.jet(pt.x, pt.y, pt.z, pt.t)
    return _fd_jet(field, pt)


def list_families() -> list[dict]:
    """Stable, machine-readable metadata for all cataloged families."""
    out = []
    for fid in FamilyId:
        meta = _REGISTRY[fid]
        out.append({
            "family": fid.value,
            "parameters": list(meta.params),
            "defaults": dict(meta.defaults),
            "equations": meta.equations,
            "domain": meta.domain,
        })
    return out
