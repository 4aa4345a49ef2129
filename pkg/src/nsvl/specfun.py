"""Real-valued special-function kernels used by the solution catalog.

The confluent hypergeometric (Kummer) function is summed from its power
series

    M(alpha, beta, z) = sum_n  (alpha)_n / (beta)_n * z^n / n!

with the Pochhammer convention (alpha)_0 = 1.  Negative arguments are
routed through the Kummer transformation M(a,b,z) = e^z M(b-a,b,-z) so
every summed series has non-alternating asymptotics (no catastrophic
cancellation).  Bessel J/Y/I, the exponential integral Ei and the Dawson
function are delegated to scipy.special behind the same result type;
erf comes from the C library via ``math.erf``.  erfi is evaluated as
2/sqrt(pi) * exp(x^2) * D(x) with D the Dawson function, which is stable
for every x that does not overflow the exponential.

Each kernel returns a ``SpecialValue`` carrying the value and a truncation
/rounding estimate, so callers can assert accuracy rather than assume it.
"""

from __future__ import annotations

import math
from typing import Literal, NamedTuple

from scipy import special as _sp

from .errors import ConvergenceError, DomainError

__all__ = [
    "SpecialValue",
    "kummer_m",
    "kummer_m_prime",
    "kummer_series_raw",
    "erf_pair",
    "dawson",
    "bessel_cyl",
    "bessel_cyl_prime",
    "bessel_i",
    "bessel_i_scaled",
    "expint_ei",
]

# Stop rule for the Kummer series (see module docstring): relative term
# floor, number of consecutive sub-floor terms required, iteration cap.
KUMMER_TERM_FLOOR = 1e-16
KUMMER_CONSECUTIVE = 3
KUMMER_MAX_TERMS = 10_000
KUMMER_RTOL = 1e-12

_EPS = 2.220446049250313e-16
_ERFI_OVERFLOW_LOGMAX = 709.78  # log of the largest double


class SpecialValue(NamedTuple):
    """A kernel result plus an absolute-error estimate."""

    value: float
    est_abs_error: float


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def kummer_series_raw(alpha: float, beta: float, z: float) -> SpecialValue:
    """Direct power-series sum of M(alpha, beta, z), no transformation.

    Exposed separately so identity tests can exercise both sides of the
    Kummer transformation without going through it.
    """
    if _is_nonpositive_int(beta):
        raise DomainError(f"kummer_m: beta={beta} is zero or a negative integer")
    term = 1.0
    psum = 1.0
    small_streak = 0
    for n in range(KUMMER_MAX_TERMS):
        term *= (alpha + n) / (beta + n) * z / (n + 1)
        psum += term
        if abs(term) < KUMMER_TERM_FLOOR * abs(psum):
            small_streak += 1
            if small_streak >= KUMMER_CONSECUTIVE:
                return SpecialValue(psum, abs(term) + 2 * _EPS * abs(psum))
        else:
            small_streak = 0
        if term == 0.0:
            # alpha hit a nonpositive integer: the series terminates exactly
            return SpecialValue(psum, _EPS * abs(psum))
    raise ConvergenceError(
        f"kummer_m({alpha}, {beta}, {z}): no convergence within {KUMMER_MAX_TERMS} terms"
    )


def kummer_m(alpha: float, beta: float, z: float) -> SpecialValue:
    """Kummer's confluent hypergeometric function M(alpha, beta, z)."""
    if _is_nonpositive_int(beta):
        raise DomainError(f"kummer_m: beta={beta} is zero or a negative integer")
    if alpha == 0.0:
        return SpecialValue(1.0, 0.0)
    if z == 0.0:
        return SpecialValue(1.0, 0.0)
    if z < 0.0 and not _is_nonpositive_int(alpha):
        # Kummer transformation: all series terms then share one sign regime.
        inner = kummer_series_raw(beta - alpha, beta, -z)
        scale = math.exp(z)
        return SpecialValue(scale * inner.value, scale * inner.est_abs_error)
    return kummer_series_raw(alpha, beta, z)


def kummer_m_prime(alpha: float, beta: float, z: float) -> float:
    """dM/dz via the contiguous relation M'(a,b,z) = (a/b) M(a+1,b+1,z)."""
    return alpha / beta * kummer_m(alpha + 1.0, beta + 1.0, z).value


def erf_pair(x: float) -> tuple[SpecialValue, SpecialValue]:
    """(erf(x), erfi(x)); erfi via the scaled Dawson evaluation.

    Raises OverflowError once exp(x^2) leaves the double range
    (|x| greater than about 26.6).
    """
    erf_v = SpecialValue(math.erf(x), 1e-16)
    t = x * x
    if t > _ERFI_OVERFLOW_LOGMAX:
        raise OverflowError(f"erfi({x}) exceeds the representable range")
    erfi_val = 2.0 / math.sqrt(math.pi) * math.exp(t) * float(_sp.dawsn(x))
    erfi_v = SpecialValue(erfi_val, 4 * _EPS * abs(erfi_val) + 1e-300)
    return erf_v, erfi_v


def dawson(x: float) -> float:
    """Dawson's integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt."""
    return float(_sp.dawsn(x))


def bessel_cyl(kind: Literal["J", "Y"], order: float, x: float) -> SpecialValue:
    """Cylinder Bessel function of the first (J) or second (Y) kind."""
    if kind == "Y":
        if x <= 0.0:
            raise DomainError(f"bessel_cyl(Y, {order}, {x}): requires x > 0")
        v = float(_sp.yv(order, x))
    elif kind == "J":
        if x < 0.0 and order != math.floor(order):
            raise DomainError(f"bessel_cyl(J, {order}, {x}): non-integer order requires x >= 0")
        v = float(_sp.jv(order, x))
    else:
        raise DomainError(f"bessel_cyl: unknown kind {kind!r}")
    if not math.isfinite(v):
        raise ConvergenceError(f"bessel_cyl({kind}, {order}, {x}) is not finite")
    return SpecialValue(v, 8 * _EPS * abs(v) + 1e-300)


def bessel_cyl_prime(kind: Literal["J", "Y"], order: float, x: float) -> float:
    """d/dx of J or Y via Z'_mu = Z_(mu-1) - (mu/x) Z_mu."""
    zm1 = bessel_cyl(kind, order - 1.0, x).value
    z = bessel_cyl(kind, order, x).value
    return zm1 - order / x * z


def bessel_i(order: float, x: float) -> SpecialValue:
    """Modified Bessel function of the first kind I_order(x), x >= 0."""
    if x < 0.0:
        raise DomainError(f"bessel_i({order}, {x}): requires x >= 0")
    v = float(_sp.iv(order, x))
    if not math.isfinite(v):
        raise ConvergenceError(f"bessel_i({order}, {x}) is not finite")
    return SpecialValue(v, 8 * _EPS * abs(v) + 1e-300)


def bessel_i_scaled(order: float, x: float) -> float:
    """exp(-x) * I_order(x); overflow-safe for large arguments."""
    if x < 0.0:
        raise DomainError(f"bessel_i_scaled({order}, {x}): requires x >= 0")
    return float(_sp.ive(order, x))


def expint_ei(x: float) -> SpecialValue:
    """Principal-value exponential integral Ei(x), x != 0."""
    if x == 0.0:
        raise DomainError("expint_ei(0): logarithmic singularity")
    v = float(_sp.expi(x))
    if not math.isfinite(v):
        raise ConvergenceError(f"expint_ei({x}) is not finite")
    return SpecialValue(v, 8 * _EPS * abs(v) + 1e-300)
