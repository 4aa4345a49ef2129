"""Independent reference computations used to freeze expected values.

Everything here deliberately avoids the code paths under test: exact
rational series via fractions.Fraction, a Runge-Kutta integration of the
Dawson ODE, and principal-value quadrature of the exponential-integral
definition.
"""

from __future__ import annotations

import math
from fractions import Fraction

from scipy import integrate


def kummer_fraction_series(alpha, beta, z, nterms: int = 200) -> float:
    """Exact-rational partial sum of the confluent hypergeometric series."""
    a = Fraction(alpha).limit_denominator(10 ** 12)
    b = Fraction(beta).limit_denominator(10 ** 12)
    zz = Fraction(z).limit_denominator(10 ** 12)
    term = Fraction(1)
    total = Fraction(1)
    for n in range(nterms):
        term *= (a + n) / (b + n) * zz / (n + 1)
        total += term
    return float(total)


def erf_maclaurin(x, nterms: int = 40) -> float:
    """2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1)), exact rationals."""
    xx = Fraction(x).limit_denominator(10 ** 12)
    total = Fraction(0)
    fact = Fraction(1)
    for n in range(nterms):
        if n > 0:
            fact *= n
        total += (-1) ** n * xx ** (2 * n + 1) / (fact * (2 * n + 1))
    return 2.0 / math.sqrt(math.pi) * float(total)


def dawson_rk4(x: float, steps_per_unit: int = 4000) -> float:
    """Integrate D' = 1 - 2 t D from D(0) = 0 (odd extension for x < 0)."""
    if x < 0:
        return -dawson_rk4(-x, steps_per_unit)
    n = max(8, int(steps_per_unit * x))
    h = x / n
    d = 0.0
    t = 0.0

    def f(t, d):
        return 1.0 - 2.0 * t * d

    for _ in range(n):
        k1 = f(t, d)
        k2 = f(t + 0.5 * h, d + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, d + 0.5 * h * k2)
        k4 = f(t + h, d + h * k3)
        d += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return d


def ei_quadrature(x: float) -> float:
    """Ei(x) from its defining principal-value integral."""
    if x < 0:
        val, _ = integrate.quad(lambda t: math.exp(-t) / t, -x, math.inf,
                                limit=400, epsabs=1e-14, epsrel=1e-13)
        return -val
    # PV int_{-inf}^x e^t / t dt ; the tail below -60 is negligible
    val, _ = integrate.quad(math.exp, -60.0, x, weight="cauchy", wvar=0.0,
                            limit=400, epsabs=1e-14, epsrel=1e-13)
    return val


def rk4_scalar(f, y0: float, t0: float, t1: float, steps: int) -> float:
    """Classic RK4 for a scalar ODE y' = f(t, y)."""
    h = (t1 - t0) / steps
    y, t = y0, t0
    for _ in range(steps):
        k1 = f(t, y)
        k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(t + h, y + h * k3)
        y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y
