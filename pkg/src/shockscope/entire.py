"""Entire Burgers solutions represented by compactly supported measures.

The solution value is the ratio of two weighted integrals against the
measure, with weight exp(-z*x/2 + z^2*t/4). Both integrals share the same
analytically factored exponent peak, so the ratio stays finite for any
(t, x) even when the individual integrals span thousands of orders of
magnitude. Closed forms for the uniform-density reference measures are
provided alongside as independent cross-checks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .logreal import LogReal, log_sum
from .measure import Measure
from .quadrature import exp_poly_integral
from .special import dawson, gauss_integral, log_erfc, log_heat_kernel

__all__ = [
    "EntireSolution",
    "closed_lebesgue_u",
    "closed_lebesgue_atom0_u",
    "psi_gamma",
    "cole_hopf",
    "appell_residual",
    "poisson_eval",
    "grid_values",
    "thread_cap",
]

_LOG2 = math.log(2.0)


def _log_sinh_half(x: float) -> LogReal:
    """sinh(x/2) as a LogReal, safe for arbitrarily large |x|."""
    if x == 0.0:
        return LogReal.zero()
    h = abs(x) / 2.0
    sign = 1 if x > 0 else -1
    if h < 350.0:
        return LogReal(sign, math.log(math.sinh(h)))
    return LogReal(sign, h - _LOG2)


def _log_cosh(x: float) -> LogReal:
    h = abs(x)
    return LogReal(1, h + math.log1p(math.exp(-2.0 * h)) - _LOG2)


@dataclass(frozen=True)
class EntireSolution:
    """Evaluator for the measure-represented entire Burgers solution.

    The measure is accepted as given (the value is invariant under
    rescaling). quad_order and quad_tol control the per-piece
    Gauss-Legendre rule and the bisection acceptance threshold.
    """

    measure: Measure
    quad_order: int = 64
    quad_tol: float = 1e-12

    def __post_init__(self):
        if self.quad_order < 16:
            raise ValueError("quadrature order must be >= 16")

    def _moment(self, t: float, x: float, power: int = 0, center: float = 0.0) -> LogReal:
        """Integral of (z-center)^power * exp(-z*x/2 + z^2*t/4) d(measure)."""
        lin = -x / 2.0
        quad = t / 4.0
        terms = []
        for a in self.measure.atoms:
            factor = (a.z - center) ** power if power else 1.0
            val = a.w * factor
            if val != 0.0:
                terms.append(
                    LogReal(
                        1 if val > 0 else -1,
                        math.log(abs(val)) + lin * a.z + quad * a.z * a.z,
                    )
                )
        for p in self.measure.pieces:
            if power == 0:
                fn = p.poly
            else:
                fn = lambda z, _p=p: _p.poly(z) * (z - center) ** power
            terms.append(
                exp_poly_integral(
                    fn,
                    p.a,
                    p.b,
                    lin + p.exp_rate,
                    quad + p.exp_quad,
                    order=self.quad_order,
                    tol=self.quad_tol,
                )
            )
        return log_sum(terms)

    def heat_value(self, t: float, x: float) -> LogReal:
        """The positive heat-equation side of the Cole-Hopf pair."""
        return self._moment(t, x)

    def heat_slope(self, t: float, x: float) -> LogReal:
        """Spatial derivative of heat_value: -1/2 * first moment."""
        return self._moment(t, x, power=1).scaled(-0.5)

    def value(self, t: float, x: float) -> float:
        """Solution value; always inside the support interval."""
        den = self._moment(t, x)
        num = self._moment(t, x, power=1)
        return (num / den).to_real()

    def slope(self, t: float, x: float) -> float:
        """Spatial derivative: -1/2 times the weighted variance of z.

        Computed as a central second moment so the result is nonpositive
        by construction, not by cancellation.
        """
        den = self._moment(t, x)
        u = (self._moment(t, x, power=1) / den).to_real()
        var = (self._moment(t, x, power=2, center=u) / den).to_real()
        return -0.5 * var


# ---------------------------------------------------------------------------
# Closed forms for the uniform density on [-1, 1], with and without an
# added unit atom at the origin.
# ---------------------------------------------------------------------------


def _lebesgue_heat_log(t: float, x: float) -> LogReal:
    """Heat value for the uniform density on [-1,1], t != 0, as LogReal."""
    if t == 0.0:
        # (4/x)*sinh(x/2); removable singularity at x=0
        if x == 0.0:
            return LogReal.from_real(2.0)
        return _log_sinh_half(x) * LogReal.from_real(4.0 / x)
    rt = math.sqrt(abs(t))
    if t < 0.0:
        s1 = rt / 2.0 + x / (2.0 * rt)
        s2 = rt / 2.0 - x / (2.0 * rt)
        # E(s1)+E(s2): for mixed large arguments go through erfc to avoid
        # cancellation of the two saturated branches
        if min(s1, s2) < -6.0:
            esum = (log_erfc(-min(s1, s2)) - log_erfc(max(s1, s2))).scaled(
                math.sqrt(math.pi) / 2.0
            )
        else:
            esum = LogReal.from_real(gauss_integral(s1) + gauss_integral(s2))
        pref = LogReal(1, math.log(2.0 / rt) - x * x / (4.0 * t))
        return pref * esum
    b1 = rt / 2.0 + x / (2.0 * rt)
    b2 = rt / 2.0 - x / (2.0 * rt)
    t1 = LogReal.from_real(dawson(b1)) * LogReal.exp(x / 2.0)
    t2 = LogReal.from_real(dawson(b2)) * LogReal.exp(-x / 2.0)
    pref = LogReal(1, math.log(2.0 / rt) + t / 4.0)
    return pref * (t1 + t2)


def closed_lebesgue_u(t: float, x: float) -> float:
    """Solution for the uniform density on [-1,1] via error/Dawson functions."""
    if t == 0.0:
        raise ValueError("closed form not defined at t=0; use the quadrature path")
    ratio = LogReal.exp(t / 4.0) * _log_sinh_half(x) / _lebesgue_heat_log(t, x)
    return x / t - (4.0 / t) * ratio.to_real()


def closed_lebesgue_atom0_u(t: float, x: float) -> float:
    """Solution for uniform density on [-1,1] plus a unit atom at 0."""
    if t == 0.0:
        raise ValueError("closed form not defined at t=0; use the quadrature path")
    big_u = _lebesgue_heat_log(t, x)
    den = LogReal.one() + big_u
    first = (x / t) * (big_u / den).to_real()
    second = (4.0 / t) * (LogReal.exp(t / 4.0) * _log_sinh_half(x) / den).to_real()
    return first - second


def psi_gamma(gamma: float, x: float) -> float:
    """Two-shock merger snapshot: -2*sinh(x)/(gamma + cosh(x))."""
    if not gamma > 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    # stable for large |x|: divide through by cosh(x)
    return -2.0 * math.tanh(x) / (gamma / math.cosh(x) + 1.0) if abs(x) < 350 else (
        -2.0 if x > 0 else 2.0
    )


def cole_hopf(heat_value: float, heat_slope: float) -> float:
    """Burgers value from a positive heat solution and its slope."""
    if not heat_value > 0:
        raise ValueError(f"heat value must be positive, got {heat_value}")
    return -2.0 * heat_slope / heat_value


def appell_residual(sol: EntireSolution, t: float, x: float, h: float = 1e-3) -> float:
    """Heat-equation residual of the time-inverted companion solution.

    For t < 0 the map tau = -1/t sends the ancient solution to a
    forward-time heat solution V(tau, x) = K(tau, x) * U(-1/tau, -x/tau);
    the residual |dV/dtau - d2V/dx2| is estimated on a 5-point stencil.
    """
    if not t < 0:
        raise ValueError("requires an ancient time t < 0")
    tau = -1.0 / t

    def v(tt: float, xx: float) -> float:
        big_u = sol.heat_value(-1.0 / tt, -xx / tt)
        return (log_heat_kernel(tt, xx) * big_u).to_real()

    dt = (v(tau + h, x) - v(tau - h, x)) / (2.0 * h)
    dxx = (v(tau, x + h) - 2.0 * v(tau, x) + v(tau, x - h)) / (h * h)
    return abs(dt - dxx)


def poisson_eval(mu: Measure, t: float, x: float) -> float:
    """Heat-kernel integral of the measure, valid for t > 0."""
    if not t > 0:
        raise ValueError(f"requires t > 0, got {t}")
    log_norm = -0.5 * math.log(4.0 * math.pi * t)
    terms = []
    for a in mu.atoms:
        terms.append(
            LogReal(1, math.log(a.w) - (x - a.z) ** 2 / (4.0 * t) + log_norm)
        )
    for p in mu.pieces:
        lin = x / (2.0 * t) + p.exp_rate
        quad = -1.0 / (4.0 * t) + p.exp_quad
        val = exp_poly_integral(p.poly, p.a, p.b, lin, quad)
        terms.append(val * LogReal(1, -x * x / (4.0 * t) + log_norm))
    return log_sum(terms).to_real()


def thread_cap() -> int:
    """Worker cap from SHOCKSCOPE_THREADS; defaults to 1 (serial)."""
    raw = os.environ.get("SHOCKSCOPE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def grid_values(sol: EntireSolution, ts, xs) -> np.ndarray:
    """Solution values on a rectangular grid, shape (len(ts), len(xs)).

    Rows are independent; with SHOCKSCOPE_THREADS > 1 they are computed
    in a thread pool and reassembled in order, so results are identical
    to the serial path.
    """
    ts = np.asarray(ts, dtype=float)
    xs = np.asarray(xs, dtype=float)

    def row(t: float) -> np.ndarray:
        return np.array([sol.value(t, x) for x in xs])

    cap = thread_cap()
    if cap > 1 and len(ts) > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            rows = list(pool.map(row, ts))
    else:
        rows = [row(t) for t in ts]
    return np.vstack(rows)
