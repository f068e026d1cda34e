"""Exact evaluation of the repeated shock-merger construction.

The building block is the heat evolution of cosh(x) capped at height
cosh(m). It reduces to four complementary-error-function terms, evaluated
here entirely in log-domain arithmetic so plateau heights up to exp(1e10)
remain usable. A superposition of such blocks over a sparsely scheduled
sequence of cap positions produces a Burgers solution that re-enacts a
two-shock merger near each scheduled time and then relaxes back to zero
through the family of small steady shocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .logreal import LogReal, log_sum
from .special import log_erfc

__all__ = [
    "bump_value",
    "bump_slope",
    "check_long_bounds",
    "check_short_bounds",
    "inter_asymptotic",
    "MergerSchedule",
    "MergerSolution",
    "default_schedule",
    "merger_u",
    "merger_diag",
    "repair_diag",
]

_LOG2 = math.log(2.0)
_LOG4 = math.log(4.0)
# Slack (in log units) for bound checks whose analytic margin can sit below
# float resolution of the evaluator.
_BOUND_SLACK = 1e-12


def _log_cosh(x: float) -> float:
    h = abs(x)
    return h + math.log1p(math.exp(-2.0 * h)) - _LOG2


def _log_sinh(x: float) -> LogReal:
    if x == 0.0:
        return LogReal.zero()
    h = abs(x)
    return LogReal(1 if x > 0 else -1, h + math.log1p(-math.exp(-2.0 * h)) - _LOG2)


def _initial_value(m: float, x: float) -> LogReal:
    return LogReal(1, _log_cosh(min(abs(x), m)))


def _initial_slope(m: float, x: float) -> LogReal:
    if abs(x) >= m:
        return LogReal.zero()
    return _log_sinh(x)


def _check_args(m: float, t: float) -> None:
    if not m > 0:
        raise ValueError(f"cap position must be positive, got m={m}")
    if t < 0:
        raise ValueError(f"needs t >= 0, got t={t}")


def bump_value(m: float, t: float, x: float) -> LogReal:
    """Heat solution with initial data cosh(x) capped at cosh(m).

    Four erfc terms: two carry the plateau contribution of height
    cosh(m), two carry the cosh core transported by the heat flow.
    """
    _check_args(m, t)
    if t == 0.0:
        return _initial_value(m, x)
    rt = 2.0 * math.sqrt(t)
    lc = _log_cosh(m)
    terms = []
    for xx in (x, -x):
        plateau = log_erfc((m + xx) / rt) * LogReal(1, lc - _LOG2)
        core = (
            log_erfc((2.0 * t - m + xx) / rt) - log_erfc((2.0 * t + m + xx) / rt)
        ) * LogReal(1, t + xx - _LOG4)
        terms.extend([plateau, core])
    return log_sum(terms)


def bump_slope(m: float, t: float, x: float) -> LogReal:
    """Spatial derivative of bump_value, term-wise."""
    _check_args(m, t)
    if t == 0.0:
        return _initial_slope(m, x)
    rt = 2.0 * math.sqrt(t)
    lc = _log_cosh(m)
    log_sqrt_pit = 0.5 * math.log(math.pi * t)
    terms = []
    for sgn, xx in ((1, x), (-1, -x)):
        # d/dx of the plateau term
        terms.append(
            LogReal(-sgn, lc - _LOG2 - log_sqrt_pit - ((m + xx) / rt) ** 2)
        )
        # d/dx of the core term: product rule on exp(t+x) * bracket
        a = (2.0 * t - m + xx) / rt
        b = (2.0 * t + m + xx) / rt
        core = (log_erfc(a) - log_erfc(b)) * LogReal(1, t + xx - _LOG4)
        terms.append(core if sgn > 0 else -core)
        terms.append(LogReal(-sgn, t + xx - _LOG4 - log_sqrt_pit - a * a))
        terms.append(LogReal(sgn, t + xx - _LOG4 - log_sqrt_pit - b * b))
    return log_sum(terms)


def check_long_bounds(m: float, t: float, x: float) -> tuple[bool, bool, bool]:
    """Plateau-regime bounds: value pinched near cosh(m), slope O(1/t)."""
    if not t > 0:
        raise ValueError("needs t > 0")
    v = bump_value(m, t, x)
    dv = bump_slope(m, t, x)
    cosh_m = LogReal(1, _log_cosh(m))
    defect = 1.0 - m / math.sqrt(math.pi * t)
    if defect <= 0.0:
        lower_ok = True  # bound is vacuous
    else:
        lower_ok = cosh_m.scaled(defect).leq(v, _BOUND_SLACK)
    upper_ok = v.leq(cosh_m, _BOUND_SLACK)
    slope_bound = LogReal(
        1, _log_cosh(m) + math.log(m) - math.log(math.sqrt(4.0 * math.pi) * t)
    )
    slope_ok = abs(dv).leq(slope_bound, _BOUND_SLACK)
    return lower_ok, upper_ok, slope_ok


def check_short_bounds(m: float, t: float, x: float) -> tuple[bool, bool, bool]:
    """Core-regime bounds, valid while |x| + 2t <= m/2."""
    if not t > 0:
        raise ValueError("needs t > 0")
    if abs(x) + 2.0 * t > m / 2.0:
        raise ValueError(f"outside the core regime: |x|+2t={abs(x)+2*t} > m/2={m/2}")
    v = bump_value(m, t, x)
    dv = bump_slope(m, t, x)
    free = LogReal(1, t + _log_cosh(x))  # uncapped solution e^t*cosh(x)
    q = m * m / (16.0 * t)
    gap = -math.expm1(-q)  # 1 - e^{-q}
    lower_ok = free.scaled(gap).leq(v, _BOUND_SLACK)
    upper_ok = v.leq(free, _BOUND_SLACK)
    free_slope = _log_sinh(x) * LogReal.exp(t)
    err = dv - free_slope
    err_bound = LogReal(1, -q + t + _log_cosh(x))
    slope_ok = abs(err).leq(err_bound, _BOUND_SLACK)
    return lower_ok, upper_ok, slope_ok


def inter_asymptotic(m: float, delta: float, x: float) -> LogReal:
    """Leading term of bump_value(m, m/delta, x) for 0 < delta < 2.

    The relative deviation of the exact value from this term is O(1/m).
    """
    if not 0.0 < delta < 2.0:
        raise ValueError(f"delta must lie in (0, 2), got {delta}")
    if not m > 0:
        raise ValueError("m must be positive")
    log_pref = math.log(2.0 / (2.0 - delta)) - 0.5 * math.log(math.pi * m * delta)
    return LogReal(1, log_pref + m * (1.0 - delta / 4.0) + _log_cosh(delta * x / 2.0))


@dataclass(frozen=True)
class MergerSchedule:
    """Sparse merger times: each at least N^2 times the square of the last."""

    N: int
    times: tuple[float, ...]

    def __post_init__(self):
        if self.N < 10:
            raise ValueError("schedule needs N >= 10")
        if len(self.times) < 2:
            raise ValueError("schedule needs at least two times")
        if self.times[0] < 1.0:
            raise ValueError("first time must be >= 1")
        for t0, t1 in zip(self.times, self.times[1:]):
            if t1 < self.N**2 * t0**2:
                raise ValueError(
                    f"schedule too dense: {t1} < N^2*{t0}^2 = {self.N**2 * t0**2}"
                )


def default_schedule() -> MergerSchedule:
    return MergerSchedule(N=10, times=(1.0, 200.0, 1e9))


@dataclass(frozen=True)
class MergerSolution:
    """Superposition 1 + sum_j exp(-t_j) * bump(N*t_j) under Cole-Hopf."""

    schedule: MergerSchedule

    def heat_value(self, t: float, x: float) -> LogReal:
        terms = [LogReal.one()]
        for tj in self.schedule.times:
            terms.append(
                bump_value(self.schedule.N * tj, t, x) * LogReal.exp(-tj)
            )
        return log_sum(terms)

    def heat_slope(self, t: float, x: float) -> LogReal:
        terms = []
        for tj in self.schedule.times:
            terms.append(
                bump_slope(self.schedule.N * tj, t, x) * LogReal.exp(-tj)
            )
        return log_sum(terms)

    def value(self, t: float, x: float) -> float:
        ratio = self.heat_slope(t, x) / self.heat_value(t, x)
        return -2.0 * ratio.to_real()


def merger_u(sol: MergerSolution, t: float, x: float) -> float:
    if t < 0:
        raise ValueError("construction lives on t >= 0")
    return sol.value(t, x)


def merger_diag(
    sol: MergerSolution, k: int, x_window: float | None = None, n_grid: int = 201
) -> tuple[float, float]:
    """Deviation from the canonical two-shock merger snapshot at time tau_k.

    tau_k = t_k + (N-1)*t_{k-1} - log(2) is the exact balance time: the
    k-1 plateau has height cosh(N*t_{k-1}) ~ exp(N*t_{k-1})/2, and the
    log(2) offset makes the transported cosh core meet it at unit ratio,
    which is where the snapshot matches -2*sinh(x)/(1+cosh(x)). Without
    the offset the snapshot sits at plateau ratio 1/2 and the sup error
    saturates near 0.24 for every k. Returns (tau_k, sup error).
    """
    times = sol.schedule.times
    if not 2 <= k <= len(times):
        raise ValueError(f"k must lie in [2, {len(times)}], got {k}")
    tau = times[k - 1] + (sol.schedule.N - 1) * times[k - 2] - math.log(2.0)
    span = x_window if x_window is not None else times[k - 1]
    xs = np.linspace(-span, span, n_grid)
    err = max(
        abs(sol.value(tau, float(x)) + 2.0 * math.tanh(float(x) / 2.0)) for x in xs
    )
    return tau, err


def repair_diag(
    sol: MergerSolution,
    k: int,
    delta: float,
    x_window: float,
    n_grid: int = 201,
) -> tuple[float, float]:
    """Deviation from the steady shock of half-amplitude delta at N*t_k/delta."""
    times = sol.schedule.times
    if not 2 <= k <= len(times):
        raise ValueError(f"k must lie in [2, {len(times)}], got {k}")
    if not 0.0 < delta < 2.0:
        raise ValueError(f"delta must lie in (0, 2), got {delta}")
    tau = sol.schedule.N * times[k - 1] / delta
    xs = np.linspace(-x_window, x_window, n_grid)
    err = max(
        abs(sol.value(tau, float(x)) + delta * math.tanh(delta * float(x) / 2.0))
        for x in xs
    )
    return tau, err
