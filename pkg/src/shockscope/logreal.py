"""Signed log-magnitude scalars.

Sums of terms like exp(-z*x/2 + z^2*t/4) span thousands of orders of
magnitude once |t| or |x| gets large, so every evaluator in this package
carries intermediate quantities as (sign, log|value|) pairs and only
converts back to an ordinary float at the very end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

__all__ = ["LogReal", "log_sum"]

# Opposite-sign magnitudes closer than this (in log units) cancel to zero:
# below it the difference carries no significant bits anyway.
_CANCEL_EPS = 1e-15


@dataclass(frozen=True)
class LogReal:
    """A real number stored as sign in {-1, 0, +1} and log of magnitude."""

    sign: int
    log_abs: float

    @staticmethod
    def zero() -> "LogReal":
        return LogReal(0, -math.inf)

    @staticmethod
    def one() -> "LogReal":
        return LogReal(1, 0.0)

    @staticmethod
    def from_real(x: float) -> "LogReal":
        if x == 0.0:
            return LogReal.zero()
        return LogReal(1 if x > 0 else -1, math.log(abs(x)))

    @staticmethod
    def exp(log_value: float, sign: int = 1) -> "LogReal":
        """LogReal with magnitude e**log_value; no overflow for any argument."""
        if sign == 0:
            return LogReal.zero()
        return LogReal(1 if sign > 0 else -1, float(log_value))

    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log_abs > 709.0:  # exp would overflow
            return self.sign * math.inf
        return self.sign * math.exp(self.log_abs)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log_abs)

    def __abs__(self) -> "LogReal":
        return LogReal(abs(self.sign), self.log_abs)

    def __mul__(self, other: "LogReal") -> "LogReal":
        s = self.sign * other.sign
        if s == 0:
            return LogReal.zero()
        return LogReal(s, self.log_abs + other.log_abs)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        if other.sign == 0:
            raise ZeroDivisionError("division by LogReal zero")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log_abs - other.log_abs)

    def __add__(self, other: "LogReal") -> "LogReal":
        return log_sum([self, other])

    def __sub__(self, other: "LogReal") -> "LogReal":
        return log_sum([self, -other])

    def scaled(self, factor: float) -> "LogReal":
        """Multiply by an ordinary float."""
        return self * LogReal.from_real(factor)

    # Comparisons of magnitudes with a relative slack, used by the bound
    # checkers where the analytic inequality can hold with zero margin.
    def leq(self, other: "LogReal", rel_slack: float = 0.0) -> bool:
        """self <= other, magnitudes compared with log-domain slack."""
        if self.sign < other.sign:
            return True
        if self.sign > other.sign:
            return False
        if self.sign == 0:
            return True
        if self.sign > 0:
            return self.log_abs <= other.log_abs + rel_slack
        return other.log_abs <= self.log_abs + rel_slack

    def __float__(self) -> float:
        return self.to_real()


def log_sum(terms: Iterable[LogReal]) -> LogReal:
    """Sum LogReals by factoring out the largest magnitude.

    Terms are accumulated in descending order of log magnitude so the
    result does not depend on caller ordering. An exact cancellation of
    the two leading opposite-sign terms (relative log difference below
    1e-15) yields zero rather than noise.
    """
    live = [t for t in terms if t.sign != 0]
    if not live:
        return LogReal.zero()
    live.sort(key=lambda t: t.log_abs, reverse=True)
    top = live[0]
    if len(live) >= 2 and live[1].sign == -top.sign:
        if live[0].log_abs - live[1].log_abs < _CANCEL_EPS:
            # leading pair cancels exactly at float resolution
            return log_sum(live[2:])
    m = top.log_abs
    acc = 0.0
    for t in live:
        acc += t.sign * math.exp(t.log_abs - m)
    if acc == 0.0:
        return LogReal.zero()
    return LogReal(1 if acc > 0 else -1, m + math.log(abs(acc)))
