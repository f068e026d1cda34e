"""Ancient-time behavior of measure-represented solutions in moving frames.

Outside the support the backward-in-time limit is decided by the nearest
support points (a, b) around the frame speed: a constant when the gap is
asymmetric, a steady shock with a slowly varying shift when a = -b. The
shift is the fixed point of a contraction built from one-sided restrictions
of the measure near the gap edges.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .entire import EntireSolution
from .measure import Measure, act_galilean, restrict, support_gap

__all__ = [
    "FrameLimit",
    "WindowFn",
    "classify_frame",
    "frame_limit_error",
    "shift_field",
    "shift_fixed_point",
    "atom_probe",
    "ancient_report",
]

_GAP_TOL = 1e-12  # absolute tolerance on a+b for the symmetric-gap case
_NEAR_TOL = 1e-6  # relative band flagged as numerically ambiguous


@dataclass(frozen=True)
class FrameLimit:
    """Classification of u(t, x + c*t) as t -> -infinity.

    kind is one of "in_support" (limit c), "constant" (limit value), or
    "shock" (limit is the steady shock between pair[0] and pair[1] in the
    lab frame, up to a sublinear shift). shifted_value carries the limit
    in the Galilean frame moving at speed c.
    """

    kind: str
    c: float
    value: float | None = None
    pair: tuple[float, float] | None = None
    half_amp: float | None = None  # shock half-amplitude b in the moving frame
    shifted_value: float | None = None
    ambiguous: bool = False
    candidates: tuple[str, ...] = ()


def classify_frame(mu: Measure, c: float) -> FrameLimit:
    shifted = act_galilean(mu, -c)
    gap = support_gap(shifted, 0.0)
    if gap.degenerate:
        return FrameLimit(kind="in_support", c=c, value=c, shifted_value=0.0)
    a, b = gap.m_minus, gap.m_plus
    s = a + b  # may be +-inf when one side is empty
    ambiguous = (
        math.isfinite(a)
        and math.isfinite(b)
        and abs(s) > _GAP_TOL
        and abs(s) < _NEAR_TOL * min(-a, b)
    )
    candidates = ("constant", "shock") if ambiguous else ()
    if abs(s) <= _GAP_TOL:
        return FrameLimit(
            kind="shock",
            c=c,
            pair=(b + c, a + c),
            half_amp=b,
            shifted_value=None,
            ambiguous=False,
        )
    d = b if s < 0 else a
    return FrameLimit(
        kind="constant",
        c=c,
        value=d + c,
        shifted_value=d,
        ambiguous=ambiguous,
        candidates=candidates,
    )


@dataclass(frozen=True)
class WindowFn:
    """Sublinear spatial window |x| <= L(t) for ancient-limit suprema."""

    L: Callable[[float], float] = field(default=lambda t: abs(t) ** 0.9)

    def validate(self, samples: Sequence[float] = (-1e2, -1e3, -1e4)) -> None:
        ratios = [self.L(t) / abs(t) for t in samples]
        if any(r1 < r0 for r0, r1 in zip(ratios, ratios[1:])):
            raise ValueError("window is not sublinear on the sample ladder")

    @staticmethod
    def constant(width: float) -> "WindowFn":
        return WindowFn(L=lambda t, _w=width: _w)


def shift_field(mu_shifted: Measure, eps: float, t: float, x: float) -> float:
    """Shift field built from one-sided restrictions near the gap edges.

    mu_shifted must be in the frame where the gap is symmetric, supp on
    (-inf,-b] u [b,inf) near 0. Requires 0 < eps < b.
    """
    gap = support_gap(mu_shifted, 0.0)
    if gap.degenerate:
        raise ValueError("0 lies in the support; no gap to track")
    b = gap.m_plus
    if not (math.isfinite(b) and math.isfinite(gap.m_minus)):
        raise ValueError("empty one-sided neighborhood")
    if abs(gap.m_minus + b) > 1e-9 * max(1.0, b):
        raise ValueError(f"gap not symmetric: a={gap.m_minus}, b={b}")
    if not 0 < eps < b:
        raise ValueError(f"need 0 < eps < b={b}, got eps={eps}")
    try:
        right = restrict(mu_shifted, b, b + eps)
        left = restrict(mu_shifted, -b - eps, -b)
    except ValueError as exc:
        raise ValueError("empty one-sided neighborhood") from exc
    plus = EntireSolution(right).heat_value(t, x)
    minus = EntireSolution(left).heat_value(t, x)
    return x + (plus.log_abs - minus.log_abs) / b


def shift_fixed_point(
    mu_shifted: Measure, eps: float, t: float, tol: float = 1e-10, max_iter: int = 10_000
) -> float:
    """Unique solution of x = shift_field(t, x), found by iteration.

    The field is a contraction in x with rate eps/b < 1, so plain
    fixed-point iteration converges.
    """
    x = shift_field(mu_shifted, eps, t, 0.0)
    for _ in range(max_iter):
        nxt = shift_field(mu_shifted, eps, t, x)
        if abs(nxt - x) <= tol:
            return nxt
        x = nxt
    raise RuntimeError(f"shift fixed point did not converge (eps={eps}, t={t})")


def _tracked_shift(mu_shifted: Measure, b: float, t: float, eps: float | None) -> float:
    """Fixed-point shift; the default eps = b/10 is cross-checked at eps/2."""
    if eps is not None:
        return shift_fixed_point(mu_shifted, eps, t)
    s1 = shift_fixed_point(mu_shifted, b / 10.0, t)
    s2 = shift_fixed_point(mu_shifted, b / 20.0, t)
    if abs(s1 - s2) > 1e-3:
        warnings.warn(
            f"shift estimates at eps=b/10 and b/20 differ by {abs(s1 - s2):.2e} "
            f"at t={t}; the ancient regime may not be reached yet"
        )
    return s1


def frame_limit_error(
    mu: Measure,
    c: float,
    t: float,
    window: WindowFn | None = None,
    eps: float | None = None,
    n_grid: int = 101,
) -> float:
    """Sup over |x| <= L(t) of |u(t, x + c*t) - predicted limit profile|."""
    if not t < 0:
        raise ValueError("requires an ancient time t < 0")
    window = window or WindowFn()
    span = window.L(t)
    xs = np.linspace(-span, span, n_grid)
    shifted = act_galilean(mu, -c)
    sol = EntireSolution(shifted)
    cls = classify_frame(mu, c)
    if cls.kind == "in_support":
        pred = np.zeros_like(xs)
    elif cls.kind == "constant":
        pred = np.full_like(xs, cls.shifted_value)
    else:
        b = cls.half_amp
        s = _tracked_shift(shifted, b, t, eps)
        pred = -b * np.tanh(b * (xs - s) / 2.0)
    vals = np.array([sol.value(t, x) for x in xs])
    return float(np.max(np.abs(vals - pred)))


def atom_probe(mu: Measure, t: float, x: float) -> float:
    """Self-similar probe sqrt|t| * u(t, x*sqrt|t|); vanishes on atoms at 0."""
    if not t < 0:
        raise ValueError("requires an ancient time t < 0")
    r = math.sqrt(abs(t))
    return r * EntireSolution(mu).value(t, x * r)


def ancient_report(
    mu: Measure,
    c: float,
    t_ladder: Sequence[float],
    window: WindowFn | None = None,
    eps: float | None = None,
) -> dict:
    """JSON-ready report: classification, errors per time, shift trace."""
    cls = classify_frame(mu, c)
    if cls.ambiguous:
        warnings.warn(
            f"gap nearly symmetric at c={c}; reporting candidate kinds {cls.candidates}"
        )
    errors = [
        {"t": t, "sup_err": frame_limit_error(mu, c, t, window=window, eps=eps)}
        for t in t_ladder
    ]
    trace = []
    if cls.kind == "shock":
        shifted = act_galilean(mu, -c)
        b = cls.half_amp
        use_eps = eps if eps is not None else b / 10.0
        trace = [
            {"t": t, "s": shift_fixed_point(shifted, use_eps, t)} for t in t_ladder
        ]
        value_or_pair = list(cls.pair)
    else:
        value_or_pair = cls.value
    return {
        "c": c,
        "kind": cls.kind,
        "value_or_pair": value_or_pair,
        "errors_by_t": errors,
        "s_eps_trace": trace,
    }
