"""Convex flux descriptors, Rankine-Hugoniot data, and viscous shock profiles.

Fluxes are either the quadratic Burgers flux or polynomials given by
coefficient lists, which keeps the serialization format closed under the
derivatives the solvers need. Profiles solve the first-order traveling
wave ODE from the midpoint outward; the heteroclinic endpoints are
attracting in the direction of integration, so both legs are stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import BPoly

__all__ = [
    "Flux",
    "burgers_flux",
    "poly_flux",
    "rankine_hugoniot",
    "ShockProfile",
    "shock_profile",
    "convexity_constant",
    "oleinik_bound",
    "flux_to_json",
    "flux_from_json",
]


@dataclass(frozen=True)
class Flux:
    kind: str  # "burgers" or "poly"
    coeffs: tuple[float, ...] = ()  # ascending, used when kind == "poly"

    def f(self, u):
        if self.kind == "burgers":
            return np.asarray(u) ** 2 / 2.0 if np.ndim(u) else u * u / 2.0
        return np.polynomial.polynomial.polyval(u, np.asarray(self.coeffs))

    def df(self, u):
        if self.kind == "burgers":
            return np.asarray(u) if np.ndim(u) else u
        d = np.polynomial.polynomial.polyder(np.asarray(self.coeffs))
        return np.polynomial.polynomial.polyval(u, d)

    def d2f(self, u):
        if self.kind == "burgers":
            return np.ones_like(np.asarray(u, dtype=float)) if np.ndim(u) else 1.0
        d2 = np.polynomial.polynomial.polyder(np.asarray(self.coeffs), 2)
        return np.polynomial.polynomial.polyval(u, d2)


def burgers_flux() -> Flux:
    return Flux("burgers")


def poly_flux(coeffs) -> Flux:
    return Flux("poly", tuple(float(c) for c in coeffs))


def convexity_constant(flux: Flux, lo: float, hi: float, n: int = 256) -> float:
    """Minimum of f'' over [lo, hi], probed on n points plus endpoints."""
    u = np.linspace(lo, hi, n)
    return float(np.min(flux.d2f(u)))


def rankine_hugoniot(flux: Flux, alpha: float, beta: float) -> tuple[float, float]:
    """Speed c and profile constant d for the shock joining beta to alpha."""
    if not alpha < beta:
        raise ValueError(f"need alpha < beta, got {alpha}, {beta}")
    c = (flux.f(beta) - flux.f(alpha)) / (beta - alpha)
    d = flux.f(beta) - c * beta
    d_alt = flux.f(alpha) - c * alpha
    if abs(d - d_alt) > 1e-12 * max(1.0, abs(d)):
        raise ArithmeticError(f"Rankine-Hugoniot identity violated: {d} vs {d_alt}")
    return float(c), float(d)


@dataclass(frozen=True)
class ShockProfile:
    """Strictly decreasing traveling-wave profile with midpoint at y=0."""

    alpha: float
    beta: float
    c: float
    d: float
    flux: Flux
    _interp: Callable
    y_min: float
    y_max: float

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        out = np.empty_like(y)
        inside = (y >= self.y_min) & (y <= self.y_max)
        out[inside] = self._interp(y[inside])
        out[y < self.y_min] = self.beta
        out[y > self.y_max] = self.alpha
        return out if out.ndim else float(out)

    def rhs(self, u):
        """Profile ODE right-hand side f(u) - c*u - d."""
        return self.flux.f(u) - self.c * u - self.d

    def lax_condition(self) -> bool:
        return self.flux.df(self.beta) > self.c > self.flux.df(self.alpha)


def shock_profile(flux: Flux, alpha: float, beta: float) -> ShockProfile:
    """Integrate the profile ODE from the midpoint in both directions.

    Tabulation stops once the profile is within 1e-14 of its limit
    (capped at |y| = 200/rate); a two-derivative piecewise quintic then
    interpolates with enough accuracy to keep the ODE residual of the
    evaluator below 1e-9.
    """
    if alpha == beta:
        raise ValueError("degenerate profile: alpha == beta")
    c, d = rankine_hugoniot(flux, alpha, beta)

    def g(u):
        return flux.f(u) - c * u - d

    def dg(u):
        return flux.df(u) - c

    rate_r = max(c - flux.df(alpha), 1e-12)  # decay toward alpha as y -> +inf
    rate_l = max(flux.df(beta) - c, 1e-12)  # decay toward beta as y -> -inf
    mid = 0.5 * (alpha + beta)
    # node spacing keeps the quintic interpolant's derivative error < 1e-9
    max_step = min(0.03, 0.06 / max(rate_r, rate_l, 1.0))

    def leg(direction: int, rate: float, limit: float):
        span = min((36.0 + abs(math.log1p(beta - alpha))) / rate, 200.0 / rate)
        thresh = 1e-14

        def rhs(y, u):
            return [g(u[0])]

        def event(y, u):
            return abs(u[0] - limit) - thresh

        event.terminal = True
        sol = solve_ivp(
            rhs,
            (0.0, direction * span),
            [mid],
            method="DOP853",
            rtol=1e-12,
            atol=1e-14,
            max_step=max_step,
            events=event,
            dense_output=False,
        )
        return sol.t, sol.y[0]

    ty_r, uy_r = leg(+1, rate_r, alpha)
    ty_l, uy_l = leg(-1, rate_l, beta)
    ys = np.concatenate([ty_l[::-1][:-1], ty_r])
    us = np.concatenate([uy_l[::-1][:-1], uy_r])
    du = g(us)
    d2u = dg(us) * du
    interp = BPoly.from_derivatives(ys, np.stack([us, du, d2u], axis=1))
    return ShockProfile(
        alpha=float(alpha),
        beta=float(beta),
        c=c,
        d=d,
        flux=flux,
        _interp=interp,
        y_min=float(ys[0]),
        y_max=float(ys[-1]),
    )


def oleinik_bound(flux: Flux, alpha: float, beta: float, t: float) -> float:
    """Universal one-sided slope bound 1/(k*t), k = min of f'' on [alpha,beta]."""
    if not t > 0:
        raise ValueError(f"requires t > 0, got {t}")
    k = convexity_constant(flux, alpha, beta)
    if not k > 0:
        raise ValueError("degenerate convexity: min f'' <= 0 on the range")
    return 1.0 / (k * t)


def flux_to_json(flux: Flux) -> str:
    if flux.kind == "burgers":
        return json.dumps({"kind": "burgers"})
    return json.dumps({"kind": "poly", "coeffs": list(flux.coeffs)}, sort_keys=True)


def flux_from_json(text: str) -> Flux:
    obj = json.loads(text)
    if obj["kind"] == "burgers":
        return burgers_flux()
    if obj["kind"] == "poly":
        return poly_flux(obj["coeffs"])
    raise ValueError(f"unknown flux kind: {obj['kind']}")
