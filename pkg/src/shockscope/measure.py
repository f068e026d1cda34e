"""Compactly supported positive measures and the Burgers symmetry actions.

A measure is a list of atoms plus a list of density pieces. Each piece is
a polynomial (monomial coefficients, ascending) times an exponential
weight exp(rate*z + quad*z^2) on an interval. That family is closed under
all four symmetry-group actions: space/time translations reweight the
exponential tag, Galilean boosts shift the support, parabolic scaling
dilates it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "Atom",
    "Piece",
    "Measure",
    "SupportGap",
    "support",
    "normalize",
    "support_gap",
    "restrict",
    "act_translate",
    "act_timeshift",
    "act_galilean",
    "act_scale",
    "measure_to_json",
    "measure_from_json",
]

# Slack allowed when checking density nonnegativity on sample points.
_NEG_TOL = -1e-12


@dataclass(frozen=True)
class Atom:
    z: float
    w: float


@dataclass(frozen=True)
class Piece:
    """Density poly(z) * exp(exp_rate*z + exp_quad*z^2) on [a, b]."""

    a: float
    b: float
    coeffs: tuple[float, ...]  # monomial coefficients, ascending degree
    exp_rate: float = 0.0
    exp_quad: float = 0.0

    def poly(self, z):
        return np.polynomial.polynomial.polyval(z, np.asarray(self.coeffs))

    def density(self, z):
        z = np.asarray(z, dtype=float)
        return self.poly(z) * np.exp(self.exp_rate * z + self.exp_quad * z * z)


def _check_piece(p: Piece) -> None:
    if not p.a < p.b:
        raise ValueError(f"piece interval invalid: [{p.a}, {p.b}]")
    if not p.coeffs or all(c == 0 for c in p.coeffs):
        raise ValueError("piece has identically zero density")
    # nonnegativity probed on a Chebyshev sample plus the endpoints
    k = np.arange(64)
    cheb = 0.5 * (p.a + p.b) + 0.5 * (p.b - p.a) * np.cos((2 * k + 1) * np.pi / 128)
    sample = np.concatenate([[p.a, p.b], cheb])
    vals = p.poly(sample)
    if vals.min() < _NEG_TOL * max(1.0, float(np.abs(vals).max())):
        raise ValueError(f"piece density negative on [{p.a}, {p.b}]")


@dataclass(frozen=True)
class Measure:
    """Finite positive measure: atoms plus polynomial-density pieces."""

    atoms: tuple[Atom, ...] = ()
    pieces: tuple[Piece, ...] = ()
    alpha: float = field(init=False, default=0.0)
    beta: float = field(init=False, default=0.0)

    def __post_init__(self):
        if not self.atoms and not self.pieces:
            raise ValueError("zero measure")
        for a in self.atoms:
            if not a.w > 0:
                raise ValueError(f"atom weight must be > 0, got {a.w}")
            if not math.isfinite(a.z):
                raise ValueError("atom location must be finite")
        for p in self.pieces:
            _check_piece(p)
        ivs = sorted((p.a, p.b) for p in self.pieces)
        for (a0, b0), (a1, b1) in zip(ivs, ivs[1:]):
            if a1 < b0 - 1e-15:
                raise ValueError("piece intervals overlap")
        lo = min([a.z for a in self.atoms] + [p.a for p in self.pieces])
        hi = max([a.z for a in self.atoms] + [p.b for p in self.pieces])
        object.__setattr__(self, "alpha", lo)
        object.__setattr__(self, "beta", hi)

    def total_mass(self) -> float:
        from .logreal import LogReal, log_sum
        from .quadrature import exp_poly_integral

        terms = [LogReal.from_real(a.w) for a in self.atoms]
        for p in self.pieces:
            terms.append(exp_poly_integral(p.poly, p.a, p.b, p.exp_rate, p.exp_quad))
        return log_sum(terms).to_real()

    def contains(self, c: float, tol: float = 1e-12) -> bool:
        """Whether c lies in the support."""
        for a in self.atoms:
            if abs(a.z - c) <= tol:
                return True
        for p in self.pieces:
            if p.a - tol <= c <= p.b + tol:
                return True
        return False


def lebesgue(a: float, b: float, scale: float = 1.0) -> Measure:
    """Uniform density `scale` on [a, b]."""
    return Measure(pieces=(Piece(a, b, (scale,)),))


def dirac(z: float, w: float = 1.0) -> Measure:
    return Measure(atoms=(Atom(z, w),))


def combine(*measures: Measure) -> Measure:
    atoms: list[Atom] = []
    pieces: list[Piece] = []
    for m in measures:
        atoms.extend(m.atoms)
        pieces.extend(m.pieces)
    return Measure(atoms=tuple(atoms), pieces=tuple(pieces))


def support(mu: Measure) -> tuple[float, float]:
    """Extreme points of the support."""
    return (mu.alpha, mu.beta)


def normalize(mu: Measure) -> Measure:
    """Rescale to total mass one; the Burgers evaluation is unaffected."""
    mass = mu.total_mass()
    if not mass > 0:
        raise ValueError("zero mass")
    s = 1.0 / mass
    atoms = tuple(Atom(a.z, a.w * s) for a in mu.atoms)
    pieces = tuple(
        Piece(p.a, p.b, tuple(c * s for c in p.coeffs), p.exp_rate, p.exp_quad)
        for p in mu.pieces
    )
    return Measure(atoms=atoms, pieces=pieces)


@dataclass(frozen=True)
class SupportGap:
    """Nearest support points on either side of a query speed."""

    m_minus: float  # -inf when no support below
    m_plus: float  # +inf when no support above
    degenerate: bool = False  # query speed itself lies in the support


def support_gap(mu: Measure, c: float) -> SupportGap:
    if mu.contains(c):
        return SupportGap(c, c, degenerate=True)
    below = [a.z for a in mu.atoms if a.z < c] + [p.b for p in mu.pieces if p.b < c]
    above = [a.z for a in mu.atoms if a.z > c] + [p.a for p in mu.pieces if p.a > c]
    m_minus = max(below) if below else -math.inf
    m_plus = min(above) if above else math.inf
    return SupportGap(m_minus, m_plus)


def restrict(mu: Measure, lo: float, hi: float) -> Measure:
    """Restriction to [lo, hi]; raises if nothing survives."""
    atoms = tuple(a for a in mu.atoms if lo <= a.z <= hi)
    pieces = []
    for p in mu.pieces:
        a, b = max(p.a, lo), min(p.b, hi)
        if a < b:
            pieces.append(Piece(a, b, p.coeffs, p.exp_rate, p.exp_quad))
    if not atoms and not pieces:
        raise ValueError(f"empty restriction to [{lo}, {hi}]")
    return Measure(atoms=atoms, pieces=tuple(pieces))


# ---------------------------------------------------------------------------
# Symmetry-group actions.  u(t,x) transforms as:
#   translate:  u(t, x-x0)            weight exp(z*x0/2)
#   timeshift:  u(t+t0, x)            weight exp(z^2*t0/4)
#   galilean:   u(t, x-c*t) + c       support shifted by c
#   scale:      lam*u(lam^2 t, lam x) support dilated by lam
# ---------------------------------------------------------------------------


def act_translate(mu: Measure, x0: float) -> Measure:
    atoms = tuple(Atom(a.z, a.w * math.exp(a.z * x0 / 2)) for a in mu.atoms)
    pieces = tuple(
        Piece(p.a, p.b, p.coeffs, p.exp_rate + x0 / 2, p.exp_quad) for p in mu.pieces
    )
    return Measure(atoms=atoms, pieces=pieces)


def act_timeshift(mu: Measure, t0: float) -> Measure:
    atoms = tuple(Atom(a.z, a.w * math.exp(a.z * a.z * t0 / 4)) for a in mu.atoms)
    pieces = tuple(
        Piece(p.a, p.b, p.coeffs, p.exp_rate, p.exp_quad + t0 / 4) for p in mu.pieces
    )
    return Measure(atoms=atoms, pieces=pieces)


def _shift_poly(coeffs: Sequence[float], c: float) -> tuple[float, ...]:
    """Coefficients of p(z - c) given those of p(z)."""
    p = np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))
    shifted = p(np.polynomial.Polynomial([-c, 1.0]))
    return tuple(float(v) for v in shifted.coef)


def act_galilean(mu: Measure, c: float) -> Measure:
    atoms = tuple(Atom(a.z + c, a.w) for a in mu.atoms)
    pieces = []
    for p in mu.pieces:
        # density becomes f(z-c); the constant part of the exponent folds
        # into the polynomial coefficients
        const = p.exp_quad * c * c - p.exp_rate * c
        coeffs = tuple(v * math.exp(const) for v in _shift_poly(p.coeffs, c))
        pieces.append(
            Piece(p.a + c, p.b + c, coeffs, p.exp_rate - 2 * p.exp_quad * c, p.exp_quad)
        )
    return Measure(atoms=atoms, pieces=tuple(pieces))


def act_scale(mu: Measure, lam: float) -> Measure:
    if not lam > 0:
        raise ValueError(f"scale factor must be > 0, got {lam}")
    atoms = tuple(Atom(a.z * lam, a.w) for a in mu.atoms)
    pieces = []
    for p in mu.pieces:
        coeffs = tuple(c / lam ** (k + 1) for k, c in enumerate(p.coeffs))
        pieces.append(
            Piece(p.a * lam, p.b * lam, coeffs, p.exp_rate / lam, p.exp_quad / lam**2)
        )
    return Measure(atoms=atoms, pieces=tuple(pieces))


# ---------------------------------------------------------------------------
# JSON serialization: {atoms:[{z,w}], pieces:[{a,b,coeffs,exp_rate,exp_quad}]}
# ---------------------------------------------------------------------------


def measure_to_json(mu: Measure) -> str:
    obj = {
        "atoms": [{"z": a.z, "w": a.w} for a in mu.atoms],
        "pieces": [
            {
                "a": p.a,
                "b": p.b,
                "coeffs": list(p.coeffs),
                "exp_rate": p.exp_rate,
                "exp_quad": p.exp_quad,
            }
            for p in mu.pieces
        ],
    }
    return json.dumps(obj, sort_keys=True)


def measure_from_json(text: str) -> Measure:
    obj = json.loads(text)
    atoms = tuple(Atom(float(a["z"]), float(a["w"])) for a in obj.get("atoms", []))
    pieces = tuple(
        Piece(
            float(p["a"]),
            float(p["b"]),
            tuple(float(c) for c in p["coeffs"]),
            float(p.get("exp_rate", 0.0)),
            float(p.get("exp_quad", 0.0)),
        )
        for p in obj.get("pieces", [])
    )
    return Measure(atoms=atoms, pieces=pieces)
