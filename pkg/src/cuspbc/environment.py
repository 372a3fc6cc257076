"""Electrostatic environment around a coalescence point.

The two coalescing particles sit at mass-weighted offsets along the
separation axis: particle 1 at +f1*r*n and particle 2 at -f2*r*n with
f1 = m2/(m1+m2), f2 = m1/(m1+m2), so that their centre of mass stays at
the coalescence point.  The spectator charges (the rest of the system,
frozen at their mean positions) produce the potential W(r) whose r -> 0
value W0 enters the second-order cusp coefficient.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .cusp import CoalescencePair
from .errors import DomainError, SingularityError
from .special import legendre_p


@dataclass(frozen=True)
class PointCharge:
    q: float
    position: tuple[float, float, float]

    def __post_init__(self):
        pos = tuple(float(x) for x in self.position)
        object.__setattr__(self, "position", pos)
        if len(pos) != 3 or not all(math.isfinite(x) for x in pos):
            raise DomainError("position must be a finite 3-vector")
        if not math.isfinite(self.q):
            raise DomainError("charge must be finite")

    @property
    def radius(self) -> float:
        return math.hypot(*self.position)


@dataclass(frozen=True)
class Environment:
    """Spectator point charges, positions relative to the coalescence point."""

    charges: tuple

    def __post_init__(self):
        object.__setattr__(self, "charges", tuple(self.charges))
        for c in self.charges:
            if c.radius == 0.0:
                raise SingularityError(
                    "spectator charge sits at the coalescence point"
                )

    @property
    def min_radius(self) -> float:
        return min(c.radius for c in self.charges) if self.charges else math.inf

    def to_json(self) -> str:
        return json.dumps(
            {"charges": [{"q": c.q, "position": list(c.position)} for c in self.charges]},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "Environment":
        data = json.loads(text)
        return cls(tuple(PointCharge(d["q"], tuple(d["position"]))
                         for d in data["charges"]))


def _mass_fractions(pair: CoalescencePair) -> tuple[float, float]:
    if math.isinf(pair.m2):
        return 1.0, 0.0
    if math.isinf(pair.m1):
        return 0.0, 1.0
    tot = pair.m1 + pair.m2
    return pair.m2 / tot, pair.m1 / tot


def _direction(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def w0(env: Environment, pair: CoalescencePair) -> float:
    """W0 = (q1 + q2) sum_i q_i / r_i, the r -> 0 environment potential."""
    return (pair.q1 + pair.q2) * math.fsum(c.q / c.radius for c in env.charges)


def w_exact(env: Environment, pair: CoalescencePair,
            r: float, theta: float, phi: float) -> float:
    """Exact spectator potential energy for pair separation r along
    direction (theta, phi)."""
    if r < 0.0:
        raise DomainError("r must be non-negative")
    f1, f2 = _mass_fractions(pair)
    n = _direction(theta, phi)
    p1 = f1 * r * n
    p2 = -f2 * r * n
    terms = []
    for c in env.charges:
        pos = np.asarray(c.position)
        d1 = np.linalg.norm(pos - p1)
        d2 = np.linalg.norm(pos - p2)
        if d1 == 0.0 or d2 == 0.0:
            raise SingularityError("pair particle coincides with a spectator charge")
        terms.append(c.q * pair.q1 / d1)
        terms.append(c.q * pair.q2 / d2)
    return math.fsum(terms)


def multipole_term(env: Environment, pair: CoalescencePair, lam: int,
                   r: float, theta: float, phi: float) -> float:
    """Order-lambda term of the interior multipole expansion of w_exact.

    The angular factor is P_lam(cos gamma_i) with gamma_i the angle between
    the separation axis and the i-th spectator position.  For identical
    particles the odd-lambda coefficient cancels exactly (x + (-x) = 0 in
    floating point), not merely to rounding.
    """
    if lam < 0:
        raise DomainError("lambda must be non-negative")
    f1, f2 = _mass_fractions(pair)
    coeff = pair.q1 * f1 ** lam + (-1.0) ** lam * pair.q2 * f2 ** lam
    if coeff == 0.0:
        return 0.0
    n = _direction(theta, phi)
    s = math.fsum(
        c.q * legendre_p(lam, float(np.dot(n, c.position)) / c.radius)
        / c.radius ** (lam + 1)
        for c in env.charges
    )
    return coeff * r ** lam * s


def w_multipole(env: Environment, pair: CoalescencePair,
                r: float, theta: float, phi: float, lam_max: int) -> float:
    """Interior multipole expansion of w_exact, valid for r below the
    nearest spectator radius (geometric convergence in r/min_radius)."""
    if r >= env.min_radius:
        raise DomainError(
            f"multipole expansion requires r < {env.min_radius} (nearest charge)"
        )
    return math.fsum(multipole_term(env, pair, lam, r, theta, phi)
                     for lam in range(lam_max + 1))


def spherical_average_w(env: Environment, pair: CoalescencePair, r: float,
                        n_theta: int = 64, n_phi: int = 128) -> float:
    """Average of w_exact over directions, Gauss-Legendre in cos(theta) and
    a uniform grid in phi.  Inside the nearest spectator radius only the
    monopole survives, so this reproduces w0 independent of r.

    The reduction uses compensated summation over a fixed ordering, so
    repeated calls are bit-identical."""
    nodes, weights = np.polynomial.legendre.leggauss(n_theta)
    phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
    st = np.sqrt(1.0 - nodes ** 2)
    dirs = np.stack([
        np.outer(st, np.cos(phis)).ravel(),
        np.outer(st, np.sin(phis)).ravel(),
        np.outer(nodes, np.ones(n_phi)).ravel(),
    ], axis=1)
    wgt = np.repeat(weights, n_phi)
    f1, f2 = _mass_fractions(pair)
    pos = np.array([c.position for c in env.charges])
    qs = np.array([c.q for c in env.charges])
    d1 = np.linalg.norm(pos[None, :, :] - f1 * r * dirs[:, None, :], axis=2)
    d2 = np.linalg.norm(pos[None, :, :] + f2 * r * dirs[:, None, :], axis=2)
    if np.any(d1 == 0.0) or np.any(d2 == 0.0):
        raise SingularityError("quadrature node hits a spectator charge")
    vals = wgt[:, None] * (qs * pair.q1 / d1 + qs * pair.q2 / d2)
    return math.fsum(vals.ravel().tolist()) / (2.0 * n_phi)
