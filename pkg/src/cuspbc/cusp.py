"""Cusp coefficients, recurrence-generated expansion series, the local
Kummer wave function, and numerical cusp-limit estimators.

Atomic units throughout (hbar = e = m_e = 4 pi eps0 = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, FitError, ParityError, RegimeError
from .gridfn import RadialFunction
from .special import DEFAULT_DOMAIN, EvalDomain, kummer_1f1, spherical_harmonic

INFINITE_MASS = math.inf
PROTON_ELECTRON_MASS_RATIO = 1836.152673
NEUTRON_ELECTRON_MASS_RATIO = 1838.683662

SINGLET = "singlet"
TRIPLET = "triplet"


@dataclass(frozen=True)
class CoalescencePair:
    """Charges and masses of the two coalescing particles.

    Masses in electron-mass units; math.inf is the fixed-nucleus sentinel.
    spin_channel restricts the allowed angular momenta when both particles
    are electrons: even ell for singlet, odd for triplet.
    """

    q1: float
    q2: float
    m1: float = 1.0
    m2: float = 1.0
    spin_channel: str | None = None

    def __post_init__(self):
        for m in (self.m1, self.m2):
            if not (m > 0.0):
                raise DomainError("masses must be positive (or math.inf)")
        if math.isinf(self.m1) and math.isinf(self.m2):
            raise DomainError("at most one mass may be infinite")
        if self.spin_channel not in (None, SINGLET, TRIPLET):
            raise DomainError("spin_channel must be 'singlet', 'triplet' or None")

    @property
    def reduced_mass(self) -> float:
        if math.isinf(self.m1):
            return self.m2
        if math.isinf(self.m2):
            return self.m1
        return self.m1 * self.m2 / (self.m1 + self.m2)

    @property
    def alpha(self) -> float:
        """alpha = M q1 q2, the strength of the pair's Coulomb singularity."""
        return self.reduced_mass * self.q1 * self.q2

    @property
    def identical(self) -> bool:
        return self.q1 == self.q2 and self.m1 == self.m2

    def check_ell(self, ell: int) -> None:
        if ell < 0:
            raise DomainError("ell must be non-negative")
        if self.spin_channel == SINGLET and ell % 2 == 1:
            raise ParityError(f"singlet channel forbids odd ell = {ell}")
        if self.spin_channel == TRIPLET and ell % 2 == 0:
            raise ParityError(f"triplet channel forbids even ell = {ell}")

    @classmethod
    def electron_nucleus(cls, z: float, a_mass: float | None = None) -> "CoalescencePair":
        """Electron coalescing with a nucleus of charge z.

        a_mass is the mass number A; None means the fixed-nucleus limit
        (infinite nuclear mass, M = 1 exactly).
        """
        if a_mass is None:
            m_nuc = INFINITE_MASS
        else:
            m_nuc = z * PROTON_ELECTRON_MASS_RATIO \
                + (a_mass - z) * NEUTRON_ELECTRON_MASS_RATIO
        return cls(q1=-1.0, q2=z, m1=1.0, m2=m_nuc)

    @classmethod
    def electron_electron(cls, spin_channel: str) -> "CoalescencePair":
        return cls(q1=-1.0, q2=-1.0, m1=1.0, m2=1.0, spin_channel=spin_channel)


@dataclass(frozen=True)
class CuspSeries:
    """Expansion coefficients a_0 ... a_K of the reduced radial function u(r)."""

    ell: int
    alpha: float
    beta_sq: float
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if self.coeffs[0] == 0.0:
            raise DomainError("u(0) must be non-zero (regular Fuchs solution)")

    @property
    def a(self) -> float:
        return self.coeffs[1] / self.coeffs[0]

    @property
    def b(self) -> float:
        return self.coeffs[2] / self.coeffs[0]

    def evaluate(self, r):
        """Truncated power series sum at r (scalar or array)."""
        out = np.zeros_like(np.asarray(r, dtype=float))
        for c in reversed(self.coeffs):
            out = out * r + c
        return out


@dataclass(frozen=True)
class LocalWavefunction:
    """Parameters of the local Kummer wave function near a coalescence point."""

    ell: int
    m: int
    u0: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.ell < 0 or abs(self.m) > self.ell:
            raise DomainError("need ell >= 0 and |m| <= ell")
        if not (self.beta > 0.0):
            raise RegimeError(
                "local bound-state form requires beta > 0, i.e. E < W0"
            )

    @property
    def kummer_a(self) -> float:
        return self.ell + 1 + self.alpha / self.beta

    @property
    def kummer_b(self) -> float:
        return 2 * self.ell + 2

    @classmethod
    def from_pair(cls, pair: CoalescencePair, ell: int, m: int,
                  w0: float, e: float, u0: float = 1.0) -> "LocalWavefunction":
        pair.check_ell(ell)
        beta_sq = 2.0 * pair.reduced_mass * (w0 - e)
        if beta_sq <= 0.0:
            raise RegimeError(f"E = {e} is not below W0 = {w0}")
        return cls(ell=ell, m=m, u0=u0, alpha=pair.alpha, beta=math.sqrt(beta_sq))


def cusp_a(pair: CoalescencePair, ell: int) -> float:
    """First-order cusp coefficient a = M q1 q2 / (ell + 1)."""
    pair.check_ell(ell)
    return pair.alpha / (ell + 1)


def cusp_b(pair: CoalescencePair, ell: int, w0: float, e: float) -> float:
    """Second-order (curvature) coefficient
    b = [(ell+1) a^2 + M (W0 - E)] / (2 ell + 3)."""
    a = cusp_a(pair, ell)
    m_red = pair.reduced_mass
    return ((ell + 1) * a * a + m_red * (w0 - e)) / (2 * ell + 3)


def cusp_series(pair: CoalescencePair, ell: int, w0: float, e: float,
                order: int) -> CuspSeries:
    """Generate a_0 ... a_order from the recurrence

        a_1 = alpha/(ell+1) a_0,
        a_{k+1} = (2 alpha a_k + beta^2 a_{k-1}) / ((2 ell + 2 + k)(k + 1)).
    """
    if order < 2:
        raise DomainError("series order must be at least 2")
    pair.check_ell(ell)
    alpha = pair.alpha
    beta_sq = 2.0 * pair.reduced_mass * (w0 - e)
    coeffs = [1.0, alpha / (ell + 1)]
    for k in range(1, order):
        coeffs.append((2.0 * alpha * coeffs[k] + beta_sq * coeffs[k - 1])
                      / ((2 * ell + 2 + k) * (k + 1)))
    return CuspSeries(ell=ell, alpha=alpha, beta_sq=beta_sq, coeffs=tuple(coeffs))


def local_u(lw: LocalWavefunction, r, dom: EvalDomain = DEFAULT_DOMAIN):
    """Reduced local wave function
    u(r) = u0 e^{-beta r} 1F1(ell+1+alpha/beta; 2 ell+2; 2 beta r)."""
    rs = np.asarray(r, dtype=float)
    if np.any(rs < 0.0):
        raise DomainError("r must be non-negative")
    flat = np.atleast_1d(rs)
    out = np.empty_like(flat)
    for i, ri in enumerate(flat):
        out[i] = lw.u0 * math.exp(-lw.beta * ri) \
            * kummer_1f1(lw.kummer_a, lw.kummer_b, 2.0 * lw.beta * ri, dom)
    return out.reshape(rs.shape) if rs.shape else float(out[0])


def local_psi(lw: LocalWavefunction, r, theta: float, phi: float,
              dom: EvalDomain = DEFAULT_DOMAIN):
    """psi = r^ell u(r) Y_lm(theta, phi) (complex)."""
    u = local_u(lw, r, dom)
    y = spherical_harmonic(lw.ell, lw.m, theta, phi)
    return np.asarray(r, dtype=float) ** lw.ell * u * y


def validity_radius(pair: CoalescencePair, w0: float) -> float:
    """Radius beyond which the local bound form is non-physical
    (q1 q2 / r + W0 >= 0).  math.inf means valid at all radii; 0 means the
    near-origin potential is non-negative and the bound form never applies.
    """
    prod = pair.q1 * pair.q2
    if prod < 0.0:
        if w0 > 0.0:
            return -prod / w0
        return INFINITE_MASS  # math.inf: attractive everywhere
    if prod == 0.0:
        return INFINITE_MASS if w0 < 0.0 else 0.0
    # repulsive pair: the potential is positive near the origin
    return 0.0


DEFAULT_FIT_POINTS = 14


def _fit_inner_coeffs(grid: np.ndarray, values: np.ndarray, ell: int,
                      n_points: int = DEFAULT_FIT_POINTS) -> np.ndarray:
    """Least-squares fit of a degree-(ell+4) polynomial to the innermost
    grid points, returned as coefficients in r (c_0 ... c_{ell+4}).

    The fit variable is scaled to the window size; repeated numerical
    l'Hospital by finite differences would be catastrophically
    ill-conditioned, coefficient ratios of this fit are the stable
    equivalent.  Degree ell+4 keeps the r^{ell+4} curvature term out of
    the c_{ell+2} estimate the second-order limit relies on.
    """
    deg = ell + 4
    n = max(deg + 2, min(n_points, len(grid)))
    if len(grid) < deg + 2:
        raise FitError(
            f"need at least {deg + 2} grid points for an ell = {ell} cusp fit"
        )
    r = np.asarray(grid[:n], dtype=float)
    v = np.asarray(values[:n])
    scale = np.max(np.abs(r))
    if scale == 0.0:
        raise FitError("degenerate fit window")
    t = r / scale
    vand = np.vander(t, deg + 1, increasing=True)
    c_t, *_ = np.linalg.lstsq(vand, v, rcond=None)
    return c_t / scale ** np.arange(deg + 1)


def _checked_ratio(coeffs: np.ndarray, ell: int, shift: int) -> float:
    c_ell = coeffs[ell]
    top = np.max(np.abs(coeffs))
    if abs(c_ell) <= 1e-9 * top:
        raise FitError(
            f"leading coefficient c_{ell} vanishes; wrong ell supplied?"
        )
    return float(np.real(coeffs[ell + shift] / c_ell))


def cusp_limit_first(f: RadialFunction, ell: int | None = None,
                     n_points: int = DEFAULT_FIT_POINTS) -> float:
    """Estimate lim_{r->0} d_r^{ell+1} Psi / d_r^ell Psi = (ell+1) u'(0)/u(0)
    from inner samples of the full radial function."""
    if ell is None:
        ell = f.ell
    g = f.as_full() if f.meaning == "u" else f
    coeffs = _fit_inner_coeffs(g.grid, g.values, ell, n_points)
    return (ell + 1) * _checked_ratio(coeffs, ell, 1)


def cusp_limit_second(f: RadialFunction, ell: int | None = None,
                      n_points: int = DEFAULT_FIT_POINTS) -> float:
    """Estimate lim_{r->0} d_r^{ell+2} Psi / d_r^ell Psi = (ell+1)(ell+2) b."""
    if ell is None:
        ell = f.ell
    g = f.as_full() if f.meaning == "u" else f
    coeffs = _fit_inner_coeffs(g.grid, g.values, ell, n_points)
    return (ell + 1) * (ell + 2) * _checked_ratio(coeffs, ell, 2)


@dataclass(frozen=True)
class AngularRadialFunction:
    """An s-type (ell = 0) function of (r, theta, phi) with the radial grid
    on which cusp limits are to be estimated."""

    fn: Callable[[np.ndarray, float, float], np.ndarray]
    grid: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "grid", np.asarray(self.grid, dtype=float))


def kato_average_check(f: AngularRadialFunction,
                       direction: tuple[float, float] = (1.0, 0.5),
                       n_theta: int = 32, n_phi: int = 64) -> tuple[float, float]:
    """Radial log-derivative limit along a fixed direction, and the same
    limit for the spherical average of f (Gauss-Legendre x trapezoid).

    For functions whose anisotropy enters first at O(r^3) the two agree;
    a linear anisotropic term makes them differ.
    """
    theta0, phi0 = direction
    r = f.grid
    directional = cusp_limit_first(
        RadialFunction(r, np.real(f.fn(r, theta0, phi0)), 0, "R"), 0)

    nodes, weights = np.polynomial.legendre.leggauss(n_theta)
    thetas = np.arccos(nodes)
    phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
    avg = np.zeros_like(r)
    for th, w in zip(thetas, weights):
        for ph in phis:
            avg += w * np.real(f.fn(r, th, ph))
    avg /= 2.0 * n_phi
    averaged = cusp_limit_first(RadialFunction(r, avg, 0, "R"), 0)
    return directional, averaged
