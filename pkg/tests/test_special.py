import math

import mpmath
import numpy as np
import pytest

from cuspbc.errors import DomainError, NoConvergence, PoleError
from cuspbc.special import (DEFAULT_DOMAIN, EvalDomain, kummer_1f1,
                            kummer_series, legendre_p, pochhammer,
                            spherical_harmonic)


def test_pochhammer_values():
    assert pochhammer(3.7, 0) == 1.0
    assert pochhammer(1.0, 4) == 24.0
    assert pochhammer(-2.0, 4) == 0.0
    assert pochhammer(0.5, 3) == 0.5 * 1.5 * 2.5


def test_eval_domain_validation():
    with pytest.raises(DomainError):
        EvalDomain(max_terms=0)
    with pytest.raises(DomainError):
        EvalDomain(rel_tol=1.5)
    with pytest.raises(DomainError):
        EvalDomain(rel_tol=-1e-3)


def test_kummer_trivial_cases():
    assert kummer_1f1(2.3, 1.7, 0.0) == 1.0
    assert abs(kummer_1f1(1.0, 1.0, 1.0) - math.e) < 1e-15
    # (0)_k = 0 for k >= 1: the hydrogen 1s case a = ell+1+alpha/beta = 0
    for x in (0.3, 5.0, -12.0):
        assert kummer_1f1(0.0, 2.0, x) == 1.0


def test_kummer_pole_and_convergence_errors():
    with pytest.raises(PoleError):
        kummer_1f1(1.0, 0.0, 1.0)
    with pytest.raises(PoleError):
        kummer_1f1(1.0, -3.0, 1.0)
    with pytest.raises(NoConvergence):
        kummer_series(1.0, 1.0, 200.0, EvalDomain(max_terms=10))


def test_kummer_against_mpmath():
    # routed evaluation (Kummer transform for x < 0) against a 50-digit
    # reference over the full |x| <= 30 working range
    rng = np.random.default_rng(42)
    mpmath.mp.dps = 50
    for _ in range(300):
        a = rng.uniform(-4.0, 4.0)
        b = rng.uniform(0.3, 8.0)
        x = rng.uniform(-30.0, 30.0)
        ref = float(mpmath.hyp1f1(a, b, x))
        got = kummer_1f1(a, b, x)
        # negative-a draws hit the alternating terminating-like series near
        # its zeros, where a few-ulp cancellation inflates the relative error
        assert got == pytest.approx(ref, rel=5e-13, abs=1e-300)


def test_kummer_dual_path_small_x():
    # raw series and transformed series agree where both are
    # well-conditioned (|x| small); at large negative x the raw
    # alternating series loses ~e^{|x|} digits, which is why kummer_1f1
    # routes through the transformation in the first place
    rng = np.random.default_rng(7)
    tol = 10.0 * DEFAULT_DOMAIN.rel_tol
    for _ in range(100):
        a = rng.uniform(-3.0, 3.0)
        b = rng.uniform(0.5, 6.0)
        x = rng.uniform(-4.0, 0.0)
        raw = kummer_series(a, b, x)
        routed = kummer_1f1(a, b, x)
        assert abs(raw - routed) <= tol * max(abs(raw), abs(routed), 1e-30)


def test_legendre_values():
    assert legendre_p(0, 0.33) == 1.0
    assert legendre_p(1, 0.5) == 0.5
    assert legendre_p(2, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert legendre_p(2, 0.5) == pytest.approx(0.5 * (3 * 0.25 - 1), abs=1e-15)
    with pytest.raises(DomainError):
        legendre_p(2, 1.5)


def test_spherical_harmonic_basics():
    val = spherical_harmonic(0, 0, 0.3, 1.1)
    assert val == pytest.approx(1.0 / math.sqrt(4 * math.pi), abs=1e-15)
    assert abs(spherical_harmonic(1, 0, math.pi / 2, 0.0)) < 1e-16
    with pytest.raises(DomainError):
        spherical_harmonic(1, 2, 0.1, 0.1)


def test_spherical_harmonic_inversion_parity():
    rng = np.random.default_rng(3)
    for _ in range(20):
        l = int(rng.integers(0, 5))
        m = int(rng.integers(-l, l + 1))
        th, ph = rng.uniform(0.1, 3.0), rng.uniform(0.0, 6.0)
        direct = spherical_harmonic(l, m, th, ph)
        inverted = spherical_harmonic(l, m, math.pi - th, math.pi + ph)
        assert inverted == pytest.approx((-1) ** l * direct, abs=1e-12)


def test_addition_theorem():
    # (4 pi / (2 lam + 1)) sum_m Y_lm(w1) conj(Y_lm(w2)) == P_lam(cos gamma)
    rng = np.random.default_rng(11)
    for lam in range(7):
        th1, th2 = rng.uniform(0.1, 3.0, 2)
        ph1, ph2 = rng.uniform(0.0, 6.2, 2)
        n1 = np.array([math.sin(th1) * math.cos(ph1),
                       math.sin(th1) * math.sin(ph1), math.cos(th1)])
        n2 = np.array([math.sin(th2) * math.cos(ph2),
                       math.sin(th2) * math.sin(ph2), math.cos(th2)])
        s = sum(spherical_harmonic(lam, m, th1, ph1)
                * np.conj(spherical_harmonic(lam, m, th2, ph2))
                for m in range(-lam, lam + 1))
        lhs = 4 * math.pi / (2 * lam + 1) * s
        assert lhs.imag == pytest.approx(0.0, abs=1e-12)
        assert lhs.real == pytest.approx(legendre_p(lam, float(n1 @ n2)),
                                         abs=1e-12)
