import math
from pathlib import Path

import numpy as np
import pytest

from cuspbc.errors import DomainError
from cuspbc.hfr import HFROrbital

SAMPLE = Path(__file__).resolve().parents[1] / "data" / "hydrogen_1s.hfr"

# Koga et al. He 1s Hartree-Fock orbital (n, zeta, c)
HE_TERMS = (
    (2, 6.438865513242302, 0.0008103),
    (1, 3.385077039750975, 0.0798826),
    (1, 2.178370004614139, 0.180161),
    (1, 1.4553870053179185, 0.7407925),
    (2, 1.3552466748849417, 0.0272015),
)
HE_ORBITAL_ENERGY = -0.9179556


def test_parse_sample_file():
    orb = HFROrbital.from_file(SAMPLE)
    assert orb.terms == ((1, 1.0, 1.0),)
    r = np.linspace(0.0, 3.0, 7)
    assert np.allclose(orb.radial(r), 2.0 * np.exp(-r), rtol=1e-15)


def test_parse_errors():
    with pytest.raises(DomainError, match="line 2"):
        HFROrbital.from_text("1 1.0 1.0\n1 2.0\n")
    with pytest.raises(DomainError):
        HFROrbital.from_text("")
    with pytest.raises(DomainError):
        HFROrbital.from_text("0 1.0 1.0\n")
    with pytest.raises(DomainError):
        HFROrbital.from_text("1 -1.0 1.0\n")


def test_mean_inv_r_single_sto():
    # <1/r> of a normalized 1s Slater orbital with exponent zeta equals zeta
    for zeta in (1.0, 1.7, 3.2):
        orb = HFROrbital(((1, zeta, 1.0),))
        assert orb.norm_sq == pytest.approx(1.0, rel=1e-10)
        assert orb.mean_inv_r == pytest.approx(zeta, rel=1e-10)


def test_he_orbital_quadrature():
    orb = HFROrbital(HE_TERMS)
    assert orb.norm_sq == pytest.approx(1.0, rel=1e-6)
    # hydrogen-like scaling puts <1/r> in the vicinity of Z - 5/16
    assert orb.mean_inv_r == pytest.approx(1.6875, abs=0.01)
