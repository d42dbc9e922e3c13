from fractions import Fraction as F

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mrspectra.closedform import QuantumNumbers
from mrspectra.errors import DomainError
from mrspectra.potentials import CentrifugalScheme, PotentialParams
from mrspectra.wavefn import (count_nodes, gauss_2f1_terminating, integrate, normalize, overlap,
                              pochhammer, radial_wavefunction)

S = CentrifugalScheme
T1 = PotentialParams(80.0, 0.75, 40.0)


def test_pochhammer():
    assert pochhammer(2.7, 0) == 1
    assert pochhammer(3, 2) == 12
    assert pochhammer(0.5, 3) == pytest.approx(1.875, rel=1e-15)
    assert pochhammer(F(1, 2), 3) == F(15, 8)
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


def test_gauss_small_cases():
    assert gauss_2f1_terminating(0, 3.3, 1.1, 0.7) == 1
    assert gauss_2f1_terminating(1, 2, 4, 0.5) == pytest.approx(0.75, rel=1e-15)
    # exact sum of the three terms: 1 - 3 + 3*4/(2*3) * 2/2 ... evaluated with rationals
    assert gauss_2f1_terminating(2, F(3), F(2), F(1)) == F(1) + F(-2 * 3, 2) + F(2 * 1 * 3 * 4, 2 * 3 * 2)
    with pytest.raises(DomainError):
        gauss_2f1_terminating(3, 1.0, -1.0, 0.5)
    assert gauss_2f1_terminating(1, 1.0, -1.0, 0.5) == pytest.approx(1.5)


@settings(max_examples=300, deadline=None)
@given(n=st.integers(0, 10), bp=st.fractions(-20, 20, max_denominator=16),
       c=st.fractions(F(1, 4), 30, max_denominator=16), z=st.fractions(-4, 4, max_denominator=64))
def test_gauss_matches_exact_and_mpmath(n, bp, c, z):
    exact = gauss_2f1_terminating(n, bp, c, z)
    approx = gauss_2f1_terminating(n, float(bp), float(c), float(z))
    scale = sum(abs(float(pochhammer(F(-n), j) * pochhammer(bp, j) / (pochhammer(c, j) * pochhammer(F(1), j))
                          * z ** j)) for j in range(n + 1))
    assert approx == pytest.approx(float(exact), abs=4e-16 * (n + 1) * scale)
    with mpmath.workdps(50):
        ref = mpmath.hyp2f1(-n, mpmath.mpf(bp.numerator) / bp.denominator,
                            mpmath.mpf(c.numerator) / c.denominator, mpmath.mpf(z.numerator) / z.denominator)
        assert abs(ref - mpmath.mpf(exact.numerator) / exact.denominator) <= mpmath.mpf(10) ** -40 * (1 + abs(ref))


def test_gauss_vectorized():
    z = np.linspace(0, 1, 7)
    out = gauss_2f1_terminating(3, 2.5, 1.5, z)
    assert out.shape == z.shape
    assert out[0] == 1.0


def test_boundary_behaviour():
    wf = radial_wavefunction(QuantumNumbers(0, 1), T1, S.APPROX1)
    peak = np.max(np.abs(wf(np.geomspace(0.01, 400, 2000))))
    assert abs(wf(1e-4)) < 1e-6 * peak
    assert abs(wf(3000.0)) < 1e-100 * peak
    assert wf.energy == pytest.approx(-0.120527265, abs=5e-9)


def test_hypergeometric_form_is_proportional():
    wf = radial_wavefunction(QuantumNumbers(2, 1), T1, S.APPROX2)
    r = np.geomspace(0.5, 500, 40)
    ratio = wf.hypergeometric_form(r) / wf(r)
    assert np.allclose(ratio, ratio[0], rtol=1e-9)
    assert wf.gamma < 0 and wf.beta < 0 and wf.kappa > 0


def test_unbound_state_raises():
    past = PotentialParams.from_screening(0.075, 0.75)
    with pytest.raises(DomainError):
        radial_wavefunction(QuantumNumbers(4, 1), past, S.APPROX3)


def test_nodes_of_first_states():
    assert count_nodes(radial_wavefunction(QuantumNumbers(0, 1), T1, S.APPROX1)) == 0
    assert count_nodes(radial_wavefunction(QuantumNumbers(1, 1), T1, S.APPROX1)) == 1


def test_normalization_properties():
    wf = normalize(radial_wavefunction(QuantumNumbers(1, 2), T1, S.APPROX1))
    assert integrate(lambda r: wf(r) ** 2, wf.b, wf.r_max) == pytest.approx(1.0, abs=1e-10)
    finer = normalize(radial_wavefunction(QuantumNumbers(1, 2), T1, S.APPROX1), points=32)
    assert finer.norm == pytest.approx(wf.norm, rel=1e-9)
    scaled = normalize(radial_wavefunction(QuantumNumbers(1, 2), T1, S.APPROX1).scaled(7.0))
    r = np.geomspace(0.1, 800, 50)
    assert np.allclose(scaled(r), wf(r), rtol=1e-12, atol=1e-300)
    with pytest.raises(DomainError):
        normalize(radial_wavefunction(QuantumNumbers(0, 1), T1, S.APPROX1), r_max=2.0)


def test_derivatives_against_finite_differences():
    wf = radial_wavefunction(QuantumNumbers(2, 1), T1, S.APPROX3)
    for r in (3.0, 40.0, 150.0):
        h = 1e-3 * r
        fd1 = (wf(r + h) - wf(r - h)) / (2 * h)
        fd2 = (wf(r + h) - 2 * wf(r) + wf(r - h)) / h ** 2
        assert wf.derivative(r) == pytest.approx(fd1, rel=1e-5)
        assert wf.derivative(r, 2) == pytest.approx(fd2, rel=1e-4)


def test_residual_and_orthogonality():
    wfs = [normalize(radial_wavefunction(QuantumNumbers(n, 1), T1, S.APPROX2)) for n in range(3)]
    r = np.geomspace(1e-3, wfs[0].r_max, 2000)
    for wf in wfs:
        res = wf.residual(r)
        assert np.sqrt(np.mean(res ** 2)) / np.max(np.abs(wf.derivative(r, 2))) < 1e-8
    assert abs(overlap(wfs[0], wfs[1])) < 1e-6
    assert abs(overlap(wfs[0], wfs[2])) < 1e-6
    assert abs(overlap(wfs[1], wfs[2])) < 1e-6
