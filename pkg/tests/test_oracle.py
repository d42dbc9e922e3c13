import math

import numpy as np
import pytest

from mrspectra.closedform import QuantumNumbers, energy_hulthen_swave, energy_swave
from mrspectra.errors import BracketError, ConfigError, DomainError, SearchError
from mrspectra.oracle import (RadialGrid, manning_rosen_level, numerov_sweep, shoot_eigenvalue)
from mrspectra.potentials import ATOMIC, CentrifugalScheme, PotentialParams, effective_potential

S = CentrifugalScheme
T1 = PotentialParams(80.0, 0.75, 40.0)


def test_grid_validation():
    with pytest.raises(ConfigError):
        RadialGrid(1.0, 0.5)
    with pytest.raises(ConfigError):
        RadialGrid(0.1, 1.0, count=50)
    with pytest.raises(ConfigError):
        RadialGrid(0.1, 1.0, kind="chebyshev")
    g = RadialGrid(0.5, 10.0, 200, "uniform")
    assert g.h == pytest.approx((10.0 - 0.5) / 199)
    g = RadialGrid.for_state(40.0, 1, 2)
    assert (g.r_min, g.r_max, g.count) == pytest.approx((4e-5, 3200.0, 8000), rel=1e-15)


def test_infinite_square_well():
    L, count = 10.0, 4000
    grid = RadialGrid(1e-9, L, count, "uniform", hard_wall=True)
    res = shoot_eigenvalue(np.zeros(count), QuantumNumbers(0, 0), bracket=(1e-3, 1.0), grid=grid)
    exact = ATOMIC.hbar2_over_2mu * math.pi ** 2 / (L - 1e-9) ** 2
    assert res.energy == pytest.approx(exact, rel=1e-6)
    assert res.nodes == 0


@pytest.mark.parametrize("n", [0, 1, 3])
def test_swave_matches_closed_form(n):
    res = manning_rosen_level(QuantumNumbers(n, 0), T1)
    assert res.energy == pytest.approx(energy_swave(n, T1), rel=1e-7)
    assert res.nodes == n


def test_hulthen_swave():
    p = PotentialParams(30.0, 1.0, 5.0)
    for n in range(3):
        res = manning_rosen_level(QuantumNumbers(n, 0), p)
        assert res.energy == pytest.approx(energy_hulthen_swave(n, 30.0, 5.0), rel=1e-7)


@pytest.mark.parametrize("label,inv_b,expected", [
    # oracle: second-order finite differences on 1e5..4e5 uniform points with Richardson extrapolation
    ("2p", 0.025, -0.1205273089),
    ("3p", 0.025, -0.0458778847),
    ("5f", 0.025, -0.0092825153),
    ("3d", 0.050, -0.0336929996),
])
def test_exact_centrifugal_against_finite_differences(label, inv_b, expected):
    qn = QuantumNumbers.from_label(label)
    res = manning_rosen_level(qn, PotentialParams.from_screening(inv_b, 0.75))
    assert res.energy == pytest.approx(expected, abs=2e-10)


@pytest.mark.parametrize("label,inv_b,printed", [("2p", 0.025, -0.1205271), ("3d", 0.050, -0.0336930)])
def test_printed_ls_anchors(label, inv_b, printed):
    res = manning_rosen_level(QuantumNumbers.from_label(label), PotentialParams.from_screening(inv_b, 0.75))
    assert res.energy == pytest.approx(printed, abs=2e-6)


def test_energy_grid_convergence_order():
    qn = QuantumNumbers(1, 2)
    e = [manning_rosen_level(qn, T1, count=c, tol=1e-15).energy for c in (500, 1000, 2000)]
    order = math.log2(abs(e[0] - e[1]) / abs(e[1] - e[2]))
    assert order >= 3.5


def test_defect_vanishes_at_exact_eigenvalue():
    exact = energy_swave(1, T1)

    def veff(r):
        return effective_potential(r, T1, 0, S.EXACT)

    d = [abs(numerov_sweep(veff, exact, RadialGrid.for_state(T1.b, 1, 0, c)).defect)
         for c in (500, 1000, 2000)]
    assert d[0] > d[1] > d[2]
    assert math.log2(d[0] / d[1]) >= 3.5 and math.log2(d[1] / d[2]) >= 3.5


def test_sweep_errors():
    grid = RadialGrid.for_state(T1.b, 0, 1, 1000)
    r = grid.r
    V = effective_potential(r, T1, 1, S.EXACT)
    with pytest.raises(BracketError):
        numerov_sweep(V, V.min() - 1.0, grid)
    with pytest.raises(DomainError):
        numerov_sweep(np.full_like(r, np.nan), -0.1, grid)
    with pytest.raises(DomainError):
        numerov_sweep(V[:-1], -0.1, grid)


def test_shooting_errors():
    grid = RadialGrid.for_state(T1.b, 0, 1, 2000)
    V = effective_potential(grid.r, T1, 1, S.EXACT)
    with pytest.raises(SearchError):
        shoot_eigenvalue(V, QuantumNumbers(0, 1), bracket=(-0.05, -0.01), grid=grid)
    with pytest.raises(BracketError):
        shoot_eigenvalue(V, QuantumNumbers(0, 1), bracket=(-0.01, -0.05), grid=grid)
    with pytest.raises(ConfigError):
        shoot_eigenvalue(V, QuantumNumbers(0, 1))


def test_approximate_schemes_through_oracle():
    from mrspectra.closedform import energy_manning_rosen
    for scheme in (S.APPROX1, S.APPROX2, S.APPROX3):
        res = manning_rosen_level(QuantumNumbers(1, 2), T1, scheme)
        ref = energy_manning_rosen(QuantumNumbers(1, 2), T1, scheme).value
        assert res.energy == pytest.approx(ref, rel=1e-8)
