"""Radial eigenfunctions of the approximated Manning-Rosen problem.

With ``u = exp(-r/b)`` the reduced radial function is

    R(r) = N u^kappa (1-u)^q 2F1(-n, n + 2 kappa + 2 q; 2 kappa + 1; u),

with ``kappa = -beta`` and ``q`` the small-r exponent. In ``z = 1/(u-1)`` the
same function reads ``|z|^gamma |1+z|^(-beta) 2F1(-n, 2(gamma-beta)+n+1;
2 gamma+1; -z)`` up to a constant, where ``gamma = -(kappa + n + q)``.
Working in ``u`` keeps every factor real on ``0 < r < inf``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .closedform import QuantumNumbers, centrifugal_exponent
from .errors import DomainError
from .potentials import (ATOMIC, CentrifugalScheme, PhysicalConstants, PotentialParams,
                         effective_potential, scheme_terms)


def pochhammer(sigma: float, n: int):
    """Rising factorial ``sigma (sigma+1) ... (sigma+n-1)``; ``(sigma)_0 = 1``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    out = sigma * 0 + 1
    for j in range(n):
        out = out * (sigma + j)
    return out


def gauss_2f1_terminating(n: int, bparam, c, z):
    """``2F1(-n, bparam; c; z)`` as the finite sum of its ``n + 1`` terms.

    Works on numpy arrays in ``z`` and, with ``Fraction`` arguments, exactly.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    if isinstance(c, (int, Fraction)) or float(c).is_integer():
        if c <= 0 and -c <= n - 1:
            raise DomainError(f"c = {c} makes the series undefined before it terminates")
    z = np.asarray(z) if not isinstance(z, Fraction) else z
    term = z * 0 + 1
    total = term
    for j in range(n):
        term = term * (-n + j) * (bparam + j) / ((c + j) * (j + 1)) * z
        total = total + term
    if isinstance(total, np.ndarray) and total.ndim == 0:
        return total.item()
    return total


@dataclass(frozen=True)
class RadialWavefunction:
    """Closed-form radial eigenfunction of one approximated Hamiltonian.

    ``gamma`` and ``beta`` are the exponents of the z-form; on the physical
    branch both are negative, with ``kappa = -beta`` the decay rate in units
    of ``1/b``.
    """

    gamma: float
    beta: float
    n: int
    b: float
    q: float
    ell: int
    energy: float
    scheme: CentrifugalScheme
    params: PotentialParams
    consts: PhysicalConstants = ATOMIC
    norm: Optional[float] = None

    @property
    def kappa(self) -> float:
        return -self.beta

    @property
    def sigma(self) -> float:
        """``2 gamma + 1``, the third hypergeometric parameter in the z-form."""
        return 2.0 * self.gamma + 1.0

    @property
    def r_max(self) -> float:
        return self.b * max(40.0, 20.0 * (self.n + self.ell + 1))

    def _hyper(self, u, shift: int = 0):
        a = 2.0 * self.kappa + 2.0 * self.q + self.n
        c = 2.0 * self.kappa + 1.0
        m = self.n - shift
        if m < 0:
            return np.zeros_like(u)
        # d^k/du^k 2F1(-n, a; c; u) = (-n)_k (a)_k / (c)_k 2F1(-n+k, a+k; c+k; u)
        pref = pochhammer(-self.n, shift) * pochhammer(a, shift) / pochhammer(c, shift)
        return pref * gauss_2f1_terminating(m, a + shift, c + shift, u)

    def _pieces(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(~(r > 0)):
            raise DomainError("r must be positive")
        x = r / self.b
        u = np.exp(-x)
        v = -np.expm1(-x)  # 1 - u
        log_g = self.kappa * (-x) + self.q * np.log(v)
        return r, u, v, np.exp(log_g)

    def __call__(self, r):
        r_arr, u, _, g = self._pieces(r)
        out = (self.norm or 1.0) * g * self._hyper(u)
        return float(out) if np.ndim(r) == 0 else out

    def derivative(self, r, order: int = 1):
        """Analytic ``dR/dr`` (order 1) or ``d2R/dr2`` (order 2)."""
        if order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        _, u, v, g = self._pieces(r)
        k, q = self.kappa, self.q
        h, h1, h2 = self._hyper(u), self._hyper(u, 1), self._hyper(u, 2)
        t = k / u - q / v
        g1 = g * t
        g2 = g * (t * t - k / u ** 2 - q / v ** 2)
        f1 = g1 * h + g * h1
        f2 = g2 * h + 2.0 * g1 * h1 + g * h2
        # d/dr = -(u/b) d/du
        if order == 1:
            out = -(u / self.b) * f1
        else:
            out = (u * u * f2 + u * f1) / self.b ** 2
        out = (self.norm or 1.0) * out
        return float(out) if np.ndim(r) == 0 else out

    def hypergeometric_form(self, r):
        """``(-1)^n (sigma)_n |z|^gamma |1+z|^(-beta) 2F1(-n, 2(gamma-beta)+n+1; sigma; -z)``."""
        r = np.asarray(r, dtype=float)
        x = r / self.b
        v = -np.expm1(-x)
        z = -1.0 / v
        one_plus_z = -np.exp(-x) / v
        prefactor = (-1) ** self.n * pochhammer(self.sigma, self.n)
        body = (np.abs(z) ** self.gamma * np.abs(one_plus_z) ** (-self.beta)
                * gauss_2f1_terminating(self.n, 2 * (self.gamma - self.beta) + self.n + 1,
                                        self.sigma, -z))
        out = prefactor * body
        return float(out) if np.ndim(r) == 0 else out

    def scaled(self, factor: float) -> "RadialWavefunction":
        return dataclasses.replace(self, norm=(self.norm or 1.0) * factor)

    def residual(self, r):
        """``R'' - (2 mu/hbar^2)(V_eff - E) R`` on the approximated Hamiltonian."""
        veff = effective_potential(r, self.params, self.ell, self.scheme, self.consts)
        return self.derivative(r, 2) - (veff - self.energy) / self.consts.hbar2_over_2mu * self(r)


def radial_wavefunction(qn: QuantumNumbers, params: PotentialParams, scheme,
                        consts: PhysicalConstants = ATOMIC) -> RadialWavefunction:
    """Eigenfunction paired with the closed-form level of ``scheme``."""
    scheme = CentrifugalScheme.parse(scheme)
    P, Q, S = scheme_terms(params, qn.ell, scheme)
    q = centrifugal_exponent(params, qn.ell)
    X = qn.n + q
    c = P + Q
    kappa = (c - X * X) / (2.0 * X)
    if not kappa > 0:
        raise DomainError(f"state n={qn.n}, ell={qn.ell} is not bound for these parameters "
                          "(the closed-form level lies past critical screening)")
    energy = (S - kappa * kappa) * consts.energy_scale(params.b)
    beta = -kappa
    gamma = -(kappa + X)
    return RadialWavefunction(gamma=gamma, beta=beta, n=qn.n, b=params.b, q=q, ell=qn.ell,
                              energy=energy, scheme=scheme, params=params, consts=consts)


def _panels(r_lo: float, r_hi: float, panels: int, points: int):
    nodes, weights = np.polynomial.legendre.leggauss(points)
    edges = np.geomspace(r_lo, r_hi, panels + 1)
    a, b = edges[:-1, None], edges[1:, None]
    r = 0.5 * (b - a) * nodes[None, :] + 0.5 * (a + b)
    w = 0.5 * (b - a) * weights[None, :]
    return r.ravel(), w.ravel()


def integrate(f, b: float, r_max: float, panels: int = 64, points: int = 16) -> float:
    """Composite Gauss-Legendre on log-spaced panels over ``(1e-8 b, r_max)``."""
    r, w = _panels(1e-8 * b, r_max, panels, points)
    return float(np.dot(w, f(r)))


def normalize(wf: RadialWavefunction, r_max: Optional[float] = None, points: int = 16,
              panels: int = 64) -> RadialWavefunction:
    """Fix ``norm`` so that the integral of ``R**2`` over ``(0, r_max)`` is one."""
    if not wf.kappa > 0:
        raise DomainError("wavefunction does not decay; cannot normalize")
    r_max = r_max if r_max is not None else wf.r_max
    tail = math.exp(-2.0 * wf.kappa * r_max / wf.b)
    if tail > 1e-12:
        raise DomainError(f"r_max = {r_max} leaves a tail of order {tail:.1e}")
    total = integrate(lambda r: wf(r) ** 2, wf.b, r_max, panels, points)
    if not (total > 0 and math.isfinite(total)):
        raise DomainError("norm integral is not a positive finite number")
    return dataclasses.replace(wf, norm=(wf.norm or 1.0) / math.sqrt(total))


def overlap(wf1: RadialWavefunction, wf2: RadialWavefunction, panels: int = 64,
            points: int = 16) -> float:
    r_max = max(wf1.r_max, wf2.r_max)
    return integrate(lambda r: wf1(r) * wf2(r), wf1.b, r_max, panels, points)


def count_nodes(wf: RadialWavefunction, count: int = 4000) -> int:
    """Interior sign changes on a log-spaced grid, ignoring numerical zeros."""
    r = np.geomspace(1e-6 * wf.b, wf.r_max, count)
    vals = wf(r)
    floor = 1e-10 * np.max(np.abs(vals))
    s = np.sign(vals[np.abs(vals) > floor])
    return int(np.count_nonzero(s[1:] != s[:-1]))
