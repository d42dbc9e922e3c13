"""Closed-form bound-state energies.

Three Manning-Rosen formulas (one per Pekeris-type scheme), the s-wave
reduction and the Hulthen family. Every function evaluates its own printed
formula; the shared algebra in :func:`reduced_energy` is what the AIM engine
and the wavefunctions use.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import DomainError, ParameterRangeError, UnsupportedSchemeError
from .potentials import (ATOMIC, CentrifugalScheme, PhysicalConstants, PotentialParams,
                         scheme_terms)

_SPECTROSCOPIC = "spdfghik"
_LABEL_RE = re.compile(r"^([1-9])([spdfghik])$")


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Radial quantum number ``n`` (interior nodes) and orbital ``ell``."""

    n: int
    ell: int

    def __post_init__(self):
        if int(self.n) != self.n or int(self.ell) != self.ell:
            raise DomainError("quantum numbers must be integers")
        if self.n < 0 or self.ell < 0:
            raise DomainError(f"quantum numbers must be non-negative, got n={self.n}, ell={self.ell}")

    @classmethod
    def from_label(cls, label: str) -> "QuantumNumbers":
        """Hydrogen-like label ``"Np"``: ell from the letter, ``n = N - ell - 1``."""
        m = _LABEL_RE.match(label.strip().lower())
        if m is None:
            raise DomainError(f"bad state label {label!r}")
        principal = int(m.group(1))
        ell = _SPECTROSCOPIC.index(m.group(2))
        if principal <= ell:
            raise DomainError(f"state {label!r} needs N > ell")
        return cls(n=principal - ell - 1, ell=ell)

    @property
    def label(self) -> str:
        return f"{self.n + self.ell + 1}{_SPECTROSCOPIC[self.ell]}"


@dataclass(frozen=True)
class LambdaCoefficients:
    """Coefficients of the quadratic numerator of the z-form radial equation."""

    lambda_a: float
    lambda_b: float
    lambda_c: float


@dataclass(frozen=True)
class EnergyResult:
    value: float
    scheme: CentrifugalScheme
    units: str = "hartree"
    bound: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "bound", self.value < 0)

    def __float__(self):
        return float(self.value)


def zeta(ell: int, params: PotentialParams) -> float:
    """``alpha(alpha-1) + A + ell(ell+1)(1 - e^{1/b})``."""
    try:
        growth = math.exp(1.0 / params.b)
    except OverflowError:
        raise ParameterRangeError(f"e^(1/b) overflows for b = {params.b}; "
                                  "Approx2 is unusable at this screening") from None
    return params.alpha_term + params.A + ell * (ell + 1) * (1.0 - growth)


def lambda_coefficients(params: PotentialParams, ell: int, E: float,
                        consts: PhysicalConstants = ATOMIC,
                        scheme=CentrifugalScheme.APPROX1) -> LambdaCoefficients:
    """Solve the three linear relations that define the Lambda coefficients.

    ``-La = alpha(alpha-1) + ell(ell+1)``, ``Lb - La = -(alpha(alpha-1) + A)``
    and ``Lb - Lc - La = ell(ell+1)/12 - E/scale`` for Approx1; the other
    schemes change the ``A`` and ``1/12`` pieces through :func:`scheme_terms`.
    """
    P, Q, S = scheme_terms(params, ell, scheme)
    eps = E / consts.energy_scale(params.b)
    lam_a = -P
    lam_b = lam_a - (P + Q)
    lam_c = lam_b - lam_a - (S - eps)
    return LambdaCoefficients(lam_a, lam_b, lam_c)


def centrifugal_exponent(params: PotentialParams, ell: int) -> float:
    """Small-r exponent ``q`` of the regular solution, ``R ~ r**q``."""
    disc = 1.0 + 4.0 * (params.alpha_term + ell * (ell + 1))
    if disc < 0:
        raise DomainError("1 + 4 alpha(alpha-1) + 4 ell(ell+1) < 0: the potential "
                          "collapses at the origin")
    return 0.5 + 0.5 * math.sqrt(disc)


def reduced_energy(n: int, params: PotentialParams, ell: int, scheme) -> float:
    """Dimensionless eigenvalue ``E / (hbar^2/2 mu b^2)`` for a Pekeris-type scheme."""
    P, Q, S = scheme_terms(params, ell, scheme)
    X = n + centrifugal_exponent(params, ell)
    kappa = (P + Q - X * X) / (2.0 * X)
    return S - kappa * kappa


def _check_scheme(scheme) -> CentrifugalScheme:
    scheme = CentrifugalScheme.parse(scheme)
    if scheme is CentrifugalScheme.EXACT:
        raise UnsupportedSchemeError("no closed form with the exact centrifugal term; "
                                     "use mrspectra.oracle.shoot_eigenvalue")
    return scheme


def energy_manning_rosen(qn: QuantumNumbers, params: PotentialParams, scheme,
                         consts: PhysicalConstants = ATOMIC) -> EnergyResult:
    """Closed-form Manning-Rosen level for one of the three Pekeris-type schemes."""
    scheme = _check_scheme(scheme)
    a = params.alpha_term
    L = qn.ell * (qn.ell + 1)
    disc = 1.0 + 4.0 * a + 4.0 * L
    if disc < 0:
        raise DomainError("negative discriminant 1 + 4 alpha(alpha-1) + 4 ell(ell+1)")
    X = (qn.n + 0.5) + 0.5 * math.sqrt(disc)
    if scheme is CentrifugalScheme.APPROX2:
        c = zeta(qn.ell, params)
    else:
        c = a + params.A
    shift = L / 12.0 if scheme is CentrifugalScheme.APPROX1 else 0.0
    # c - ((X^2 + c)/(2X))^2 == -((c - X^2)/(2X))^2, without the cancellation
    kappa = (c - X * X) / (2.0 * X)
    value = (shift - kappa * kappa) * consts.energy_scale(params.b)
    return EnergyResult(value, scheme, consts.units)


def energy_swave(n: int, params: PotentialParams, consts: PhysicalConstants = ATOMIC) -> float:
    """s-wave level, exact for every scheme.

    The regular small-r exponent is ``max(alpha, 1 - alpha)``; the formula is
    written in terms of it so that ``alpha < 1/2`` picks the bound branch too.
    """
    a = max(params.alpha, 1.0 - params.alpha)
    denom = 2.0 * (a + n)
    if denom == 0:
        raise DomainError("alpha + n = 0")
    bracket = (params.A - a) / denom - n * (n + 2 * a) / denom
    return -consts.energy_scale(params.b) * bracket * bracket


def energy_hulthen(qn: QuantumNumbers, A: float, b: float, scheme,
                   consts: PhysicalConstants = ATOMIC) -> float:
    """Hulthen (alpha = 0 or 1) level for a Pekeris-type scheme."""
    scheme = _check_scheme(scheme)
    if not b > 0:
        raise DomainError("b must be positive")
    N = qn.n + qn.ell + 1
    L = qn.ell * (qn.ell + 1)
    shift = 0.0
    if scheme is CentrifugalScheme.APPROX2:
        try:
            c = A + L * (1.0 - math.exp(1.0 / b))
        except OverflowError:
            raise ParameterRangeError(f"e^(1/b) overflows for b = {b}") from None
    else:
        c = A
        shift = L / 12.0 if scheme is CentrifugalScheme.APPROX1 else 0.0
    kappa = (c - N * N) / (2.0 * N)
    return (shift - kappa * kappa) * consts.energy_scale(b)


def energy_hulthen_swave(n: int, A: float, b: float,
                         consts: PhysicalConstants = ATOMIC) -> float:
    """Hulthen s-wave level ``-[A-(n+1)^2]^2/(n+1)^2 * hbar^2/(8 mu b^2)``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    N2 = (n + 1) ** 2
    return -((A - N2) ** 2 / N2) * consts.energy_scale(b) / 4.0
