"""Manning-Rosen and Hulthen potentials, the centrifugal term and its
exponential surrogates.

All evaluators accept scalars or numpy arrays for ``r``. Energies are
returned in the unit system carried by :class:`PhysicalConstants`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, ParameterRangeError, UnsupportedSchemeError

#: hbar*c in eV * Angstrom, as used for the diatomic tables.
HBAR_C_EV_ANGSTROM = 1973.29
#: Energy equivalent of one atomic mass unit (CODATA 2018), eV.
AMU_EV_PHYSICAL = 931.49410242e6
#: Effective amu -> energy constant that reproduces the published diatomic
#: tables; recovered by ``mrspectra.tables.calibrate``.
AMU_EV_PAPER_CALIBRATED = 93115.0

#: Smallest admissible r in units of b; keeps 1 - exp(-r/b) away from zero.
R_MIN_OVER_B = 1e-12


class CentrifugalScheme(enum.Enum):
    """How the ``1/r**2`` centrifugal term is treated."""

    APPROX1 = "approx1"
    APPROX2 = "approx2"
    APPROX3 = "approx3"
    EXACT = "exact"

    @classmethod
    def parse(cls, value) -> "CentrifugalScheme":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace(".", "").replace(" ", "").replace("_", "")
        aliases = {"1": "approx1", "2": "approx2", "3": "approx3",
                   "exactoracle": "exact", "oracle": "exact"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown centrifugal scheme {value!r}") from None

    @property
    def label(self) -> str:
        return {"approx1": "Approx1", "approx2": "Approx2",
                "approx3": "Approx3", "exact": "Exact"}[self.value]


APPROXIMATE_SCHEMES = (CentrifugalScheme.APPROX1, CentrifugalScheme.APPROX2,
                       CentrifugalScheme.APPROX3)


@dataclass(frozen=True)
class PotentialParams:
    """Depth ``A``, shape ``alpha`` and screening length ``b`` of the potential."""

    A: float
    alpha: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.A) and math.isfinite(self.alpha)):
            raise DomainError("A and alpha must be finite")
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DomainError(f"screening length b must be positive, got {self.b}")

    @classmethod
    def from_screening(cls, inv_b: float, alpha: float, a_over_b: float = 2.0):
        """Parameters for the table convention ``A = 2b`` at screening ``1/b``."""
        if not inv_b > 0:
            raise DomainError("1/b must be positive")
        b = 1.0 / inv_b
        return cls(A=a_over_b * b, alpha=alpha, b=b)

    @property
    def alpha_term(self) -> float:
        """``alpha*(alpha-1)``, the only combination of alpha in the potential."""
        return self.alpha * (self.alpha - 1.0)


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system of a calculation.

    ``hbar2_over_2mu`` is hbar**2/(2*mu) in energy*length**2; the energy scale
    of every formula is ``hbar2_over_2mu / b**2``. Build instances with
    :meth:`atomic` or :meth:`molecular`.
    """

    hbar2_over_2mu: float
    mode: str = "atomic"
    reduced_mass_amu: Optional[float] = None
    hbar_c: Optional[float] = None
    amu_energy: Optional[float] = None

    def __post_init__(self):
        if not self.hbar2_over_2mu > 0:
            raise DomainError("hbar^2/2mu must be positive")
        if self.mode not in ("atomic", "molecular"):
            raise DomainError(f"unknown unit mode {self.mode!r}")
        if self.mode == "molecular" and self.reduced_mass_amu is None:
            raise DomainError("molecular mode needs a reduced mass")

    @classmethod
    def atomic(cls) -> "PhysicalConstants":
        """hbar = mu = 1."""
        return cls(hbar2_over_2mu=0.5, mode="atomic")

    @classmethod
    def molecular(cls, reduced_mass_amu: float, amu_energy: float = AMU_EV_PHYSICAL,
                  hbar_c: float = HBAR_C_EV_ANGSTROM) -> "PhysicalConstants":
        """eV and Angstrom, with ``amu_energy`` the amu -> eV conversion."""
        if not reduced_mass_amu > 0:
            raise DomainError("reduced mass must be positive")
        if not amu_energy > 0:
            raise DomainError("amu energy constant must be positive")
        return cls(hbar2_over_2mu=hbar_c ** 2 / (2.0 * reduced_mass_amu * amu_energy),
                   mode="molecular", reduced_mass_amu=reduced_mass_amu,
                   hbar_c=hbar_c, amu_energy=amu_energy)

    def energy_scale(self, b: float) -> float:
        """hbar**2 / (2 mu b**2)."""
        return self.hbar2_over_2mu / (b * b)

    @property
    def units(self) -> str:
        return "hartree" if self.mode == "atomic" else "eV"


ATOMIC = PhysicalConstants.atomic()


def _check_r(r, b):
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError("r must be strictly positive")
    return np.maximum(r, R_MIN_OVER_B * b)


def _scalar(out, like):
    return float(out) if np.ndim(like) == 0 else out


def _ratio(r, b):
    """u/(1-u) and u for u = exp(-r/b), computed without cancellation."""
    u = np.exp(-r / b)
    one_minus_u = -np.expm1(-r / b)
    return u / one_minus_u, u, one_minus_u


def manning_rosen_value(r, params: PotentialParams, consts: PhysicalConstants = ATOMIC):
    """Manning-Rosen potential at ``r``."""
    rr = _check_r(r, params.b)
    y, _, _ = _ratio(rr, params.b)
    out = consts.energy_scale(params.b) * (params.alpha_term * y * y - params.A * y)
    return _scalar(out, r)


def hulthen_value(r, V0: float, delta: float):
    """Hulthen potential ``-V0 exp(-delta r)/(1 - exp(-delta r))``."""
    if not delta > 0:
        raise DomainError("delta must be positive")
    rr = _check_r(r, 1.0 / delta)
    y, _, _ = _ratio(rr, 1.0 / delta)
    return _scalar(-V0 * y, r)


def centrifugal_term(r, b: float, scheme) -> np.ndarray:
    """The ``1/r**2`` factor of the centrifugal barrier, or its surrogate."""
    scheme = CentrifugalScheme.parse(scheme)
    if not b > 0:
        raise DomainError("b must be positive")
    rr = _check_r(r, b)
    if scheme is CentrifugalScheme.EXACT:
        return _scalar(1.0 / (rr * rr), r)
    y, u, one_minus_u = _ratio(rr, b)
    pekeris = u / (one_minus_u * one_minus_u)
    if scheme is CentrifugalScheme.APPROX1:
        out = (1.0 / 12.0 + pekeris) / (b * b)
    elif scheme is CentrifugalScheme.APPROX2:
        out = (_exp_inv_b(b) * y + y * y) / (b * b)
    else:
        out = pekeris / (b * b)
    return _scalar(out, r)


def _exp_inv_b(b: float) -> float:
    try:
        return math.exp(1.0 / b)
    except OverflowError:
        raise ParameterRangeError(f"exp(1/b) overflows for b = {b}") from None


def effective_potential(r, params: PotentialParams, ell: int, scheme,
                        consts: PhysicalConstants = ATOMIC):
    """Manning-Rosen potential plus the (possibly approximated) centrifugal barrier."""
    if ell < 0:
        raise DomainError("ell must be non-negative")
    v = manning_rosen_value(r, params, consts)
    if ell == 0:
        return v
    return v + consts.hbar2_over_2mu * ell * (ell + 1) * centrifugal_term(r, params.b, scheme)


def scheme_terms(params: PotentialParams, ell: int, scheme) -> tuple[float, float, float]:
    """Coefficients ``(P, Q, S)`` of the reduced effective potential.

    With ``y = u/(1-u)`` every approximated scheme gives
    ``b**2 V_eff / (hbar**2/2mu) = P*y**2 - Q*y + S``.
    """
    scheme = CentrifugalScheme.parse(scheme)
    if scheme is CentrifugalScheme.EXACT:
        raise UnsupportedSchemeError("the exact centrifugal term has no reduced form; "
                                     "use mrspectra.oracle")
    L = ell * (ell + 1)
    P = params.alpha_term + L
    if scheme is CentrifugalScheme.APPROX1:
        return P, params.A - L, L / 12.0
    if scheme is CentrifugalScheme.APPROX2:
        return P, params.A - L * _exp_inv_b(params.b), 0.0
    return P, params.A - L, 0.0
