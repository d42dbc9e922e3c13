"""Manning-Rosen radial equation cast as an AIM pair.

In ``z = 1/(exp(-r/b) - 1)`` the approximated radial equation becomes

    z(z+1) R'' + (2z+1) R' + (La z^2 + Lb z + Lc)/(z(z+1)) R = 0.

Peeling off ``R = z^gamma (1+z)^(-beta) f`` with ``gamma^2 = -Lc`` and
``beta^2 = Lb - La - Lc`` leaves ``f'' = lambda0 f' + s0 f``. The energy
sits inside both exponents; its square roots are removed by taking
``d = beta - gamma`` as the spectral parameter, because
``beta^2 - gamma^2 = Lb - La`` does not depend on the energy:

    beta + gamma = (Lb - La)/d.

Then ``lambda0`` and ``s0`` are rational in ``d`` and the determinant is a
polynomial in ``d``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..closedform import centrifugal_exponent
from ..errors import ConvergenceError, DomainError
from ..potentials import ATOMIC, CentrifugalScheme, PhysicalConstants, PotentialParams, scheme_terms
from .engine import AimConfig, CoefficientPair, solve_eigenvalues
from .symbolic import BiPoly, SymbolicRational


@dataclass(frozen=True)
class MRLevel:
    n: int
    d: float
    beta: float
    gamma: float
    energy: float
    k_used: int
    residual: float

    @property
    def normalizable(self) -> bool:
        """Both exponents negative: the solution decays at both ends."""
        return self.beta < 0 and self.gamma < 0


@dataclass(frozen=True)
class MRSystem:
    """Scheme-reduced constants of one ``(params, ell, scheme)`` problem."""

    P: float
    Q: float
    S: float
    lambda_a: float
    e: float  # Lb - La = -(P + Q)
    q: float  # small-r exponent
    scale: float

    def split(self, d: float):
        """``(beta, gamma)`` from ``d = beta - gamma``."""
        beta = (d * d + self.e) / (2.0 * d)
        gamma = (self.e - d * d) / (2.0 * d)
        return beta, gamma

    def energy(self, d: float) -> float:
        beta, _ = self.split(d)
        return (self.S - beta * beta) * self.scale


def mr_system(params: PotentialParams, ell: int, scheme,
              consts: PhysicalConstants = ATOMIC) -> MRSystem:
    P, Q, S = scheme_terms(params, ell, scheme)
    return MRSystem(P, Q, S, -P, -(P + Q), centrifugal_exponent(params, ell),
                    consts.energy_scale(params.b))


def _num(v, exact):
    return Fraction(v) if exact else float(v)


def mr_to_aim(params: PotentialParams, ell: int, scheme, consts: PhysicalConstants = ATOMIC,
              exact: bool = True) -> CoefficientPair:
    """Starting pair in ``x = z`` with spectral parameter ``eps = d = beta - gamma``.

    ``lambda0 = (2 beta - 1)/(1+z) - (2 gamma + 1)/z`` and
    ``s0 = [d - d^2 - La]/(z(z+1))``, both over the common base ``d z (z+1)``.
    """
    scheme = CentrifugalScheme.parse(scheme)
    sys_ = mr_system(params, ell, scheme, consts)
    e = _num(sys_.e, exact)
    la = _num(sys_.lambda_a, exact)
    z = BiPoly.x(exact)
    d = BiPoly.eps(exact)
    one = BiPoly.constant(1, exact)
    base = d * z * (z + one)
    # (2 beta - 1) d = d^2 - d + e ; (2 gamma + 1) d = e - d^2 + d
    two_beta_m1 = d * d - d + e
    two_gamma_p1 = -(d * d) + d + e
    lam_num = two_beta_m1 * z - two_gamma_p1 * (z + one)
    s_num = d * (d - d * d - la)
    lam0 = SymbolicRational(lam_num, base, 1)
    s0 = SymbolicRational(s_num, base, 1)
    return CoefficientPair.initial(lam0, s0)


def default_x0(params: PotentialParams, ell: int, scheme) -> Fraction:
    """Minimum of the reduced effective potential, mapped to z; ``-2`` otherwise.

    With ``y = u/(1-u) = -(1+z)`` the reduced potential is ``P y^2 - Q y``,
    which has its minimum at ``y = Q/(2P)`` when both are positive.
    """
    P, Q, _ = scheme_terms(params, ell, scheme)
    if P > 0 and Q > 0:
        z = -1.0 - Q / (2.0 * P)
        x0 = Fraction(z).limit_denominator(64)
        if x0 < -1:
            return x0
    return Fraction(-2)


def classify_root(sys_: MRSystem, d: float, tol: float = 1e-6) -> Optional[int]:
    """Radial quantum number of a root, or ``None`` for unphysical roots.

    Roots regular at the origin sit at ``d = n + q``; the others come from the
    irregular small-r exponent. Whether the level also decays at large r
    (``d**2 < -e``) is reported separately by :attr:`MRLevel.normalizable`.
    """
    if d <= 0:
        return None
    n = round(d - sys_.q)
    if n < 0 or abs(d - sys_.q - n) > tol:
        return None
    return int(n)


def aim_energies(params: PotentialParams, ell: int, scheme, consts: PhysicalConstants = ATOMIC,
                 n_max: int = 0, config: Optional[AimConfig] = None,
                 exact: bool = True, tol: Optional[float] = None) -> List[MRLevel]:
    """Levels ``n = 0..n_max`` from the AIM determinant; ``tol`` overrides the stability tolerance."""
    scheme = CentrifugalScheme.parse(scheme)
    sys_ = mr_system(params, ell, scheme, consts)
    c = -sys_.e
    if c <= 0:
        raise DomainError("no bound states: alpha(alpha-1) + A (scheme-adjusted) must be positive")
    # past critical screening the closed forms still give a number; cover it too
    top = max(math.sqrt(c), sys_.q + n_max)
    if config is None:
        config = AimConfig(max_k=n_max + 5, x0=float(default_x0(params, ell, scheme)),
                           bracket=(max(sys_.q - 0.5, 1e-3), top + 0.5))
    elif config.x0 is None:
        config = dataclasses.replace(config, x0=float(default_x0(params, ell, scheme)))
    if tol is not None:
        config = dataclasses.replace(config, tol=tol)

    pair0 = mr_to_aim(params, ell, scheme, consts, exact)
    want = set(range(n_max + 1))

    def found(roots):
        return want <= {classify_root(sys_, r.eps) for r in roots}

    levels = {}
    for root in solve_eigenvalues(pair0, config, until=found):
        n = classify_root(sys_, root.eps)
        if n is None or n in levels or n not in want:
            continue
        beta, gamma = sys_.split(root.eps)
        levels[n] = MRLevel(n, root.eps, beta, gamma, sys_.energy(root.eps),
                            root.k_used, root.residual)
    missing = sorted(want - set(levels))
    if missing:
        raise ConvergenceError(f"levels {missing} did not stabilize by k = {config.max_k}",
                               best_k=config.max_k, residual=None)
    return [levels[n] for n in sorted(levels)]


def aim_energy(n: int, params: PotentialParams, ell: int, scheme,
               consts: PhysicalConstants = ATOMIC, **kw) -> MRLevel:
    return aim_energies(params, ell, scheme, consts, n_max=n, **kw)[n]
