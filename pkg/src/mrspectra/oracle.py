"""Numerov shooting solver for the radial equation, independent of any closed form.

The default grid is uniform in ``x = ln r``. With ``u(r) = sqrt(r) y(x)`` the
radial equation ``u'' = (V - E) u / (hbar^2/2mu)`` becomes

    y'' = g(x) y,   g = r^2 (V - E)/(hbar^2/2mu) + 1/4,

which resolves both the ``1/r^2`` region near the origin and the long
exponential tail with one step size. A plain uniform grid in ``r`` is
available for potentials without a singular core (and for hard walls).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .closedform import QuantumNumbers
from .errors import BracketError, ConfigError, DomainError, SearchError
from .potentials import ATOMIC, CentrifugalScheme, PhysicalConstants, PotentialParams, effective_potential

DEFAULT_POINTS = 8000
_FROBENIUS_FIT_INDEX = 40
_RESCALE = 1e100


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    count: int = DEFAULT_POINTS
    kind: str = "log"
    hard_wall: bool = False

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ConfigError("need 0 < r_min < r_max")
        if self.count < 100:
            raise ConfigError("a radial grid needs at least 100 points")
        if self.kind not in ("log", "uniform"):
            raise ConfigError(f"unknown grid kind {self.kind!r}")

    @classmethod
    def for_state(cls, b: float, n: int, ell: int, count: int = DEFAULT_POINTS,
                  kind: str = "log") -> "RadialGrid":
        return cls(1e-6 * b, b * max(40.0, 20.0 * (n + ell + 1)), count, kind)

    @property
    def x(self) -> np.ndarray:
        if self.kind == "log":
            return np.linspace(math.log(self.r_min), math.log(self.r_max), self.count)
        return np.linspace(self.r_min, self.r_max, self.count)

    @property
    def r(self) -> np.ndarray:
        return np.exp(self.x) if self.kind == "log" else self.x

    @property
    def h(self) -> float:
        """Step in the integration variable (``ln r`` or ``r``)."""
        x = self.x
        return float(x[1] - x[0])


@dataclass(frozen=True)
class SweepResult:
    nodes: int
    defect: float
    match_index: int


@dataclass(frozen=True)
class ShootingResult:
    energy: float
    nodes: int
    mismatch: float
    iterations: int


def _frobenius_seed(c: np.ndarray, r: np.ndarray, log_grid: bool) -> Tuple[float, float]:
    """Regular small-r solution ``u ~ r^q (1 + a1 r)`` from ``c(r) = r^2 V/(hbar^2/2mu)``.

    ``c(r) ~ c0 + c1 r`` near the origin; ``q(q-1) = c0`` picks the regular
    exponent and ``a1 = c1/(2q)`` the first correction.
    """
    j = min(_FROBENIUS_FIT_INDEX, len(r) - 1)
    c1 = (c[j] - c[0]) / (r[j] - r[0])
    c0 = c[0] - c1 * r[0]
    disc = 1.0 + 4.0 * c0
    if disc < 0:
        raise DomainError("potential is too attractive at the origin (fall to the centre)")
    q = 0.5 + 0.5 * math.sqrt(disc)
    a1 = c1 / (2.0 * q)
    shift = 0.5 if log_grid else 0.0
    u0 = r[0] ** (q - shift) * (1.0 + a1 * r[0])
    u1 = r[1] ** (q - shift) * (1.0 + a1 * r[1])
    scale = abs(u1) if u1 != 0 else 1.0
    return u0 / scale, u1 / scale


def numerov_sweep(veff, E: float, grid: RadialGrid,
                  consts: PhysicalConstants = ATOMIC) -> SweepResult:
    """Outward and inward Numerov passes matched at the outer turning point.

    ``veff`` is either a callable of ``r`` or the potential sampled on the grid.
    Returns the node count of the outward solution and the difference of the
    two logarithmic derivatives; a positive defect means ``E`` is too low.
    """
    r = grid.r
    V = np.asarray(veff(r) if callable(veff) else veff, dtype=float)
    if V.shape != r.shape or not np.all(np.isfinite(V)):
        raise DomainError("effective potential must be finite on the grid")
    k = consts.hbar2_over_2mu
    h = grid.h
    log_grid = grid.kind == "log"
    g = (V - E) / k
    if log_grid:
        g = r * r * g + 0.25
    f = 1.0 - h * h * g / 12.0

    allowed = np.flatnonzero(V < E)
    if allowed.size == 0:
        raise BracketError(f"E = {E} lies below the potential everywhere on the grid")
    N = r.size
    m = int(allowed[-1])
    if m >= N - 3:
        m = (2 * N) // 3 if grid.hard_wall else N - 3
    m = max(m, _FROBENIUS_FIT_INDEX + 2)

    yo = np.zeros(m + 2)
    if grid.hard_wall:
        yo[0], yo[1] = 0.0, 1e-10
    else:
        c = r * r * V / k
        yo[0], yo[1] = _frobenius_seed(c, r, log_grid)
    for i in range(1, m + 1):
        yo[i + 1] = ((12.0 - 10.0 * f[i]) * yo[i] - f[i - 1] * yo[i - 1]) / f[i + 1]
        if abs(yo[i + 1]) > _RESCALE:
            yo[: i + 2] /= _RESCALE

    yi = np.zeros(N)
    yi[-1], yi[-2] = 0.0, 1e-200
    for i in range(N - 2, m - 1, -1):
        yi[i - 1] = ((12.0 - 10.0 * f[i]) * yi[i] - f[i + 1] * yi[i + 1]) / f[i - 1]
        if abs(yi[i - 1]) > _RESCALE:
            yi[i - 1:] /= _RESCALE

    s = np.sign(yo[1: m + 1])
    s = s[s != 0]
    nodes = int(np.count_nonzero(s[1:] != s[:-1]))
    d_out = (yo[m + 1] - yo[m - 1]) / (2.0 * h * yo[m])
    d_in = (yi[m + 1] - yi[m - 1]) / (2.0 * h * yi[m])
    return SweepResult(nodes, float(d_out - d_in), m)


def shoot_eigenvalue(veff, qn: QuantumNumbers, bracket: Optional[Tuple[float, float]] = None,
                     tol: Optional[float] = None, grid: Optional[RadialGrid] = None,
                     consts: PhysicalConstants = ATOMIC, max_iter: int = 200) -> ShootingResult:
    """Bisection on node count, then on the sign of the matching defect.

    ``tol`` is the final bracket width; by default ``1e-12`` relative to the
    current estimate (the well bottom on the grid can be far deeper than any
    level when the core is an attractive ``1/r^2``).
    """
    if grid is None:
        raise ConfigError("shoot_eigenvalue needs a grid (see RadialGrid.for_state)")
    r = grid.r
    V = np.asarray(veff(r) if callable(veff) else veff, dtype=float)
    if bracket is None:
        tiny = 1e-12 * max(1.0, abs(V.min()))
        bracket = (V.min() + tiny, min(-tiny, V[-1] - tiny))
    lo, hi = map(float, bracket)
    if not hi > lo:
        raise BracketError(f"empty energy bracket {bracket}")

    seen = []
    hit = False
    it = 0
    result = None
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        try:
            result = numerov_sweep(V, mid, grid, consts)
        except BracketError:
            lo = mid
            continue
        seen.append((mid, result.nodes))
        if result.nodes > qn.n:
            hi = mid
        elif result.nodes < qn.n:
            lo = mid
        else:
            hit = True
            if result.defect > 0:
                lo = mid
            else:
                hi = mid
        if hi - lo < (tol if tol is not None else 1e-12 * abs(mid)):
            break
    seen.sort()
    counts = [c for _, c in seen]
    if any(b < a for a, b in zip(counts, counts[1:])):
        raise SearchError("node count is not monotone in E; refine the grid")
    if not hit:
        raise SearchError(f"no energy with {qn.n} nodes in {bracket}; node counts seen: "
                          f"{sorted(set(counts))}")
    energy = 0.5 * (lo + hi)
    final = numerov_sweep(V, energy, grid, consts)
    if final.nodes != qn.n:
        raise SearchError(f"bisection ended at {final.nodes} nodes instead of {qn.n}")
    return ShootingResult(energy, final.nodes, final.defect, it)


def manning_rosen_level(qn: QuantumNumbers, params: PotentialParams,
                        scheme=CentrifugalScheme.EXACT, consts: PhysicalConstants = ATOMIC,
                        count: int = DEFAULT_POINTS, tol: Optional[float] = None) -> ShootingResult:
    """Shooting eigenvalue of the Manning-Rosen problem; the exact centrifugal term by default."""
    scheme = CentrifugalScheme.parse(scheme)
    grid = RadialGrid.for_state(params.b, qn.n, qn.ell, count)

    def veff(r):
        return effective_potential(r, params, qn.ell, scheme, consts)

    return shoot_eigenvalue(veff, qn, tol=tol, grid=grid, consts=consts)
