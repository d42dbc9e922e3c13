"""Asymptotic iteration: recurrences, quantization determinant, root search.

The engine is generic: it accepts any pair ``(lambda0, s0)`` of
:class:`SymbolicRational` functions of ``x`` that depend polynomially on one
spectral parameter ``eps`` and finds the values of ``eps`` at which the
determinant ``lambda_k s_{k-1} - lambda_{k-1} s_k`` vanishes at a fixed point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..errors import (ConfigError, ConvergenceError, DegenerateDeterminantError, DomainError,
                      ResourceError)
from .symbolic import SymbolicRational


@dataclass(frozen=True)
class CoefficientPair:
    """``(lambda_k, s_k)`` together with the starting pair they grew from."""

    lam: SymbolicRational
    s: SymbolicRational
    k: int = 0
    lam0: Optional[SymbolicRational] = None
    s0: Optional[SymbolicRational] = None

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.lam0 is None:
            object.__setattr__(self, "lam0", self.lam)
        if self.s0 is None:
            object.__setattr__(self, "s0", self.s)

    @classmethod
    def initial(cls, lam0: SymbolicRational, s0: SymbolicRational) -> "CoefficientPair":
        if lam0.num.is_zero():
            raise DomainError("lambda0 must not vanish identically")
        return cls(lam0, s0, 0)

    def evaluate(self, x, eps) -> Tuple[float, float]:
        return self.lam.evaluate(x, eps), self.s.evaluate(x, eps)


@dataclass(frozen=True)
class AimConfig:
    max_k: int = 12
    x0: Optional[float] = None
    tol: float = 1e-10
    bracket: Tuple[float, float] = (0.0, 1.0)
    bracket_subdivisions: int = 512
    root_tol: float = 1e-12
    degree_cap: Optional[int] = None
    n_roots: Optional[int] = None

    def __post_init__(self):
        if self.max_k < 2:
            raise ConfigError("max_k must be at least 2")
        if not self.tol > 0 or not self.root_tol > 0:
            raise ConfigError("tolerances must be positive")
        lo, hi = self.bracket
        if not hi > lo:
            raise ConfigError(f"empty bracket {self.bracket}")
        if self.bracket_subdivisions < 1:
            raise ConfigError("bracket_subdivisions must be positive")

    @property
    def cap(self) -> int:
        return self.degree_cap if self.degree_cap is not None else 4 * self.max_k


class AimRoot(NamedTuple):
    eps: float
    k_used: int
    residual: float


def iterate(pair: CoefficientPair, degree_cap: Optional[int] = None) -> CoefficientPair:
    """One step: ``lam_k = lam' + s + lam0 lam``, ``s_k = s' + s0 lam``."""
    lam = pair.lam.dx() + pair.s + pair.lam0 * pair.lam
    s = pair.s.dx() + pair.s0 * pair.lam
    if degree_cap is not None and max(lam.degree(), s.degree()) > degree_cap:
        raise ResourceError(f"expression degree exceeds cap {degree_cap} at k = {pair.k + 1}")
    return CoefficientPair(lam, s, pair.k + 1, pair.lam0, pair.s0)


def determinant(pair_k: CoefficientPair, pair_km1: CoefficientPair) -> SymbolicRational:
    """``delta_k`` as a rational function of ``(x, eps)``."""
    if pair_km1.k != pair_k.k - 1:
        raise ValueError("pairs must be consecutive iterates")
    return pair_k.lam * pair_km1.s - pair_km1.lam * pair_k.s


def determinant_at(pair_k: CoefficientPair, pair_km1: CoefficientPair, x0) -> SymbolicRational:
    """``delta_k(x0)`` as a rational function of ``eps`` alone."""
    lk, sk = pair_k.lam.at_x(x0), pair_k.s.at_x(x0)
    lm, sm = pair_km1.lam.at_x(x0), pair_km1.s.at_x(x0)
    return lk * sm - lm * sk


def quantization_delta(pair_k: CoefficientPair, pair_km1: CoefficientPair, x0, eps) -> float:
    """Numeric ``lambda_k s_{k-1} - lambda_{k-1} s_k`` at ``(x0, eps)``."""
    if pair_km1.k != pair_k.k - 1:
        raise ValueError("pairs must be consecutive iterates")
    lk, sk = pair_k.evaluate(x0, eps)
    lm, sm = pair_km1.evaluate(x0, eps)
    return lk * sm - lm * sk


def _scaled_floats(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.dtype == object:
        big = max(abs(c) for c in coeffs)
        if big == 0:
            return np.zeros(len(coeffs))
        return np.array([float(c / big) for c in coeffs])
    big = np.max(np.abs(coeffs))
    return coeffs / big if big > 0 else coeffs.astype(float)


class _ExactSign:
    """Sign of a rational-coefficient polynomial at binary floats, in integers.

    Coefficients are cleared of denominators once; a float ``t = p / 2**e``
    is then evaluated as ``sum c_i p^i 2^(e (deg - i))`` without any gcd work.
    """

    def __init__(self, coeffs):
        lcm = 1
        for c in coeffs:
            lcm = math.lcm(lcm, Fraction(c).denominator)
        self.ints = [int(Fraction(c) * lcm) for c in coeffs]

    def __call__(self, t: float) -> int:
        num, den = float(t).as_integer_ratio()
        acc = 0
        scale = 1
        for c in reversed(self.ints):
            acc = acc * num + c * scale
            scale *= den
        # acc = den^deg * p(t) up to the positive factor; sign is exact
        return (acc > 0) - (acc < 0)


def _make_sign(coeffs: np.ndarray, exact: bool):
    if exact:
        return _ExactSign(coeffs)
    return lambda t: int(np.sign(np.polynomial.polynomial.polyval(t, coeffs)))


def _bisect(sign, fl, lo, hi, s_lo, root_tol):
    while hi - lo > root_tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        s_mid = sign(mid)
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    # secant polish on the float image, kept only if it stays inside
    f_lo = np.polynomial.polynomial.polyval(lo, fl)
    f_hi = np.polynomial.polynomial.polyval(hi, fl)
    if f_hi != f_lo:
        t = lo - f_lo * (hi - lo) / (f_hi - f_lo)
        if lo <= t <= hi:
            return t
    return 0.5 * (lo + hi)


def find_roots(delta: SymbolicRational, bracket: Tuple[float, float], subdivisions: int = 512,
               root_tol: float = 1e-12) -> List[float]:
    """Sign-change roots of an x-free determinant inside ``bracket``.

    Roots of the numerator that coincide with a zero of the denominator are
    poles in disguise and are dropped.
    """
    coeffs = delta.num.eps_coeffs()
    exact = delta.exact
    fl = _scaled_floats(coeffs)
    if not np.any(fl):
        raise DegenerateDeterminantError("quantization determinant is identically zero",
                                         best_k=None, residual=0.0)
    den = _scaled_floats(delta.base.eps_coeffs()) if delta.power else None
    sign = _make_sign(coeffs, exact)
    grid = np.linspace(bracket[0], bracket[1], subdivisions + 1)
    if exact:
        signs = np.array([sign(t) for t in grid])
    else:
        signs = np.sign(np.polynomial.polynomial.polyval(grid, fl)).astype(int)
    roots = [float(t) for t, sg in zip(grid, signs) if sg == 0]
    for i in range(subdivisions):
        if signs[i] * signs[i + 1] < 0:
            roots.append(_bisect(sign, fl, float(grid[i]), float(grid[i + 1]), signs[i],
                                 root_tol))
    roots = sorted(set(roots))
    if den is not None:
        roots = [r for r in roots if abs(np.polynomial.polynomial.polyval(r, den)) > 1e-12]
    return roots


def _nearest(value: float, pool: Sequence[float]) -> Tuple[Optional[float], float]:
    if not pool:
        return None, math.inf
    arr = np.asarray(pool)
    i = int(np.argmin(np.abs(arr - value)))
    return float(arr[i]), float(abs(arr[i] - value))


def _validate_x0(pair: CoefficientPair, x0):
    for f in (pair.lam, pair.s):
        if f.power and f.base.at_x(x0).is_zero():
            raise DomainError(f"x0 = {x0} is a pole of the starting pair; move x0")


def solve_eigenvalues(pair0: CoefficientPair, config: AimConfig,
                      until: Optional[Callable[[List[AimRoot]], bool]] = None) -> List[AimRoot]:
    """Stabilized roots of ``delta_k(x0; eps)`` inside the configured bracket.

    A root is accepted once it reappears, within ``tol``, at three consecutive
    iteration levels (two consecutive differences below ``tol``). Iteration
    stops early once ``config.n_roots`` roots are accepted or ``until``
    returns true for the accepted list.
    """
    if config.x0 is None:
        raise ConfigError("the generic engine needs an explicit x0")
    if pair0.k != 0:
        raise ValueError("solve_eigenvalues starts from the k = 0 pair")
    x0 = Fraction(config.x0) if pair0.lam.exact else float(config.x0)
    _validate_x0(pair0, x0)

    history: List[List[float]] = []
    accepted: List[AimRoot] = []
    prev = pair0
    best = (None, math.inf)
    for k in range(1, config.max_k + 1):
        cur = iterate(prev, config.cap)
        delta = determinant_at(cur, prev, x0)
        try:
            roots = find_roots(delta, config.bracket, config.bracket_subdivisions,
                               config.root_tol)
        except DegenerateDeterminantError as exc:
            raise DegenerateDeterminantError(
                f"quantization determinant vanishes identically at k = {k}; "
                "every eps satisfies it, so no spectrum can be extracted",
                best_k=k, residual=0.0) from exc
        history.append(roots)
        if len(history) >= 3:
            for r in roots:
                r1, d1 = _nearest(r, history[-2])
                if d1 < best[1]:
                    best = (k, d1)
                if r1 is None or d1 >= config.tol:
                    continue
                _, d2 = _nearest(r1, history[-3])
                if d2 >= config.tol:
                    continue
                if any(abs(a.eps - r) < config.tol for a in accepted):
                    continue
                accepted.append(AimRoot(r, k, max(d1, d2)))
        if config.n_roots is not None and len(accepted) >= config.n_roots:
            break
        if until is not None and accepted and until(accepted):
            break
        prev = cur
    if not accepted:
        raise ConvergenceError(f"no root stabilized by k = {config.max_k}",
                               best_k=best[0], residual=best[1])
    return sorted(accepted, key=lambda a: a.eps)


@dataclass(frozen=True)
class SolvableForm:
    """Parameters of the exactly solvable pair

    ``lambda0 = 2(a x^(N+1)/(1 - b x^(N+2)) - (m+1)/x)``,
    ``s0 = -W x^N / (1 - b x^(N+2))``.
    """

    a: float
    b_coef: float
    N: float
    m: float
    W: float
    sigma: float = field(init=False)
    rho: float = field(init=False)

    def __post_init__(self):
        if self.N + 2 == 0:
            raise DomainError("N + 2 must not vanish")
        if self.b_coef == 0:
            raise DomainError("b must not vanish")
        object.__setattr__(self, "sigma", (2 * self.m + self.N + 3) / (self.N + 2))
        object.__setattr__(self, "rho", ((2 * self.m + 1) * self.b_coef + 2 * self.a)
                           / ((self.N + 2) * self.b_coef))

    def w_n(self, n: int) -> float:
        """Value of ``W`` that terminates the series at degree ``n``."""
        return self.b_coef * n * (self.N + 2) ** 2 * (n + self.rho)


def _poly_trim(p: np.ndarray, tol: float) -> np.ndarray:
    p = np.array(p)
    if p.dtype == object:
        nz = [i for i, c in enumerate(p) if c != 0]
    else:
        scale = np.max(np.abs(p)) if p.size else 0.0
        nz = [i for i, c in enumerate(p) if abs(c) > tol * scale]
        p = np.where(np.abs(p) > tol * scale, p, 0.0)
    if not nz:
        return p[:1] * 0
    return p[: nz[-1] + 1]


def _support(p: np.ndarray) -> List[int]:
    return [i for i, c in enumerate(p) if c != 0]


def _x_only(f: SymbolicRational, eps, tol):
    num = f.num.at_eps(eps).x_coeffs()
    base = (f.base ** f.power).at_eps(eps).x_coeffs()
    return _poly_trim(num, tol), _poly_trim(base, tol)


def _strip_x(p: np.ndarray) -> Tuple[np.ndarray, int]:
    sup = _support(p)
    j = sup[0] if sup else 0
    return p[j:], j


def match_solvable_form(pair0: CoefficientPair, eps=0, tol: float = 1e-12) -> Optional[SolvableForm]:
    """Recognize the exactly solvable canonical pair; ``None`` when it does not fit.

    Coefficients that depend on the spectral parameter are matched at ``eps``.
    """
    exact = pair0.lam.exact
    e0 = Fraction(eps) if exact else float(eps)
    ns, ds = _x_only(pair0.s0, e0, tol)
    nl, dl = _x_only(pair0.lam0, e0, tol)
    if not _support(ns) or not _support(nl):
        return None

    # s0 = c x^i / (d x^j (1 - b x^K))
    sup_n = _support(ns)
    if len(sup_n) != 1:
        return None
    i = sup_n[0]
    c = ns[i]
    ds, j = _strip_x(ds)
    sup_d = _support(ds)
    if len(sup_d) != 2 or sup_d[0] != 0:
        return None
    K = sup_d[1]
    d0 = ds[0]
    b = -ds[K] / d0
    N = i - j
    if K != N + 2:
        return None
    W = -c / d0

    # lambda0 x (1 - b x^K) must be c0 + c1 x^K
    E = np.zeros(K + 1, dtype=ds.dtype)
    if exact:
        E[...] = Fraction(0)
    E[0] = 1
    E[K] = -b
    target = np.convolve(np.convolve(nl, E), np.array([0, 1], dtype=nl.dtype))
    q, r = _polydiv(target, dl, exact)
    if exact:
        if any(x != 0 for x in r):
            return None
    elif r.size and np.max(np.abs(r)) > tol * max(1.0, np.max(np.abs(target))):
        return None
    q = _poly_trim(q, tol)
    if any(k not in (0, K) for k in _support(q)):
        return None
    c0 = q[0]
    c1 = q[K] if len(q) > K else 0
    m = -c0 / 2 - 1
    a = (c1 - 2 * (m + 1) * b) / 2
    try:
        return SolvableForm(float(a), float(b), float(N), float(m), float(W))
    except DomainError:
        return None


def _polydiv(num: np.ndarray, den: np.ndarray, exact: bool):
    """Ascending-coefficient polynomial division ``num = q den + r``."""
    num = list(num)
    den = list(_poly_trim(np.array(den), 0.0 if not exact else 0))
    while len(den) > 1 and den[-1] == 0:
        den.pop()
    if len(num) < len(den):
        return np.array([0], dtype=object if exact else float), np.array(num)
    q = [0] * (len(num) - len(den) + 1)
    rem = num[:]
    for k in range(len(q) - 1, -1, -1):
        coef = rem[k + len(den) - 1] / den[-1]
        q[k] = coef
        for t, dv in enumerate(den):
            rem[k + t] -= coef * dv
    r = rem[: len(den) - 1]
    return np.array(q, dtype=object if exact else float), np.array(r, dtype=object if exact else float)
