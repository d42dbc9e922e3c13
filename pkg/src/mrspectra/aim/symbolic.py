"""Bivariate polynomials and rational functions for the AIM recurrences.

A :class:`BiPoly` stores ``c[i, j]`` for the monomial ``x**i * eps**j``. The
coefficient array is either ``object`` dtype holding :class:`fractions.Fraction`
(exact mode) or ``float64``. Differentiation in ``x`` is a coefficient
shift, so no numeric differencing ever happens.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Tuple, Union

import numpy as np

from ..errors import DomainError

Number = Union[int, float, Fraction]


def _as_exact(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _conv2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1),
                   dtype=a.dtype if a.dtype == object else float)
    if out.dtype == object:
        out[...] = Fraction(0)
    for i in range(a.shape[0]):
        row = a[i]
        if not np.any(row):
            continue
        for j in range(b.shape[0]):
            if np.any(b[j]):
                out[i + j] += np.convolve(row, b[j])
    return out


def _horner(coeffs, t):
    acc = coeffs[-1] * 0 + coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * t + c
    return acc


class BiPoly:
    """Polynomial in ``x`` (rows) and the spectral parameter ``eps`` (columns)."""

    __slots__ = ("c",)

    def __init__(self, coeffs, exact: bool = True):
        arr = np.array(coeffs, dtype=object if exact else float, ndmin=2)
        if exact:
            arr = np.vectorize(_as_exact, otypes=[object])(arr) if arr.size else arr
        self.c = self._trim(arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "BiPoly":
        obj = cls.__new__(cls)
        obj.c = cls._trim(arr)
        return obj

    @staticmethod
    def _trim(arr: np.ndarray) -> np.ndarray:
        rows = np.flatnonzero(np.any(arr != 0, axis=1))
        cols = np.flatnonzero(np.any(arr != 0, axis=0))
        if rows.size == 0:
            return arr[:1, :1] * 0
        return arr[: rows[-1] + 1, : cols[-1] + 1]

    # constructors
    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[int, int], Number], exact: bool = True) -> "BiPoly":
        if not terms:
            return cls.constant(0, exact)
        nx = max(i for i, _ in terms) + 1
        ne = max(j for _, j in terms) + 1
        arr = np.zeros((nx, ne), dtype=object if exact else float)
        if exact:
            arr[...] = Fraction(0)
        for (i, j), v in terms.items():
            arr[i, j] += _as_exact(v) if exact else float(v)
        return cls._wrap(arr)

    @classmethod
    def constant(cls, value: Number, exact: bool = True) -> "BiPoly":
        return cls([[value]], exact)

    @classmethod
    def x(cls, exact: bool = True) -> "BiPoly":
        return cls.from_terms({(1, 0): 1}, exact)

    @classmethod
    def eps(cls, exact: bool = True) -> "BiPoly":
        return cls.from_terms({(0, 1): 1}, exact)

    # properties
    @property
    def exact(self) -> bool:
        return self.c.dtype == object

    @property
    def deg_x(self) -> int:
        return self.c.shape[0] - 1

    @property
    def deg_eps(self) -> int:
        return self.c.shape[1] - 1

    def is_zero(self) -> bool:
        return not np.any(self.c != 0)

    def is_one(self) -> bool:
        return self.c.shape == (1, 1) and self.c[0, 0] == 1

    def depends_on_x(self) -> bool:
        return self.c.shape[0] > 1

    # arithmetic
    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if other.exact != self.exact:
                raise TypeError("cannot mix exact and float polynomials")
            return other
        return BiPoly.constant(other, self.exact)

    def __add__(self, other):
        other = self._coerce(other)
        shape = (max(self.c.shape[0], other.c.shape[0]), max(self.c.shape[1], other.c.shape[1]))
        out = np.zeros(shape, dtype=self.c.dtype)
        if self.exact:
            out[...] = Fraction(0)
        out[: self.c.shape[0], : self.c.shape[1]] += self.c
        out[: other.c.shape[0], : other.c.shape[1]] += other.c
        return BiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._wrap(-self.c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            scal = _as_exact(other) if self.exact else float(other)
            return BiPoly._wrap(self.c * scal)
        other = self._coerce(other)
        return BiPoly._wrap(_conv2(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = BiPoly.constant(1, self.exact)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    def __hash__(self):
        return hash((self.c.shape, tuple(self.c.ravel().tolist())))

    def dx(self) -> "BiPoly":
        if self.c.shape[0] == 1:
            return BiPoly._wrap(self.c * 0)
        k = np.arange(1, self.c.shape[0])
        if self.exact:
            k = k.astype(object)
        return BiPoly._wrap(self.c[1:] * k[:, None])

    # evaluation
    def at_x(self, x0) -> "BiPoly":
        """Substitute ``x = x0``; returns a polynomial in eps only."""
        t = _as_exact(x0) if self.exact else float(x0)
        row = _horner(list(self.c), t)
        return BiPoly._wrap(np.asarray(row, dtype=self.c.dtype)[None, :])

    def at_eps(self, e0) -> "BiPoly":
        """Substitute ``eps = e0``; returns a polynomial in x only."""
        t = _as_exact(e0) if self.exact else float(e0)
        col = _horner(list(self.c.T), t)
        return BiPoly._wrap(np.asarray(col, dtype=self.c.dtype)[:, None])

    def eps_coeffs(self) -> np.ndarray:
        """Coefficients in eps (ascending) of an x-free polynomial."""
        if self.depends_on_x():
            raise ValueError("polynomial still depends on x")
        return self.c[0].copy()

    def x_coeffs(self) -> np.ndarray:
        if self.c.shape[1] > 1:
            raise ValueError("polynomial still depends on eps")
        return self.c[:, 0].copy()

    def __call__(self, x, eps):
        return self.at_x(x).at_eps(eps).c[0, 0]

    def __repr__(self):
        terms = []
        for (i, j), v in np.ndenumerate(self.c):
            if v != 0:
                terms.append(f"{v}*x^{i}*e^{j}")
        return "BiPoly(" + (" + ".join(terms) or "0") + ")"


class SymbolicRational:
    """``num / base**power`` with polynomial ``num`` and ``base``.

    Keeping a fixed ``base`` makes the AIM recurrences close under their own
    arithmetic: every iterate shares the base of the starting pair.
    """

    __slots__ = ("num", "base", "power")

    def __init__(self, num: BiPoly, base: BiPoly = None, power: int = 1):
        if base is None:
            base = BiPoly.constant(1, num.exact)
            power = 0
        if base.is_zero():
            raise DomainError("denominator is identically zero")
        if base.exact != num.exact:
            raise TypeError("mixed exact/float operands")
        if base.is_one():
            power = 0
        self.num, self.base, self.power = num, base, int(power)

    @classmethod
    def polynomial(cls, p: BiPoly) -> "SymbolicRational":
        return cls(p)

    @property
    def exact(self) -> bool:
        return self.num.exact

    def _lift(self, power: int) -> BiPoly:
        return self.num * self.base ** (power - self.power)

    def _common(self, other: "SymbolicRational"):
        if not isinstance(other, SymbolicRational):
            other = SymbolicRational(self.num._coerce(other))
        if other.base.is_one() or other.base == self.base:
            return self, SymbolicRational(other.num, self.base, other.power), self.base
        if self.base.is_one():
            return SymbolicRational(self.num, other.base, 0), other, other.base
        # different bases: combine over the product
        base = self.base * other.base
        p = max(self.power, other.power)
        a = self.num * self.base ** (p - self.power) * other.base ** p
        b = other.num * other.base ** (p - other.power) * self.base ** p
        return SymbolicRational(a, base, p), SymbolicRational(b, base, p), base

    def __add__(self, other):
        a, b, base = self._common(other)
        p = max(a.power, b.power)
        return SymbolicRational(a._lift(p) + b._lift(p), base, p)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicRational(-self.num, self.base, self.power)

    def __sub__(self, other):
        return self + (-other if isinstance(other, SymbolicRational) else -1 * other)

    def __mul__(self, other):
        if not isinstance(other, SymbolicRational):
            return SymbolicRational(self.num * other, self.base, self.power)
        a, b, base = self._common(other)
        return SymbolicRational(a.num * b.num, base, a.power + b.power)

    __rmul__ = __mul__

    def dx(self) -> "SymbolicRational":
        """Exact x-derivative: ``(num' base - power num base') / base**(power+1)``."""
        if self.power == 0:
            return SymbolicRational(self.num.dx(), self.base, 0)
        num = self.num.dx() * self.base - self.num * self.base.dx() * self.power
        return SymbolicRational(num, self.base, self.power + 1)

    def at_x(self, x0) -> "SymbolicRational":
        base = self.base.at_x(x0)
        if base.is_zero():
            raise DomainError(f"x0 = {x0} is a pole for every eps")
        return SymbolicRational(self.num.at_x(x0), base, self.power)

    def evaluate(self, x, eps):
        den = self.base(x, eps) ** self.power
        if den == 0:
            raise DomainError(f"pole at x = {x}, eps = {eps}")
        return self.num(x, eps) / den

    def degree(self) -> int:
        return max(self.num.deg_x, self.num.deg_eps,
                   self.power * max(self.base.deg_x, self.base.deg_eps))

    def equals(self, other: "SymbolicRational") -> bool:
        """Identity as rational functions (cross-multiplied)."""
        lhs = self.num * other.base ** other.power
        rhs = other.num * self.base ** self.power
        return (lhs - rhs).is_zero()

    def __repr__(self):
        return f"SymbolicRational(({self.num}) / ({self.base})^{self.power})"
