"""Dense univariate polynomials over an arbitrary coefficient ring.

Coefficients are stored in ascending degree order.  The same class serves
exact rational polynomials (``Fraction`` coefficients), real ones
(``float``) and the complex / Gaussian-rational intermediates that appear
while expanding hypergeometric sums.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Number

import numpy as np


def _is_zero(c) -> bool:
    return c == 0


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        num = self * other.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __pow__(self, k: int):
        out = GaussianRational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


class Poly:
    """Immutable polynomial ``sum(coeffs[k] * x**k)``.

    Trailing zero coefficients are trimmed, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, one=1) -> "Poly":
        return cls((0 * one, one))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def linear(cls, c0, c1) -> "Poly":
        return cls((c0, c1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (Number, GaussianRational)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Number, GaussianRational)):
            return Poly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if _is_zero(ci):
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return Poly(out)

    def __rmul__(self, other):
        if isinstance(other, (Number, GaussianRational)):
            return Poly(other * c for c in self.coeffs)
        return NotImplemented

    def __truediv__(self, scalar):
        if isinstance(scalar, Poly):
            return NotImplemented
        return Poly(c / scalar for c in self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    # calculus and transformations -----------------------------------------

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar, a Poly or an ndarray."""
        if isinstance(x, np.ndarray):
            return np.polynomial.polynomial.polyval(x, self.to_float().coeffs or (0.0,))
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, h) -> "Poly":
        """Return ``p(x + h)`` via the binomial expansion."""
        n = len(self.coeffs)
        out = [0] * n
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            hp = 1
            for j in range(k, -1, -1):
                out[j] = out[j] + c * comb(k, j) * hp
                hp = hp * h
        return Poly(out)

    def scale(self, s) -> "Poly":
        """Return ``p(s * x)``."""
        out = []
        sp = 1
        for c in self.coeffs:
            out.append(c * sp)
            sp = sp * s
        return Poly(out)

    def divide_by_x(self, k: int = 1) -> "Poly":
        """Exact division by ``x**k``; the low coefficients must vanish."""
        if any(not _is_zero(c) for c in self.coeffs[:k]):
            raise ValueError(f"polynomial is not divisible by x^{k}")
        return Poly(self.coeffs[k:])

    def map(self, fn) -> "Poly":
        return Poly(fn(c) for c in self.coeffs)

    def to_float(self) -> "Poly":
        return Poly(float(c) for c in self.coeffs)

    def to_fraction(self) -> "Poly":
        return Poly(Fraction(c) for c in self.coeffs)

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)


X = Poly((Fraction(0), Fraction(1)))
ONE = Poly((Fraction(1),))


def max_relative_deviation(candidate: Poly, reference: Poly, zero_floor: float = 1e-13) -> float:
    """Largest coefficientwise relative deviation of ``candidate`` from ``reference``.

    Coefficients where the reference vanishes, or sits at rounding level
    (below ``zero_floor`` times the largest reference coefficient), are
    measured relative to that largest coefficient instead.
    """
    n = max(len(candidate), len(reference))
    scale = max((abs(complex(c)) for c in reference.coeffs), default=0.0) or 1.0
    floor = zero_floor * scale
    worst = 0.0
    for k in range(n):
        r = complex(reference.coeff(k))
        d = abs(complex(candidate.coeff(k)) - r)
        worst = max(worst, d / (abs(r) if abs(r) > floor else scale))
    return worst
