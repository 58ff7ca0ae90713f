"""The polynomials Psi_n(x; a, b, c) generated by exp[x f(z)].

Two independent constructions are provided: the three-term recurrence
``Psi_{n+1} = (a x + n b) Psi_n - c n (n-1) Psi_{n-1}`` and the binomial
convolution of the Taylor coefficients of ``f`` that comes from
differentiating the generating function.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .poly import Poly


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions or strings such as ``"5/2"``; floats must be exact binary."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    return Fraction(value)


class CaseKind(enum.Enum):
    DOUBLE_ROOT = "DoubleRoot"
    OSCILLATORY_ROOTS = "OscillatoryRoots"
    REAL_ROOTS = "RealRoots"


@dataclass(frozen=True)
class PsiParams:
    """Parameter triple (a, b, c) with ``a != 0`` and ``c > 0``.

    ``a = f'(0)``, ``b = f''(0) / f'(0)`` and ``c`` scales ``C_n = c n (n-1)``.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        if self.a == 0:
            raise DomainError("degenerate: Psi_1 not degree 1 (requires a != 0)")
        if self.c <= 0:
            raise DomainError("violates c > 0")

    @property
    def discriminant(self) -> Fraction:
        return self.b * self.b - 4 * self.c

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def classify(p: PsiParams) -> CaseKind:
    d = p.discriminant
    if d == 0:
        return CaseKind.DOUBLE_ROOT
    if d < 0:
        return CaseKind.OSCILLATORY_ROOTS
    return CaseKind.REAL_ROOTS


def psi_sequence(p: PsiParams, n: int) -> list[Poly]:
    """``[Psi_0, ..., Psi_n]`` from the three-term recurrence."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    prev, cur = Poly(), Poly((Fraction(1),))
    out = [cur]
    for k in range(n):
        step = Poly((k * p.b, p.a))
        prev, cur = cur, step * cur - prev * (p.c * k * (k - 1))
        out.append(cur)
    return out


def psi_recurrence(p: PsiParams, n: int) -> Poly:
    return psi_sequence(p, n)[n]


def f_taylor_coeffs(p: PsiParams, K: int) -> list[Fraction]:
    """Derivatives ``f^(k)(0)`` for ``k = 1..K``.

    Uses ``f^(k+1) = k b f^(k) - c k (k-1) f^(k-1)`` seeded with ``f'(0) = a``.
    """
    if K < 1:
        raise DomainError("K must be positive")
    d = [Fraction(0), p.a]  # d[k] = f^(k)(0); f(0) = 0
    for k in range(1, K):
        d.append(k * p.b * d[k] - p.c * k * (k - 1) * d[k - 1])
    return d[1:K + 1]


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def f_derivative_closed_form(p: PsiParams, k: int):
    """Closed form of ``f^(k)(0)`` in terms of the characteristic roots.

    ``a c / (R-(b R+ - 2c)) * Gamma(k) * (R+**k - R-**k)``; exact when the
    roots are rational, complex floating point otherwise (the result is then
    real up to rounding).  At a double root the k-th derivative is the limit
    ``a k! (b/2)**(k-1)``.
    """
    if k < 1:
        raise DomainError("k must be positive")
    d = p.discriminant
    if d == 0:
        return p.a * math.factorial(k) * (p.b / 2) ** (k - 1)
    root = _rational_sqrt(d)
    if root is not None:
        rp, rm = (p.b + root) / 2, (p.b - root) / 2
        pref = p.a * p.c / (rm * (p.b * rp - 2 * p.c))
        return pref * math.factorial(k - 1) * (rp ** k - rm ** k)
    sq = cmath.sqrt(float(d))
    b, c, a = float(p.b), float(p.c), float(p.a)
    rp, rm = (b + sq) / 2, (b - sq) / 2
    pref = a * c / (rm * (b * rp - 2 * c))
    return pref * math.gamma(k) * (rp ** k - rm ** k)


def psi_genfunc_sequence(p: PsiParams, n: int) -> list[Poly]:
    """``[Psi_0, ..., Psi_n]`` by the binomial convolution

    ``Psi_{m+1} = x * sum_k C(m, k) f^(m+1-k)(0) Psi_k``.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    out = [Poly((Fraction(1),))]
    if n == 0:
        return out
    d = [Fraction(0)] + f_taylor_coeffs(p, n)
    x = Poly((Fraction(0), Fraction(1)))
    for m in range(n):
        acc = Poly()
        for k in range(m + 1):
            acc = acc + out[k] * (math.comb(m, k) * d[m + 1 - k])
        out.append(x * acc)
    return out


def psi_from_genfunc(p: PsiParams, n: int) -> Poly:
    return psi_genfunc_sequence(p, n)[n]


def convergence_radius(p: PsiParams) -> float:
    kind = classify(p)
    if kind is CaseKind.DOUBLE_ROOT:
        return 2.0 / abs(float(p.b))
    if kind is CaseKind.OSCILLATORY_ROOTS:
        return 1.0 / math.sqrt(float(p.c))
    sq = math.sqrt(float(p.discriminant))
    b = float(p.b)
    return 1.0 / max(abs((b + sq) / 2), abs((b - sq) / 2))


def f_eval(p: PsiParams, z: float) -> float:
    """Evaluate ``f(z)`` inside its disc of convergence."""
    z = float(z)
    if abs(z) >= convergence_radius(p):
        raise DomainError(f"z = {z} is outside the radius of convergence {convergence_radius(p)}")
    a, b, c = float(p.a), float(p.b), float(p.c)
    kind = classify(p)
    if kind is CaseKind.DOUBLE_ROOT:
        w = b * z / 2
        return -(2 * a / b) * w / (w - 1)
    if kind is CaseKind.REAL_ROOTS:
        sq = math.sqrt(b * b - 4 * c)
        rp, rm = (b + sq) / 2, (b - sq) / 2
        return a / sq * math.log((1 - z * rm) / (1 - z * rp))
    sq = 1j * math.sqrt(4 * c - b * b)
    rp, rm = (b + sq) / 2, (b - sq) / 2
    val = a / sq * (cmath.log(1 - z * rm) - cmath.log(1 - z * rp))
    return val.real


def recurrence_coeffs(p: PsiParams, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(A_n, B_n, C_n) = (a, n b, c n (n-1))``."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    return p.a, n * p.b, p.c * n * (n - 1)


def favard_norm(p: PsiParams, mu0, n: int, start: int = 1) -> Fraction:
    """Norm product ``mu0 * (A_n / A_0) * prod_{k=start}^{n} C_k``.

    With ``start=1`` the product contains ``C_1 = 0``, so every norm with
    ``n >= 1`` vanishes.  ``start=2`` gives the shifted family value
    ``mu0 c**(n-1) n! (n-1)!``.
    """
    if start not in (1, 2):
        raise DomainError("start must be 1 or 2")
    if n < start - 1:
        raise DomainError(f"n must be at least {start - 1}")
    mu0 = parse_rational(mu0)
    a_n, _, _ = recurrence_coeffs(p, n)
    a_0, _, _ = recurrence_coeffs(p, 0)
    out = mu0 * a_n / a_0
    for k in range(start, n + 1):
        out *= recurrence_coeffs(p, k)[2]
    return out


CARLITZ = PsiParams(1, 0, 1)


def carlitz_T(n: int) -> Poly:
    """Carlitz polynomial ``T_n``, generated by ``exp[x arctan z]``."""
    return psi_recurrence(CARLITZ, n)
