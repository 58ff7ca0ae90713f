"""Closed-form representations of Psi_n through Laguerre, Meixner-Pollaczek
and Meixner polynomials, checked against the recurrence."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CaseError, DomainError
from .families import laguerre, meixner, mp_poly
from .poly import Poly, max_relative_deviation
from .psi import CaseKind, PsiParams, _rational_sqrt, classify, psi_sequence

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class CharRoots:
    """Roots of ``t**2 - b t + c``.

    For real roots ``values = (R-, R+)`` (Fractions when the discriminant is a
    rational square); for a double root both entries coincide; for complex
    roots ``values = (Re R, Im R+)``.
    """

    kind: CaseKind
    values: tuple
    exact: bool


def char_roots(p: PsiParams) -> CharRoots:
    kind = classify(p)
    d = p.discriminant
    if kind is CaseKind.DOUBLE_ROOT:
        r = p.b / 2
        return CharRoots(kind, (r, r), True)
    if kind is CaseKind.OSCILLATORY_ROOTS:
        root = _rational_sqrt(-d)
        if root is not None:
            return CharRoots(kind, (p.b / 2, root / 2), True)
        return CharRoots(kind, (float(p.b) / 2, math.sqrt(float(-d)) / 2), False)
    root = _rational_sqrt(d)
    if root is not None:
        return CharRoots(kind, ((p.b - root) / 2, (p.b + root) / 2), True)
    sq = math.sqrt(float(d))
    b = float(p.b)
    return CharRoots(kind, ((b - sq) / 2, (b + sq) / 2), False)


def phi_angle(p: PsiParams) -> float:
    """Angle phi in (0, pi) with ``R+/sqrt(c) = e^{i phi}`` (complex-root case only)."""
    if classify(p) is not CaseKind.OSCILLATORY_ROOTS:
        raise CaseError("phi is defined only when b^2 - 4c < 0")
    return math.atan2(math.sqrt(float(4 * p.c - p.b * p.b)), float(p.b))


def _double_root_literal(p: PsiParams, n: int) -> Poly:
    """Double-root formula without the leading x, kept to document that omission."""
    half_b = p.b / 2
    inner = Poly((Fraction(0), -2 * p.a / p.b))
    return laguerre(n - 1, 1).compose(inner) * (p.a * half_b ** (n - 1) * math.factorial(n - 1))


def _double_root(p: PsiParams, n: int) -> Poly:
    x = Poly((Fraction(0), Fraction(1)))
    return x * _double_root_literal(p, n)


def _oscillatory(p: PsiParams, n: int, exact: bool) -> Poly:
    s2 = 4 * p.c - p.b * p.b
    phi = phi_angle(p)
    if exact:
        s = _rational_sqrt(s2)
        sqrt_c = _rational_sqrt(p.c)
        mp = mp_poly(n - 1, 1, HALF_PI, exact=True)
        scaled = mp.scale(p.a / s)
        x = Poly((Fraction(0), Fraction(1)))
        return x * scaled * (math.factorial(n - 1) * sqrt_c ** (n - 1) * p.a)
    s = math.sqrt(float(s2))
    mp = mp_poly(n - 1, 1, phi)
    scaled = mp.scale(float(p.a) / s)
    x = Poly((0.0, 1.0))
    pref = math.factorial(n - 1) * float(p.c) ** ((n - 1) / 2) * float(p.a)
    return x * scaled * pref


def _real_roots(p: PsiParams, n: int) -> Poly:
    roots = char_roots(p)
    rm, rp = roots.values
    if roots.exact:
        sq = rp - rm
        x = Poly((Fraction(0), Fraction(1)))
        one = Fraction(1)
    else:
        sq = math.sqrt(float(p.discriminant))
        x = Poly((0.0, 1.0))
        one = 1.0
    a = p.a if roots.exact else float(p.a)
    if p.b > 0:
        lead, gamma, arg = rm, rm / rp, Poly((-one, -a / sq))
    else:
        lead, gamma, arg = rp, rp / rm, Poly((-one, a / sq))
    return x * meixner(n - 1, 2, gamma).compose(arg) * (a * lead ** (n - 1))


def oscillatory_exact_available(p: PsiParams) -> bool:
    return (classify(p) is CaseKind.OSCILLATORY_ROOTS and p.b == 0
            and _rational_sqrt(p.c) is not None)


def represent(p: PsiParams, n: int, exact: bool | None = None) -> Poly:
    """Psi_n(x; a, b, c) through the classical family selected by the discriminant.

    Double root: ``a x (b/2)**(n-1) (n-1)! L_{n-1}^(1)(-2 a x / b)``.
    Complex roots: ``(n-1)! c**((n-1)/2) a x P_{n-1}^(1)(a x / sqrt(4c - b^2); phi)``.
    Real roots: ``a x R**(n-1) M_{n-1}^(2)(-+a x / sqrt(b^2 - 4c) - 1; ratio)``
    with ``R = R-`` and ratio ``R-/R+`` for ``b > 0`` (mirrored for ``b < 0``).

    For complex roots ``exact=None`` selects the Gaussian-rational path when
    ``b = 0`` and ``c`` is a rational square.
    """
    if n < 1:
        raise DomainError("representations are stated for n >= 1; Psi_0 = 1")
    kind = classify(p)
    if kind is CaseKind.DOUBLE_ROOT:
        return _double_root(p, n)
    if kind is CaseKind.OSCILLATORY_ROOTS:
        can = oscillatory_exact_available(p)
        if exact is None:
            exact = can
        if exact and not can:
            raise DomainError("exact complex-root path needs b = 0 and c a rational square")
        return _oscillatory(p, n, exact)
    return _real_roots(p, n)


@dataclass
class RepresentationEntry:
    n: int
    mode: str
    deviation: float
    passed: bool


@dataclass
class RepresentationReport:
    params: PsiParams
    kind: CaseKind
    nmax: int
    tol: float
    entries: list = field(default_factory=list)
    errata: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)


def verify_representation(p: PsiParams, nmax: int, tol: float = 1e-10) -> RepresentationReport:
    """Compare :func:`represent` with the recurrence for ``1 <= n <= nmax``."""
    if nmax < 1:
        raise DomainError("nmax must be at least 1")
    reference = psi_sequence(p, nmax)
    report = RepresentationReport(p, classify(p), nmax, tol)
    for n in range(1, nmax + 1):
        rep = represent(p, n)
        if rep.is_exact():
            ok = rep == reference[n]
            dev = 0.0 if ok else max_relative_deviation(rep, reference[n])
            report.entries.append(RepresentationEntry(n, "exact", dev, ok))
        else:
            dev = max_relative_deviation(rep, reference[n])
            report.entries.append(RepresentationEntry(n, "numeric", dev, dev < tol))
    if report.kind is CaseKind.DOUBLE_ROOT:
        mismatched = [n for n in range(1, nmax + 1)
                      if _double_root_literal(p, n).degree != reference[n].degree]
        report.errata.append({
            "name": "double-root representation lacks factor x",
            "uncorrected": "a (b/2)^(n-1) (n-1)! L_{n-1}^(1)(-2ax/b)",
            "corrected": "a x (b/2)^(n-1) (n-1)! L_{n-1}^(1)(-2ax/b)",
            "degree_mismatch_at": mismatched,
            "confirmed": len(mismatched) == nmax,
        })
    return report
