"""Weighted and Sobolev-type inner products and their Gram matrices.

Laguerre and Meixner products are evaluated exactly (factorial moments and
geometric power sums).  Meixner-Pollaczek products need quadrature against
``e^{(2 phi - pi) x} |Gamma(lam + i x)|^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, NonIntegrableError
from .families import DiffKind, FamilyId, apply_diff, pochhammer
from .numerics import (QuadratureSpec, exp_weight_moment, gamma_modsq,
                       integrate_line, series_against, truncation_half_width)
from .poly import Poly
from .psi import CaseKind, PsiParams, classify, psi_sequence

DEFAULT_QUAD_TOL = 1e-10
DEFAULT_GRAM_TOL = 1e-6


def _frac_poly(p: Poly) -> Poly:
    if not p.is_exact():
        raise DomainError("exact inner product needs rational coefficients")
    return p.to_fraction()


def ip_laguerre(f: Poly, g: Poly, alpha: int) -> Fraction:
    """``int_0^inf f g x**alpha e^{-x} dx`` for integer ``alpha >= -1``, exactly."""
    if alpha < -1 or int(alpha) != alpha:
        raise DomainError("alpha must be an integer >= -1")
    h = _frac_poly(f) * _frac_poly(g)
    if alpha == -1:
        if h.coeff(0) != 0:
            raise NonIntegrableError("alpha = -1 needs f(0) g(0) = 0")
        h = h.divide_by_x(1)
    else:
        h = Poly((Fraction(0),) * int(alpha) + h.coeffs)
    return sum((c * exp_weight_moment(k) for k, c in enumerate(h.coeffs)), Fraction(0))


def ip_laguerre_sobolev(f: Poly, g: Poly) -> Fraction:
    """``f(0) g(0) + int_0^inf f' g' e^{-x} dx``."""
    f, g = _frac_poly(f), _frac_poly(g)
    return f(0) * g(0) + ip_laguerre(f.deriv(), g.deriv(), 0)


def _decay_rate(phi: float) -> float:
    return min(2 * phi, 2 * (math.pi - phi))


def _integrate_weighted(h: Poly, weight, phi: float, quad: QuadratureSpec | None,
                        tol: float) -> float:
    hf = h.to_float()

    def integrand(x):
        return hf(x) * np.exp((2 * phi - math.pi) * x) * weight(x)

    if quad is None:
        width = truncation_half_width(integrand, _decay_rate(phi), tol)
        quad = QuadratureSpec(width, tolerance=tol)
    return integrate_line(integrand, quad)


def _check_phi(phi):
    if not 0 < phi < math.pi:
        raise DomainError("phi must lie in (0, pi)")


def ip_mp(f: Poly, g: Poly, lam: float, phi: float, quad: QuadratureSpec | None = None,
          tol: float = DEFAULT_QUAD_TOL) -> float:
    """``(1/2pi) int f g e^{(2 phi - pi) x} |Gamma(lam + i x)|^2 dx``.

    At ``lam = 0`` the weight behaves like ``1/x**2`` at the origin; the
    product ``f g`` must then vanish to second order there (true whenever
    ``f(0) = g(0) = 0``) and ``x**2`` is divided out exactly.
    """
    _check_phi(phi)
    if lam < 0:
        raise DomainError("lam must be nonnegative")
    h = f * g
    if lam == 0:
        if h.coeff(0) != 0 or h.coeff(1) != 0:
            raise NonIntegrableError("lam = 0 needs f g to vanish to second order at 0")
        h = h.divide_by_x(2)

        def weight(x):
            return gamma_modsq(1.0, x)
    else:
        def weight(x):
            return gamma_modsq(lam, x)
    return _integrate_weighted(h, weight, phi, quad, tol) / (2 * math.pi)


def ip_mp_sobolev(f: Poly, g: Poly, phi: float, quad: QuadratureSpec | None = None,
                  tol: float = DEFAULT_QUAD_TOL) -> float:
    """``f(0) g(0) + (1/(4 pi sin phi)) int (df)(dg) e^{(2phi-pi)x} pi/cosh(pi x) dx``
    with ``d`` the half-centred difference."""
    _check_phi(phi)
    df = apply_diff(DiffKind.HALF_CENTERED_DELTA, f)
    dg = apply_diff(DiffKind.HALF_CENTERED_DELTA, g)
    boundary = float(f(0)) * float(g(0))
    h = df * dg
    if h.is_zero():
        return boundary
    integral = _integrate_weighted(h, lambda x: gamma_modsq(0.5, x), phi, quad, tol)
    return boundary + integral / (4 * math.pi * math.sin(phi))


def _meixner_weight_poly(beta: int) -> Poly:
    """``Gamma(beta + k) / k!`` as a polynomial in k for integer ``beta >= 1``."""
    return pochhammer(Poly((Fraction(1), Fraction(1))), beta - 1)


def ip_meixner(f: Poly, g: Poly, beta: int, gamma) -> Fraction:
    """``sum_k f(k) g(k) gamma**k Gamma(beta + k) / k!`` for integer ``beta >= 0``.

    For ``beta = 0`` the k = 0 term is excluded and ``f(0) g(0) = 0`` is
    required; the remaining weight is ``1/k``.
    """
    gamma = Fraction(gamma)
    if beta < 0 or int(beta) != beta:
        raise DomainError("beta must be an integer >= 0")
    h = _frac_poly(f) * _frac_poly(g)
    if beta == 0:
        if h.coeff(0) != 0:
            raise NonIntegrableError("beta = 0 needs f(0) g(0) = 0")
        q = h.divide_by_x(1)
        return series_against(q, gamma) - q(Fraction(0))
    return series_against(h * _meixner_weight_poly(int(beta)), gamma)


def ip_meixner_sobolev(f: Poly, g: Poly, gamma) -> Fraction:
    """``f(0) g(0) + sum_k (Df)(k) (Dg)(k) gamma**k / (1 - gamma)``, D the forward difference."""
    gamma = Fraction(gamma)
    f, g = _frac_poly(f), _frac_poly(g)
    df = apply_diff(DiffKind.FORWARD_DELTA, f)
    dg = apply_diff(DiffKind.FORWARD_DELTA, g)
    if df.is_zero() or dg.is_zero():
        return f(0) * g(0)
    return f(0) * g(0) + series_against(df * dg, gamma) / (1 - gamma)


IP_TAGS = ("lag_weight", "lag_sobolev", "mp_weight", "mp_sobolev", "meix_weight", "meix_sobolev")


@dataclass(frozen=True)
class InnerProductSpec:
    tag: str
    alpha: int | None = None
    lam: float | None = None
    phi: float | None = None
    beta: int | None = None
    gamma: Fraction | None = None
    quad: QuadratureSpec | None = None
    quad_tol: float = DEFAULT_QUAD_TOL

    def __post_init__(self):
        if self.tag not in IP_TAGS:
            raise DomainError(f"unknown inner product {self.tag!r}")
        if self.tag.startswith("mp"):
            if self.phi is None:
                raise DomainError("MP inner products need phi")
            _check_phi(self.phi)
        if self.tag.startswith("meix"):
            if self.gamma is None or not 0 < self.gamma < 1:
                raise DomainError("Meixner inner products need 0 < gamma < 1")
            object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.tag == "lag_weight" and (self.alpha is None or self.alpha < -1):
            raise DomainError("lag_weight needs an integer alpha >= -1")
        if self.tag == "mp_weight" and (self.lam is None or self.lam < 0):
            raise DomainError("mp_weight needs lam >= 0")
        if self.tag == "meix_weight" and (self.beta is None or self.beta < 0):
            raise DomainError("meix_weight needs an integer beta >= 0")

    @property
    def exact(self) -> bool:
        return not self.tag.startswith("mp")

    @property
    def singular(self) -> bool:
        return ((self.tag == "lag_weight" and self.alpha == -1)
                or (self.tag == "mp_weight" and self.lam == 0)
                or (self.tag == "meix_weight" and self.beta == 0))

    def __call__(self, f: Poly, g: Poly):
        if self.tag == "lag_weight":
            return ip_laguerre(f, g, self.alpha)
        if self.tag == "lag_sobolev":
            return ip_laguerre_sobolev(f, g)
        if self.tag == "mp_weight":
            return ip_mp(f, g, self.lam, self.phi, self.quad, self.quad_tol)
        if self.tag == "mp_sobolev":
            return ip_mp_sobolev(f, g, self.phi, self.quad, self.quad_tol)
        if self.tag == "meix_weight":
            return ip_meixner(f, g, self.beta, self.gamma)
        return ip_meixner_sobolev(f, g, self.gamma)

    def describe(self) -> str:
        fields = {"alpha": self.alpha, "lam": self.lam, "phi": self.phi,
                  "beta": self.beta, "gamma": self.gamma}
        inner = ", ".join(f"{k}={v}" for k, v in fields.items() if v is not None)
        return f"{self.tag}({inner})"


# Uncorrected closed forms that direct summation contradicts; kept for the errata report.
def uncorrected_meixner_weight_norm(n: int, gamma) -> Fraction:
    return Fraction(math.factorial(n - 1) * math.factorial(n)) / Fraction(gamma) ** (n + 1)


def uncorrected_meixner_sobolev_norm(n: int, gamma) -> Fraction:
    return Fraction(math.factorial(n) ** 2) / Fraction(gamma) ** n


def predicted_norm(family, ip: InnerProductSpec, n: int):
    """Closed-form diagonal value ``<p_n, p_n>``, or None if no closed form applies."""
    fact = math.factorial
    if isinstance(family, PsiParams):
        return family.c ** n * fact(n) * fact(n - 1)
    tag, prm = family.tag, family.params
    if tag == "laguerre_m1" and ip.tag == "lag_weight" and ip.alpha == -1:
        return Fraction(1, n)
    if tag == "laguerre_m1" and ip.tag == "lag_sobolev":
        return Fraction(1)
    if tag == "laguerre" and ip.tag == "lag_weight" and prm["alpha"] == ip.alpha:
        return Fraction(fact(n + ip.alpha), fact(n))
    if tag == "mp0" and ip.tag == "mp_weight" and ip.lam == 0 and ip.phi == prm["phi"]:
        return 1.0 / n
    if tag == "mp0" and ip.tag == "mp_sobolev" and ip.phi == prm["phi"]:
        return 1.0
    if tag == "mp" and ip.tag == "mp_weight" and ip.lam == prm["lam"] and ip.phi == prm["phi"]:
        lam, phi = prm["lam"], prm["phi"]
        return math.gamma(n + 2 * lam) / ((2 * math.sin(phi)) ** (2 * lam) * fact(n))
    if tag == "meixner0" and ip.tag == "meix_weight" and ip.beta == 0 and ip.gamma == prm["gamma"]:
        return Fraction(fact(n - 1) * fact(n)) / ip.gamma ** n
    if tag == "meixner0" and ip.tag == "meix_sobolev" and ip.gamma == prm["gamma"]:
        if n == 0:
            return Fraction(1)
        return Fraction(fact(n) ** 2) / ip.gamma ** (n + 1)
    if tag == "meixner" and ip.tag == "meix_weight" and ip.beta == prm["beta"] and ip.gamma == prm["gamma"]:
        g, b = ip.gamma, ip.beta
        return Fraction(fact(n) * fact(b + n - 1)) / (g ** n * (1 - g) ** b)
    return None


@dataclass
class GramMatrix:
    indices: list
    entries: list
    predicted: list
    exact: bool
    family: str
    inner_product: str
    tolerance: float
    max_deviation: float = 0.0
    symmetry_deviation: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def passed(self) -> bool:
        if self.exact:
            return self.max_deviation == 0 and self.symmetry_deviation == 0
        return self.max_deviation <= self.tolerance and self.symmetry_deviation <= self.tolerance


def _deviation(value, target, exact: bool):
    if exact:
        return abs(Fraction(value) - Fraction(target))
    # relative once the target exceeds 1 in magnitude
    return abs(float(value) - float(target)) / max(1.0, abs(float(target)))


def default_start(ip: InnerProductSpec) -> int:
    return 1 if ip.singular else 0


def psi_substitution(p: PsiParams):
    """Map Psi_n to the variable of its classical family and pick the matching weight.

    Returns ``(x_of_u, ip)``: ``x_of_u`` is the linear Poly expressing x in the
    family variable u, and ``ip`` the singular-weight inner product in u.
    """
    from .representations import char_roots, phi_angle

    kind = classify(p)
    if kind is CaseKind.DOUBLE_ROOT:
        return Poly((Fraction(0), -p.b / (2 * p.a))), InnerProductSpec("lag_weight", alpha=-1)
    if kind is CaseKind.OSCILLATORY_ROOTS:
        s = math.sqrt(float(4 * p.c - p.b * p.b))
        phi = phi_angle(p)
        return Poly((0.0, s / float(p.a))), InnerProductSpec("mp_weight", lam=0.0, phi=phi)
    roots = char_roots(p)
    if not roots.exact:
        raise DomainError("real-root Psi Gram matrices need a rational-square discriminant")
    rm, rp = roots.values
    sq = rp - rm
    if p.b > 0:
        return Poly((Fraction(0), -sq / p.a)), InnerProductSpec("meix_weight", beta=0, gamma=rm / rp)
    return Poly((Fraction(0), sq / p.a)), InnerProductSpec("meix_weight", beta=0, gamma=rp / rm)


def gram(family, ip: InnerProductSpec | None, N: int, start: int | None = None,
         tol: float = DEFAULT_GRAM_TOL) -> GramMatrix:
    """N x N Gram matrix of ``family`` under ``ip`` with predicted diagonal values.

    ``family`` is a :class:`FamilyId` or a :class:`PsiParams`; for the latter
    ``ip`` may be None, in which case Psi_n is rewritten in the classical
    variable of its discriminant case and paired with the singular weight of
    that family (predicted diagonal ``c**n n! (n-1)!``).
    """
    if N < 1:
        raise DomainError("N must be positive")
    if isinstance(family, PsiParams):
        x_of_u, auto_ip = psi_substitution(family)
        ip = ip or auto_ip
        start = 1 if start is None else start
        seq = psi_sequence(family, start + N - 1)
        polys = [seq[n].compose(x_of_u) for n in range(start, start + N)]
        name = f"psi{family}"
    else:
        if ip is None:
            raise DomainError("an inner product is required for classical families")
        start = default_start(ip) if start is None else start
        polys = [family.poly(n) for n in range(start, start + N)]
        name = family.describe()
    indices = list(range(start, start + N))
    exact = ip.exact and all(p.is_exact() for p in polys)
    entries = [[ip(polys[i], polys[j]) for j in range(N)] for i in range(N)]
    predicted = []
    notes = []
    for i, n in enumerate(indices):
        row = []
        diag = predicted_norm(family, ip, n) if n >= 1 or not ip.singular else None
        if diag is None:
            notes.append(f"no closed form for index {n}; diagonal not checked")
        for j in range(N):
            if i == j:
                row.append(diag)
            else:
                row.append(Fraction(0) if exact else 0.0)
        predicted.append(row)
    zero = Fraction(0) if exact else 0.0
    max_dev = zero
    sym = zero
    for i in range(N):
        for j in range(N):
            if predicted[i][j] is not None:
                max_dev = max(max_dev, _deviation(entries[i][j], predicted[i][j], exact))
            sym = max(sym, _deviation(entries[i][j], entries[j][i], exact))
    return GramMatrix(indices, entries, predicted, exact, name, ip.describe(), tol,
                      max_dev, sym, notes)
