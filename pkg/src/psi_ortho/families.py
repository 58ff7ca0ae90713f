"""Terminating hypergeometric sums and the Laguerre, Meixner-Pollaczek and
Meixner families, including their extensions to alpha = -1, lambda = 0 and
beta = 0.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

from .errors import DomainError, InternalConsistencyError, PoleError
from .poly import GaussianRational, Poly

HALF_PI = math.pi / 2


def pochhammer(a, k: int):
    """Rising factorial ``a (a+1) ... (a+k-1)``; ``a`` may be a Poly."""
    out = a * 0 + 1
    for j in range(k):
        out = out * (a + j)
    return out


@dataclass(frozen=True)
class HypSpec:
    """Parameters of a terminating ``rFs`` whose first numerator is ``-n``.

    Numerator parameters and the argument may be scalars or Polys in x;
    denominator parameters must be scalars.
    """

    numer: tuple
    denom: tuple
    arg: object
    n: int

    def __post_init__(self):
        object.__setattr__(self, "numer", tuple(self.numer))
        object.__setattr__(self, "denom", tuple(self.denom))
        if self.n < 0:
            raise DomainError("truncation order must be nonnegative")
        if not self.numer or self.numer[0] != -self.n:
            raise DomainError("first numerator parameter must be -n")
        for b in self.denom:
            if isinstance(b, Poly):
                raise DomainError("denominator parameters must be scalars")


def hyp_terminating(spec: HypSpec):
    """Finite sum ``sum_{k=0}^{n} prod (a_j)_k / (prod (b_j)_k k!) * z**k``.

    Exact when every input is rational.  A denominator Pochhammer that
    vanishes before termination raises :class:`PoleError`.
    """
    for b in spec.denom:
        for k in range(spec.n):
            if b + k == 0:
                raise PoleError(f"denominator parameter {b} hits zero at k = {k}")
    term = 1
    total = 1
    for k in range(spec.n):
        num = 1
        for a in spec.numer:
            num = num * (a + k)
        den = k + 1
        for b in spec.denom:
            den = den * (b + k)
        if isinstance(den, int):
            den = Fraction(den)
        term = term * num * spec.arg / den
        total = total + term
    return total


def _exact(*values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _num(v):
    """Normalise user numbers: ints become Fractions, everything else float."""
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    return float(v)


def _x_poly(exact: bool) -> Poly:
    return Poly((Fraction(0), Fraction(1))) if exact else Poly((0.0, 1.0))


def laguerre(n: int, alpha) -> Poly:
    """Laguerre ``L_n^(alpha)(x) = (alpha+1)_n / n! * 1F1(-n; alpha+1; x)``."""
    alpha = _num(alpha)
    if alpha == -1:
        raise DomainError("alpha = -1 is the extended family; use laguerre_m1")
    if not alpha > -1:
        raise DomainError("Laguerre polynomials require alpha > -1")
    exact = _exact(alpha)
    x = _x_poly(exact)
    f = hyp_terminating(HypSpec((-n,), (alpha + 1,), x, n))
    pref = pochhammer(alpha + 1, n) / math.factorial(n)
    return _as_poly(f) * pref


def laguerre_m1(n: int) -> Poly:
    """Extended Laguerre ``L_n^(-1) = -(x/n) L_{n-1}^(1)``, ``L_0^(-1) = 1``."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if n == 0:
        return Poly((Fraction(1),))
    return _x_poly(True) * laguerre(n - 1, 1) * Fraction(-1, n)


def _as_poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly((v,))


def _gaussian_real_part(p: Poly, what: str) -> Poly:
    out = []
    for c in p.coeffs:
        if c.im != 0:
            raise InternalConsistencyError(f"{what}: nonzero imaginary part {c.im}")
        out.append(c.re)
    return Poly(out)


def unit_phase(phi: float) -> GaussianRational:
    """Exact Gaussian rational on the unit circle approximating ``e^{i phi}``.

    Uses ``((1 - t^2) + 2 i t) / (1 + t^2)`` with ``t = tan(phi/2)`` taken as an
    exact binary rational, so the modulus is exactly 1 and only the angle
    carries rounding (about one ulp).  ``phi = pi/2`` maps to ``i`` exactly.
    """
    if phi == HALF_PI:
        return GaussianRational(0, 1)
    t = Fraction(math.tan(phi / 2))
    den = 1 + t * t
    return GaussianRational((1 - t * t) / den, 2 * t / den)


def mp_poly(n: int, lam, phi: float, exact: bool = False) -> Poly:
    """Meixner-Pollaczek ``P_n^(lam)(x; phi)`` from its 2F1 definition.

    The complex sum ``(2 lam)_n / n! e^{i n phi} 2F1(-n, lam + i x; 2 lam;
    1 - e^{-2 i phi})`` is expanded in x in Gaussian-rational arithmetic and
    its imaginary parts are required to cancel exactly.  With ``exact=True``
    (``phi = pi/2``, rational ``lam``) the rational coefficients are
    returned; otherwise they are rounded to floats.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if not lam > 0:
        raise DomainError("Meixner-Pollaczek polynomials require lam > 0; use mp0 for lam = 0")
    if not 0 < phi < math.pi:
        raise DomainError("phi must lie in (0, pi)")
    if exact and (phi != HALF_PI or not _exact(lam)):
        raise DomainError("exact mode requires phi = pi/2 and rational lam")
    lam = Fraction(lam)
    u = unit_phase(phi)
    w = 1 - u.conjugate() ** 2
    shifted = Poly((GaussianRational(lam), GaussianRational(0, 1)))
    f = hyp_terminating(HypSpec((-n, shifted), (2 * lam,), w, n))
    pref = pochhammer(2 * lam, n) / math.factorial(n)
    out = _gaussian_real_part(_as_poly(f) * (u ** n) * pref, f"P_{n}^({lam})")
    return out if exact else out.to_float()


def mp0(n: int, phi: float, exact: bool = False) -> Poly:
    """Extended family ``P_n^(0)(x; phi) = (2x/n) sin(phi) P_{n-1}^(1)(x; phi)``."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if not 0 < phi < math.pi:
        raise DomainError("phi must lie in (0, pi)")
    if exact:
        if phi != HALF_PI:
            raise DomainError("exact mode requires phi = pi/2")
        if n == 0:
            return Poly((Fraction(1),))
        return _x_poly(True) * mp_poly(n - 1, 1, phi, exact=True) * Fraction(2, n)
    if n == 0:
        return Poly((1.0,))
    return _x_poly(False) * mp_poly(n - 1, 1, phi) * (2 * math.sin(phi) / n)


def meixner(n: int, beta, gamma) -> Poly:
    """Meixner ``M_n^(beta)(x; gamma) = (beta)_n 2F1(-n, -x; beta; 1 - 1/gamma)``."""
    beta, gamma = _num(beta), _num(gamma)
    if not beta > 0:
        raise DomainError("Meixner polynomials require beta > 0; use meixner0 for beta = 0")
    if not 0 < gamma < 1:
        raise DomainError("gamma must lie in (0, 1)")
    exact = _exact(beta, gamma)
    minus_x = -_x_poly(exact)
    f = hyp_terminating(HypSpec((-n, minus_x), (beta,), 1 - 1 / gamma, n))
    return _as_poly(f) * pochhammer(beta, n)


def meixner0(n: int, gamma) -> Poly:
    """Extended family ``M_n^(0)(x; gamma) = (1 - 1/gamma) x M_{n-1}^(2)(x - 1; gamma)``."""
    gamma = _num(gamma)
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if not 0 < gamma < 1:
        raise DomainError("gamma must lie in (0, 1)")
    exact = _exact(gamma)
    if n == 0:
        return Poly((Fraction(1),)) if exact else Poly((1.0,))
    one = Fraction(1) if exact else 1.0
    shifted = meixner(n - 1, 2, gamma).shift(-one)
    return _x_poly(exact) * shifted * (1 - 1 / gamma)


class DiffKind(enum.Enum):
    DERIVATIVE = "derivative"
    HALF_CENTERED_DELTA = "delta"
    REAL_STEP_DELTA = "delta_real"
    FORWARD_DELTA = "Delta"


def _imaginary_half_difference(p: Poly) -> Poly:
    """``(p(x + i/2) - p(x - i/2)) / i``, real for real ``p``."""
    if p.is_exact():
        h = GaussianRational(0, Fraction(1, 2))
        lifted = p.map(GaussianRational)
        diff = (lifted.shift(h) - lifted.shift(-h)) * GaussianRational(0, -1)
        return _gaussian_real_part(diff, "imaginary half difference")
    diff = (p.map(complex).shift(0.5j) - p.map(complex).shift(-0.5j)) * (-1j)
    return Poly(c.real for c in diff.coeffs)


def apply_diff(kind: DiffKind, p: Poly) -> Poly:
    """Apply a lowering operator to ``p``.

    ``DERIVATIVE``: d/dx.  ``FORWARD_DELTA``: ``f(x+1) - f(x)``.
    ``HALF_CENTERED_DELTA``: the centred difference with imaginary half
    steps, ``(f(x + i/2) - f(x - i/2)) / i``, the operator under which
    ``delta P_n^(lam) = 2 sin(phi) P_{n-1}^(lam+1/2)`` holds.
    ``REAL_STEP_DELTA``: ``f(x+1/2) - f(x-1/2)`` with real steps.  It agrees
    with the previous operator up to degree 2 and differs from degree 3 on.
    """
    kind = DiffKind(kind)
    if kind is DiffKind.DERIVATIVE:
        return p.deriv()
    exact = p.is_exact()
    if kind is DiffKind.HALF_CENTERED_DELTA:
        return _imaginary_half_difference(p)
    if kind is DiffKind.REAL_STEP_DELTA:
        h = Fraction(1, 2) if exact else 0.5
        return p.shift(h) - p.shift(-h)
    return p.shift(Fraction(1) if exact else 1.0) - p


@dataclass(frozen=True)
class FamilyId:
    """One of Laguerre(alpha), LaguerreM1, MP(lam, phi), MP0(phi),
    Meixner(beta, gamma), Meixner0(gamma)."""

    tag: str
    params: dict = field(default_factory=dict, compare=False, hash=False)

    TAGS = ("laguerre", "laguerre_m1", "mp", "mp0", "meixner", "meixner0")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise DomainError(f"unknown family {self.tag!r}")
        p = self.params
        if self.tag == "laguerre" and not p["alpha"] > -1:
            raise DomainError("Laguerre requires alpha > -1")
        if self.tag in ("mp", "mp0") and not 0 < p["phi"] < math.pi:
            raise DomainError("phi must lie in (0, pi)")
        if self.tag == "mp" and not p["lam"] > 0:
            raise DomainError("MP requires lam > 0")
        if self.tag in ("meixner", "meixner0") and not 0 < p["gamma"] < 1:
            raise DomainError("gamma must lie in (0, 1)")
        if self.tag == "meixner" and not p["beta"] > 0:
            raise DomainError("Meixner requires beta > 0")

    def poly(self, n: int) -> Poly:
        p = self.params
        if self.tag == "laguerre":
            return laguerre(n, p["alpha"])
        if self.tag == "laguerre_m1":
            return laguerre_m1(n)
        if self.tag == "mp":
            return mp_poly(n, p["lam"], p["phi"])
        if self.tag == "mp0":
            return mp0(n, p["phi"], exact=p.get("exact", False))
        if self.tag == "meixner":
            return meixner(n, p["beta"], p["gamma"])
        return meixner0(n, p["gamma"])

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.tag}({inner})"


def laguerre_family(alpha) -> FamilyId:
    return FamilyId("laguerre", {"alpha": _num(alpha)})


def laguerre_m1_family() -> FamilyId:
    return FamilyId("laguerre_m1", {})


def mp_family(lam, phi) -> FamilyId:
    return FamilyId("mp", {"lam": float(lam), "phi": float(phi)})


def mp0_family(phi, exact: bool = False) -> FamilyId:
    return FamilyId("mp0", {"phi": float(phi), "exact": exact})


def meixner_family(beta, gamma) -> FamilyId:
    return FamilyId("meixner", {"beta": _num(beta), "gamma": _num(gamma)})


def meixner0_family(gamma) -> FamilyId:
    return FamilyId("meixner0", {"gamma": _num(gamma)})


# Limit lemma ----------------------------------------------------------------

def lemma_rhs(numer0, denom_rest0, arg, n: int):
    """Right-hand side of the limit lemma for ``(omega)_n rFs(a(omega); omega, b(omega); z)``.

    ``x Gamma(n) prod a_j(0) / prod_{j>=2} b_j(0) * rFs(a(0)+1; 2, b(0)+1; z)``
    where ``numer0 = [a_1(0), ...]`` with ``a_1(0) = -n``.
    """
    if n < 1:
        raise DomainError("the lemma is stated for n >= 1")
    pref = math.factorial(n - 1)
    for a in numer0:
        pref = pref * a
    for b in denom_rest0:
        pref = pref / b
    inner = hyp_terminating(HypSpec(tuple(a + 1 for a in numer0),
                                    (2,) + tuple(b + 1 for b in denom_rest0),
                                    arg, n - 1))
    return arg * pref * inner


def lemma_limit_poly(family: FamilyId, n: int) -> Poly:
    """The omega -> 0 limit of a family, assembled from :func:`lemma_rhs`.

    Gives L_n^(-1), P_n^(0) or M_n^(0) for ``n >= 1`` without using the
    extension formulas, so it can be compared against them.
    """
    p = family.params
    if family.tag == "laguerre_m1":
        x = _x_poly(True)
        return _as_poly(lemma_rhs((-n,), (), x, n)) / math.factorial(n)
    if family.tag == "mp0":
        u = unit_phase(p["phi"])
        w = 1 - u.conjugate() ** 2
        ix = Poly((GaussianRational(0), GaussianRational(0, 1)))
        val = _as_poly(lemma_rhs((-n, ix), (), w, n)) * (u ** n) / math.factorial(n)
        return _gaussian_real_part(val, "lemma MP limit").to_float()
    if family.tag == "meixner0":
        gamma = p["gamma"]
        exact = _exact(gamma)
        minus_x = -_x_poly(exact)
        return _as_poly(lemma_rhs((-n, minus_x), (), 1 - 1 / gamma, n))
    raise DomainError(f"{family.tag} is not an extended family")


def family_at_omega(family: FamilyId, n: int, omega) -> Poly:
    """Family member at the regular parameter value ``omega`` close to the singular one.

    Laguerre: alpha = omega - 1; MP: lam = omega / 2; Meixner: beta = omega.
    """
    p = family.params
    if family.tag == "laguerre_m1":
        return laguerre(n, omega - 1)
    if family.tag == "mp0":
        return mp_poly(n, omega / 2, p["phi"])
    if family.tag == "meixner0":
        return meixner(n, omega, p["gamma"])
    raise DomainError(f"{family.tag} is not an extended family")


DEFAULT_GRID = (-2, -1, 0, 1, 2)


def limit_lemma_residual(family: FamilyId, n: int, omega, grid=DEFAULT_GRID) -> float:
    """Sup over ``grid`` of ``|family(omega) - extension formula|``; O(omega)."""
    if n < 1:
        raise DomainError("n must be positive")
    if not omega > 0:
        raise DomainError("omega must be positive")
    lhs = family_at_omega(family, n, omega)
    rhs = family.poly(n)
    return float(max(abs(lhs(x) - rhs(x)) for x in grid))


def extrapolated_limit(family: FamilyId, n: int) -> Poly:
    """Extrapolate ``family_at_omega`` to omega = 0.

    The family is a polynomial of degree <= n in omega, so Lagrange
    extrapolation from n + 1 nodes is exact (up to rounding on float paths).
    """
    exact = family.tag != "mp0" and all(
        _exact(v) for v in family.params.values() if isinstance(v, Number))
    one = Fraction(1) if exact else 1.0
    nodes = [one * (j + 1) / (2 * (n + 1)) for j in range(n + 1)]
    values = [family_at_omega(family, n, w) for w in nodes]
    out = Poly()
    for j, wj in enumerate(nodes):
        weight = one
        for k, wk in enumerate(nodes):
            if k != j:
                weight = weight * (0 - wk) / (wj - wk)
        out = out + values[j] * weight
    return out
