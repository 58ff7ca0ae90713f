"""Verification suites that cross-check every construction in the package.

Each suite returns a :class:`Report` holding one :class:`Check` per claim.
Exact checks require equality of rationals; numeric checks compare a
deviation against a tolerance.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import DomainError
from .families import (DiffKind, apply_diff, extrapolated_limit, laguerre, laguerre_m1,
                       laguerre_m1_family, lemma_limit_poly, limit_lemma_residual, meixner,
                       meixner0, meixner0_family, mp0, mp0_family, mp_poly)
from .inner_products import (DEFAULT_GRAM_TOL, InnerProductSpec, gram, ip_meixner,
                             ip_meixner_sobolev, ip_mp, predicted_norm,
                             uncorrected_meixner_sobolev_norm, uncorrected_meixner_weight_norm)
from .poly import Poly, max_relative_deviation
from .psi import (CaseKind, PsiParams, classify, convergence_radius, f_derivative_closed_form,
                  f_taylor_coeffs, favard_norm, psi_genfunc_sequence, psi_sequence, recurrence_coeffs)
from .representations import _double_root_literal, verify_representation

TOL_ENV = "PSI_ORTHO_TOL"
REPRESENTATION_TOL = 1e-10
OPERATOR_TOL = 1e-10
SLOPE_WINDOW = (0.05, 0.2)
LIMIT_OMEGAS = (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000))

GENFUNC_GRID = [PsiParams(a, b, c) for a, b, c in
                product((1, 2), (-2, -1, 0, 1, Fraction(5, 2)), (1, 2))]
DOUBLE_ROOT_GRID = [PsiParams(a, b, Fraction(b * b, 4)) for a, b in ((2, 2), (1, -2), (3, 4))]
REAL_ROOT_GRID = [PsiParams(1, Fraction(5, 2), 1), PsiParams(1, Fraction(-5, 2), 1)]
OSCILLATORY_GRID = [p for p in GENFUNC_GRID if classify(p) is CaseKind.OSCILLATORY_ROOTS]
MP_ANGLES = (math.pi / 2, math.pi / 3)
MEIXNER_GAMMAS = (Fraction(1, 2), Fraction(1, 4))

SUITES = ("all", "genfunc", "representations", "orthogonality", "limits",
          "operators", "favard", "errata")


def env_tolerance() -> float | None:
    """Numeric tolerance override from ``PSI_ORTHO_TOL``, or None when unset."""
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise DomainError(f"{TOL_ENV} must be a decimal literal, got {raw!r}") from None
    if not tol > 0:
        raise DomainError(f"{TOL_ENV} must be positive")
    return tol


@dataclass
class Check:
    name: str
    passed: bool
    expected: object
    actual: object
    mode: str
    deviation: object = 0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "mode": self.mode,
                "deviation": self.deviation, "expected": self.expected, "actual": self.actual}


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    errata: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"suite": self.suite, "status": self.status,
                "counts": {"total": len(self.checks), "failed": len(self.failures())},
                "checks": [c.to_dict() for c in self.checks],
                "errata": self.errata}


def _exact_check(name, expected, actual) -> Check:
    ok = expected == actual
    dev = 0 if ok else _poly_or_scalar_gap(expected, actual)
    return Check(name, ok, expected, actual, "exact", dev)


def _poly_or_scalar_gap(expected, actual):
    if isinstance(expected, Poly) and isinstance(actual, Poly):
        return max_relative_deviation(actual, expected)
    if isinstance(expected, (list, tuple)):
        return max((abs(Fraction(e) - Fraction(a)) for e, a in zip(expected, actual)),
                   default=0)
    return abs(Fraction(expected) - Fraction(actual))


def _numeric_check(name, expected, actual, deviation, tol) -> Check:
    return Check(name, bool(deviation <= tol), expected, actual, f"numeric(tol={tol:g})",
                 float(deviation))


def _label(p: PsiParams) -> str:
    return f"a={p.a},b={p.b},c={p.c}"


# genfunc ---------------------------------------------------------------------

def suite_genfunc(nmax: int = 20, tol: float | None = None) -> list[Check]:
    tol = REPRESENTATION_TOL if tol is None else tol
    checks = []
    for p in GENFUNC_GRID:
        rec = psi_sequence(p, nmax)
        gen = psi_genfunc_sequence(p, nmax)
        bad = [n for n in range(nmax + 1) if rec[n] != gen[n]]
        checks.append(Check(f"recurrence == generating function [{_label(p)}, n<={nmax}]",
                            not bad, "identical coefficient lists", {"mismatched_degrees": bad},
                            "exact", len(bad)))
    carlitz = [psi_sequence(PsiParams(1, 0, 1), 4)[n](Fraction(1)) for n in range(5)]
    checks.append(_exact_check("Carlitz T_n(1), n=0..4",
                               [Fraction(v) for v in (1, 1, 1, -1, -7)], carlitz))
    for p in GENFUNC_GRID:
        ref = f_taylor_coeffs(p, nmax)
        closed = [f_derivative_closed_form(p, k) for k in range(1, nmax + 1)]
        if all(isinstance(v, Fraction) for v in closed):
            checks.append(_exact_check(f"f^(k)(0) closed form [{_label(p)}]", ref, closed))
        else:
            # scale by the natural size |a| (k-1)! rho^k; exact zeros occur
            rho = 1.0 / convergence_radius(p)
            dev = max(abs(complex(v) - float(r))
                      / max(abs(float(r)), abs(float(p.a)) * math.factorial(k - 1) * rho ** k)
                      for k, (v, r) in enumerate(zip(closed, ref), start=1))
            checks.append(_numeric_check(f"f^(k)(0) closed form [{_label(p)}]",
                                         ref[:4], [complex(v).real for v in closed[:4]], dev, tol))
    return checks


# representations -------------------------------------------------------------

def _representation_checks(params, nmax, tol) -> list[Check]:
    checks = []
    for p in params:
        rep = verify_representation(p, nmax, tol)
        modes = sorted({e.mode for e in rep.entries})
        dev = max(e.deviation for e in rep.entries)
        bad = [e.n for e in rep.entries if not e.passed]
        mode = "exact" if modes == ["exact"] else f"numeric(tol={tol:g})"
        checks.append(Check(f"{rep.kind.value} representation [{_label(p)}, n<={nmax}]",
                            rep.passed, "matches recurrence", {"failed_degrees": bad},
                            mode, dev))
    return checks


def suite_representations(tol: float | None = None) -> list[Check]:
    tol = REPRESENTATION_TOL if tol is None else tol
    checks = []
    seq = psi_sequence(PsiParams(1, 0, 1), 10)
    dev = 0.0
    for n in range(1, 11):
        lhs = seq[n].to_float() / math.factorial(n)
        rhs = Poly((0.0, 1.0 / n)) * mp_poly(n - 1, 1, math.pi / 2).compose(Poly((0.0, 0.5)))
        dev = max(dev, max_relative_deviation(rhs, lhs))
    checks.append(_numeric_check("T_n/n! == (x/n) P_{n-1}^(1)(x/2; pi/2), n<=10",
                                 "coefficientwise", "coefficientwise", dev, tol))
    checks += _representation_checks(DOUBLE_ROOT_GRID, 15, tol)
    checks += _representation_checks(OSCILLATORY_GRID, 12, tol)
    checks += _representation_checks(REAL_ROOT_GRID, 12, tol)
    return checks


# orthogonality -----------------------------------------------------------------

def _gram_check(name, family, ip, N, start=None, tol=DEFAULT_GRAM_TOL) -> Check:
    G = gram(family, ip, N, start=start, tol=tol)
    expected = [G.predicted[i][i] for i in range(G.size)]
    actual = [G.entries[i][i] for i in range(G.size)]
    mode = "exact" if G.exact else f"numeric(tol={tol:g})"
    dev = max(G.max_deviation, G.symmetry_deviation)
    return Check(f"{name} [indices {G.indices[0]}..{G.indices[-1]}]", G.passed,
                 expected, actual, mode, dev)


def suite_orthogonality(tol: float | None = None) -> list[Check]:
    tol = DEFAULT_GRAM_TOL if tol is None else tol
    checks = [
        _gram_check("L^(-1) weighted Gram diag 1/n", laguerre_m1_family(),
                    InnerProductSpec("lag_weight", alpha=-1), 10, tol=tol),
        _gram_check("L^(-1) Laguerre-Sobolev Gram identity", laguerre_m1_family(),
                    InnerProductSpec("lag_sobolev"), 9, tol=tol),
    ]
    for phi in MP_ANGLES:
        checks.append(_gram_check(f"P^(0) weighted Gram diag 1/n at phi={phi:.17g}",
                                  mp0_family(phi), InnerProductSpec("mp_weight", lam=0.0, phi=phi),
                                  6, tol=tol))
    for phi in MP_ANGLES:
        checks.append(_gram_check(f"P^(0) MP-Sobolev Gram identity at phi={phi:.17g}",
                                  mp0_family(phi), InnerProductSpec("mp_sobolev", phi=phi),
                                  7, tol=tol))
    for g in MEIXNER_GAMMAS:
        checks.append(_gram_check(f"M^(0) weighted Gram diag (n-1)!n!/gamma^n at gamma={g}",
                                  meixner0_family(g), InnerProductSpec("meix_weight", beta=0, gamma=g),
                                  6, tol=tol))
    for g in MEIXNER_GAMMAS:
        checks.append(_gram_check(f"M^(0) Meixner-Sobolev Gram diag (n!)^2/gamma^(n+1) at gamma={g}",
                                  meixner0_family(g), InnerProductSpec("meix_sobolev", gamma=g),
                                  7, tol=tol))
    for p in DOUBLE_ROOT_GRID + REAL_ROOT_GRID:
        checks.append(_gram_check(f"Psi Gram in classical variable [{_label(p)}]", p, None, 6,
                                  tol=tol))
    return checks


# limits ------------------------------------------------------------------------

def _slope_check(name, residuals) -> Check:
    lo, hi = SLOPE_WINDOW
    if max(residuals) == 0:
        return Check(name, True, f"ratios in [{lo}, {hi}]", {"residuals": residuals,
                     "note": "residual vanishes identically"}, "exact", 0.0)
    ratios = [r2 / r1 if r1 else math.inf for r1, r2 in zip(residuals, residuals[1:])]
    ok = all(lo <= r <= hi for r in ratios)
    dev = max(abs(r - 0.1) for r in ratios)
    return Check(name, ok, f"ratios in [{lo}, {hi}]",
                 {"residuals": residuals, "ratios": ratios}, "numeric(slope)", dev)


def _limit_families():
    fams = [("L^(-1)", laguerre_m1_family())]
    fams += [(f"P^(0) phi={phi:.17g}", mp0_family(phi)) for phi in MP_ANGLES]
    fams += [(f"M^(0) gamma={g}", meixner0_family(g)) for g in MEIXNER_GAMMAS]
    return fams


def suite_limits(nmax: int = 5, tol: float | None = None) -> list[Check]:
    tol = REPRESENTATION_TOL if tol is None else tol
    checks = []
    for label, fam in _limit_families():
        numeric = fam.tag == "mp0"
        omegas = [float(w) for w in LIMIT_OMEGAS] if numeric else list(LIMIT_OMEGAS)
        for n in range(1, nmax + 1):
            res = [limit_lemma_residual(fam, n, w) for w in omegas]
            checks.append(_slope_check(f"limit residual O(omega) {label} n={n}", res))
        for n in range(1, nmax + 1):
            ext = fam.poly(n)
            for what, cand in (("lemma right-hand side", lemma_limit_poly(fam, n)),
                               ("omega->0 extrapolation", extrapolated_limit(fam, n))):
                name = f"{what} == extension {label} n={n}"
                if numeric:
                    checks.append(_numeric_check(name, ext, cand,
                                                 max_relative_deviation(cand, ext), tol))
                else:
                    checks.append(_exact_check(name, ext, cand))
    return checks


# operators -----------------------------------------------------------------------

def suite_operators(nmax: int = 10, tol: float | None = None) -> list[Check]:
    tol = OPERATOR_TOL if tol is None else tol
    checks = []
    for alpha in (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3)):
        bad = []
        for n in range(1, nmax + 1):
            p = laguerre_m1(n) if alpha == -1 else laguerre(n, alpha)
            if p.deriv() != -laguerre(n - 1, alpha + 1):
                bad.append(n)
        checks.append(Check(f"d/dx L_n^({alpha}) == -L_(n-1)^({alpha + 1}), n<={nmax}", not bad,
                            "identity", {"failed_degrees": bad}, "exact", len(bad)))
    half = math.pi / 2
    for lam in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2)):
        bad = []
        for n in range(1, nmax + 1):
            p = mp0(n, half, exact=True) if lam == 0 else mp_poly(n, lam, half, exact=True)
            rhs = mp_poly(n - 1, lam + Fraction(1, 2), half, exact=True) * 2
            if apply_diff(DiffKind.HALF_CENTERED_DELTA, p) != rhs:
                bad.append(n)
        checks.append(Check(f"delta P_n^({lam})(x; pi/2) == 2 P_(n-1)^({lam + Fraction(1, 2)}), n<={nmax}",
                            not bad, "identity", {"failed_degrees": bad}, "exact", len(bad)))
    phi = math.pi / 3
    for lam in (0.0, 0.5, 1.0, 1.5):
        dev = 0.0
        for n in range(1, nmax + 1):
            p = mp0(n, phi) if lam == 0 else mp_poly(n, lam, phi)
            rhs = mp_poly(n - 1, lam + 0.5, phi) * (2 * math.sin(phi))
            dev = max(dev, max_relative_deviation(apply_diff(DiffKind.HALF_CENTERED_DELTA, p), rhs))
        checks.append(_numeric_check(
            f"delta P_n^({lam:g})(x; phi) == 2 sin(phi) P_(n-1)^({lam + 0.5:g}) at phi={phi:.17g}, n<={nmax}",
            "identity", "identity", dev, tol))
    for g in MEIXNER_GAMMAS:
        for beta in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)):
            bad = []
            for n in range(1, nmax + 1):
                p = meixner0(n, g) if beta == 0 else meixner(n, beta, g)
                rhs = meixner(n - 1, beta + 1, g) * (n * (1 - 1 / g))
                if apply_diff(DiffKind.FORWARD_DELTA, p) != rhs:
                    bad.append(n)
            checks.append(Check(
                f"Delta M_n^({beta})(x; {g}) == n(1-1/gamma) M_(n-1)^({beta + 1}), n<={nmax}",
                not bad, "identity", {"failed_degrees": bad}, "exact", len(bad)))
    return checks


# favard ----------------------------------------------------------------------------

def suite_favard(nmax: int = 6, tol: float | None = None) -> list[Check]:
    tol = DEFAULT_GRAM_TOL if tol is None else tol
    checks = []
    for p in GENFUNC_GRID + DOUBLE_ROOT_GRID:
        c1 = recurrence_coeffs(p, 1)[2]
        norms = [favard_norm(p, 1, n, start=1) for n in range(1, nmax + 1)]
        ok = c1 == 0 and all(v == 0 for v in norms)
        checks.append(Check(f"C_1 = 0 and Favard norms vanish [{_label(p)}]", ok,
                            {"C_1": 0, "norms": [0] * nmax}, {"C_1": c1, "norms": norms},
                            "exact", 0 if ok else 1))
    for p in OSCILLATORY_GRID:
        G = gram(p, None, nmax, tol=tol)
        shifted = [favard_norm(p, p.c, n, start=2) for n in G.indices]
        diag = [G.entries[i][i] for i in range(G.size)]
        dev = max(abs(float(d) - float(s)) / max(1.0, abs(float(s)))
                  for d, s in zip(diag, shifted))
        dev = max(dev, G.max_deviation, G.symmetry_deviation)
        checks.append(_numeric_check(
            f"shifted Favard norm == MP-mapped Psi Gram diagonal [{_label(p)}, n<={nmax}]",
            shifted, diag, dev, tol))
    return checks


# errata ----------------------------------------------------------------------------

def _erratum_double_root() -> tuple[dict, list[Check]]:
    mismatch, corrected_ok = {}, True
    for p in DOUBLE_ROOT_GRID:
        ref = psi_sequence(p, 15)
        mismatch[_label(p)] = [n for n in range(1, 16)
                               if _double_root_literal(p, n).degree != ref[n].degree]
        corrected_ok &= verify_representation(p, 15).passed
    uncorrected_bad = all(v == list(range(1, 16)) for v in mismatch.values())
    entry = {"name": "double-root representation lacks factor x",
             "uncorrected": "a (b/2)^(n-1) (n-1)! L_(n-1)^(1)(-2ax/b)",
             "corrected": "a x (b/2)^(n-1) (n-1)! L_(n-1)^(1)(-2ax/b)",
             "evidence": {"degree_mismatch_at": mismatch},
             "confirmed": uncorrected_bad and corrected_ok}
    checks = [
        Check("uncorrected double-root formula has wrong degree for every n>=1", uncorrected_bad,
              "degree n-1 vs n at all n", mismatch, "exact", 0 if uncorrected_bad else 1),
        Check("x-corrected double-root formula equals recurrence", corrected_ok,
              "identity", corrected_ok, "exact", 0 if corrected_ok else 1),
    ]
    return entry, checks


def _erratum_meixner(kind: str) -> tuple[dict, list[Check]]:
    if kind == "weight":
        ip_fn, uncorrected_fn, lo = (lambda f, g, gam: ip_meixner(f, g, 0, gam),
                                 uncorrected_meixner_weight_norm, 1)
        uncorrected_s, corrected_s = "(n-1)! n! / gamma^(n+1)", "(n-1)! n! / gamma^n"
        tag = "meix_weight"
    else:
        ip_fn, uncorrected_fn, lo = ip_meixner_sobolev, uncorrected_meixner_sobolev_norm, 1
        uncorrected_s, corrected_s = "(n!)^2 / gamma^n", "(n!)^2 / gamma^(n+1)"
        tag = "meix_sobolev"
    evidence, uncorrected_bad, corrected_ok = [], True, True
    for g in MEIXNER_GAMMAS:
        ip = InnerProductSpec(tag, beta=0 if kind == "weight" else None, gamma=g)
        for n in range(lo, 7):
            p = meixner0(n, g)
            direct = ip_fn(p, p, g)
            uncorrected = uncorrected_fn(n, g)
            corrected = predicted_norm(meixner0_family(g), ip, n)
            uncorrected_bad &= uncorrected != direct
            corrected_ok &= corrected == direct
            evidence.append({"gamma": g, "n": n, "direct_sum": direct,
                             "uncorrected": uncorrected, "corrected": corrected})
    entry = {"name": f"Meixner {kind} norm exponent of gamma",
             "uncorrected": uncorrected_s, "corrected": corrected_s,
             "evidence": evidence[:1], "confirmed": uncorrected_bad and corrected_ok}
    first = evidence[0]
    checks = [
        Check(f"uncorrected Meixner {kind} norm disagrees with direct summation", uncorrected_bad,
              first["direct_sum"], first["uncorrected"], "exact",
              abs(first["direct_sum"] - first["uncorrected"])),
        Check(f"corrected Meixner {kind} norm equals direct summation, n<=6", corrected_ok,
              first["direct_sum"], first["corrected"], "exact", 0 if corrected_ok else 1),
    ]
    return entry, checks


def _uncorrected_delta_sobolev(f: Poly, g: Poly, phi: float) -> float:
    df = apply_diff(DiffKind.REAL_STEP_DELTA, f)
    dg = apply_diff(DiffKind.REAL_STEP_DELTA, g)
    boundary = float(f(0)) * float(g(0))
    if (df * dg).is_zero():
        return boundary
    return boundary + ip_mp(df, dg, 0.5, phi) / (2 * math.sin(phi))


def _erratum_delta(tol: float) -> tuple[dict, list[Check]]:
    half = math.pi / 2
    p3 = mp0(3, half, exact=True)
    real_step = apply_diff(DiffKind.REAL_STEP_DELTA, p3)
    imag_step = apply_diff(DiffKind.HALF_CENTERED_DELTA, p3)
    target = mp_poly(2, Fraction(1, 2), half, exact=True) * 2
    p1 = mp0(1, half)
    cross = _uncorrected_delta_sobolev(p1, mp0(3, half), half)
    G = gram(mp0_family(half), InnerProductSpec("mp_sobolev", phi=half), 7, tol=tol)
    uncorrected_bad = real_step != target and abs(cross) > tol
    corrected_ok = imag_step == target and G.passed
    entry = {"name": "half-centred difference needs imaginary half steps",
             "uncorrected": "delta f(x) = f(x+1/2) - f(x-1/2)",
             "corrected": "delta f(x) = (f(x+i/2) - f(x-i/2)) / i",
             "evidence": {"delta_P3_uncorrected": real_step, "delta_P3_corrected": imag_step,
                          "2_P2_half": target, "uncorrected_sobolev_<P1,P3>": cross},
             "confirmed": uncorrected_bad and corrected_ok}
    checks = [
        Check("real-step delta breaks the MP lowering identity and Sobolev orthogonality",
              uncorrected_bad, target, real_step, "exact", abs(cross)),
        Check("imaginary-step delta satisfies the lowering identity and MP-Sobolev orthonormality",
              corrected_ok, target, imag_step, f"numeric(tol={tol:g})",
              max(G.max_deviation, G.symmetry_deviation)),
    ]
    return entry, checks


def suite_errata(tol: float | None = None) -> tuple[list[dict], list[Check]]:
    tol = DEFAULT_GRAM_TOL if tol is None else tol
    entries, checks = [], []
    for entry, cs in (_erratum_double_root(), _erratum_meixner("weight"),
                      _erratum_meixner("sobolev"), _erratum_delta(tol)):
        entries.append(entry)
        checks += cs
    return entries, checks


# driver -------------------------------------------------------------------------------

def run_verify(suite: str = "all", tol: float | None = None) -> Report:
    """Run one suite (or all of them).

    ``tol`` replaces every numeric tolerance when given; otherwise
    ``PSI_ORTHO_TOL`` is consulted, then the per-suite defaults.
    """
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if tol is None:
        tol = env_tolerance()
    report = Report(suite)
    wanted = SUITES[1:] if suite == "all" else (suite,)
    runners = {"genfunc": suite_genfunc, "representations": suite_representations,
               "orthogonality": suite_orthogonality, "limits": suite_limits,
               "operators": suite_operators, "favard": suite_favard}
    for name in wanted:
        if name == "errata":
            entries, checks = suite_errata(tol=tol)
            report.errata += entries
        else:
            checks = runners[name](tol=tol)
        for c in checks:
            c.name = f"{name}: {c.name}"
        report.checks += checks
    return report
