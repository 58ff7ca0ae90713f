import math
from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from psi_ortho.errors import DomainError
from psi_ortho.poly import Poly
from psi_ortho.psi import (CARLITZ, CaseKind, PsiParams, carlitz_T, classify, convergence_radius,
                           f_derivative_closed_form, f_eval, f_taylor_coeffs, favard_norm,
                           parse_rational, psi_from_genfunc, psi_genfunc_sequence,
                           psi_recurrence, psi_sequence, recurrence_coeffs)


def _poly(strs):
    return Poly(Fraction(s) for s in strs)


# n! [z^n] exp(x f(z)) with f' = a / (1 - b z + c z^2), expanded by sympy.
FROZEN = {
    (1, 0, 1): [["1"], ["0", "1"], ["0", "0", "1"], ["0", "-2", "0", "1"],
                ["0", "0", "-8", "0", "1"], ["0", "24", "0", "-20", "0", "1"],
                ["0", "0", "184", "0", "-40", "0", "1"]],
    (2, 1, 2): [["1"], ["0", "2"], ["0", "2", "4"], ["0", "-4", "12", "8"],
                ["0", "-36", "-20", "48", "16"], ["0", "-48", "-440", "-40", "160", "32"]],
    (1, Fraction(5, 2), 1): [["1"], ["0", "1"], ["0", "5/2", "1"], ["0", "21/2", "15/2", "1"],
                             ["0", "255/4", "243/4", "15", "1"]],
    (2, 2, 1): [["1"], ["0", "2"], ["0", "4", "4"], ["0", "12", "24", "8"],
                ["0", "48", "144", "96", "16"]],
    (1, -2, 1): [["1"], ["0", "1"], ["0", "-2", "1"], ["0", "6", "-6", "1"],
                 ["0", "-24", "36", "-12", "1"]],
}


@pytest.mark.parametrize("abc", list(FROZEN))
def test_frozen_generating_function_tables(abc):
    p = PsiParams(*abc)
    expect = [_poly(row) for row in FROZEN[abc]]
    n = len(expect) - 1
    assert psi_sequence(p, n) == expect
    assert psi_genfunc_sequence(p, n) == expect


def _sympy_psi(a, b, c, N):
    z, x, t = sp.symbols("z x t")
    a, b, c = (sp.Rational(str(v)) for v in (a, b, c))
    fprime = sp.series(a / (1 - b * t + c * t**2), t, 0, N).removeO()
    F = sp.integrate(fprime, (t, 0, z))
    G = sp.series(sp.exp(x * F), z, 0, N + 1).removeO()
    out = []
    for n in range(N + 1):
        coeffs = sp.Poly(sp.expand(G.coeff(z, n) * sp.factorial(n)), x).all_coeffs()[::-1]
        out.append(Poly(Fraction(int(q.p), int(q.q)) for q in coeffs))
    return out


@pytest.mark.parametrize("abc", [(3, Fraction(-1, 2), 2), (Fraction(1, 3), 4, 1), (-2, 0, 5)])
def test_live_sympy_generating_function(abc):
    assert psi_sequence(PsiParams(*abc), 7) == _sympy_psi(*abc, 7)


def test_carlitz_values_at_one():
    assert [carlitz_T(n)(Fraction(1)) for n in range(5)] == [1, 1, 1, -1, -7]
    assert CARLITZ == PsiParams(1, 0, 1)


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
positive = st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4)


@settings(max_examples=40, deadline=None)
@given(small.filter(lambda v: v != 0), small, positive)
def test_dual_construction_property(a, b, c):
    p = PsiParams(a, b, c)
    assert psi_sequence(p, 9) == psi_genfunc_sequence(p, 9)


@settings(max_examples=40, deadline=None)
@given(small.filter(lambda v: v != 0), small, positive)
def test_structure_of_psi(a, b, c):
    p = PsiParams(a, b, c)
    seq = psi_sequence(p, 8)
    for n, q in enumerate(seq):
        assert q.degree == n
        assert q.leading == a**n
        if n >= 1:
            assert q.coeff(0) == 0


def test_f_taylor_matches_sympy_series():
    z = sp.Symbol("z")
    a, b, c = 2, sp.Rational(1, 3), 3
    f = sp.integrate(sp.series(a / (1 - b * z + c * z**2), z, 0, 12).removeO(), z)
    expect = [Fraction(str(f.coeff(z, k) * sp.factorial(k))) for k in range(1, 12)]
    assert f_taylor_coeffs(PsiParams(2, Fraction(1, 3), 3), 11) == expect


@pytest.mark.parametrize("abc", [(1, 0, 1), (2, 1, 2), (1, Fraction(5, 2), 1), (2, 2, 1),
                                 (1, -3, 2), (1, 1, 1)])
def test_f_closed_form(abc):
    p = PsiParams(*abc)
    ref = f_taylor_coeffs(p, 15)
    for k, r in enumerate(ref, start=1):
        v = f_derivative_closed_form(p, k)
        if isinstance(v, Fraction):
            assert v == r
        else:
            scale = abs(float(p.a)) * math.factorial(k - 1) / convergence_radius(p) ** k
            assert abs(complex(v) - float(r)) <= 1e-12 * max(scale, abs(float(r)))


@pytest.mark.parametrize("abc", [(1, 0, 1), (2, 1, 2), (1, Fraction(5, 2), 1), (2, 2, 1),
                                 (1, -2, 1), (3, -1, 1)])
def test_f_eval_vs_quadrature(abc):
    p = PsiParams(*abc)
    a, b, c = (float(v) for v in abc)
    for frac in (-0.7, -0.2, 0.3, 0.8):
        z = frac * convergence_radius(p)
        ref = mpmath.quad(lambda t: a / (1 - b * t + c * t * t), [0, z])
        assert f_eval(p, z) == pytest.approx(float(ref), rel=1e-12, abs=1e-14)
    with pytest.raises(DomainError):
        f_eval(p, 1.01 * convergence_radius(p))


def test_f_series_partial_sums_converge_inside_disc():
    p = PsiParams(2, 1, 2)
    z = 0.5 * convergence_radius(p)
    d = f_taylor_coeffs(p, 60)
    partial = math.fsum(float(v) / math.factorial(k) * z**k for k, v in enumerate(d, start=1))
    assert partial == pytest.approx(f_eval(p, z), rel=1e-12)


def test_classify():
    assert classify(PsiParams(2, 2, 1)) is CaseKind.DOUBLE_ROOT
    assert classify(PsiParams(1, 0, 1)) is CaseKind.OSCILLATORY_ROOTS
    assert classify(PsiParams(1, Fraction(5, 2), 1)) is CaseKind.REAL_ROOTS
    assert PsiParams(1, 3, 2).discriminant == 1


def test_validation_messages():
    with pytest.raises(DomainError, match="a != 0"):
        PsiParams(0, 1, 1)
    with pytest.raises(DomainError, match="c > 0"):
        PsiParams(1, 1, 0)
    with pytest.raises(DomainError):
        psi_sequence(CARLITZ, -1)
    with pytest.raises(DomainError):
        f_taylor_coeffs(CARLITZ, 0)


def test_parse_rational():
    assert parse_rational("5/2") == Fraction(5, 2)
    assert parse_rational(" -3 ") == -3
    assert parse_rational(0.25) == Fraction(1, 4)
    assert PsiParams("1/2", "0", "3").a == Fraction(1, 2)


def test_single_degree_helpers():
    p = PsiParams(2, 1, 2)
    assert psi_recurrence(p, 5) == psi_from_genfunc(p, 5)


def test_recurrence_coeffs_and_favard():
    p = PsiParams(2, 1, 3)
    assert recurrence_coeffs(p, 1) == (2, 1, 0)
    assert recurrence_coeffs(p, 4) == (2, 4, 36)
    assert all(favard_norm(p, 1, n) == 0 for n in range(1, 8))
    assert favard_norm(p, 1, 0) == 1
    # shifted product: mu0 c^(n-1) n! (n-1)!
    for n in range(1, 7):
        assert favard_norm(p, p.c, n, start=2) == p.c**n * math.factorial(n) * math.factorial(n - 1)
    with pytest.raises(DomainError):
        favard_norm(p, 1, 2, start=3)
