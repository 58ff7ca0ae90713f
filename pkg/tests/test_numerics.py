import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.integrate
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from psi_ortho.errors import AccuracyError, DomainError, PoleError
from psi_ortho.numerics import (QuadratureSpec, exp_weight_moment, gamma_modsq,
                                gamma_modsq_general, geometric_power_sum, geometric_power_sums,
                                integrate_line, log_gamma_modsq, series_against,
                                truncation_half_width)
from psi_ortho.poly import Poly


def test_exp_moments_are_factorials():
    assert [exp_weight_moment(k) for k in range(6)] == [1, 1, 2, 6, 24, 120]
    with pytest.raises(DomainError):
        exp_weight_moment(-1)


@pytest.mark.parametrize("gamma", [Fraction(1, 2), Fraction(1, 4), Fraction(2, 3)])
def test_geometric_sums_brute_force(gamma):
    sums = geometric_power_sums(6, gamma)
    g = float(gamma)
    for j, s in enumerate(sums):
        brute = math.fsum(k**j * g**k for k in range(4000))
        assert float(s) == pytest.approx(brute, rel=1e-12)


def test_geometric_sums_frozen():
    # sum k^j 2^-k for j = 0, 1, 2
    assert geometric_power_sums(2, Fraction(1, 2)) == [2, 2, 6]
    assert geometric_power_sum(3, Fraction(1, 2)) == 26


def test_geometric_domain():
    with pytest.raises(DomainError):
        geometric_power_sum(1, 1)
    with pytest.raises(DomainError):
        geometric_power_sum(-1, Fraction(1, 2))


def test_series_against_polynomial():
    h = Poly((Fraction(1), Fraction(-2), Fraction(1, 3)))
    g = Fraction(1, 3)
    brute = mpmath.nsum(lambda k: (1 - 2 * k + k**2 / 3) * mpmath.mpf(1) / 3**k, [0, mpmath.inf])
    assert float(series_against(h, g)) == pytest.approx(float(brute), rel=1e-14)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=0.05, max_value=6.0), st.floats(min_value=-25.0, max_value=25.0))
def test_log_gamma_modsq_vs_scipy(lam, x):
    ref = 2 * scipy.special.loggamma(complex(lam, x)).real
    assert float(log_gamma_modsq(lam, x)[0]) == pytest.approx(ref, abs=1e-11, rel=1e-12)


@pytest.mark.parametrize("lam", [0.5, 1.0, 0.3, 2.5])
def test_gamma_modsq_vs_mpmath(lam):
    for x in (-7.5, -1.0, 0.25, 3.0, 12.0):
        ref = float(abs(mpmath.gamma(mpmath.mpc(lam, x))) ** 2)
        assert gamma_modsq(lam, x) == pytest.approx(ref, rel=1e-12)


def test_gamma_modsq_lam_zero():
    x = np.array([-2.0, 0.5, 3.0])
    ref = [float(abs(mpmath.gamma(mpmath.mpc(0, v))) ** 2) for v in x]
    np.testing.assert_allclose(gamma_modsq(0, x), ref, rtol=1e-13)
    with pytest.raises(PoleError):
        gamma_modsq(0, 0.0)
    with pytest.raises(DomainError):
        gamma_modsq(-0.5, 1.0)


def test_closed_forms_agree_with_lanczos():
    x = np.linspace(-10, 10, 41)
    for lam in (0.5, 1.0):
        np.testing.assert_allclose(gamma_modsq(lam, x), gamma_modsq_general(lam, x), rtol=1e-12)


def test_tanh_sinh_known_integrals():
    spec = QuadratureSpec(40.0)
    assert integrate_line(lambda x: 1 / np.cosh(np.pi * x), spec) == pytest.approx(1.0, rel=1e-11)
    assert integrate_line(lambda x: np.exp(-x * x), QuadratureSpec(10.0)) == pytest.approx(
        math.sqrt(math.pi), rel=1e-12)


def test_tanh_sinh_vs_scipy_quad():
    def f(x):
        return (x**4 - 2 * x + 1) * np.exp(0.4 * x) * gamma_modsq(0.5, x)

    L = truncation_half_width(f, math.pi - 0.4, 1e-12)
    ours = integrate_line(f, QuadratureSpec(L, tolerance=1e-12))
    ref, _ = scipy.integrate.quad(f, -60, 60, points=[0.0], epsabs=1e-13, epsrel=1e-13, limit=400)
    assert ours == pytest.approx(ref, rel=1e-10)


def test_tanh_sinh_vs_mpmath_weighted():
    phi = math.pi / 3

    def f(x):
        return (x**2 + 3) * np.exp((2 * phi - math.pi) * x) * gamma_modsq(1.0, x)

    ours = integrate_line(f, QuadratureSpec(truncation_half_width(f, 2 * phi, 1e-12)))
    ref = mpmath.quad(lambda t: (t**2 + 3) * mpmath.exp((2 * phi - mpmath.pi) * t)
                      * abs(mpmath.gamma(1 + 1j * t)) ** 2, [-mpmath.inf, 0, mpmath.inf])
    assert ours == pytest.approx(float(ref), rel=1e-10)


def test_cancelling_integral_converges():
    # odd integrand with a large magnitude integrates to zero
    def f(x):
        return 1e8 * x**5 / np.cosh(x)

    assert abs(integrate_line(f, QuadratureSpec(60.0))) < 1e-2


def test_node_budget_exhaustion():
    with pytest.raises(AccuracyError) as info:
        integrate_line(lambda x: np.sin(400 * x), QuadratureSpec(50.0, node_budget=64))
    assert info.value.error_bound > 0


def test_quadrature_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(1.0, tolerance=0)
    with pytest.raises(DomainError):
        QuadratureSpec(1.0, node_budget=4)
