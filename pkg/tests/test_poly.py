from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from psi_ortho.poly import ONE, X, GaussianRational, Poly, max_relative_deviation

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(fractions, min_size=0, max_size=6).map(Poly)
xs = sp.Symbol("x")


def to_sympy(p: Poly):
    return sum((sp.Rational(c.numerator, c.denominator) * xs**k for k, c in enumerate(p.coeffs)),
               sp.Integer(0))


def from_sympy(expr) -> Poly:
    coeffs = sp.Poly(sp.expand(expr), xs).all_coeffs()[::-1]
    return Poly(Fraction(int(c.p), int(c.q)) for c in coeffs)


def test_trailing_zeros_trimmed():
    assert Poly((1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly((0, 0)).is_zero()
    assert Poly().degree == -1


def test_constants():
    assert X.degree == 1 and X.coeff(1) == 1
    assert ONE(Fraction(7)) == 1


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_product_matches_sympy(p, q):
    expect = sp.expand(to_sympy(p) * to_sympy(q))
    assert p * q == (from_sympy(expect) if expect != 0 else Poly())


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_compose_matches_sympy(p, q):
    got = p.compose(q)
    expect = sp.expand(to_sympy(p).subs(xs, to_sympy(q)))
    assert got == (from_sympy(expect) if expect != 0 else Poly())


@settings(max_examples=60, deadline=None)
@given(polys, fractions)
def test_shift_matches_sympy(p, h):
    expect = sp.expand(to_sympy(p).subs(xs, xs + sp.Rational(h.numerator, h.denominator)))
    assert p.shift(h) == (from_sympy(expect) if expect != 0 else Poly())


@settings(max_examples=60, deadline=None)
@given(polys, fractions)
def test_evaluation_and_derivative(p, v):
    expr = to_sympy(p)
    val = sp.Rational(v.numerator, v.denominator)
    assert p(v) == Fraction(str(expr.subs(xs, val)))
    d = sp.diff(expr, xs)
    assert p.deriv() == (from_sympy(d) if d != 0 else Poly())


def test_numpy_evaluation():
    p = Poly((Fraction(1), Fraction(-3), Fraction(1, 2)))
    grid = np.linspace(-2, 2, 5)
    np.testing.assert_allclose(p(grid), 1 - 3 * grid + 0.5 * grid**2)


def test_divide_by_x():
    p = Poly((0, 0, 3, 1))
    assert p.divide_by_x(2) == Poly((3, 1))
    with pytest.raises(ValueError):
        p.divide_by_x(3)


def test_gaussian_rational_field_ops():
    u = GaussianRational(Fraction(3, 5), Fraction(4, 5))
    assert u * u.conjugate() == GaussianRational(1, 0)
    assert (u ** 2) / u == u
    assert complex(u ** 3) == pytest.approx(complex(0.6 + 0.8j) ** 3)
    assert u + 1 == GaussianRational(Fraction(8, 5), Fraction(4, 5))


def test_max_relative_deviation():
    ref = Poly((1.0, 0.0, 2.0))
    assert max_relative_deviation(Poly((1.0, 0.0, 2.0)), ref) == 0.0
    assert max_relative_deviation(Poly((1.1, 0.0, 2.0)), ref) == pytest.approx(0.1)
    # a zero coefficient is measured against the largest one
    assert max_relative_deviation(Poly((1.0, 0.2, 2.0)), ref) == pytest.approx(0.1)
    # rounding-level coefficients count as zero
    noisy = Poly((3e-16, 4.5, 2.6))
    assert max_relative_deviation(Poly((3.1e-16, 4.5, 2.6)), noisy) < 1e-16
