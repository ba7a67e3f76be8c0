"""Exact scalar layer: arithmetic, canonical forms, calculus."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unitons.errors import NonRationalAntiderivative, PoleAtZ
from unitons.scalars import (
    GaussianRational,
    Poly,
    RatFun,
    differentiate,
    hermite_reduce,
    integrate_rational,
)


def G(re, im=0):
    return GaussianRational(re, im)


def poly(*coeffs):
    return Poly([G(c) if not isinstance(c, GaussianRational) else c for c in coeffs])


Z = RatFun.x()
ONE = RatFun.one()


# -- strategies ------------------------------------------------------------

small_fraction = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=6
)
gauss = st.builds(GaussianRational, small_fraction, small_fraction)
polys = st.lists(gauss, min_size=0, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuns = st.builds(lambda n, d: RatFun(n, d), polys, nonzero_polys)


# -- Gaussian rationals ----------------------------------------------------

def test_gaussian_field_ops():
    a = G(Fraction(1, 2), Fraction(-1, 3))
    b = G(2, 1)
    assert a + b == G(Fraction(5, 2), Fraction(2, 3))
    assert a * b == G(Fraction(4, 3), Fraction(-1, 6))
    assert (a / b) * b == a
    assert a.conjugate().conjugate() == a
    assert complex(G(1, 2)) == 1 + 2j


def test_gaussian_string_roundtrip():
    cases = ["3/2", "-1/3+2/5i", "0", "2", "0-1i", "7i"]
    for s in cases:
        v = GaussianRational.from_string(s)
        assert GaussianRational.from_string(str(v)) == v


@given(gauss, gauss)
def test_gaussian_add_sub_cancel(a, b):
    assert (a + b) - b == a


@given(gauss, gauss)
def test_gaussian_mul_div_cancel(a, b):
    if not b.is_zero():
        assert (a * b) / b == a


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        G(1) / G(0)


# -- polynomials -----------------------------------------------------------

def test_poly_divmod_and_gcd():
    p = poly(-1, 0, 1)          # z^2 - 1
    q = poly(1, 1)              # z + 1
    quot, rem = p.divmod(q)
    assert quot == poly(-1, 1) and rem.is_zero()
    assert p.gcd(q) == poly(1, 1)


def test_poly_trims_leading_zeros():
    assert poly(1, 0, 0).degree == 0
    assert poly().is_zero()


@given(polys, polys, polys)
def test_poly_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p


@given(polys, nonzero_polys)
def test_poly_divmod_identity(p, q):
    quot, rem = p.divmod(q)
    assert quot * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


# -- rational functions: canonical form ------------------------------------

def test_ratfun_canonical_monic_and_coprime():
    f = RatFun(poly(0, 2), poly(0, 0, 4))      # 2z / 4z^2 = 1/(2z)
    assert f.num == poly(Fraction(1, 2))
    assert f.den == poly(0, 1)
    assert f.den.lead() == G(1)


@given(ratfuns)
def test_ratfun_canonical_invariants(f):
    assert not f.den.is_zero()
    assert f.den.lead() == G(1)
    assert f.is_zero() or f.num.gcd(f.den).degree == 0


@given(ratfuns, ratfuns)
def test_ratfun_add_sub_exact(f, g):
    assert (f + g) - g == f


@given(ratfuns, ratfuns)
def test_ratfun_mul_div_exact(f, g):
    if not g.is_zero():
        assert (f * g) / g == f


def test_ratfun_evaluate_exact_and_pole():
    f = ONE / (Z - 1)
    assert f.evaluate(G(3)) == G(Fraction(1, 2))
    with pytest.raises(PoleAtZ):
        f.evaluate(G(1))
    with pytest.raises(PoleAtZ):
        f.evaluate_complex(1.0 + 0j)


# -- differentiation -------------------------------------------------------

def test_differentiate_monomial():
    assert differentiate(Z * Z) == 2 * Z


def test_differentiate_simple_pole():
    # quotient rule by hand: (1/(z-1))' = -1/(z-1)^2
    f = ONE / (Z - 1)
    assert differentiate(f) == -ONE / ((Z - 1) * (Z - 1))


@given(ratfuns, ratfuns)
@settings(max_examples=60)
def test_differentiate_is_a_derivation(f, g):
    lhs = differentiate(f * g)
    rhs = differentiate(f) * g + f * differentiate(g)
    assert lhs == rhs


# -- integration -----------------------------------------------------------

def test_integrate_polynomial():
    assert integrate_rational(2 * Z) == Z * Z
    # integration constant is pinned to zero
    assert integrate_rational(ONE) == Z


def test_integrate_double_pole():
    f = ONE / ((Z - 1) * (Z - 1))
    assert integrate_rational(f) == -ONE / (Z - 1)


def test_integrate_log_fails_with_certificate():
    with pytest.raises(NonRationalAntiderivative) as err:
        integrate_rational(ONE / Z)
    assert not err.value.log_numerator.is_zero()
    assert err.value.log_denominator == poly(0, 1)
    assert len(err.value.poles) == 1
    assert abs(err.value.poles[0]) < 1e-9
    assert abs(err.value.residues[0] - 1) < 1e-9


def test_integrate_mixed_pole_orders():
    # (4z - 3) / (z-2)^3 = (4w + 5)/w^3 at w = z-2: no residue, integrable
    den = (Z - 2) * (Z - 2) * (Z - 2)
    f = (4 * Z - 3) / den
    F = integrate_rational(f)
    assert differentiate(F) == f


def test_integrate_detects_hidden_residue():
    # 1/( z (z-1) ) = 1/(z-1) - 1/z has nonzero residues at both poles
    with pytest.raises(NonRationalAntiderivative) as err:
        integrate_rational(ONE / (Z * (Z - 1)))
    assert sorted(round(p.real) for p in err.value.poles) == [0, 1]


def test_hermite_reduce_identity():
    num = poly(1, 2, 1)
    den = (poly(0, 1) * poly(0, 1) * poly(-1, 1)).coeffs
    den = Poly(den)
    g, r, d_star = hermite_reduce(num, den)
    recon = g.derivative() + RatFun(r, d_star)
    assert recon == RatFun(num, den)


@given(ratfuns)
@settings(max_examples=60)
def test_integrate_inverts_differentiate(g):
    # every derivative of a rational function is integrable in rational terms
    f = differentiate(g)
    F = integrate_rational(f)
    assert differentiate(F) == f


@given(ratfuns, st.integers(min_value=-3, max_value=3))
@settings(max_examples=40)
def test_integrate_fails_iff_log_part(g, a):
    # g' + 1/(z - a) always has a logarithmic antiderivative
    f = differentiate(g) + ONE / (Z - a)
    with pytest.raises(NonRationalAntiderivative):
        integrate_rational(f)
