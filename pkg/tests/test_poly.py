from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from weylsym.errors import NonMonicDenominator, NotDivisible, ContractViolation
from weylsym.poly import (SIGMA, ZETA, Z, Poly, ZetaPoly, exact_div, format_scalar, parse, partial,
                          partial_power, qnorm, residue_at_infinity, serialize, vandermonde)

K = 3
zs = sp.symbols("z1:4")


def poly_strategy(k=K, max_terms=5, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp)] * k)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: Poly(Z(k), t))


def to_sympy(p):
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * sp.prod([v ** e for v, e in zip(zs, exp)])
                         for exp, c in ((e, Fraction(c)) for e, c in p.terms.items())))


def test_qnorm_integral_fraction_becomes_int():
    assert qnorm(Fraction(4, 2)) == 2 and type(qnorm(Fraction(4, 2))) is int
    assert qnorm(Fraction(1, 2)) == Fraction(1, 2)


def test_names():
    assert Z(3).names() == ["z1", "z2", "z3"]
    assert SIGMA(2).names() == ["s1", "s2"]
    assert ZETA.names() == ["zeta"]


def test_serialize_format():
    p = Poly(Z(2), {(2, 1): 3, (0, 0): Fraction(-1, 2)})
    assert serialize(p) == "3*z1^2*z2 + -1/2"
    assert serialize(Poly.zero(Z(2))) == "0"
    assert format_scalar(Fraction(-3, 4)) == "-3/4"


@given(poly_strategy())
def test_parse_round_trip(p):
    assert parse(serialize(p), Z(K)) == p


@given(poly_strategy(), poly_strategy())
def test_product_matches_sympy(p, q):
    assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.zero(Z(K))


@given(poly_strategy(), poly_strategy(max_terms=3))
def test_exact_div_round_trip(p, q):
    if q.is_zero():
        return
    assert exact_div(p * q, q) == p


def test_exact_div_reports_remainder():
    a, b = Poly.var(Z(2), 1), Poly.var(Z(2), 2)
    with pytest.raises(NotDivisible) as info:
        exact_div(a * a + b, a - b)
    assert info.value.remainder is not None and not info.value.remainder.is_zero()


def test_cube_difference():
    a, b = Poly.var(Z(2), 1), Poly.var(Z(2), 2)
    assert exact_div(a ** 3 - b ** 3, a - b) == a * a + a * b + b * b


@given(poly_strategy())
def test_partial_matches_sympy(p):
    assert to_sympy(partial(p, 2)) == sp.expand(sp.diff(to_sympy(p), zs[1]))
    assert to_sympy(partial_power(p, (1, 0, 2))) == sp.expand(sp.diff(to_sympy(p), zs[0], 1, zs[2], 2))


def test_vandermonde_matches_determinant():
    for k in (2, 3, 4):
        v = sp.symbols(f"z1:{k + 1}")
        prod = sp.prod([v[i] - v[j] for i in range(k) for j in range(i + 1, k)])
        ours = vandermonde(k)
        got = sp.expand(sum(c * sp.prod([x ** e for x, e in zip(v, exp)]) for exp, c in ours.terms.items()))
        assert got == sp.expand(prod)
    assert len(vandermonde(3)) == 6


def test_zeta_poly_from_roots_and_evaluate():
    A = Z(2)
    a, b = Poly.var(A, 1), Poly.var(A, 2)
    P = ZetaPoly.from_roots([a, b])
    assert P.is_monic() and P.degree() == 2
    assert P.coeff(1) == -(a + b) and P.coeff(0) == a * b
    assert P.evaluate(a).is_zero()
    assert P.derivative().evaluate(a) == a - b


def test_divmod_monic():
    A = Z(2)
    a, b = Poly.var(A, 1), Poly.var(A, 2)
    P = ZetaPoly.from_roots([a, b])
    num = ZetaPoly.monomial(A, 4)
    q, r = num.divmod_monic(P)
    assert q * P + r == num and r.degree() < 2


def test_residue_at_infinity_is_complete_homogeneous():
    # res of zeta^(d+k-1)/P is h_d in the roots
    A = Z(2)
    a, b = Poly.var(A, 1), Poly.var(A, 2)
    P = ZetaPoly.from_roots([a, b])
    assert residue_at_infinity(ZetaPoly.monomial(A, 1), P) == Poly.const(A, 1)
    assert residue_at_infinity(ZetaPoly.monomial(A, 3), P) == a * a + a * b + b * b
    assert residue_at_infinity(ZetaPoly.monomial(A, 0), P).is_zero()


def test_residue_against_sympy_partial_fractions():
    t, a, b, c = sp.symbols("t a b c")
    P = (t - a) * (t - b) * (t - c)
    num = t ** 5 + 2 * t ** 3
    want = sum(sp.residue(num / P, t, r) for r in (a, b, c))
    A = Z(3)
    roots = [Poly.var(A, i) for i in (1, 2, 3)]
    ours = residue_at_infinity(ZetaPoly(A, [Poly.zero(A)] * 3 + [Poly.const(A, 2), Poly.zero(A), Poly.const(A, 1)]),
                               ZetaPoly.from_roots(roots))
    got = sum(cf * a ** e[0] * b ** e[1] * c ** e[2] for e, cf in ours.terms.items())
    assert sp.simplify(got - want) == 0


def test_residue_rejects_non_monic():
    A = Z(1)
    den = ZetaPoly(A, [Poly.const(A, 1), Poly.const(A, 2)])
    with pytest.raises(NonMonicDenominator):
        residue_at_infinity(ZetaPoly.monomial(A, 2), den)


def test_var_index_checked():
    with pytest.raises(ContractViolation):
        Poly.var(Z(2), 3)
