import pytest
import sympy as sp
from hypothesis import given, strategies as st

from weylsym.errors import ContractViolation, NotDivisible
from weylsym.poly import Z, Poly, vandermonde
from weylsym.weyl import (ANTISYMMETRIC, NEITHER, SYMMETRIC, LocalizedPoly, Permutation, WeylElement as W,
                          antisymmetrize, apply, apply_poly, classify, commutator, parse, permute, serialize,
                          symmetrize)

K = 2
zs = sp.symbols("z1:3")


def weyl_strategy(k=K, max_terms=3, max_exp=2):
    idx = st.tuples(*[st.integers(0, max_exp)] * k)
    return st.dictionaries(st.tuples(idx, idx), st.integers(-3, 3).filter(bool), max_size=max_terms) \
        .map(lambda t: W(k, t))


def poly_strategy(k=K):
    idx = st.tuples(*[st.integers(0, 4)] * k)
    return st.dictionaries(idx, st.integers(-4, 4).filter(bool), max_size=4).map(lambda t: Poly(Z(k), t))


def sympy_apply(A, f):
    """Oracle: act term by term with sympy derivatives."""
    expr = sum(c * sp.prod([v ** e for v, e in zip(zs, exp)]) for exp, c in f.terms.items())
    out = 0
    for (a, b), c in A.terms.items():
        d = expr
        for v, n in zip(zs, b):
            if n:
                d = sp.diff(d, v, n)
        out += c * sp.prod([v ** e for v, e in zip(zs, a)]) * d
    return sp.expand(out)


def to_sympy(p):
    return sp.expand(sum(c * sp.prod([v ** e for v, e in zip(zs, exp)]) for exp, c in p.terms.items()))


def test_canonical_commutation():
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            lhs = commutator(W.d(3, i), W.z(3, j))
            assert lhs == W.const(3, 1 if i == j else 0)


def test_leibniz_one_variable():
    # D^3 z^2 = z^2 D^3 + 6 z D^2 + 6 D
    got = W.monomial((0,), (3,)) * W.monomial((2,), (0,))
    want = W.monomial((2,), (3,)) + W.monomial((1,), (2,), 6) + W.monomial((0,), (1,), 6)
    assert got == want


@given(weyl_strategy(), weyl_strategy(), weyl_strategy())
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(weyl_strategy(), weyl_strategy(), poly_strategy())
def test_product_acts_as_composition(a, b, f):
    assert apply(a * b, f) == apply(a, apply(b, f))


@given(weyl_strategy(), poly_strategy())
def test_apply_matches_sympy(a, f):
    assert to_sympy(apply(a, f)) == sympy_apply(a, f)


@given(weyl_strategy(), weyl_strategy(), weyl_strategy())
def test_jacobi(a, b, c):
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.is_zero()


@given(weyl_strategy())
def test_serialize_round_trip(a):
    assert parse(serialize(a), K) == a


def test_serialize_localized():
    x = W.d(2, 1) * W(2, {((0, 0), (0, 0)): 1}, 1)
    text = serialize(x)
    assert text.startswith("(1/delta^2) * ( ")
    assert parse(text, 2) == x


def test_inverse_delta_derivative():
    # D1 delta^-1 = delta^-2 (z1 D1 - z2 D1 - 1)
    inv = W(2, {((0, 0), (0, 0)): 1}, 1)
    got = W.d(2, 1) * inv
    assert got.denom_power == 2
    want = W(2, {((1, 0), (1, 0)): 1, ((0, 1), (1, 0)): -1, ((0, 0), (0, 0)): -1}, 2)
    assert got == want


def test_delta_power_reduces():
    d = vandermonde(2)
    x = W(2, {(e, (0, 0)): c for e, c in (d * d).terms.items()}, 1)
    assert x.denom_power == 0 and x == W.from_poly(d)


def test_localized_apply():
    inv = W(2, {((0, 0), (0, 0)): 1}, 1)
    out = apply(inv, Poly.var(Z(2), 1))
    assert isinstance(out, LocalizedPoly) and out.power == 1
    assert apply(inv, vandermonde(2)) == Poly.const(Z(2), 1)
    with pytest.raises(NotDivisible):
        apply_poly(inv, Poly.var(Z(2), 1))


def test_euler_operator_on_delta():
    V11 = W(3, {((1, 0, 0), (1, 0, 0)): 1, ((0, 1, 0), (0, 1, 0)): 1, ((0, 0, 1), (0, 0, 1)): 1})
    assert apply(V11, vandermonde(3)) == vandermonde(3) * 3


def test_permutation_sign():
    assert Permutation((2, 1)).sign() == -1
    assert Permutation((2, 3, 1)).sign() == 1
    with pytest.raises(ContractViolation):
        Permutation((1, 1))


def test_symmetrize_and_classify():
    z1 = W.z(3, 1)
    s = symmetrize(z1)
    assert s == (W.z(3, 1) + W.z(3, 2) + W.z(3, 3)).scale(2)
    assert classify(s) == SYMMETRIC
    assert classify(W.from_poly(vandermonde(3))) == ANTISYMMETRIC
    assert classify(z1) == NEITHER
    assert antisymmetrize(W.z(2, 1)) == W.z(2, 1) - W.z(2, 2)


def test_permute_localized_sign():
    inv = W(2, {((0, 0), (0, 0)): 1}, 1)
    assert permute(inv, Permutation.transposition(2, 1, 2)) == -inv


def test_order_and_weight():
    x = W.monomial((2, 0), (1, 1), 3)
    assert x.order() == 2 and x.weight() == 0
    assert W.zero(2).order() == -1


def test_k_mismatch():
    with pytest.raises(ContractViolation):
        W.z(2, 1) + W.z(3, 1)
