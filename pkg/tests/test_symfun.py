import pytest
import sympy as sp
from hypothesis import given, strategies as st
from sympy.polys.polyfuncs import symmetrize as sympy_symmetrize

from weylsym.errors import ContractViolation, NotAntisymmetric, NotSymmetric
from weylsym.poly import SIGMA, Z, Poly, parse, vandermonde
from weylsym.symfun import (antisym_factor, division_lemma, elementary_z, is_symmetric, m_poly,
                            newton_in_sigma, power_sum_z, realize, sigma, sigma1_action, sigma_weight,
                            to_sigma)


def zsym(k):
    return sp.symbols(f"z1:{k + 1}")


def to_sympy(p, names):
    return sp.expand(sum(c * sp.prod([v ** e for v, e in zip(names, exp)]) for exp, c in p.terms.items()))


def sigma_strategy(k):
    idx = st.tuples(*[st.integers(0, 2)] * k)
    return st.dictionaries(idx, st.integers(-3, 3).filter(bool), max_size=3).map(lambda t: Poly(SIGMA(k), t))


def test_discriminant_k2():
    assert to_sigma(vandermonde(2) ** 2) == parse("1*s1^2 + -4*s2", SIGMA(2))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_discriminant_matches_sympy(k):
    t = sp.Symbol("t")
    s = sp.symbols(f"s1:{k + 1}")
    P = t ** k + sum((-1) ** h * s[h - 1] * t ** (k - h) for h in range(1, k + 1))
    disc = sp.discriminant(P, t)
    # disc of a monic polynomial equals prod_{i<j} (z_i - z_j)^2
    ours = to_sigma(vandermonde(k) ** 2)
    assert sp.expand(to_sympy(ours, s) - disc) == 0


@pytest.mark.parametrize("k", [2, 3])
@given(data=st.data())
def test_to_sigma_inverts_realize(k, data):
    g = data.draw(sigma_strategy(k))
    assert to_sigma(realize(g)) == g


@pytest.mark.parametrize("k,p", [(3, 4), (3, 5), (4, 3)])
def test_newton_against_sympy(k, p):
    z = zsym(k)
    s = sp.symbols(f"s1:{k + 1}")
    expr, rem = sympy_symmetrize(sum(v ** p for v in z), formal=True, symbols=s)[:2]
    assert rem == 0
    assert sp.expand(to_sympy(newton_in_sigma(k, p), s) - expr) == 0


def complete_homogeneous_sympy(k, d):
    z = zsym(k)
    t = sp.Symbol("t")
    series = sp.prod([sum((v * t) ** i for i in range(d + 1)) for v in z])
    return sp.expand(series).coeff(t, d)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_m_poly_is_complete_homogeneous(k):
    for d in range(6):
        assert to_sympy(realize(m_poly(k, d)), zsym(k)) == complete_homogeneous_sympy(k, d)


def test_m_poly_small():
    assert m_poly(2, 2) == parse("1*s1^2 + -1*s2", SIGMA(2))
    assert m_poly(3, -2).is_zero() and m_poly(3, 0) == 1
    with pytest.raises(ContractViolation):
        m_poly(3, -3)


def test_sigma_weight():
    assert sigma_weight(parse("1*s1^2 + -1*s2", SIGMA(2))) == 2
    assert sigma_weight(parse("1*s1 + 1*s2", SIGMA(2))) is None


@pytest.mark.parametrize("k", [2, 3])
@given(data=st.data())
def test_sigma1_action_is_sum_of_derivatives(k, data):
    g = data.draw(sigma_strategy(k))
    f = realize(g)
    total = Poly.zero(Z(k))
    for j in range(1, k + 1):
        total = total + f.partial(j)
    assert realize(sigma1_action(g)) == total


def test_to_sigma_rejects_nonsymmetric():
    with pytest.raises(NotSymmetric):
        to_sigma(Poly.var(Z(2), 1))
    assert not is_symmetric(Poly.var(Z(2), 1))


def test_antisym_factor():
    a, b = Poly.var(Z(2), 1), Poly.var(Z(2), 2)
    assert antisym_factor(a ** 3 - b ** 3) == parse("1*s1^2 + -1*s2", SIGMA(2))
    with pytest.raises(NotAntisymmetric):
        antisym_factor(a + b)


def test_elementary_and_power_sums():
    assert elementary_z(3, 4).is_zero()
    assert power_sum_z(3, 0) == 3
    assert sigma(2, 0) == 1 and sigma(2, 3).is_zero()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_division_lemma(k):
    for d in range(5):
        assert division_lemma(k, d).check
