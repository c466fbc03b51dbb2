"""Named symmetric operators, the map phi and the annihilator of delta.

``phi(P)`` is the SigmaPoly with ``P(delta) = phi(P) * delta``; its kernel is
the annihilator of delta among symmetric operators.  The polynomials
``u_{p,q} = phi(V_{p,q})`` are computed along four independent routes so
they can be cross-checked.

The ``check_*`` functions at the bottom produce report items (see
:mod:`weylsym.report`); failures there are returned, never raised.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import factorial

from . import report as rp
from .errors import (ContractViolation, IdentityViolation, NonPolynomialCoefficient, NotDivisible,
                     NotSymmetric, NotVectorField)
from .poly import SIGMA, Z, Poly, ZetaPoly, exact_div, partial, residue_at_infinity, vandermonde
from .symfun import (SigmaPoly, antisym_factor, division_lemma, elementary_z, m_poly, newton_in_sigma,
                     p_of_zeta, realize, sigma, sigma1_action, sigma_weight, to_sigma)
from .weyl import (SYMMETRIC, WeylElement, apply_poly, classify, commutator, symmetrize)

W = WeylElement


class OperatorCatalog:
    """Cached named operators for a fixed k (all polynomial, no delta powers)."""

    def __init__(self, k: int):
        if k < 1:
            raise ContractViolation("k must be >= 1")
        self.k = k
        self._cache: dict = {}

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def delta(self) -> WeylElement:
        return self._get("delta", lambda: W.from_poly(vandermonde(self.k)))

    @property
    def delta_check(self) -> WeylElement:
        """prod_{i<j} (D_i - D_j)."""
        return self._get("delta_check", lambda: W.from_derivative_poly(vandermonde(self.k)))

    def v(self, p: int, q: int) -> WeylElement:
        if p < 0 or q < 0:
            raise ContractViolation("V_{p,q} needs p, q >= 0")

        def build():
            k = self.k
            terms = {}
            for j in range(k):
                a = [0] * k
                b = [0] * k
                a[j], b[j] = p, q
                key = (tuple(a), tuple(b))
                terms[key] = terms.get(key, 0) + 1
            return W(k, terms)

        return self._get(("V", p, q), build)

    def Sigma(self, h: int) -> WeylElement:
        """Elementary symmetric function of the derivatives."""
        return self._get(("Sigma", h), lambda: W.from_derivative_poly(elementary_z(self.k, h)))

    def calN(self, q: int) -> WeylElement:
        """Power sum of the derivatives."""
        return self.v(0, q)

    def N(self, p: int) -> WeylElement:
        return self.v(p, 0)

    def mult(self, g: SigmaPoly) -> WeylElement:
        """Multiplication by a SigmaPoly realized in z."""
        return W.from_poly(realize(g))


@lru_cache(maxsize=None)
def catalog(k: int) -> OperatorCatalog:
    return OperatorCatalog(k)


def v_pq(k: int, p: int, q: int) -> WeylElement:
    return catalog(k).v(p, q)


def phi(P: WeylElement) -> SigmaPoly:
    """SigmaPoly with P(delta) = phi(P) * delta."""
    if P.denom_power:
        raise ContractViolation("phi needs a polynomial operator")
    if classify(P) != SYMMETRIC:
        raise NotSymmetric("phi is defined on symmetric operators")
    return antisym_factor(apply_poly(P, vandermonde(P.k)))


def in_annihilator(P: WeylElement) -> bool:
    return phi(P).is_zero()


# u_{p,q}

U_METHODS = ("direct", "closed_form", "residue", "roots")


@lru_cache(maxsize=None)
def _p_derivative(k: int, n: int) -> ZetaPoly:
    return p_of_zeta(k).derivative(n)


def _u_direct(k, p, q):
    return phi(v_pq(k, p, q))


def _u_closed_form(k, p, q):
    acc = Poly.zero(SIGMA(k))
    for h in range(0, p - q + 1):
        if h > k or k - h - q - 1 < 0:
            continue
        c = (-1) ** h * factorial(k - h) // factorial(k - h - q - 1)
        acc = acc + sigma(k, h) * m_poly(k, p - q - h) * c
    return acc * Fraction(1, q + 1)


def _u_residue(k, p, q):
    A = Z(k)
    num = ZetaPoly.monomial(A, p) * _p_derivative(k, q + 1)
    res = residue_at_infinity(num, p_of_zeta(k))
    return to_sigma(res) * Fraction(1, q + 1)


@lru_cache(maxsize=None)
def _p_prime_at_roots(k: int) -> tuple:
    A = Z(k)
    pp = _p_derivative(k, 1)
    return tuple(pp.evaluate(Poly.var(A, j)) for j in range(1, k + 1))


@lru_cache(maxsize=None)
def _p_prime_product(k: int) -> Poly:
    out = Poly.const(Z(k), 1)
    for f in _p_prime_at_roots(k):
        out = out * f
    return out


def _u_roots(k, p, q):
    A = Z(k)
    pq1 = _p_derivative(k, q + 1)
    primes = _p_prime_at_roots(k)
    num = Poly.zero(A)
    for j in range(1, k + 1):
        zj = Poly.var(A, j)
        term = zj ** p * pq1.evaluate(zj)
        if term.is_zero():
            continue
        for i, f in enumerate(primes, start=1):
            if i != j:
                term = term * f
        num = num + term
    return to_sigma(exact_div(num, _p_prime_product(k))) * Fraction(1, q + 1)


_U_IMPL = {
    "direct": _u_direct,
    "closed_form": _u_closed_form,
    "residue": _u_residue,
    "roots": _u_roots,
}


@lru_cache(maxsize=None)
def u_pq(k: int, p: int, q: int, method: str = "all") -> SigmaPoly:
    """u_{p,q} = phi(V_{p,q}).

    ``method="all"`` evaluates every route and raises
    :class:`IdentityViolation` unless they agree.
    """
    if p < 0 or q < 0:
        raise ContractViolation("u_{p,q} needs p, q >= 0")
    if method != "all":
        if method not in _U_IMPL:
            raise ContractViolation(f"unknown method {method!r}")
        return _U_IMPL[method](k, p, q)
    values = {m: u_pq(k, p, q, m) for m in U_METHODS}
    ref = values["direct"]
    for m, val in values.items():
        if val != ref:
            raise IdentityViolation(f"u_{{{p},{q}}} (k={k}): {m} disagrees with direct", ref, val)
    return ref


def annihilator_generators(k: int) -> list[WeylElement]:
    """V_{p,q} - u_{p,q} for p in [0,k], q in [1,k], ordered by (p, q)."""
    if k < 2:
        raise ContractViolation("annihilator generators need k >= 2")
    cat = catalog(k)
    return [cat.v(p, q) - cat.mult(u_pq(k, p, q)) for p in range(k + 1) for q in range(1, k + 1)]


# vector fields

def decompose_vector_field(V: WeylElement) -> list[SigmaPoly]:
    """Coefficients f_0..f_{k-1} with V = sum_p f_p V_{p,1}."""
    k = V.k
    if V.denom_power:
        raise ContractViolation("vector field must be polynomial")
    if classify(V) != SYMMETRIC:
        raise NotSymmetric("vector field is not symmetric")
    coeffs = V.coefficients()
    units = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    if any(b not in units for b in coeffs):
        raise NotVectorField("operator has terms that are not first-order derivatives")
    A = Z(k)
    delta = vandermonde(k)
    a = [coeffs.get(u, Poly.zero(A)) for u in units]
    roots = [Poly.var(A, j) for j in range(1, k + 1)]
    cofactors = [exact_div(delta, f) for f in _p_prime_at_roots(k)]
    # Lagrange interpolation of a_j at the nodes z_j; denominators cleared by delta
    out = []
    for p in range(k):
        num = Poly.zero(A)
        for j in range(k):
            pi_j = ZetaPoly.from_roots(roots[:j] + roots[j + 1:])
            num = num + a[j] * pi_j.coeff(p) * cofactors[j]
        try:
            f_p = exact_div(num, delta)
        except NotDivisible as exc:
            raise NonPolynomialCoefficient(f"coefficient of V_{{{p},1}} is not polynomial") from exc
        out.append(to_sigma(f_p))
    return out


# dual pairing and the import kernel

def dual_pairing(k: int) -> int:
    """The constant obtained by applying prod (D_i - D_j) to delta."""
    if k < 2:
        raise ContractViolation("dual pairing needs k >= 2")
    value = apply_poly(catalog(k).delta_check, vandermonde(k))
    return value.constant_value()


def rank_fraction_free(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix, by Bareiss elimination."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        pr = M[rank]
        pv = pr[col]
        for r in range(rank + 1, len(M)):
            row = M[r]
            f = row[col]
            for c in range(col + 1, ncols):
                row[c] = (row[c] * pv - f * pr[c]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == len(M):
            break
    return rank


def homogeneous_monomials(k: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(k), d):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def sigma_kernel_matrix(k: int, d: int) -> list[list[int]]:
    """Columns: degree-d monomials f; rows: coefficients of Sigma_h[f delta]."""
    A = Z(k)
    delta = vandermonde(k)
    cat = catalog(k)
    cols = homogeneous_monomials(k, d)
    images = []
    for e in cols:
        fd = Poly.monomial(A, e) * delta
        images.append({(h, m): c for h in range(1, k + 1)
                       for m, c in apply_poly(cat.Sigma(h), fd).terms.items()})
    row_keys = sorted({key for img in images for key in img})
    for img in images:
        for c in img.values():
            if Fraction(c).denominator != 1:
                raise ContractViolation("kernel system is expected to be integral")
    return [[int(img.get(key, 0)) for img in images] for key in row_keys]


def sigma_kernel_dimension(k: int, d: int) -> int:
    """dim of {f homogeneous of degree d : Sigma_h[f delta] = 0 for all h}."""
    if k < 2 or d < 0:
        raise ContractViolation("need k >= 2 and d >= 0")
    matrix = sigma_kernel_matrix(k, d)
    ncols = len(homogeneous_monomials(k, d))
    if not matrix:
        return ncols
    return ncols - rank_fraction_free(matrix)


# random operators for property checks

def random_symmetric(rng, k: int, max_alpha: int = 2, max_beta: int = 2, terms: int = 2,
                     weight: int | None = None) -> WeylElement:
    acc = W.zero(k)
    for _ in range(terms):
        alpha = rp.random_exponent(rng, k, max_alpha)
        if weight is None:
            beta = rp.random_exponent(rng, k, max_beta)
        else:
            nb = sum(alpha) - weight
            if nb < 0:
                continue
            beta = rp.random_exponent(rng, k, nb, nb)
        acc = acc + symmetrize(W.monomial(alpha, beta)).scale(rp.random_coefficient(rng))
    return acc


def random_vector_field(rng, k: int, max_alpha: int = 2) -> WeylElement:
    acc = W.zero(k)
    d1 = tuple(1 if i == 0 else 0 for i in range(k))
    for _ in range(2):
        alpha = rp.random_exponent(rng, k, max_alpha)
        acc = acc + symmetrize(W.monomial(alpha, d1)).scale(rp.random_coefficient(rng))
    return acc


# report items: identity suite (a)-(l) and the library invariants

def check_newton_commutators(k: int, seed: int) -> list[dict]:
    """(a) [calN_h, N_1] = h calN_{h-1} and [calN_1, N_h] = h N_{h-1}."""
    cat = catalog(k)
    out = []
    for h in range(1, k + 1):
        out.append(rp.check("generators", k, f"a.calN{h}.N1", commutator(cat.calN(h), cat.N(1)),
                            cat.calN(h - 1).scale(h), seed))
        if h > 1:
            out.append(rp.check("generators", k, f"a.calN1.N{h}", commutator(cat.calN(1), cat.N(h)),
                                cat.N(h - 1).scale(h), seed))
    return out


def _one_variable_bracket(p, q, p2, q2) -> dict:
    a = W.monomial((p,), (q,))
    b = W.monomial((p2,), (q2,))
    return commutator(a, b).terms


def check_v_relations(k: int, seed: int) -> list[dict]:
    """(b) commutator relations among the V_{p,q}."""
    cat = catalog(k)
    V = cat.v

    def both(A, B):
        return commutator(A, B), commutator(B, A)

    out = []
    ab, ba = both(V(2, 0), V(0, 2))
    lhs = V(1, 1).scale(4)
    literal = ab - 2  # "2 V_{0,0} / k" is the scalar 2
    note = None
    if lhs != literal and lhs != ba - 2:
        note = ("literal constant 2*V00/k = 2 fails in both bracket orientations; "
                "checked with constant 2*V00")
    out.append(rp.check("generators", k, "b.4V11", lhs, ab - V(0, 0).scale(2), seed,
                        alternatives=[("BA-AB", lhs, ba - V(0, 0).scale(2))], note=note))
    for item_id, (A, B), rhs in [
        ("b.V03.V20", (V(0, 3), V(2, 0)), V(1, 2).scale(6) + V(0, 1).scale(6)),
        ("b.V02.V30", (V(0, 2), V(3, 0)), V(2, 1).scale(6) + V(1, 0).scale(6)),
        ("b.V12.V21", (V(1, 2), V(2, 1)), V(2, 2).scale(3) + V(1, 1).scale(2)),
    ]:
        ab, ba = both(A, B)
        out.append(rp.check("generators", k, item_id, ab, rhs, seed,
                            alternatives=[("BA-AB", ba, rhs)]))
    # e_{p,q} -> V_{p,q} carries one-variable brackets to brackets
    bad = []
    for p, q, p2, q2 in product(range(3), repeat=4):
        lhs = commutator(V(p, q), V(p2, q2))
        rhs = W.zero(k)
        for ((a,), (b,)), c in _one_variable_bracket(p, q, p2, q2).items():
            rhs = rhs + V(a, b).scale(c)
        if lhs != rhs:
            bad.append(f"[V{p}{q},V{p2}{q2}]")
    out.append(rp.check_true("generators", k, "b.lie_isomorphism", not bad,
                             witness=",".join(bad), seed=seed))
    return out


def check_phi_multiplicative(k: int, seed: int, n: int = 3) -> list[dict]:
    """(c) phi(PQ) = phi(P * phi(Q))."""
    out = []
    for i in range(n):
        rng = rp.rng_for(seed, "phi_mult", k, i)
        P = random_symmetric(rng, k)
        Q = random_symmetric(rng, k)
        lhs = phi(P * Q)
        rhs = phi(P * catalog(k).mult(phi(Q)))
        out.append(rp.check("phi", k, f"c.{i}", lhs, rhs, seed))
    return out


def check_phi_negative_weight(k: int, seed: int, n: int = 3) -> list[dict]:
    """(d) phi vanishes on operators of pure negative weight."""
    out = []
    for i in range(n):
        rng = rp.rng_for(seed, "phi_neg", k, i)
        w = -rng.randint(1, 3)
        P = random_symmetric(rng, k, max_alpha=2, weight=w)
        if P.is_zero():
            P = symmetrize(W.monomial((0,) * k, (-w,) + (0,) * (k - 1)))
        out.append(rp.check("phi", k, f"d.{i}.w{w}", phi(P), Poly.zero(SIGMA(k)), seed))
    return out


def check_phi_vector_field(k: int, seed: int, n: int = 3) -> list[dict]:
    """(e) phi(VP) = V(phi(P)) + phi(P) phi(V) for vector fields V."""
    out = []
    for i in range(n):
        rng = rp.rng_for(seed, "phi_vf", k, i)
        V = random_vector_field(rng, k)
        P = random_symmetric(rng, k)
        fp = phi(P)
        lhs = phi(V * P)
        rhs = to_sigma(apply_poly(V, realize(fp))) + fp * phi(V)
        out.append(rp.check("phi", k, f"e.{i}", lhs, rhs, seed))
    return out


def check_phi_discriminant(k: int, seed: int, n: int = 3) -> list[dict]:
    """(f) P(Delta) = phi(delta P delta)."""
    out = []
    d = catalog(k).delta
    big = vandermonde(k) ** 2
    for i in range(n):
        rng = rp.rng_for(seed, "phi_disc", k, i)
        P = random_symmetric(rng, k)
        out.append(rp.check("phi", k, f"f.{i}", to_sigma(apply_poly(P, big)), phi(d * P * d), seed))
    return out


def check_phi_weight(k: int, seed: int, n: int = 3) -> list[dict]:
    """phi keeps pure weights."""
    out = []
    for i in range(n):
        rng = rp.rng_for(seed, "phi_weight", k, i)
        w = rng.randint(0, 3)
        P = random_symmetric(rng, k, max_alpha=3, weight=w)
        val = phi(P)
        got = sigma_weight(val) if not val.is_zero() else w
        out.append(rp.check("phi", k, f"weight.{i}", got, w, seed))
    return out


def check_phi_sigma1(k: int, seed: int, n: int = 3) -> list[dict]:
    """phi(Sigma_1 P) = Sigma_1(phi(P))."""
    out = []
    s1 = catalog(k).Sigma(1)
    for i in range(n):
        rng = rp.rng_for(seed, "phi_sigma1", k, i)
        P = random_symmetric(rng, k)
        out.append(rp.check("phi", k, f"sigma1.{i}", phi(s1 * P), sigma1_action(phi(P)), seed))
    return out


def check_u_agreement(k: int, seed: int, pmax: int = 6, qmax: int = 4) -> list[dict]:
    """Four routes to u_{p,q} agree."""
    out = []
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            vals = {m: u_pq(k, p, q, m) for m in U_METHODS}
            ref = vals["direct"]
            bad = [m for m, v in vals.items() if v != ref]
            out.append(rp.record("upq", k, f"u.p{p}.q{q}", rp.FAIL if bad else rp.PASS,
                                 ref, vals["closed_form"],
                                 "disagree: " + ",".join(bad) if bad else "0", seed))
    return out


def check_u_special_values(k: int, seed: int) -> list[dict]:
    """(i) vanishing range, (ii) q = 0, (iii) q = 1 of the u_{p,q} proposition."""
    out = []
    zero = Poly.zero(SIGMA(k))
    bad = [(p, q) for p in range(7) for q in range(k + 3)
           if (p < q or q > k) and not u_pq(k, p, q).is_zero()]
    out.append(rp.check_true("upq", k, "i.vanishing", not bad, witness=str(bad), seed=seed))
    for p in range(9):
        out.append(rp.check("upq", k, f"ii.p{p}", u_pq(k, p, 0), newton_in_sigma(k, p), seed))
    for p in range(7):
        rhs = zero
        for h in range(p + 1):
            rhs = rhs + newton_in_sigma(k, h) * newton_in_sigma(k, p - h)
        rhs = rhs - newton_in_sigma(k, p) * (p + 1)
        out.append(rp.check("upq", k, f"iii.p{p}", u_pq(k, p + 1, 1) * 2, rhs, seed))
    return out


def check_correction_lemma(k: int, seed: int) -> list[dict]:
    """(g) D_j^q [P'(z_j)] = P^[q+1](z_j) / (q+1)."""
    out = []
    A = Z(k)
    for j in range(1, k + 1):
        zj = Poly.var(A, j)
        pj = Poly.const(A, 1)
        for h in range(1, k + 1):
            if h != j:
                pj = pj * (zj - Poly.var(A, h))
        lhs = pj
        for q in range(k + 1):
            rhs = _p_derivative(k, q + 1).evaluate(zj) * Fraction(1, q + 1)
            out.append(rp.check("upq", k, f"g.j{j}.q{q}", lhs, rhs, seed))
            lhs = partial(lhs, j)
    return out


def complete_homogeneous_z(k: int, d: int) -> Poly:
    """h_d by enumerating every degree-d exponent vector."""
    return Poly(Z(k), {e: 1 for e in homogeneous_monomials(k, d)})


def check_symfun_layer(k: int, seed: int, top: int = 8) -> list[dict]:
    """Derivatives of Newton sums, Sigma_1 on M_d, M_d = h_d, Newton-Girard, division lemma."""
    out = []
    for p in range(top + 1):
        n_p = newton_in_sigma(k, p)
        for h in range(1, k + 1):
            rhs = m_poly(k, p - h) * ((-1) ** (h - 1) * p) if p else Poly.zero(SIGMA(k))
            out.append(rp.check("upq", k, f"dN.h{h}.p{p}", partial(n_p, h), rhs, seed))
    for d in range(1, top + 1):
        out.append(rp.check("upq", k, f"sigma1M.d{d}", sigma1_action(m_poly(k, d)),
                            m_poly(k, d - 1) * (d + k - 1), seed))
    for d in range(top + 1):
        out.append(rp.check("upq", k, f"M_is_h.d{d}", m_poly(k, d),
                            to_sigma(complete_homogeneous_z(k, d)), seed))
        A = Z(k)
        res = residue_at_infinity(ZetaPoly.monomial(A, d + k - 1), p_of_zeta(k))
        out.append(rp.check("upq", k, f"M_residue.d{d}", realize(m_poly(k, d)), res, seed))
    for p in range(k + 1, top + 1):
        acc = Poly.zero(SIGMA(k))
        for h in range(k + 1):
            acc = acc + sigma(k, h) * newton_in_sigma(k, p - h) * (-1) ** h
        out.append(rp.check("upq", k, f"girard.p{p}", acc, Poly.zero(SIGMA(k)), seed))
    if k >= 2:
        for d in range(5):
            out.append(rp.check_true("upq", k, f"division_lemma.d{d}", division_lemma(k, d).check,
                                     seed=seed))
    return out


def check_generators_kill(k: int, seed: int) -> list[dict]:
    out = []
    gens = annihilator_generators(k)
    labels = [(p, q) for p in range(k + 1) for q in range(1, k + 1)]
    out.append(rp.check("annihilator", k, "count", len(gens), (k + 1) * k, seed))
    delta = vandermonde(k)
    for (p, q), G in zip(labels, gens):
        out.append(rp.check("annihilator", k, f"kills.p{p}.q{q}", apply_poly(G, delta),
                            Poly.zero(Z(k)), seed))
    cat = catalog(k)
    for name, P, expected in [("Sigma1", cat.Sigma(1), True), ("N1", cat.N(1), False),
                              ("calN2", cat.calN(2), True)]:
        out.append(rp.check("annihilator", k, f"member.{name}", in_annihilator(P), expected, seed))
    return out


def check_remark_recurrences(k: int, seed: int) -> list[dict]:
    """(j) reduction of V_{p,q} - u_{p,q} for p >= k; (k) reduction in q for q >= k."""
    cat = catalog(k)
    out = []
    for p in range(k, k + 4):
        for q in range(1, k + 1):
            lhs = cat.v(p, q) - cat.mult(u_pq(k, p, q))
            rhs = W.zero(k)
            urhs = Poly.zero(SIGMA(k))
            for h in range(1, k + 1):
                s = (-1) ** (h - 1)
                gen = cat.v(p - h, q) - cat.mult(u_pq(k, p - h, q))
                rhs = rhs + cat.mult(sigma(k, h)) * gen.scale(s)
                urhs = urhs + sigma(k, h) * u_pq(k, p - h, q) * s
            out.append(rp.check("annihilator", k, f"j.op.p{p}.q{q}", lhs, rhs, seed))
            out.append(rp.check("annihilator", k, f"j.u.p{p}.q{q}", u_pq(k, p, q), urhs, seed))
    for q in range(k, k + 3):
        for p in range(3):
            rhs = W.zero(k)
            for h in range(1, k + 1):
                rhs = rhs + (cat.v(p, q - h) * cat.Sigma(h)).scale((-1) ** (h - 1))
            out.append(rp.check("annihilator", k, f"k.p{p}.q{q}", cat.v(p, q), rhs, seed))
    return out


def check_order_one_killers(k: int, seed: int) -> list[dict]:
    """(l) 2 P'(z_j) D_j - P''(z_j) kills delta."""
    out = []
    A = Z(k)
    delta = vandermonde(k)
    for j in range(1, k + 1):
        zj = Poly.var(A, j)
        op = (W.from_poly(_p_derivative(k, 1).evaluate(zj)) * W.d(k, j)).scale(2) \
            - W.from_poly(_p_derivative(k, 2).evaluate(zj))
        out.append(rp.check("annihilator", k, f"l.j{j}", apply_poly(op, delta), Poly.zero(A), seed))
    return out


def check_sigma_on_sigma_k(k: int, seed: int) -> list[dict]:
    """(h) Sigma_h[sigma_k delta] = h! sigma_{k-h} delta."""
    cat = catalog(k)
    delta = vandermonde(k)
    base = elementary_z(k, k) * delta
    return [rp.check("import_kernel", k, f"h.h{h}", apply_poly(cat.Sigma(h), base),
                     elementary_z(k, k - h) * delta * factorial(h), seed)
            for h in range(1, k + 1)]


def check_sigma1_powers(k: int, seed: int) -> list[dict]:
    """(i) Sigma_1^p[sigma_h delta] = (k-h+p)!/(k-h)! sigma_{h-p} delta."""
    cat = catalog(k)
    delta = vandermonde(k)
    out = []
    for h in range(1, k + 1):
        f = elementary_z(k, h) * delta
        for p in range(1, h + 1):
            f = apply_poly(cat.Sigma(1), f)
            rhs = elementary_z(k, h - p) * delta * (factorial(k - h + p) // factorial(k - h))
            out.append(rp.check("import_kernel", k, f"i.h{h}.p{p}", f, rhs, seed))
    return out


def pairing_constant(k: int) -> int:
    """k! (k-1)! ... 2!"""
    out = 1
    for j in range(2, k + 1):
        out *= factorial(j)
    return out


def check_pairing(k: int, seed: int) -> list[dict]:
    return [rp.check("pairing", k, "pairing", dual_pairing(k), pairing_constant(k), seed)]


def check_import_kernel(k: int, seed: int, dmax: int = 5) -> list[dict]:
    return [rp.check("import_kernel", k, f"dim.d{d}", sigma_kernel_dimension(k, d), 1 if d == 0 else 0, seed)
            for d in range(dmax + 1)]


def check_vector_fields(k: int, seed: int, n: int = 4) -> list[dict]:
    """Symmetric vector fields lie in the C[sigma]-span of V_{0,1}..V_{k-1,1}."""
    cat = catalog(k)
    out = []
    for p in range(k):
        got = decompose_vector_field(cat.v(p, 1))
        want = [Poly.const(SIGMA(k), 1 if i == p else 0) for i in range(k)]
        out.append(rp.check("vectorfields", k, f"unit.p{p}", tuple(map(str, got)), tuple(map(str, want)), seed))
    for i in range(n):
        rng = rp.rng_for(seed, "vf", k, i)
        V = random_vector_field(rng, k, max_alpha=3)
        fs = decompose_vector_field(V)
        rebuilt = W.zero(k)
        for p, f in enumerate(fs):
            rebuilt = rebuilt + cat.mult(f) * cat.v(p, 1)
        out.append(rp.check("vectorfields", k, f"rebuild.{i}", rebuilt, V, seed))
    return out


def identity_suite(k: int, seed: int = 0) -> list[dict]:
    """Identity items (a) through (l), in that order."""
    if k < 2:
        raise ContractViolation("identity suite needs k >= 2")
    out = []
    out += check_newton_commutators(k, seed)
    out += check_v_relations(k, seed)
    out += check_phi_multiplicative(k, seed)
    out += check_phi_negative_weight(k, seed)
    out += check_phi_vector_field(k, seed)
    out += check_phi_discriminant(k, seed)
    out += check_correction_lemma(k, seed)
    out += check_sigma_on_sigma_k(k, seed)
    out += check_sigma1_powers(k, seed)
    out += check_remark_recurrences(k, seed)
    out += check_order_one_killers(k, seed)
    return out
