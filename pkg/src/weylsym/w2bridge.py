"""Transport between symmetric operators in z and the Weyl algebra in sigma.

``W2Element`` is the Weyl algebra on sigma_1..sigma_k with D_h = d/dsigma_h.
``pushforward`` sends a symmetric z-operator to the sigma-operator acting the
same way on symmetric polynomials; ``pullback`` goes back, at the price of
delta denominators.  ``TwistedElement`` models C[sigma][1/Delta] * delta with
the connection that makes delta a square root of Delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from . import report as rp
from .errors import (ContractViolation, NotAntisymmetric, NotDivisible, NotSymmetric,
                     VerificationFailed)
from .poly import SIGMA, Z, Poly, exact_div, partial, partial_power, qnorm, vandermonde
from .symfun import SigmaPoly, p_of_zeta, realize, sigma, to_sigma
from .weyl import (ANTISYMMETRIC, SYMMETRIC, WeylElement, _names, apply, apply_poly,
                   antisymmetrize, classify, format_terms, normal_product, parse_terms)
from .discops import catalog, dual_pairing, homogeneous_monomials, phi, random_symmetric

W = WeylElement


def _exponents_up_to(k: int, n: int) -> list[tuple]:
    """All multi-indices of total degree <= n, increasing graded-lex."""
    out = []
    for d in range(n + 1):
        out.extend(sorted(homogeneous_monomials(k, d)))
    return out


class W2Element:
    """Normal-ordered ``sum c * sigma^gamma * D^beta``."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Mapping | None = None):
        if k < 1:
            raise ContractViolation("k must be >= 1")
        clean = {}
        for (g, b), c in (terms or {}).items():
            g, b = tuple(g), tuple(b)
            if len(g) != k or len(b) != k:
                raise ContractViolation(f"bad multi-index length for k={k}")
            if c:
                clean[(g, b)] = qnorm(c)
        self.k = k
        self.terms = clean

    @classmethod
    def zero(cls, k: int) -> "W2Element":
        return cls(k)

    @classmethod
    def const(cls, k: int, c=1) -> "W2Element":
        zero = (0,) * k
        return cls(k, {(zero, zero): c})

    @classmethod
    def from_sigma(cls, g: SigmaPoly) -> "W2Element":
        zero = (0,) * g.k
        return cls(g.k, {(e, zero): c for e, c in g.terms.items()})

    @classmethod
    def d(cls, k: int, h: int) -> "W2Element":
        if not 1 <= h <= k:
            raise ContractViolation(f"index {h} outside 1..{k}")
        beta = [0] * k
        beta[h - 1] = 1
        return cls(k, {((0,) * k, tuple(beta)): 1})

    @classmethod
    def monomial(cls, gamma, beta, c=1) -> "W2Element":
        return cls(len(gamma), {(tuple(gamma), tuple(beta)): c})

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        return max((sum(b) for _, b in self.terms), default=-1)

    def coefficients(self) -> dict:
        out: dict = {}
        for (g, b), c in self.terms.items():
            out.setdefault(b, {})[g] = c
        return {b: Poly(SIGMA(self.k), t) for b, t in out.items()}

    @classmethod
    def from_coefficients(cls, k: int, coeffs: Mapping[tuple, Poly]) -> "W2Element":
        return cls(k, {(g, b): c for b, p in coeffs.items() for g, c in p.terms.items()})

    def _coerce(self, other) -> "W2Element":
        if isinstance(other, (int, Fraction)):
            return W2Element.const(self.k, other)
        if not isinstance(other, W2Element) or other.k != self.k:
            raise ContractViolation("W2Element operands must share k")
        return other

    def __add__(self, other) -> "W2Element":
        other = self._coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return W2Element(self.k, out)

    __radd__ = __add__

    def __neg__(self) -> "W2Element":
        return self.scale(-1)

    def __sub__(self, other) -> "W2Element":
        return self + (-self._coerce(other))

    def scale(self, c) -> "W2Element":
        return W2Element(self.k, {key: v * c for key, v in self.terms.items()})

    def __mul__(self, other) -> "W2Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        return W2Element(self.k, normal_product(self.terms, other.terms))

    def __rmul__(self, other) -> "W2Element":
        return self.scale(other)

    def __pow__(self, n: int) -> "W2Element":
        if n < 0:
            raise ContractViolation("negative power")
        out = W2Element.const(self.k, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = W2Element.const(self.k, other)
        return isinstance(other, W2Element) and self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"W2Element({self})"

    def __str__(self) -> str:
        return serialize(self)

    def __call__(self, g: SigmaPoly) -> SigmaPoly:
        return apply_w2(self, g)


def apply_w2(Q: W2Element, g: SigmaPoly) -> SigmaPoly:
    if g.alphabet != SIGMA(Q.k):
        raise ContractViolation("W2Element acts on SigmaPoly of the same k")
    acc = Poly.zero(SIGMA(Q.k))
    for b, coeff in Q.coefficients().items():
        acc = acc + coeff * partial_power(g, b)
    return acc


def serialize(Q: W2Element) -> str:
    return format_terms(Q.terms, *_names(Q.k, "s", "Ds"))


def parse(text: str, k: int) -> W2Element:
    return W2Element(k, parse_terms(text, *_names(k, "s", "Ds")))


def reflect(Q: W2Element, h: int) -> W2Element:
    """Substitute D_h -> -D_h."""
    return W2Element(Q.k, {(g, b): c * (-1) ** b[h - 1] for (g, b), c in Q.terms.items()})


# pushforward / pullback

def _random_sigma_monomial(rng, k: int, max_degree: int) -> SigmaPoly:
    return Poly.monomial(SIGMA(k), rp.random_exponent(rng, k, max_degree))


def pushforward(P: WeylElement, seed: int = 0, checks: int = 10) -> W2Element:
    """The sigma-operator acting on C[sigma] as the symmetric operator ``P``."""
    if P.denom_power:
        raise ContractViolation("pushforward needs a polynomial operator")
    if classify(P) != SYMMETRIC:
        raise NotSymmetric("pushforward is defined on symmetric operators")
    k = P.k
    A = SIGMA(k)
    order = max(P.order(), 0)
    coeffs: dict = {}
    for beta in _exponents_up_to(k, order):
        target = to_sigma(apply_poly(P, realize(Poly.monomial(A, beta))))
        for prev, c in coeffs.items():
            if all(x <= y for x, y in zip(prev, beta)):
                w = 1
                for x, y in zip(prev, beta):
                    w *= factorial(y) // factorial(y - x)
                rest = tuple(y - x for x, y in zip(prev, beta))
                target = target - c * Poly.monomial(A, rest, w)
        bf = 1
        for y in beta:
            bf *= factorial(y)
        if not target.is_zero():
            coeffs[beta] = target * Fraction(1, bf)
    Q = W2Element.from_coefficients(k, coeffs)
    rng = rp.rng_for(seed, "pushforward", k)
    for _ in range(checks):
        g = _random_sigma_monomial(rng, k, order + 2)
        if to_sigma(apply_poly(P, realize(g))) != apply_w2(Q, g):
            raise VerificationFailed("pushforward does not reproduce the action", witness=str(g))
    return Q


@lru_cache(maxsize=None)
def _pullback_d(k: int, h: int) -> WeylElement:
    """(-1)^(h-1) sum_j z_j^(k-h) / P'(z_j) D_j, over the common denominator delta."""
    A = Z(k)
    delta = vandermonde(k)
    pp = p_of_zeta(k).derivative()
    terms = {}
    for j in range(1, k + 1):
        zj = Poly.var(A, j)
        coeff = zj ** (k - h) * exact_div(delta, pp.evaluate(zj)) * (-1) ** (h - 1)
        beta = tuple(1 if i == j - 1 else 0 for i in range(k))
        for a, c in coeff.terms.items():
            terms[(a, beta)] = terms.get((a, beta), 0) + c
    return W(k, terms, 1)


def pullback(Q: W2Element) -> WeylElement:
    """Localized z-operator acting on symmetric functions as ``Q``."""
    k = Q.k
    out = W.zero(k)
    for (g, b), c in Q.terms.items():
        term = W.from_poly(realize(Poly.monomial(SIGMA(k), g, c)))
        for h, n in enumerate(b, start=1):
            for _ in range(n):
                term = term * _pullback_d(k, h)
        out = out + term
    return out


@lru_cache(maxsize=None)
def discriminant(k: int) -> SigmaPoly:
    """Delta = delta^2 in sigma coordinates."""
    return to_sigma(vandermonde(k) ** 2)


def delta_factor(A: WeylElement, seed: int = 0) -> W2Element:
    """The Q with delta * A = Delta * Q, for antisymmetric ``A``."""
    if A.denom_power:
        raise ContractViolation("delta_factor needs a polynomial operator")
    if classify(A) != ANTISYMMETRIC:
        raise NotAntisymmetric("delta_factor is defined on antisymmetric operators")
    S = pushforward(W.from_poly(vandermonde(A.k)) * A, seed=seed)
    D = discriminant(A.k)
    out = {}
    for b, c in S.coefficients().items():
        try:
            out[b] = exact_div(c, D)
        except NotDivisible as exc:
            raise VerificationFailed(f"coefficient of Ds^{b} is not divisible by Delta",
                                     witness=str(c)) from exc
    return W2Element.from_coefficients(A.k, out)


class LemmaResult:
    """Truthy iff the lemma held; carries the operator and a witness."""

    def __init__(self, ok: bool, operator: WeylElement, witness: str):
        self.ok = ok
        self.operator = operator
        self.witness = witness

    def __bool__(self):
        return self.ok


def lemma_14_8_check(Q: W2Element) -> LemmaResult:
    """delta^(2q-1) * pullback(Q) is a polynomial antisymmetric operator."""
    q = Q.order()
    if q < 1:
        raise ContractViolation("the lemma needs an operator of order >= 1")
    X = W.from_poly(vandermonde(Q.k) ** (2 * q - 1)) * pullback(Q)
    if X.denom_power:
        return LemmaResult(False, X, f"denominator delta^{X.denom_power} remains")
    kind = classify(X)
    if kind != ANTISYMMETRIC:
        return LemmaResult(False, X, f"operator is {kind}")
    return LemmaResult(True, X, "0")


# twisted module C[sigma][1/Delta] delta

@dataclass(frozen=True)
class TwistedElement:
    """``g * Delta^-m * delta`` with Delta not dividing g when m > 0."""

    g: Poly
    m: int = 0

    def __post_init__(self):
        if self.m < 0:
            raise ContractViolation("m must be nonnegative")
        g, m = self.g, self.m
        if g.is_zero():
            m = 0
        D = discriminant(g.k)
        while m > 0:
            try:
                g = exact_div(g, D)
            except NotDivisible:
                break
            m -= 1
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "m", m)

    @property
    def k(self) -> int:
        return self.g.k

    @classmethod
    def delta(cls, k: int) -> "TwistedElement":
        return cls(Poly.const(SIGMA(k), 1), 0)

    def lift(self, m: int) -> Poly:
        """Numerator over Delta^m (m >= self.m)."""
        return self.g * discriminant(self.k) ** (m - self.m)

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        m = max(self.m, other.m)
        return TwistedElement(self.lift(m) + other.lift(m), m)

    def scale(self, c) -> "TwistedElement":
        """Multiply by a scalar or a SigmaPoly."""
        return TwistedElement(self.g * c, self.m)

    def __str__(self) -> str:
        return f"({self.g}) * Delta^-{self.m} * delta"


def _twisted_d(x: TwistedElement, i: int) -> TwistedElement:
    D = discriminant(x.k)
    g = D * partial(x.g, i) + x.g * partial(D, i) * (Fraction(1, 2) - x.m)
    return TwistedElement(g, x.m + 1)


def twisted_apply(Q: W2Element, x: TwistedElement) -> TwistedElement:
    if Q.k != x.k:
        raise ContractViolation("k mismatch")
    k = Q.k
    cache = {(0,) * k: x}

    def d_power(beta):
        if beta not in cache:
            j = next(i for i, b in enumerate(beta) if b)
            prev = tuple(b - 1 if i == j else b for i, b in enumerate(beta))
            cache[beta] = _twisted_d(d_power(prev), j + 1)
        return cache[beta]

    out = TwistedElement(Poly.zero(SIGMA(k)), 0)
    for b, coeff in Q.coefficients().items():
        out = out + d_power(b).scale(coeff)
    return out


def bernstein_witness(k: int) -> W2Element:
    """P in W2 sending delta to delta / Delta in the twisted module."""
    if k < 2:
        raise ContractViolation("the witness needs k >= 2")
    Q1 = delta_factor(catalog(k).delta_check)
    P = Q1.scale(Fraction(1, dual_pairing(k)))
    got = twisted_apply(P, TwistedElement.delta(k))
    if got != TwistedElement(Poly.const(SIGMA(k), 1), 1):
        raise VerificationFailed("witness does not send delta to delta/Delta", witness=str(got))
    return P


# report items

def _random_w2(rng, k: int, max_order: int, max_coeff_degree: int, terms: int = 2) -> W2Element:
    acc = W2Element.zero(k)
    for _ in range(terms):
        g = rp.random_exponent(rng, k, max_coeff_degree)
        b = rp.random_exponent(rng, k, max_order)
        acc = acc + W2Element.monomial(g, b, rp.random_coefficient(rng))
    return acc


def _random_sigma_poly(rng, k: int, max_degree: int, terms: int = 2) -> SigmaPoly:
    acc = Poly.zero(SIGMA(k))
    for _ in range(terms):
        acc = acc + Poly.monomial(SIGMA(k), rp.random_exponent(rng, k, max_degree),
                                  rp.random_coefficient(rng))
    return acc


def check_transport(k: int, seed: int, n: int = 20) -> list[dict]:
    """Faithfulness, round trip and multiplicativity of the transport maps."""
    out = []
    for i in range(n):
        rng = rp.rng_for(seed, "transport", k, i)
        P = random_symmetric(rng, k, max_alpha=2, max_beta=3)
        g = _random_sigma_poly(rng, k, 3)
        lhs = to_sigma(apply_poly(P, realize(g)))
        out.append(rp.check("factorization", k, f"transport.{i}", lhs, apply_w2(pushforward(P, seed), g), seed))
    for i in range(n // 2):
        rng = rp.rng_for(seed, "roundtrip", k, i)
        Q = _random_w2(rng, k, 2, 2)
        g = _random_sigma_poly(rng, k, 3)
        out.append(rp.check("factorization", k, f"roundtrip.{i}", apply(pullback(Q), realize(g)),
                            realize(apply_w2(Q, g)), seed))
    for i in range(n // 4):
        rng = rp.rng_for(seed, "morphism", k, i)
        A = random_symmetric(rng, k, max_alpha=2, max_beta=1)
        B = random_symmetric(rng, k, max_alpha=1, max_beta=2)
        out.append(rp.check("factorization", k, f"morphism.{i}", pushforward(A * B, seed),
                            pushforward(A, seed) * pushforward(B, seed), seed))
    return out


def factorization_monomials(k: int) -> list[tuple]:
    bound = 3 if k == 2 else 2
    exps = _exponents_up_to(k, bound)
    return [(a, b) for a in exps for b in exps]


def check_factorization(k: int, seed: int) -> list[dict]:
    """delta_factor succeeds on every antisymmetrized monomial in range."""
    out = []
    seen = set()
    for a, b in factorization_monomials(k):
        A = antisymmetrize(W.monomial(a, b))
        if A.is_zero() or A in seen or -A in seen:
            continue
        seen.add(A)
        item = f"delta_factor.a{''.join(map(str, a))}.b{''.join(map(str, b))}"
        try:
            Q = delta_factor(A, seed)
        except VerificationFailed as exc:
            out.append(rp.record("factorization", k, item, rp.FAIL, A, "", exc.witness, seed))
            continue
        lhs = W.from_poly(vandermonde(k)) * A
        rhs = pullback(W2Element.from_sigma(discriminant(k)) * Q)
        out.append(rp.check("factorization", k, item, lhs, rhs, seed))
    return out


def _oriented(item, k, seed, computed: W2Element, stated: W2Element, note=None) -> dict:
    return rp.check("factorization", k, item, computed, stated, seed,
                    alternatives=[("Ds2->-Ds2", reflect(computed, 2), stated),
                                  ("negated", -computed, stated)], note=note)


def check_displays(seed: int) -> list[dict]:
    """Three k=2 factorizations delta * A = Delta * Q with A of order 1, as usually written."""
    k = 2
    d1, d2 = W2Element.d(k, 1), W2Element.d(k, 2)
    s1 = W2Element.from_sigma(sigma(k, 1))
    za, zb = W.z(k, 1), W.z(k, 2)
    da, db = W.d(k, 1), W.d(k, 2)
    cases = [
        ("display.1", da - db, d2),
        ("display.2", za * da - zb * db, d1),
        ("display.3", zb * da - za * db, -(d1 - s1 * d2)),
    ]
    return [_oriented(item, k, seed, delta_factor(A, seed), stated) for item, A, stated in cases]


def check_remark(k: int, seed: int, n: int = 4) -> list[dict]:
    """delta^-1 P delta lies in W2 for symmetric P."""
    out = []
    delta = W.from_poly(vandermonde(k))
    for i in range(n):
        rng = rp.rng_for(seed, "remark", k, i)
        P = random_symmetric(rng, k, max_alpha=2, max_beta=2)
        item = f"remark.{i}"
        try:
            Q = delta_factor(P * delta, seed)
        except VerificationFailed as exc:
            out.append(rp.record("factorization", k, item, rp.FAIL, P, "", exc.witness, seed))
            continue
        # Q acts on C[sigma] as delta^-1 P delta
        g = _random_sigma_poly(rng, k, 2)
        lhs = realize(apply_w2(Q, g)) * vandermonde(k)
        out.append(rp.check("factorization", k, item, lhs, apply_poly(P, realize(g) * vandermonde(k)), seed))
    return out


def example_operator() -> W2Element:
    """Delta (6 D2^2 - Delta D2^3) D1 at k = 2."""
    k = 2
    D = W2Element.from_sigma(discriminant(k))
    d1, d2 = W2Element.d(k, 1), W2Element.d(k, 2)
    return D * (d2 * d2 * 6 - D * d2 * d2 * d2) * d1


def example_realization() -> WeylElement:
    """-(Da - Db)^3 (a Da - b Db) at k = 2."""
    k = 2
    za, zb = W.z(k, 1), W.z(k, 2)
    da, db = W.d(k, 1), W.d(k, 2)
    return -((da - db) ** 3) * (za * da - zb * db)


def check_example(seed: int) -> list[dict]:
    """Symmetric k=2 operator whose coefficients do not vanish on delta = 0."""
    k = 2
    P = example_realization()
    a = Poly.var(Z(k), 1)
    coeff = P.coefficients().get((4, 0), Poly.zero(Z(k)))
    out = [rp.check("factorization", k, "example.Da4", coeff, -a, seed,
                    alternatives=[("negated", -coeff, -a)])]
    shifted = W(k, P.terms, 1)
    ok = shifted.denom_power > 0 and classify(shifted) == ANTISYMMETRIC
    out.append(rp.check_true("factorization", k, "example.not_in_W1", ok, witness=str(shifted), seed=seed))
    return out


def example_observations(seed: int) -> list[dict]:
    """The literal operator identity of the k=2 example and its Delta-divisibility."""
    k = 2
    P = example_realization()
    Q = example_operator()
    out = [rp.check("factorization", k, "observe.example.operator", pullback(Q), P, seed,
                    alternatives=[("Ds2->-Ds2", pullback(reflect(Q, 2)), P),
                                  ("negated", -pullback(Q), P)])]
    S = pushforward(P, seed)
    bad = []
    for b, c in S.coefficients().items():
        try:
            exact_div(c, discriminant(k))
        except NotDivisible:
            bad.append(f"Ds^{b}: {c}")
    out.append(rp.check_true("factorization", k, "observe.example.in_Delta_W2", not bad,
                             lhs=S, witness="; ".join(bad), seed=seed))
    return out


def check_lemma_14_8(k: int, seed: int) -> list[dict]:
    out = []
    for g in _exponents_up_to(k, 2):
        for b in _exponents_up_to(k, 2):
            if not any(b):
                continue
            res = lemma_14_8_check(W2Element.monomial(g, b))
            item = f"lemma.g{''.join(map(str, g))}.b{''.join(map(str, b))}"
            out.append(rp.check_true("factorization", k, item, res.ok, witness=res.witness, seed=seed))
    return out


def _random_twisted(rng, k: int) -> TwistedElement:
    return TwistedElement(_random_sigma_poly(rng, k, 2), rng.randint(0, 2))


def check_twisted(k: int, seed: int, n: int = 4) -> list[dict]:
    """Flatness of the connection and agreement with the action on delta."""
    out = []
    for t in range(n):
        rng = rp.rng_for(seed, "twisted", k, t)
        x = _random_twisted(rng, k)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                di, dj = W2Element.d(k, i), W2Element.d(k, j)
                out.append(rp.check("twisted", k, f"flat.{t}.d{i}d{j}",
                                    twisted_apply(di, twisted_apply(dj, x)),
                                    twisted_apply(dj, twisted_apply(di, x)), seed))
        Q1 = _random_w2(rng, k, 1, 1)
        Q2 = _random_w2(rng, k, 1, 1)
        out.append(rp.check("twisted", k, f"multiplicative.{t}", twisted_apply(Q1 * Q2, x),
                            twisted_apply(Q1, twisted_apply(Q2, x)), seed))
    for t in range(n):
        rng = rp.rng_for(seed, "consistency", k, t)
        P = random_symmetric(rng, k, max_alpha=2, max_beta=2)
        out.append(rp.check("twisted", k, f"consistency.{t}",
                            twisted_apply(pushforward(P, seed), TwistedElement.delta(k)),
                            TwistedElement(phi(P), 0), seed))
    return out


def check_bernstein(k: int, seed: int) -> list[dict]:
    try:
        P = bernstein_witness(k)
    except VerificationFailed as exc:
        return [rp.record("bernstein", k, "witness", rp.FAIL, "", "", exc.witness, seed)]
    target = TwistedElement(Poly.const(SIGMA(k), 1), 1)
    out = [rp.check("bernstein", k, "witness", twisted_apply(P, TwistedElement.delta(k)), target, seed)]
    D = W2Element.from_sigma(discriminant(k))
    out.append(rp.check("bernstein", k, "witness.times_Delta",
                        twisted_apply(D * P, TwistedElement.delta(k)), TwistedElement.delta(k), seed))
    return out


def observations(seed: int) -> list[dict]:
    """Literal k=2 forms of Sigma_1, Sigma_2 and the example operator; recorded, not gating."""
    k = 2
    cat = catalog(k)
    d1, d2 = W2Element.d(k, 1), W2Element.d(k, 2)
    s1 = W2Element.from_sigma(sigma(k, 1))
    s2 = W2Element.from_sigma(sigma(k, 2))
    return [
        _oriented("observe.Sigma1", k, seed, pushforward(cat.Sigma(1), seed), d1 * 2 - s1 * d2),
        _oriented("observe.Sigma2", k, seed, pushforward(cat.Sigma(2), seed),
                  d1 * d1 + s1 * d1 * d2 * 2 + s2 * d2 * d2 * 2 + d2),
    ] + example_observations(seed)
