"""Symmetric functions and the passage between z and sigma coordinates.

Polynomials in sigma_1..sigma_k are plain :class:`Poly` values over the
``SIGMA(k)`` alphabet (``SigmaPoly`` below is only a name for that).  The
weight of sigma_h is h, so a SigmaPoly of pure weight w realizes as a
homogeneous z-polynomial of degree w.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .errors import ContractViolation, NotAntisymmetric, NotSymmetric
from .poly import SIGMA, Z, Poly, ZetaPoly, exact_div, partial, vandermonde

SigmaPoly = Poly


@lru_cache(maxsize=None)
def elementary_z(k: int, h: int) -> Poly:
    """sigma_h(z_1, ..., z_k); zero for h > k."""
    A = Z(k)
    if h < 0 or h > k:
        return Poly.zero(A)
    terms = {}
    for subset in combinations(range(k), h):
        e = [0] * k
        for i in subset:
            e[i] = 1
        terms[tuple(e)] = 1
    return Poly(A, terms)


@lru_cache(maxsize=None)
def power_sum_z(k: int, p: int) -> Poly:
    A = Z(k)
    if p == 0:
        return Poly.const(A, k)
    terms = {}
    for j in range(k):
        e = [0] * k
        e[j] = p
        terms[tuple(e)] = 1
    return Poly(A, terms)


def sigma(k: int, h: int) -> SigmaPoly:
    """The coordinate sigma_h as a SigmaPoly (1 for h = 0, 0 for h > k)."""
    if h == 0:
        return Poly.const(SIGMA(k), 1)
    if h > k or h < 0:
        return Poly.zero(SIGMA(k))
    return Poly.var(SIGMA(k), h)


def sigma_weight(g: SigmaPoly) -> int | None:
    """Pure weight of ``g`` (None if mixed or zero)."""
    ws = g.weighted_degrees(range(1, g.k + 1))
    return ws.pop() if len(ws) == 1 else None


@lru_cache(maxsize=None)
def _sigma_monomial_z(k: int, gamma: tuple) -> Poly:
    if not any(gamma):
        return Poly.const(Z(k), 1)
    h = max(i for i, g in enumerate(gamma) if g)
    prev = list(gamma)
    prev[h] -= 1
    return _sigma_monomial_z(k, tuple(prev)) * elementary_z(k, h + 1)


def realize(g: SigmaPoly) -> Poly:
    """Substitute sigma_h -> sigma_h(z)."""
    k = g.k
    acc: dict = {}
    for gamma, c in g.terms.items():
        for e, v in _sigma_monomial_z(k, gamma).terms.items():
            acc[e] = acc.get(e, 0) + c * v
    return Poly(Z(k), acc)


def is_symmetric(f: Poly) -> bool:
    k = f.k
    for i in range(1, k):
        images = list(range(1, k + 1))
        images[i - 1], images[i] = i + 1, i
        if f.permute(images) != f:
            return False
    return True


def is_antisymmetric(f: Poly) -> bool:
    k = f.k
    neg = -f
    for i in range(1, k):
        images = list(range(1, k + 1))
        images[i - 1], images[i] = i + 1, i
        if f.permute(images) != neg:
            return False
    return True


def to_sigma(f: Poly) -> SigmaPoly:
    """Rewrite a symmetric z-polynomial in the elementary symmetric functions.

    Gauss reduction: subtract ``c * sigma^gamma`` matching the lex-leading
    term until nothing is left.
    """
    if not is_symmetric(f):
        raise NotSymmetric("polynomial is not symmetric")
    k = f.k
    rem = dict(f.terms)
    out = {}
    while rem:
        lam = max(rem)
        c = rem[lam]
        gamma = tuple(lam[i] - (lam[i + 1] if i + 1 < k else 0) for i in range(k))
        if any(g < 0 for g in gamma):
            raise NotSymmetric("leading exponent is not a partition")
        out[gamma] = c
        for e, v in _sigma_monomial_z(k, gamma).terms.items():
            w = rem.get(e, 0) - c * v
            if w:
                rem[e] = w
            else:
                rem.pop(e, None)
    return Poly(SIGMA(k), out)


def antisym_factor(f: Poly) -> SigmaPoly:
    """The SigmaPoly g with g * delta = f, for antisymmetric f."""
    if not is_antisymmetric(f):
        raise NotAntisymmetric("polynomial is not antisymmetric")
    return to_sigma(exact_div(f, vandermonde(f.k)))


@lru_cache(maxsize=None)
def m_poly(k: int, d: int) -> SigmaPoly:
    """M_d from the recurrence M_d = -sum_h (-1)^h sigma_h M_(d-h).

    M_0 = 1 and M_d = 0 for d in [-k+1, -1].
    """
    if d < 1 - k:
        raise ContractViolation(f"M_d is defined for d >= {1 - k}, got {d}")
    if d < 0:
        return Poly.zero(SIGMA(k))
    if d == 0:
        return Poly.const(SIGMA(k), 1)
    acc = Poly.zero(SIGMA(k))
    for h in range(1, k + 1):
        if d - h < 1 - k:
            break
        acc = acc - sigma(k, h) * m_poly(k, d - h) * (-1) ** h
    return acc


@lru_cache(maxsize=None)
def newton_in_sigma(k: int, p: int) -> SigmaPoly:
    if p < 0:
        raise ContractViolation("p must be >= 0")
    return to_sigma(power_sum_z(k, p))


def sigma1_action(g: SigmaPoly) -> SigmaPoly:
    """Sum of all D_{z_j} acting on C[sigma]: sum_h (k-h) sigma_h d/dsigma_(h+1)."""
    k = g.k
    acc = Poly.zero(SIGMA(k))
    for h in range(k):
        acc = acc + sigma(k, h) * partial(g, h + 1) * (k - h)
    return acc


@lru_cache(maxsize=None)
def p_of_zeta(k: int) -> ZetaPoly:
    """P(zeta) = prod_j (zeta - z_j) with z-polynomial coefficients."""
    return ZetaPoly.from_roots([Poly.var(Z(k), j) for j in range(1, k + 1)])


class DivisionLemma(NamedTuple):
    quotient: ZetaPoly
    remainder: ZetaPoly
    check: bool


def division_lemma(k: int, d: int) -> DivisionLemma:
    """Divide z^(d+k-1) by prod_{h<k} (z - z_h) and compare Q_d(z_k) with M_d."""
    if k < 2:
        raise ContractViolation("division lemma needs k >= 2")
    if d < 0:
        raise ContractViolation("d must be >= 0")
    A = Z(k)
    pi_k = ZetaPoly.from_roots([Poly.var(A, h) for h in range(1, k)])
    q, r = ZetaPoly.monomial(A, d + k - 1).divmod_monic(pi_k)
    ok = r.degree() <= k - 2 and q.evaluate(Poly.var(A, k)) == realize(m_poly(k, d))
    return DivisionLemma(q, r, ok)
