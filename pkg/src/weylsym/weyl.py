"""Normal-ordered arithmetic in the Weyl algebra on z_1..z_k.

A :class:`WeylElement` stores ``delta^-m * sum c * z^alpha * D^beta`` with every
``z`` factor to the left of every derivative.  ``delta`` is the Vandermonde
product; keeping a single global power of it is enough for the localized
operators obtained by pulling back derivatives in the symmetric coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb, perm
from typing import Mapping, Sequence

from .errors import ContractViolation, NotDivisible
from .poly import (Poly, Z, exact_div, format_scalar, parse_monomial, parse_scalar,
                   partial, partial_power, qnorm, vandermonde)

Key = tuple  # (alpha, beta)


@lru_cache(maxsize=None)
def _exchange(b: int, a: int) -> tuple:
    """One-variable Leibniz table: D^b z^a = sum_t w_t z^(a-t) D^(b-t)."""
    return tuple((t, comb(b, t) * perm(a, t)) for t in range(min(a, b) + 1))


def normal_product(left: Mapping[Key, object], right: Mapping[Key, object]) -> dict:
    """Product of two normal-ordered term maps (any number of variables)."""
    out: dict = {}
    for (a1, b1), c1 in left.items():
        for (a2, b2), c2 in right.items():
            c = c1 * c2
            if not any(b1) or not any(a2):
                key = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
                out[key] = out.get(key, 0) + c
                continue
            tables = [_exchange(b, a) for b, a in zip(b1, a2)]
            for combo in product(*tables):
                w = c
                alpha = []
                beta = []
                for i, (t, wt) in enumerate(combo):
                    w *= wt
                    alpha.append(a1[i] + a2[i] - t)
                    beta.append(b1[i] + b2[i] - t)
                key = (tuple(alpha), tuple(beta))
                out[key] = out.get(key, 0) + w
    return {key: qnorm(c) for key, c in out.items() if c}


def group_by_beta(terms: Mapping[Key, object], alphabet) -> dict:
    """Split a term map into ``beta -> coefficient polynomial``."""
    groups: dict = {}
    for (a, b), c in terms.items():
        groups.setdefault(b, {})[a] = c
    return {b: Poly._raw(alphabet, g) for b, g in groups.items()}


def ungroup(groups: Mapping[tuple, Poly]) -> dict:
    out = {}
    for b, p in groups.items():
        for a, c in p.terms.items():
            out[(a, b)] = c
    return out


def _order_key(key: Key):
    a, b = key
    e = b + a
    return (sum(e), e)


@dataclass(frozen=True)
class Permutation:
    """A bijection of 1..k given by its images."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ContractViolation(f"not a permutation: {self.images}")

    @property
    def k(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def transposition(cls, k: int, i: int, j: int) -> "Permutation":
        images = list(range(1, k + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    def sign(self) -> int:
        seen = [False] * self.k
        s = 1
        for start in range(self.k):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def apply_exponent(self, e: tuple) -> tuple:
        out = [0] * self.k
        for j, x in enumerate(e):
            out[self.images[j] - 1] = x
        return tuple(out)


class LocalizedPoly:
    """``numerator * delta^-power`` with ``delta`` not dividing the numerator."""

    __slots__ = ("numerator", "power")

    def __init__(self, numerator: Poly, power: int):
        self.numerator = numerator
        self.power = power

    def __eq__(self, other):
        if not isinstance(other, LocalizedPoly):
            return NotImplemented
        return self.numerator == other.numerator and self.power == other.power

    def __repr__(self):
        return f"LocalizedPoly(({self.numerator}) / delta^{self.power})"


def _reduce_fraction(num: Poly, m: int) -> tuple[Poly, int]:
    delta = vandermonde(num.k)
    while m > 0 and not num.is_zero():
        try:
            num = exact_div(num, delta)
        except NotDivisible:
            break
        m -= 1
    if num.is_zero():
        m = 0
    return num, m


class WeylElement:
    """``delta^-denom_power`` times a normal-ordered operator in z and D_z."""

    __slots__ = ("k", "terms", "denom_power")

    def __init__(self, k: int, terms: Mapping[Key, object] | None = None, denom_power: int = 0):
        if k < 1:
            raise ContractViolation("k must be >= 1")
        if denom_power < 0:
            raise ContractViolation("denom_power must be nonnegative")
        clean = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != k or len(b) != k:
                raise ContractViolation(f"bad multi-index length for k={k}")
            if c:
                clean[(a, b)] = qnorm(c)
        self.k = k
        self.terms = clean
        self.denom_power = denom_power
        if denom_power:
            self._reduce()

    @classmethod
    def _raw(cls, k, terms, denom_power=0) -> "WeylElement":
        x = object.__new__(cls)
        x.k = k
        x.terms = terms
        x.denom_power = denom_power
        if denom_power:
            x._reduce()
        return x

    def _reduce(self):
        if not self.terms:
            self.denom_power = 0
            return
        delta = vandermonde(self.k)
        groups = group_by_beta(self.terms, Z(self.k))
        m = self.denom_power
        while m > 0:
            try:
                groups = {b: exact_div(p, delta) for b, p in groups.items()}
            except NotDivisible:
                break
            m -= 1
        if m != self.denom_power:
            self.terms = ungroup(groups)
            self.denom_power = m

    # constructors

    @classmethod
    def zero(cls, k: int) -> "WeylElement":
        return cls._raw(k, {})

    @classmethod
    def const(cls, k: int, c=1) -> "WeylElement":
        zero = (0,) * k
        return cls(k, {(zero, zero): c})

    @classmethod
    def from_poly(cls, f: Poly) -> "WeylElement":
        """Multiplication by the z-polynomial ``f``."""
        zero = (0,) * f.k
        return cls._raw(f.k, {(e, zero): c for e, c in f.terms.items()})

    @classmethod
    def z(cls, k: int, i: int) -> "WeylElement":
        return cls.from_poly(Poly.var(Z(k), i))

    @classmethod
    def d(cls, k: int, i: int) -> "WeylElement":
        if not 1 <= i <= k:
            raise ContractViolation(f"index {i} outside 1..{k}")
        beta = [0] * k
        beta[i - 1] = 1
        return cls._raw(k, {((0,) * k, tuple(beta)): 1})

    @classmethod
    def monomial(cls, alpha: Sequence[int], beta: Sequence[int], c=1) -> "WeylElement":
        return cls(len(alpha), {(tuple(alpha), tuple(beta)): c})

    @classmethod
    def from_derivative_poly(cls, f: Poly) -> "WeylElement":
        """Constant-coefficient operator obtained by substituting D_j for z_j in ``f``."""
        zero = (0,) * f.k
        return cls._raw(f.k, {(zero, e): c for e, c in f.terms.items()})

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        if not self.terms:
            return -1
        return max(sum(b) for _, b in self.terms)

    def weights(self) -> set[int]:
        shift = self.denom_power * self.k * (self.k - 1) // 2
        return {sum(a) - sum(b) - shift for a, b in self.terms}

    def weight(self) -> int | None:
        """The common weight of all terms, or None if not of pure weight."""
        w = self.weights()
        return w.pop() if len(w) == 1 else None

    def coefficients(self) -> dict:
        """``beta -> coefficient polynomial`` (numerators when localized)."""
        return group_by_beta(self.terms, Z(self.k))

    def order_part(self, q: int) -> "WeylElement":
        return WeylElement._raw(self.k, {key: c for key, c in self.terms.items() if sum(key[1]) == q},
                                self.denom_power)

    def constant_value(self):
        zero = (0,) * self.k
        if self.denom_power or any(key != (zero, zero) for key in self.terms):
            raise ContractViolation("element is not a constant")
        return self.terms.get((zero, zero), 0)

    # arithmetic

    def _check(self, other: "WeylElement"):
        if not isinstance(other, WeylElement):
            raise ContractViolation(f"expected WeylElement, got {type(other).__name__}")
        if other.k != self.k:
            raise ContractViolation(f"k mismatch: {self.k} vs {other.k}")

    def _lift(self, extra: int) -> dict:
        """Term map of the numerator after multiplying it by delta^extra."""
        if not extra:
            return self.terms
        dp = _delta_power(self.k, extra)
        return normal_product(WeylElement.from_poly(dp).terms, self.terms)

    def __add__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(self.k, other)
        self._check(other)
        m = max(self.denom_power, other.denom_power)
        out = dict(self._lift(m - self.denom_power))
        for key, c in other._lift(m - other.denom_power).items():
            v = out.get(key, 0) + c
            if v:
                out[key] = qnorm(v)
            else:
                out.pop(key, None)
        return WeylElement._raw(self.k, out, m)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement._raw(self.k, {key: -c for key, c in self.terms.items()}, self.denom_power)

    def __sub__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(self.k, other)
        return self + (-other)

    def __rsub__(self, other) -> "WeylElement":
        return (-self) + other

    def scale(self, c) -> "WeylElement":
        if not c:
            return WeylElement.zero(self.k)
        return WeylElement._raw(self.k, {key: qnorm(v * c) for key, v in self.terms.items()},
                                self.denom_power)

    def __mul__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return weyl_mul(self, other)

    def __rmul__(self, other) -> "WeylElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "WeylElement":
        out = WeylElement.const(self.k, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(self.k, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return (self.k == other.k and self.denom_power == other.denom_power
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.k, self.denom_power, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"WeylElement({self})"

    def __str__(self) -> str:
        return serialize(self)


@lru_cache(maxsize=None)
def _delta_power(k: int, n: int) -> Poly:
    return vandermonde(k) ** n


@lru_cache(maxsize=None)
def _inverse_delta_derivative(k: int, n: int, gamma: tuple) -> Poly:
    """``h`` with D^gamma(delta^-n) = h * delta^(-n-|gamma|)."""
    if not any(gamma):
        return Poly.const(Z(k), 1)
    j = next(i for i, g in enumerate(gamma) if g)
    prev = list(gamma)
    prev[j] -= 1
    prev = tuple(prev)
    h = _inverse_delta_derivative(k, n, prev)
    r = n + sum(prev)
    delta = vandermonde(k)
    return partial(h, j + 1) * delta - h * partial(delta, j + 1) * r


def _compose_inverse_delta(x: WeylElement, n: int) -> tuple[dict, int]:
    """Write ``X o delta^-n`` as ``delta^-(n+r) * Y`` with Y polynomial; return (Y terms, n+r)."""
    k = x.k
    r = max(x.order(), 0)
    out: dict = {}
    for b, coeff in x.coefficients().items():
        for gamma in product(*(range(bi + 1) for bi in b)):
            w = 1
            for bi, gi in zip(b, gamma):
                w *= comb(bi, gi)
            h = _inverse_delta_derivative(k, n, gamma)
            poly = coeff * h * _delta_power(k, r - sum(gamma))
            rest = tuple(bi - gi for bi, gi in zip(b, gamma))
            for a, c in poly.terms.items():
                key = (a, rest)
                out[key] = out.get(key, 0) + w * c
    return {key: c for key, c in out.items() if c}, n + r


def weyl_mul(A: WeylElement, B: WeylElement) -> WeylElement:
    """Normal-ordered product ``A * B``."""
    A._check(B)
    if B.denom_power:
        left, extra = _compose_inverse_delta(A, B.denom_power)
    else:
        left, extra = A.terms, 0
    return WeylElement._raw(A.k, normal_product(left, B.terms), A.denom_power + extra)


def commutator(A: WeylElement, B: WeylElement) -> WeylElement:
    """``[A, B] = AB - BA``."""
    return weyl_mul(A, B) - weyl_mul(B, A)


def apply(A: WeylElement, f: Poly) -> Poly | LocalizedPoly:
    """Let the operator act on a z-polynomial.

    Returns a :class:`Poly` when the result is polynomial, otherwise a
    :class:`LocalizedPoly` carrying the remaining delta power.
    """
    if f.alphabet != Z(A.k):
        raise ContractViolation(f"operator on k={A.k} cannot act on {f.alphabet}")
    acc: dict = {}
    for b, coeff in A.coefficients().items():
        db = partial_power(f, b)
        if db.is_zero():
            continue
        for e, c in (coeff * db).terms.items():
            acc[e] = acc.get(e, 0) + c
    result = Poly(Z(A.k), acc)
    if A.denom_power == 0:
        return result
    num, m = _reduce_fraction(result, A.denom_power)
    return num if m == 0 else LocalizedPoly(num, m)


def apply_poly(A: WeylElement, f: Poly) -> Poly:
    """Like :func:`apply` but insists on a polynomial result."""
    out = apply(A, f)
    if isinstance(out, LocalizedPoly):
        raise NotDivisible("result keeps a delta denominator", remainder=out.numerator)
    return out


def permute(A: WeylElement, tau: Permutation) -> WeylElement:
    """Relabel z_j, D_j as z_tau(j), D_tau(j)."""
    if tau.k != A.k:
        raise ContractViolation("permutation size mismatch")
    sign = tau.sign() ** A.denom_power
    out = {(tau.apply_exponent(a), tau.apply_exponent(b)): c * sign for (a, b), c in A.terms.items()}
    return WeylElement._raw(A.k, out, A.denom_power)


def symmetrize(A: WeylElement) -> WeylElement:
    """Sum of all k! relabelings of ``A``."""
    if A.denom_power:
        raise ContractViolation("symmetrize needs a polynomial operator")
    acc: dict = {}
    for images in permutations(range(1, A.k + 1)):
        tau = Permutation(images)
        for (a, b), c in A.terms.items():
            key = (tau.apply_exponent(a), tau.apply_exponent(b))
            acc[key] = acc.get(key, 0) + c
    return WeylElement(A.k, acc)


def antisymmetrize(A: WeylElement) -> WeylElement:
    """Signed sum of all relabelings of ``A``."""
    if A.denom_power:
        raise ContractViolation("antisymmetrize needs a polynomial operator")
    acc: dict = {}
    for images in permutations(range(1, A.k + 1)):
        tau = Permutation(images)
        s = tau.sign()
        for (a, b), c in A.terms.items():
            key = (tau.apply_exponent(a), tau.apply_exponent(b))
            acc[key] = acc.get(key, 0) + s * c
    return WeylElement(A.k, acc)


SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
NEITHER = "neither"


def classify(A: WeylElement) -> str:
    """Behaviour under adjacent transpositions, which generate the symmetric group."""
    swaps = [permute(A, Permutation.transposition(A.k, i, i + 1)) for i in range(1, A.k)]
    if all(s == A for s in swaps):
        return SYMMETRIC
    neg = -A
    if all(s == neg for s in swaps):
        return ANTISYMMETRIC
    return NEITHER


# canonical text form

def _names(k: int, var: str, dvar: str):
    return [f"{var}{i}" for i in range(1, k + 1)], [f"{dvar}{i}" for i in range(1, k + 1)]


def format_terms(terms: Mapping[Key, object], xnames: Sequence[str], dnames: Sequence[str]) -> str:
    if not terms:
        return "0"
    chunks = []
    for key in sorted(terms, key=_order_key, reverse=True):
        a, b = key
        parts = [format_scalar(terms[key])]
        for names, e in ((xnames, a), (dnames, b)):
            for name, x in zip(names, e):
                if x == 1:
                    parts.append(name)
                elif x:
                    parts.append(f"{name}^{x}")
        chunks.append("*".join(parts))
    return " + ".join(chunks)


def parse_terms(text: str, xnames: Sequence[str], dnames: Sequence[str]) -> dict:
    text = text.strip()
    if text == "0":
        return {}
    k = len(xnames)
    names = {n: i for i, n in enumerate(list(xnames) + list(dnames))}
    out: dict = {}
    for chunk in text.split(" + "):
        coeff, *factors = chunk.strip().split("*")
        e = parse_monomial(factors, names, 2 * k)
        key = (e[:k], e[k:])
        out[key] = out.get(key, 0) + parse_scalar(coeff)
    return out


def serialize(A: WeylElement) -> str:
    body = format_terms(A.terms, *_names(A.k, "z", "Dz"))
    if A.denom_power:
        return f"(1/delta^{A.denom_power}) * ( {body} )"
    return body


def parse(text: str, k: int) -> WeylElement:
    text = text.strip()
    m = 0
    if text.startswith("(1/delta^"):
        head, _, rest = text.partition(") * ( ")
        m = int(head[len("(1/delta^"):])
        text = rest.rstrip()
        if not text.endswith(")"):
            raise ValueError("unbalanced localized form")
        text = text[:-1]
    return WeylElement(k, parse_terms(text, *_names(k, "z", "Dz")), m)
