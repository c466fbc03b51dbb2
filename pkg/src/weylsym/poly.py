"""Exact multivariate polynomials over the rationals.

A :class:`Poly` is a dict from exponent tuples to nonzero rational
coefficients, tagged with the alphabet its variables come from.  Coefficients
are kept as ``int`` whenever they are integral and as ``Fraction`` otherwise,
which keeps the heavy integer computations (Vandermonde products, operator
applications) on the fast path.

Terms are ordered graded-lexicographically, largest first; that order is used
for leading terms, for division and for the canonical text form.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from .errors import ContractViolation, NonMonicDenominator, NotDivisible

Scalar = Union[int, Fraction]
Exp = tuple


class VarKind(Enum):
    Z = "z"
    SIGMA = "s"
    ZETA = "zeta"


@dataclass(frozen=True)
class Alphabet:
    kind: VarKind
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ContractViolation(f"alphabet needs k >= 1, got {self.k}")

    def name(self, i: int) -> str:
        """Name of the variable at 0-based position ``i``."""
        if self.kind is VarKind.ZETA and self.k == 1:
            return "zeta"
        return f"{self.kind.value}{i + 1}"

    def names(self) -> list[str]:
        return [self.name(i) for i in range(self.k)]


def Z(k: int) -> Alphabet:
    return Alphabet(VarKind.Z, k)


def SIGMA(k: int) -> Alphabet:
    return Alphabet(VarKind.SIGMA, k)


ZETA = Alphabet(VarKind.ZETA, 1)


def qnorm(c) -> Scalar:
    """Canonical scalar: ``int`` when integral, else ``Fraction``."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"not a rational scalar: {c!r}")


def qdiv(a, b) -> Scalar:
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return qnorm(Fraction(a) / b)


def format_scalar(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_scalar(text: str) -> Scalar:
    return qnorm(Fraction(text.strip()))


def grlex_key(e: Exp):
    return (sum(e), e)


def _heap_key(e: Exp):
    # min-heap entry whose smallest element is the grlex-largest exponent
    return (-sum(e), tuple(-x for x in e))


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable polynomial over ``alphabet`` with rational coefficients."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Exp, Scalar] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != alphabet.k or any(x < 0 for x in e):
                    raise ContractViolation(f"bad exponent {e} for {alphabet}")
                if c:
                    clean[e] = qnorm(c)
        self.alphabet = alphabet
        self.terms = clean

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.alphabet = alphabet
        p.terms = terms
        return p

    # constructors

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "Poly":
        return cls._raw(alphabet, {})

    @classmethod
    def const(cls, alphabet: Alphabet, c: Scalar = 1) -> "Poly":
        return cls(alphabet, {(0,) * alphabet.k: c})

    @classmethod
    def var(cls, alphabet: Alphabet, i: int) -> "Poly":
        """The variable with 1-based index ``i``."""
        _check_index(alphabet, i)
        e = [0] * alphabet.k
        e[i - 1] = 1
        return cls._raw(alphabet, {tuple(e): 1})

    @classmethod
    def monomial(cls, alphabet: Alphabet, exps: Sequence[int], c: Scalar = 1) -> "Poly":
        return cls(alphabet, {tuple(exps): c})

    # inspection

    @property
    def k(self) -> int:
        return self.alphabet.k

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ContractViolation("polynomial is not constant")
        return self.terms.get((0,) * self.k, 0)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        _check_index(self.alphabet, i)
        if not self.terms:
            return -1
        return max(e[i - 1] for e in self.terms)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * x for w, x in zip(weights, e)) for e in self.terms}

    def lead(self) -> tuple[Exp, Scalar]:
        """Graded-lex leading exponent and coefficient."""
        if not self.terms:
            raise ContractViolation("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def lex_lead(self) -> tuple[Exp, Scalar]:
        if not self.terms:
            raise ContractViolation("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exp, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.alphabet != self.alphabet:
                raise ContractViolation(
                    f"alphabet mismatch: {self.alphabet} vs {other.alphabet}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.alphabet, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = qnorm(v)
            else:
                out.pop(e, None)
        return Poly._raw(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.alphabet, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        if not c:
            return Poly.zero(self.alphabet)
        return Poly._raw(self.alphabet, {e: qnorm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ContractViolation("negative power")
        result = Poly.const(self.alphabet, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.alphabet, other).terms
        if not isinstance(other, Poly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.alphabet.kind.name}{self.k}, {self})"

    def __str__(self) -> str:
        return serialize(self)

    # calculus and substitutions

    def partial(self, i: int) -> "Poly":
        return partial(self, i)

    def permute(self, images: Sequence[int]) -> "Poly":
        """Relabel variable ``j`` as ``images[j-1]`` (both 1-based)."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.k
            for j, x in enumerate(e):
                ne[images[j] - 1] = x
            out[tuple(ne)] = c
        return Poly._raw(self.alphabet, out)

    def substitute(self, values: Sequence["Poly"]) -> "Poly":
        """Compose: replace variable ``i`` by ``values[i-1]``."""
        if len(values) != self.k:
            raise ContractViolation("need one value per variable")
        target = values[0].alphabet
        powers: list[dict[int, Poly]] = [{0: Poly.const(target, 1)} for _ in values]

        def power(i, n):
            cache = powers[i]
            if n not in cache:
                cache[n] = power(i, n - 1) * values[i]
            return cache[n]

        acc: dict = {}
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for i, x in enumerate(e):
                if x:
                    term = term * power(i, x)
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Poly(target, acc)

    def with_alphabet(self, alphabet: Alphabet) -> "Poly":
        if alphabet.k != self.k:
            raise ContractViolation("alphabet size mismatch")
        return Poly._raw(alphabet, dict(self.terms))


def _check_index(alphabet: Alphabet, i: int):
    if not 1 <= i <= alphabet.k:
        raise ContractViolation(f"variable index {i} outside 1..{alphabet.k}")


def mul(p: Poly, q: Poly) -> Poly:
    if p.alphabet != q.alphabet:
        raise ContractViolation(f"alphabet mismatch: {p.alphabet} vs {q.alphabet}")
    if len(p.terms) > len(q.terms):
        p, q = q, p
    out: dict = {}
    qi = list(q.terms.items())
    for e1, c1 in p.terms.items():
        for e2, c2 in qi:
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return Poly._raw(p.alphabet, {e: qnorm(c) for e, c in out.items() if c})


def exact_div(num: Poly, den: Poly) -> Poly:
    """Return ``q`` with ``q * den == num``; raise :class:`NotDivisible` otherwise."""
    if num.alphabet != den.alphabet:
        raise ContractViolation(f"alphabet mismatch: {num.alphabet} vs {den.alphabet}")
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_e, lead_c = den.lead()
    rest = [(e, c) for e, c in den.terms.items() if e != lead_e]
    rem = dict(num.terms)
    heap = [(_heap_key(e), e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while rem:
        _, e = heapq.heappop(heap)
        if e not in rem:
            continue
        shift = tuple(x - y for x, y in zip(e, lead_e))
        if any(x < 0 for x in shift):
            raise NotDivisible("polynomial division is not exact",
                               remainder=Poly(num.alphabet, rem))
        c = qdiv(rem.pop(e), lead_c)
        quot[shift] = c
        for e2, c2 in rest:
            t = tuple(x + y for x, y in zip(shift, e2))
            old = rem.get(t)
            v = (old or 0) - c * c2
            if v:
                rem[t] = v
                if old is None:
                    heapq.heappush(heap, (_heap_key(t), t))
            elif old is not None:
                del rem[t]
    return Poly(num.alphabet, quot)


def partial(p: Poly, var_index: int) -> Poly:
    _check_index(p.alphabet, var_index)
    i = var_index - 1
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
    return Poly._raw(p.alphabet, out)


def partial_power(p: Poly, beta: Sequence[int]) -> Poly:
    """Apply the mixed derivative with multi-index ``beta``."""
    out = {}
    for e, c in p.terms.items():
        coef = c
        ne = []
        for x, b in zip(e, beta):
            if x < b:
                break
            for t in range(b):
                coef *= x - t
            ne.append(x - b)
        else:
            out[tuple(ne)] = coef
    return Poly._raw(p.alphabet, out)


# canonical text form

def _term_text(alphabet: Alphabet, e: Exp, c) -> str:
    parts = [format_scalar(c)]
    for i, x in enumerate(e):
        if x == 1:
            parts.append(alphabet.name(i))
        elif x:
            parts.append(f"{alphabet.name(i)}^{x}")
    return "*".join(parts)


def serialize(p: Poly) -> str:
    if not p.terms:
        return "0"
    return " + ".join(_term_text(p.alphabet, e, c) for e, c in p.sorted_terms())


def parse_monomial(factors: Iterable[str], names: Mapping[str, int], size: int):
    e = [0] * size
    for f in factors:
        name, _, power = f.partition("^")
        if name not in names:
            raise ValueError(f"unknown variable {name!r}")
        e[names[name]] += int(power) if power else 1
    return tuple(e)


def parse(text: str, alphabet: Alphabet) -> Poly:
    """Inverse of :func:`serialize`."""
    text = text.strip()
    if text == "0":
        return Poly.zero(alphabet)
    names = {n: i for i, n in enumerate(alphabet.names())}
    terms: dict = {}
    for chunk in text.split(" + "):
        coeff, *factors = chunk.strip().split("*")
        e = parse_monomial(factors, names, alphabet.k)
        terms[e] = terms.get(e, 0) + parse_scalar(coeff)
    return Poly(alphabet, terms)


# named polynomials in z

@lru_cache(maxsize=None)
def vandermonde(k: int) -> Poly:
    """The discriminant product prod_{i<j} (z_i - z_j)."""
    A = Z(k)
    out = Poly.const(A, 1)
    for i, j in combinations(range(1, k + 1), 2):
        out = out * (Poly.var(A, i) - Poly.var(A, j))
    return out


# univariate polynomials with polynomial coefficients

class ZetaPoly:
    """Polynomial in an auxiliary variable with :class:`Poly` coefficients.

    ``coeffs[n]`` is the coefficient of the n-th power; trailing zeros are
    stripped.  Used for ``P(zeta) = prod (zeta - z_j)`` and its derivatives.
    """

    __slots__ = ("base", "coeffs")

    def __init__(self, base: Alphabet, coeffs: Sequence[Poly]):
        cs = [c if isinstance(c, Poly) else Poly.const(base, c) for c in coeffs]
        for c in cs:
            if c.alphabet != base:
                raise ContractViolation("coefficient alphabet mismatch")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.base = base
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, base: Alphabet, n: int, c: Poly | Scalar = 1) -> "ZetaPoly":
        zero = Poly.zero(base)
        return cls(base, [zero] * n + [c])

    @classmethod
    def from_roots(cls, roots: Sequence[Poly]) -> "ZetaPoly":
        base = roots[0].alphabet
        out = cls(base, [1])
        for r in roots:
            out = out * cls(base, [-r, Poly.const(base, 1)])
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Poly:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Poly.zero(self.base)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == Poly.const(self.base, 1)

    def _check(self, other: "ZetaPoly"):
        if other.base != self.base:
            raise ContractViolation("coefficient alphabet mismatch")

    def __add__(self, other: "ZetaPoly") -> "ZetaPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ZetaPoly(self.base, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "ZetaPoly":
        return ZetaPoly(self.base, [-c for c in self.coeffs])

    def __sub__(self, other: "ZetaPoly") -> "ZetaPoly":
        return self + (-other)

    def __mul__(self, other) -> "ZetaPoly":
        if isinstance(other, (int, Fraction, Poly)):
            return ZetaPoly(self.base, [c * other for c in self.coeffs])
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return ZetaPoly(self.base, [])
        out = [Poly.zero(self.base)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ZetaPoly(self.base, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZetaPoly):
            return NotImplemented
        return self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def derivative(self, times: int = 1) -> "ZetaPoly":
        out = self
        for _ in range(times):
            out = ZetaPoly(self.base, [c * n for n, c in enumerate(out.coeffs)][1:])
        return out

    def evaluate(self, x: Poly) -> Poly:
        acc = Poly.zero(self.base)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_monic(self, den: "ZetaPoly") -> tuple["ZetaPoly", "ZetaPoly"]:
        self._check(den)
        if not den.is_monic():
            raise NonMonicDenominator("divisor must be monic")
        d = den.degree()
        rem = list(self.coeffs)
        quot = [Poly.zero(self.base)] * max(len(rem) - d, 0)
        for n in range(len(rem) - 1, d - 1, -1):
            c = rem[n]
            if c.is_zero():
                continue
            quot[n - d] = c
            for i, dc in enumerate(den.coeffs):
                rem[n - d + i] = rem[n - d + i] - c * dc
        return ZetaPoly(self.base, quot), ZetaPoly(self.base, rem[:d])

    def __str__(self) -> str:
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if c.is_zero():
                continue
            parts.append(f"({c})*zeta^{n}" if n else f"({c})")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def residue_at_infinity(num: ZetaPoly, den: ZetaPoly) -> Poly:
    """Coefficient of ``zeta^-1`` in the expansion of ``num/den`` at infinity.

    Equals ``(1/2 pi i)`` times the contour integral over a circle enclosing
    all roots of ``den``.  ``den`` must be monic of degree >= 1.
    """
    num._check(den)
    if not den.is_monic():
        raise NonMonicDenominator("denominator must be monic in zeta")
    d = den.degree()
    if d < 1:
        raise ContractViolation("denominator must have degree >= 1")
    top = num.degree() - d
    if top < -1:
        return Poly.zero(num.base)
    # long division continued into negative powers; index offset by d
    rem = {n: c for n, c in enumerate(num.coeffs) if not c.is_zero()}
    a = Poly.zero(num.base)
    for n in range(top, -2, -1):
        a = rem.get(n + d, Poly.zero(num.base))
        if a.is_zero():
            continue
        for i, dc in enumerate(den.coeffs):
            if not dc.is_zero():
                rem[n + i] = rem.get(n + i, Poly.zero(num.base)) - a * dc
    return a
