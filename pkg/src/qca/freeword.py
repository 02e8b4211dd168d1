"""Noncommutative polynomials in the Chevalley generators E_1..E_n.

Elements are plain word combinations, read as representatives modulo the
quantized Serre relations.  Kashiwara's operators E'_i and the bilinear form
are evaluated on these representatives.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .laurent import HalfLaurent, ONE, ZERO, VINV, vpow
from .roota import Context
from .shuffle import ShuffleElement


def _pair(a: int, b: int) -> int:
    if a == b:
        return 2
    return -1 if abs(a - b) == 1 else 0


class FreeElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {}
        for w, c in (terms or {}).items():
            c = HalfLaurent.coerce(c)
            if c:
                w = tuple(w)
                prev = self.terms.get(w)
                c = c if prev is None else prev + c
                if c:
                    self.terms[w] = c
                else:
                    del self.terms[w]

    @classmethod
    def gen(cls, i: int) -> "FreeElement":
        return cls({(i,): ONE})

    @classmethod
    def one(cls) -> "FreeElement":
        return cls({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreeElement") -> "FreeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreeElement(out)

    def __neg__(self) -> "FreeElement":
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def scale(self, s) -> "FreeElement":
        s = HalfLaurent.coerce(s)
        return FreeElement({w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FreeElement):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return FreeElement(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            tag = "*".join(f"E{a}" for a in w) or "1"
            c = self.terms[w]
            parts.append(tag if c == ONE else f"({c})*{tag}")
        return " + ".join(parts)


def power(x: FreeElement, k: int) -> FreeElement:
    out = FreeElement.one()
    for _ in range(k):
        out = out * x
    return out


def x_interval(ctx: Context, i: int, j: int) -> FreeElement:
    if not 1 <= i <= j <= ctx.n:
        raise ValueError(f"interval [{i}, {j}] outside 1..{ctx.n}")
    return _x_interval(i, j)


@lru_cache(maxsize=None)
def _x_interval(i: int, j: int) -> FreeElement:
    if i == j:
        return FreeElement.gen(i)
    prev = _x_interval(i, j - 1)
    ej = FreeElement.gen(j)
    if j % 2 == 0:
        return ej * prev - (prev * ej).scale(VINV)
    return prev * ej - (ej * prev).scale(VINV)


def generator(ctx: Context, k: int) -> FreeElement:
    """The PBW root vector E(beta_k) as a word combination."""
    i, j = ctx.intervals[k - 1]
    return _x_interval(i, j)


@lru_cache(maxsize=None)
def _e_prime_word(i: int, word: tuple) -> tuple:
    # E'_i on a single word: sum over occurrences of i, weighted by the
    # pairing of alpha_i with the letters in front of it
    out = []
    shift = 0
    for p, a in enumerate(word):
        if a == i:
            out.append((word[:p] + word[p + 1:], shift))
        shift += _pair(i, a)
    return tuple(out)


def e_prime(i: int, x: FreeElement) -> FreeElement:
    out: dict = {}
    for w, c in x.terms.items():
        for w2, e in _e_prime_word(i, w):
            s = out.get(w2, ZERO) + c * vpow(e)
            if s:
                out[w2] = s
            else:
                out.pop(w2, None)
    return FreeElement(out)


@lru_cache(maxsize=None)
def _form_words(u: tuple, w: tuple) -> HalfLaurent:
    """(E_u, E_w) for single words."""
    if len(u) != len(w):
        return ZERO
    if not w:
        return ONE
    if sorted(u) != sorted(w):
        return ZERO
    # (x, E_a y) = (E'_a x, y)
    a, rest = w[0], w[1:]
    total = ZERO
    for u2, e in _e_prime_word(a, u):
        total = total + _form_words(u2, rest).shift(2 * e)
    return total


def kashiwara_form(x: FreeElement, y: FreeElement) -> HalfLaurent:
    total = ZERO
    for u, c in x.terms.items():
        for w, d in y.terms.items():
            f = _form_words(u, w)
            if f:
                total = total + c * d * f
    return total


def _embed_word(word: tuple) -> ShuffleElement:
    out = ShuffleElement({(): ONE})
    for a in word:
        out = out * ShuffleElement.word(a)
    return out


def embed(x: FreeElement) -> ShuffleElement:
    """Image under E_i -> w[i] in the shuffle algebra."""
    out = ShuffleElement()
    for w, c in x.terms.items():
        out = out + _embed_word(w).scale(c)
    return out


def pbw_monomial(ctx: Context, a) -> FreeElement:
    """Ordered product E(beta_1)^{a_1} ... E(beta_2n)^{a_2n}, without divided powers."""
    out = FreeElement.one()
    for k, ak in enumerate(a, 1):
        if ak:
            out = out * power(generator(ctx, k), ak)
    return out


def generator_norms(ctx: Context) -> list:
    """(k, (E(beta_k), E(beta_k)), (1 - v^-2)^(height - 1)) for every generator."""
    from .laurent import ONE_MINUS_VM2
    out = []
    for k in range(1, ctx.size + 1):
        i, j = ctx.intervals[k - 1]
        g = generator(ctx, k)
        out.append((k, kashiwara_form(g, g), ONE_MINUS_VM2 ** (j - i)))
    return out


def _duality_target(ctx: Context, a) -> HalfLaurent:
    # (E^a, prod X^a) = v^{b(a)} prod [a_k]! (1 - v^-2)^{a_k (j_k - i_k)} once
    # divided powers and the dual normalization are unwound
    from .laurent import ONE_MINUS_VM2, quantum_factorial
    from .pbw import b_twist
    out = vpow(b_twist(a))
    for k, ak in enumerate(a):
        if ak:
            i, j = ctx.intervals[k]
            out = out * quantum_factorial(ak) * ONE_MINUS_VM2 ** (ak * (j - i))
    return out


def pbw_duality(ctx: Context, max_height: int) -> list:
    """(a, b, passed) for (E[a], E[b]*) = delta_{a,b} over all degrees of height
    <= max_height, with E[a] built from divided powers and E[b]* = v^{-b(b)}
    prod E*(beta_k)^{b_k}, E*(beta) = (1 - v^-2)^{i-j} X_{i,j}; the check is
    carried out after multiplying through by the (invertible) normalizations."""
    from itertools import product
    from .dcb import enumerate_degree
    out = []
    for h in range(1, max_height + 1):
        for gamma in product(range(h + 1), repeat=ctx.n):
            if sum(gamma) != h:
                continue
            support = enumerate_degree(ctx, gamma)
            monos = {a: pbw_monomial(ctx, a) for a in support}
            for a in support:
                for b in support:
                    f = kashiwara_form(monos[a], monos[b])
                    want = _duality_target(ctx, a) if a == b else ZERO
                    out.append((a, b, f == want))
    return out
