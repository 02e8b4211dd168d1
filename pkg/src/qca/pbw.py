"""The algebra U_v^+(w) in its dual PBW basis.

Factors are generator indices k = 1..2n (PBW order).  Internally products
are kept in the ordered-monomial basis M[a] = E*(beta_1)^a_1 ... E*(beta_2n)^a_2n,
and converted to the dual PBW basis by M[a] = v^b(a) E[a]* at the boundary.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .laurent import (HalfLaurent, ONE, ZERO, V, VINV, ONE_MINUS_VM2, V_MINUS_VINV,
                      divide_exact, vpow)
from .roota import Context, cartan_form, height, norm

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_COEFF = {
    "1": ONE,
    "v": V,
    "1/v": VINV,
    "v-1/v": V_MINUS_VINV,
    "1-1/v2": ONE_MINUS_VM2,
}


class StraighteningError(RuntimeError):
    """The rewriting ran past its budget or met a pair it has no rule for."""


@dataclass(frozen=True)
class Relation:
    """One displayed relation: lhs = sum of coeff * product(factors).

    Factors are labels like ("y", 3); z_0 and z_{n+1} are dropped as units."""
    lhs: tuple
    rhs: tuple
    tag: str


@dataclass(frozen=True)
class RewriteRule:
    hi: int
    lo: int
    rhs: tuple  # ((HalfLaurent, (k, ...)), ...)
    source: str


def _rel(lhs, rhs, tag):
    return Relation(tuple(lhs), tuple((c, tuple(f)) for c, f in rhs), tag)


def _odd(lo, hi):
    return [i for i in range(lo, hi + 1) if i % 2]


def _even(lo, hi):
    return [i for i in range(lo, hi + 1) if i % 2 == 0]


def dual_relations(n: int) -> list:
    """The straightening relations written in the dual generators y_i, z_i."""
    y = lambda i: ("y", i)
    z = lambda i: ("z", i)
    R = []
    for i in _odd(1, n - 2):
        R.append(_rel([z(i + 1), y(i)], [("v", [y(i), z(i + 1)])], f"z{{i+1}}y{{i}} i={i}"))
    for i in _odd(3, n):
        R.append(_rel([z(i - 1), y(i)], [("v", [y(i), z(i - 1)])], f"z{{i-1}}y{{i}} i={i}"))
    for i in _odd(1, n - 2):
        R.append(_rel([z(i + 2), y(i)], [("v", [y(i), z(i + 2)])], f"z{{i+2}}y{{i}} i={i}"))
    for i in _odd(3, n):
        R.append(_rel([z(i - 2), y(i)], [("v", [y(i), z(i - 2)])], f"z{{i-2}}y{{i}} i={i}"))
    R.append(_rel([z(1), y(1)], [("1/v", [y(1), z(1)]), ("1-1/v2", [z(2)])], "z1y1"))
    for i in _odd(3, n - 2):
        R.append(_rel([z(i), y(i)], [("1", [y(i), z(i)]), ("v-1/v", [z(i - 1), z(i + 1)])],
                      f"z{{i}}y{{i}} i={i}"))
    R.append(_rel([z(n), y(n)], [("1/v", [y(n), z(n)]), ("1-1/v2", [z(n - 1)])], "znyn"))
    for i in _odd(1, n - 4):
        R.append(_rel([y(i + 3), y(i)], [("v", [y(i), y(i + 3)])], f"y{{i+3}}y{{i}} i={i}"))
    for i in _odd(5, n):
        R.append(_rel([y(i - 3), y(i)], [("v", [y(i), y(i - 3)])], f"y{{i-3}}y{{i}} i={i}"))
    for i in _odd(3, n - 2):
        R.append(_rel([y(i - 1), y(i)], [("1", [y(i), y(i - 1)]), ("v-1/v", [z(i + 1), z(i - 2)])],
                      f"y{{i-1}}y{{i}} i={i}"))
    R.append(_rel([y(n - 1), y(n)], [("1/v", [y(n), y(n - 1)]), ("1-1/v2", [z(n - 2)])], "y{n-1}yn"))
    R.append(_rel([y(2), y(1)], [("1/v", [y(1), y(2)]), ("1-1/v2", [z(3)])], "y2y1"))
    for i in _odd(3, n - 2):
        R.append(_rel([y(i + 1), y(i)], [("1", [y(i), y(i + 1)]), ("v-1/v", [z(i - 1), z(i + 2)])],
                      f"y{{i+1}}y{{i}} i={i}"))
    for i in _even(2, n - 1):
        R.append(_rel([z(i + 1), z(i)], [("v", [z(i), z(i + 1)])], f"z{{i+1}}z{{i}} i={i}"))
    for i in _even(2, n - 1):
        R.append(_rel([z(i - 1), z(i)], [("v", [z(i), z(i - 1)])], f"z{{i-1}}z{{i}} i={i}"))
    for i in _even(2, n - 3):
        R.append(_rel([y(i + 2), z(i)], [("v", [z(i), y(i + 2)])], f"y{{i+2}}z{{i}} i={i}"))
    for i in _even(4, n - 1):
        R.append(_rel([y(i - 2), z(i)], [("v", [z(i), y(i - 2)])], f"y{{i-2}}z{{i}} i={i}"))
    for i in _even(2, n - 1):
        R.append(_rel([y(i), z(i)], [("1", [z(i), y(i)]), ("v-1/v", [z(i - 1), z(i + 1)])],
                      f"y{{i}}z{{i}} i={i}"))
    for i in _odd(1, n - 2):
        R.append(_rel([y(i + 1), z(i)], [("v", [z(i), y(i + 1)])], f"y{{i+1}}z{{i}} i={i}"))
    for i in _odd(3, n):
        R.append(_rel([y(i - 1), z(i)], [("v", [z(i), y(i - 1)])], f"y{{i-1}}z{{i}} i={i}"))
    return R


def primal_relations(n: int) -> list:
    """The straightening relations in the root vectors u, v, w, x.

    Labels use the same (name, index) keys as the dual generators; the
    coefficients refer to root vectors, not to their duals."""
    u = lambda i: ("y", i)  # u_i -> generator carrying y_i
    vv = lambda i: ("z", i)  # v_i
    w = lambda i: ("z", i)  # w_i
    x = lambda i: ("y", i)  # x_i
    R = []
    for i in _odd(1, n - 2):
        R.append(_rel([vv(i + 1), u(i)], [("v", [u(i), vv(i + 1)])], f"v{{i+1}}u{{i}} i={i}"))
    for i in _odd(3, n):
        R.append(_rel([vv(i - 1), u(i)], [("v", [u(i), vv(i - 1)])], f"v{{i-1}}u{{i}} i={i}"))
    for i in _odd(1, n - 2):
        R.append(_rel([w(i + 2), u(i)], [("v", [u(i), w(i + 2)])], f"w{{i+2}}u{{i}} i={i}"))
    for i in _odd(3, n):
        R.append(_rel([w(i - 2), u(i)], [("v", [u(i), w(i - 2)])], f"w{{i-2}}u{{i}} i={i}"))
    R.append(_rel([w(1), u(1)], [("1/v", [u(1), w(1)]), ("1", [vv(2)])], "w1u1"))
    for i in _odd(3, n - 2):
        R.append(_rel([w(i), u(i)], [("1", [u(i), w(i)]), ("v-1/v", [vv(i - 1), vv(i + 1)])],
                      f"w{{i}}u{{i}} i={i}"))
    R.append(_rel([w(n), u(n)], [("1/v", [u(n), w(n)]), ("1", [vv(n - 1)])], "wnun"))
    for i in _odd(1, n - 4):
        R.append(_rel([x(i + 3), u(i)], [("v", [u(i), x(i + 3)])], f"x{{i+3}}u{{i}} i={i}"))
    for i in _odd(5, n):
        R.append(_rel([x(i - 3), u(i)], [("v", [u(i), x(i - 3)])], f"x{{i-3}}u{{i}} i={i}"))
    for i in _odd(3, n - 2):
        R.append(_rel([x(i - 1), u(i)], [("1", [u(i), x(i - 1)]), ("v-1/v", [vv(i + 1), w(i - 2)])],
                      f"x{{i-1}}u{{i}} i={i}"))
    R.append(_rel([x(n - 1), u(n)], [("1/v", [u(n), x(n - 1)]), ("1", [w(n - 2)])], "x{n-1}un"))
    R.append(_rel([x(2), u(1)], [("1/v", [u(1), x(2)]), ("1", [w(3)])], "x2u1"))
    for i in _odd(3, n - 2):
        R.append(_rel([x(i + 1), u(i)], [("1", [u(i), x(i + 1)]), ("v-1/v", [vv(i - 1), w(i + 2)])],
                      f"x{{i+1}}u{{i}} i={i}"))
    for i in _even(2, n - 1):
        R.append(_rel([w(i + 1), vv(i)], [("v", [vv(i), w(i + 1)])], f"w{{i+1}}v{{i}} i={i}"))
    for i in _even(2, n - 1):
        R.append(_rel([w(i - 1), vv(i)], [("v", [vv(i), w(i - 1)])], f"w{{i-1}}v{{i}} i={i}"))
    for i in _even(2, n - 3):
        R.append(_rel([x(i + 2), vv(i)], [("v", [vv(i), x(i + 2)])], f"x{{i+2}}v{{i}} i={i}"))
    for i in _even(4, n - 1):
        R.append(_rel([x(i - 2), vv(i)], [("v", [vv(i), x(i - 2)])], f"x{{i-2}}v{{i}} i={i}"))
    for i in _even(2, n - 1):
        R.append(_rel([x(i), vv(i)], [("1", [vv(i), x(i)]), ("v-1/v", [w(i - 1), w(i + 1)])],
                      f"x{{i}}v{{i}} i={i}"))
    for i in _odd(1, n - 2):
        R.append(_rel([x(i + 1), w(i)], [("v", [w(i), x(i + 1)])], f"x{{i+1}}w{{i}} i={i}"))
    for i in _odd(3, n):
        R.append(_rel([x(i - 1), w(i)], [("v", [w(i), x(i - 1)])], f"x{{i-1}}w{{i}} i={i}"))
    return R


def qprime_primal_relations(m: int) -> list:
    """The five non-commuting relations of x'_{n-1} at even rank m = n - 1."""
    n = m + 1
    x = ("y", n - 1)
    R = [
        _rel([x, ("z", n - 2)], [("v", [("z", n - 2), x])], "x'w'{n-2}"),
        _rel([x, ("z", n - 3)], [("v", [("z", n - 3), x])], "x'v'{n-3}"),
        _rel([x, ("z", n - 1)], [("1/v", [("z", n - 1), x]), ("1", [("z", n - 2)])], "x'v'{n-1}"),
        _rel([x, ("y", n - 2)], [("1/v", [("y", n - 2), x]), ("1", [("z", n - 3)])], "x'u'{n-2}"),
        _rel([x, ("y", n - 4)], [("v", [("y", n - 4), x])], "x'u'{n-4}"),
    ]
    return R


def _touches(rel: Relation, labels: set) -> bool:
    if any(f in labels for f in rel.lhs):
        return True
    return any(f in labels for _, fs in rel.rhs for f in fs)


def _qprime_filter(relations: list, m: int) -> list:
    n = m + 1
    gone = {("y", n), ("z", n), ("y", n - 1)}
    return [r for r in relations if not _touches(r, gone)]


def _primal_to_dual(ctx: Context, rel: Relation) -> Relation:
    """Rescale a root-vector relation to the dual generators, using
    E(beta) = (1 - v^-2)^(height - 1) E*(beta)."""
    def weight(labels):
        total = 0
        for lab in labels:
            k = ctx.index(*lab)
            if k is not None:
                total += height(ctx.beta(k)) - 1
        return total

    lw = weight(rel.lhs)
    rhs = []
    for c, fs in rel.rhs:
        d = weight(fs) - lw
        coeff = _COEFF[c] if isinstance(c, str) else c
        if d >= 0:
            coeff = coeff * ONE_MINUS_VM2 ** d
        else:
            coeff = divide_exact(coeff, ONE_MINUS_VM2 ** (-d))
        rhs.append((coeff, fs))
    return Relation(rel.lhs, tuple(rhs), rel.tag)


def listed_dual_relations(ctx: Context) -> list:
    """Displayed dual relations valid for this context, coefficients resolved."""
    if ctx.variant == "full":
        rels = dual_relations(ctx.n)
        extra = []
    else:
        rels = _qprime_filter(dual_relations(ctx.n + 1), ctx.n)
        extra = [_primal_to_dual(ctx, r) for r in qprime_primal_relations(ctx.n)]
    out = []
    for r in rels:
        out.append(Relation(r.lhs, tuple((_COEFF[c], fs) for c, fs in r.rhs), r.tag))
    return out + extra


def listed_primal_relations(ctx: Context) -> list:
    if ctx.variant == "full":
        rels = primal_relations(ctx.n)
        extra = []
    else:
        rels = _qprime_filter(primal_relations(ctx.n + 1), ctx.n)
        extra = qprime_primal_relations(ctx.n)
    out = []
    for r in rels + extra:
        out.append(Relation(r.lhs, tuple((_COEFF[c], fs) for c, fs in r.rhs), r.tag))
    return out


def _labels_to_indices(ctx: Context, labels) -> tuple:
    ks = []
    for lab in labels:
        k = ctx.index(*lab)
        if k is not None:
            ks.append(k)
    return tuple(ks)


def straightening_table(ctx: Context) -> list:
    return list(_table(ctx).values())


@lru_cache(maxsize=None)
def _table(ctx: Context) -> dict:
    table = {}
    for rel in listed_dual_relations(ctx):
        hi, lo = _labels_to_indices(ctx, rel.lhs)
        if hi <= lo:
            raise StraighteningError(f"relation {rel.tag} has an ordered left side")
        rhs = tuple((c, _labels_to_indices(ctx, fs)) for c, fs in rel.rhs)
        rule = RewriteRule(hi, lo, rhs, rel.tag)
        if (hi, lo) in table and table[(hi, lo)].rhs != rhs:
            raise StraighteningError(
                f"conflicting relations {table[(hi, lo)].source} and {rel.tag}")
        table[(hi, lo)] = rule
    for hi in range(1, ctx.size + 1):
        for lo in range(1, hi):
            if (hi, lo) not in table:
                table[(hi, lo)] = RewriteRule(hi, lo, ((ONE, (lo, hi)),), "commutation")
    return dict(sorted(table.items()))


def b_twist(a) -> int:
    return sum(x * (x - 1) // 2 for x in a)


def _unit(size: int, k: int) -> tuple:
    return tuple(1 if t == k - 1 else 0 for t in range(size))


def monomial_word(a) -> tuple:
    """Ordered factor sequence of M[a]."""
    out = []
    for k, c in enumerate(a, start=1):
        out.extend([k] * c)
    return tuple(out)


def _add_into(acc: dict, key, coeff: HalfLaurent) -> None:
    s = acc.get(key)
    s = coeff if s is None else s + coeff
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class PBWAlgebra:
    """Rule table plus the memoized normal-form engine for one context."""

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.size = ctx.size
        self.rules = _table(ctx)
        self._memo: dict = {}
        self._busy: set = set()
        self.zero_vec = (0,) * self.size

    # ordered-monomial engine

    def _mult_gen(self, a: tuple, k: int) -> dict:
        """M[a] * E*_k in the M-basis."""
        key = (a, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        h = 0
        for t in range(self.size - 1, -1, -1):
            if a[t]:
                h = t + 1
                break
        if h <= k:
            b = list(a)
            b[k - 1] += 1
            out = {tuple(b): ONE}
            self._memo[key] = out
            return out
        if key in self._busy:
            raise StraighteningError(f"rewriting cycle at {a} * {k}")
        self._busy.add(key)
        a0 = list(a)
        a0[h - 1] -= 1
        a0 = tuple(a0)
        out: dict = {}
        for coeff, factors in self.rules[(h, k)].rhs:
            cur = {a0: coeff}
            for f in factors:
                cur = self._mult_elem_gen(cur, f)
            for b, c in cur.items():
                _add_into(out, b, c)
        self._busy.discard(key)
        self._memo[key] = out
        return out

    def _mult_elem_gen(self, elem: dict, k: int) -> dict:
        out: dict = {}
        for a, c in elem.items():
            for b, d in self._mult_gen(a, k).items():
                _add_into(out, b, c * d)
        return out

    def mult_word(self, elem: dict, word: Iterable[int]) -> dict:
        """Right-multiply an M-basis element by a factor sequence."""
        for k in word:
            if not 1 <= k <= self.size:
                raise ValueError(f"generator index {k} outside 1..{self.size}")
            elem = self._mult_elem_gen(elem, k)
        return elem

    def to_dual(self, mterms: dict) -> "DualPBWElement":
        return DualPBWElement(self, {a: c.shift(2 * b_twist(a)) for a, c in mterms.items()})

    def to_m(self, x: "DualPBWElement") -> dict:
        return {a: c.shift(-2 * b_twist(a)) for a, c in x.terms.items()}

    # public operations

    def straighten(self, word: Iterable[int], coeff=ONE) -> "DualPBWElement":
        coeff = HalfLaurent.coerce(coeff)
        return self.to_dual(self.mult_word({self.zero_vec: coeff}, word))

    def word_element(self, labels: Iterable, coeff=ONE) -> "DualPBWElement":
        """Product of generators given as ("y", i) / ("z", i) labels."""
        return self.straighten(_labels_to_indices(self.ctx, labels), coeff)

    def one(self) -> "DualPBWElement":
        return DualPBWElement(self, {self.zero_vec: ONE})

    def gen(self, k: int) -> "DualPBWElement":
        return DualPBWElement(self, {_unit(self.size, k): ONE})

    def y(self, i: int) -> "DualPBWElement":
        return self.gen(self.ctx.y(i))

    def z(self, i: int) -> "DualPBWElement":
        k = self.ctx.z(i)
        return self.one() if k is None else self.gen(k)

    def basis(self, a) -> "DualPBWElement":
        return DualPBWElement(self, {tuple(a): ONE})

    def multiply(self, x: "DualPBWElement", y: "DualPBWElement") -> "DualPBWElement":
        out: dict = {}
        xm = self.to_m(x)
        for b, d in y.terms.items():
            word = monomial_word(b)
            scaled = {a: c * d.shift(-2 * b_twist(b)) for a, c in xm.items()}
            for key, val in self.mult_word(scaled, word).items():
                _add_into(out, key, val)
        return self.to_dual(out)

    def sigma(self, x: "DualPBWElement") -> "DualPBWElement":
        out: dict = {}
        norms = [norm(self.ctx.beta(k)) for k in range(1, self.size + 1)]
        for a, c in x.terms.items():
            twist = b_twist(a) + sum(ak * nk for ak, nk in zip(a, norms))
            word = tuple(reversed(monomial_word(a)))
            res = self.mult_word({self.zero_vec: c.bar().shift(2 * twist)}, word)
            for key, val in res.items():
                _add_into(out, key, val)
        return self.to_dual(out)

    # worklist engine, used to test confluence of the rule system

    def rewrite(self, word: Iterable[int], coeff=ONE, strategy: str = "leftmost",
                rng: Optional[random.Random] = None, budget: Optional[int] = None) -> "DualPBWElement":
        coeff = HalfLaurent.coerce(coeff)
        word = tuple(word)
        if budget is None:
            budget = 200000 * (1 + len(word)) ** 2
        todo: dict = {word: coeff}
        done: dict = {}
        steps = 0
        while todo:
            w, c = todo.popitem()
            descents = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
            if not descents:
                a = [0] * self.size
                for k in w:
                    a[k - 1] += 1
                _add_into(done, tuple(a), c)
                continue
            steps += 1
            if steps > budget:
                raise StraighteningError(f"rewrite budget {budget} exceeded")
            if strategy == "leftmost":
                p = descents[0]
            elif strategy == "rightmost":
                p = descents[-1]
            else:
                p = (rng or random).choice(descents)
            rule = self.rules[(w[p], w[p + 1])]
            for rc, fs in rule.rhs:
                _add_into(todo, w[:p] + fs + w[p + 2:], c * rc)
        return self.to_dual(done)


@lru_cache(maxsize=None)
def algebra(ctx: Context) -> PBWAlgebra:
    return PBWAlgebra(ctx)


class DualPBWElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: PBWAlgebra, terms: Mapping | None = None):
        self.alg = alg
        self.terms = {}
        for a, c in (terms or {}).items():
            c = HalfLaurent.coerce(c)
            if c:
                self.terms[tuple(a)] = c

    @property
    def ctx(self) -> Context:
        return self.alg.ctx

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DualPBWElement") -> "DualPBWElement":
        out = dict(self.terms)
        for a, c in other.terms.items():
            _add_into(out, a, c)
        return DualPBWElement(self.alg, out)

    def __neg__(self) -> "DualPBWElement":
        return DualPBWElement(self.alg, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "DualPBWElement") -> "DualPBWElement":
        return self + (-other)

    def scale(self, s) -> "DualPBWElement":
        s = HalfLaurent.coerce(s)
        return DualPBWElement(self.alg, {a: c * s for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DualPBWElement):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DualPBWElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def coefficient(self, a) -> HalfLaurent:
        return self.terms.get(tuple(a), ZERO)

    def support(self) -> list:
        return sorted(self.terms)

    def degrees(self) -> set:
        return {self.ctx.degree_of(a) for a in self.terms}

    def bar_coefficients(self) -> "DualPBWElement":
        return DualPBWElement(self.alg, {a: c.bar() for a, c in self.terms.items()})

    def to_json(self) -> dict:
        return {
            "n": self.ctx.n,
            "variant": self.ctx.variant,
            "basis": "dualPBW",
            "terms": [{"a": list(a), "coeff": self.terms[a].to_json()} for a in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, alg: PBWAlgebra, data: dict) -> "DualPBWElement":
        return cls(alg, {tuple(t["a"]): HalfLaurent.from_json(t["coeff"]) for t in data["terms"]})

    def monomial_text(self, a) -> str:
        parts = []
        for k, c in enumerate(a, start=1):
            if c:
                lab = self.ctx.label(k)
                parts.append(lab if c == 1 else f"{lab}^{c}")
        return "*".join(parts) or "1"

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for a in sorted(self.terms):
            c = self.terms[a]
            tag = "E[" + self.monomial_text(a) + "]*"
            out.append(tag if c == ONE else f"({c})*{tag}")
        return " + ".join(out)


def straighten(ctx: Context, word: Iterable[int], coeff=ONE) -> DualPBWElement:
    return algebra(ctx).straighten(word, coeff)


def sigma_dual(ctx: Context, x: DualPBWElement) -> DualPBWElement:
    return algebra(ctx).sigma(x)


def specialize_v1(ctx: Context, x: DualPBWElement):
    """Classical limit as a ClassicalPoly in Y_1..Y_n, Z_1..Z_n."""
    from .cluster import ClassicalPoly, yz_names
    n = ctx.n
    out: dict = {}
    for a, c in x.terms.items():
        if not c.has_integer_exponents():
            raise ValueError("half-integer exponent in classical specialization")
        val = c.at_one()
        if not val:
            continue
        mono = [0] * (2 * n)
        for k, cnt in enumerate(a, start=1):
            if cnt:
                name, i = ctx.labels[k - 1]
                mono[(i - 1) if name == "y" else (n + i - 1)] += cnt
        mono = tuple(mono)
        out[mono] = out.get(mono, 0) + val
    return ClassicalPoly(yz_names(n), out)


def parse_word(ctx: Context, text: str) -> tuple:
    """'z1,y1' or '4,1' -> generator indices."""
    out = []
    for tok in text.replace("*", ",").split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.isdigit():
            k = int(tok)
        else:
            name, idx = tok[0], tok[1:]
            if name not in "yz" or not idx.isdigit():
                raise ValueError(f"bad generator token {tok!r}")
            k = ctx.index(name, int(idx))
            if k is None:
                continue
        if not 1 <= k <= ctx.size:
            raise ValueError(f"generator index {k} outside 1..{ctx.size}")
        out.append(k)
    return tuple(out)


# shuffle-side check of the rule tables

def _shuffle_of_indices(ctx: Context, ks: tuple):
    return _shuffle_product_cached(ctx, tuple(ks))


@lru_cache(maxsize=4096)
def _shuffle_product_cached(ctx: Context, ks: tuple):
    from .shuffle import ShuffleElement, dual_generator_shuffle
    if not ks:
        return ShuffleElement({(): ONE})
    return _shuffle_product_cached(ctx, ks[:-1]) * dual_generator_shuffle(ctx, ks[-1])


def check_relation_in_shuffle(ctx: Context, rel: Relation, primal: bool = False) -> bool:
    """Exact check of one relation after embedding into the shuffle algebra.

    In primal form each root vector is (1 - v^-2)^(height - 1) times its dual;
    the scalars are collected in front of the dual products."""
    def side(labels):
        ks = _labels_to_indices(ctx, labels)
        scale = ONE
        if primal:
            scale = ONE_MINUS_VM2 ** sum(height(ctx.beta(k)) - 1 for k in ks)
        return scale, _shuffle_of_indices(ctx, ks)

    s, lhs = side(rel.lhs)
    total = lhs.scale(s)
    for c, fs in rel.rhs:
        s, prod = side(fs)
        total = total - prod.scale(c * s)
    return total.is_zero()


# shuffle products of the longest relations outgrow memory beyond this rank
ORACLE_MAX_RANK = 7


class OracleBoundError(OverflowError):
    """The shuffle oracle is not run above ORACLE_MAX_RANK."""


def verify_straightening_oracle(ctx: Context) -> list:
    """One entry per checked identity: (kind, tag, passed).

    Kinds: 'dual' for displayed dual relations, 'primal' for the root-vector
    form, 'commutation' for unlisted pairs, 'leading' for the swapped-term
    coefficient law."""
    if ctx.n > ORACLE_MAX_RANK:
        raise OracleBoundError(f"shuffle oracle capped at rank {ORACLE_MAX_RANK}")
    report = []
    for rel in listed_dual_relations(ctx):
        report.append(("dual", rel.tag, check_relation_in_shuffle(ctx, rel)))
    for rel in listed_primal_relations(ctx):
        report.append(("primal", rel.tag, check_relation_in_shuffle(ctx, rel, primal=True)))
    for (hi, lo), rule in _table(ctx).items():
        if rule.source == "commutation":
            lhs = _shuffle_of_indices(ctx, (hi, lo))
            rhs = _shuffle_of_indices(ctx, (lo, hi))
            report.append(("commutation", f"{ctx.label(hi)}{ctx.label(lo)}", (lhs - rhs).is_zero()))
        report.append(("leading", f"{ctx.label(hi)}{ctx.label(lo)}", leading_coefficient_ok(ctx, rule)))
    return report


def leading_coefficient_ok(ctx: Context, rule: RewriteRule) -> bool:
    want = vpow(cartan_form(ctx.beta(rule.lo), ctx.beta(rule.hi)))
    swapped = [c for c, fs in rule.rhs if fs == (rule.lo, rule.hi)]
    return swapped == [want]


def shuffle_image(x: DualPBWElement):
    """Push a dual PBW expansion into the shuffle algebra, E[a]* = v^{-b(a)} M[a]."""
    from .shuffle import ShuffleElement
    ctx = x.ctx
    out = ShuffleElement()
    for a, c in x.terms.items():
        prod = _shuffle_product_cached(ctx, monomial_word(a))
        out = out + prod.scale(c.shift(-2 * b_twist(a)))
    return out
