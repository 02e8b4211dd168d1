"""Exact Laurent polynomials in v^(1/2) with integer coefficients.

Exponents are stored doubled, so ``{3: 2}`` means ``2 v^(3/2)``.  Values are
treated as immutable once built.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

Scalar = Union[int, "HalfLaurent"]


class HalfLaurent:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    # construction helpers

    @classmethod
    def _raw(cls, terms: dict) -> "HalfLaurent":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, twice_exp: int, coeff: int = 1) -> "HalfLaurent":
        return cls._raw({twice_exp: coeff} if coeff else {})

    @classmethod
    def coerce(cls, x: Scalar) -> "HalfLaurent":
        if isinstance(x, HalfLaurent):
            return x
        if isinstance(x, int):
            return cls._raw({0: x} if x else {})
        raise TypeError(f"cannot coerce {type(x).__name__} to HalfLaurent")

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def has_integer_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self.terms)

    def at_one(self) -> int:
        return sum(self.terms.values())

    def coefficient(self, twice_exp: int) -> int:
        return self.terms.get(twice_exp, 0)

    # arithmetic

    def __add__(self, other: Scalar) -> "HalfLaurent":
        other = HalfLaurent.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return HalfLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Scalar) -> "HalfLaurent":
        return self + (-HalfLaurent.coerce(other))

    def __rsub__(self, other: Scalar) -> "HalfLaurent":
        return HalfLaurent.coerce(other) - self

    def __mul__(self, other: Scalar) -> "HalfLaurent":
        if isinstance(other, int):
            if not other:
                return ZERO
            return HalfLaurent._raw({e: c * other for e, c in self.terms.items()})
        other = HalfLaurent.coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            (f, d), = b.items()
            return HalfLaurent._raw({e + f: c * d for e, c in a.items()})
        if len(a) == 1:
            (f, d), = a.items()
            return HalfLaurent._raw({e + f: c * d for e, c in b.items()})
        out: dict[int, int] = {}
        for e, c in a.items():
            for f, d in b.items():
                out[e + f] = out.get(e + f, 0) + c * d
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HalfLaurent":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("coefficient is not a unit")
            return HalfLaurent.monomial(-e * (-k), c ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, twice_exp: int) -> "HalfLaurent":
        """Multiply by v^(twice_exp/2)."""
        if not twice_exp:
            return self
        return HalfLaurent._raw({e + twice_exp: c for e, c in self.terms.items()})

    def bar(self) -> "HalfLaurent":
        return HalfLaurent._raw({-e: c for e, c in self.terms.items()})

    # comparison, hashing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = HalfLaurent.coerce(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # serialization

    def to_json(self) -> list:
        return [[e, str(self.terms[e])] for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, data: Iterable) -> "HalfLaurent":
        out: dict[int, int] = {}
        for e, c in data:
            out[int(e)] = out.get(int(e), 0) + int(c)
        return cls(out)

    def __repr__(self) -> str:
        return f"HalfLaurent({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                if e % 2 == 0:
                    p = "" if e == 2 else f"^{e // 2}"
                else:
                    p = f"^({e}/2)"
                body = ("" if mag == 1 else f"{mag}*") + "v" + p
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ZERO = HalfLaurent._raw({})
ONE = HalfLaurent._raw({0: 1})


def vpow(k: int) -> HalfLaurent:
    """v^k for an integer k."""
    return HalfLaurent._raw({2 * k: 1})


def vhalf(twice_exp: int) -> HalfLaurent:
    """v^(twice_exp/2)."""
    return HalfLaurent._raw({twice_exp: 1})


V = vpow(1)
VINV = vpow(-1)
# the two recurring correction coefficients
ONE_MINUS_VM2 = HalfLaurent({0: 1, -4: -1})
V_MINUS_VINV = HalfLaurent({2: 1, -2: -1})


def divide_exact(f: HalfLaurent, g: HalfLaurent) -> HalfLaurent:
    """Quotient f/g, raising ValueError if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if f.is_zero():
        return ZERO
    rem = dict(f.terms)
    gtop = g.max_exp()
    glead = g.terms[gtop]
    gmin = g.min_exp()
    floor = f.min_exp() - gmin
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        shift = top - gtop
        if shift < floor:
            raise ValueError("not exactly divisible")
        c, r = divmod(rem[top], glead)
        if r:
            raise ValueError("not exactly divisible")
        quot[shift] = c
        for e, d in g.terms.items():
            k = e + shift
            s = rem.get(k, 0) - c * d
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return HalfLaurent(quot)


def quantum_integer(k: int) -> HalfLaurent:
    """[k] = v^(k-1) + v^(k-3) + ... + v^(1-k)."""
    if k < 0:
        raise ValueError("quantum_integer expects k >= 0")
    return HalfLaurent({2 * (k - 1 - 2 * t): 1 for t in range(k)})


def quantum_factorial(k: int) -> HalfLaurent:
    if k < 0:
        raise ValueError("quantum_factorial expects k >= 0")
    out = ONE
    for t in range(2, k + 1):
        out = out * quantum_integer(t)
    return out


def quantum_binomial(k: int, l: int) -> HalfLaurent:
    if k < 0 or l < 0 or l > k:
        raise ValueError(f"quantum_binomial needs 0 <= l <= k, got ({k}, {l})")
    den = quantum_factorial(l) * quantum_factorial(k - l)
    return divide_exact(quantum_factorial(k), den)


def decompose_antisymmetric(f: HalfLaurent) -> HalfLaurent:
    """The unique h in v^-1 Z[v^-1] with h - bar(h) = f."""
    if f.bar() != -f:
        raise ValueError(f"not antisymmetric under bar: {f}")
    if not f.has_integer_exponents():
        raise ValueError(f"half-integer exponents in {f}")
    return HalfLaurent({e: c for e, c in f.terms.items() if e < 0})
