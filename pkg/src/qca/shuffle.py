"""The quantum shuffle algebra on words in the letters 1..n.

Products follow the convention fixed by
``w[2] * w[1] = w[1,2] + v^-1 w[2,1]``: a letter a of the left factor that
ends up before a letter b of the right factor contributes (alpha_a, alpha_b)
to the exponent.

Elements are stored packed: for each word length a sorted array of word
codes (base 16 digits), doubled exponents and coefficients.  Coefficients are
int64 while a crude size bound proves that cannot overflow, otherwise Python
ints in object arrays.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .laurent import HalfLaurent, ONE
from .roota import Context

BASE = 16
MAX_LETTER = BASE - 1
MAX_LENGTH = 15
_SAFE = 2 ** 62
BLOCK = 1 << 21


class ShuffleBoundError(OverflowError):
    """A word or letter does not fit the packed encoding."""


_CARTAN = np.zeros((BASE, BASE), dtype=np.int64)
for _a in range(1, BASE):
    _CARTAN[_a, _a] = 2
    if _a + 1 < BASE:
        _CARTAN[_a, _a + 1] = _CARTAN[_a + 1, _a] = -1


def encode(word: Iterable[int]) -> int:
    code = 0
    for a in word:
        if not 1 <= a <= MAX_LETTER:
            raise ShuffleBoundError(f"letter {a} outside 1..{MAX_LETTER}")
        code = code * BASE + a
    return code


def decode(code: int, length: int) -> tuple:
    out = []
    for _ in range(length):
        code, a = divmod(code, BASE)
        out.append(a)
    return tuple(reversed(out))


def _digits(codes: np.ndarray, length: int) -> np.ndarray:
    """Letter matrix (N x length) of an array of word codes."""
    out = np.empty((len(codes), length), dtype=np.int64)
    c = codes.copy()
    for t in range(length - 1, -1, -1):
        out[:, t] = c % BASE
        c //= BASE
    return out


def _aggregate(codes, exps, coeffs):
    """Sum coefficients with equal (code, exponent); drop zeros; sorted."""
    if len(codes) == 0:
        return codes, exps, coeffs
    order = np.lexsort((exps, codes))
    codes, exps, coeffs = codes[order], exps[order], coeffs[order]
    new = np.ones(len(codes), dtype=bool)
    new[1:] = (codes[1:] != codes[:-1]) | (exps[1:] != exps[:-1])
    starts = np.flatnonzero(new)
    summed = np.add.reduceat(coeffs, starts)
    codes, exps = codes[starts], exps[starts]
    keep = summed != 0
    return codes[keep], exps[keep], summed[keep]


def _coeff_array(values, bound_ok: bool):
    if bound_ok:
        return np.asarray(values, dtype=np.int64)
    return np.asarray(values, dtype=object)


def _abs_total(c: np.ndarray) -> int:
    if c.dtype == object:
        return int(sum(abs(x) for x in c))
    return int(np.abs(c).sum())


class ShuffleElement:
    __slots__ = ("blocks", "_terms")

    def __init__(self, terms: Mapping | None = None):
        self.blocks = {}
        self._terms = None
        if terms:
            by_len: dict = {}
            for word, coeff in terms.items():
                word = tuple(word)
                if len(word) > MAX_LENGTH:
                    raise ShuffleBoundError(f"word longer than {MAX_LENGTH}")
                coeff = HalfLaurent.coerce(coeff)
                code = encode(word)
                bucket = by_len.setdefault(len(word), ([], [], []))
                for e, c in coeff.terms.items():
                    bucket[0].append(code)
                    bucket[1].append(e)
                    bucket[2].append(c)
            for length, (cs, es, vs) in by_len.items():
                small = all(abs(v) < 2 ** 40 for v in vs)
                arrs = _aggregate(np.asarray(cs, dtype=np.int64),
                                  np.asarray(es, dtype=np.int64),
                                  _coeff_array(vs, small))
                if len(arrs[0]):
                    self.blocks[length] = arrs

    @classmethod
    def _from_blocks(cls, blocks: dict) -> "ShuffleElement":
        obj = cls.__new__(cls)
        obj.blocks = {L: b for L, b in blocks.items() if len(b[0])}
        obj._terms = None
        return obj

    @classmethod
    def word(cls, *letters: int) -> "ShuffleElement":
        return cls({tuple(letters): ONE})

    # views

    @property
    def terms(self) -> dict:
        if self._terms is None:
            out: dict = {}
            for length in sorted(self.blocks):
                codes, exps, coeffs = self.blocks[length]
                cur_code, acc = None, None
                for code, e, c in zip(codes.tolist(), exps.tolist(), coeffs.tolist()):
                    if code != cur_code:
                        if cur_code is not None:
                            out[decode(cur_code, length)] = HalfLaurent(acc)
                        cur_code, acc = code, {}
                    acc[e] = int(c)
                if cur_code is not None:
                    out[decode(cur_code, length)] = HalfLaurent(acc)
            self._terms = out
        return self._terms

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.blocks

    def coefficient(self, word) -> HalfLaurent:
        return self.terms.get(tuple(word), HalfLaurent())

    def words(self) -> list:
        return sorted(self.terms)

    def letter_degrees(self) -> set:
        """Set of sorted letter multisets occurring among the words."""
        return {tuple(sorted(w)) for w in self.terms}

    # linear structure

    def _combine(self, other: "ShuffleElement", sign: int) -> "ShuffleElement":
        blocks = dict(self.blocks)
        for length, (c2, e2, v2) in other.blocks.items():
            if sign < 0:
                v2 = -v2
            if length in blocks:
                c1, e1, v1 = blocks[length]
                if v1.dtype != v2.dtype:
                    v1, v2 = v1.astype(object), v2.astype(object)
                blocks[length] = _aggregate(np.concatenate([c1, c2]),
                                            np.concatenate([e1, e2]),
                                            np.concatenate([v1, v2]))
            else:
                blocks[length] = (c2, e2, v2)
        return ShuffleElement._from_blocks(blocks)

    def __add__(self, other: "ShuffleElement") -> "ShuffleElement":
        return self._combine(other, 1)

    def __sub__(self, other: "ShuffleElement") -> "ShuffleElement":
        return self._combine(other, -1)

    def __neg__(self) -> "ShuffleElement":
        return ShuffleElement._from_blocks(
            {L: (c, e, -v) for L, (c, e, v) in self.blocks.items()})

    def scale(self, s) -> "ShuffleElement":
        s = HalfLaurent.coerce(s)
        if s.is_zero() or self.is_zero():
            return ShuffleElement()
        blocks = {}
        for length, (c, e, v) in self.blocks.items():
            big = any(abs(x) >= 2 ** 20 for x in s.terms.values()) or _abs_total(v) >= 2 ** 40
            vv = v.astype(object) if big else v
            cs, es, vs = [], [], []
            for f, d in s.terms.items():
                cs.append(c)
                es.append(e + f)
                vs.append(vv * d)
            blocks[length] = _aggregate(np.concatenate(cs), np.concatenate(es),
                                        np.concatenate(vs))
        return ShuffleElement._from_blocks(blocks)

    def __mul__(self, other):
        if isinstance(other, ShuffleElement):
            return shuffle_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self) -> list:
        return [{"word": list(w), "coeff": self.terms[w].to_json()}
                for w in sorted(self.terms)]

    @classmethod
    def from_json(cls, data) -> "ShuffleElement":
        return cls({tuple(t["word"]): HalfLaurent.from_json(t["coeff"]) for t in data})

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            tag = "w[" + ",".join(map(str, w)) + "]"
            parts.append(tag if c == ONE else f"({c})*{tag}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def _masks(r: int, s: int):
    """Interleavings of r left and s right letters.

    Returns (before, powx, powy): before[m, p*s+q] = 1 when left letter p sits
    before right letter q in interleaving m; powx/powy give the base-16 place
    value of each letter's final position."""
    L = r + s
    combos = list(combinations(range(L), r))
    M = len(combos)
    posx = np.array(combos, dtype=np.int64).reshape(M, r)
    allpos = np.arange(L)
    posy = np.array([[t for t in allpos if t not in set(c)] for c in combos],
                    dtype=np.int64).reshape(M, s)
    before = (posx[:, :, None] < posy[:, None, :]).reshape(M, r * s).astype(np.int64)
    place = BASE ** (L - 1 - np.arange(L, dtype=np.int64))
    return before, place[posx], place[posy]


def _product_block(bx, by, r: int, s: int):
    cx, ex, vx = bx
    cy, ey, vy = by
    before, powx, powy = _masks(r, s)
    M = before.shape[0]
    wx = _digits(cx, r)
    wy = _digits(cy, s)
    # code contributions per word and interleaving
    codex = wx @ powx.T if r else np.zeros((len(cx), M), dtype=np.int64)
    codey = wy @ powy.T if s else np.zeros((len(cy), M), dtype=np.int64)
    safe = (vx.dtype != object and vy.dtype != object
            and _abs_total(vx) * _abs_total(vy) * M < _SAFE)
    if not safe:
        vx, vy = vx.astype(object), vy.astype(object)
    out_c, out_e, out_v = [], [], []
    ny = len(cy)
    step = max(1, BLOCK // max(1, ny * M))
    for lo in range(0, len(cx), step):
        hi = min(len(cx), lo + step)
        nx = hi - lo
        if r and s:
            # (alpha_a, alpha_b) for every left letter a and right letter b
            pair = _CARTAN[wx[lo:hi, None, :, None], wy[None, :, None, :]]
            pair = pair.reshape(nx * ny, r * s)
            expo = (pair @ before.T).reshape(nx, ny, M)
        else:
            expo = np.zeros((nx, ny, M), dtype=np.int64)
        code = codex[lo:hi, None, :] + codey[None, :, :]
        e = ex[lo:hi, None, None] + ey[None, :, None] + 2 * expo
        v = vx[lo:hi, None, None] * vy[None, :, None]
        v = np.broadcast_to(v, (nx, ny, M))
        agg = _aggregate(code.ravel(), e.ravel(), np.ascontiguousarray(v).ravel())
        out_c.append(agg[0])
        out_e.append(agg[1])
        out_v.append(agg[2])
    if any(x.dtype == object for x in out_v):
        out_v = [x.astype(object) for x in out_v]
    return _aggregate(np.concatenate(out_c), np.concatenate(out_e), np.concatenate(out_v))


def shuffle_product(x: ShuffleElement, y: ShuffleElement) -> ShuffleElement:
    blocks: dict = {}
    for r, bx in x.blocks.items():
        for s, by in y.blocks.items():
            if r + s > MAX_LENGTH:
                raise ShuffleBoundError(f"product word length {r + s} > {MAX_LENGTH}")
            part = _product_block(bx, by, r, s)
            if r + s in blocks:
                prev = blocks[r + s]
                dt = object if object in (prev[2].dtype, part[2].dtype) else np.int64
                part = _aggregate(np.concatenate([prev[0], part[0]]),
                                  np.concatenate([prev[1], part[1]]),
                                  np.concatenate([prev[2].astype(dt), part[2].astype(dt)]))
            blocks[r + s] = part
    return ShuffleElement._from_blocks(blocks)


def shuffle_power_product(factors: list) -> ShuffleElement:
    out = ShuffleElement({(): ONE})
    for f in factors:
        out = out * f
    return out


def alternating_words(i: int, j: int) -> list:
    """Words on {i..j} in which every even letter comes after its neighbours
    inside the interval."""
    letters = list(range(i, j + 1))
    out = []
    placed = set()
    word = []

    def ok(a: int) -> bool:
        nbrs = [b for b in (a - 1, a + 1) if i <= b <= j]
        if a % 2 == 0:
            return all(b in placed for b in nbrs)
        return not any(b in placed for b in nbrs)

    def rec():
        if len(word) == len(letters):
            out.append(tuple(word))
            return
        for a in letters:
            if a not in placed and ok(a):
                placed.add(a)
                word.append(a)
                rec()
                word.pop()
                placed.discard(a)

    rec()
    return out


def interval_shuffle(i: int, j: int) -> ShuffleElement:
    """Shuffle expansion of the dual root vector of alpha_i + ... + alpha_j."""
    return ShuffleElement({w: ONE for w in alternating_words(i, j)})


def dual_generator_shuffle(ctx: Context, k: int) -> ShuffleElement:
    if not 1 <= k <= ctx.size:
        raise ValueError(f"generator index {k} outside 1..{ctx.size}")
    i, j = ctx.intervals[k - 1]
    return _interval_cached(i, j)


@lru_cache(maxsize=None)
def _interval_cached(i: int, j: int) -> ShuffleElement:
    return interval_shuffle(i, j)


def euler_count(h: int) -> int:
    if h < 0:
        raise ValueError("euler_count expects h >= 0")
    return len(alternating_words(1, h + 1))


def is_sigma_selfdual(x: ShuffleElement) -> bool:
    degrees = x.letter_degrees()
    if len(degrees) > 1:
        raise ValueError("is_sigma_selfdual needs a homogeneous element")
    return all(c.bar() == c for c in x.terms.values())
