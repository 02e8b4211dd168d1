"""Type A root combinatorics for the Weyl group element w = (c c) with c the
alternating Coxeter element s1 s3 ... s2 s4 ..., plus its even-rank variant.

A ``Root`` is a plain tuple of simple-root coefficients.  Generator indices
k run over 1..2n in PBW order, the same order as the reduced word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Root = tuple


def zero_root(n: int) -> Root:
    return (0,) * n


def simple_root(n: int, i: int) -> Root:
    return tuple(1 if t == i - 1 else 0 for t in range(n))


def interval_root(n: int, i: int, j: int) -> Root:
    return tuple(1 if i - 1 <= t <= j - 1 else 0 for t in range(n))


def add_roots(*roots: Root) -> Root:
    return tuple(map(sum, zip(*roots)))


def sub_root(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def scale_root(c: int, a: Root) -> Root:
    return tuple(c * x for x in a)


def height(a: Root) -> int:
    return sum(a)


def cartan_form(a: Root, b: Root) -> int:
    """(a, b) for the type A Cartan matrix."""
    if len(a) != len(b):
        raise ValueError(f"root dimension mismatch: {len(a)} vs {len(b)}")
    total = 0
    for t in range(len(a)):
        if a[t]:
            total += 2 * a[t] * b[t]
            if t > 0:
                total -= a[t] * b[t - 1]
            if t + 1 < len(a):
                total -= a[t] * b[t + 1]
    return total


def norm(gamma: Root) -> int:
    """N(gamma) = (gamma, gamma)/2 - height(gamma)."""
    return cartan_form(gamma, gamma) // 2 - height(gamma)


def reflect(i: int, a: Root) -> Root:
    """Simple reflection s_i on the root lattice."""
    n = len(a)
    pair = cartan_form(simple_root(n, i), a)
    out = list(a)
    out[i - 1] -= pair
    return tuple(out)


def as_interval(a: Root) -> Optional[tuple[int, int]]:
    """[i, j] when a is the positive root alpha_i + ... + alpha_j."""
    support = [t + 1 for t, x in enumerate(a) if x]
    if not support or any(x not in (0, 1) for x in a):
        return None
    i, j = support[0], support[-1]
    if support != list(range(i, j + 1)):
        return None
    return i, j


def cartan_matrix(n: int) -> tuple:
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
        for i in range(n)
    )


# generator kinds: u, v sit in the first copy of the Coxeter word, w, x in
# the second; odd letters give u/w and even letters v/x
_KIND = {(0, 1): "u", (0, 0): "v", (1, 1): "w", (1, 0): "x"}
# dual names: u* = y, v* = z, w* = z, x* = y
_DUAL = {"u": "y", "v": "z", "w": "z", "x": "y"}


@dataclass(frozen=True)
class Context:
    n: int
    variant: str = "full"
    cartan: tuple = field(init=False, repr=False)
    reduced_word: tuple = field(init=False, repr=False)
    betas: tuple = field(init=False, repr=False)
    kinds: tuple = field(init=False, repr=False)
    labels: tuple = field(init=False, repr=False)
    intervals: tuple = field(init=False, repr=False)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n, variant = self.n, self.variant
        if variant not in ("full", "qprime"):
            raise ValueError(f"unknown variant {variant!r}")
        if variant == "full" and (n < 3 or n % 2 == 0):
            raise ValueError(f"full variant needs odd rank >= 3, got {n}")
        if variant == "qprime" and (n < 4 or n % 2):
            raise ValueError(f"qprime variant needs even rank >= 4, got {n}")
        odds = tuple(range(1, n + 1, 2))
        evens = tuple(range(2, n + 1, 2))
        word = (odds + evens) * 2
        betas = []
        for k, j in enumerate(word):
            b = simple_root(n, j)
            for i in reversed(word[:k]):
                b = reflect(i, b)
            betas.append(b)
        kinds, labels, intervals = [], [], []
        index = {}
        for k, j in enumerate(word):
            kind = _KIND[(0 if k < n else 1, j % 2)]
            label = (_DUAL[kind], j)
            iv = as_interval(betas[k])
            if iv is None:
                raise AssertionError(f"beta_{k + 1} = {betas[k]} is not a positive root")
            kinds.append(kind)
            labels.append(label)
            intervals.append(iv)
            index[label] = k + 1
        if len(set(betas)) != 2 * n:
            raise AssertionError("beta sequence has repeats; word not reduced")
        set_ = object.__setattr__
        set_(self, "cartan", cartan_matrix(n))
        set_(self, "reduced_word", word)
        set_(self, "betas", tuple(betas))
        set_(self, "kinds", tuple(kinds))
        set_(self, "labels", tuple(labels))
        set_(self, "intervals", tuple(intervals))
        set_(self, "_index", index)

    @property
    def size(self) -> int:
        """Number of PBW generators, 2n."""
        return 2 * self.n

    def beta(self, k: int) -> Root:
        return self.betas[k - 1]

    def index(self, name: str, i: int) -> Optional[int]:
        """Generator index of y_i or z_i; None for the unit conventions z_0, z_{n+1}."""
        k = self._index.get((name, i))
        if k is None:
            if name == "z" and i in (0, self.n + 1):
                return None
            raise KeyError(f"no generator {name}_{i} at rank {self.n} ({self.variant})")
        return k

    def y(self, i: int) -> int:
        return self.index("y", i)

    def z(self, i: int) -> Optional[int]:
        return self.index("z", i)

    def degree(self, name: str, i: int) -> Root:
        k = self.index(name, i)
        return zero_root(self.n) if k is None else self.betas[k - 1]

    def label(self, k: int) -> str:
        name, i = self.labels[k - 1]
        return f"{name}{i}"

    def degree_of(self, a) -> Root:
        """Degree sum_k a_k beta_k of an exponent vector."""
        out = [0] * self.n
        for k, c in enumerate(a):
            if c:
                for t, x in enumerate(self.betas[k]):
                    out[t] += c * x
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "variant": self.variant,
            "reduced_word": list(self.reduced_word),
            "generators": [
                {
                    "k": k + 1,
                    "kind": self.kinds[k],
                    "dual": self.label(k + 1),
                    "beta": list(self.betas[k]),
                    "interval": list(self.intervals[k]),
                }
                for k in range(self.size)
            ],
        }


def beta_sequence(ctx: Context) -> tuple:
    return ctx.betas


def interval_sums(ctx: Context, i: int, j: int) -> tuple[Root, Root, Root]:
    """(s, o, e): sums of |y_r| over i <= r <= j, all r, odd r, even r."""
    n = ctx.n
    s = o = e = zero_root(n)
    for r in range(max(i, 1), min(j, n) + 1):
        d = ctx.degree("y", r)
        s = add_roots(s, d)
        if r % 2:
            o = add_roots(o, d)
        else:
            e = add_roots(e, d)
    return s, o, e


def a_coeff(i: int, j: int) -> int:
    if j - i < 2:
        raise ValueError(f"a_coeff needs j - i >= 2, got ({i}, {j})")
    return -1 if j - i <= 3 else -2


# Cross-checks against the representation-theoretic interval lists.

def module_intervals(ctx: Context) -> Optional[dict]:
    """Intervals of I_i (first copy) and tau(I_i) (second copy) keyed by the
    generator label, from the injective / AR-translate list.  Only defined
    where the uniform formulas apply: full rank >= 5, even rank >= 6."""
    n = ctx.n
    if ctx.variant == "full":
        if n < 5:
            return None
        return _full_module_intervals(n)
    parent = n + 1
    if parent < 7:
        return None
    return _qprime_intervals(parent)


def _full_module_intervals(n: int) -> dict:
    out = {}
    for i in range(1, n + 1):
        if i % 2:
            out[("y", i)] = (i, i)
            if i == 1:
                out[("z", i)] = (2, 3)
            elif i == n:
                out[("z", i)] = (n - 2, n - 1)
            else:
                out[("z", i)] = (i - 2, i + 2)
        else:
            out[("z", i)] = (i - 1, i + 1)
            if i == 2:
                out[("y", i)] = (2, 5)
            elif i == n - 1:
                out[("y", i)] = (n - 4, n - 1)
            else:
                out[("y", i)] = (i - 3, i + 3)
    return out


def _qprime_intervals(parent: int) -> dict:
    # summands at vertices below parent-3 are those of Q; the last three
    # vertices of Q' carry modified ones
    m = parent - 1
    full = _full_module_intervals(parent)
    fixed = {k: iv for k, iv in full.items() if k[1] <= parent - 3}
    fixed[("y", m - 1)] = (m - 1, m - 1)  # I'_{n-2}, odd vertex
    fixed[("z", m)] = (parent - 2, parent - 1)  # I'_{n-1}
    fixed[("y", m - 2)] = (parent - 6, parent - 1)  # tau(I'_{n-3}), even vertex
    fixed[("z", m - 1)] = (parent - 4, parent - 1)  # tau(I'_{n-2})
    fixed[("y", m)] = (parent - 4, parent - 3)  # tau(I'_{n-1})
    return fixed


def explicit_positive_roots(n: int) -> set:
    """The listed union of root families making up Delta_w^+ (full, n >= 5).

    The odd family alpha_{i-2}+...+alpha_{i+2} is taken over 3 <= i <= n-2
    and the even family alpha_{i-3}+...+alpha_{i+3} over 4 <= i <= n-3, which
    is what the AR-translate list gives; see the decisions ledger."""
    out = set()
    for i in range(1, n + 1, 2):
        out.add(interval_root(n, i, i))
    for i in range(2, n, 2):
        out.add(interval_root(n, i - 1, i + 1))
    out.add(interval_root(n, 2, 3))
    out.add(interval_root(n, n - 2, n - 1))
    for i in range(3, n - 1, 2):
        out.add(interval_root(n, i - 2, i + 2))
    out.add(interval_root(n, 2, 5))
    out.add(interval_root(n, n - 4, n - 1))
    for i in range(4, n - 2, 2):
        out.add(interval_root(n, i - 3, i + 3))
    return out
