"""Classical and quantum cluster structure on A(w).

Classical values are commutative Laurent polynomials over Z.  Seeds carry
their cluster variables as Laurent polynomials in the base cluster
Z_1..Z_n, P_1..P_n.  The quantum layer works inside the quantum torus of the
base quantum cluster v^(1/2) z_i, v^((gamma_i, gamma_i)/4) p_i, gamma_i = |y_i| + |z_i|.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .laurent import HalfLaurent, ONE, divide_exact, vhalf
from .roota import Context, add_roots, cartan_form, interval_sums


# commutative Laurent polynomials

class ClassicalPoly:
    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping | None = None):
        self.names = tuple(names)
        self.terms = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != len(self.names):
                    raise ValueError("exponent length does not match variables")
                s = self.terms.get(e, 0) + c
                if s:
                    self.terms[e] = s
                else:
                    self.terms.pop(e, None)

    @classmethod
    def const(cls, names, c: int = 1) -> "ClassicalPoly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name: str, power: int = 1) -> "ClassicalPoly":
        names = tuple(names)
        e = [0] * len(names)
        e[names.index(name)] = power
        return cls(names, {tuple(e): 1})

    def _same(self, other: "ClassicalPoly") -> None:
        if self.names != other.names:
            raise ValueError(f"variable mismatch: {self.names} vs {other.names}")

    def _lift(self, other) -> "ClassicalPoly":
        if isinstance(other, int):
            return ClassicalPoly.const(self.names, other)
        self._same(other)
        return other

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> "ClassicalPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ClassicalPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self) -> "ClassicalPoly":
        return ClassicalPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ClassicalPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "ClassicalPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "ClassicalPoly":
        other = self._lift(other)
        out: dict = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                out[g] = out.get(g, 0) + c * d
        return ClassicalPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ClassicalPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("coefficient is not a unit")
            return ClassicalPoly(self.names, {tuple(-x * -k for x in e): c ** -k})
        out = ClassicalPoly.const(self.names)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ClassicalPoly.const(self.names, other)
        if not isinstance(other, ClassicalPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    def divide_exact(self, other: "ClassicalPoly") -> "ClassicalPoly":
        """Exact quotient by leading terms in lex order; ValueError if inexact."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return ClassicalPoly(self.names)
        glead = max(other.terms)
        gc = other.terms[glead]
        floor = tuple(x - y for x, y in zip(min(self.terms), min(other.terms)))
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            top = max(rem)
            m = tuple(x - y for x, y in zip(top, glead))
            if m < floor:
                raise ValueError("not exactly divisible")
            c, r = divmod(rem[top], gc)
            if r:
                raise ValueError("not exactly divisible")
            quot[m] = c
            for f, d in other.terms.items():
                g = tuple(x + y for x, y in zip(f, m))
                s = rem.get(g, 0) - c * d
                if s:
                    rem[g] = s
                else:
                    rem.pop(g, None)
        return ClassicalPoly(self.names, quot)

    def is_polynomial(self) -> bool:
        return all(min(e, default=0) >= 0 for e in self.terms)

    def substitute(self, mapping: Mapping[str, "ClassicalPoly"], names) -> "ClassicalPoly":
        """Replace each variable by a polynomial over `names`; negative powers
        need the image to be a unit monomial."""
        names = tuple(names)
        images = []
        for nm in self.names:
            images.append(mapping[nm] if nm in mapping else ClassicalPoly.var(names, nm))
        out = ClassicalPoly(names)
        cache: dict = {}
        for e, c in self.terms.items():
            term = ClassicalPoly.const(names, c)
            for idx, k in enumerate(e):
                if k:
                    key = (idx, k)
                    if key not in cache:
                        cache[key] = images[idx] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def to_sympy(self):
        import sympy
        syms = sympy.symbols(self.names)
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            mono = sympy.Integer(c)
            for s, k in zip(syms, e):
                if k:
                    mono *= s ** k
            expr += mono
        return expr

    def _ordered(self) -> list:
        return sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self._ordered():
            c = self.terms[e]
            factors = []
            for nm, k in zip(self.names, e):
                if k == 1:
                    factors.append(nm)
                elif k:
                    factors.append(f"{nm}^{k}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"ClassicalPoly({self})"

    def to_json(self) -> dict:
        return {"vars": list(self.names),
                "terms": [[list(e), self.terms[e]] for e in sorted(self.terms)]}


def yz_names(n: int) -> tuple:
    return tuple(f"Y{i}" for i in range(1, n + 1)) + tuple(f"Z{i}" for i in range(1, n + 1))


def zp_names(n: int) -> tuple:
    return tuple(f"Z{i}" for i in range(1, n + 1)) + tuple(f"P{i}" for i in range(1, n + 1))


def _Y(n, i):
    return ClassicalPoly.var(yz_names(n), f"Y{i}")


def _Z(n, i, names=None):
    names = names or yz_names(n)
    if i < 1 or i > n:
        return ClassicalPoly.const(names)
    return ClassicalPoly.var(names, f"Z{i}")


def p_classical(n: int, i: int) -> ClassicalPoly:
    return _Y(n, i) * _Z(n, i) - _Z(n, i - 1) * _Z(n, i + 1)


def delta_classical(ctx, i: int, j: int) -> ClassicalPoly:
    n = ctx if isinstance(ctx, int) else ctx.n
    if not 1 <= i <= j <= n:
        raise ValueError(f"need 1 <= i <= j <= {n}")
    return _delta_classical(n, i, j)


_DELTA_CACHE: dict = {}


def _delta_classical(n: int, i: int, j: int) -> ClassicalPoly:
    key = (n, i, j)
    if key in _DELTA_CACHE:
        return _DELTA_CACHE[key]
    names = yz_names(n)
    if j == i - 1:
        out = ClassicalPoly.const(names)
    elif j == i - 3:
        out = ClassicalPoly(names)
    elif j == i:
        out = _Y(n, i)
    elif j == i + 1:
        # 2x2 determinant: Y_i Y_{i+1} - c_i c_{i+1}
        out = _Y(n, i) * _Y(n, i + 1) - _Z(n, i - 1) * _Z(n, i + 2)
    else:
        out = (_Y(n, j) * _delta_classical(n, i, j - 1)
               - _Z(n, j + 1) * p_classical(n, j - 2) * _delta_classical(n, i, j - 3))
    _DELTA_CACHE[key] = out
    return out


def delta_determinant_check(ctx, i: int, j: int) -> dict:
    """Fraction-field determinant and the exchange relation against the recursion."""
    import sympy
    n = ctx if isinstance(ctx, int) else ctx.n
    names = yz_names(n)
    syms = dict(zip(names, sympy.symbols(names)))

    def Zs(k):
        return syms[f"Z{k}"] if 1 <= k <= n else sympy.Integer(1)

    c = {r: Zs(r - 1) * Zs(r + 1) / Zs(r) for r in range(i, j + 1)}
    size = j - i + 1
    mat = sympy.zeros(size, size)
    for r in range(size):
        for s in range(size):
            rr, ss = r + i, s + i
            if rr == ss:
                mat[r, s] = syms[f"Y{rr}"] / c[rr]
            elif ss > rr or rr == ss + 1:
                mat[r, s] = 1
    det = mat.det(method="berkowitz")
    scale = sympy.Integer(1)
    for r in range(i, j + 1):
        scale *= c[r]
    det_ok = sympy.cancel(sympy.together(scale * det) - delta_classical(n, i, j).to_sympy()) == 0
    lhs = delta_classical(n, i, j) * _Z(n, j)
    if j == i:
        rhs = p_classical(n, i) + _Z(n, i - 1) * _Z(n, i + 1)
    else:
        prev2 = (ClassicalPoly.const(names) if j - 2 == i - 1
                 else delta_classical(n, i, j - 2) if j - 2 >= i else None)
        rhs = p_classical(n, j) * delta_classical(n, i, j - 1)
        if prev2 is not None:
            rhs = rhs + _Z(n, j + 1) * p_classical(n, j - 1) * prev2
    return {"determinant": bool(det_ok), "exchange": lhs == rhs}


def y_in_base(n: int, i: int) -> ClassicalPoly:
    """Y_i = (P_i + Z_{i-1} Z_{i+1}) / Z_i over the base cluster."""
    names = zp_names(n)
    num = ClassicalPoly.var(names, f"P{i}") + _Z(n, i - 1, names) * _Z(n, i + 1, names)
    return num * _Z(n, i, names) ** -1


def to_base(n: int, f: ClassicalPoly) -> ClassicalPoly:
    """Rewrite a polynomial in Y, Z over the base cluster Z, P."""
    names = zp_names(n)
    mapping = {f"Y{i}": y_in_base(n, i) for i in range(1, n + 1)}
    mapping.update({f"Z{i}": ClassicalPoly.var(names, f"Z{i}") for i in range(1, n + 1)})
    return f.substitute(mapping, names)


# seeds and mutation

@dataclass(frozen=True)
class Seed:
    n: int
    B: tuple  # 2n rows (Z_1..Z_n then P_1..P_n) x n columns
    values: tuple  # 2n ClassicalPoly over the base cluster
    labels: tuple

    def to_json(self) -> dict:
        return {"n": self.n, "B": [list(r) for r in self.B], "labels": list(self.labels),
                "values": [str(x) for x in self.values]}


def base_exchange_matrix(n: int) -> tuple:
    """Arrow s -> t gives b_st = +1.  Odd Z_i are sources among mutable
    vertices; P_i -> Z_i for odd i and Z_i -> P_i for even i."""
    B = [[0] * n for _ in range(2 * n)]

    def arrow(s, t):
        if t < n:
            B[s][t] += 1
        if s < n:
            B[t][s] -= 1

    for i in range(1, n):
        if i % 2:
            arrow(i - 1, i)
        else:
            arrow(i, i - 1)
    for i in range(1, n + 1):
        if i % 2:
            arrow(n + i - 1, i - 1)
        else:
            arrow(i - 1, n + i - 1)
    return tuple(tuple(r) for r in B)


def base_seed(ctx) -> Seed:
    n = ctx if isinstance(ctx, int) else ctx.n
    names = zp_names(n)
    values = tuple(ClassicalPoly.var(names, nm) for nm in names)
    return Seed(n, base_exchange_matrix(n), values, names)


def mutate_matrix(B: tuple, k: int) -> tuple:
    """Matrix mutation at column k (0-based)."""
    rows, cols = len(B), len(B[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            if i == k or j == k:
                row.append(-B[i][j])
            else:
                bik, bkj = B[i][k], B[k][j]
                row.append(B[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(row))
    return tuple(out)


def mutate(seed: Seed, k: int) -> Seed:
    """Mutation at the mutable vertex k (1-based)."""
    if not 1 <= k <= seed.n:
        raise ValueError(f"vertex {k} is not mutable (1..{seed.n})")
    kk = k - 1
    names = seed.values[0].names
    plus = ClassicalPoly.const(names)
    minus = ClassicalPoly.const(names)
    for r, row in enumerate(seed.B):
        b = row[kk]
        if b > 0:
            plus = plus * seed.values[r] ** b
        elif b < 0:
            minus = minus * seed.values[r] ** (-b)
    new = (plus + minus).divide_exact(seed.values[kk])
    values = list(seed.values)
    values[kk] = new
    labels = list(seed.labels)
    labels[kk] = identify(seed.n, new) or f"mu{k}({seed.labels[kk]})"
    return Seed(seed.n, mutate_matrix(seed.B, kk), tuple(values), tuple(labels))


def initial_seed(ctx) -> Seed:
    """The base seed mutated at every odd vertex."""
    s = base_seed(ctx)
    for k in range(1, s.n + 1, 2):
        s = mutate(s, k)
    return s


_NAMED: dict = {}


def named_variables(n: int) -> dict:
    """Known mutable cluster variables over the base cluster, value -> name."""
    if n not in _NAMED:
        names = zp_names(n)
        table = {ClassicalPoly.var(names, f"Z{i}"): f"Z{i}" for i in range(1, n + 1)}
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                table[to_base(n, delta_classical(n, i, j))] = f"D{i},{j}"
        _NAMED[n] = table
    return _NAMED[n]


def identify(n: int, value: ClassicalPoly) -> Optional[str]:
    return named_variables(n).get(value)


@dataclass
class ExchangeGraph:
    n: int
    clusters: list  # tuples of mutable labels
    edges: list  # (u, v, k)
    variables: dict  # label -> value

    def degrees(self) -> list:
        deg = [0] * len(self.clusters)
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_dot(self) -> str:
        lines = [f"digraph exchange_n{self.n} {{"]
        for idx, cl in enumerate(self.clusters):
            lines.append(f'  c{idx} [label="{" ".join(cl)}"];')
        for u, v, k in self.edges:
            lines.append(f'  c{u} -> c{v} [label="{k}", dir=none];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": self.n, "clusters": [list(c) for c in self.clusters],
                "edges": [list(e) for e in self.edges],
                "variables": {k: str(v) for k, v in sorted(self.variables.items())}}


MAX_GRAPH_RANK = 4


def exchange_graph(ctx) -> ExchangeGraph:
    n = ctx if isinstance(ctx, int) else ctx.n
    if n > MAX_GRAPH_RANK:
        raise ValueError(f"exchange graph only enumerated up to rank {MAX_GRAPH_RANK}")
    start = base_seed(n)
    key_of = lambda s: frozenset(s.values[:n])
    index = {key_of(start): 0}
    seeds = [start]
    edges = []
    seen_edges = set()
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for k in range(1, n + 1):
            t = mutate(seeds[u], k)
            key = key_of(t)
            if key not in index:
                index[key] = len(seeds)
                seeds.append(t)
                queue.append(index[key])
            v = index[key]
            # a cluster may recur with its vertices permuted, so one edge per pair
            pair = (min(u, v), max(u, v))
            if pair not in seen_edges:
                seen_edges.add(pair)
                edges.append(pair + (k,))
    variables = {}
    for s in seeds:
        for lab, val in zip(s.labels[:n], s.values[:n]):
            variables[lab] = val
    clusters = [tuple(sorted(s.labels[:n])) for s in seeds]
    return ExchangeGraph(n, clusters, sorted(edges), variables)


# quantum torus

def _twice_form(lam: tuple, e, f) -> int:
    """e^T Lambda f."""
    total = 0
    for a, ea in enumerate(e):
        if ea:
            row = lam[a]
            for b, fb in enumerate(f):
                if fb:
                    total += ea * row[b] * fb
    return total


def _acc(out: dict, key, c: HalfLaurent) -> None:
    s = out.get(key)
    s = c if s is None else s + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def torus_mul(lam: tuple, x: dict, y: dict) -> dict:
    """X^e X^f = v^(Lambda(e,f)/2) X^(e+f)."""
    out: dict = {}
    for e, c in x.items():
        for f, d in y.items():
            g = tuple(a + b for a, b in zip(e, f))
            _acc(out, g, c * d * vhalf(_twice_form(lam, e, f)))
    return out


def torus_pow(lam: tuple, x: dict, k: int) -> dict:
    m = len(lam)
    out = {(0,) * m: ONE}
    for _ in range(k):
        out = torus_mul(lam, out, x)
    return out


def torus_left_divide(lam: tuple, d: dict, num: dict) -> dict:
    """q with d q = num, by leading terms in lex order; ValueError if inexact."""
    if not d:
        raise ZeroDivisionError("division by zero")
    if not num:
        return {}
    dlead = max(d)
    dc = d[dlead]
    floor = tuple(a - b for a, b in zip(min(num), min(d)))
    rem = dict(num)
    q: dict = {}
    while rem:
        top = max(rem)
        m = tuple(a - b for a, b in zip(top, dlead))
        if m < floor:
            raise ValueError("not exactly divisible in the quantum torus")
        coeff = divide_exact(rem[top], dc * vhalf(_twice_form(lam, dlead, m)))
        q[m] = coeff
        for e, c in torus_mul(lam, d, {m: coeff}).items():
            _acc(rem, e, -c)
    return q


def torus_at_one(x: dict, names) -> ClassicalPoly:
    out = {}
    for e, c in x.items():
        if c.at_one():
            out[e] = out.get(e, 0) + c.at_one()
    return ClassicalPoly(names, out)


@dataclass(frozen=True)
class QuantumSeed:
    n: int
    B: tuple
    lam: tuple  # commutation matrix of the current cluster
    base_lam: tuple  # commutation matrix of the initial torus
    frame: tuple  # current cluster variables as torus elements (dicts)

    def to_json(self) -> dict:
        return {
            "n": self.n, "B": [list(r) for r in self.B], "Lambda": [list(r) for r in self.lam],
            "frame": [[{"exponents": list(e), "coeff": x[e].to_json()} for e in sorted(x)]
                      for x in self.frame],
        }


def _frame_parts(qs: QuantumSeed, f) -> tuple:
    # (den, scaled num) with M(f) = den^-1 num; negative powers sit on the left
    m = len(f)
    lam = qs.lam
    twice = 0
    for a in range(m):
        for b in range(a + 1, m):
            if f[a] and f[b]:
                twice -= f[a] * f[b] * lam[a][b]
                if f[a] > 0 > f[b]:
                    twice += 2 * f[a] * f[b] * lam[a][b]
    unit = {(0,) * m: ONE}
    num = unit
    for a in range(m):
        if f[a] > 0:
            num = torus_mul(qs.base_lam, num, torus_pow(qs.base_lam, qs.frame[a], f[a]))
    den = unit
    for a in range(m - 1, -1, -1):
        if f[a] < 0:
            den = torus_mul(qs.base_lam, den, torus_pow(qs.base_lam, qs.frame[a], -f[a]))
    scale = vhalf(twice)
    return den, {e: c * scale for e, c in num.items()}


def frame_monomial(qs: QuantumSeed, f) -> dict:
    """M(f) = v^(-1/2 sum_{a<b} f_a f_b Lambda_ab) prod_a frame_a^{f_a}."""
    den, num = _frame_parts(qs, f)
    if den == {(0,) * len(f): ONE}:
        return num
    return torus_left_divide(qs.base_lam, den, num)


def check_compatible(B: tuple, lam: tuple) -> Optional[list]:
    """Diagonal d with B^T Lambda = [diag(d) | 0] and d > 0, else None."""
    rows, cols = len(B), len(B[0])
    if len(lam) != rows or any(len(r) != rows for r in lam):
        raise ValueError("dimension mismatch between B and Lambda")
    diag = []
    for j in range(cols):
        for i in range(rows):
            s = sum(B[k][j] * lam[k][i] for k in range(rows))
            if i == j:
                if s <= 0:
                    return None
                diag.append(s)
            elif s:
                return None
    return diag


def mutate_lambda(B: tuple, lam: tuple, k: int, eps: int = 1) -> tuple:
    """E^T Lambda E with E = identity except column k: -1 at (k,k), max(0, -eps b_ik)."""
    m = len(lam)
    E = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for i in range(m):
        E[i][k] = -1 if i == k else max(0, -eps * B[i][k])
    out = []
    for a in range(m):
        row = []
        for b in range(m):
            row.append(sum(E[i][a] * lam[i][j] * E[j][b]
                           for i in range(m) if E[i][a] for j in range(m) if E[j][b]))
        out.append(tuple(row))
    return tuple(out)


def quantum_mutate(qs: QuantumSeed, k: int) -> QuantumSeed:
    """BZ mutation at mutable vertex k (1-based)."""
    if not 1 <= k <= qs.n:
        raise ValueError(f"vertex {k} is not mutable (1..{qs.n})")
    if check_compatible(qs.B, qs.lam) is None:
        raise ValueError("seed is not a compatible pair")
    kk = k - 1
    m = len(qs.lam)
    col = [qs.B[i][kk] for i in range(m)]
    f1 = [max(0, b) for b in col]
    f2 = [max(0, -b) for b in col]
    f1[kk] -= 1
    f2[kk] -= 1
    # both terms carry the same x_k^-1, and only their sum need be divisible
    den, new = _frame_parts(qs, f1)
    new = dict(new)
    for e, c in _frame_parts(qs, f2)[1].items():
        _acc(new, e, c)
    new = torus_left_divide(qs.base_lam, den, new)
    frame = list(qs.frame)
    frame[kk] = new
    return QuantumSeed(qs.n, mutate_matrix(qs.B, kk), mutate_lambda(qs.B, qs.lam, kk),
                       qs.base_lam, tuple(frame))


# the base quantum seed inside U_v^+(w)

def gamma(ctx: Context, i: int) -> tuple:
    return add_roots(ctx.degree("y", i), ctx.degree("z", i))


def frozen_twice_exponent(ctx: Context, i: int) -> int:
    """2 * (gamma_i, gamma_i)/4, checked to be an integer."""
    g = gamma(ctx, i)
    q = cartan_form(g, g)
    if q % 2:
        raise ValueError(f"(gamma_{i}, gamma_{i}) = {q} is odd; v^(1/4) needed")
    return q // 2


def base_cluster_elements(ctx: Context) -> list:
    """v^(1/2) z_i, then v^((gamma_i,gamma_i)/4) p_i, as dual PBW elements."""
    from .dcb import p_element
    from .pbw import algebra
    alg = algebra(ctx)
    out = [alg.z(i).scale(vhalf(1)) for i in range(1, ctx.n + 1)]
    out += [p_element(ctx, i).scale(vhalf(frozen_twice_exponent(ctx, i)))
            for i in range(1, ctx.n + 1)]
    return out


def lambda_matrix(ctx: Context) -> tuple:
    from .dcb import v_commutation_exponent
    xs = base_cluster_elements(ctx)
    m = len(xs)
    lam = [[0] * m for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            e = v_commutation_exponent(ctx, xs[a], xs[b])
            lam[a][b] = e
            lam[b][a] = -e
    return tuple(tuple(r) for r in lam)


def listed_lambda(ctx: Context) -> tuple:
    """Commutation exponents as listed for the base quantum cluster."""
    n = ctx.n
    Y = lambda i: ctx.degree("y", i)
    Zd = lambda i: ctx.degree("z", i)
    f = cartan_form
    m = 2 * n
    lam = [[0] * m for _ in range(m)]

    def zz(i, j):
        if i % 2 == 0 and j % 2:
            return -f(Zd(i), Zd(j))
        if i % 2 and j % 2 == 0:
            return f(Zd(j), Zd(i))
        return 0

    def zp(i, j):
        if i % 2 == 0 and j % 2 == 0:
            return f(Zd(i), Y(j))
        if i % 2 and j % 2:
            return -f(Zd(i), Y(j))
        return 0

    def pp_raw(i, j):
        if i % 2 == 0 and j % 2:
            return -f(Zd(i), Zd(j)) + f(Zd(i), Y(j)) + f(Y(i), Zd(j)) + f(Y(i), Y(j))
        if i % 2 == 0:
            return -f(Zd(i), Y(j)) + f(Y(i), Zd(j))
        if j % 2:
            return f(Zd(i), Y(j)) - f(Y(i), Zd(j))
        return None

    def pp(i, j):
        r = pp_raw(i, j)
        return -pp_raw(j, i) if r is None else r

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                lam[i - 1][j - 1] = zz(i, j)
                lam[n + i - 1][n + j - 1] = pp(i, j)
            lam[i - 1][n + j - 1] = zp(i, j)
            lam[n + j - 1][i - 1] = -zp(i, j)
    return tuple(tuple(r) for r in lam)


def base_quantum_seed(ctx: Context) -> QuantumSeed:
    lam = lambda_matrix(ctx)
    m = 2 * ctx.n
    frame = tuple({tuple(1 if t == a else 0 for t in range(m)): ONE} for a in range(m))
    return QuantumSeed(ctx.n, base_exchange_matrix(ctx.n), lam, lam, frame)


def torus_to_algebra(ctx: Context, qs: QuantumSeed, x: dict):
    """Substitute the base cluster elements into a torus element with
    nonnegative exponents and straighten."""
    from .pbw import algebra
    alg = algebra(ctx)
    gens = base_cluster_elements(ctx)
    lam = qs.base_lam
    out = alg.one().scale(0)
    powers: dict = {}
    for e, c in sorted(x.items()):
        if min(e) < 0:
            raise ValueError("torus element has negative exponents")
        twice = 0
        for a in range(len(e)):
            for b in range(a + 1, len(e)):
                twice -= e[a] * e[b] * lam[a][b]
        term = alg.one().scale(c * vhalf(twice))
        for a, k in enumerate(e):
            if k:
                if (a, k) not in powers:
                    p = alg.one()
                    for _ in range(k):
                        p = p * gens[a]
                    powers[(a, k)] = p
                term = term * powers[(a, k)]
        out = out + term
    return out


def verify_quantum_chain(ctx: Context, i: int, j: int) -> list:
    """Mutate the base quantum seed at i, ..., j and compare the new variable with
    v^((s,s)/4) Δ_v(i,j) after clearing its denominator.  Returns (check, passed)."""
    from .dcb import delta_v
    if not 1 <= i <= j <= ctx.n:
        raise ValueError(f"need 1 <= i <= j <= {ctx.n}")
    report = []
    qs = base_quantum_seed(ctx)
    report.append(("compatible", check_compatible(qs.B, qs.lam) is not None))
    for k in range(i, j + 1):
        qs = quantum_mutate(qs, k)
        report.append((f"compatible after mu{k}", check_compatible(qs.B, qs.lam) is not None))
    x = qs.frame[j - 1]
    m = 2 * ctx.n
    integral = all(isinstance(c, HalfLaurent) for c in x.values())
    report.append(("integral coefficients", integral))
    shift = [max(0, -min(e[a] for e in x)) for a in range(m)]
    if any(shift[ctx.n:]):
        report.append(("denominator only in z", False))
    den = {tuple(shift): ONE}
    cleared = torus_mul(qs.base_lam, x, den)
    lhs = torus_to_algebra(ctx, qs, cleared)
    s = interval_sums(ctx, i, j)[0]
    q = cartan_form(s, s)
    if q % 2:
        report.append(("(s,s)/4 on the half grid", False))
        return report
    target = delta_v(ctx, i, j).scale(vhalf(q // 2))
    rhs = target * torus_to_algebra(ctx, qs, den)
    report.append(("equals scaled delta", lhs == rhs))
    return report


def frame_consistency(qs: QuantumSeed) -> bool:
    """Current frame variables quasi-commute with the current Lambda."""
    m = len(qs.lam)
    for a in range(m):
        for b in range(a + 1, m):
            lhs = torus_mul(qs.base_lam, qs.frame[a], qs.frame[b])
            rhs = torus_mul(qs.base_lam, qs.frame[b], qs.frame[a])
            sh = vhalf(2 * qs.lam[a][b])
            if lhs != {e: c * sh for e, c in rhs.items()}:
                return False
    return True
