"""Bruhat intervals in S_n and I2(m): Bruhat order and graph, R-polynomials,
reflection orders, and the path formulas for the Chow polynomial.

Group elements are permutations stored as tuples of images, multiplied as
functions: (u*v)[i] = u[v[i]].  Right multiplication by a simple reflection
of S_n therefore swaps two adjacent entries of the one-line notation.
Internally elements are referred to by integer ids in order of length.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .incidence import IncElem, chow_column
from .poly import ONE, ZERO, Poly, X, X_MINUS_1
from .poset import Poset, RankFn


class CoxeterError(ValueError):
    pass


def _compose(u: tuple, v: tuple) -> tuple:
    return tuple(u[i] for i in v)


def _inverse(u: tuple) -> tuple:
    out = [0] * len(u)
    for i, ui in enumerate(u):
        out[ui] = i
    return tuple(out)


class CoxeterGroup:
    """A finite Coxeter group given by permutation generators."""

    def __init__(self, name: str, gens: Sequence[tuple], degree: Optional[int] = None):
        self.name = name
        self.gens = [tuple(g) for g in gens]
        k = len(gens)
        ident = tuple(range(degree if degree is not None else len(gens[0])))
        # breadth-first search in generator order yields lex-least reduced words
        self.elements: List[tuple] = [ident]
        self.words: List[Tuple[int, ...]] = [()]
        self.length: List[int] = [0]
        self.index: Dict[tuple, int] = {ident: 0}
        head = 0
        while head < len(self.elements):
            w = self.elements[head]
            for i, s in enumerate(self.gens):
                ws = _compose(w, s)
                if ws not in self.index:
                    self.index[ws] = len(self.elements)
                    self.elements.append(ws)
                    self.words.append(self.words[head] + (i + 1,))
                    self.length.append(self.length[head] + 1)
            head += 1
        N = len(self.elements)
        self.right = [[self.index[_compose(w, s)] for s in self.gens] for w in self.elements]
        self.left = [[self.index[_compose(s, w)] for s in self.gens] for w in self.elements]
        self.inv = [self.index[_inverse(w)] for w in self.elements]
        self._mul_cache: Dict[Tuple[int, int], int] = {}
        refl = set()
        for w in range(N):
            for s in range(k):
                refl.add(self.mul(self.mul(w, self.index[self.gens[s]]), self.inv[w]))
        self.reflections = sorted(refl, key=lambda t: (self.length[t], t))
        self._edges_up: Optional[List[List[Tuple[int, int]]]] = None
        self._down: Optional[List[int]] = None
        self._R: Dict[Tuple[int, int], Poly] = {}

    # basics ---------------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.name}, order={len(self)})"

    @property
    def rank(self) -> int:
        return len(self.gens)

    @property
    def identity(self) -> int:
        return 0

    @property
    def longest(self) -> int:
        return max(range(len(self)), key=lambda w: self.length[w])

    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        got = self._mul_cache.get(key)
        if got is None:
            got = self.index[_compose(self.elements[a], self.elements[b])]
            self._mul_cache[key] = got
        return got

    def from_word(self, word) -> int:
        """Element from a word of 1-based generator indices ("1 2 1", [1,2,1],
        "" = e, "w0" = the longest element)."""
        if isinstance(word, str):
            text = word.strip()
            if text == "w0":
                return self.longest
            word = [] if text in ("", "e", "id") else [int(a) for a in text.replace(",", " ").replace("s", " ").split()]
        w = 0
        for i in word:
            if not 1 <= i <= self.rank:
                raise CoxeterError(f"generator index {i} out of range for {self.name}")
            w = self.right[w][i - 1]
        return w

    def word_str(self, w: int) -> str:
        return "".join(f"s{i}" for i in self.words[w]) or "e"

    def right_descents(self, w: int) -> List[int]:
        return [i for i in range(self.rank) if self.length[self.right[w][i]] < self.length[w]]

    # Bruhat order -----------------------------------------------------
    def edges_up(self) -> List[List[Tuple[int, int]]]:
        """edges_up[u] = [(v, t)] with v = u t, t a reflection, l(v) > l(u)."""
        if self._edges_up is None:
            out = []
            for u in range(len(self)):
                row = []
                for t in self.reflections:
                    v = self.mul(u, t)
                    if self.length[v] > self.length[u]:
                        row.append((v, t))
                out.append(row)
            self._edges_up = out
        return self._edges_up

    def down_sets(self) -> List[int]:
        """Bitmask of the Bruhat lower interval of every element."""
        if self._down is None:
            ups = self.edges_up()
            down = [1 << w for w in range(len(self))]
            for u in sorted(range(len(self)), key=lambda w: self.length[w]):
                for v, _ in ups[u]:
                    down[v] |= down[u]
            self._down = down
        return self._down

    def leq(self, u: int, v: int) -> bool:
        return bool(self.down_sets()[v] >> u & 1)

    # R-polynomials ----------------------------------------------------
    def R(self, u: int, v: int) -> Poly:
        """R_{u,v} by the descent recursion (0 unless u <= v)."""
        key = (u, v)
        got = self._R.get(key)
        if got is not None:
            return got
        if not self.leq(u, v):
            got = ZERO
        elif u == v:
            got = ONE
        else:
            stack = [key]
            # iterative evaluation to keep recursion depth flat
            while stack:
                a, b = stack[-1]
                if (a, b) in self._R:
                    stack.pop()
                    continue
                if not self.leq(a, b):
                    self._R[(a, b)] = ZERO
                    stack.pop()
                    continue
                if a == b:
                    self._R[(a, b)] = ONE
                    stack.pop()
                    continue
                s = self.right_descents(b)[0]
                bs = self.right[b][s]
                as_ = self.right[a][s]
                if self.length[as_] < self.length[a]:
                    need = [(as_, bs)]
                else:
                    need = [(as_, bs), (a, bs)]
                missing = [p for p in need if p not in self._R]
                if missing:
                    stack.extend(missing)
                    continue
                if len(need) == 1:
                    self._R[(a, b)] = self._R[need[0]]
                else:
                    self._R[(a, b)] = X * self._R[need[0]] + X_MINUS_1 * self._R[need[1]]
                stack.pop()
            got = self._R[key]
        self._R[key] = got
        return got


def symmetric_group(n: int) -> CoxeterGroup:
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    return CoxeterGroup(f"S{n}", gens, degree=n)


def dihedral_group(m: int) -> CoxeterGroup:
    """I2(m) acting on the vertices of an m-gon (two commuting swaps for m = 2)."""
    if m < 2:
        raise CoxeterError("I2(m) needs m >= 2")
    if m == 2:
        return CoxeterGroup("I2(2)", [(1, 0, 2, 3), (0, 1, 3, 2)])
    s = tuple((-i) % m for i in range(m))
    t = tuple((1 - i) % m for i in range(m))
    return CoxeterGroup(f"I2({m})", [s, t])


def group_from_name(name: str) -> CoxeterGroup:
    name = name.strip()
    if name.upper().startswith("I2:"):
        return dihedral_group(int(name[3:]))
    if name.upper().startswith("I2(") and name.endswith(")"):
        return dihedral_group(int(name[3:-1]))
    if name.upper().startswith("S"):
        return symmetric_group(int(name[1:]))
    raise CoxeterError(f"unknown group {name!r}; use Sn or I2:m")


def tableau_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Bruhat order on permutations in one-line notation (tableau criterion)."""
    n = len(u)
    for i in range(1, n):
        a = sorted(u[:i])
        b = sorted(v[:i])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


# ----------------------------------------------------------------------
# intervals


class BruhatInterval:
    """[u, v] as a poset together with its Bruhat graph."""

    def __init__(self, G: CoxeterGroup, u: int, v: int):
        if not G.leq(u, v):
            raise CoxeterError(f"{G.word_str(u)} is not below {G.word_str(v)} in Bruhat order")
        self.G, self.u, self.v = G, u, v
        down = G.down_sets()
        members = [w for w in range(len(G)) if down[v] >> w & 1 and down[w] >> u & 1]
        members.sort(key=lambda w: (G.length[w], w))
        self.ids = members
        self.pos = {w: i for i, w in enumerate(members)}
        ups = G.edges_up()
        self.edges: List[List[Tuple[int, int]]] = []
        covers = []
        for w in members:
            row = [(self.pos[x], t) for x, t in ups[w] if x in self.pos]
            self.edges.append(row)
            covers.append([j for j, _ in row if G.length[members[j]] == G.length[w] + 1])
        self.poset = Poset(len(members), covers, [G.word_str(w) for w in members])
        self.rho = RankFn([G.length[w] - G.length[u] for w in members])

    @property
    def rank(self) -> int:
        return self.G.length[self.v] - self.G.length[self.u]

    def r_polynomials(self) -> IncElem:
        G, ids = self.G, self.ids
        return IncElem.from_function(self.poset, self.rho, lambda a, b: G.R(ids[a], ids[b]))


def bruhat_interval(G: CoxeterGroup, u, v) -> BruhatInterval:
    if not isinstance(u, int):
        u = G.from_word(u)
    if not isinstance(v, int):
        v = G.from_word(v)
    return BruhatInterval(G, u, v)


def r_polynomials(G: CoxeterGroup, u, v) -> IncElem:
    return bruhat_interval(G, u, v).r_polynomials()


def r_tilde(G: CoxeterGroup, u: int, v: int) -> Poly:
    """R~ with R(x) = x^(rho/2) R~(x^(1/2) - x^(-1/2)).

    The term c_k q^k of R~ contributes c_k x^((rho-k)/2) (x-1)^k, whose top
    degree (rho+k)/2 is distinct for distinct k; peel those off from the top.
    """
    R = G.R(u, v)
    rho = G.length[v] - G.length[u]
    if not R:
        return ZERO
    res = R
    coeffs: Dict[int, int] = {}
    while res:
        D = res.degree
        k = 2 * D - rho
        if k < 0 or (rho - k) % 2:
            raise CoxeterError(f"R-polynomial {R} has no R~ form for rank {rho}")
        a = res.c[-1]
        coeffs[k] = a
        res = res - (X_MINUS_1 ** k).shift((rho - k) // 2) * a
    out = Poly([coeffs.get(i, 0) for i in range(max(coeffs) + 1)])
    if substitute_r_tilde(out, rho) != R:
        raise CoxeterError("R~ substitution does not recover R")
    return out


def substitute_r_tilde(Rt: Poly, rho: int) -> Poly:
    """x^(rho/2) R~(x^(1/2) - x^(-1/2)), computed in y = x^(1/2)."""
    # Laurent polynomial in y as {exponent: coeff}
    acc: Dict[int, int] = defaultdict(int)
    base = {1: 1, -1: -1}
    power = {0: 1}
    for k, c in enumerate(Rt.c):
        if c:
            for e, a in power.items():
                acc[e + rho] += c * a
        nxt: Dict[int, int] = defaultdict(int)
        for e, a in power.items():
            for e2, b in base.items():
                nxt[e + e2] += a * b
        power = {e: a for e, a in nxt.items() if a}
    acc = {e: a for e, a in acc.items() if a}
    if any(e % 2 or e < 0 for e in acc):
        raise CoxeterError("half-integer or negative exponent left after substitution")
    return Poly([acc.get(2 * i, 0) for i in range(max(acc, default=-2) // 2 + 1)])


# ----------------------------------------------------------------------
# reflection orders and paths


class ReflectionOrder:
    """Total order on the reflections of a group."""

    def __init__(self, G: CoxeterGroup, sequence: Sequence[int]):
        if sorted(sequence) != sorted(G.reflections):
            raise CoxeterError("a reflection order must list every reflection exactly once")
        self.G = G
        self.sequence = list(sequence)
        self.pos = {t: i for i, t in enumerate(sequence)}

    def __repr__(self) -> str:
        return "ReflectionOrder(" + " < ".join(self.G.word_str(t) for t in self.sequence) + ")"


def reflection_order(G: CoxeterGroup, word: Optional[Sequence[int]] = None) -> ReflectionOrder:
    """Prefix-conjugate order t_k = s_{i1}..s_{i(k-1)} s_{ik} s_{i(k-1)}..s_{i1}
    from a reduced word of the longest element (default: the lex-least one)."""
    w0 = G.longest
    word = list(word) if word is not None else list(G.words[w0])
    if G.from_word(word) != w0 or len(word) != G.length[w0]:
        raise CoxeterError("word is not a reduced word of the longest element")
    seq = []
    prefix = 0
    for i in word:
        s = G.from_word([i])
        seq.append(G.mul(G.mul(prefix, s), G.inv[prefix]))
        prefix = G.mul(prefix, s)
    return ReflectionOrder(G, seq)


def reflection_order_from_words(G: CoxeterGroup, words: Iterable) -> ReflectionOrder:
    return ReflectionOrder(G, [G.from_word(w) for w in words])


def _paths_dp(I: BruhatInterval, order: ReflectionOrder, key):
    """Dynamic programme over Bruhat-graph paths from u to v.

    State = (vertex, label of the last edge); each state carries a Counter
    of path statistics.  ``key(stat, descent)`` extends a statistic by one
    edge; the first edge starts from ``key(None, None)``.
    """
    pos = order.pos
    n = len(I.ids)
    states: List[Dict[int, Counter]] = [dict() for _ in range(n)]
    start = key(None, None)
    for j, t in I.edges[0]:
        states[j].setdefault(t, Counter())[start] += 1
    for i in range(n):
        for t_last, cnt in states[i].items():
            for j, t in I.edges[i]:
                desc = pos[t_last] > pos[t]
                tgt = states[j].setdefault(t, Counter())
                for stat, c in cnt.items():
                    tgt[key(stat, desc)] += c
        if i != n - 1:
            states[i] = {}
    total: Counter = Counter()
    for cnt in states[n - 1].values():
        total.update(cnt)
    return total


def path_census(G: CoxeterGroup, u: int, v: int, order: ReflectionOrder) -> Counter:
    """Counter {(length, descents): number of Bruhat-graph paths u -> v}."""
    I = BruhatInterval(G, u, v)
    if u == v:
        return Counter({(0, 0): 1})

    def key(stat, desc):
        if stat is None:
            return (1, 0)
        return (stat[0] + 1, stat[1] + int(desc))

    return _paths_dp(I, order, key)


def path_words(G: CoxeterGroup, u: int, v: int, order: ReflectionOrder) -> Counter:
    """Counter {descent word: count}; letter i is 'b' at a descent, else 'a'.
    A path of length l contributes a word of length l - 1."""
    I = BruhatInterval(G, u, v)
    if u == v:
        return Counter({"": 1})

    def key(stat, desc):
        if stat is None:
            return ""
        return stat + ("b" if desc else "a")

    return _paths_dp(I, order, key)


def paths_dfs(G: CoxeterGroup, u: int, v: int, order: ReflectionOrder) -> List[List[int]]:
    """Every Bruhat-graph path from u to v as a vertex list (small cases only)."""
    I = BruhatInterval(G, u, v)
    out = []
    target = len(I.ids) - 1

    def rec(i, path):
        if i == target:
            out.append([I.ids[j] for j in path])
            return
        for j, _ in I.edges[i]:
            rec(j, path + [j])

    rec(0, [0])
    return out


def path_statistics(G: CoxeterGroup, path: Sequence[int], order: ReflectionOrder) -> Tuple[int, int, str]:
    """(length, descents, descent word) of an explicit path."""
    labels = [G.mul(G.inv[a], b) for a, b in zip(path, path[1:])]
    word = "".join("b" if order.pos[x] > order.pos[y] else "a" for x, y in zip(labels, labels[1:]))
    return len(labels), word.count("b"), word


def chow_from_census(census: Counter, rho: int, variant: str = "des") -> Poly:
    acc: Dict[int, int] = defaultdict(int)
    for (l, des), c in census.items():
        if (rho - l) % 2:
            raise CoxeterError(f"path of length {l} has the wrong parity for rank {rho}")
        stat = des if variant == "des" else max(l - 1, 0) - des
        acc[(rho - l) // 2 + stat] += c
    return Poly([acc.get(i, 0) for i in range(max(acc, default=-1) + 1)])


def chow_by_paths(G: CoxeterGroup, u: int, v: int, order: Optional[ReflectionOrder] = None,
                  variant: str = "des") -> Poly:
    """H_uv = sum over Bruhat-graph paths of x^((rho - l)/2 + des)."""
    order = order or reflection_order(G)
    return chow_from_census(path_census(G, u, v, order), G.length[v] - G.length[u], variant)


def r_tilde_by_paths(G: CoxeterGroup, u: int, v: int, order: Optional[ReflectionOrder] = None) -> Poly:
    """sum of q^l over paths with no descents."""
    order = order or reflection_order(G)
    acc: Dict[int, int] = defaultdict(int)
    for (l, des), c in path_census(G, u, v, order).items():
        if des == 0:
            acc[l] += c
    return Poly([acc.get(i, 0) for i in range(max(acc, default=-1) + 1)])


def chow_by_algebra(G: CoxeterGroup, u: int, v: int) -> Poly:
    """H_uv from the R-kernel, computing only the column ending at v."""
    I = BruhatInterval(G, u, v)
    ids = I.ids
    col = chow_column(I.poset, I.rho, lambda a, b: G.R(ids[a], ids[b]), len(ids) - 1)
    return col[0]


def full_group_chow(n: int, method: str = "algebra") -> Poly:
    """H at [e, w0] of S_n."""
    G = symmetric_group(n)
    if method == "algebra":
        return chow_by_algebra(G, 0, G.longest)
    return chow_by_paths(G, 0, G.longest)


def all_intervals(G: CoxeterGroup, max_rank: Optional[int] = None) -> List[Tuple[int, int]]:
    down = G.down_sets()
    out = []
    for v in range(len(G)):
        for u in range(len(G)):
            if down[v] >> u & 1:
                r = G.length[v] - G.length[u]
                if max_rank is None or r <= max_rank:
                    out.append((u, v))
    return out


def comb_invariance_spotcheck(G: CoxeterGroup, intervals: Optional[Sequence[Tuple[int, int]]] = None,
                              max_rank: Optional[int] = None) -> dict:
    """Group intervals into isomorphism classes of their Hasse diagrams and
    compare Chow polynomials inside each class."""
    import networkx as nx

    intervals = list(intervals) if intervals is not None else all_intervals(G, max_rank)
    buckets: Dict[tuple, List[tuple]] = defaultdict(list)
    for u, v in intervals:
        I = BruhatInterval(G, u, v)
        levels = Counter(I.rho.r)
        inv = (I.rank, len(I.ids), tuple(sorted(levels.items())), len(I.poset.covers()))
        buckets[inv].append((u, v, I))
    classes = 0
    pairs = 0
    mismatches = []
    cache: Dict[Tuple[int, int], Poly] = {}

    def H(u, v):
        if (u, v) not in cache:
            cache[(u, v)] = chow_by_algebra(G, u, v)
        return cache[(u, v)]

    for members in buckets.values():
        reps: List[Tuple[object, int, int]] = []
        for u, v, I in members:
            g = nx.DiGraph()
            g.add_nodes_from(range(I.poset.n))
            g.add_edges_from(I.poset.covers())
            for rg, ru, rv in reps:
                if nx.is_isomorphic(g, rg):
                    pairs += 1
                    if H(u, v) != H(ru, rv):
                        mismatches.append(((ru, rv), (u, v)))
                    break
            else:
                reps.append((g, u, v))
                classes += 1
    return {"intervals": len(intervals), "classes": classes, "isomorphic_pairs": pairs,
            "mismatches": mismatches}
