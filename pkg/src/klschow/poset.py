"""Finite posets, weak rank functions and the combinators used throughout.

Elements are the integers ``0..n-1`` and their numbering is always a linear
extension, so an interval listed in increasing index order is automatically
sorted bottom-up.  :func:`build` renumbers its input if necessary and keeps
the caller's labels.
"""
from __future__ import annotations

import heapq
import itertools
import json
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class PosetError(ValueError):
    pass


class NotGradedError(PosetError):
    def __init__(self, msg: str, chains: Tuple[list, list]):
        super().__init__(msg)
        self.chains = chains


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Poset:
    """Immutable finite poset on ``range(n)`` with index order a linear extension."""

    def __init__(self, n: int, covers: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        # covers[i] = elements covering i, all with index > i
        self.n = n
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.up_covers = [sorted(set(c)) for c in covers]
        self.down_covers: List[List[int]] = [[] for _ in range(n)]
        for i, cs in enumerate(self.up_covers):
            for j in cs:
                if j <= i:
                    raise PosetError("cover list is not compatible with index order")
                self.down_covers[j].append(i)
        down = [0] * n
        for j in range(n):
            m = 1 << j
            for i in self.down_covers[j]:
                m |= down[i]
            down[j] = m
        up = [0] * n
        for i in range(n - 1, -1, -1):
            m = 1 << i
            for j in self.up_covers[i]:
                m |= up[j]
            up[i] = m
        self.down = down
        self.up = up
        self._intervals: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        self._lock = threading.Lock()
        # index in the caller's numbering, set by build()
        self.origin = list(range(n))

    # relations -------------------------------------------------------
    def leq(self, s: int, t: int) -> bool:
        return (self.up[s] >> t) & 1 == 1

    def lt(self, s: int, t: int) -> bool:
        return s != t and self.leq(s, t)

    def interval(self, s: int, t: int) -> Tuple[int, ...]:
        """Sorted elements w with s <= w <= t (empty if s is not below t)."""
        key = (s, t)
        got = self._intervals.get(key)
        if got is None:
            got = tuple(_bits(self.up[s] & self.down[t]))
            with self._lock:
                self._intervals.setdefault(key, got)
        return got

    def upset(self, s: int) -> List[int]:
        return _bits(self.up[s])

    def downset(self, t: int) -> List[int]:
        return _bits(self.down[t])

    def pairs(self) -> List[Tuple[int, int]]:
        """All comparable pairs (s, t), s <= t."""
        return [(s, t) for s in range(self.n) for t in _bits(self.up[s])]

    def covers(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.up_covers[i]]

    def minimal(self) -> List[int]:
        return [i for i in range(self.n) if not self.down_covers[i]]

    def maximal(self) -> List[int]:
        return [i for i in range(self.n) if not self.up_covers[i]]

    @property
    def bottom(self) -> Optional[int]:
        m = self.minimal()
        return m[0] if len(m) == 1 else None

    @property
    def top(self) -> Optional[int]:
        m = self.maximal()
        return m[0] if len(m) == 1 else None

    def is_bounded(self) -> bool:
        return self.n > 0 and self.bottom is not None and self.top is not None

    def require_bounded(self) -> Tuple[int, int]:
        if not self.is_bounded():
            raise PosetError("poset is not bounded")
        return self.bottom, self.top

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={len(self.covers())})"

    # sub-structures ----------------------------------------------------
    def subposet(self, elems: Iterable[int]) -> Tuple["Poset", List[int]]:
        """Induced subposet; returns it and the list new index -> old index."""
        keep = sorted(set(elems))
        mask = 0
        for e in keep:
            mask |= 1 << e
        pos = {e: k for k, e in enumerate(keep)}
        covers = []
        for e in keep:
            strict_up = self.up[e] & mask & ~(1 << e)
            cs = []
            for f in _bits(strict_up):
                # f covers e in the subposet if nothing of the subposet lies strictly between
                between = strict_up & self.down[f] & ~(1 << f)
                if not between:
                    cs.append(pos[f])
            covers.append(cs)
        return Poset(len(keep), covers, [self.labels[e] for e in keep]), keep

    def interval_poset(self, s: int, t: int) -> Tuple["Poset", List[int]]:
        return self.subposet(self.interval(s, t))

    def relabeled(self, labels: Sequence[str]) -> "Poset":
        return Poset(self.n, self.up_covers, labels)

    def resolve(self, token) -> int:
        """Element named by a label, or by its index in the caller's numbering."""
        tok = str(token)
        if tok in self.labels:
            return self.labels.index(tok)
        try:
            i = int(tok)
        except ValueError:
            raise PosetError(f"no element named {tok!r}") from None
        if i in self.origin:
            return self.origin.index(i)
        raise PosetError(f"element index {i} out of range")

    # serialization -----------------------------------------------------
    def to_json(self, rank: Optional[Sequence[int]] = None) -> dict:
        d = {"elements": list(self.labels), "covers": [list(c) for c in self.covers()]}
        if rank is not None:
            d["rank"] = list(rank)
        return d

    def canonical_json(self) -> str:
        return json.dumps({"n": self.n, "covers": self.covers()}, separators=(",", ":"))


def build(n: Optional[int] = None, covers: Iterable[Sequence[int]] = (), labels: Optional[Sequence[str]] = None,
          leq: Optional[Sequence[Sequence[bool]]] = None) -> Poset:
    """Build a poset from a cover (or any generating) relation or a full leq matrix.

    Elements are renumbered along a linear extension when needed; the labels
    follow their elements.  Raises PosetError on cycles or a bad relation.
    """
    if leq is not None:
        n = len(leq)
        for i in range(n):
            if not leq[i][i]:
                raise PosetError(f"relation is not reflexive at {i}")
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise PosetError(f"antisymmetry violated by {i},{j}")
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            raise PosetError(f"transitivity violated by {i},{j},{k}")
        edges = [(i, j) for i in range(n) for j in range(n) if i != j and leq[i][j]]
    else:
        edges = [(int(a), int(b)) for a, b in covers]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise PosetError("label count does not match element count")
    for a, b in edges:
        if a == b:
            raise PosetError(f"cycle detected at element {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise PosetError(f"edge {a},{b} out of range")
    succ0: List[set] = [set() for _ in range(n)]
    indeg = [0] * n
    for a, b in set(edges):
        succ0[a].add(b)
        indeg[b] += 1
    # deterministic linear extension, smallest index first
    heap = [i for i in range(n) if not indeg[i]]
    heapq.heapify(heap)
    order = []
    while heap:
        i = heapq.heappop(heap)
        order.append(i)
        for j in succ0[i]:
            indeg[j] -= 1
            if not indeg[j]:
                heapq.heappush(heap, j)
    if len(order) < n:
        stuck = sorted(set(range(n)) - set(order))
        raise PosetError(f"cycle detected among elements {stuck}")
    pos = {e: k for k, e in enumerate(order)}
    succ: List[set] = [set() for _ in range(n)]
    for a, b in edges:
        succ[pos[a]].add(pos[b])
    # transitive reduction on the renumbered relation
    raw = Poset(n, [sorted(s) for s in succ])
    covers_red = []
    for i in range(n):
        strict = raw.up[i] & ~(1 << i)
        cs = []
        for j in _bits(strict):
            if not (strict & raw.down[j] & ~(1 << j)):
                cs.append(j)
        covers_red.append(cs)
    P = Poset(n, covers_red, [labels[e] for e in order])
    P.origin = order
    return P


# ----------------------------------------------------------------------
# rank functions


class RankFn:
    """Weak rank function given by a potential: rho(s, t) = r[t] - r[s].

    On a bounded poset every weak rank function has this form, with
    r[w] = rho(0, w).
    """

    __slots__ = ("r",)

    def __init__(self, potential: Sequence[int]):
        self.r = tuple(int(v) for v in potential)

    def __call__(self, s: int, t: int) -> int:
        return self.r[t] - self.r[s]

    def __eq__(self, other) -> bool:
        return isinstance(other, RankFn) and self.r == other.r

    def __hash__(self) -> int:
        return hash(self.r)

    def __repr__(self) -> str:
        return f"RankFn({list(self.r)})"

    def restrict(self, elems: Sequence[int]) -> "RankFn":
        base = self.r[elems[0]] if elems else 0
        return RankFn([self.r[e] - base for e in elems])

    @staticmethod
    def checked(P: Poset, potential: Sequence[int]) -> "RankFn":
        if len(potential) != P.n:
            raise PosetError("rank vector length mismatch")
        for i, j in P.covers():
            if potential[j] <= potential[i]:
                raise PosetError(f"rank does not increase along cover {i}<{j}")
        return RankFn(potential)


def graded_rank(P: Poset) -> RankFn:
    """The rank function of a bounded graded poset (rho(0) = 0)."""
    if not P.is_bounded():
        raise PosetError("poset is not bounded")
    longest = [0] * P.n
    via = [None] * P.n
    for j in range(P.n):
        for i in P.down_covers[j]:
            if longest[i] + 1 > longest[j]:
                longest[j] = longest[i] + 1
                via[j] = i
    for i, j in P.covers():
        if longest[j] != longest[i] + 1:
            def chain_to(w):
                ch = [w]
                while via[ch[-1]] is not None:
                    ch.append(via[ch[-1]])
                return ch[::-1]
            short = chain_to(i) + [j]
            raise NotGradedError(
                f"not graded: saturated chains of lengths {len(short) - 1} and {longest[j]} to {P.labels[j]}",
                (short, chain_to(j)),
            )
    return RankFn(longest)


def rank_of(P: Poset, rho: Optional[RankFn] = None) -> int:
    rho = rho or graded_rank(P)
    b, t = P.require_bounded()
    return rho(b, t)


def mobius(P: Poset) -> Dict[Tuple[int, int], int]:
    mu: Dict[Tuple[int, int], int] = {}
    for s in range(P.n):
        ups = P.upset(s)
        for t in ups:
            if t == s:
                mu[(s, s)] = 1
                continue
            acc = 0
            for w in P.interval(s, t):
                if w != t:
                    acc += mu[(s, w)]
            mu[(s, t)] = -acc
    return mu


def is_eulerian(P: Poset, rho: Optional[RankFn] = None) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Mobius test: mu(s,t) = (-1)^rho(s,t) on every interval."""
    rho = rho or graded_rank(P)
    mu = mobius(P)
    for (s, t), m in sorted(mu.items(), key=lambda kv: (rho(*kv[0]), kv[0])):
        if m != (-1) ** rho(s, t):
            return False, (s, t)
    return True, None


def is_eulerian_parity(P: Poset, rho: Optional[RankFn] = None) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Second test: each interval of positive length has as many elements of
    odd rank as of even rank."""
    rho = rho or graded_rank(P)
    for s, t in sorted(P.pairs(), key=lambda p: (rho(*p), p)):
        if s == t:
            continue
        odd = sum(1 for w in P.interval(s, t) if rho(s, w) % 2)
        if 2 * odd != len(P.interval(s, t)):
            return False, (s, t)
    return True, None


# ----------------------------------------------------------------------
# constructors


def chain(n: int) -> Poset:
    """Chain with n elements (rank n-1)."""
    return Poset(n, [[i + 1] if i + 1 < n else [] for i in range(n)])


def _subset_label(mask: int, base: int = 1) -> str:
    return "{" + ",".join(str(i + base) for i in _bits(mask)) + "}"


def boolean(k: int) -> Poset:
    """Boolean lattice of subsets of a k-set.  Subset masks sorted by size
    then value give a linear extension."""
    masks = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))
    pos = {m: i for i, m in enumerate(masks)}
    covers = [[pos[m | (1 << b)] for b in range(k) if not m >> b & 1] for m in masks]
    return Poset(len(masks), covers, [_subset_label(m) for m in masks])


def dual(P: Poset) -> Poset:
    n = P.n
    covers = [[n - 1 - i for i in P.down_covers[n - 1 - j]] for j in range(n)]
    return Poset(n, covers, [P.labels[n - 1 - j] for j in range(n)])


def ordinal_sum(P: Poset, Q: Poset) -> Poset:
    n = P.n + Q.n
    covers: List[List[int]] = [list(c) for c in P.up_covers] + [[j + P.n for j in c] for c in Q.up_covers]
    for a in P.maximal():
        covers[a].extend(b + P.n for b in Q.minimal())
    return Poset(n, covers, list(P.labels) + list(Q.labels))


def join(P: Poset, Q: Poset) -> Poset:
    """P * Q: P with Q minus its bottom stacked on top (both bounded)."""
    P.require_bounded()
    b, _ = Q.require_bounded()
    rest, _ = Q.subposet([w for w in range(Q.n) if w != b])
    return ordinal_sum(P, rest)


def augment(P: Poset) -> Poset:
    """Add a new minimum; isomorphic to join(chain(2), P)."""
    return ordinal_sum(Poset(1, [[]], ["^0"]), P)


def truncate(P: Poset) -> Poset:
    """Remove the coatoms of a bounded poset."""
    _, t = P.require_bounded()
    coatoms = set(P.down_covers[t])
    sub, _ = P.subposet([w for w in range(P.n) if w not in coatoms])
    return sub


def simplex_face_lattice(d: int) -> Poset:
    """Face lattice of the d-simplex, empty face included (= B_{d+1})."""
    return boolean(d + 1)


def _from_faces(faces: List, leq, label) -> Poset:
    idx = {f: i for i, f in enumerate(faces)}
    n = len(faces)
    edges = [(idx[a], idx[b]) for a in faces for b in faces if a != b and leq(a, b)]
    return build(n, edges, [label(f) for f in faces])


def cube_face_lattice(d: int) -> Poset:
    """Faces of [0,1]^d as words over {0,1,*}, plus the empty face."""
    words = ["".join(w) for w in itertools.product("01*", repeat=d)]
    words.sort(key=lambda w: (w.count("*"), w))
    faces = [None] + words

    def leq(a, b):
        if a is None:
            return True
        if b is None:
            return False
        return all(y == "*" or x == y for x, y in zip(a, b))

    return _from_faces(faces, leq, lambda f: "{}" if f is None else f)


def crosspolytope_face_lattice(d: int) -> Poset:
    """Faces of the d-dimensional cross-polytope: antipode-free subsets of
    {+e_i, -e_i}, plus the whole polytope."""
    faces = []
    for signs in itertools.product((0, 1, -1), repeat=d):
        faces.append(signs)
    faces.sort(key=lambda f: (sum(1 for v in f if v), f))
    faces.append("top")

    def leq(a, b):
        if b == "top":
            return True
        if a == "top":
            return False
        return all(x == 0 or x == y for x, y in zip(a, b))

    def label(f):
        if f == "top":
            return "P"
        return "{" + ",".join(("+" if v > 0 else "-") + str(i + 1) for i, v in enumerate(f) if v) + "}"

    return _from_faces(faces, leq, label)


def polygon_face_lattice(m: int) -> Poset:
    """Face lattice of an m-gon."""
    labels = ["{}"] + [f"v{i}" for i in range(m)] + [f"e{i}" for i in range(m)] + ["P"]
    covers: List[List[int]] = [[] for _ in range(2 * m + 2)]
    covers[0] = list(range(1, m + 1))
    for i in range(m):
        covers[1 + i] = [1 + m + i, 1 + m + (i - 1) % m]
        covers[1 + m + i] = [2 * m + 1]
    return Poset(2 * m + 2, covers, labels)


def product(P: Poset, Q: Poset) -> Poset:
    """Cartesian product (componentwise order)."""
    pairs = [(a, b) for a in range(P.n) for b in range(Q.n)]
    pairs.sort(key=lambda ab: (ab[0] + ab[1], ab))
    idx = {ab: i for i, ab in enumerate(pairs)}
    edges = []
    for a, b in pairs:
        for a2 in P.up_covers[a]:
            edges.append((idx[(a, b)], idx[(a2, b)]))
        for b2 in Q.up_covers[b]:
            edges.append((idx[(a, b)], idx[(a, b2)]))
    return build(len(pairs), edges, [f"({P.labels[a]},{Q.labels[b]})" for a, b in pairs])


def diamond_product(P: Poset, Q: Poset) -> Poset:
    """Face lattice of the product polytope: (P - 0) x (Q - 0) with a new bottom."""
    bp, _ = P.require_bounded()
    bq, _ = Q.require_bounded()
    Pm, kp = P.subposet([w for w in range(P.n) if w != bp])
    Qm, kq = Q.subposet([w for w in range(Q.n) if w != bq])
    return augment(product(Pm, Qm))


def pyramid(P: Poset) -> Poset:
    return product(P, boolean(1))


def prism(P: Poset) -> Poset:
    return diamond_product(P, boolean(2))


# ----------------------------------------------------------------------
# flag vectors and chains


@dataclass(frozen=True)
class FlagVector:
    """alpha and beta indexed by subsets S of {1..r-1} (sorted tuples)."""

    r: int
    alpha: Dict[Tuple[int, ...], int]
    beta: Dict[Tuple[int, ...], int]


def _elements_by_rank(P: Poset, rho: RankFn) -> Dict[int, List[int]]:
    b, _ = P.require_bounded()
    levels: Dict[int, List[int]] = {}
    for w in range(P.n):
        levels.setdefault(rho(b, w), []).append(w)
    return levels


def flag_vectors(P: Poset, rho: Optional[RankFn] = None) -> FlagVector:
    rho = rho or graded_rank(P)
    b, t = P.require_bounded()
    r = rho(b, t)
    levels = _elements_by_rank(P, rho)
    alpha: Dict[Tuple[int, ...], int] = {}
    for size in range(r):
        for S in itertools.combinations(range(1, r), size):
            counts = {b: 1}
            for k in S:
                counts = {w: sum(c for v, c in counts.items() if P.leq(v, w)) for w in levels.get(k, [])}
            alpha[S] = sum(counts.values())
    beta: Dict[Tuple[int, ...], int] = {}
    for S in alpha:
        acc = 0
        for size in range(len(S) + 1):
            for T in itertools.combinations(S, size):
                acc += (-1) ** (len(S) - size) * alpha[T]
        beta[S] = acc
    return FlagVector(r, alpha, beta)


def chain_counts(P: Poset) -> List[int]:
    """c[k] = number of k-element chains in the proper part of a bounded P
    (c[0] = 1 for the empty chain), by direct dynamic programming."""
    b, t = P.require_bounded()
    proper = [w for w in range(P.n) if w not in (b, t)]
    # ending[w][k] = chains of size k with top element w
    ending: Dict[int, List[int]] = {}
    for w in proper:
        row = [0, 1]
        for v in proper:
            if v < w and P.leq(v, w):
                prev = ending[v]
                if len(prev) + 1 > len(row):
                    row.extend([0] * (len(prev) + 1 - len(row)))
                for k in range(1, len(prev)):
                    row[k + 1] += prev[k]
        ending[w] = row
    total = [1]
    for row in ending.values():
        if len(row) > len(total):
            total.extend([0] * (len(row) - len(total)))
        for k in range(1, len(row)):
            total[k] += row[k]
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return total


def order_complex_h(P: Poset, rho: Optional[RankFn] = None):
    """h-polynomial of the order complex of the proper part: h_i is the sum
    of beta(S) over |S| = i."""
    from .poly import Poly

    fv = flag_vectors(P, rho)
    h = [0] * fv.r
    for S, v in fv.beta.items():
        h[len(S)] += v
    return Poly(h)


def multichain_count(P: Poset, n: int) -> int:
    """zeta^n at (bottom, top): multichains bottom <= t1 <= ... <= t_{n-1} <= top."""
    if n < 0:
        raise ValueError("n must be non-negative")
    b, t = P.require_bounded()
    if n == 0:
        return 1 if b == t else 0
    v = [0] * P.n
    v[b] = 1
    for _ in range(n - 1):
        v = [sum(v[u] for u in P.downset(w)) for w in range(P.n)]
    return sum(v[u] for u in P.downset(t))


# ----------------------------------------------------------------------
# JSON


def from_json(data: dict) -> Tuple[Poset, Optional[RankFn]]:
    """Read the poset JSON format.  Returns the poset (renumbered along a
    linear extension) and an explicit RankFn when a rank vector is given."""
    labels = [str(x) for x in data["elements"]]
    P = build(len(labels), data.get("covers", []), labels)
    rho = None
    if data.get("rank") is not None:
        rank = data["rank"]
        rho = RankFn.checked(P, [rank[o] for o in P.origin])
    return P, rho


def load(path) -> Tuple[Poset, Optional[RankFn]]:
    with open(path) as fh:
        return from_json(json.load(fh))
