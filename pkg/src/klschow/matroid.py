"""Matroids, lattices of flats, the Feichtner-Yuzvinsky Hilbert series, and
the characteristic-kernel identities (join, augmentation, Larson, gamma).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .incidence import KernelData
from .kernels import characteristic
from .poly import ONE, ZERO, Poly, gamma_extract, w_poly
from .poset import (Poset, RankFn, augment, flag_vectors, graded_rank, join,
                    mobius, truncate)


class MatroidError(ValueError):
    pass


def _popcount(m: int) -> int:
    return bin(m).count("1")


class Matroid:
    """Matroid on {0..n-1} given by its bases (bitmasks internally)."""

    def __init__(self, n: int, bases: Iterable[Iterable[int]]):
        self.n = n
        masks = set()
        for b in bases:
            m = 0
            for e in b:
                if not 0 <= e < n:
                    raise MatroidError(f"element {e} outside ground set of size {n}")
                m |= 1 << e
            masks.add(m)
        if not masks:
            raise MatroidError("a matroid needs at least one basis")
        sizes = {_popcount(m) for m in masks}
        if len(sizes) != 1:
            raise MatroidError("bases have different sizes")
        self.bases = sorted(masks)
        self.r = sizes.pop()
        self._rank: Dict[int, int] = {}

    def rank(self, A) -> int:
        m = A if isinstance(A, int) else sum(1 << e for e in A)
        got = self._rank.get(m)
        if got is None:
            got = max(_popcount(m & b) for b in self.bases)
            self._rank[m] = got
        return got

    def closure(self, A: int) -> int:
        r = self.rank(A)
        out = A
        for e in range(self.n):
            if not A >> e & 1 and self.rank(A | 1 << e) == r:
                out |= 1 << e
        return out

    def loops(self) -> List[int]:
        return [e for e in range(self.n) if self.rank(1 << e) == 0]

    def flats(self) -> List[int]:
        """All flats as bitmasks, sorted by (rank, mask)."""
        found = {self.closure(0)}
        frontier = list(found)
        while frontier:
            nxt = []
            for F in frontier:
                for e in range(self.n):
                    if not F >> e & 1:
                        G = self.closure(F | 1 << e)
                        if G not in found:
                            found.add(G)
                            nxt.append(G)
            frontier = nxt
        return sorted(found, key=lambda F: (self.rank(F), F))

    def check_axioms(self) -> bool:
        """Rank monotone, submodular and unit-increasing on all subsets."""
        full = 1 << self.n
        for A in range(full):
            rA = self.rank(A)
            for e in range(self.n):
                if not A >> e & 1:
                    d = self.rank(A | 1 << e) - rA
                    if d not in (0, 1):
                        return False
            for B in range(full):
                if self.rank(A | B) + self.rank(A & B) > rA + self.rank(B):
                    return False
        return True

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.r}, bases={len(self.bases)})"


def uniform(k: int, n: int) -> Matroid:
    return Matroid(n, itertools.combinations(range(n), k))


def graphic(edges: Sequence[Sequence[int]]) -> Matroid:
    """Cycle matroid of a multigraph given by an edge list."""
    verts = sorted({v for e in edges for v in e})
    idx = {v: i for i, v in enumerate(verts)}

    def forest_size(sel) -> int:
        parent = list(range(len(verts)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        size = 0
        for j in sel:
            a, b = (find(idx[v]) for v in edges[j])
            if a != b:
                parent[a] = b
                size += 1
        return size

    r = forest_size(range(len(edges)))
    bases = [c for c in itertools.combinations(range(len(edges)), r) if forest_size(c) == r]
    return Matroid(len(edges), bases)


def from_json(data: dict) -> Matroid:
    if "uniform" in data:
        k, n = data["uniform"]
        return uniform(k, n)
    if "graph" in data:
        return graphic(data["graph"])
    return Matroid(data["n"], data["bases"])


def _mask_label(m: int) -> str:
    return "{" + ",".join(str(e) for e in range(m.bit_length()) if m >> e & 1) + "}"


def lattice_of_flats(M: Matroid) -> Tuple[Poset, RankFn]:
    if M.loops():
        raise MatroidError(f"matroid has loops {M.loops()}")
    flats = M.flats()
    covers = []
    for i, F in enumerate(flats):
        rF = M.rank(F)
        covers.append([j for j, G in enumerate(flats) if G != F and G & F == F and M.rank(G) == rF + 1])
    P = Poset(len(flats), covers, [_mask_label(F) for F in flats])
    return P, RankFn([M.rank(F) for F in flats])


def _segment(d: int) -> Poly:
    """x + x^2 + ... + x^(d-1)."""
    return Poly([0] + [1] * (d - 1)) if d >= 2 else ZERO


def _fy_tails(M: Matroid) -> Tuple[List[int], Dict[int, Poly]]:
    """tail[F] = sum over chains F = F0 < F1 < ... of prod segment(rk Fi - rk F(i-1))."""
    flats = M.flats()
    tail: Dict[int, Poly] = {}
    for F in reversed(flats):
        acc = ONE
        rF = M.rank(F)
        for G in flats:
            if G != F and G & F == F:
                seg = _segment(M.rank(G) - rF)
                if seg:
                    acc = acc + seg * tail[G]
        tail[F] = acc
    return flats, tail


def chain_formula(P: Poset, rho: Optional[RankFn] = None) -> Poly:
    """Sum over chains bottom = p0 < p1 < ... < pm <= top of
    prod x(x^(d-1) - 1)/(x - 1), d = rho(p(i-1), p(i)); the chi-Chow
    polynomial of any bounded graded poset."""
    rho = rho or graded_rank(P)
    b, top = P.require_bounded()
    tail: Dict[int, Poly] = {}
    for p in reversed(P.interval(b, top)):
        acc = ONE
        for q in P.upset(p):
            if q != p:
                seg = _segment(rho(p, q))
                if seg:
                    acc = acc + seg * tail[q]
        tail[p] = acc
    return tail[b]


def fy_hilbert(M: Matroid) -> Poly:
    """Hilbert series of the Chow ring from the Feichtner-Yuzvinsky monomial basis."""
    if M.loops():
        raise MatroidError("matroid has loops")
    flats, tail = _fy_tails(M)
    return tail[flats[0]]


def fy_hilbert_augmented(M: Matroid) -> Poly:
    """Same chain count on the augmented lattice: a new bottom of rank -1."""
    if M.loops():
        raise MatroidError("matroid has loops")
    flats, tail = _fy_tails(M)
    acc = ONE
    for F in flats:
        seg = _segment(M.rank(F) + 1)
        if seg:
            acc = acc + seg * tail[F]
    return acc


# ----------------------------------------------------------------------
# characteristic-kernel identities


def chi_data(P: Poset, rho: Optional[RankFn] = None) -> KernelData:
    return KernelData(characteristic(P, rho), check=False)


def chi_chow(P: Poset, rho: Optional[RankFn] = None) -> Poly:
    return chi_data(P, rho).H.top()


def chi_G(P: Poset, rho: Optional[RankFn] = None) -> Poly:
    return chi_data(P, rho).G.top()


def is_good(S: Iterable[int]) -> bool:
    S = set(S)
    return 1 not in S and not any(i + 1 in S for i in S)


def gamma_from_flags(P: Poset, rho: Optional[RankFn] = None) -> Poly:
    """sum over good S of beta(S) x^|S|."""
    fv = flag_vectors(P, rho)
    out: Dict[int, int] = {}
    for S, b in fv.beta.items():
        if is_good(S):
            out[len(S)] = out.get(len(S), 0) + b
    return Poly([out.get(i, 0) for i in range(max(out, default=-1) + 1)])


def gamma_from_alpha(P: Poset, rho: Optional[RankFn] = None) -> Poly:
    """sum over good S = {r1<...<rm} of x^m alpha(S) prod W_{ri - r(i-1) - 2} W_{r - rm - 1}."""
    fv = flag_vectors(P, rho)
    r = fv.r
    out = ZERO
    for S, a in fv.alpha.items():
        if not is_good(S):
            continue
        term = Poly.monomial(len(S), a)
        prev = 0
        for ri in S:
            term = term * w_poly(ri - prev - 2)
            prev = ri
        out = out + term * w_poly(r - prev - 1)
    return out


def _interval_rank(P: Poset, rho: RankFn, s: int, t: int) -> Tuple[Poset, RankFn]:
    sub, keep = P.interval_poset(s, t)
    return sub, rho.restrict(keep)


@dataclass
class ChiReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> List[str]:
        return [k for k, v in self.checks.items() if not v]


def chi_chow_identities(P: Poset, rho: Optional[RankFn] = None,
                        partners: Optional[Sequence[Poset]] = None) -> ChiReport:
    """Evaluate the characteristic-kernel identities on a bounded graded poset."""
    from .poset import boolean, chain

    rho = rho or graded_rank(P)
    b, top = P.require_bounded()
    r = rho(b, top)
    rep = ChiReport()
    d = chi_data(P, rho)
    H, G, F, Z = d.H, d.G, d.F, d.Z
    HP, GP = H[(b, top)], G[(b, top)]
    mu = mobius(P)

    trunc_H: Dict[int, Poly] = {}
    trunc_G: Dict[int, Poly] = {}
    for t in range(P.n):
        if t == b:
            continue
        sub, _ = P.interval_poset(b, t)
        tr = truncate(sub)
        dt = chi_data(tr)
        trunc_H[t] = dt.H.top()
        trunc_G[t] = dt.G.top()

    # Larson
    lhs = ONE + Poly.monomial(1) * sum((trunc_H[t] for t in trunc_H if rho(b, t) > 1), ZERO)
    rep.checks["larson-H"] = lhs == HP
    lhs = ONE + Poly.monomial(1) * sum(trunc_G.values(), ZERO)
    rep.checks["larson-G"] = lhs == GP
    rhs = Z[(b, top)] + Poly.monomial(1) * sum(
        (trunc_H[t] * Z[(t, top)] for t in trunc_H if rho(b, t) > 1), ZERO)
    rep.checks["right-larson"] = rhs == F[(b, top)]

    # truncation convolution, on every interval
    ok = True
    for s, t in P.pairs():
        acc = sum((H[(s, w)] * mu[(w, t)] for w in P.interval(s, t)), ZERO)
        rr = rho(s, t)
        if rr == 0:
            want = ONE
        elif rr == 1:
            want = ZERO
        else:
            sub, keep = P.interval_poset(s, t)
            want = Poly.monomial(1) * chi_chow(truncate(sub))
        if acc != want:
            ok = False
            rep.details["truncation-convolution"] = f"fails on {(s, t)}"
            break
    rep.checks["truncation-convolution"] = ok

    rep.checks["chain-formula"] = chain_formula(P, rho) == HP

    # augmentation
    rep.checks["augment"] = chi_chow(augment(P)) == GP

    # join with partners
    partners = list(partners) if partners is not None else [chain(2), boolean(2), chain(3)]
    for k, Q in enumerate(partners):
        dq = chi_data(Q)
        PQ = join(P, Q)
        dpq = chi_data(PQ)
        rep.checks[f"join-H[{k}]"] = dpq.H.top() == HP * dq.G.top()
        rep.checks[f"join-G[{k}]"] = dpq.G.top() == GP * dq.G.top()

    # gamma formulas
    if r >= 1:
        gam = gamma_extract(HP, r - 1)
        rep.checks["gamma-symmetric"] = gam is not None
        if gam is not None:
            rep.checks["gamma-good-sets"] = gamma_from_flags(P, rho) == gam
            rep.checks["gamma-alpha"] = gamma_from_alpha(P, rho) == gam
            rec = w_poly(r - 1)
            for t in range(P.n):
                if t in (b, top):
                    continue
                gt = gamma_extract(H[(t, top)], rho(t, top) - 1)
                rec = rec + Poly.monomial(1) * w_poly(rho(b, t) - 2) * gt
            rep.checks["gamma-recursion"] = rec == gam
    return rep
