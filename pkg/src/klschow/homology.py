"""Rational reduced homology of order complexes and the Cohen-Macaulay test."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .poset import Poset, RankFn, graded_rank


@dataclass
class ChainComplex:
    """Augmented simplicial chain complex.

    ``faces[k]`` lists the k-dimensional faces as sorted vertex tuples; the
    single (-1)-dimensional face is the empty tuple.
    """

    faces: Dict[int, List[Tuple[int, ...]]]

    @property
    def dim(self) -> int:
        return max(self.faces)

    def boundary(self, k: int) -> List[List[int]]:
        """Matrix of d_k : C_k -> C_{k-1} (rows indexed by (k-1)-faces)."""
        rows = self.faces.get(k - 1, [])
        index = {f: i for i, f in enumerate(rows)}
        cols = self.faces.get(k, [])
        mat = [[0] * len(cols) for _ in rows]
        for j, face in enumerate(cols):
            for i in range(len(face)):
                sub = face[:i] + face[i + 1:]
                mat[index[sub]][j] += (-1) ** i
        return mat

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic from face counts."""
        return sum((-1) ** k * len(fs) for k, fs in self.faces.items())


def simplicial_complex(facets: Sequence[Sequence[int]]) -> ChainComplex:
    faces: Dict[int, set] = {-1: {()}}
    for facet in facets:
        facet = tuple(sorted(facet))
        n = len(facet)
        for mask in range(1, 1 << n):
            f = tuple(facet[i] for i in range(n) if mask >> i & 1)
            faces.setdefault(len(f) - 1, set()).add(f)
    return ChainComplex({k: sorted(v) for k, v in faces.items()})


def order_complex(P: Poset, elems: Optional[Sequence[int]] = None) -> ChainComplex:
    """Order complex of the induced subposet on ``elems`` (default: all of P)."""
    elems = sorted(range(P.n) if elems is None else elems)
    faces: Dict[int, List[Tuple[int, ...]]] = {-1: [()]}
    # extend chains upward; elems are in a linear extension order
    frontier = [(e,) for e in elems]
    k = 0
    while frontier:
        faces[k] = frontier
        nxt = []
        for ch in frontier:
            last = ch[-1]
            for e in elems:
                if e > last and P.leq(last, e):
                    nxt.append(ch + (e,))
        frontier = nxt
        k += 1
    return ChainComplex(faces)


def bareiss_rank(mat: List[List[int]]) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    m = [row[:] for row in mat if any(row)]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, rows):
            a = m[r][c]
            row_r = m[r]
            row_p = m[rank]
            for j in range(c, cols):
                row_r[j] = (p * row_r[j] - a * row_p[j]) // prev
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def reduced_betti(cx: ChainComplex) -> Dict[int, int]:
    """Reduced Betti numbers over Q, keyed by dimension (from -1)."""
    top = cx.dim
    ranks = {k: bareiss_rank(cx.boundary(k)) if cx.faces.get(k) and cx.faces.get(k - 1) else 0
             for k in range(0, top + 2)}
    out = {}
    for k in range(-1, top + 1):
        out[k] = len(cx.faces.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
    return out


@dataclass
class CMResult:
    is_cm: bool
    interval: Optional[Tuple[int, int]] = None
    dimension: Optional[int] = None
    betti: Optional[Dict[int, int]] = None

    def __bool__(self) -> bool:
        return self.is_cm


def is_cohen_macaulay(P: Poset, rho: Optional[RankFn] = None) -> CMResult:
    """Every open interval (s,t) has reduced homology only in degree rho(s,t)-2.

    Intervals of length 1 give the empty complex, whose homology sits in
    degree -1, so they always pass.
    """
    rho = rho or graded_rank(P)
    pairs = sorted((p for p in P.pairs() if rho(*p) >= 2), key=lambda p: (rho(*p), p))
    for s, t in pairs:
        inner = [w for w in P.interval(s, t) if w not in (s, t)]
        betti = reduced_betti(order_complex(P, inner))
        want = rho(s, t) - 2
        for k, b in betti.items():
            if b and k != want:
                return CMResult(False, (s, t), k, betti)
    return CMResult(True)
