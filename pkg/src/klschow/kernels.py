"""Named kernels: characteristic, Eulerian, the ad-hoc B3 family, and
kernels induced by a left KLS function."""
from __future__ import annotations

import json
import re
from typing import Optional

from .incidence import IncElem, IncidenceError, check_kernel, convolve, invert, rev_elem
from .poly import ONE, Poly, X_MINUS_1
from .poset import Poset, PosetError, RankFn, boolean, graded_rank, is_eulerian, mobius


class NotEulerianError(PosetError):
    def __init__(self, interval):
        super().__init__(f"poset is not Eulerian: Mobius test fails on {interval}")
        self.interval = interval


def characteristic(P: Poset, rho: Optional[RankFn] = None) -> IncElem:
    """chi_st = sum over s <= w <= t of mu_sw x^rho(w,t)."""
    rho = rho or graded_rank(P)
    mu = mobius(P)

    def entry(s: int, t: int) -> Poly:
        acc = {}
        for w in P.interval(s, t):
            k = rho(w, t)
            acc[k] = acc.get(k, 0) + mu[(s, w)]
        return Poly([acc.get(i, 0) for i in range(rho(s, t) + 1)])

    return IncElem.from_function(P, rho, entry)


def eulerian(P: Poset, rho: Optional[RankFn] = None) -> IncElem:
    """eps_st = (x-1)^rho(s,t); only a kernel when P is Eulerian."""
    rho = rho or graded_rank(P)
    ok, where = is_eulerian(P, rho)
    if not ok:
        raise NotEulerianError(where)
    return eulerian_unchecked(P, rho)


def eulerian_unchecked(P: Poset, rho: RankFn) -> IncElem:
    powers = {}

    def entry(s: int, t: int) -> Poly:
        r = rho(s, t)
        if r not in powers:
            powers[r] = X_MINUS_1 ** r
        return powers[r]

    return IncElem.from_function(P, rho, entry)


def adhoc_b3(m: int, P: Optional[Poset] = None, rho: Optional[RankFn] = None) -> IncElem:
    """One-parameter family of kernels on B3.

    Intervals of rank 1, 2 take the values of the characteristic kernel,
    (x-1) and (x-1)^2; the full interval gets x^3 + m x^2 - m x - 1.  A
    caller-supplied poset must be a copy of B3; the result is checked.
    """
    if P is None:
        P = boolean(3)
    rho = rho or graded_rank(P)
    top = Poly([-1, -m, m, 1])

    def entry(s: int, t: int) -> Poly:
        r = rho(s, t)
        if r == 0:
            return ONE
        if r == 3:
            return top
        return X_MINUS_1 ** r

    k = IncElem.from_function(P, rho, entry)
    chk = check_kernel(k)
    if not chk:
        raise IncidenceError(f"ad-hoc kernel is not a kernel on this poset: {chk.reason} at {chk.failing_interval}")
    return k


def kernel_from_g(g: IncElem) -> IncElem:
    """kappa = g^{-1} g^rev, a kernel whose left KLS function is g."""
    rho = g.rho
    for (s, t), v in g.table.items():
        if s == t:
            if v != 1:
                raise IncidenceError(f"g must be 1 on the diagonal (element {s})")
        elif 2 * v.degree >= rho(s, t):
            raise IncidenceError(f"deg g at {(s, t)} must be < rho/2")
    return convolve(invert(g), rev_elem(g))


def zeta(P: Poset, rho: Optional[RankFn] = None) -> IncElem:
    return IncElem.zeta(P, rho or graded_rank(P))


def delta(P: Poset, rho: Optional[RankFn] = None) -> IncElem:
    return IncElem.delta(P, rho or graded_rank(P))


def mobius_elem(P: Poset, rho: Optional[RankFn] = None) -> IncElem:
    mu = mobius(P)
    return IncElem.from_function(P, rho or graded_rank(P), lambda s, t: Poly.const(mu[(s, t)]))


KERNEL_SPECS = "chi | eps | adhoc:m=<int> | file:<path>"


def from_spec(spec: str, P: Poset, rho: Optional[RankFn] = None) -> IncElem:
    """Parse a kernel name as accepted on the command line and check it."""
    rho = rho or graded_rank(P)
    if spec == "chi":
        return characteristic(P, rho)
    if spec == "eps":
        return eulerian(P, rho)
    m = re.fullmatch(r"adhoc:m=(-?\d+)", spec)
    if m:
        return adhoc_b3(int(m.group(1)), P, rho)
    if spec.startswith("file:"):
        with open(spec[5:]) as fh:
            data = json.load(fh)
        return kernel_from_table(P, rho, data.get("table", data))
    raise ValueError(f"unknown kernel {spec!r}; expected {KERNEL_SPECS}")


def _split_key(P: Poset, key: str):
    """Parse "s,t" where labels may themselves contain commas."""
    parts = key.split(",")
    hits = []
    for i in range(1, len(parts)):
        try:
            hits.append((P.resolve(",".join(parts[:i]).strip()), P.resolve(",".join(parts[i:]).strip())))
        except PosetError:
            continue
    if len(hits) != 1:
        raise PosetError(f"cannot read interval key {key!r}")
    return hits[0]


def kernel_from_table(P: Poset, rho: RankFn, table: dict) -> IncElem:
    """Kernel from {"s,t": coeffs}, with s, t labels or caller indices.
    Missing diagonal entries default to 1; the result must be a kernel."""
    entries = {}
    for key, coeffs in table.items():
        entries[_split_key(P, key)] = Poly.from_json(coeffs)
    for s, t in P.pairs():
        if s == t:
            entries.setdefault((s, t), ONE)
        elif (s, t) not in entries:
            raise IncidenceError(f"kernel table misses interval {(P.labels[s], P.labels[t])}")
    k = IncElem(P, rho, {p: entries[p] for p in P.pairs()})
    chk = check_kernel(k)
    if not chk:
        raise IncidenceError(f"not a kernel: {chk.reason} at {chk.failing_interval}")
    return k
