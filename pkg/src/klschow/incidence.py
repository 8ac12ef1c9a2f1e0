"""The incidence algebra I_rho(P) with polynomial entries.

An :class:`IncElem` stores one :class:`~klschow.poly.Poly` per closed
interval ``[s, t]``.  All recursions walk the intervals by increasing
``rho(s, t)``, which is well-founded for every construction here.

The module also hosts the kernel calculus built on top of the algebra:
KLS functions, the Z-function, reduced kernels, Chow functions, augmented
Chow functions, and the cross-check suites for their identities.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .poly import (ONE, ZERO, InexactDivision, Poly,
                   analyze, divide_by_x_minus_1, rev)
from .poset import Poset, RankFn, graded_rank

Pair = Tuple[int, int]


class IncidenceError(ValueError):
    pass


class KernelError(IncidenceError):
    def __init__(self, msg: str, interval: Optional[Pair] = None):
        super().__init__(msg)
        self.interval = interval


class ConsistencyError(AssertionError):
    """Raised when an identity that holds by construction fails; signals a bug."""


def pair_order(P: Poset, rho: RankFn) -> List[Pair]:
    """Comparable pairs sorted by rho(s, t) ascending."""
    cache = P.__dict__.setdefault("_pair_order", {})
    got = cache.get(rho)
    if got is None:
        got = sorted(P.pairs(), key=lambda p: (rho(p[0], p[1]), p))
        cache[rho] = got
    return got


def _sum_polys(terms: Iterable[Poly]) -> Poly:
    acc: List[int] = []
    for p in terms:
        c = p.c
        if len(c) > len(acc):
            acc.extend([0] * (len(c) - len(acc)))
        for i, v in enumerate(c):
            acc[i] += v
    return Poly(acc)


class IncElem:
    """Element of I_rho(P): a polynomial for every interval [s,t]."""

    __slots__ = ("P", "rho", "table")

    def __init__(self, P: Poset, rho: RankFn, table: Dict[Pair, Poly]):
        self.P = P
        self.rho = rho
        self.table = table

    # construction -------------------------------------------------------
    @classmethod
    def from_function(cls, P: Poset, rho: RankFn, fn: Callable[[int, int], Poly]) -> "IncElem":
        return cls(P, rho, {p: fn(*p) for p in pair_order(P, rho)})

    @classmethod
    def delta(cls, P: Poset, rho: RankFn) -> "IncElem":
        return cls.from_function(P, rho, lambda s, t: ONE if s == t else ZERO)

    @classmethod
    def zeta(cls, P: Poset, rho: RankFn) -> "IncElem":
        return cls.from_function(P, rho, lambda s, t: ONE)

    # access -----------------------------------------------------------
    def __getitem__(self, st: Pair) -> Poly:
        return self.table[st]

    def get(self, s: int, t: int) -> Poly:
        return self.table.get((s, t), ZERO)

    def pairs(self) -> List[Pair]:
        return pair_order(self.P, self.rho)

    def top(self) -> Poly:
        b, t = self.P.require_bounded()
        return self.table[(b, t)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncElem):
            return NotImplemented
        return self.P is other.P and self.table == other.table

    def __repr__(self) -> str:
        return f"IncElem({len(self.table)} intervals)"

    def diff(self, other: "IncElem") -> List[Pair]:
        """Intervals where the two elements disagree, in rho order."""
        return [p for p in self.pairs() if self.table.get(p, ZERO) != other.table.get(p, ZERO)]

    def _same(self, other: "IncElem") -> None:
        if self.P is not other.P or self.rho != other.rho:
            raise IncidenceError("elements live on different posets or rank functions")

    # ring structure -----------------------------------------------------
    def __add__(self, other: "IncElem") -> "IncElem":
        self._same(other)
        return IncElem(self.P, self.rho, {p: self.table[p] + other.table[p] for p in self.table})

    def __sub__(self, other: "IncElem") -> "IncElem":
        self._same(other)
        return IncElem(self.P, self.rho, {p: self.table[p] - other.table[p] for p in self.table})

    def __neg__(self) -> "IncElem":
        return IncElem(self.P, self.rho, {p: -v for p, v in self.table.items()})

    def __mul__(self, other: "IncElem") -> "IncElem":
        return convolve(self, other)

    def map(self, fn: Callable[[int, int, Poly], Poly]) -> "IncElem":
        return IncElem(self.P, self.rho, {p: fn(p[0], p[1], v) for p, v in self.table.items()})

    def rev(self) -> "IncElem":
        return rev_elem(self)

    def check_degrees(self) -> Optional[Pair]:
        """First interval violating deg <= rho, or None."""
        for (s, t), v in self.table.items():
            if v.degree > self.rho(s, t):
                return (s, t)
        return None

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rank": list(self.rho.r),
            "table": {f"{s},{t}": v.to_json() for (s, t), v in self.table.items()},
        }

    @classmethod
    def from_json(cls, P: Poset, rho: RankFn, data: dict) -> "IncElem":
        raw = data.get("table", data)
        table = {}
        for key, coeffs in raw.items():
            s, t = (int(v) for v in key.split(","))
            table[(s, t)] = Poly.from_json(coeffs)
        for p in pair_order(P, rho):
            table.setdefault(p, ZERO)
        return cls(P, rho, table)


def convolve(a: IncElem, b: IncElem) -> IncElem:
    """(ab)_st = sum over s <= w <= t of a_sw b_wt."""
    a._same(b)
    P = a.P
    at, bt = a.table, b.table
    out = {}
    for s, t in pair_order(P, a.rho):
        out[(s, t)] = _sum_polys(at[(s, w)] * bt[(w, t)] for w in P.interval(s, t))
    return IncElem(P, a.rho, out)


def invert(a: IncElem) -> IncElem:
    """Two-sided inverse; needs every diagonal entry to be +1 or -1."""
    P = a.P
    at = a.table
    for s in range(P.n):
        d = at[(s, s)]
        if d != 1 and d != -1:
            raise IncidenceError(f"non-unit diagonal entry {d} at element {s}")
    out: Dict[Pair, Poly] = {}
    for s, t in pair_order(P, a.rho):
        if s == t:
            out[(s, s)] = at[(s, s)]
            continue
        acc = _sum_polys(out[(s, w)] * at[(w, t)] for w in P.interval(s, t) if w != t)
        # b_st * a_tt = -acc and a_tt is its own inverse
        out[(s, t)] = -(acc * at[(t, t)][0])
    return IncElem(P, a.rho, out)


def rev_elem(a: IncElem) -> IncElem:
    rho = a.rho
    return IncElem(a.P, rho, {(s, t): rev(v, rho(s, t)) for (s, t), v in a.table.items()})


# ----------------------------------------------------------------------
# kernels


@dataclass
class KernelCheck:
    is_kernel: bool
    is_nondegenerate: bool
    failing_interval: Optional[Pair] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_kernel


def check_kernel(kappa: IncElem) -> KernelCheck:
    P = kappa.P
    for s in range(P.n):
        if kappa[(s, s)] != 1:
            return KernelCheck(False, False, (s, s), "diagonal entry is not 1")
    bad = kappa.check_degrees()
    if bad is not None:
        return KernelCheck(False, False, bad, "degree exceeds rank")
    prod = convolve(kappa, rev_elem(kappa))
    for s, t in prod.pairs():
        if s != t and prod[(s, t)]:
            return KernelCheck(False, False, (s, t), "kappa * kappa^rev differs from delta")
    nondeg = all(kappa[(s, t)].degree == kappa.rho(s, t) for s, t in kappa.pairs() if s != t)
    return KernelCheck(True, nondeg)


def _require_kernel(kappa: IncElem) -> None:
    chk = check_kernel(kappa)
    if not chk:
        raise KernelError(f"not a kernel: {chk.reason}", chk.failing_interval)


def _split_half(R: Poly, r: int, where: Pair) -> Poly:
    """Solve p^rev - p = R for p with deg p < r/2 (window r)."""
    low = Poly([R[i] if 2 * i < r else 0 for i in range(len(R))])
    mid = R[r // 2] if r % 2 == 0 else 0
    p = -low
    high = R - low
    if mid or high != rev(p, r):
        raise ConsistencyError(f"KLS residue at {where} is not palindromic-complementary: {R}")
    return p


def kls_right(kappa: IncElem, check: bool = True) -> IncElem:
    """Right KLS function f: f^rev = kappa f, deg f_st < rho/2."""
    if check:
        _require_kernel(kappa)
    P, rho, kt = kappa.P, kappa.rho, kappa.table
    f: Dict[Pair, Poly] = {}
    for s, t in pair_order(P, rho):
        if s == t:
            f[(s, s)] = ONE
            continue
        R = _sum_polys(kt[(s, w)] * f[(w, t)] for w in P.interval(s, t) if w != s)
        f[(s, t)] = _split_half(R, rho(s, t), (s, t))
    return IncElem(P, rho, f)


def kls_left(kappa: IncElem, check: bool = True) -> IncElem:
    """Left KLS function g: g^rev = g kappa, deg g_st < rho/2."""
    if check:
        _require_kernel(kappa)
    P, rho, kt = kappa.P, kappa.rho, kappa.table
    g: Dict[Pair, Poly] = {}
    for s, t in pair_order(P, rho):
        if s == t:
            g[(s, s)] = ONE
            continue
        R = _sum_polys(g[(s, w)] * kt[(w, t)] for w in P.interval(s, t) if w != t)
        g[(s, t)] = _split_half(R, rho(s, t), (s, t))
    return IncElem(P, rho, g)


def reduce_kernel(kappa: IncElem) -> IncElem:
    """kappa / (x-1) off the diagonal, -1 on it."""
    out = {}
    for (s, t), v in kappa.table.items():
        if s == t:
            out[(s, t)] = Poly.const(-1)
        else:
            try:
                out[(s, t)] = divide_by_x_minus_1(v)
            except InexactDivision as exc:
                raise KernelError(f"kernel entry at {(s, t)} not divisible by x-1", (s, t)) from exc
    return IncElem(kappa.P, kappa.rho, out)


def chow(kappa: IncElem, check: bool = True) -> IncElem:
    """Chow function H = -(reduced kernel)^{-1}."""
    if check:
        _require_kernel(kappa)
    return -invert(reduce_kernel(kappa))


def chow_by_recursion(kappa: IncElem) -> IncElem:
    """H_st = sum over s < w <= t of kbar_sw H_wt (independent evaluation)."""
    kb = reduce_kernel(kappa)
    P, rho = kappa.P, kappa.rho
    H: Dict[Pair, Poly] = {}
    for s, t in pair_order(P, rho):
        if s == t:
            H[(s, s)] = ONE
        else:
            H[(s, t)] = _sum_polys(kb[(s, w)] * H[(w, t)] for w in P.interval(s, t) if w != s)
    return IncElem(P, rho, H)


def chow_column(P: Poset, rho: RankFn, kappa_fn: Callable[[int, int], Poly], t: int) -> Dict[int, Poly]:
    """H_{s,t} for every s <= t, reading kernel entries lazily from kappa_fn.

    Only the column ending at t is computed, so large intervals whose full
    table would be expensive still give the top polynomial cheaply.
    """
    below = sorted(P.downset(t), key=lambda s: -rho(s, t))
    H: Dict[int, Poly] = {}
    for s in reversed(below):
        if s == t:
            H[s] = ONE
            continue
        terms = []
        for w in P.interval(s, t):
            if w == s:
                continue
            k = divide_by_x_minus_1(kappa_fn(s, w))
            if k:
                terms.append(k * H[w])
        H[s] = _sum_polys(terms)
    return H


def kernel_from_chow(H: IncElem) -> IncElem:
    """The unique kernel whose Chow function is H: kappa = H^rev H^{-1}."""
    rho = H.rho
    for s, t in H.pairs():
        v = H[(s, t)]
        if s == t:
            if v != 1:
                raise IncidenceError(f"diagonal entry at {s} is not 1")
            continue
        r = rho(s, t)
        if v.degree > r - 1 or rev(v, r - 1) != v:
            raise IncidenceError(f"H at {(s, t)} is not symmetric with center {(r - 1) / 2}")
    kappa = convolve(rev_elem(H), invert(H))
    return kappa


def z_function(kappa: IncElem, f: Optional[IncElem] = None, g: Optional[IncElem] = None) -> IncElem:
    """Z = g^rev f, cross-checked against g f^rev."""
    f = f or kls_right(kappa)
    g = g or kls_left(kappa)
    z1 = convolve(rev_elem(g), f)
    z2 = convolve(g, rev_elem(f))
    bad = z1.diff(z2)
    if bad:
        raise ConsistencyError(f"g^rev f != g f^rev at {bad[0]}")
    return z1


def augmented(kappa: IncElem, H: Optional[IncElem] = None, f: Optional[IncElem] = None,
              g: Optional[IncElem] = None) -> Tuple[IncElem, IncElem]:
    """Right and left augmented Chow functions F = H f^rev, G = g^rev H."""
    H = H or chow(kappa)
    f = f or kls_right(kappa)
    g = g or kls_left(kappa)
    return convolve(H, rev_elem(f)), convolve(rev_elem(g), H)


def f_perp(f: IncElem) -> IncElem:
    """F-perp_st = (x (f^{-1})^rev_st - (f^{-1})_st) / (x - 1)."""
    finv = invert(f)
    fr = rev_elem(finv)
    return IncElem(f.P, f.rho, {p: divide_by_x_minus_1(fr[p].shift(1) - finv[p]) for p in f.pairs()})


def g_perp(g: IncElem) -> IncElem:
    return f_perp(g)


# ----------------------------------------------------------------------
# everything at once


class KernelData:
    """Lazily computed, cached f, g, Z, kbar, H, F, G for a kernel."""

    def __init__(self, kappa: IncElem, check: bool = True):
        if check:
            _require_kernel(kappa)
        self.kappa = kappa
        self._cache: Dict[str, IncElem] = {}

    def _get(self, name: str, fn):
        got = self._cache.get(name)
        if got is None:
            got = fn()
            self._cache[name] = got
        return got

    @property
    def f(self) -> IncElem:
        return self._get("f", lambda: kls_right(self.kappa, check=False))

    @property
    def g(self) -> IncElem:
        return self._get("g", lambda: kls_left(self.kappa, check=False))

    @property
    def Z(self) -> IncElem:
        return self._get("Z", lambda: z_function(self.kappa, self.f, self.g))

    @property
    def kbar(self) -> IncElem:
        return self._get("kbar", lambda: reduce_kernel(self.kappa))

    @property
    def H(self) -> IncElem:
        return self._get("H", lambda: -invert(self.kbar))

    @property
    def F(self) -> IncElem:
        return self._get("F", lambda: convolve(self.H, rev_elem(self.f)))

    @property
    def G(self) -> IncElem:
        return self._get("G", lambda: convolve(rev_elem(self.g), self.H))

    def get(self, what: str) -> IncElem:
        if what in ("kappa", "k"):
            return self.kappa
        return getattr(self, what)


# ----------------------------------------------------------------------
# identity checks


@dataclass
class IdentityReport:
    """Failing intervals per identity name; empty lists mean the identity holds."""

    failures: Dict[str, List[Pair]] = field(default_factory=dict)

    def record(self, name: str, bad: List[Pair]) -> None:
        self.failures.setdefault(name, []).extend(bad)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def failed(self) -> List[str]:
        return [k for k, v in self.failures.items() if v]

    def merge(self, other: "IdentityReport", prefix: str = "") -> None:
        for k, v in other.failures.items():
            self.record(prefix + k, v)


def _k_left(g: IncElem) -> Dict[Pair, Poly]:
    """(g^rev_sw - x g_sw)/(x-1) for s < w."""
    rho = g.rho
    out = {}
    for (s, w), v in g.table.items():
        if s != w:
            out[(s, w)] = divide_by_x_minus_1(rev(v, rho(s, w)) - v.shift(1))
    return out


def ncd_check(kappa: IncElem, data: Optional[KernelData] = None) -> IdentityReport:
    """Numerical canonical decompositions (plain and augmented) and both
    chain-sum formulas, evaluated on every interval."""
    d = data or KernelData(kappa)
    P, rho = kappa.P, kappa.rho
    f, g, H, Z, F, G = d.f, d.g, d.H, d.Z, d.F, d.G
    Kg = _k_left(g)
    Kf = _k_left(f)
    rep = IdentityReport()
    bad_f, bad_g, bad_F, bad_G = [], [], [], []
    for s, t in pair_order(P, rho):
        inner = [w for w in P.interval(s, t) if w not in (s, t)]
        if s != t:
            r = rho(s, t)
            lhs_f = divide_by_x_minus_1(rev(f[(s, t)], r) - f[(s, t)])
            lhs_f = _sum_polys([lhs_f] + [H[(s, w)] * Kf[(w, t)] for w in inner])
            if lhs_f != H[(s, t)]:
                bad_f.append((s, t))
            lhs_g = divide_by_x_minus_1(rev(g[(s, t)], r) - g[(s, t)])
            lhs_g = _sum_polys([lhs_g] + [Kg[(s, w)] * H[(w, t)] for w in inner])
            if lhs_g != H[(s, t)]:
                bad_g.append((s, t))
        rhs_F = _sum_polys([Z[(s, t)]] + [Kg[(s, w)] * F[(w, t)] for w in P.interval(s, t) if w != s])
        if rhs_F != F[(s, t)]:
            bad_F.append((s, t))
        rhs_G = _sum_polys([Z[(s, t)]] + [G[(s, w)] * Kf[(w, t)] for w in P.interval(s, t) if w != t])
        if rhs_G != G[(s, t)]:
            bad_G.append((s, t))
    rep.record("ncd-f", bad_f)
    rep.record("ncd-g", bad_g)
    rep.record("ncd-F", bad_F)
    rep.record("ncd-G", bad_G)
    rep.record("chain-sum-g", [p for p in pair_order(P, rho) if chain_sum_g(g, Kg, *p) != H[p]])
    rep.record("chain-sum-f", [p for p in pair_order(P, rho) if chain_sum_f(f, Kf, *p) != H[p]])
    return rep


def chain_sum_g(g: IncElem, Kg: Dict[Pair, Poly], s: int, t: int) -> Poly:
    """Sum over chains s = p0 < ... < pm <= t of K_{p0p1}...K_{p(m-1)pm} g_{pm t},
    evaluated by memoizing the chain suffixes."""
    P = g.P
    memo: Dict[int, Poly] = {}
    for p in reversed(P.interval(s, t)):
        memo[p] = _sum_polys([g[(p, t)]] + [Kg[(p, q)] * memo[q] for q in P.interval(p, t) if q != p])
    return memo[s]


def chain_sum_f(f: IncElem, Kf: Dict[Pair, Poly], s: int, t: int) -> Poly:
    """Sum over chains s <= p0 < ... < pm = t of f_{s p0} K_{p0p1}...K_{p(m-1)pm}."""
    P = f.P
    memo: Dict[int, Poly] = {}
    for p in P.interval(s, t):
        memo[p] = _sum_polys([f[(s, p)]] + [memo[q] * Kf[(q, p)] for q in P.interval(s, p) if q != p])
    return memo[t]


def structure_check(kappa: IncElem, data: Optional[KernelData] = None) -> IdentityReport:
    """Degree, symmetry and characterization identities for H, F, G, Z, f, g."""
    d = data or KernelData(kappa)
    P, rho = kappa.P, kappa.rho
    rep = IdentityReport()
    pairs = pair_order(P, rho)
    kr = rev_elem(kappa)
    prod = convolve(kappa, kr)
    rep.record("kernel", [p for p in pairs if prod[p] != (1 if p[0] == p[1] else 0)])
    H, F, G, Z, f, g = d.H, d.F, d.G, d.Z, d.f, d.g
    rep.record("H-recursion", chow_by_recursion(kappa).diff(H))
    sym = []
    lead = []
    for s, t in pairs:
        r = rho(s, t)
        h = H[(s, t)]
        if s == t:
            if h != 1:
                sym.append((s, t))
            continue
        if h.degree > r - 1 or rev(h, r - 1) != h:
            sym.append((s, t))
        if h[r - 1] != kappa[(s, t)][r]:
            lead.append((s, t))
    rep.record("H-symmetric", sym)
    rep.record("H-leading", lead)
    Hr = rev_elem(H)
    rep.record("kappa-H", convolve(kappa, H).diff(Hr))
    rep.record("H-kappa", convolve(H, kappa).diff(Hr))
    rep.record("F-symmetric", rev_elem(F).diff(F))
    rep.record("G-symmetric", rev_elem(G).diff(G))
    rep.record("F-leading", [p for p in pairs if F[p][rho(*p)] != kappa[p][rho(*p)]])
    rep.record("G-leading", [p for p in pairs if G[p][rho(*p)] != kappa[p][rho(*p)]])
    rep.record("Z-symmetric", rev_elem(Z).diff(Z))
    rep.record("Z-two-forms", convolve(g, rev_elem(f)).diff(Z))
    rep.record("f-kls", convolve(kappa, f).diff(rev_elem(f)))
    rep.record("g-kls", convolve(g, kappa).diff(rev_elem(g)))
    rep.record("f-degree", [p for p in pairs if p[0] != p[1] and 2 * f[p].degree >= rho(*p)])
    rep.record("g-degree", [p for p in pairs if p[0] != p[1] and 2 * g[p].degree >= rho(*p)])
    rep.record("g-constant", [p for p in pairs if p[0] != p[1] and g[p][0] != kappa[p][rho(*p)]])
    rep.record("f-constant", [p for p in pairs if p[0] != p[1] and f[p][0] != kappa[p][rho(*p)]])
    return rep


@dataclass
class TransferReport:
    f_nonnegative: bool
    g_nonnegative: bool
    z_nonneg_unimodal: bool
    H_nonneg_unimodal: bool
    F_nonnegative: bool
    G_nonnegative: bool
    F_unimodal: bool
    G_unimodal: bool
    violations: List[str]
    negative_f: List[Pair]
    negative_g: List[Pair]

    @property
    def ok(self) -> bool:
        return not self.violations


def _all(elem: IncElem, pred) -> bool:
    return all(pred(v) for v in elem.table.values())


def unimodality_transfer_check(kappa: IncElem, data: Optional[KernelData] = None) -> TransferReport:
    """Whenever f or g is non-negative, H must be non-negative and unimodal;
    the augmented analogues are checked the same way."""
    d = data or KernelData(kappa)

    def nonneg(p: Poly) -> bool:
        return all(a >= 0 for a in p.c)

    def nn_uni(p: Poly) -> bool:
        return nonneg(p) and analyze(p).is_unimodal

    neg_f = [p for p, v in d.f.table.items() if not nonneg(v)]
    neg_g = [p for p, v in d.g.table.items() if not nonneg(v)]
    f_nn, g_nn = not neg_f, not neg_g
    H_ok = _all(d.H, nn_uni)
    Z_ok = _all(d.Z, nn_uni)
    F_nn, G_nn = _all(d.F, nonneg), _all(d.G, nonneg)
    F_uni = _all(d.F, lambda p: analyze(p).is_unimodal)
    G_uni = _all(d.G, lambda p: analyze(p).is_unimodal)
    bad = []
    if (f_nn or g_nn) and not H_ok:
        bad.append("H")
    if f_nn and not F_nn:
        bad.append("F-nonnegative")
    if g_nn and not G_nn:
        bad.append("G-nonnegative")
    if Z_ok and g_nn and not F_uni:
        bad.append("F-unimodal")
    if Z_ok and f_nn and not G_uni:
        bad.append("G-unimodal")
    return TransferReport(f_nn, g_nn, Z_ok, H_ok, F_nn, G_nn, F_uni, G_uni, bad, neg_f, neg_g)


def default_rank(P: Poset, rho: Optional[RankFn]) -> RankFn:
    return rho if rho is not None else graded_rank(P)
