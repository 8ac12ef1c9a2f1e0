"""Dense univariate polynomials over the integers.

Everything in the package lives in Z[x].  A :class:`Poly` is an immutable
tuple of Python ints (low degree first, trailing zeros trimmed), so
coefficients never overflow.

>>> p = Poly([1, 1])
>>> p * p
Poly([1, 2, 1])
>>> rev(Poly([1, 2]), 3)
Poly([0, 0, 2, 1])
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Union

# Degree reported for the zero polynomial.  Any comparison ``deg <= d``
# with d >= 0 holds for it, which is what every degree bound needs.
ZERO_DEGREE = -1

JSON_SAFE = 2**53


class InexactDivision(ArithmeticError):
    def __init__(self, quotient: "Poly", remainder: "Poly"):
        super().__init__(f"inexact division, remainder {remainder}")
        self.quotient = quotient
        self.remainder = remainder


class DegreeError(ValueError):
    pass


def _trim(cs: Sequence[int]) -> tuple:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


class Poly:
    """Immutable element of Z[x]."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(a) for a in coeffs]
        object.__setattr__(self, "c", _trim(cs))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, c: tuple) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "c", c)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(a: int) -> "Poly":
        return Poly._raw((a,)) if a else ZERO

    @staticmethod
    def monomial(k: int, a: int = 1) -> "Poly":
        return Poly._raw((0,) * k + (a,)) if a else ZERO

    @property
    def coeffs(self) -> tuple:
        return self.c

    @property
    def degree(self) -> int:
        return len(self.c) - 1 if self.c else ZERO_DEGREE

    @property
    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (-1 for zero)."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.c

    def __getitem__(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __len__(self) -> int:
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, int):
            return self.c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self.c)
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-a for a in self.c))

    def __sub__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return Poly._raw(tuple(a * other for a in self.c))
        if not isinstance(other, Poly):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, v):
        acc = 0
        for a in reversed(self.c):
            acc = acc * v + a
        return acc

    def shift(self, k: int) -> "Poly":
        return scale_shift(self, k)

    def __repr__(self) -> str:
        return f"Poly({list(self.c)})"

    def __str__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> list:
        return [a if abs(a) < JSON_SAFE else str(a) for a in self.c]

    @staticmethod
    def from_json(data: Sequence[Union[int, str]]) -> "Poly":
        return Poly(int(a) for a in data)


ZERO = Poly._raw(())
ONE = Poly._raw((1,))
X = Poly._raw((0, 1))
X_MINUS_1 = Poly._raw((-1, 1))


def add(p: Poly, q: Poly) -> Poly:
    a, b = p.c, q.c
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return p if a is p.c else q
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return Poly._raw(_trim(out))


def mul(p: Poly, q: Poly) -> Poly:
    a, b = p.c, q.c
    if not a or not b:
        return ZERO
    if len(a) == 1:
        k = a[0]
        return Poly._raw(tuple(k * v for v in b)) if k != 1 else q
    if len(b) == 1:
        k = b[0]
        return Poly._raw(tuple(k * v for v in a)) if k != 1 else p
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return Poly._raw(_trim(out))


def scale_shift(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("shift must be non-negative")
    if not p.c or not k:
        return p
    return Poly._raw((0,) * k + p.c)


def rev(p: Poly, d: int) -> Poly:
    """x^d p(1/x); requires deg p <= d."""
    if p.degree > d:
        raise DegreeError(f"degree {p.degree} exceeds window {d}")
    if not p.c:
        return p
    padded = p.c + (0,) * (d + 1 - len(p.c))
    return Poly._raw(_trim(padded[::-1]))


def divide_exact(p: Poly, q: Poly) -> Poly:
    quo, rem = divmod_poly(p, q)
    if rem:
        raise InexactDivision(quo, rem)
    return quo


def divmod_poly(p: Poly, q: Poly) -> tuple:
    """Division with remainder over Z; the divisor must be monic up to sign,
    or the division must stay integral, else InexactDivision."""
    if not q.c:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.c)
    dq = len(q.c) - 1
    lead = q.c[-1]
    if len(rem) - 1 < dq:
        return ZERO, p
    quo = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        a = rem[k]
        if not a:
            continue
        c, r = divmod(a, lead)
        if r:
            raise InexactDivision(Poly(quo), Poly(rem))
        quo[k - dq] = c
        for j, b in enumerate(q.c):
            rem[k - dq + j] -= c * b
    return Poly(quo), Poly(rem)


def divide_by_x_minus_1(p: Poly) -> Poly:
    """Synthetic division by (x-1); hot path for reduced kernels."""
    c = p.c
    if not c:
        return ZERO
    n = len(c) - 1
    out = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc += c[k]
        out[k - 1] = acc
    if acc + c[0]:
        raise InexactDivision(Poly(out), Poly.const(acc + c[0]))
    return Poly._raw(_trim(out))


# ----------------------------------------------------------------------
# shape predicates


def w_poly(r: int) -> Poly:
    """Gamma-polynomial of 1 + x + ... + x^r (zero for r = -1)."""
    if r < -1:
        raise ValueError("r must be >= -1")
    if r == -1:
        return ZERO
    return Poly((-1) ** j * comb(r - j, j) for j in range(r // 2 + 1))


def gamma_expand(g: Poly, d: int) -> Poly:
    """sum_i g_i x^i (1+x)^(d-2i)."""
    if g and 2 * g.degree > d:
        raise DegreeError(f"2*deg {g.degree} exceeds {d}")
    out = ZERO
    for i, a in enumerate(g.c):
        if a:
            out = out + scale_shift(Poly([1, 1]) ** (d - 2 * i), i) * a
    return out


def gamma_extract(p: Poly, d: int) -> Optional[Poly]:
    """Gamma-vector of p with respect to the window [0, d], or None when p is
    not symmetric about d/2."""
    if p.degree > d:
        return None
    if rev(p, d) != p:
        return None
    res = list(p.c) + [0] * (d + 1 - len(p.c))
    gam = []
    for i in range(d // 2 + 1):
        a = res[i]
        gam.append(a)
        if a:
            for k, b in enumerate((Poly([1, 1]) ** (d - 2 * i)).c):
                res[i + k] -= a * b
    if any(res):
        return None
    return Poly(gam)


def _is_unimodal(cs: Sequence[int]) -> tuple:
    """(verdict, peak index or witness index)."""
    if not cs:
        return True, None
    i = 0
    n = len(cs)
    while i + 1 < n and cs[i] <= cs[i + 1]:
        i += 1
    peak = i
    while i + 1 < n and cs[i] >= cs[i + 1]:
        i += 1
    if i + 1 < n:
        return False, i + 1
    return True, peak


# Sturm sequences over Q ------------------------------------------------


def _qpoly(p) -> list:
    return [Fraction(a) for a in p]


def _qtrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qrem(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] / lead
        k = len(a) - 1 - db
        for j, v in enumerate(b):
            a[k + j] -= c * v
        a.pop()
        _qtrim(a)
    return a


def _qderiv(a: list) -> list:
    return _qtrim([i * a[i] for i in range(1, len(a))])


def _qgcd(a: list, b: list) -> list:
    a, b = _qtrim(list(a)), _qtrim(list(b))
    while b:
        a, b = b, _qrem(a, b)
    if a:
        lead = a[-1]
        a = [v / lead for v in a]
    return a


def _sign_changes(vals: Iterable) -> int:
    signs = [v > 0 for v in vals if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _distinct_real_roots(a: list) -> int:
    """Number of distinct real roots via a Sturm sequence."""
    if len(a) <= 1:
        return 0
    seq = [a, _qderiv(a)]
    while seq[-1]:
        r = _qrem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-v for v in r])
    at_pos = [s[-1] for s in seq]
    at_neg = [s[-1] * (-1) ** (len(s) - 1) for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def real_root_count(p: Poly) -> int:
    """Real roots of p counted with multiplicity (exact)."""
    if p.degree <= 0:
        return 0
    a = _qpoly(p.c)
    total = 0
    while len(a) > 1:
        total += _distinct_real_roots(a)
        a = _qgcd(a, _qderiv(a))
    return total


# Report -----------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    poly: Poly
    is_zero: bool
    is_nonnegative: bool
    is_symmetric: bool
    center: Optional[Fraction]
    is_unimodal: bool
    peak: Optional[int]
    gamma: Optional[Poly]
    is_gamma_positive: bool
    real_root_count: int
    is_real_rooted: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "zero": self.is_zero,
            "nonnegative": self.is_nonnegative,
            "symmetric": self.is_symmetric,
            "center": None if self.center is None else str(self.center),
            "unimodal": self.is_unimodal,
            "peak": self.peak,
            "gamma": None if self.gamma is None else self.gamma.to_json(),
            "gamma_positive": self.is_gamma_positive,
            "real_root_count": self.real_root_count,
            "real_rooted": self.is_real_rooted,
            "witness": self.witness,
        }


def analyze(p: Poly, center_hint: Optional[Union[Fraction, int, float]] = None) -> PropertyReport:
    """Shape verdicts for p.

    Symmetry is taken about ``center_hint`` when given, otherwise about the
    midpoint of the lowest and highest nonzero coefficients.
    """
    if not p:
        return PropertyReport(p, True, True, True, None, True, None, ZERO,
                              True, 0, True, {})
    witness: dict = {}
    neg = next((i for i, a in enumerate(p.c) if a < 0), None)
    nonneg = neg is None
    if neg is not None:
        witness["negative"] = [neg, p.c[neg]]
    if center_hint is not None:
        d2 = Fraction(center_hint) * 2
        d = int(d2) if d2.denominator == 1 and d2 >= 0 else None
    else:
        d = p.valuation + p.degree
    gamma = gamma_extract(p, d) if d is not None else None
    sym = gamma is not None
    if not sym:
        if d is None:
            witness["asymmetric"] = None
        else:
            for i in range(max(d, p.degree) + 1):
                mirror = p[d - i] if d - i >= 0 else 0
                if p[i] != mirror:
                    witness["asymmetric"] = [i, p[i]]
                    break
    uni, peak = _is_unimodal(p.c)
    if not uni:
        witness["unimodal"] = [peak, p.c[peak]]
        peak = None
    gpos = sym and all(a >= 0 for a in gamma.c)
    if sym and not gpos:
        j = next(i for i, a in enumerate(gamma.c) if a < 0)
        witness["gamma"] = [j, gamma.c[j]]
    rr = real_root_count(p)
    return PropertyReport(
        poly=p,
        is_zero=False,
        is_nonnegative=nonneg,
        is_symmetric=sym,
        center=Fraction(d, 2) if sym else None,
        is_unimodal=uni,
        peak=peak,
        gamma=gamma,
        is_gamma_positive=gpos,
        real_root_count=rr,
        is_real_rooted=rr == p.degree,
        witness=witness,
    )


def interlaces(p: Poly, q: Poly) -> bool:
    """Whether the real-rooted polynomials p and q have interlacing roots.

    Checked through the Hermite-Kakeya-Obreschkoff criterion: every real
    combination a*p + b*q is real-rooted.  We test the pencil p + t*q for a
    grid of rational t, which is a necessary condition only.
    """
    if not (analyze(p).is_real_rooted and analyze(q).is_real_rooted):
        return False
    for num in range(-20, 21):
        for den in (1, 3, 7):
            t = Fraction(num, den)
            comb_ = [Fraction(p[i]) + t * q[i] for i in range(max(len(p), len(q)))]
            comb_ = _qtrim(comb_)
            if len(comb_) <= 1:
                continue
            cnt, a = 0, comb_
            while len(a) > 1:
                cnt += _distinct_real_roots(a)
                a = _qgcd(a, _qderiv(a))
            if cnt != len(comb_) - 1:
                return False
    return True
