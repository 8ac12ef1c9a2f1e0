"""Non-commutative ab- and cd-polynomials.

``NcPoly`` maps words to integer coefficients.  Words over {a, b} encode
flag data (letter i is b when rank i is selected); words over {c, d} are
the cd-monomials, with c = a + b of degree 1 and d = ab + ba of degree 2.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from math import comb
from typing import Dict, Optional

from .poly import Poly
from .poset import FlagVector, Poset, RankFn, flag_vectors


class NotInCDSubalgebra(ValueError):
    def __init__(self, word: str, coeff: int):
        super().__init__(f"not in the cd-subalgebra: residual word {word!r} with coefficient {coeff}")
        self.word = word
        self.coeff = coeff


def word_degree(w: str) -> int:
    return sum(2 if ch == "d" else 1 for ch in w)


class NcPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[str, int]] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NcPoly(out)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + other * -1

    def __mul__(self, other) -> "NcPoly":
        if isinstance(other, int):
            return NcPoly({w: c * other for w, c in self.terms.items()})
        out: Dict[str, int] = defaultdict(int)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[w1 + w2] += c1 * c2
        return NcPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def components(self) -> Dict[int, "NcPoly"]:
        """Homogeneous components keyed by degree (d counts 2)."""
        out: Dict[int, Dict[str, int]] = defaultdict(dict)
        for w, c in self.terms.items():
            out[word_degree(w)][w] = c
        return {k: NcPoly(v) for k, v in out.items()}

    def top_component(self) -> "NcPoly":
        comps = self.components()
        return comps[max(comps)] if comps else NcPoly()

    def to_json(self) -> Dict[str, int]:
        return {w: c for w, c in sorted(self.terms.items(), key=lambda kv: (-word_degree(kv[0]), kv[0]))}

    @staticmethod
    def from_json(data: Dict[str, int]) -> "NcPoly":
        return NcPoly({w: int(c) for w, c in data.items()})

    def __repr__(self) -> str:
        return f"NcPoly({self.to_json()})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.to_json().items():
            mono = "".join(k if n == 1 else f"{k}^{n}"
                           for k, n in ((k, len(list(g))) for k, g in itertools.groupby(w)))
            mono = mono or "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}" if mono != "1" else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def expand_cd(phi: NcPoly) -> NcPoly:
    """Substitute c = a + b and d = ab + ba."""
    out: Dict[str, int] = defaultdict(int)
    choices = {"c": ("a", "b"), "d": ("ab", "ba")}
    for w, coef in phi.terms.items():
        for pick in itertools.product(*(choices[ch] for ch in w)):
            out["".join(pick)] += coef
    return NcPoly(out)


def _parse_top(word: str) -> Optional[str]:
    """Invert the top-word map c -> b, d -> ba; None if impossible."""
    out = []
    i = 0
    while i < len(word):
        if word[i] != "b":
            return None
        if i + 1 < len(word) and word[i + 1] == "a":
            out.append("d")
            i += 2
        else:
            out.append("c")
            i += 1
    return "".join(out)


def to_cd(psi: NcPoly) -> NcPoly:
    """Rewrite an ab-polynomial in c and d.

    The expansion of a cd-monomial has lexicographically largest word
    (with b > a) obtained by c -> b, d -> ba, and distinct monomials have
    distinct largest words, so the coefficient system is triangular.  Peel
    off the largest remaining word until nothing is left.
    """
    residual = dict(psi.terms)
    out: Dict[str, int] = {}
    while residual:
        word = max(residual)
        coef = residual[word]
        mono = _parse_top(word)
        if mono is None:
            raise NotInCDSubalgebra(word, coef)
        out[mono] = out.get(mono, 0) + coef
        for w, c in expand_cd(NcPoly({mono: coef})).terms.items():
            v = residual.get(w, 0) - c
            if v:
                residual[w] = v
            else:
                residual.pop(w, None)
    return NcPoly(out)


def ab_index(flags: FlagVector) -> NcPoly:
    """sum over S of beta(S) u_S, letter i = b iff i in S."""
    out = {}
    for S, b in flags.beta.items():
        w = "".join("b" if i in S else "a" for i in range(1, flags.r))
        out[w] = out.get(w, 0) + b
    return NcPoly(out)


def cd_index(P: Poset, rho: Optional[RankFn] = None) -> NcPoly:
    return to_cd(ab_index(flag_vectors(P, rho)))


def gal_gamma(phi: NcPoly) -> Poly:
    """phi(1, 2t)."""
    acc: Dict[int, int] = defaultdict(int)
    for w, c in phi.terms.items():
        j = w.count("d")
        acc[j] += c * 2 ** j
    return Poly([acc.get(i, 0) for i in range(max(acc, default=-1) + 1)])


def complete_cd_from_words(words: Dict[str, int]) -> NcPoly:
    """Group descent words by length and rewrite every component in c, d."""
    by_len: Dict[int, Dict[str, int]] = defaultdict(dict)
    for w, c in words.items():
        by_len[len(w)][w] = by_len[len(w)].get(w, 0) + c
    out = NcPoly()
    for comp in by_len.values():
        out = out + to_cd(NcPoly(comp))
    return out


def complete_cd_from_paths(G, u: int, v: int, order=None) -> NcPoly:
    from .coxeter import path_words, reflection_order

    order = order or reflection_order(G)
    return complete_cd_from_words(path_words(G, u, v, order))


def chow_from_complete_cd(psi: NcPoly, rho: int) -> Poly:
    """x^((rho-1)/2) psi(x^(-1/2) + x^(1/2), 2), evaluated in y = x^(1/2)."""
    acc: Dict[int, int] = defaultdict(int)
    for w, coef in psi.terms.items():
        nc = w.count("c")
        scal = coef * 2 ** w.count("d")
        # y^(rho-1) (y^-1 + y)^nc
        for k in range(nc + 1):
            e = rho - 1 - nc + 2 * k
            acc[e] += scal * comb(nc, k)
    acc = {e: a for e, a in acc.items() if a}
    if any(e % 2 or e < 0 for e in acc):
        raise ValueError("exponents do not clear to Z[x]; wrong parity for this rank")
    return Poly([acc.get(2 * i, 0) for i in range(max(acc, default=-2) // 2 + 1)])


def gamma_from_complete_cd(psi: NcPoly, rho: int) -> Poly:
    """gamma(H, x^2) = x^(rho-1) psi(x^(-1), 2); returns gamma(H, x)."""
    acc: Dict[int, int] = defaultdict(int)
    for w, coef in psi.terms.items():
        e = rho - 1 - w.count("c")
        if e % 2 or e < 0:
            raise ValueError("exponents do not clear to Z[x]; wrong parity for this rank")
        acc[e // 2] += coef * 2 ** w.count("d")
    return Poly([acc.get(i, 0) for i in range(max(acc, default=-1) + 1)])
