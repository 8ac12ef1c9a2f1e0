"""Batch runner for the open conjectures.

Instances are generated serially from a seeded RNG, evaluated (optionally
in worker processes), and written as ledger rows in generation order, so a
fixed seed always gives the same ledger.  Conjectures are reported, never
asserted: a failing instance is a discovery, saved as a JSON artifact.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional

from .homology import is_cohen_macaulay
from .incidence import chow_column
from .kernels import characteristic
from .poly import Poly, X_MINUS_1, analyze
from .poset import (Poset, RankFn, boolean, build, crosspolytope_face_lattice, cube_face_lattice,
                    diamond_product, from_json, graded_rank, polygon_face_lattice, pyramid, prism)


@dataclass(frozen=True)
class Conjecture:
    ident: str
    statement: str
    kernel: str
    prop: str
    generator: str


CONJECTURES: Dict[str, Conjecture] = {
    "1.2": Conjecture("1.2", "chi-Chow polynomial of a Cohen-Macaulay poset is real-rooted",
                      "chi", "real_rooted", "random-graded"),
    "1.3": Conjecture("1.3", "eps-Chow polynomial of an Eulerian poset is real-rooted",
                      "eps", "real_rooted", "random-eulerian"),
    "1.4": Conjecture("1.4", "Coxeter Chow polynomial of a Bruhat interval is gamma-positive",
                      "coxeter", "gamma_positive", "bruhat"),
    "1.5": Conjecture("1.5", "Coxeter Chow polynomial of a Bruhat interval is real-rooted",
                      "coxeter", "real_rooted", "bruhat"),
}

GENERATORS = ("random-graded", "random-eulerian", "bruhat")

LEDGER_FIELDS = ["index", "conjecture", "generator", "hash", "elements", "rank", "poly",
                 "nonnegative", "symmetric", "unimodal", "gamma_positive", "real_rooted",
                 "counterexample"]


class HarnessError(ValueError):
    pass


# ----------------------------------------------------------------------
# generators


def random_graded_poset(rng: random.Random, max_rank: int = 5, max_width: int = 3,
                        min_rank: int = 2) -> Poset:
    """Bounded graded poset built layer by layer.

    Every element of rank i+1 covers a random non-empty subset of rank i, and
    any element left without an upper cover is given one.
    """
    r = rng.randint(min_rank, max_rank)
    layers = [[0]]
    n = 1
    for _ in range(1, r):
        k = rng.randint(1, max_width)
        layers.append(list(range(n, n + k)))
        n += k
    layers.append([n])
    n += 1
    covers = set()
    for lo, hi in zip(layers, layers[1:]):
        for b in hi:
            for a in rng.sample(lo, rng.randint(1, len(lo))):
                covers.add((a, b))
        for a in lo:
            if not any((a, b) in covers for b in hi):
                covers.add((a, rng.choice(hi)))
    return build(n, sorted(covers))


def random_cm_posets(rng: random.Random, count: int, max_rank: int = 5,
                     max_attempts: int = 100000) -> Iterator[Poset]:
    """Random graded posets kept only when homology says they are Cohen-Macaulay."""
    found = 0
    for _ in range(max_attempts):
        if found == count:
            return
        P = random_graded_poset(rng, max_rank)
        if is_cohen_macaulay(P):
            found += 1
            yield P
    raise HarnessError(f"only {found} of {count} Cohen-Macaulay posets after {max_attempts} attempts")


def _eulerian_bases() -> List[Poset]:
    return ([boolean(k) for k in (2, 3, 4)]
            + [polygon_face_lattice(m) for m in (3, 4, 5, 6)]
            + [cube_face_lattice(3), crosspolytope_face_lattice(3)])


def random_eulerian_posets(rng: random.Random, count: int, max_elements: int = 120,
                           max_rank: int = 6) -> Iterator[Poset]:
    """Face lattices of polytopes built from simplices, cubes, cross-polytopes
    and polygons by pyramids, prisms and products (all Eulerian)."""
    bases = _eulerian_bases()
    ops = ("pyramid", "prism", "product", "base")
    found = 0
    while found < count:
        P = rng.choice(bases)
        for _ in range(rng.randint(1, 2)):
            op = rng.choice(ops)
            if op == "pyramid":
                Q = pyramid(P)
            elif op == "prism":
                Q = prism(P)
            elif op == "product":
                Q = diamond_product(P, rng.choice(bases[:6]))
            else:
                continue
            if Q.n <= max_elements and _rank(Q) <= max_rank:
                P = Q
        found += 1
        yield P


def _rank(P: Poset) -> int:
    rho = graded_rank(P)
    b, t = P.require_bounded()
    return rho(b, t)


def bruhat_instances(n: int) -> Iterator[dict]:
    from .coxeter import all_intervals, symmetric_group

    G = symmetric_group(n)
    for u, v in all_intervals(G):
        if u != v:
            yield {"kind": "bruhat", "group": f"S{n}", "u": G.word_str(u), "v": G.word_str(v)}


def generate(generator: str, count: Optional[int], seed: int, max_rank: int = 5, n: int = 4) -> List[dict]:
    rng = random.Random(seed)
    if generator == "random-graded":
        posets = random_cm_posets(rng, 100 if count is None else count, max_rank)
    elif generator == "random-eulerian":
        posets = random_eulerian_posets(rng, 50 if count is None else count)
    elif generator == "bruhat":
        inst = list(bruhat_instances(n))
        return inst if count is None else inst[:count]
    else:
        raise HarnessError(f"unknown generator {generator!r}; expected one of {', '.join(GENERATORS)}")
    return [{"kind": "poset", "poset": P.to_json()} for P in posets]


def instance_hash(instance: dict) -> str:
    blob = json.dumps(instance, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# ----------------------------------------------------------------------
# evaluation


def _top_chow(P: Poset, rho: RankFn, kernel: str) -> Poly:
    b, t = P.require_bounded()
    if kernel == "chi":
        chi = characteristic(P, rho)
        fn = chi.get
    elif kernel == "eps":
        def fn(s, w):
            return X_MINUS_1 ** rho(s, w)
    else:
        raise HarnessError(f"kernel {kernel!r} needs a Bruhat instance")
    return chow_column(P, rho, fn, t)[b]


def evaluate(conj_id: str, instance: dict) -> dict:
    """Pure per-instance computation: Chow polynomial and its property verdicts."""
    conj = CONJECTURES[conj_id]
    if instance["kind"] == "bruhat":
        from .coxeter import bruhat_interval, chow_by_algebra, group_from_name

        G = group_from_name(instance["group"])
        u, v = G.from_word(instance["u"]), G.from_word(instance["v"])
        I = bruhat_interval(G, u, v)
        P, rho, r = I.poset, I.rho, I.rank
        if conj.kernel == "coxeter":
            H = chow_by_algebra(G, u, v)
        else:
            H = _top_chow(P, rho, conj.kernel)
    else:
        if conj.kernel == "coxeter":
            raise HarnessError(f"conjecture {conj_id} needs the bruhat generator")
        P, rho = from_json(instance["poset"])
        rho = rho or graded_rank(P)
        r = _rank(P)
        H = _top_chow(P, rho, conj.kernel)
    rep = analyze(H, center_hint=Fraction(r - 1, 2))
    verdicts = {
        "nonnegative": rep.is_nonnegative,
        "symmetric": rep.is_symmetric,
        "unimodal": rep.is_unimodal,
        "gamma_positive": rep.is_gamma_positive,
        "real_rooted": rep.is_real_rooted,
    }
    return {"elements": P.n, "rank": r, "poly": H.to_json(), **verdicts,
            "counterexample": not verdicts[conj.prop]}


def _evaluate_star(args) -> dict:
    return evaluate(*args)


@dataclass
class HarnessResult:
    conjecture: Conjecture
    generator: str
    rows: List[dict]
    artifacts: List[str]

    @property
    def counterexamples(self) -> int:
        return sum(1 for r in self.rows if r["counterexample"])

    def summary(self) -> dict:
        return {"conjecture": self.conjecture.ident, "statement": self.conjecture.statement,
                "generator": self.generator, "instances": len(self.rows),
                "counterexamples": self.counterexamples}


def run(conj_id: str, generator: Optional[str] = None, count: Optional[int] = None, seed: int = 0,
        jobs: int = 1, artifacts_dir: Optional[str] = None, max_rank: int = 5, n: int = 4) -> HarnessResult:
    if conj_id not in CONJECTURES:
        raise HarnessError(f"unknown conjecture {conj_id!r}; expected one of {', '.join(CONJECTURES)}")
    conj = CONJECTURES[conj_id]
    generator = generator or conj.generator
    instances = generate(generator, count, seed, max_rank=max_rank, n=n)
    work = [(conj_id, inst) for inst in instances]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_evaluate_star, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_evaluate_star(w) for w in work]

    rows, artifacts = [], []
    for i, (inst, res) in enumerate(zip(instances, results)):
        h = instance_hash(inst)
        rows.append({"index": i, "conjecture": conj_id, "generator": generator, "hash": h, **res})
        if res["counterexample"] and artifacts_dir:
            os.makedirs(artifacts_dir, exist_ok=True)
            path = os.path.join(artifacts_dir, f"counterexample_{conj_id}_{h}.json")
            with open(path, "w") as fh:
                json.dump({"conjecture": conj_id, "instance": inst, "result": res}, fh, indent=2, sort_keys=True)
            artifacts.append(path)
    return HarnessResult(conj, generator, rows, artifacts)


def ledger_csv(rows: List[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=LEDGER_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "poly": " ".join(str(a) for a in r["poly"])})
    return buf.getvalue()


def ledger_json(result: HarnessResult) -> str:
    return json.dumps({"summary": result.summary(), "rows": result.rows}, indent=2)
