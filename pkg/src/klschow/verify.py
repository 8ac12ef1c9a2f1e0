"""Run every proved identity over a fixture corpus.

A fixture is a JSON file of one of four kinds: a poset (the default), a
Bruhat interval (``"type": "bruhat"``), a matroid (``"type": "matroid"``)
or a reflection order (``"type": "reflection-order"``).  An optional
``"expected"`` block pins top-interval values; any disagreement, and any
failing identity, is reported with the module, identity and interval.
"""
from __future__ import annotations

import glob
import json
import os
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .incidence import (IdentityReport, KernelData, check_kernel, ncd_check, structure_check,
                        unimodality_transfer_check)
from .kernels import from_spec
from .poly import Poly, gamma_extract
from .poset import Poset, RankFn, from_json, graded_rank, is_eulerian, order_complex_h

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


@dataclass
class Failure:
    fixture: str
    module: str
    identity: str
    interval: Optional[Tuple[str, str]] = None
    detail: str = ""

    def __str__(self) -> str:
        where = f" on [{self.interval[0]}, {self.interval[1]}]" if self.interval else ""
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.fixture}: {self.module}/{self.identity}{where}{extra}"


@dataclass
class VerifyReport:
    fixtures: List[str] = field(default_factory=list)
    checks: int = 0
    failures: List[Failure] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "fixtures": self.fixtures,
            "checks": self.checks,
            "failures": [{"fixture": f.fixture, "module": f.module, "identity": f.identity,
                          "interval": list(f.interval) if f.interval else None, "detail": f.detail}
                         for f in self.failures],
            "warnings": self.warnings,
        }


class _Ctx:
    def __init__(self, report: VerifyReport, name: str):
        self.report, self.name = report, name

    def check(self, module: str, identity: str, ok: bool, interval=None, detail: str = "") -> None:
        self.report.checks += 1
        if not ok:
            self.report.failures.append(Failure(self.name, module, identity, interval, detail))

    def identities(self, module: str, rep: IdentityReport, P: Poset, prefix: str = "") -> None:
        for ident, bad in rep.failures.items():
            self.report.checks += 1
            for s, t in bad[:3]:
                self.report.failures.append(Failure(self.name, module, prefix + ident, (P.labels[s], P.labels[t])))

    def expect(self, key: str, got: Poly, want) -> None:
        want_p = Poly.from_json(want)
        self.check("fixture", f"expected-{key}", got == want_p, detail=f"computed {got}, fixture says {want_p}")


def collect(paths: Optional[Sequence[str]] = None) -> List[str]:
    paths = list(paths) if paths else [FIXTURE_DIR]
    files = []
    for p in paths:
        if os.path.isdir(p):
            files.extend(sorted(glob.glob(os.path.join(p, "*.json"))))
        elif os.path.exists(p):
            files.append(p)
        else:
            raise FileNotFoundError(p)
    return files


def run(paths: Optional[Sequence[str]] = None) -> VerifyReport:
    report = VerifyReport()
    files = collect(paths)
    if not files:
        report.warnings.append("empty fixture corpus: nothing to verify")
    for path in files:
        name = os.path.splitext(os.path.basename(path))[0]
        report.fixtures.append(name)
        try:
            with open(path) as fh:
                data = json.load(fh)
            verify_fixture(name, data, report)
        except (ValueError, ArithmeticError, KeyError, TypeError) as e:
            # a fixture that cannot even be evaluated is one failure, not a crash
            report.checks += 1
            report.failures.append(Failure(name, "fixture", "evaluate", detail=f"{type(e).__name__}: {e}"))
    return report


def verify_fixture(name: str, data: dict, report: VerifyReport) -> None:
    ctx = _Ctx(report, name)
    kind = data.get("type", "poset")
    if kind == "poset":
        _verify_poset(ctx, data)
    elif kind == "bruhat":
        _verify_bruhat(ctx, data)
    elif kind == "matroid":
        _verify_matroid(ctx, data)
    elif kind == "reflection-order":
        _verify_order(ctx, data)
    else:
        report.warnings.append(f"{name}: unknown fixture type {kind!r}, skipped")


def _top_pair(P: Poset) -> Tuple[int, int]:
    return P.require_bounded()


def _kernel_suite(ctx: _Ctx, spec: str, kappa, P: Poset, rho: RankFn, expected: dict) -> KernelData:
    chk = check_kernel(kappa)
    ctx.check("incidence", f"{spec}-kernel", chk.is_kernel, detail=chk.reason)
    d = KernelData(kappa, check=False)
    ctx.identities("incidence", structure_check(kappa, d), P, prefix=f"{spec}-")
    ctx.identities("incidence", ncd_check(kappa, d), P, prefix=f"{spec}-")
    tr = unimodality_transfer_check(kappa, d)
    ctx.check("incidence", f"{spec}-unimodality-transfer", tr.ok, detail=", ".join(tr.violations))
    b, t = _top_pair(P)
    for what, want in expected.items():
        if what == "gamma":
            got = gamma_extract(d.H[(b, t)], rho(b, t) - 1)
            ctx.expect(f"{spec}-gamma", got if got is not None else Poly(), want)
        else:
            ctx.expect(f"{spec}-{what}", d.get(what)[(b, t)], want)
    return d


def _verify_poset(ctx: _Ctx, data: dict) -> None:
    from .cdindex import NotInCDSubalgebra, cd_index, gal_gamma
    from .homology import is_cohen_macaulay
    from .matroid import chi_chow_identities

    P, rho = from_json(data)
    rho = rho or graded_rank(P)
    expected = data.get("expected", {})
    eul, _ = is_eulerian(P, rho)
    if "eulerian" in data:
        ctx.check("poset", "eulerian-flag", eul == bool(data["eulerian"]))
    specs = ["chi"] + (["eps"] if eul else [])
    specs += [k for k in expected if k not in specs]
    b, t = _top_pair(P)
    r = rho(b, t)
    for spec in specs:
        try:
            kappa = from_spec(spec, P, rho)
        except (ValueError, ArithmeticError) as e:
            ctx.check("kernels", f"{spec}-construct", False, detail=str(e))
            continue
        d = _kernel_suite(ctx, spec, kappa, P, rho, expected.get(spec, {}))
        if spec == "eps":
            H = d.H[(b, t)]
            ctx.check("poset", "eps-chow-equals-order-complex-h", H == order_complex_h(P, rho),
                      detail=f"eps-Chow {H}")
            try:
                phi = cd_index(P, rho)
            except NotInCDSubalgebra as e:
                ctx.check("cdindex", "cd-index-exists", False, detail=str(e))
            else:
                g = gamma_extract(H, r - 1)
                ctx.check("cdindex", "cd-gamma", g is not None and gal_gamma(phi) == g)
    chi_rep = chi_chow_identities(P, rho)
    for ident, ok in chi_rep.checks.items():
        ctx.check("matroid", f"chi-{ident}", ok, detail=chi_rep.details.get(ident, ""))
    if "cm" in data:
        ctx.check("homology", "cohen-macaulay", bool(is_cohen_macaulay(P, rho)) == bool(data["cm"]))


def _verify_bruhat(ctx: _Ctx, data: dict) -> None:
    from .cdindex import (NcPoly, cd_index, chow_from_complete_cd, complete_cd_from_paths,
                          gamma_from_complete_cd)
    from .coxeter import (bruhat_interval, chow_by_algebra, chow_by_paths, group_from_name, path_census,
                          r_tilde, r_tilde_by_paths, reflection_order, reflection_order_from_words,
                          substitute_r_tilde)
    from .kernels import eulerian

    G = group_from_name(data["group"])
    u, v = G.from_word(data.get("u", "")), G.from_word(data["v"])
    order = reflection_order_from_words(G, data["order"]) if data.get("order") else reflection_order(G)
    expected = data.get("expected", {})
    I = bruhat_interval(G, u, v)
    r = I.rank
    H = chow_by_algebra(G, u, v)
    H_des = chow_by_paths(G, u, v, order, variant="des")
    H_asc = chow_by_paths(G, u, v, order, variant="asc")
    ctx.check("coxeter", "chow-paths-des", H == H_des, detail=f"{H} vs {H_des}")
    ctx.check("coxeter", "chow-paths-asc", H == H_asc, detail=f"{H} vs {H_asc}")
    if "H" in expected:
        ctx.expect("H", H, expected["H"])
    if data.get("light"):
        return

    kappa = I.r_polynomials()
    d = _kernel_suite(ctx, "R", kappa, I.poset, I.rho, {})
    ctx.check("coxeter", "chow-algebra-full-table", d.H[(0, len(I.ids) - 1)] == H)
    psi = complete_cd_from_paths(G, u, v, order)
    ctx.check("cdindex", "chow-from-complete-cd", chow_from_complete_cd(psi, r) == H)
    gam = gamma_extract(H, r - 1)
    ctx.check("cdindex", "gamma-from-complete-cd", gam is not None and gamma_from_complete_cd(psi, r) == gam)
    ctx.check("cdindex", "complete-cd-top-is-cd-index", psi.top_component() == cd_index(I.poset, I.rho))
    Rt = r_tilde(G, u, v)
    ctx.check("coxeter", "r-tilde-substitution", substitute_r_tilde(Rt, r) == G.R(u, v))
    ctx.check("coxeter", "r-tilde-paths", r_tilde_by_paths(G, u, v, order) == Rt)
    eps_H = KernelData(eulerian(I.poset, I.rho), check=False).H.top()
    ctx.check("poset", "eps-chow-equals-order-complex-h", eps_H == order_complex_h(I.poset, I.rho))

    if "R" in expected:
        ctx.expect("R", G.R(u, v), expected["R"])
    if "Rtilde" in expected:
        ctx.expect("Rtilde", Rt, expected["Rtilde"])
    if "gamma" in expected:
        ctx.expect("gamma", gam if gam is not None else Poly(), expected["gamma"])
    if "census" in expected:
        got = sorted([l, k, c] for (l, k), c in path_census(G, u, v, order).items())
        ctx.check("fixture", "expected-census", got == sorted(expected["census"]), detail=f"computed {got}")
    if "complete_cd" in expected:
        want = NcPoly.from_json(expected["complete_cd"])
        ctx.check("fixture", "expected-complete_cd", psi == want, detail=f"computed {psi}")


def _verify_matroid(ctx: _Ctx, data: dict) -> None:
    from .matroid import chi_G, chi_chow, chi_chow_identities, from_json as matroid_json
    from .matroid import fy_hilbert, fy_hilbert_augmented, lattice_of_flats

    M = matroid_json(data["matroid"])
    ctx.check("matroid", "axioms", M.check_axioms())
    P, rho = lattice_of_flats(M)
    H = chi_chow(P, rho)
    ctx.check("matroid", "fy-hilbert-equals-chi-chow", fy_hilbert(M) == H, detail=f"{fy_hilbert(M)} vs {H}")
    ctx.check("matroid", "fy-augmented-equals-chi-G", fy_hilbert_augmented(M) == chi_G(P, rho))
    rep = chi_chow_identities(P, rho)
    for ident, ok in rep.checks.items():
        ctx.check("matroid", f"chi-{ident}", ok, detail=rep.details.get(ident, ""))
    for what, want in data.get("expected", {}).items():
        got = H if what == "H" else chi_G(P, rho)
        ctx.expect(what, got, want)


def _verify_order(ctx: _Ctx, data: dict) -> None:
    from .coxeter import all_intervals, chow_by_algebra, chow_by_paths, group_from_name, reflection_order_from_words

    G = group_from_name(data["group"])
    order = reflection_order_from_words(G, data["order"])
    bad = None
    for u, v in all_intervals(G):
        if chow_by_paths(G, u, v, order) != chow_by_algebra(G, u, v):
            bad = (G.word_str(u), G.word_str(v))
            break
    ctx.check("coxeter", "order-gives-chow-on-all-intervals", bad is None, interval=bad)
