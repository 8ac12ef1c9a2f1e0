"""``chow`` command line: compute, coxeter, cd, cm, matroid, harness, verify."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .poly import analyze

EXIT_OK, EXIT_INPUT, EXIT_ASSERT = 0, 1, 2

WHATS = ("H", "F", "G", "Z", "f", "g", "kappa")
PROPS = ("nonnegative", "symmetric", "unimodal", "gamma-positive", "real-rooted")


class CliError(Exception):
    pass


def _emit(obj, fmt: str, out) -> None:
    if fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        buf = io.StringIO()
        keys = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: " ".join(map(str, v)) if isinstance(v, list) else
                        json.dumps(v) if isinstance(v, dict) else v for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        out.write(dumps(obj) + "\n")


def dumps(obj, indent: int = 0) -> str:
    """JSON with nested containers indented but flat lists kept on one line."""
    pad = "  " * (indent + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        if all(isinstance(v, list) and not any(isinstance(x, (dict, list)) for x in v) for v in obj):
            return "[" + ", ".join(json.dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj)


def _load_poset(path: str):
    from .poset import from_json, graded_rank

    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON ({e})")
    P, rho = from_json(data)
    return P, rho or graded_rank(P)


def _prop_ok(rep, prop: str) -> bool:
    return {
        "nonnegative": rep.is_nonnegative,
        "symmetric": rep.is_symmetric,
        "unimodal": rep.is_unimodal,
        "gamma-positive": rep.is_gamma_positive,
        "real-rooted": rep.is_real_rooted,
    }[prop]


# ----------------------------------------------------------------------
# commands


def cmd_compute(args, out) -> int:
    from .incidence import KernelData
    from .kernels import from_spec

    P, rho = _load_poset(args.poset)
    kappa = from_spec(args.kernel, P, rho)
    d = KernelData(kappa)
    whats = [w for spec in args.what for w in spec.split(",")]
    for w in whats:
        if w not in WHATS:
            raise CliError(f"unknown --what {w!r}; expected one of {', '.join(WHATS)}")

    if args.all_intervals:
        pairs = [(s, t) for s, t in P.pairs() if s != t]
    elif args.interval:
        pairs = [(P.resolve(args.interval[0]), P.resolve(args.interval[1]))]
        if not P.leq(*pairs[0]):
            raise CliError(f"{args.interval[0]} is not below {args.interval[1]}")
    else:
        pairs = [P.require_bounded()]

    failed = []
    rows = []
    for s, t in pairs:
        row = {}
        if len(pairs) > 1 or args.interval:
            row["interval"] = [P.labels[s], P.labels[t]]
        reports = {}
        for w in whats:
            p = d.get(w)[(s, t)]
            row[w] = p.to_json()
            if args.report or args.assert_:
                center = Fraction(rho(s, t) - 1, 2) if w == "H" else (
                    Fraction(rho(s, t), 2) if w in ("F", "G", "Z") else None)
                reports[w] = analyze(p, center)
        if args.report:
            row["report"] = {w: r.to_json() for w, r in reports.items()}
        for prop in args.assert_ or ():
            for w, r in reports.items():
                if not _prop_ok(r, prop):
                    failed.append(f"{w} on [{P.labels[s]}, {P.labels[t]}] is not {prop}: {r.poly}")
        rows.append(row)
    _emit(rows if len(rows) > 1 else rows[0], args.format, out)
    if failed:
        for msg in failed:
            print(f"assertion failed: {msg}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def cmd_coxeter(args, out) -> int:
    from .cdindex import complete_cd_from_paths, gamma_from_complete_cd
    from .coxeter import (bruhat_interval, chow_by_algebra, chow_by_paths, group_from_name, path_census,
                          r_tilde, reflection_order, reflection_order_from_words)

    G = group_from_name(args.group)
    u, v = G.from_word(args.u), G.from_word(args.v)
    I = bruhat_interval(G, u, v)
    if args.order:
        try:
            with open(args.order) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise CliError(f"no such file: {args.order}")
        order = reflection_order_from_words(G, data["order"] if isinstance(data, dict) else data)
    else:
        order = reflection_order(G)
    res = {"group": G.name, "u": G.word_str(u), "v": G.word_str(v), "rank": I.rank, "elements": len(I.ids)}
    for w in args.what:
        if w == "R":
            res["R"] = G.R(u, v).to_json()
        elif w == "Rtilde":
            res["Rtilde"] = r_tilde(G, u, v).to_json()
        elif w == "H":
            H = chow_by_algebra(G, u, v)
            res["H"] = H.to_json()
            res["H_paths"] = chow_by_paths(G, u, v, order).to_json()
        elif w == "cd":
            psi = complete_cd_from_paths(G, u, v, order)
            res["complete_cd"] = psi.to_json()
            res["gamma"] = gamma_from_complete_cd(psi, I.rank).to_json()
        elif w == "census":
            res["census"] = [[l, k, c] for (l, k), c in sorted(path_census(G, u, v, order).items())]
        else:
            raise CliError(f"unknown --what {w!r}")
    _emit(res, args.format, out)
    return EXIT_OK


def cmd_cd(args, out) -> int:
    from .cdindex import NotInCDSubalgebra, ab_index, cd_index, gal_gamma
    from .poset import flag_vectors

    P, rho = _load_poset(args.poset)
    res = {"ab_index": ab_index(flag_vectors(P, rho)).to_json()}
    try:
        phi = cd_index(P, rho)
    except NotInCDSubalgebra as e:
        res["cd_index"] = None
        res["error"] = str(e)
    else:
        res["cd_index"] = phi.to_json()
        res["cd_string"] = str(phi)
        res["gamma"] = gal_gamma(phi).to_json()
    _emit(res, args.format, out)
    return EXIT_OK


def cmd_cm(args, out) -> int:
    from .homology import is_cohen_macaulay

    P, rho = _load_poset(args.poset)
    r = is_cohen_macaulay(P, rho)
    res = {"cohen_macaulay": r.is_cm}
    if not r.is_cm:
        s, t = r.interval
        res["interval"] = [P.labels[s], P.labels[t]]
        res["dimension"] = r.dimension
        res["reduced_betti"] = {str(k): v for k, v in r.betti.items()}
    _emit(res, args.format, out)
    return EXIT_OK


def cmd_matroid(args, out) -> int:
    from .matroid import chi_G, chi_chow, from_json, fy_hilbert, fy_hilbert_augmented, lattice_of_flats

    try:
        with open(args.matroid) as fh:
            data = json.load(fh)
        M = from_json(data.get("matroid", data))
    except FileNotFoundError:
        raise CliError(f"no such file: {args.matroid}")
    P, rho = lattice_of_flats(M)
    res = {"elements": M.n, "rank": rho(*P.require_bounded()),
           "flats": P.n, "H": chi_chow(P, rho).to_json(), "G": chi_G(P, rho).to_json(),
           "fy_hilbert": fy_hilbert(M).to_json(), "fy_hilbert_augmented": fy_hilbert_augmented(M).to_json()}
    _emit(res, args.format, out)
    return EXIT_OK


def cmd_harness(args, out) -> int:
    from . import harness

    res = harness.run(args.conjecture, args.generator, args.count, args.seed, args.jobs,
                      args.artifacts, max_rank=args.max_rank, n=args.n)
    if args.format == "csv":
        text = harness.ledger_csv(res.rows)
    else:
        text = harness.ledger_json(res) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    s = res.summary()
    print(f"conjecture {s['conjecture']}: {s['instances']} instances, {s['counterexamples']} counterexamples",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from . import verify

    try:
        rep = verify.run(args.paths)
    except FileNotFoundError as e:
        raise CliError(f"no such file: {e}")
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for f in rep.failures:
        print(f"FAIL {f}", file=sys.stderr)
    _emit(rep.to_json() if args.format == "json" else
          [{"fixture": f.fixture, "module": f.module, "identity": f.identity,
            "interval": " ".join(f.interval) if f.interval else "", "detail": f.detail} for f in rep.failures],
          args.format, out)
    return EXIT_OK if rep.ok else EXIT_ASSERT


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chow", description="Chow functions of posets and Bruhat intervals.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    # the global options are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="KLS, Chow and Z functions of a kernel on a poset")
    c.add_argument("poset")
    c.add_argument("--kernel", default="chi", help="chi | eps | adhoc:m=<int> | file:<path>")
    c.add_argument("--what", action="append", default=None, help="H,F,G,Z,f,g,kappa (repeatable)")
    c.add_argument("--interval", nargs=2, metavar=("S", "T"))
    c.add_argument("--all-intervals", action="store_true")
    c.add_argument("--report", action="store_true")
    c.add_argument("--assert", dest="assert_", action="append", choices=PROPS)
    c.set_defaults(func=cmd_compute)

    x = sub.add_parser("coxeter", parents=[common], help="R-polynomials, Chow polynomial and paths of a Bruhat interval")
    x.add_argument("--group", required=True, help="Sn or I2:m")
    x.add_argument("--u", default="", help="reduced word, e.g. '1 2 1'; empty for the identity")
    x.add_argument("--v", required=True, help="reduced word, or w0")
    x.add_argument("--order", help="JSON reflection order (list of words)")
    x.add_argument("--what", action="append", choices=("R", "Rtilde", "H", "cd", "census"))
    x.set_defaults(func=cmd_coxeter)

    d = sub.add_parser("cd", parents=[common], help="ab-index and cd-index of a poset")
    d.add_argument("poset")
    d.set_defaults(func=cmd_cd)

    m = sub.add_parser("cm", parents=[common], help="Cohen-Macaulay test via rational homology")
    m.add_argument("poset")
    m.set_defaults(func=cmd_cm)

    mt = sub.add_parser("matroid", parents=[common], help="Chow polynomials of a matroid's lattice of flats")
    mt.add_argument("matroid")
    mt.set_defaults(func=cmd_matroid)

    h = sub.add_parser("harness", parents=[common], help="report-only conjecture search")
    h.add_argument("--conjecture", required=True, choices=("1.2", "1.3", "1.4", "1.5"))
    h.add_argument("--generator", choices=("random-graded", "random-eulerian", "bruhat"))
    h.add_argument("--count", type=int)
    h.add_argument("--max-rank", type=int, default=5)
    h.add_argument("--n", type=int, default=4, help="symmetric group for the bruhat generator")
    h.add_argument("--out")
    h.add_argument("--artifacts", help="directory for counterexample JSON")
    h.set_defaults(func=cmd_harness)

    v = sub.add_parser("verify", parents=[common], help="run the identity suite on a fixture corpus")
    v.add_argument("paths", nargs="*", help="fixture files or directories (default: bundled corpus)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "what", "x") is None:
        args.what = ["H"]
    try:
        return args.func(args, out)
    except CliError as e:
        print(f"chow: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as e:
        print(f"chow: error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
