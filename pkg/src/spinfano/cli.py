"""Command-line front end: ``spinfano <command> ...``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on usage
errors (bad arguments, unknown case ids, malformed catalogs).
"""

from __future__ import annotations

import argparse
import random
import sys
from math import factorial
from typing import List, Optional, Sequence

from . import lie, linalg, schubert, suites
from .catalog import CatalogError, load_catalog, select
from .spinor import kills
from .suites import Check, Report

USAGE = 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON report")
    fmt.add_argument("--tsv", action="store_true", default=argparse.SUPPRESS, help="tab-separated report")
    p.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS,
                   help="show provenance and details under each check")
    p.add_argument("--catalog", metavar="FILE", default=argparse.SUPPRESS, help="catalog file replacing the builtin one")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="spinfano", parents=[common],
                                 description="Exact checks for zero loci of spinor sections on orthogonal Grassmannians.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    cases = sub.add_parser("cases", parents=[common], help="inspect the catalog")
    cases.add_argument("action", choices=["list"])

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, choices=list(suites.SUITES) + ["all"])
    v.add_argument("--case", action="append", default=[], metavar="ID", help="restrict to a case (repeatable)")
    v.add_argument("--p-budget", type=int, default=None, metavar="B", help="cap on p for Hodge rows in the betti suite")

    b = sub.add_parser("bott", parents=[common], help="Bott's theorem for one weight on OG(K,M)")
    b.add_argument("k", type=int, metavar="K")
    b.add_argument("m", type=int, metavar="M")
    b.add_argument("weight", metavar="WEIGHT", help="e.g. w2-w3+w4, or doubled epsilon coordinates 2,0,0,-2")
    b.add_argument("--component", choices=["+", "-"], default=None, help="family for OG(n,2n)")

    s = sub.add_parser("stabilizer", parents=[common], help="stabilizer and orbit dimensions for a case")
    s.add_argument("--case", required=True, metavar="ID")
    s.add_argument("--random-witness", action="store_true", help="also move the witness by a random stabilizer element")
    s.add_argument("--seed", type=int, default=None, metavar="N")

    t = sub.add_parser("betti", parents=[common], help="even Betti numbers of a case")
    t.add_argument("--case", required=True, metavar="ID")
    t.add_argument("--p-budget", type=int, default=None, metavar="B")

    d = sub.add_parser("degree", parents=[common], help="degree of the (OG(n,2n+1), wedge2 U^vee) locus")
    d.add_argument("--n", type=int, required=True)

    g = sub.add_parser("segre-check", parents=[common], help="seeded Pfaffian-Segre factorization samples")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--count", type=int, default=suites.SEGRE_SAMPLES)
    return ap


# ---- commands -----------------------------------------------------------------------------

def _catalog(args):
    try:
        return load_catalog(getattr(args, "catalog", None))
    except OSError as e:
        raise UsageError(f"cannot read catalog: {e}")
    except CatalogError as e:
        raise UsageError(f"catalog error: {e}")


def _one(args, cid: str):
    try:
        return select(_catalog(args), [cid])[0]
    except KeyError as e:
        raise UsageError(e.args[0])


def cmd_cases(args) -> int:
    rows = []
    for c in select(_catalog(args), ()):
        rows.append((c.id, c.kind, c.space.name if c.space else f"m={c.m}", c.bundle or "-",
                     " ".join(c.flags) or "-", c.identified or "-"))
    if getattr(args, "json", False):
        import json
        keys = ("id", "kind", "space", "bundle", "flags", "identified")
        print(json.dumps([dict(zip(keys, r)) for r in rows], indent=2))
        return 0
    if getattr(args, "tsv", False):
        print("id\tkind\tspace\tbundle\tflags\tidentified")
        for r in rows:
            print("\t".join(r))
        return 0
    heads = ("id", "kind", "space", "bundle", "flags", "identified")
    w = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(heads)]
    line = "  ".join(f"{{:<{x}}}" for x in w)
    print(line.format(*heads).rstrip())
    for r in rows:
        print(line.format(*r).rstrip())
    print(f"\n{len(rows)} cases")
    return 0


def cmd_verify(args) -> int:
    try:
        rep = suites.run_suite(args.suite, args.case, _catalog(args), p_budget=args.p_budget)
    except KeyError as e:
        raise UsageError(e.args[0])
    return _emit(args, rep)


def cmd_bott(args) -> int:
    from .weights import bott, og_space, parse_weight
    try:
        X = og_space(args.k, args.m, args.component)
        text = args.weight
        if "," in text:
            lam = tuple(int(x) for x in text.split(","))
        else:
            lam = parse_weight(text, X.rs)
        r = bott(X, lam)
    except ValueError as e:
        raise UsageError(str(e))
    rep = Report("bott", [Check(X.name, f"bott {args.weight}", "-", str(r), suites.PASS,
                                "Borel-Weil-Bott", f"doubled epsilon coordinates {list(lam)}")])
    if not (getattr(args, "json", False) or getattr(args, "tsv", False)):
        print(f"{X.name}  {args.weight}: {r}")
        return 0
    return _emit(args, rep)


def cmd_stabilizer(args) -> int:
    c = _one(args, args.case)
    if c.model is None or not c.spinors:
        raise UsageError(f"{c.id} has no spinor data")
    checks = suites.stabilizer_checks(c)
    if args.random_witness:
        if args.seed is None:
            raise UsageError("--random-witness needs --seed")
        if c.witness is None:
            raise UsageError(f"{c.id} has no witness")
        checks.extend(_random_witness_checks(c, args.seed))
    return _emit(args, Report("stabilizer", checks))


def _random_witness_checks(c, seed: int) -> List[Check]:
    rng = random.Random(seed)
    s = lie.lie_stabilizer(c.algebra(), c.ambient_constraint())
    try:
        g = lie.random_group_element(s, rng)
    except ValueError as e:
        raise UsageError(f"no random witness for {c.id}: {e}")
    W = [linalg.matvec(g, w) for w in c.witness]
    out = suites.stabilizer_checks(c, witness=W, tag=".random")
    out = [x for x in out if x.check != "ambient-stab"]
    if c.bundle is None:
        ok = all(kills(W, d) for d in c.spinors)
        out.append(Check(c.id, "witness-kills.random", "true", "true" if ok else "false",
                         suites.PASS if ok else suites.FAIL, f"seed {seed}"))
    return [Check(x.case, x.check, x.expected, x.computed, x.status, x.source,
                  (x.detail + "; " if x.detail else "") + f"witness moved by exp of stabilizer, seed {seed}")
            for x in out]


def cmd_betti(args) -> int:
    c = _one(args, args.case)
    if c.bundle is None or "betti" not in c.expect:
        raise UsageError(f"{c.id} has no Betti data")
    return _emit(args, Report("betti", suites.betti_checks(c, args.p_budget)))


def cmd_degree(args) -> int:
    if not 1 <= args.n <= 9:
        raise UsageError("--n must lie in 1..9")
    d = schubert.staircase_degree(args.n)
    chk = Check(f"OG({args.n},{2 * args.n + 1})", "degree", str(factorial(args.n)), str(d),
                suites.PASS if d == factorial(args.n) else suites.FAIL, "d = n!",
                "coefficient of the staircase class in sigma_delta(n-1) sigma_1^n")
    return _emit(args, Report("degree", [chk]))


def cmd_segre(args) -> int:
    if not 1 <= args.n <= 8 or args.count < 1:
        raise UsageError("--n must lie in 1..8 and --count be positive")
    ok, cnt = schubert.segre_batch(args.n, args.seed, args.count)
    chk = Check(f"segre-n{args.n}", "segre-check", f"{cnt}/{cnt}", f"{ok}/{cnt}",
                suites.PASS if ok == cnt else suites.FAIL, "Pfaffian factorization", f"seed {args.seed}")
    return _emit(args, Report("segre-check", [chk]))


def _emit(args, rep: Report) -> int:
    if getattr(args, "json", False):
        sys.stdout.write(rep.to_json())
    elif getattr(args, "tsv", False):
        sys.stdout.write(rep.to_tsv())
    else:
        sys.stdout.write(rep.to_table(verbose=getattr(args, "verbose", False)))
    return rep.exit_status


COMMANDS = {
    "cases": cmd_cases,
    "verify": cmd_verify,
    "bott": cmd_bott,
    "stabilizer": cmd_stabilizer,
    "betti": cmd_betti,
    "degree": cmd_degree,
    "segre-check": cmd_segre,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"spinfano: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
