"""Verification suites over the catalog.

Each suite yields check records ``(case, check, expected, computed,
status)``; a :class:`Report` sorts them by case and check so that output
is byte-identical across runs.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import koszul, lie, linalg, schubert
from .catalog import CaseDescriptor, load_catalog, select
from .spinor import basis_vector, kills, pairing
from .weights import bott, og_space, parse_weight

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown-expected"
DISCREPANCY = "paper-discrepancy"
STATUSES = (PASS, FAIL, UNKNOWN, DISCREPANCY)


@dataclass(frozen=True)
class Check:
    case: str
    check: str
    expected: str
    computed: str
    status: str
    source: str = ""
    detail: str = ""


@dataclass
class Report:
    suite: str
    checks: List[Check] = field(default_factory=list)

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: (c.case, c.check))

    def counts(self) -> Dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def exit_status(self) -> int:
        return 1 if any(c.status == FAIL for c in self.checks) else 0

    def to_tsv(self) -> str:
        lines = ["case\tcheck\texpected\tcomputed\tstatus"]
        lines += [f"{c.case}\t{c.check}\t{c.expected}\t{c.computed}\t{c.status}" for c in self.checks]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"suite": self.suite, "checks": [asdict(c) for c in self.checks],
                           "summary": self.counts(), "exit_status": self.exit_status}, indent=2) + "\n"

    def to_table(self, verbose: bool = False) -> str:
        heads = ("case", "check", "expected", "computed", "status")
        rows = [(c.case, c.check, c.expected, c.computed, c.status) for c in self.checks]
        widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(heads)]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        out = [fmt.format(*heads), fmt.format(*("-" * w for w in widths))]
        for c, r in zip(self.checks, rows):
            out.append(fmt.format(*r).rstrip())
            if verbose:
                if c.source:
                    out.append(f"    source: {c.source}")
                if c.detail:
                    out.append(f"    detail: {c.detail}")
        n = self.counts()
        out.append("")
        out.append(f"{self.suite}: " + ", ".join(f"{n[s]} {s}" for s in STATUSES))
        return "\n".join(out) + "\n"


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join("?" if x is None else str(x) for x in v)
    return str(v)


def _cmp(case: str, check: str, expected, computed, source: str = "", detail: str = "") -> Check:
    return Check(case, check, _fmt(expected), _fmt(computed), PASS if expected == computed else FAIL, source, detail)


def _src(case: CaseDescriptor, key: str) -> str:
    e = case.expect.get(key)
    return e.source if e else ""


# ---- geometry --------------------------------------------------------------------------

def suite_geometry(cases: Sequence[CaseDescriptor]) -> List[Check]:
    out = []
    for c in cases:
        if c.bundle is None or c.space is None:
            continue
        g = koszul.geometry(c.space, c.bundle)
        if c.kind in ("table2", "family"):
            want = (c.get("d"), c.get("iota"), c.get("rho"))
            got = (g.dim, g.index, g.picard)
            out.append(Check(c.id, "geometry", "d={} iota={} rho={}".format(*want),
                             "d={} iota={} rho={}".format(*got), PASS if want == got else FAIL,
                             _src(c, "iota"), f"anticanonical class on Pic generators: {g.anticanonical}"))
        elif "d" in c.expect:
            out.append(_cmp(c.id, "geometry.d", c.get("d"), g.dim, _src(c, "d")))
    return out


# ---- stabilizers -----------------------------------------------------------------------

def orbit_kind(orbit: int, d: int) -> str:
    if orbit == d:
        return "dense"
    if orbit == d - 1:
        return "codim1"
    return f"codim{d - orbit}"


def stabilizer_checks(c: CaseDescriptor, witness: Optional[List[list]] = None, tag: str = "") -> List[Check]:
    out = []
    g = c.algebra()
    s = lie.lie_stabilizer(g, c.ambient_constraint())
    if "ambient_stab" in c.expect:
        out.append(_cmp(c.id, "ambient-stab", c.get("ambient_stab"), s.dim, _src(c, "ambient_stab"),
                        f"{c.ambient} stabilizer inside so({c.m})"))
    W = c.witness if witness is None else witness
    if W is None:
        return out
    if c.bundle is not None:
        ok = all(kills(W, d) for d in c.spinors)
        out.append(_cmp(c.id, f"witness-kills{tag}", True, ok, "catalog witness"))
    sp = lie.lie_stabilizer(s, lie.PreserveSubspace(tuple(tuple(v) for v in W)))
    orbit = s.dim - sp.dim
    d = c.space.dim - (koszul.bundle_character(c.space, c.bundle).rank() if c.bundle else 0)
    if "witness_stab" in c.expect:
        out.append(_cmp(c.id, f"witness-stab{tag}", c.get("witness_stab"), sp.dim, _src(c, "witness_stab")))
    if "orbit_dim" in c.expect:
        out.append(_cmp(c.id, f"orbit-dim{tag}", c.get("orbit_dim"), orbit, _src(c, "orbit_dim")))
    if "orbit" in c.expect:
        got = orbit_kind(orbit, d)
        want = c.get("orbit")
        status = PASS if got == want else (DISCREPANCY if c.has("orbit-discrepancy") else FAIL)
        out.append(Check(c.id, f"orbit{tag}", want, got, status, _src(c, "orbit"),
                         f"orbit dimension {s.dim} - {sp.dim} = {orbit}, d_X = {d}"))
    return out


GENERIC_SEED = 13
GENERIC_TRIALS = 3


def generic_hyperplane_stabs(c: CaseDescriptor, seed: int = GENERIC_SEED, trials: int = GENERIC_TRIALS) -> List[int]:
    """Witness stabilizer dims for seeded random hyperplanes ``H`` containing the witness."""
    n = c.model
    basis = [basis_vector(n, t, i) for t in "ef" for i in range(1, n + 1)]
    perp = linalg.kernel([[pairing(w, b) for b in basis] for w in c.witness], ncols=2 * n)
    rng = random.Random(seed)
    out = []
    while len(out) < trials:
        h = [sum(rng.randint(-3, 3) * v[i] for v in perp) for i in range(2 * n)]
        if not pairing(h, h):
            continue
        g = lie.odd_model(n, h)
        s = lie.lie_stabilizer(g, c.ambient_constraint())
        out.append(lie.lie_stabilizer(s, c.witness_constraint()).dim)
    return out


def suite_stabilizers(cases: Sequence[CaseDescriptor]) -> List[Check]:
    out = []
    for c in cases:
        if c.model is None or not c.spinors:
            continue
        out.extend(stabilizer_checks(c))
        if "generic_witness_stab" in c.expect and c.witness is not None and c.hyperplane is not None:
            dims = generic_hyperplane_stabs(c)
            want = c.get("generic_witness_stab")
            got = max(dims)
            out.append(Check(c.id, "witness-stab.generic-hyperplane", _fmt(want), _fmt(got),
                             PASS if got == want else FAIL, _src(c, "generic_witness_stab"),
                             f"seed {GENERIC_SEED}, {GENERIC_TRIALS} random H containing the witness: dims {dims}"))
    return out


# ---- Bott spot checks ------------------------------------------------------------------

# (k, m, weight on fundamental weights, expected) with expected "acyclic" or (q, dim)
BOTT_SPOTS = [
    (3, 9, "w2", (0, 36)),
    (3, 9, "w2-w3", "acyclic"),
    (3, 9, "w2-w3+w4", "acyclic"),
    (3, 11, "w2-2w3", "acyclic"),
    (3, 11, "w2-2w3+w5", "acyclic"),
    (3, 11, "w2-w3", "acyclic"),
    (3, 11, "w2-2w3+w4", (1, 1)),
    (3, 11, "w2-w3+w5", "acyclic"),
    (3, 11, "w2", (0, 55)),
    (3, 12, "w2-2w3", "acyclic"),
    (3, 12, "w2-2w3+w6", "acyclic"),
    (3, 12, "w2-2w3+w4", (1, 1)),
    (3, 12, "w2-w3+w5", "acyclic"),
    (3, 12, "w2", (0, 66)),
]

# graded piece of the tangent twisted by the Koszul complex: expected nonzero groups (step, q, dim)
KOSZUL_SPOTS = [
    ("OG(3,9)", "S", 1, ()),
    ("OG(3,9)", "S", 2, ((0, 0, 36),)),
    ("OG(3,11)", "S", 1, ((2, 2, 1),)),
    ("OG(3,11)", "S", 2, ((0, 0, 55), (2, 1, 1))),
    ("OG(3,12)", "S+", 1, ((2, 2, 1),)),
    ("OG(3,12)", "S+", 2, ((0, 0, 66), (2, 1, 1))),
]

SECTION_SPOTS = [
    ("OG(3,9)", "S", ((0, 0, 16), (1, 0, 1))),
]


def _bott_str(r) -> str:
    return "acyclic" if r.acyclic else f"H^{r.q} dim {r.dim}"


def suite_bott(cases: Sequence[CaseDescriptor]) -> List[Check]:
    out = []
    for k, m, w, want in BOTT_SPOTS:
        X = og_space(k, m)
        r = bott(X, parse_weight(w, X.rs))
        exp = want if isinstance(want, str) else f"H^{want[0]} dim {want[1]}"
        out.append(_cmp(f"OG({k},{m})", f"bott {w}", exp, _bott_str(r), "Bott vanishing lists in the rigidity proofs"))
    from .weights import parse_space
    for space, E, grade, want in KOSZUL_SPOTS:
        X = parse_space(space)
        piece = [p for p in koszul.tangent_pieces(X) if p.grade == grade]
        entries = koszul.koszul_entries(X, piece, E)
        got = tuple(sorted((e.step, e.q, e.dim) for e in entries if e.dim))
        label = piece[0].label if piece else f"T[{grade}]"
        out.append(_cmp(space, f"koszul {label} x wedge(E*)", _groups(want), _groups(got),
                        "twisted Koszul complexes in the rigidity proofs"))
    for space, E, want in SECTION_SPOTS:
        X = parse_space(space)
        entries = koszul.koszul_entries(X, E, E)
        got = tuple(sorted((e.step, e.q, e.dim) for e in entries if e.dim))
        out.append(_cmp(space, f"koszul {E} x wedge(E*)", _groups(want), _groups(got),
                        "condition on sections in the OG(3,9)/S rigidity proof"))
    return out


def _groups(gs) -> str:
    return ", ".join(f"H^{q}(wedge{i}) = {d}" for i, q, d in gs) or "none"


# ---- rigidity --------------------------------------------------------------------------

def suite_rigidity(cases: Sequence[CaseDescriptor]) -> List[Check]:
    out = []
    for c in cases:
        if c.kind == "family" and "chi_tangent" in c.expect:
            chi = koszul.euler_restricted(c.space, "T", c.bundle) - koszul.euler_restricted(c.space, c.bundle, c.bundle)
            out.append(_cmp(c.id, "chi-tangent", c.get("chi_tangent"), chi, _src(c, "chi_tangent"),
                            "chi(T_Y|X) - chi(E|X) from the normal sequence"))
        if c.kind != "table2":
            continue
        r = koszul.rigidity_check(c)
        detail = "; ".join(r.evidence + r.ambiguities)
        rigid = r.verdict in (koszul.RIGID, koszul.RIGID_INVARIANT)
        out.append(Check(c.id, "locally-rigid", "true", _fmt(rigid), PASS if rigid else FAIL,
                         _src(c, "verdict"), detail))
        out.append(_cmp(c.id, "verdict", c.get("verdict"), r.verdict, _src(c, "verdict"), detail))
        want_amb = "phi" if c.has("phi") else "none"
        got_amb = "phi" if r.ambiguities else "none"
        out.append(_cmp(c.id, "ambiguity", want_amb, got_amb, "rigidity proofs: phi arises for two cases only",
                        "; ".join(r.ambiguities)))
        if c.has("phi"):
            out.append(_cmp(c.id, "invariant-field", True, r.invariant_field, _src(c, "verdict")))
        if "h0_bundle" in c.expect:
            out.append(_cmp(c.id, "h0-bundle", c.get("h0_bundle"), r.h0_bundle, _src(c, "h0_bundle")))
        out.append(_cmp(c.id, "orbit-map-onto", _fmt(r.h0_bundle), _fmt(r.orbit_image), "",
                        "rank of g -> H^0(X, E|X) against h^0(X, E|X)"))
    return out


# ---- Betti numbers ---------------------------------------------------------------------

def betti_list(c: CaseDescriptor, p_budget: Optional[int] = None) -> List[Optional[int]]:
    budget = c.budget if p_budget is None else p_budget
    t = koszul.hodge_table(c.space, c.bundle, p_max=budget, pure=c.has("purity"))
    return t.even_betti()


def betti_checks(c: CaseDescriptor, p_budget: Optional[int] = None) -> List[Check]:
    out = []
    want = c.get("betti")
    got = betti_list(c, p_budget)
    src = _src(c, "betti")
    if len(want) != len(got):
        return [Check(c.id, "betti", _fmt(want), _fmt(got), FAIL, src, "length mismatch")]
    bad = [i for i, (w, g) in enumerate(zip(want, got)) if w is not None and g is not None and w != g]
    missing = [i for i, (w, g) in enumerate(zip(want, got)) if w is not None and g is None]
    extra = [i for i, (w, g) in enumerate(zip(want, got)) if w is None and g is not None]
    known_w = [w for w in want if w is not None]
    known_g = [g for w, g in zip(want, got) if w is not None]
    status = FAIL if bad else (UNKNOWN if missing else PASS)
    detail = f"b_2p for p in {[2 * i for i in bad]} differ" if bad else (
        f"not computed at p = {missing} (budget)" if missing else "")
    out.append(Check(c.id, "betti.known", _fmt(known_w), _fmt(known_g), status, src, detail))
    if extra:
        out.append(Check(c.id, "betti.unknown", _fmt([None] * len(extra)), _fmt([got[i] for i in extra]),
                         UNKNOWN, src, f"values at positions {extra} where no value is listed"))
    if "h00" in c.expect:
        out.append(_cmp(c.id, "h00", c.get("h00"), got[0], _src(c, "h00")))
    return out


def suite_betti(cases: Sequence[CaseDescriptor], p_budget: Optional[int] = None) -> List[Check]:
    out = []
    for c in cases:
        if "betti" in c.expect and c.bundle is not None:
            out.extend(betti_checks(c, p_budget))
    return out


# ---- Schubert calculus -----------------------------------------------------------------

SEGRE_SEED = 20240
SEGRE_SAMPLES = 100


def suite_schubert(cases: Sequence[CaseDescriptor]) -> List[Check]:
    out = []
    for n, (d, fact) in schubert.factorial_degrees(6).items():
        out.append(_cmp(f"OG({n},{2 * n + 1})", "degree", fact, d, "(P1)^n identification: d = n!"))
    total, half = schubert.curve_degree_g48()
    out.append(_cmp("G(4,8)", "curve-degree", 12, half, "remark on OG(3,8)/S+ + S-, normalized degree",
                    f"integral of sigma_4321 sigma_2 sigma_1^4 = {total}"))
    for n in range(2, 6):
        ok, cnt = schubert.segre_batch(n, SEGRE_SEED + n, SEGRE_SAMPLES)
        out.append(_cmp(f"segre-n{n}", "segre-check", f"{cnt}/{cnt}", f"{ok}/{cnt}",
                        "(P1)^n identification: Pfaffian factorization", f"seed {SEGRE_SEED + n}"))
    return out


# ---- driver ----------------------------------------------------------------------------

SUITES: Dict[str, Callable[[Sequence[CaseDescriptor]], List[Check]]] = {
    "geometry": suite_geometry,
    "stabilizers": suite_stabilizers,
    "bott-spotchecks": suite_bott,
    "rigidity": suite_rigidity,
    "betti": suite_betti,
    "schubert": suite_schubert,
}
CASELESS = ("bott-spotchecks", "schubert")


def run_suite(suite: str, ids: Sequence[str] = (), catalog: Optional[Sequence[CaseDescriptor]] = None,
              p_budget: Optional[int] = None) -> Report:
    """Run a suite (or ``all``) on the catalog, restricted to ``ids`` when given."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    cases = load_catalog() if catalog is None else list(catalog)
    chosen = select(cases, ids)
    names = list(SUITES) if suite == "all" else [suite]
    checks: List[Check] = []
    for name in names:
        if name == "betti":
            checks.extend(suite_betti(chosen, p_budget))
        elif name in CASELESS:
            if not ids:
                checks.extend(SUITES[name](chosen))
        else:
            checks.extend(SUITES[name](chosen))
    return Report(suite, checks)
