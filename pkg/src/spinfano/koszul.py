"""Cohomology on zero loci through the Koszul complex.

``X`` is the zero locus of a general section of ``E`` on ``Y = OG(k, m)``.
For a bundle ``F`` on ``Y`` the Koszul complex twisted by ``F`` gives a
spectral sequence with first page

    E_1^{-i, q} = H^q(Y, wedge^i E^vee (x) F)  =>  H^{q-i}(X, F|_X).

Filtered bundles (the tangent bundle of ``Y`` and its exterior powers) are
replaced by their associated graded pieces.  Nothing is guessed about
differentials: when two nonzero first-page groups could be joined by a
map (a Koszul differential, or a connecting map of the filtration), the
affected total degrees are flagged and an :class:`Ambiguity` names the two
groups.  Euler characteristics never depend on these maps and are always
exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .weights.bott import Cohomology, cohomology
from .weights.bundles import bundle_character
from .weights.characters import (
    Character, exterior_powers, levi_decompose, symmetric_powers, tensor_decompose,
)
from .weights.grassmannian import OGSpace
from .weights.roots import Weight, dot, fmt_weight


@dataclass(frozen=True)
class Piece:
    """A graded piece of a filtered bundle; lower ``grade`` means deeper in the filtration."""

    label: str
    grade: int
    char: Character


@dataclass
class Entry:
    step: int          # Koszul step i (wedge^i E^vee)
    sym: int           # conormal step j (Sym^j E^vee), 0 outside Hodge computations
    piece: str
    grade: int
    q: int
    dim: int
    groups: Dict[Weight, int]

    @property
    def total(self) -> int:
        return self.q - self.step - self.sym


@dataclass
class Ambiguity:
    kind: str          # "connecting" or "differential"
    source: Entry
    target: Entry

    def describe(self, X: OGSpace) -> str:
        s, t = self.source, self.target
        if self.kind == "connecting":
            name = "connecting map"
        elif self.kind == "differential":
            name = f"d_{s.step - t.step}"
        else:
            name = "conormal map"
        return (f"{name}: H^{s.q}({_entry_label(s)}) [dim {s.dim}] -> "
                f"H^{t.q}({_entry_label(t)}) [dim {t.dim}]")


def _entry_label(e: Entry) -> str:
    parts = []
    if e.sym:
        parts.append(f"sym{e.sym}(E*)")
    if e.step:
        parts.append(f"wedge{e.step}(E*)")
    parts.append(e.piece)
    return " x ".join(parts)


@dataclass
class CohomologyTable:
    """Cohomology of a restricted bundle, total degree by total degree."""

    entries: List[Entry]
    ambiguities: List[Ambiguity] = field(default_factory=list)
    section_correction: int = 0

    def dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for e in self.entries:
            out[e.total] = out.get(e.total, 0) + e.dim
        if self.section_correction:
            out[0] = out.get(0, 0) - self.section_correction
            out[-1] = out.get(-1, 0) - self.section_correction
            if not out[-1]:
                del out[-1]
        return {t: d for t, d in out.items() if d}

    def ambiguous_degrees(self) -> set:
        bad = set()
        for a in self.ambiguities:
            bad.add(a.source.total)
            bad.add(a.target.total)
        return bad

    def exact(self, t: int) -> bool:
        return t not in self.ambiguous_degrees()

    def dim(self, t: int) -> Optional[int]:
        """``h^t`` of the restricted bundle, or ``None`` when a map is unresolved."""
        if not self.exact(t):
            return None
        return self.dims().get(t, 0)

    def euler(self) -> int:
        return sum(_sgn(t) * d for t, d in self.dims().items())

    def nonzero(self) -> List[Entry]:
        return [e for e in self.entries if e.dim]


# ---- bundle data -------------------------------------------------------------------

def root_grade(X: OGSpace, root: Sequence[int]) -> int:
    """Sum of the coefficients of ``root`` on the marked simple roots."""
    total = 0
    for node in X.marked:
        a = X.rs.simple[node - 1]
        w = X.rs.fundamental[node - 1]
        total += dot(w, root) // dot(a, a)
    return total


def tangent_pieces(X: OGSpace, dual: bool = False) -> List[Piece]:
    """Associated graded of the tangent (or cotangent) bundle, one piece per grade."""
    by_grade: Dict[int, List[Weight]] = {}
    for a in X.nilradical:
        w = tuple(2 * x for x in a)
        by_grade.setdefault(root_grade(X, a), []).append(tuple(-x for x in w) if dual else w)
    out = []
    for g in sorted(by_grade):
        label = {1: "Hom(U,U^perp/U)", 2: "wedge2(Ud)"}.get(g, f"T[{g}]") if len(X.marked) == 1 else f"T[{g}]"
        if dual:
            label = f"dual({label})"
        out.append(Piece(label, g, Character.from_weights(X.n, by_grade[g])))
    return out


def bundle_pieces(X: OGSpace, F) -> List[Piece]:
    if isinstance(F, str):
        if F.replace(" ", "") == "T":
            return tangent_pieces(X)
        return [Piece(F, 0, bundle_character(X, F))]
    if isinstance(F, Character):
        return [Piece("F", 0, F)]
    return list(F)


def rank(ch: Character) -> int:
    return ch.rank()


# ---- the Koszul page -------------------------------------------------------------------

def koszul_entries(X: OGSpace, F, E: str, sym: int = 0) -> List[Entry]:
    """All first-page groups for ``F`` twisted by ``Sym^sym E^vee``."""
    Ech = bundle_character(X, E)
    r = Ech.rank()
    if r >= X.dim:
        raise ValueError(f"rank {r} of {E} is not below dim {X.name} = {X.dim}")
    Ed = Ech.dual()
    wedges = exterior_powers(Ed, r)
    twist = symmetric_powers(Ed, sym)[sym] if sym else None
    out: List[Entry] = []
    for piece in bundle_pieces(X, F):
        base = levi_decompose(X, piece.char)
        if twist is not None:
            base = tensor_decompose(X, base, twist)
        for i in range(r + 1):
            irr = tensor_decompose(X, base, wedges[i]) if i else base
            coh = cohomology(X, irr)
            for q in coh.degrees():
                out.append(Entry(i, sym, piece.label, piece.grade, q, coh.dim(q), coh.groups[q]))
    return out


def find_ambiguities(entries: Sequence[Entry], resolved=()) -> List[Ambiguity]:
    """Pairs of nonzero groups that a map could join.

    Entries are ordered by ``(sym, step, grade)``.  Every map of the
    combined spectral sequences (conormal resolution, Koszul complex,
    filtration of a graded bundle) raises the total degree by one and goes
    strictly down in that order.
    """
    nz = [e for e in entries if e.dim]
    out: List[Ambiguity] = []
    for s in nz:
        for t in nz:
            if t.total != s.total + 1 or (id(s), id(t)) in resolved:
                continue
            if _key(t) >= _key(s):
                continue
            if (s.sym, s.step) == (t.sym, t.step):
                kind = "connecting"
            elif s.sym == t.sym:
                kind = "differential"
            else:
                kind = "conormal"
            out.append(Ambiguity(kind, s, t))
    return out


def _key(e: Entry) -> Tuple[int, int, int]:
    return (e.sym, e.step, e.grade)


def restricted_cohomology(X: OGSpace, F, E: str, sections: int = 0) -> CohomologyTable:
    """Cohomology of ``F|_X``.

    ``sections`` > 0 declares ``F = E`` with that many linearly independent
    sections: the trivial part of ``H^0(E^vee (x) E)`` then maps injectively
    to ``H^0(E)`` (it is contraction with the sections), which removes that
    part from both groups.
    """
    entries = koszul_entries(X, F, E)
    resolved = set()
    correction = 0
    if sections:
        zero = (0,) * X.n
        src = [e for e in entries if e.step == 1 and e.q == 0]
        tgt = [e for e in entries if e.step == 0 and e.q == 0]
        triv = sum(e.groups.get(zero, 0) for e in src)
        if triv != sections * sections and triv != sections:
            raise ValueError(f"expected trivial summands for {sections} sections, found {triv}")
        correction = triv
        only_trivial = all(set(e.groups) == {zero} for e in src)
        if only_trivial:
            resolved = {(id(s), id(t)) for s in src for t in tgt}
    amb = find_ambiguities(entries, resolved)
    return CohomologyTable(entries, amb, correction)


def euler_restricted(X: OGSpace, F, E: str) -> int:
    """``sum_i (-1)^i chi(Y, wedge^i E^vee (x) F)``: exact whatever the differentials."""
    return sum(_sgn(e.total) * e.dim for e in koszul_entries(X, F, E))


# ---- geometry -------------------------------------------------------------------------

@dataclass(frozen=True)
class Geometry:
    dim: int
    index: int
    picard: int
    anticanonical: Tuple[int, ...]   # on the marked fundamental weights


def geometry(X: OGSpace, E: str) -> Geometry:
    """Dimension, Fano index and Picard number of the zero locus.

    The anticanonical class is ``-K_Y - c_1(E)`` by adjunction, written on the
    generators of ``Pic(Y)`` (marked fundamental weights); the index is the
    gcd of its coordinates.  The Picard number is that of ``Y``.
    """
    Ech = bundle_character(X, E)
    d = X.dim - Ech.rank()
    if d <= 0:
        raise ValueError(f"zero locus of {E} on {X.name} has expected dimension {d}")
    c1 = tuple(int(v) for v in (Ech.weights * Ech.mults[:, None]).sum(axis=0))
    minus_k = tuple(-x for x in X.canonical())
    anti = tuple(a - b for a, b in zip(minus_k, c1))
    coords = X.picard_coords(anti)
    idx = 0
    for c in coords:
        idx = gcd(idx, c)
    return Geometry(d, idx, X.picard_rank, coords)


def index_of_grassmannian(X: OGSpace) -> int:
    idx = 0
    for c in X.picard_coords(tuple(-x for x in X.canonical())):
        idx = gcd(idx, c)
    return idx


# ---- Hodge numbers ----------------------------------------------------------------------

@dataclass
class HodgeRow:
    p: int
    entries: List[Entry]
    ambiguities: List[Ambiguity]
    euler: int                      # chi(X, Omega^p_X)

    def dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for e in self.entries:
            out[e.total] = out.get(e.total, 0) + e.dim
        return {t: d for t, d in out.items() if d}

    def exact(self) -> bool:
        return not self.ambiguities


def hodge_row(X: OGSpace, E: str, p: int, omega_irreps: Optional[List[Dict[int, Character]]] = None) -> HodgeRow:
    """First page for ``Omega^p_X`` through the conormal resolution.

    ``0 -> Sym^p E^vee -> ... -> Sym^j E^vee (x) Omega^{p-j}_Y -> ... -> Omega^p_Y -> Omega^p_X -> 0``,
    each term restricted to ``X`` by the Koszul complex.  The group
    ``H^q(Y, wedge^i E^vee (x) Sym^j E^vee (x) Omega^{p-j}_Y)`` lands in total degree ``q - i - j``.
    ``Omega^{p-j}_Y`` is split into its graded pieces.
    """
    Ech = bundle_character(X, E)
    r = Ech.rank()
    Ed = Ech.dual()
    wedges = exterior_powers(Ed, r)
    syms = symmetric_powers(Ed, p)
    if omega_irreps is None:
        omega_irreps = omega_decompositions(X, p)
    entries: List[Entry] = []
    for j in range(p + 1):
        for grade, base in sorted(omega_irreps[p - j].items()):
            for i in range(r + 1):
                irr = tensor_decompose(X, base, syms[j] * wedges[i])
                coh = cohomology(X, irr)
                for q in coh.degrees():
                    entries.append(Entry(i, j, f"Omega{p - j}[{grade}]", grade, q, coh.dim(q), coh.groups[q]))
    amb = find_ambiguities(entries)
    euler = sum(_sgn(e.total) * e.dim for e in entries)
    return HodgeRow(p, entries, amb, euler)


def weight_grade(X: OGSpace, w: Sequence[int]) -> int:
    """Grade of a doubled weight: its coefficients on the marked simple roots."""
    total = 0
    for node in X.marked:
        a = X.rs.simple[node - 1]
        total += dot(X.rs.fundamental[node - 1], w) // (2 * dot(a, a))
    return total


def omega_decompositions(X: OGSpace, top: int) -> List[Dict[int, Character]]:
    """Levi irreducibles of ``Omega^p_Y`` for ``p <= top``, grouped by grade."""
    cot = Character.from_weights(X.n, [tuple(-x for x in w) for w in X.weights_tangent()])
    out = []
    for c in exterior_powers(cot, top):
        irr = levi_decompose(X, c)
        groups: Dict[int, Dict[Weight, int]] = {}
        for w, mult in irr.items():
            groups.setdefault(weight_grade(X, w), {})[w] = mult
        out.append({g: Character.from_dict(X.n, d) for g, d in groups.items()})
    return out


@dataclass
class HodgeTable:
    dim: int
    h: Dict[Tuple[int, int], Optional[int]]   # None = unknown
    rows: Dict[int, HodgeRow]
    pure: bool

    def betti(self) -> List[Optional[int]]:
        """``b_0 .. b_{2d}``; an entry is None when some ``h^{p,q}`` with ``p+q`` fixed is unknown."""
        out = []
        for k in range(2 * self.dim + 1):
            total = 0
            for p in range(max(0, k - self.dim), min(k, self.dim) + 1):
                v = self.h.get((p, k - p))
                if v is None:
                    total = None
                    break
                total += v
            out.append(total)
        return out

    def even_betti(self) -> List[Optional[int]]:
        return self.betti()[::2]

    def odd_vanish(self) -> bool:
        return all(b == 0 for b in self.betti()[1::2])


def hodge_table(X: OGSpace, E: str, p_max: Optional[int] = None, pure: bool = False) -> HodgeTable:
    """Hodge numbers of ``X`` for ``p <= p_max``, completed by Hodge symmetry and Serre duality.

    With ``pure`` set the off-diagonal numbers are taken to vanish and
    ``h^{p,p} = (-1)^p chi(Omega^p_X)``.  Otherwise a row is used only where
    the first page leaves no map undecided.
    """
    d = X.dim - bundle_character(X, E).rank()
    half = d // 2
    top = half if p_max is None else min(half, p_max)
    omegas = omega_decompositions(X, top)
    h: Dict[Tuple[int, int], Optional[int]] = {}
    rows: Dict[int, HodgeRow] = {}
    for p in range(top + 1):
        row = hodge_row(X, E, p, omegas)
        rows[p] = row
        if pure:
            vals = {q: 0 for q in range(d + 1)}
            vals[p] = _sgn(p) * row.euler
        elif row.exact():
            vals = {q: 0 for q in range(d + 1)}
            for t, v in row.dims().items():
                vals[t] = v
        else:
            bad = set()
            for a in row.ambiguities:
                bad.update((a.source.total, a.target.total))
            dims = row.dims()
            vals = {q: (None if q in bad else dims.get(q, 0)) for q in range(d + 1)}
        for q, v in vals.items():
            for (a, b) in ((p, q), (q, p), (d - p, d - q), (d - q, d - p)):
                old = h.get((a, b))
                if old is None or v is not None:
                    if old is not None and v is not None and old != v:
                        raise AssertionError(f"Hodge symmetry violated at {(a, b)}: {old} vs {v}")
                    h[(a, b)] = v if v is not None else old
    for p in range(d + 1):
        for q in range(d + 1):
            h.setdefault((p, q), None)
    return HodgeTable(d, h, rows, pure)


def _sgn(t: int) -> int:
    return -1 if t % 2 else 1


# ---- local rigidity -----------------------------------------------------------------------

RIGID = "rigid"
RIGID_INVARIANT = "rigid-via-invariant-argument"
INCONCLUSIVE = "inconclusive"


@dataclass
class RigidityReport:
    verdict: str
    h0_tangent: Optional[int]          # h^0(X, T_Y|_X)
    h1_tangent: Optional[int]
    h0_bundle: Optional[int]           # h^0(X, E|_X)
    orbit_image: int                   # rank of g -> H^0(X, E|_X)
    ambiguities: List[str]
    invariant_field: Optional[bool] = None
    ideal_core: Optional[int] = None
    h1_normal_coker: Optional[int] = None   # h^1(X, T_X) when determined
    evidence: List[str] = field(default_factory=list)


def invariant_field_check(A0: Sequence[Sequence], P: Sequence[Sequence]) -> bool:
    """True iff the endomorphism ``A0`` does not preserve the span of ``P``."""
    from . import linalg
    gens = [list(p) for p in P]
    return not all(linalg.span_contains(gens, linalg.matvec(A0, p)) for p in gens)


def case_invariant_field_check(case) -> bool:
    """``invariant_field_check`` for a catalog case, after checking that ``A0``
    spans the centralizer of the ambient stabilizer."""
    from . import lie
    A0 = case.a0_matrix()
    if A0 is None or case.witness is None:
        raise ValueError(f"{case.id}: no invariant element or witness for the invariant argument")
    s = lie.lie_stabilizer(case.algebra(), case.ambient_constraint())
    cent = lie.centralizer(case.algebra(), s)
    if cent.dim != 1 or not lie.contains(cent, A0):
        raise ValueError(f"{case.id}: A0 does not span the centralizer (dim {cent.dim})")
    return invariant_field_check(A0, case.witness)


def rigidity_check(case) -> RigidityReport:
    """Local rigidity of a catalog case.

    ``H^1(X, T_X)`` vanishes once ``H^1(X, T_Y|_X) = 0`` and the composite
    ``g -> H^0(X, T_Y|_X) -> H^0(X, E|_X)`` is onto; the composite is the
    orbit map ``A -> A.s`` modulo the sections, so its rank is ``dim g``
    minus the ambient stabilizer.  ``H^0(X, T_Y|_X) = g`` is also checked.
    When the tangent table is ambiguous in degrees -1/0 (and empty in
    degrees <= -2 and 1), degree -1 must die, so ``h^0 = d_0 - d_{-1}``; the
    restriction from ``g`` is then injective unless some field vanishes on
    ``X``.  Such a field lies in the ambient stabilizer and vanishes on the
    orbit of the witness, so it lies in the largest ideal of the ambient
    stabilizer contained in the witness stabilizer.  Cases with a
    distinguished invariant element use ``invariant_field_check`` instead.
    """
    from . import lie
    X, E = case.space, case.bundle
    g = case.algebra()
    T = restricted_cohomology(X, "T", E)
    Et = restricted_cohomology(X, E, E, sections=len(case.spinors))
    ev: List[str] = []
    td = T.dims()
    low = {t: d for t, d in td.items() if t <= -2}
    h1 = td.get(1, 0) if T.exact(1) else None
    if low:
        ev.append(f"tangent table nonzero in degrees {sorted(low)}")
    if T.ambiguities:
        h0 = None if low or td.get(1, 0) else td.get(0, 0) - td.get(-1, 0)
    else:
        h0 = td.get(0, 0) if not td.get(-1, 0) else None
    ed = Et.dims()
    h0E = ed.get(0, 0) if Et.exact(0) else None
    bundle_ok = h0E is not None and not any(ed.get(t, 0) for t in (-2, -1)) and Et.exact(-1)
    s = lie.lie_stabilizer(g, case.section_constraint())
    image = g.dim - s.dim
    ev.append(f"h0(T|X) = {h0}, dim g = {g.dim}")
    ev.append(f"h1(T|X) = {h1}")
    ev.append(f"h0(E|X) = {h0E}, orbit map rank = {g.dim} - {s.dim} = {image}")
    amb = [a.describe(X) for a in T.ambiguities]
    rep = RigidityReport(INCONCLUSIVE, h0, h1, h0E, image, amb, evidence=ev)
    ok = h1 == 0 and h0 == g.dim and bundle_ok and image == h0E
    if h0E is not None and image != h0E:
        ev.append(f"orbit map not onto H^0(E|X): cokernel {h0E - image}")
    if not (h1 == 0 and h0 == g.dim and bundle_ok):
        return rep
    if not amb:
        rep.h1_normal_coker = h0E - image
        rep.verdict = RIGID if ok else INCONCLUSIVE
        return rep
    if case.a0_matrix() is not None:
        rep.invariant_field = case_invariant_field_check(case)
        ev.append(f"invariant element moves the witness: {rep.invariant_field}")
    if case.witness is not None:
        sp = lie.lie_stabilizer(s, case.witness_constraint())
        rep.ideal_core = lie.largest_ideal_in(s, sp).dim
        ev.append(f"largest ideal of the ambient stabilizer inside the witness stabilizer: dim {rep.ideal_core}")
    injective = rep.invariant_field if rep.invariant_field is not None else rep.ideal_core == 0
    if injective:
        # H^0(X, T_Y|_X) = g, so H^1(X, T_X) is the cokernel of the orbit map
        rep.h1_normal_coker = h0E - image
        ev.append(f"h1(TX) = {rep.h1_normal_coker}")
        if ok:
            rep.verdict = RIGID_INVARIANT
    return rep
