import pytest

import oracles
from spinfano import koszul
from spinfano.catalog import load_catalog, select
from spinfano.spinor import parse_vector
from spinfano.weights import bundle_character, og_space


def case(cid):
    return select(load_catalog(), [cid])[0]


# ---- geometry ------------------------------------------------------------------------------

def grassmannian_index(k, m):
    """Fano index of OG(k, m) on the ample generator."""
    n = m // 2
    if k == n:
        return 2 * n if m % 2 else 2 * n - 2
    return m - k - 1


@pytest.mark.parametrize("k,m", [(1, 7), (2, 7), (3, 9), (4, 9), (3, 11), (3, 13), (4, 13), (2, 10), (3, 12),
                                 (4, 12), (3, 14), (5, 14)])
def test_index_of_grassmannian(k, m):
    assert koszul.index_of_grassmannian(og_space(k, m)) == grassmannian_index(k, m)


def test_index_of_spinor_variety():
    assert koszul.index_of_grassmannian(og_space(5, 10, "+")) == 8
    assert koszul.index_of_grassmannian(og_space(3, 7)) == 6


@pytest.mark.parametrize("k,m,E", [(3, 9, "S"), (3, 11, "S"), (3, 13, "S"), (4, 13, "S"), (2, 10, "S+"),
                                   (3, 12, "S+"), (3, 14, "S+"), (3, 10, "S+ + S-"), (3, 10, "S+ + S+")])
def test_geometry_by_adjunction(k, m, E):
    # c1 of a spinor bundle is half its rank on the ample generator
    X = og_space(k, m)
    r = bundle_character(X, E).rank()
    g = koszul.geometry(X, E)
    assert g.dim == X.dim - r
    assert g.picard == 1
    assert g.index == grassmannian_index(k, m) - r // 2


def test_geometry_rank_two_picard():
    g = koszul.geometry(og_space(3, 8), "S+")
    assert (g.dim, g.picard) == (8, 2)
    assert g.index == 1


def test_geometry_rejects_empty_locus():
    with pytest.raises(ValueError):
        koszul.geometry(og_space(2, 7), "S + S + S")


# ---- restricted cohomology ---------------------------------------------------------------

def test_sections_of_spinor_on_og3_9():
    t = koszul.restricted_cohomology(og_space(3, 9), "S", "S", sections=1)
    assert t.dims() == {0: 15}
    assert t.dim(0) == 15 and not t.ambiguities


def test_structure_sheaf_is_connected():
    for k, m, E in [(3, 9, "S"), (3, 11, "S"), (2, 10, "S+"), (3, 14, "S+")]:
        t = koszul.restricted_cohomology(og_space(k, m), "O(0)", E)
        assert t.dims() == {0: 1}


def test_tangent_table_ambiguous_for_og3_12():
    X = og_space(3, 12)
    t = koszul.restricted_cohomology(X, "T", "S+")
    assert t.dim(0) is None and t.dim(-1) is None
    assert {a.kind for a in t.ambiguities} == {"connecting", "differential"}
    assert all(a.source.dim == 1 for a in t.ambiguities)
    assert "wedge2(E*)" in t.ambiguities[0].describe(X)


def test_euler_of_structure_sheaf():
    for k, m, E in [(3, 9, "S"), (3, 13, "S"), (3, 12, "S+"), (3, 8, "S+")]:
        assert koszul.euler_restricted(og_space(k, m), "O(0)", E) == 1


@pytest.mark.parametrize("cid", ["OG3-13:S", "OG4-13:S"])
def test_euler_of_tangent_bundle(cid):
    c = case(cid)
    chi_t = koszul.euler_restricted(c.space, "T", c.bundle)
    chi_e = koszul.euler_restricted(c.space, c.bundle, c.bundle)
    assert chi_t - chi_e == 15


def test_euler_matches_table():
    X = og_space(3, 9)
    for F in ["T", "S", "Ud", "O(1)"]:
        t = koszul.restricted_cohomology(X, F, "S")
        assert t.euler() == koszul.euler_restricted(X, F, "S")


# ---- Hodge numbers and Betti lines ---------------------------------------------------------

def test_og3_9_betti_under_purity():
    t = koszul.hodge_table(og_space(3, 9), "S", pure=True)
    assert t.even_betti() == [1, 1, 2, 3, 3, 4, 3, 3, 2, 1, 1]
    assert t.odd_vanish()


def test_first_page_leaves_middle_unknown_without_purity():
    t = koszul.hodge_table(og_space(3, 9), "S")
    b = t.even_betti()
    assert b[:4] == [1, 1, 2, 3] and b[-4:] == [3, 2, 1, 1]
    assert None in b


def test_p_budget_caps_rows():
    t = koszul.hodge_table(og_space(3, 9), "S", p_max=1, pure=True)
    assert sorted(t.rows) == [0, 1]
    assert t.even_betti()[:2] == [1, 1]


@pytest.mark.parametrize("k,m,E", [(3, 9, "S"), (2, 7, "S"), (3, 8, "S+"), (2, 10, "S+ + S-")])
def test_first_page_agrees_with_purity(k, m, E):
    X = og_space(k, m)
    raw = koszul.hodge_table(X, E)
    pure = koszul.hodge_table(X, E, pure=True)
    known = {pq: v for pq, v in raw.h.items() if v is not None}
    assert known
    assert all(pure.h[pq] == v for pq, v in known.items())


IDENTIFIED = {
    "G2/P2": [("G", 2)], "OG(2,7)": [("B", 3)], "Fl4": [("A", 3)], "Fl5": [("A", 4)], "Fl6": [("A", 5)],
    "Fl3 + Fl3": [("A", 2)], "G2/P2 + G2/P2": [("G", 2)], "Q5": [("B", 3)], "G(3,6)": [("A", 5)],
}
LEVI = {
    "G2/P2": [("A", 1)], "OG(2,7)": [("A", 1), ("B", 1)], "Fl4": [("A", 1)], "Fl5": [("A", 2)],
    "Fl6": [("A", 3)], "Fl3 + Fl3": [], "G2/P2 + G2/P2": [("A", 1)], "Q5": [("B", 2)],
    "G(3,6)": [("A", 2), ("A", 2)],
}


def expected_poincare(name):
    if name.startswith("(P1)^"):
        n = int(name[5:])
        return oracles.poly_mul(*[[1, 1]] * n)
    p = oracles.poincare(IDENTIFIED[name], LEVI[name])
    if "+" in name:
        p = [2 * x for x in p]
    return p


IDENT_CASES = [c.id for c in load_catalog() if c.kind == "identification"]


@pytest.mark.parametrize("cid", IDENT_CASES)
def test_identification_betti_matches_poincare(cid):
    c = case(cid)
    want = expected_poincare(c.identified)
    assert list(c.get("betti")) == want
    assert koszul.hodge_table(c.space, c.bundle, pure=True).even_betti() == want
    assert koszul.geometry(c.space, c.bundle).dim == len(want) - 1


# ---- rigidity ----------------------------------------------------------------------------

def test_invariant_field_check_basic():
    A = [[1 if i == j and i < 3 else 0 for j in range(6)] for i in range(6)]
    assert not koszul.invariant_field_check(A, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]])
    assert koszul.invariant_field_check(A, [[1, 0, 0, 1, 0, 0]])


@pytest.mark.parametrize("cid", ["OG3-11:S", "OG3-12:S+"])
def test_invariant_field_on_witness(cid):
    c = case(cid)
    assert koszul.case_invariant_field_check(c)
    n = c.model
    E = [parse_vector(f"e{i}", n) for i in range(1, n + 1)]
    if c.space.kind == "B":
        E = [v + [0] * (len(c.witness[0]) - len(v)) for v in E]
    assert not koszul.invariant_field_check(c.a0_matrix(), E)


def test_rigidity_og3_9():
    r = koszul.rigidity_check(case("OG3-9:S"))
    assert r.verdict == koszul.RIGID
    assert r.h0_bundle == 15 == r.orbit_image
    assert r.h1_tangent == 0 and not r.ambiguities


def test_rigidity_og3_11_needs_invariant_argument():
    r = koszul.rigidity_check(case("OG3-11:S"))
    assert r.verdict == koszul.RIGID_INVARIANT
    assert r.invariant_field and len(r.ambiguities) == 2
    assert (r.h0_tangent, r.h0_bundle, r.orbit_image) == (55, 31, 31)


def test_rigidity_og3_10_pair_is_inconclusive():
    r = koszul.rigidity_check(case("OG3-10:S+S-"))
    assert r.verdict == koszul.INCONCLUSIVE
    assert (r.h0_bundle, r.orbit_image) == (30, 29)
