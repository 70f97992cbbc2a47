import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spinfano import linalg
from spinfano.spinor import (DimensionError, Spinor, annihilator, basis_vector, clifford_act, fmt_vector, is_isotropic,
                             kills, multivector_act, pairing, parse_spinor, parse_vector)


def sp(text, n):
    return parse_spinor(text, n)


def vec(text, n):
    return parse_vector(text, n)


def test_wedge_with_vacuum():
    assert clifford_act(vec("e1", 3), Spinor.vacuum(3)) == sp("e1", 3)


def test_leading_contraction_sign():
    assert clifford_act(vec("f1", 3), sp("e12", 3)) == sp("e2", 3)
    # f2 passes e1 first
    assert clifford_act(vec("f2", 3), sp("e12", 3)) == sp("-e1", 3)


def test_delta_minus_for_og38():
    assert clifford_act(vec("e4 - f4", 4), sp("1 + e1234", 4)) == sp("e4 + e123", 4)


def test_parity_flips():
    d = sp("1 + e12 + 3*e1234", 4)
    assert d.parity == "even"
    assert clifford_act(vec("e3 + 2*f1", 4), d).parity == "odd"


def test_multivector_act_examples():
    assert not multivector_act([vec("e1", 6), vec("f6", 6)], sp("1 + e123456", 6))
    d = sp("1 + e12 - e34", 4)
    assert multivector_act([vec("e1", 4)], d) == clifford_act(vec("e1", 4), d)


def test_og310_witness_killed():
    # third generator e4 - f3: the isotropic plane through the first two that kills delta
    P = [vec(t, 5) for t in ("e1 - f2", "e3 + f4 + e5", "e4 - f3")]
    assert is_isotropic(P)
    assert not multivector_act(P, sp("1 + e1234", 5))


@pytest.mark.xfail(strict=True, reason="with e4 - f5 the vacuum term alone leaves e1 + ...; see decisions ledger")
def test_og310_witness_as_printed():
    P = [vec(t, 5) for t in ("e1 - f2", "e3 + f4 + e5", "e4 - f5")]
    assert is_isotropic(P)
    assert not multivector_act(P, sp("1 + e1234", 5))


def test_kills_examples():
    assert kills([vec("f1", 3), vec("f2", 3)], Spinor.vacuum(3))
    assert kills([vec(t, 4) for t in ("e1 + f2", "e2 - f1", "e3 - f4")], sp("1 + e1234", 4))
    assert not kills([vec("e1", 2)], Spinor.vacuum(2))


@pytest.mark.xfail(strict=True, reason="e3 + f4 needs the opposite contraction sign; see decisions ledger")
def test_og38_witness_as_printed():
    assert kills([vec(t, 4) for t in ("e1 + f2", "e2 - f1", "e3 + f4")], sp("1 + e1234", 4))


def test_kills_rejects_non_isotropic():
    with pytest.raises(ValueError):
        kills([vec("e1 + f1", 2)], Spinor.vacuum(2))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        clifford_act(vec("e1", 3), Spinor.vacuum(4))
    with pytest.raises(DimensionError):
        sp("1", 3) + sp("1", 4)


def test_annihilator_of_vacuum_and_top():
    F = annihilator(Spinor.vacuum(3))
    assert linalg.rank(F) == 3
    assert all(linalg.span_contains([vec(f"f{i}", 3) for i in (1, 2, 3)], v) for v in F)
    E = annihilator(sp("e123456", 6))
    assert linalg.rank(E) == 6
    assert all(not any(v[6:]) for v in E)


def test_annihilator_detects_impure_spinor():
    # 1 + e1234 is the generic spinor of Spin8: not pure, its annihilator is zero
    A = annihilator(sp("1 + e1234", 4))
    assert len(A) < 4
    assert is_isotropic(A) if A else True


def test_annihilator_rejects_zero():
    with pytest.raises(ValueError):
        annihilator(Spinor(3))


def test_parse_round_trip_and_errors():
    d = sp("1 + e1234 - 2*e15 + sqrt2*e2345 - (1 - sqrt2/2)*e23", 5)
    assert sp(str(d), 5) == d
    v = vec("sqrt2*e7 + e1 - f1 + (1+sqrt2)*f5", 7)
    assert vec(fmt_vector(v), 7) == v
    with pytest.raises(ValueError):
        sp("e16", 5)
    with pytest.raises(ValueError):
        sp("e11", 3)
    with pytest.raises(ValueError):
        vec("e1 + g2", 3)


# ---- properties ----------------------------------------------------------------------------

def random_vector(rng, n):
    return [Fraction(rng.randint(-3, 3)) for _ in range(2 * n)]


def random_spinor(rng, n, density=0.5):
    return Spinor(n, {m: rng.randint(-3, 3) for m in range(1 << n) if rng.random() < density})


@settings(max_examples=1000)
@given(st.integers(0, 2 ** 32), st.integers(1, 5))
def test_clifford_relation(seed, n):
    rng = random.Random(seed)
    v, w, d = random_vector(rng, n), random_vector(rng, n), random_spinor(rng, n)
    lhs = clifford_act(v, clifford_act(w, d)) + clifford_act(w, clifford_act(v, d))
    assert lhs == d * pairing(v, w)


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32), st.integers(2, 5))
def test_kills_independent_of_basis(seed, n):
    rng = random.Random(seed)
    k = rng.randint(1, n - 1)
    # an isotropic k-plane inside a random maximal isotropic graph <e_i + sum a_ij f_j>, a skew
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a[i][j] = Fraction(rng.randint(-2, 2))
            a[j][i] = -a[i][j]
    L = [[Fraction(int(i == j)) for j in range(n)] + a[i] for i in range(n)]
    U = L[:k]
    d = random_spinor(rng, n, 0.3) + Spinor.vacuum(n)
    g = [[Fraction(rng.randint(-2, 2)) for _ in range(k)] for _ in range(k)]
    if linalg.rank(g) < k:
        g = [[Fraction(int(i == j)) + g[i][j] * 0 for j in range(k)] for i in range(k)]
    U2 = linalg.matmul(g, U)
    assert kills(U, d) == kills(U2, d)
