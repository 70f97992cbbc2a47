import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from spinfano import linalg, schubert
from spinfano.schubert import SchubertClass, pfaffian, pfaffian_minor, pieri, pieri_chain
from spinfano.spinor import kills


def sig(k, n, lam=()):
    return SchubertClass.sigma(k, n, lam)


# ---- Pieri --------------------------------------------------------------------------------

def test_pieri_sigma1_squared_in_g24():
    c = pieri(sig(2, 4, (1,)), 1)
    assert c.terms == {(2, 0): 1, (1, 1): 1}


def test_pieri_box_overflow_drops_terms():
    assert pieri(sig(2, 4, (2, 1)), 2).terms == {}
    assert pieri(sig(2, 4, (2, 1)), 1).terms == {(2, 2): 1}


def test_pieri_counts_horizontal_strips():
    c = pieri(sig(3, 7, (2, 1)), 2)
    assert c.terms == {(4, 1, 0): 1, (3, 2, 0): 1, (3, 1, 1): 1, (2, 2, 1): 1}


def test_sigma1_power_in_g24_is_two():
    assert schubert.integrate(pieri_chain(sig(2, 4), [1, 1, 1, 1])) == 2


def test_bad_partitions():
    with pytest.raises(ValueError):
        sig(2, 4, (1, 2))
    with pytest.raises(ValueError):
        sig(2, 4, (3,))
    with pytest.raises(ValueError):
        SchubertClass(4, 4)


@settings(max_examples=60)
@given(st.integers(2, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_pieri_products_commute(k, a, b, data):
    n = k + data.draw(st.integers(2, 4))
    lam = sorted(data.draw(st.lists(st.integers(0, n - k), min_size=k, max_size=k)), reverse=True)
    c = sig(k, n, lam)
    assert pieri(pieri(c, a), b) == pieri(pieri(c, b), a)


@pytest.mark.parametrize("k,n,classes", [
    (2, 4, [(1,)] * 4), (2, 5, [(1,)] * 6), (3, 6, [(2, 1), (2,), (1,), (1,), (1,), (1,)]),
    (2, 6, [(2,), (2,), (2,), (1,), (1,)]), (3, 7, [(3, 2, 1), (2,), (1,), (1,), (1,), (1,)]),
    (3, 7, [(2,), (2,), (2,), (2,), (1,), (1,), (1,), (1,)]),
])
def test_pieri_integrals_match_localization(k, n, classes):
    head, rows = classes[0], [c[0] for c in classes[1:]]
    assert all(len([x for x in c if x]) == 1 for c in classes[1:])
    got = schubert.integrate(pieri_chain(sig(k, n, head), rows))
    assert got == oracles.grassmannian_integral(k, n, classes)


# ---- the degree identities ----------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_staircase_degree_is_factorial(n):
    assert schubert.staircase_degree(n) == factorial(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_staircase_degree_by_localization(n):
    classes = [schubert.staircase(n - 1, n)] + [(1,)] * n + [schubert.staircase(n)]
    assert oracles.grassmannian_integral(n, 2 * n + 1, classes) == factorial(n)


def test_curve_degree_in_g48():
    total, half = schubert.curve_degree_g48()
    classes = [(4, 3, 2, 1), (2,), (1,), (1,), (1,), (1,)]
    assert total == oracles.grassmannian_integral(4, 8, classes) == 8
    assert half == 4


# ---- Pfaffians ----------------------------------------------------------------------------

def test_pf_two_by_two():
    assert pfaffian([[0, 5], [-5, 0]]) == 5


def test_pf_zero_matrix():
    assert pfaffian([[0] * 4 for _ in range(4)]) == 0


def test_pf_factorizes_over_gamma():
    mu = [[0, 2, -1, 3], [-2, 0, 5, 1], [1, -5, 0, 4], [-3, -1, -4, 0]]
    g = [2, 3, 5, 7]
    pi = [[mu[i][j] * g[i] * g[j] for j in range(4)] for i in range(4)]
    assert pfaffian(pi) == pfaffian(mu) * 2 * 3 * 5 * 7


def test_pf_errors():
    with pytest.raises(ValueError):
        pfaffian_minor([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]], [0, 1, 2])
    with pytest.raises(ValueError):
        pfaffian([[0, 1], [1, 0]])


def random_skew(rng, n):
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            A[j][i] = -A[i][j]
    return A


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_pf_squared_is_det(n):
    rng = random.Random(700 + n)
    for _ in range(12):
        A = random_skew(rng, n)
        assert pfaffian(A) ** 2 == linalg.det(A)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pf_matches_matching_sum(n):
    rng = random.Random(900 + n)
    for _ in range(8):
        A = random_skew(rng, n)
        assert pfaffian(A) == oracles.pfaffian_matchings(A)


def test_odd_skew_determinant_vanishes():
    A = random_skew(random.Random(5), 5)
    assert linalg.det(A) == 0


# ---- the Segre parametrization ------------------------------------------------------------

def test_segre_small_example():
    assert schubert.segre_check([1, 2], [1, 1])


def test_segre_coordinate_plane():
    assert schubert.segre_check([1, 2, 3], [0, 0, 0])
    assert all(x == 0 for row in schubert.isotropic_alpha([1, 2, 3], [0, 0, 0]) for x in row)


def test_segre_corrupted_alpha_fails():
    theta, gamma = [1, 2, 5], [1, 3, -2]
    alpha = schubert.isotropic_alpha(theta, gamma)
    alpha[0][1] += 1
    alpha[1][0] -= 1
    rep = schubert.segre_report(theta, gamma, alpha)
    assert not rep["skew-isotropic"]
    assert not schubert.segre_check(theta, gamma, alpha)


def test_segre_rejects_bad_theta():
    with pytest.raises(ValueError):
        schubert.segre_check([1, -1], [1, 1])
    with pytest.raises(ValueError):
        schubert.segre_check([0, 1], [1, 1])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_segre_seeded_batch(n):
    assert schubert.segre_batch(n, 20240 + n, 100) == (100, 100)


def test_schur_pfaffian():
    theta = [Fraction(1), Fraction(3), Fraction(4), Fraction(7)]
    mu = schubert.segre_matrix(theta)
    assert pfaffian_minor(mu, range(4)) == schubert.schur_pfaffian(theta)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_graph_spinor_is_pure(n):
    rng = random.Random(31 + n)
    for _ in range(3):
        pi = random_skew(rng, n)
        d = schubert.graph_spinor(pi)
        R = [[Fraction(int(i == r)) for i in range(n)] + list(pi[r]) for r in range(n)]
        # kills() takes proper isotropic subspaces; every row lies in some n-1 of them
        for drop in range(n):
            assert kills(R[:drop] + R[drop + 1:], d)
