"""Schubert calculus on G(k, n) by the Pieri rule, Pfaffians, and the Segre
parametrization of the zero locus of a skew form on OG(n, 2n+1).

Partitions are tuples of length ``k`` (padded with zeros) in the
``k x (n-k)`` box.  Only products by special classes ``sigma_r`` are
implemented; that covers every integral needed here.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .scalars import as_scalar

Partition = Tuple[int, ...]


def staircase(n: int, k: Optional[int] = None) -> Partition:
    """``delta(n) = (n, n-1, ..., 1)``, padded to length ``k``."""
    k = n if k is None else k
    return tuple(list(range(n, 0, -1)) + [0] * (k - n))


class SchubertClass:
    """Integral combination of Schubert classes in the Chow ring of ``G(k, n)``."""

    __slots__ = ("k", "n", "terms")

    def __init__(self, k: int, n: int, terms: Optional[Dict[Partition, int]] = None):
        if not 0 < k < n:
            raise ValueError(f"G({k},{n}) is not a Grassmannian")
        self.k = k
        self.n = n
        self.terms: Dict[Partition, int] = {}
        for lam, c in (terms or {}).items():
            lam = self.normalize(lam)
            if c:
                self.terms[lam] = self.terms.get(lam, 0) + c
        self.terms = {lam: c for lam, c in self.terms.items() if c}

    @property
    def width(self) -> int:
        return self.n - self.k

    def normalize(self, lam: Sequence[int]) -> Partition:
        lam = tuple(lam) + (0,) * (self.k - len(lam))
        if len(lam) != self.k or any(x < 0 for x in lam):
            raise ValueError(f"{lam} does not have {self.k} parts")
        if any(a < b for a, b in zip(lam, lam[1:])):
            raise ValueError(f"{lam} is not weakly decreasing")
        if lam and lam[0] > self.width:
            raise ValueError(f"{lam} does not fit in the {self.k}x{self.width} box")
        return lam

    @classmethod
    def sigma(cls, k: int, n: int, lam: Sequence[int] = ()) -> "SchubertClass":
        return cls(k, n, {tuple(lam): 1})

    def __add__(self, other: "SchubertClass") -> "SchubertClass":
        self._check(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return SchubertClass(self.k, self.n, out)

    def scale(self, c: int) -> "SchubertClass":
        return SchubertClass(self.k, self.n, {lam: c * v for lam, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, SchubertClass) and (self.k, self.n) == (other.k, other.n)
                and self.terms == other.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"0 in G({self.k},{self.n})"
        parts = [f"{c}*s{''.join(map(str, (x for x in lam if x))) or '0'}"
                 for lam, c in sorted(self.terms.items(), reverse=True)]
        return " + ".join(parts)

    def _check(self, other: "SchubertClass") -> None:
        if (self.k, self.n) != (other.k, other.n):
            raise ValueError("classes live on different Grassmannians")

    def coefficient(self, lam: Sequence[int]) -> int:
        return self.terms.get(self.normalize(lam), 0)

    def pieri(self, r: int) -> "SchubertClass":
        return pieri(self, r)

    def dual(self, lam: Sequence[int]) -> Partition:
        """Complement of ``lam`` in the box (Poincare dual index)."""
        lam = self.normalize(lam)
        return tuple(self.width - x for x in reversed(lam))


def horizontal_strips(lam: Partition, r: int, width: int) -> Iterator[Partition]:
    """All ``mu`` containing ``lam`` with ``mu/lam`` a horizontal strip of size ``r``."""
    k = len(lam)

    def rec(i: int, left: int, acc: List[int]):
        if i == k:
            if left == 0:
                yield tuple(acc)
            return
        top = width if i == 0 else lam[i - 1]
        for add in range(min(left, top - lam[i]), -1, -1):
            acc.append(lam[i] + add)
            yield from rec(i + 1, left - add, acc)
            acc.pop()

    yield from rec(0, r, [])


def pieri(c: SchubertClass, r: int) -> SchubertClass:
    """Multiply by the special class ``sigma_r``; strips leaving the box vanish."""
    if r < 1:
        raise ValueError("Pieri factor must be at least 1")
    out: Dict[Partition, int] = {}
    for lam, coeff in c.terms.items():
        for mu in horizontal_strips(lam, r, c.width):
            out[mu] = out.get(mu, 0) + coeff
    return SchubertClass(c.k, c.n, out)


def pieri_chain(c: SchubertClass, rows: Sequence[int]) -> SchubertClass:
    for r in rows:
        c = pieri(c, r)
    return c


def integrate(c: SchubertClass) -> int:
    """Degree of the zero-cycle part: coefficient of the full box."""
    return c.terms.get((c.width,) * c.k, 0)


def integrate_against(c: SchubertClass, lam: Sequence[int]) -> int:
    """``int c * sigma_lam``, read off as the coefficient of the dual partition."""
    return c.coefficient(c.dual(lam))


def staircase_degree(n: int) -> int:
    """Degree of the zero locus of a general section of ``wedge^2 U^vee`` on ``OG(n, 2n+1)``.

    Equals ``2^-n int_{G(n,2n+1)} sigma_{delta(n-1)} * 2^n sigma_{delta(n)} * sigma_1^n``;
    the staircase ``delta(n)`` is self-dual in the ``n x (n+1)`` box, so the
    integral is the coefficient of ``sigma_{delta(n)}`` in ``sigma_{delta(n-1)} sigma_1^n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    base = SchubertClass.sigma(n, 2 * n + 1, staircase(n - 1, n))
    prod = pieri_chain(base, [1] * n)
    return integrate_against(prod, staircase(n))


def curve_degree_g48() -> Tuple[int, int]:
    """``int_{G(4,8)} sigma_4321 sigma_2 sigma_1^4`` and its half."""
    c = pieri_chain(SchubertClass.sigma(4, 8, (4, 3, 2, 1)), [2, 1, 1, 1, 1])
    total = integrate(c)
    return total, total // 2


# ---- Pfaffians -----------------------------------------------------------------------

def is_skew(A: Sequence[Sequence]) -> bool:
    n = len(A)
    return all(len(r) == n for r in A) and all(
        A[i][j] == -A[j][i] for i in range(n) for j in range(i, n))


def pfaffian_minor(A: Sequence[Sequence], I: Sequence[int]):
    """Pfaffian of the principal submatrix on the (0-based) indices ``I``."""
    I = tuple(I)
    if len(I) % 2:
        raise ValueError("Pfaffian of an odd-size matrix")
    if len(set(I)) != len(I):
        raise ValueError("repeated index in Pfaffian minor")

    @lru_cache(maxsize=None)
    def pf(idx: Tuple[int, ...]):
        if not idx:
            return Fraction(1)
        i0 = idx[0]
        total = Fraction(0)
        for pos in range(1, len(idx)):
            a = A[i0][idx[pos]]
            if not a:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = a * pf(rest)
            total = total + term if pos % 2 else total - term
        return total

    return as_scalar(pf(I))


def pfaffian(A: Sequence[Sequence]):
    if not is_skew(A):
        raise ValueError("matrix is not skew-symmetric")
    return pfaffian_minor(A, range(len(A)))


# ---- the Segre parametrization ---------------------------------------------------------

def _check_theta(theta: Sequence) -> None:
    n = len(theta)
    if any(not t for t in theta):
        raise ValueError("theta entries must be nonzero")
    for i in range(n):
        for j in range(i + 1, n):
            if not theta[i] + theta[j]:
                raise ValueError(f"theta_{i + 1} + theta_{j + 1} vanishes")


def isotropic_alpha(theta: Sequence, gamma: Sequence) -> List[list]:
    """The unique skew ``alpha`` making the plane ``omega``-isotropic:
    ``alpha_ij = (theta_j - theta_i)/(theta_i + theta_j) gamma_i gamma_j``."""
    _check_theta(theta)
    n = len(theta)
    th = [as_scalar(t) for t in theta]
    g = [as_scalar(x) for x in gamma]
    return [[as_scalar((th[j] - th[i]) / (th[i] + th[j]) * g[i] * g[j]) if i != j else Fraction(0)
             for j in range(n)] for i in range(n)]


def plane_basis(theta: Sequence, gamma: Sequence, alpha=None) -> List[list]:
    """Basis ``p_1..p_n`` of the plane in ``C^{2n+2}`` (coordinates ``e_1..e_{n+1}, f_1..f_{n+1}``).

    ``p_i = e_i + sum_j (alpha_ji + gamma_i gamma_j) f_j + gamma_i (e_{n+1} - f_{n+1})``;
    ``e_{n+1} - f_{n+1}`` spans the kernel line of the skew form inside ``C^{2n+1}``.
    """
    n = len(theta)
    if len(gamma) != n:
        raise ValueError("theta and gamma differ in length")
    alpha = isotropic_alpha(theta, gamma) if alpha is None else alpha
    g = [as_scalar(x) for x in gamma]
    N = n + 1
    out = []
    for i in range(n):
        v = [Fraction(0)] * (2 * N)
        v[i] = Fraction(1)
        for j in range(n):
            v[N + j] = as_scalar(alpha[j][i] + g[i] * g[j])
        v[n] = g[i]
        v[N + n] = -g[i]
        out.append(v)
    return out


def quadratic_form(u: Sequence, v: Sequence):
    N = len(u) // 2
    return as_scalar(sum((u[i] * v[N + i] + u[N + i] * v[i] for i in range(N)), Fraction(0)))


def skew_form(theta: Sequence, u: Sequence, v: Sequence):
    """``omega(e_i, f_i) = theta_i`` for ``i <= n`` and ``omega(e_{n+1}, f_{n+1}) = -1``."""
    n = len(theta)
    N = n + 1
    w = [as_scalar(t) for t in theta] + [Fraction(-1)]
    return as_scalar(sum((w[i] * (u[i] * v[N + i] - u[N + i] * v[i]) for i in range(N)), Fraction(0)))


def graph_matrix(theta: Sequence, gamma: Sequence, alpha=None) -> List[list]:
    """Skew matrix ``pi`` of the maximal isotropic space ``R`` through the plane.

    ``R`` has the basis ``q_i = e_i + sum_j pi_ij f_j`` (``i <= n+1``), with
    ``q_{n+1} = e_{n+1} + sum_j gamma_j f_j`` and ``q_i = p_i - gamma_i q_{n+1}``.
    """
    P = plane_basis(theta, gamma, alpha)
    n = len(theta)
    N = n + 1
    g = [as_scalar(x) for x in gamma]
    q_last = [Fraction(0)] * (2 * N)
    q_last[n] = Fraction(1)
    for j in range(n):
        q_last[N + j] = g[j]
    rows = [[as_scalar(p[k] - g[i] * q_last[k]) for k in range(2 * N)] for i, p in enumerate(P)]
    rows.append(q_last)
    return [[r[N + j] for j in range(N)] for r in rows]


def segre_matrix(theta: Sequence) -> List[list]:
    """``mu`` with ``pi = mu_ij gamma_i gamma_j`` (``gamma_{n+1} = 1``)."""
    _check_theta(theta)
    n = len(theta)
    th = [as_scalar(t) for t in theta]
    mu = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            if i != j:
                mu[i][j] = as_scalar((th[i] - th[j]) / (th[i] + th[j]))
        mu[i][n] = Fraction(-1)
        mu[n][i] = Fraction(1)
    return mu


@lru_cache(maxsize=None)
def even_subsets(m: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(I for r in range(0, m + 1, 2) for I in combinations(range(m), r))


def segre_report(theta: Sequence, gamma: Sequence, alpha=None) -> Dict[str, bool]:
    """The three conditions separately: both isotropies and the Pfaffian factorization."""
    _check_theta(theta)
    n = len(theta)
    P = plane_basis(theta, gamma, alpha)
    q_iso = all(not quadratic_form(P[i], P[j]) for i in range(n) for j in range(i, n))
    w_iso = all(not skew_form(theta, P[i], P[j]) for i in range(n) for j in range(i + 1, n))
    pi = graph_matrix(theta, gamma, alpha)
    mu = segre_matrix(theta)
    g = [as_scalar(x) for x in gamma] + [Fraction(1)]
    fact = is_skew(pi)
    if fact:
        for I in even_subsets(n + 1):
            prod = Fraction(1)
            for i in I:
                prod = prod * g[i]
            if pfaffian_minor(pi, I) != as_scalar(pfaffian_minor(mu, I) * prod):
                fact = False
                break
    return {"quadric-isotropic": q_iso, "skew-isotropic": w_iso, "pfaffian-factorization": fact}


def segre_check(theta: Sequence, gamma: Sequence, alpha=None) -> bool:
    return all(segre_report(theta, gamma, alpha).values())


def schur_pfaffian(theta: Sequence):
    """``prod_{i<j} (theta_i - theta_j)/(theta_i + theta_j)``; equals ``Pf`` of the
    leading ``n x n`` block of :func:`segre_matrix` for even ``n``."""
    out = Fraction(1)
    th = [as_scalar(t) for t in theta]
    for i in range(len(th)):
        for j in range(i + 1, len(th)):
            out = out * (th[i] - th[j]) / (th[i] + th[j])
    return as_scalar(out)


def factorial_degrees(top: int) -> Dict[int, Tuple[int, int]]:
    """``n -> (computed degree, n!)`` for ``n = 2..top``."""
    return {n: (staircase_degree(n), factorial(n)) for n in range(2, top + 1)}


def graph_spinor(pi: Sequence[Sequence]):
    """Pure spinor of the maximal isotropic space ``<e_i + sum_j pi_ij f_j>``.

    Its coordinates are the Pfaffian minors of ``pi``: the monomial on the
    complement of ``I`` carries ``(-1)^(sum I + |I|/2) Pf_I(pi)`` (0-based ``I``).
    """
    from .spinor import Spinor

    N = len(pi)
    full = (1 << N) - 1
    terms = {}
    for I in even_subsets(N):
        sign = -1 if (sum(I) + len(I) // 2) % 2 else 1
        terms[full ^ sum(1 << i for i in I)] = sign * pfaffian_minor(pi, I)
    return Spinor(N, terms)


def random_segre_sample(n: int, rng) -> Tuple[List[Fraction], List[Fraction]]:
    """Random admissible ``(theta, gamma)``: nonzero ``theta`` with no ``theta_i + theta_j = 0``."""
    while True:
        theta = [Fraction(rng.randint(1, 9) * rng.choice((1, -1)), rng.randint(1, 4)) for _ in range(n)]
        if all(theta[i] + theta[j] for i in range(n) for j in range(i + 1, n)):
            break
    gamma = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
    return theta, gamma


def segre_batch(n: int, seed: int, count: int = 100) -> Tuple[int, int]:
    """``(passed, count)`` over ``count`` seeded samples of size ``n``."""
    import random
    rng = random.Random(seed)
    ok = 0
    for _ in range(count):
        theta, gamma = random_segre_sample(n, rng)
        ok += segre_check(theta, gamma)
    return ok, count
