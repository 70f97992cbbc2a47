"""The orthogonal Lie algebra in the split basis and its spin representation.

Everything is matrix-explicit: an element of ``so(2n)`` is a ``2n x 2n``
matrix acting on coordinate vectors (``e`` part then ``f`` part), and a
subalgebra is a list of such matrices.  Odd orthogonal algebras are realised
inside the next even one as the annihilator of an anisotropic vector.

Stabilizers are computed by one kernel per constraint, refining the basis of
the current subalgebra each time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from . import linalg
from .scalars import as_scalar
from .spinor import (
    DimensionError, Spinor, basis_vector, clifford_act, pairing,
)

Matrix = List[list]


def gram(n: int) -> Matrix:
    """Gram matrix of the split form on ``C^{2n}``."""
    J = linalg.zeros(2 * n, 2 * n)
    for i in range(n):
        J[i][n + i] = Fraction(1)
        J[n + i][i] = Fraction(1)
    return J


def is_skew(A: Sequence[Sequence]) -> bool:
    """``A^T J + J A = 0``."""
    m = len(A)
    n = m // 2
    # (J A)_{ij} = A_{i+n mod 2n, j}; the condition reads A[s(j)][i] + A[s(i)][j] = 0
    s = lambda k: k + n if k < n else k - n
    return all(not (A[s(j)][i] + A[s(i)][j]) for i in range(m) for j in range(i, m))


def bivector(x: Sequence, y: Sequence) -> Matrix:
    """The endomorphism ``v -> <y,v> x - <x,v> y``."""
    if len(x) != len(y):
        raise DimensionError("bivector of vectors of different length")
    m = len(x)
    n = m // 2
    # <y, v> as a row: the pairing swaps the e and f halves
    ry = list(y[n:]) + list(y[:n])
    rx = list(x[n:]) + list(x[:n])
    return [[as_scalar(x[i] * ry[j] - y[i] * rx[j]) for j in range(m)] for i in range(m)]


def bracket(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    AB = linalg.matmul(A, B)
    BA = linalg.matmul(B, A)
    return [[as_scalar(a - b) for a, b in zip(r, s)] for r, s in zip(AB, BA)]


def _basis(n: int) -> List[list]:
    return [basis_vector(n, "e", i) for i in range(1, n + 1)] + [basis_vector(n, "f", i) for i in range(1, n + 1)]


def spin_rep(A: Sequence[Sequence], d: Spinor) -> Spinor:
    """Action of ``A in so(2n)`` on a spinor.

    Uses ``A = 1/2 sum_a bivector(A v_a, v^a)`` over a basis with its dual
    basis (``e_i`` and ``f_i`` are dual to each other), and
    ``rho(x ^ y) = 1/2 (x.y. - y.x.)``.
    """
    m = len(A)
    if m != 2 * d.n:
        raise DimensionError(f"{m}x{m} matrix on spinor of rank {d.n}")
    if not is_skew(A):
        raise ValueError("matrix is not in so(V)")
    n = d.n
    out = Spinor(n)
    for a in range(m):
        col = [A[r][a] for r in range(m)]
        if not any(col):
            continue
        dual = basis_vector(n, "f", a + 1) if a < n else basis_vector(n, "e", a - n + 1)
        t = clifford_act(col, clifford_act(dual, d)) - clifford_act(dual, clifford_act(col, d))
        out = out + t
    return out * Fraction(1, 4)


@dataclass
class Subalgebra:
    """A subalgebra of ``so(2n)`` given by a basis of matrices."""

    n: int
    basis: List[Matrix]
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def m(self) -> int:
        return 2 * self.n


def so(n: int) -> Subalgebra:
    """``so(2n)`` with the basis ``bivector(v_a, v_b)``, ``a < b``."""
    vs = _basis(n)
    basis = [bivector(vs[a], vs[b]) for a in range(2 * n) for b in range(a + 1, 2 * n)]
    return Subalgebra(n, basis, f"so{2 * n}")


# ---- constraints -----------------------------------------------------------

@dataclass(frozen=True)
class FixSpinor:
    spinor: Spinor


@dataclass(frozen=True)
class FixLine:
    spinor: Spinor


@dataclass(frozen=True)
class FixSpan:
    """Preserve the span of several spinors (a point of a projective plane)."""
    spinors: Tuple[Spinor, ...]


@dataclass(frozen=True)
class PreserveSubspace:
    gens: Tuple[tuple, ...]


@dataclass(frozen=True)
class AnnihilateVector:
    vector: tuple


@dataclass(frozen=True)
class All:
    parts: Tuple[object, ...] = field(default_factory=tuple)


Constraint = Union[FixSpinor, FixLine, FixSpan, PreserveSubspace, AnnihilateVector, All]


def _flatten_spinors(vals: Sequence[Spinor], extra: Sequence[Spinor] = ()) -> Matrix:
    """Columns are the given spinors; rows indexed by the monomials that occur."""
    cols = list(vals) + list(extra)
    masks = sorted({mk for c in cols for mk in c.terms})
    return [[c.terms.get(mk, Fraction(0)) for c in cols] for mk in masks]


def _conditions(alg: Subalgebra, c) -> Tuple[Matrix, int]:
    """Linear conditions on (coefficients, auxiliary unknowns).

    Returns the matrix and the number of auxiliary columns appended after
    the ``alg.dim`` coefficient columns.
    """
    n = alg.n
    if isinstance(c, FixSpinor):
        _need(c.spinor.n, n)
        return _flatten_spinors([spin_rep(A, c.spinor) for A in alg.basis]), 0
    if isinstance(c, FixLine):
        return _conditions(alg, FixSpan((c.spinor,)))
    if isinstance(c, FixSpan):
        ds = list(c.spinors)
        for d in ds:
            _need(d.n, n)
        rows: Matrix = []
        k = len(ds)
        for i, d in enumerate(ds):
            # rho(A) d_i - sum_j t_ij d_j = 0, unknowns t_ij in block i
            images = [spin_rep(A, d) for A in alg.basis]
            aux = [Spinor(n)] * (k * k)
            for j, dj in enumerate(ds):
                aux[i * k + j] = -dj
            rows.extend(_flatten_spinors(images, aux))
        return rows, k * k
    if isinstance(c, AnnihilateVector):
        h = list(c.vector)
        _need(len(h) // 2, n)
        cols = [linalg.matvec(A, h) for A in alg.basis]
        return linalg.transpose(cols) if cols else [], 0
    if isinstance(c, PreserveSubspace):
        U = [list(u) for u in c.gens]
        for u in U:
            _need(len(u) // 2, n)
        # w . (A u) = 0 for every w in the dot-annihilator of U
        W = linalg.kernel(U, ncols=2 * n)
        rows = []
        for w in W:
            for u in U:
                rows.append([_dot(w, linalg.matvec(A, u)) for A in alg.basis])
        return rows, 0
    raise TypeError(f"unknown constraint {c!r}")


def _dot(w, v):
    return as_scalar(sum((a * b for a, b in zip(w, v) if a and b), Fraction(0)))


def _need(k: int, n: int) -> None:
    if k != n:
        raise DimensionError(f"constraint lives in rank {k}, algebra in rank {n}")


def lie_stabilizer(alg: Subalgebra, constraint: Constraint) -> Subalgebra:
    """The subalgebra of ``alg`` satisfying ``constraint``."""
    if not alg.basis:
        raise ValueError("empty domain")
    if isinstance(constraint, All):
        out = alg
        for part in constraint.parts:
            if not out.basis:
                break
            out = lie_stabilizer(out, part)
        return out
    M, naux = _conditions(alg, constraint)
    if not M:
        return Subalgebra(alg.n, list(alg.basis), alg.label)
    K = linalg.kernel(M, ncols=alg.dim + naux)
    coeffs = [k[: alg.dim] for k in K]
    # drop dependent projections (only possible when an auxiliary unknown is free)
    E, _ = linalg.echelon(coeffs) if coeffs else ([], [])
    basis = [_combine(alg.basis, row) for row in E]
    return Subalgebra(alg.n, basis, alg.label)


def _combine(mats: Sequence[Matrix], coeffs: Sequence) -> Matrix:
    m = len(mats[0])
    out = linalg.zeros(m, m)
    for c, A in zip(coeffs, mats):
        if not c:
            continue
        for i in range(m):
            Ai = A[i]
            oi = out[i]
            for j in range(m):
                if Ai[j]:
                    oi[j] += c * Ai[j]
    return [[as_scalar(x) for x in r] for r in out]


def flatten(A: Sequence[Sequence]) -> list:
    return [x for r in A for x in r]


def contains(alg: Subalgebra, A: Sequence[Sequence]) -> bool:
    return linalg.span_contains([flatten(B) for B in alg.basis], flatten(A))


def is_closed(alg: Subalgebra) -> bool:
    """Exact check that ``alg`` is closed under the commutator."""
    flat = [flatten(B) for B in alg.basis]
    r = linalg.rank(flat)
    brackets = []
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            C = bracket(alg.basis[a], alg.basis[b])
            if any(flatten(C)):
                brackets.append(flatten(C))
    return linalg.rank(flat + brackets) == r if brackets else True


def centralizer(alg: Subalgebra, of: Subalgebra) -> Subalgebra:
    """Elements of ``alg`` commuting with every element of ``of``."""
    rows = []
    for B in of.basis:
        cols = [flatten(bracket(A, B)) for A in alg.basis]
        rows.extend(linalg.transpose(cols))
    rows = [r for r in rows if any(r)]
    if not rows:
        return Subalgebra(alg.n, list(alg.basis), alg.label)
    K = linalg.kernel(rows, ncols=alg.dim)
    return Subalgebra(alg.n, [_combine(alg.basis, k) for k in K], alg.label)


def odd_model(n: int, h: Sequence) -> Subalgebra:
    """``so(2n-1)`` as the annihilator of the anisotropic vector ``h`` in ``so(2n)``."""
    if not pairing(h, h):
        raise ValueError("vector is isotropic")
    return lie_stabilizer(so(n), AnnihilateVector(tuple(h)))


@dataclass(frozen=True)
class OrbitReport:
    ambient: int
    stabilizer: int

    @property
    def orbit(self) -> int:
        return self.ambient - self.stabilizer


def orbit_report(alg: Subalgebra, ambient: Constraint, point: Constraint) -> Tuple[Subalgebra, Subalgebra, OrbitReport]:
    """Stabilizer of a configuration inside ``alg``, then of a point inside that."""
    s = lie_stabilizer(alg, ambient)
    sp = lie_stabilizer(s, point)
    return s, sp, OrbitReport(s.dim, sp.dim)


def largest_ideal_in(alg: Subalgebra, sub: Subalgebra) -> Subalgebra:
    """The largest ideal of ``alg`` contained in the subalgebra ``sub``.

    Iterates ``K -> {A in K : [alg, A] in K}`` from ``K = sub``.  Elements
    of the result are exactly those whose vector fields vanish on the whole
    orbit through a point with stabilizer ``sub``.
    """
    K = sub
    while K.basis:
        rows = []
        span = [flatten(B) for B in K.basis]
        E, piv = linalg.echelon(span)
        # coordinates of [X, A] must lie in span(K); impose via the annihilator of span(K)
        ann = linalg.kernel(E, ncols=len(span[0]))
        for X in alg.basis:
            cols = [flatten(bracket(X, A)) for A in K.basis]
            for a in ann:
                rows.append([_dot(a, c) for c in cols])
        rows = [r for r in rows if any(r)]
        if not rows:
            return K
        coeffs = linalg.kernel(rows, ncols=K.dim)
        if len(coeffs) == K.dim:
            return K
        K = Subalgebra(K.n, [_combine(K.basis, c) for c in coeffs], K.label)
    return K


def _exp_nilpotent(N: Matrix) -> Matrix:
    m = len(N)
    out = linalg.identity(m)
    term = linalg.identity(m)
    k = 0
    while True:
        k += 1
        term = [[as_scalar(x / k) for x in r] for r in linalg.matmul(term, N)]
        if not any(x for r in term for x in r):
            return out
        if k > m:
            raise ValueError("matrix is not nilpotent")
        out = [[as_scalar(a + b) for a, b in zip(r, s)] for r, s in zip(out, term)]


def nilpotent_parts(alg: Subalgebra, rng) -> Tuple[List[Matrix], List[Matrix]]:
    """Raising and lowering parts of ``alg`` for a random diagonal element of it.

    ``alg`` is stable under ``ad H`` for ``H`` in ``alg``; splitting each basis
    element by the eigenvalue ``H_ii - H_jj`` of its entries gives components
    that stay in ``alg``, and those of positive (negative) eigenvalue are
    nilpotent matrices.
    """
    m = alg.m
    off = [(i, j) for i in range(m) for j in range(m) if i != j]
    rows = [[A[i][j] for A in alg.basis] for i, j in off]
    diag = linalg.kernel(rows, ncols=alg.dim)
    if not diag:
        raise ValueError("the subalgebra contains no diagonal element")
    weights = [rng.randint(-50, 50) for _ in diag]
    H = _combine(alg.basis, [sum(w * d[a] for w, d in zip(weights, diag)) for a in range(alg.dim)])
    h = [H[i][i] for i in range(m)]
    up, down = [], []
    for A in alg.basis:
        pos = [[A[i][j] if i != j and h[i] - h[j] > 0 else Fraction(0) for j in range(m)] for i in range(m)]
        neg = [[A[i][j] if i != j and h[i] - h[j] < 0 else Fraction(0) for j in range(m)] for i in range(m)]
        if any(x for r in pos for x in r):
            up.append(pos)
        if any(x for r in neg for x in r):
            down.append(neg)
    return up, down


def random_group_element(alg: Subalgebra, rng, rounds: int = 2) -> Matrix:
    """Product of exponentials of random raising and lowering elements of ``alg``.

    The result lies in the connected group of ``alg`` and has rational (or
    Q(sqrt 2)) entries.
    """
    up, down = nilpotent_parts(alg, rng)
    g = linalg.identity(alg.m)
    for _ in range(rounds):
        for part in (up, down):
            if not part:
                continue
            N = _combine(part, [Fraction(rng.randint(-3, 3)) for _ in part])
            if any(x for r in N for x in r):
                g = [[as_scalar(x) for x in r] for r in linalg.matmul(_exp_nilpotent(N), g)]
    return g
