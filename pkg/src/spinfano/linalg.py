"""Dense exact linear algebra over Q or Q(sqrt 2).

Matrices are plain lists of rows.  Forward elimination is fraction free
(Bareiss); pivots are the first nonzero entry scanning columns left to right,
so kernel bases come out identical across runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from .scalars import QS2, as_scalar

Matrix = List[list]

__all__ = [
    "Matrix", "zeros", "identity", "matmul", "matvec", "transpose",
    "echelon", "rank", "kernel", "solve", "det", "span_contains",
]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def _denominator(x) -> int:
    if isinstance(x, QS2):
        return lcm(x.a.denominator, x.b.denominator)
    if isinstance(x, Fraction):
        return x.denominator
    return 1


def _integral_row(row) -> list:
    """Scale a row so every entry lies in Z or Z[sqrt2]."""
    d = 1
    for x in row:
        if x:
            d = lcm(d, _denominator(x))
    return [_to_int(x * d) if d != 1 else _to_int(x) for x in row]


def _to_int(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, QS2) and x.b == 0 and x.a.denominator == 1:
        return x.a.numerator
    return x


def echelon(M: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Fraction-free row echelon form.

    Returns the echelon rows (only the ``rank`` nonzero ones) and the pivot
    column of each.  Entries are kept in Z / Z[sqrt2] after clearing
    denominators row by row; Bareiss division by the previous pivot is exact.
    """
    rows = [_integral_row(r) for r in M if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [_exact_div(p * x - f * y, prev) for x, y in zip(row, prow)]
            elif prev != 1 or p != 1:
                rows[i] = [_exact_div(p * x, prev) for x in row]
        pivots.append(c)
        prev = p
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _div(x, d):
    if isinstance(x, int) and isinstance(d, int):
        return Fraction(x, d)
    return x / d


def _exact_div(x, d):
    if d == 1:
        return x
    if isinstance(x, int) and isinstance(d, int):
        return x // d
    q = x / d
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    if isinstance(q, QS2):
        return q.simplify() if q.b == 0 else q
    return q


def rank(M: Sequence[Sequence]) -> int:
    return len(echelon(M)[1])


def kernel(M: Sequence[Sequence], ncols: int | None = None) -> List[list]:
    """Basis of the null space ``{v : M v = 0}``.

    One vector per free column ``f``: ``v[f] = 1``, the other free
    coordinates zero.  ``ncols`` is needed only when ``M`` has no rows.
    """
    if ncols is None:
        if not M:
            raise ValueError("ncols required for a matrix without rows")
        ncols = len(M[0])
    E, pivots = echelon(M) if M else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            row = E[i]
            s = sum((row[j] * v[j] for j in range(c + 1, ncols) if row[j] and v[j]), Fraction(0))
            v[c] = as_scalar(_div(-s, row[c])) if s else Fraction(0)
        basis.append([as_scalar(x) for x in v])
    return basis


def solve(M: Sequence[Sequence], b: Sequence):
    """One solution of ``M x = b`` or ``None`` when inconsistent."""
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    ncols = len(M[0]) if M else 0
    E, pivots = echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        row = E[i]
        s = row[ncols] - sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j] and x[j]), Fraction(0))
        x[c] = as_scalar(_div(s, row[c]))
    return x


def det(M: Sequence[Sequence]):
    """Determinant by Bareiss elimination on a copy of ``M``."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = [[as_scalar(x) for x in r] for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return as_scalar(sign * A[n - 1][n - 1])


def span_contains(gens: Sequence[Sequence], v: Sequence) -> bool:
    """True iff ``v`` lies in the span of ``gens``."""
    if not any(v):
        return True
    return rank(list(gens) + [list(v)]) == rank(gens) if gens else False
