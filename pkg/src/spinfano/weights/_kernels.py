"""Batch kernels over arrays of weights.

Two implementations of each kernel: a numba ``@njit`` loop and a vectorised
numpy version.  The numba path is used when numba imports and the
environment variable ``SPINFANO_NO_NUMBA`` is unset or ``0``; results are
identical (tests compare them).
"""

from __future__ import annotations

import os

import numpy as np

BITS = 9
OFFSET = 1 << (BITS - 1)
MASK = (1 << BITS) - 1
MAX_RANK = 63 // BITS

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def numba_enabled() -> bool:
    return _HAVE_NUMBA and os.environ.get("SPINFANO_NO_NUMBA", "0") in ("", "0")


# ---- packing ---------------------------------------------------------------

def pack(X: np.ndarray) -> np.ndarray:
    """Pack integer rows (entries in ``[-256, 255]``) into int64 keys.

    Keys preserve lexicographic order of the rows, so sorted keys list the
    weights in lexicographic order of doubled coordinates.
    """
    X = np.asarray(X, dtype=np.int64)
    n = X.shape[1]
    if n > MAX_RANK:
        raise ValueError(f"rank {n} too large for packed weights")
    if X.size and (X.min() < -OFFSET or X.max() >= OFFSET):
        raise OverflowError("weight coordinate out of packing range")
    keys = np.zeros(X.shape[0], dtype=np.int64)
    for j in range(n):
        keys = (keys << BITS) | (X[:, j] + OFFSET)
    return keys


def unpack(keys: np.ndarray, n: int) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty((keys.shape[0], n), dtype=np.int64)
    k = keys.copy()
    for j in range(n - 1, -1, -1):
        out[:, j] = (k & MASK) - OFFSET
        k >>= BITS
    return out


def reduce_sorted(keys: np.ndarray, mults: np.ndarray):
    """Merge equal keys, summing multiplicities; drop zero totals."""
    if keys.size == 0:
        return keys.astype(np.int64), mults.astype(np.int64)
    order = np.argsort(keys, kind="stable")
    k = keys[order]
    m = mults[order].astype(np.int64)
    starts = np.flatnonzero(np.concatenate(([True], k[1:] != k[:-1])))
    uk = k[starts]
    um = np.add.reduceat(m, starts)
    nz = um != 0
    return uk[nz], um[nz]


# ---- reflection into a chamber -----------------------------------------------

def _reflect_numpy(X, S, norms):
    X = np.array(X, dtype=np.int64, copy=True)
    N = X.shape[0]
    sign = np.ones(N, dtype=np.int64)
    if N == 0 or S.shape[0] == 0:
        sing = np.zeros(N, dtype=np.bool_)
        if S.shape[0]:
            sing = (X @ S.T == 0).any(axis=1)
        return X, sign, sing
    active = np.arange(N)
    while active.size:
        D = X[active] @ S.T
        neg = D < 0
        has = neg.any(axis=1)
        active = active[has]
        if not active.size:
            break
        neg = neg[has]
        D = D[has]
        j = neg.argmax(axis=1)
        c = 2 * D[np.arange(active.size), j] // norms[j]
        X[active] -= c[:, None] * S[j]
        sign[active] = -sign[active]
    sing = (X @ S.T == 0).any(axis=1)
    return X, sign, sing


if _HAVE_NUMBA:

    @njit(cache=True)
    def _reflect_numba(X, S, norms):  # pragma: no cover - compiled
        N, n = X.shape
        r = S.shape[0]
        Y = X.copy()
        sign = np.ones(N, dtype=np.int64)
        sing = np.zeros(N, dtype=np.bool_)
        for i in range(N):
            while True:
                moved = False
                for a in range(r):
                    d = 0
                    for t in range(n):
                        d += Y[i, t] * S[a, t]
                    if d < 0:
                        c = 2 * d // norms[a]
                        for t in range(n):
                            Y[i, t] -= c * S[a, t]
                        sign[i] = -sign[i]
                        moved = True
                        break
                if not moved:
                    break
            for a in range(r):
                d = 0
                for t in range(n):
                    d += Y[i, t] * S[a, t]
                if d == 0:
                    sing[i] = True
                    break
        return Y, sign, sing


def reflect_to_chamber(X: np.ndarray, S: np.ndarray, norms: np.ndarray):
    """Move each row of ``X`` into the closed chamber cut out by simple roots ``S``.

    ``X`` holds doubled weights, ``S`` plain roots, ``norms`` their squared
    lengths.  Returns the moved rows, ``(-1)^(number of reflections)`` and a
    flag marking rows that end on a wall.
    """
    X = np.ascontiguousarray(X, dtype=np.int64)
    S = np.ascontiguousarray(S, dtype=np.int64).reshape(-1, X.shape[1] if X.ndim == 2 else 0)
    norms = np.ascontiguousarray(norms, dtype=np.int64)
    if numba_enabled() and X.shape[0] and S.shape[0]:
        return _reflect_numba(X, S, norms)
    return _reflect_numpy(X, S, norms)


def pair_counts(X: np.ndarray, P: np.ndarray):
    """For each row: number of roots in ``P`` pairing negatively, and whether any pairs to zero."""
    D = np.asarray(X, dtype=np.int64) @ np.asarray(P, dtype=np.int64).T
    return (D < 0).sum(axis=1), (D == 0).any(axis=1)
