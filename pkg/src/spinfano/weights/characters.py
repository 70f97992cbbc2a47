"""Characters of Levi modules as multisets of weights.

A ``Character`` is a sorted array of packed weight keys with integer
multiplicities (negative multiplicities allowed for virtual modules).  The
Levi decomposition uses the Racah-Speiser rule: each weight ``nu`` is moved by
the Levi Weyl group ``u`` so that ``u(nu + rho_L)`` is Levi-dominant and
contributes ``sign(u)`` copies of ``u(nu + rho_L) - rho_L``; weights landing
on a wall cancel.  Summing over the weights of a module reproduces its
decomposition into irreducibles exactly, since the Weyl character of a
non-dominant weight is the signed character of its reflected weight.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Tuple

import numpy as np

from . import _kernels as K
from .grassmannian import OGSpace
from .roots import Weight

CHUNK = 1 << 20


class Character:
    __slots__ = ("n", "keys", "mults")

    def __init__(self, n: int, keys=None, mults=None, reduced: bool = False):
        self.n = n
        if keys is None:
            keys = np.zeros(0, dtype=np.int64)
            mults = np.zeros(0, dtype=np.int64)
        keys = np.asarray(keys, dtype=np.int64)
        mults = np.asarray(mults, dtype=np.int64)
        if not reduced:
            keys, mults = K.reduce_sorted(keys, mults)
        self.keys = keys
        self.mults = mults

    # ---- construction ---------------------------------------------------------

    @classmethod
    def from_weights(cls, n: int, weights: Iterable[Weight], mults: Iterable[int] | None = None) -> "Character":
        W = np.array(list(weights), dtype=np.int64).reshape(-1, n)
        m = np.ones(W.shape[0], dtype=np.int64) if mults is None else np.array(list(mults), dtype=np.int64)
        return cls(n, K.pack(W), m)

    @classmethod
    def from_dict(cls, n: int, d: Dict[Weight, int]) -> "Character":
        return cls.from_weights(n, list(d), list(d.values()))

    @classmethod
    def trivial(cls, n: int) -> "Character":
        return cls.from_weights(n, [(0,) * n])

    @classmethod
    def zero(cls, n: int) -> "Character":
        return cls(n)

    # ---- access ---------------------------------------------------------------

    @property
    def weights(self) -> np.ndarray:
        return K.unpack(self.keys, self.n)

    def items(self) -> Iterator[Tuple[Weight, int]]:
        for w, m in zip(self.weights.tolist(), self.mults.tolist()):
            yield tuple(w), m

    def to_dict(self) -> Dict[Weight, int]:
        return dict(self.items())

    def __len__(self):
        return int(self.keys.size)

    def rank(self) -> int:
        """Virtual dimension: the sum of multiplicities."""
        return int(self.mults.sum())

    def is_zero(self) -> bool:
        return self.keys.size == 0

    def is_effective(self) -> bool:
        return bool((self.mults >= 0).all())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.keys, other.keys) and np.array_equal(self.mults, other.mults)

    def __repr__(self):
        return f"Character(n={self.n}, {len(self)} weights, rank {self.rank()})"

    # ---- ring operations --------------------------------------------------------

    def __add__(self, other: "Character") -> "Character":
        _same(self, other)
        return Character(self.n, np.concatenate([self.keys, other.keys]), np.concatenate([self.mults, other.mults]))

    def __neg__(self) -> "Character":
        return Character(self.n, self.keys, -self.mults, reduced=True)

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def scale(self, c: int) -> "Character":
        return Character(self.n, self.keys, self.mults * c) if c else Character(self.n)

    def shift(self, lam: Weight) -> "Character":
        """Tensor with the one-dimensional character ``lam``."""
        return Character(self.n, self.keys + _key_delta(lam), self.mults, reduced=True)

    def dual(self) -> "Character":
        return Character(self.n, K.pack(-self.weights), self.mults)

    def __mul__(self, other: "Character") -> "Character":
        _same(self, other)
        a, b = (self, other) if len(self) >= len(other) else (other, self)
        out_k, out_m = [], []
        base = _key_base(self.n)
        for kb, mb in zip(b.keys.tolist(), b.mults.tolist()):
            out_k.append(a.keys + (kb - base))
            out_m.append(a.mults * mb)
            if len(out_k) > 64:
                k, m = K.reduce_sorted(np.concatenate(out_k), np.concatenate(out_m))
                out_k, out_m = [k], [m]
        if not out_k:
            return Character(self.n)
        return Character(self.n, np.concatenate(out_k), np.concatenate(out_m))

    def power(self, e: int) -> "Character":
        out = Character.trivial(self.n)
        for _ in range(e):
            out = out * self
        return out


def _same(a: Character, b: Character) -> None:
    if a.n != b.n:
        raise ValueError(f"characters of rank {a.n} and {b.n}")


def _key_base(n: int) -> int:
    """Packed key of the zero weight; keys add as ``k1 + k2 - base``."""
    return int(K.pack(np.zeros((1, n), dtype=np.int64))[0])


def _key_delta(lam: Weight) -> int:
    n = len(lam)
    return int(K.pack(np.array([lam], dtype=np.int64))[0]) - _key_base(n)


# ---- exterior and symmetric powers ----------------------------------------------

def exterior_powers(ch: Character, top: int) -> List[Character]:
    """``[wedge^0, ..., wedge^top]`` of an effective character."""
    return _graded_powers(ch, top, exterior=True)


def symmetric_powers(ch: Character, top: int) -> List[Character]:
    return _graded_powers(ch, top, exterior=False)


def _graded_powers(ch: Character, top: int, exterior: bool) -> List[Character]:
    if not ch.is_effective():
        raise ValueError("powers of a virtual character")
    n = ch.n
    base = _key_base(n)
    levels = [(np.array([base], dtype=np.int64), np.array([1], dtype=np.int64))]
    levels += [(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)) for _ in range(top)]
    # one weight at a time, counted with multiplicity
    for key, mult in zip(ch.keys.tolist(), ch.mults.tolist()):
        d = key - base
        for _ in range(mult):
            if exterior:
                for p in range(top, 0, -1):
                    pk, pm = levels[p - 1]
                    if pk.size:
                        k, m = levels[p]
                        levels[p] = K.reduce_sorted(np.concatenate([k, pk + d]), np.concatenate([m, pm]))
            else:
                for p in range(1, top + 1):
                    pk, pm = levels[p - 1]
                    if pk.size:
                        k, m = levels[p]
                        levels[p] = K.reduce_sorted(np.concatenate([k, pk + d]), np.concatenate([m, pm]))
    return [Character(n, k, m, reduced=True) for k, m in levels]


def exterior_power(ch: Character, p: int) -> Character:
    return exterior_powers(ch, p)[p]


def symmetric_power(ch: Character, p: int) -> Character:
    return symmetric_powers(ch, p)[p]


# ---- Levi decomposition ---------------------------------------------------------

def levi_decompose(X: OGSpace, ch: Character) -> Character:
    """Irreducible Levi constituents of ``ch``, returned as a character on highest weights.

    Multiplicities are exact and, for an honest module, nonnegative.
    """
    rho = np.array(X.rho_levi, dtype=np.int64)
    out_k, out_m = [], []
    for lo in range(0, len(ch), CHUNK):
        W = K.unpack(ch.keys[lo:lo + CHUNK], ch.n) + rho
        Y, s, sing = K.reflect_to_chamber(W, X._S, X._norms)
        keep = ~sing
        out_k.append(K.pack(Y[keep] - rho))
        out_m.append(ch.mults[lo:lo + CHUNK][keep] * s[keep])
    if not out_k:
        return Character(ch.n)
    return Character(ch.n, np.concatenate(out_k), np.concatenate(out_m))


def tensor_decompose(X: OGSpace, irreps: Character, other: Character) -> Character:
    """Levi decomposition of ``(sum of irreducibles) x other`` by Brauer-Klimyk.

    ``irreps`` lists highest weights with multiplicities; ``other`` is a full
    weight character.  Each pair ``(lam, nu)`` contributes the Racah-Speiser
    image of ``lam + nu``.
    """
    _same(irreps, other)
    n = X.n
    if irreps.is_zero() or other.is_zero():
        return Character(n)
    rho = np.array(X.rho_levi, dtype=np.int64)
    A = K.unpack(irreps.keys, n) + rho
    Bw = K.unpack(other.keys, n)
    am, bm = irreps.mults, other.mults
    step = max(1, CHUNK // max(1, A.shape[0]))
    acc_k, acc_m = [], []
    for lo in range(0, Bw.shape[0], step):
        B = Bw[lo:lo + step]
        W = (A[None, :, :] + B[:, None, :]).reshape(-1, n)
        M = (bm[lo:lo + step][:, None] * am[None, :]).reshape(-1)
        Y, s, sing = K.reflect_to_chamber(W, X._S, X._norms)
        keep = ~sing
        k, m = K.reduce_sorted(K.pack(Y[keep] - rho), M[keep] * s[keep])
        acc_k.append(k)
        acc_m.append(m)
        if len(acc_k) > 16:
            k, m = K.reduce_sorted(np.concatenate(acc_k), np.concatenate(acc_m))
            acc_k, acc_m = [k], [m]
    return Character(n, np.concatenate(acc_k), np.concatenate(acc_m))
