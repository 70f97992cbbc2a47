"""Root data for the orthogonal types B_n and D_n.

Weights are stored in doubled epsilon coordinates: the tuple ``(2a_1, ..., 2a_n)``
stands for ``a_1 eps_1 + ... + a_n eps_n``.  Spin weights then have odd
entries and tensor weights even ones; arithmetic stays in the integers.
Roots are kept in plain (undoubled) epsilon coordinates.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod
from typing import List, Sequence, Tuple

Weight = Tuple[int, ...]


class NotDominant(ValueError):
    pass


class RootSystem:
    """Positive roots, simple roots, fundamental weights and rho."""

    def __init__(self, kind: str, n: int):
        if kind not in ("B", "D"):
            raise ValueError(f"unsupported type {kind!r}")
        if n < (2 if kind == "B" else 3):
            raise ValueError(f"rank {n} too small for type {kind}")
        self.kind = kind
        self.n = n
        self.positive = self._positive()
        self.simple = self._simple()
        self.rho = tuple(sum(a[i] for a in self.positive) for i in range(n))  # doubled = sum of roots
        self.fundamental = [self._fundamental(i) for i in range(1, n + 1)]

    def __repr__(self):
        return f"RootSystem({self.kind!r}, {self.n})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def _positive(self) -> List[Weight]:
        n = self.n
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                for s in (-1, 1):
                    a = [0] * n
                    a[i] = 1
                    a[j] = s
                    out.append(tuple(a))
        if self.kind == "B":
            for i in range(n):
                a = [0] * n
                a[i] = 1
                out.append(tuple(a))
        return out

    def _simple(self) -> List[Weight]:
        n = self.n
        out = []
        for i in range(n - 1):
            a = [0] * n
            a[i], a[i + 1] = 1, -1
            out.append(tuple(a))
        a = [0] * n
        if self.kind == "B":
            a[n - 1] = 1
        else:
            a[n - 2] = a[n - 1] = 1
        out.append(tuple(a))
        return out

    def _fundamental(self, i: int) -> Weight:
        n = self.n
        if self.kind == "B":
            if i < n:
                return tuple(2 if j < i else 0 for j in range(n))
            return (1,) * n
        if i <= n - 2:
            return tuple(2 if j < i else 0 for j in range(n))
        if i == n - 1:
            return (1,) * (n - 1) + (-1,)
        return (1,) * n

    # ---- coordinates -------------------------------------------------------

    def from_fundamental(self, coeffs: Sequence[int]) -> Weight:
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients")
        return tuple(sum(c * w[j] for c, w in zip(coeffs, self.fundamental)) for j in range(self.n))

    def to_fundamental(self, lam: Weight) -> Tuple[int, ...]:
        """Dynkin labels ``2(lam, a_i)/(a_i, a_i)``; raises on non-integral weights."""
        out = []
        for a in self.simple:
            num = dot(lam, a)  # 2 (lam, a) because lam is doubled
            norm = sum(x * x for x in a)
            q, r = divmod(num, norm)
            if r:
                raise ValueError(f"weight {lam} is not integral")
            out.append(q)
        return tuple(out)

    def is_dominant(self, lam: Weight) -> bool:
        return all(dot(lam, a) >= 0 for a in self.simple)

    def is_weight(self, lam: Weight) -> bool:
        """Integral weight: entries all even or (type B, or D) all odd."""
        return len(lam) == self.n and len({x & 1 for x in lam}) <= 1

    # ---- Weyl group --------------------------------------------------------

    def dominant_form(self, x: Weight) -> Tuple[Weight, int, bool]:
        """Conjugate ``x`` into the closed dominant chamber.

        Returns the dominant representative, the number of positive roots
        pairing negatively with ``x`` (the length of the Weyl element used
        when ``x`` is regular) and whether ``x`` is singular.
        """
        singular = False
        length = 0
        for a in self.positive:
            p = dot(x, a)
            if p < 0:
                length += 1
            elif p == 0:
                singular = True
        mags = sorted((abs(v) for v in x), reverse=True)
        if self.kind == "D" and mags[-1] != 0 and sum(1 for v in x if v < 0) % 2:
            mags[-1] = -mags[-1]
        return tuple(mags), length, singular

    def weyl_dim(self, mu: Weight) -> int:
        if not self.is_dominant(mu):
            raise NotDominant(f"{mu} is not dominant")
        return _weyl_dim(self.kind, self.n, tuple(mu))

    def weyl_dim_signed(self, lam: Weight) -> int:
        """Weyl's polynomial at any weight: the Euler characteristic of ``L_lam`` on ``G/B``."""
        return _weyl_dim(self.kind, self.n, tuple(lam))

    def dual(self, lam: Weight) -> Weight:
        """Highest weight of the dual representation, ``-w0(lam)``."""
        if self.kind == "D" and self.n % 2:
            return tuple(lam[:-1]) + (-lam[-1],)
        return tuple(lam)


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


@lru_cache(maxsize=None)
def _weyl_dim(kind: str, n: int, lam: Weight) -> int:
    rs = root_system(kind, n)
    shifted = tuple(a + b for a, b in zip(lam, rs.rho))
    num = prod(dot(shifted, a) for a in rs.positive)
    den = _rho_product(kind, n)
    q, r = divmod(num, den)
    assert not r
    return q


@lru_cache(maxsize=None)
def _rho_product(kind: str, n: int) -> int:
    rs = root_system(kind, n)
    return prod(dot(rs.rho, a) for a in rs.positive)


@lru_cache(maxsize=None)
def root_system(kind: str, n: int) -> RootSystem:
    return RootSystem(kind, n)


def parse_weight(text: str, rs: RootSystem) -> Weight:
    """Parse ``w1-2w3+w4`` (fundamental coordinates) into doubled epsilon coordinates.

    ``0`` denotes the zero weight.
    """
    import re

    s = text.replace(" ", "")
    if s in ("0", ""):
        return (0,) * rs.n
    coeffs = [0] * rs.n
    pos = 0
    pat = re.compile(r"([+-]?)(\d*)\*?w(\d+)")
    while pos < len(s):
        m = pat.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse weight {text!r} at {pos}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        i = int(m.group(3))
        if not 1 <= i <= rs.n:
            raise ValueError(f"w{i} outside 1..{rs.n}")
        coeffs[i - 1] += c
        pos = m.end()
    return rs.from_fundamental(coeffs)


def fmt_weight(lam: Weight, rs: RootSystem) -> str:
    c = rs.to_fundamental(lam)
    parts = []
    for i, x in enumerate(c, 1):
        if not x:
            continue
        mag = "" if abs(x) == 1 else str(abs(x))
        parts.append(("-" if x < 0 else "+") + f"{mag}w{i}")
    out = "".join(parts)
    return (out[1:] if out.startswith("+") else out) or "0"


def triality_relabel(lam: Weight, rs: RootSystem) -> Weight:
    """Outer automorphism of ``D4`` exchanging the end nodes 1 and 4 (nodes 2, 3 fixed)."""
    if rs.kind != "D" or rs.n != 4:
        raise ValueError(f"triality needs D4, got {rs.kind}{rs.n}")
    c = rs.to_fundamental(lam)
    return rs.from_fundamental((c[3], c[1], c[2], c[0]))
