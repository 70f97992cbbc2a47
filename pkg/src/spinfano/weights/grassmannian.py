"""Orthogonal Grassmannians as quotients G/P.

``OG(k, m)`` is ``Spin_m / P`` where ``P`` is the parabolic attached to a set
of marked Dynkin nodes:

* type B (``m = 2n+1``): node ``k``;
* type D (``m = 2n``): node ``k`` for ``k <= n-2``, nodes ``{n-1, n}`` for
  ``k = n-1`` (Picard rank two), node ``n`` for ``OG(n,2n)_+`` and node
  ``n-1`` for ``OG(n,2n)_-``.

The Levi factor is generated by the unmarked simple roots.  A homogeneous
bundle ``E_lam`` is the one induced from the irreducible Levi module of
highest weight ``lam``; with this convention ``H^0(E_lam) = V_lam`` for
dominant ``lam``, so ``U^vee = E_{w1}`` and the tangent bundle has the
positive roots outside the Levi as weights.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from .roots import RootSystem, Weight, dot, root_system


class OGSpace:
    def __init__(self, k: int, m: int, component: Optional[str] = None):
        if m < 5:
            raise ValueError("need m >= 5")
        n = m // 2
        kind = "B" if m % 2 else "D"
        if not 1 <= k <= n:
            raise ValueError(f"k={k} out of range for m={m}")
        if kind == "D" and k == n:
            if component not in ("+", "-"):
                raise ValueError("OG(n,2n) needs a component '+' or '-'")
        elif component is not None:
            raise ValueError("component only applies to OG(n,2n)")
        self.k, self.m, self.n, self.kind, self.component = k, m, n, kind, component
        self.rs: RootSystem = root_system(kind, n)
        if kind == "D" and k == n:
            self.marked = (n,) if component == "+" else (n - 1,)
        elif kind == "D" and k == n - 1:
            self.marked = (n - 1, n)
        else:
            self.marked = (k,)
        self.levi_simple = [a for i, a in enumerate(self.rs.simple, 1) if i not in self.marked]
        self.levi_positive = _closure(self.levi_simple, set(self.rs.positive))
        lp = set(self.levi_positive)
        self.nilradical = [a for a in self.rs.positive if a not in lp]
        self.rho_levi = tuple(sum(a[i] for a in self.levi_positive) for i in range(n))
        self._S = np.array(self.levi_simple, dtype=np.int64).reshape(-1, n)
        self._norms = np.array([dot(a, a) for a in self.levi_simple], dtype=np.int64)

    # ---- identity --------------------------------------------------------

    @property
    def name(self) -> str:
        c = "" if self.component is None else self.component
        return f"OG({self.k},{self.m}){c}"

    def __repr__(self):
        return f"OGSpace({self.k}, {self.m}, {self.component!r})"

    def __eq__(self, other):
        return isinstance(other, OGSpace) and (self.k, self.m, self.component) == (other.k, other.m, other.component)

    def __hash__(self):
        return hash((self.k, self.m, self.component))

    @property
    def dim(self) -> int:
        return len(self.nilradical)

    @property
    def picard_rank(self) -> int:
        return len(self.marked)

    def expected_dim(self) -> int:
        k, m = self.k, self.m
        return k * (m - k) - k * (k + 1) // 2

    # ---- weights -----------------------------------------------------------

    def is_levi_dominant(self, lam: Weight) -> bool:
        return all(dot(lam, a) >= 0 for a in self.levi_simple)

    def levi_dominant(self, lam: Weight) -> Tuple[Weight, int, bool]:
        """Levi Weyl-group representative in the dominant chamber (rows of one)."""
        from ._kernels import reflect_to_chamber

        Y, s, sing = reflect_to_chamber(np.array([lam], dtype=np.int64), self._S, self._norms)
        return tuple(int(v) for v in Y[0]), int(s[0]), bool(sing[0])

    def levi_orbit(self, lam: Weight) -> List[Weight]:
        """The Levi Weyl-group orbit of ``lam`` (sorted)."""
        seen = {tuple(lam)}
        todo = [tuple(lam)]
        while todo:
            x = todo.pop()
            for a in self.levi_simple:
                c = 2 * dot(x, a) // dot(a, a)
                if c:
                    y = tuple(xi - c * ai for xi, ai in zip(x, a))
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
        return sorted(seen)

    def marked_fundamental(self, node: Optional[int] = None) -> Weight:
        if node is None:
            if len(self.marked) != 1:
                raise ValueError(f"{self.name} has Picard rank {len(self.marked)}; name the node")
            node = self.marked[0]
        if node not in self.marked:
            raise ValueError(f"node {node} is not marked on {self.name}")
        return self.rs.fundamental[node - 1]

    def line_bundle(self, t: int) -> Weight:
        return tuple(t * x for x in self.marked_fundamental())

    def canonical(self) -> Weight:
        """Weight of the canonical bundle, minus the sum of tangent weights."""
        return tuple(-2 * x for x in _half_sum(self.nilradical, self.n))

    def picard_coords(self, lam: Weight) -> Tuple[int, ...]:
        """Coefficients of a character of P on the marked fundamental weights."""
        if not all(dot(lam, a) == 0 for a in self.levi_simple):
            raise ValueError(f"{lam} is not a character of the parabolic")
        labels = self.rs.to_fundamental(lam)
        return tuple(labels[i - 1] for i in self.marked)

    # ---- structural bundles as weight lists -------------------------------------

    def weights_dual_tautological(self) -> List[Weight]:
        e1 = tuple(2 if j == 0 else 0 for j in range(self.n))
        return self.levi_orbit(e1)

    def weights_vector(self) -> List[Weight]:
        n = self.n
        out = []
        for j in range(n):
            for s in (2, -2):
                out.append(tuple(s if t == j else 0 for t in range(n)))
        if self.kind == "B":
            out.append((0,) * n)
        return out

    def weights_quotient(self) -> List[Weight]:
        """Weights of ``U^perp / U``."""
        ud = self.weights_dual_tautological()
        drop = set(ud) | {tuple(-x for x in w) for w in ud}
        rest = [w for w in self.weights_vector() if w not in drop or not any(w)]
        # the zero weight (type B) is never in U or U^vee
        return rest

    def weights_spinor(self, sign: str = "") -> List[Weight]:
        """``S``, ``S+`` or ``S-`` as the Levi orbit of the (half-)spin highest weight."""
        n = self.n
        if self.kind == "B":
            if sign not in ("",):
                raise ValueError("type B has a single spinor bundle S")
            return self.levi_orbit(self.rs.fundamental[n - 1])
        if sign == "+":
            return self.levi_orbit(self.rs.fundamental[n - 1])
        if sign == "-":
            return self.levi_orbit(self.rs.fundamental[n - 2])
        raise ValueError("type D needs S+ or S-")

    def weights_tangent(self) -> List[Weight]:
        return [tuple(2 * x for x in a) for a in self.nilradical]


def _half_sum(roots, n) -> Weight:
    return tuple(sum(a[i] for a in roots) for i in range(n))  # doubled half-sum = plain sum


def _closure(simple, positive_set) -> List[Weight]:
    out = set(simple)
    todo = list(simple)
    while todo:
        a = todo.pop()
        for s in simple:
            b = tuple(x + y for x, y in zip(a, s))
            if b in positive_set and b not in out:
                out.add(b)
                todo.append(b)
    return sorted(out)


@lru_cache(maxsize=None)
def og_space(k: int, m: int, component: Optional[str] = None) -> OGSpace:
    return OGSpace(k, m, component)


def parse_space(text: str) -> OGSpace:
    """``OG(3,10)``, ``OG(5,10)+`` or the compact ``OG3-10``/``OG5-10+``."""
    import re

    t = text.replace(" ", "")
    m = re.fullmatch(r"OG\((\d+),(\d+)\)([+-]?)", t) or re.fullmatch(r"OG(\d+)-(\d+)([+-]?)", t)
    if not m:
        raise ValueError(f"cannot parse space {text!r}")
    return og_space(int(m.group(1)), int(m.group(2)), m.group(3) or None)
