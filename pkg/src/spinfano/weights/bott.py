"""Borel-Weil-Bott on orthogonal Grassmannians."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import _kernels as K
from .characters import Character
from .grassmannian import OGSpace, og_space
from .roots import Weight


@dataclass(frozen=True)
class CohomologyResult:
    """``H^q(G/P, E_lam) = V_mu`` of dimension ``dim``, or nothing at all."""

    acyclic: bool
    q: Optional[int] = None
    mu: Optional[Weight] = None
    dim: int = 0

    def __str__(self):
        if self.acyclic:
            return "acyclic"
        return f"H^{self.q} = V{list(self.mu)} (dim {self.dim})"


ACYCLIC = CohomologyResult(True)


def _space(X, m=None, component=None) -> OGSpace:
    if isinstance(X, OGSpace):
        return X
    return og_space(X, m, component)


def bott(X, lam: Weight, m: Optional[int] = None, component: Optional[str] = None) -> CohomologyResult:
    """Cohomology of the irreducible bundle ``E_lam``.

    ``X`` is an :class:`OGSpace` or ``k`` (then pass ``m``).  ``lam`` must be
    Levi-dominant and integral.
    """
    X = _space(X, m, component)
    lam = tuple(lam)
    rs = X.rs
    if not rs.is_weight(lam):
        raise ValueError(f"{lam} is not an integral weight of {rs}")
    if not X.is_levi_dominant(lam):
        raise ValueError(f"{lam} is not dominant for the Levi factor of {X.name}")
    x = tuple(a + b for a, b in zip(lam, rs.rho))
    dom, length, singular = rs.dominant_form(x)
    if singular:
        return ACYCLIC
    mu = tuple(a - b for a, b in zip(dom, rs.rho))
    return CohomologyResult(False, length, mu, rs.weyl_dim(mu))


@dataclass
class Cohomology:
    """Cohomology of a completely reducible bundle, degree by degree.

    ``groups[q]`` maps a G-highest weight to its multiplicity in ``H^q``.
    """

    groups: Dict[int, Dict[Weight, int]]
    dims: Dict[int, int]

    def dim(self, q: int) -> int:
        return self.dims.get(q, 0)

    def degrees(self) -> List[int]:
        return sorted(q for q, d in self.dims.items() if d)

    def euler(self) -> int:
        return sum((-1) ** q * d for q, d in self.dims.items())

    def is_zero(self) -> bool:
        return not any(self.dims.values())


def cohomology(X: OGSpace, irreps: Character) -> Cohomology:
    """Apply Bott to every constituent of a Levi decomposition."""
    rs = X.rs
    if not irreps.is_effective():
        raise ValueError("virtual decomposition; cohomology needs an honest bundle")
    groups: Dict[int, Dict[Weight, int]] = {}
    dims: Dict[int, int] = {}
    if irreps.is_zero():
        return Cohomology(groups, dims)
    W = irreps.weights + np.array(rs.rho, dtype=np.int64)
    P = np.array(rs.positive, dtype=np.int64)
    lengths, singular = K.pair_counts(W, P)
    dom = np.sort(np.abs(W), axis=1)[:, ::-1]
    if rs.kind == "D":
        odd = ((W < 0).sum(axis=1) % 2 == 1) & (dom[:, -1] != 0)
        dom[odd, -1] = -dom[odd, -1]
    mu = dom - np.array(rs.rho, dtype=np.int64)
    for row, q, sing, c in zip(mu.tolist(), lengths.tolist(), singular.tolist(), irreps.mults.tolist()):
        if sing:
            continue
        t = tuple(row)
        g = groups.setdefault(q, {})
        g[t] = g.get(t, 0) + c
        dims[q] = dims.get(q, 0) + c * rs.weyl_dim(t)
    return Cohomology(groups, dims)


def euler_from_weights(X: OGSpace, ch: Character) -> int:
    """Euler characteristic straight from the weights: ``sum m_nu * D(nu)``.

    Uses that ``chi(G/P, W) = chi(G/B, W)`` and that the line bundle of
    every weight has Euler characteristic given by Weyl's polynomial.  This
    is independent of any Levi decomposition.
    """
    rs = X.rs
    return sum(m * rs.weyl_dim_signed(w) for w, m in ch.items())
