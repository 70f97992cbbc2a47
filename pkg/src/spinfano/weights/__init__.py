"""Weights, characters and Borel-Weil-Bott on orthogonal Grassmannians."""

from .bott import ACYCLIC, Cohomology, CohomologyResult, bott, cohomology, euler_from_weights
from .bundles import bundle_character, decompose
from .characters import Character, levi_decompose, tensor_decompose
from .grassmannian import OGSpace, og_space, parse_space
from .roots import RootSystem, fmt_weight, parse_weight, root_system, triality_relabel

__all__ = [
    "ACYCLIC", "Character", "Cohomology", "CohomologyResult", "OGSpace", "RootSystem",
    "bott", "bundle_character", "cohomology", "decompose", "euler_from_weights",
    "fmt_weight", "levi_decompose", "og_space", "parse_space", "parse_weight",
    "root_system", "tensor_decompose", "triality_relabel",
]
