"""Census of tetravalent 2-arc-transitive Cayley graphs on simple groups.

Permutation groups, coset and Cayley graphs, arc-transitivity, graph
canonical forms, and the classification pipeline built on them.
"""

from .perm import Permutation, compose, inverse, cycle_type
from .group import PermutationGroup, build_group, group_order, contains, orbits, point_stabilizer
from .search import normalizer, transporter, centralizer

__all__ = [
    "Permutation", "compose", "inverse", "cycle_type",
    "PermutationGroup", "build_group", "group_order", "contains", "orbits", "point_stabilizer",
    "normalizer", "transporter", "centralizer",
]
__version__ = "0.1.0"
