"""Public face of the permutation-group engine."""

from .classes import ElementClass, conjugacy_classes
from .group import (PermutationGroup, build_group, contains, group_order, naive_closure, orbits,
                    point_stabilizer)
from .perm import CycleType, DegreeMismatch, Permutation, compose, cycle_type, inverse
from .search import (centralizer, element_transporter, normalizer, normalizer_bruteforce, transporter,
                     transporter_bruteforce)

__all__ = [
    "CycleType", "DegreeMismatch", "ElementClass", "Permutation", "PermutationGroup", "build_group",
    "centralizer", "compose", "conjugacy_classes", "contains", "cycle_type", "element_transporter",
    "group_order", "inverse", "naive_closure", "normalizer", "normalizer_bruteforce", "orbits",
    "point_stabilizer", "transporter", "transporter_bruteforce",
]
