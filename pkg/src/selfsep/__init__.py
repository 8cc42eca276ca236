"""selfsep: exact separability computations for transitive permutation groups.

A set A of points is *self-separable* for a group G when some g in G
moves A completely off itself (A and its image are disjoint).  The
library computes the smallest size m(G) at which this first fails,
together with certificates, filters, closed-form bounds and the
difference-basis machinery for regular actions.
"""

from .perm import Permutation, parse_cycles, parse_image_array
from .group import BlockSystem, CapacityError, ElementTable, PermGroup

__all__ = [
    "Permutation",
    "parse_cycles",
    "parse_image_array",
    "PermGroup",
    "BlockSystem",
    "ElementTable",
    "CapacityError",
]

__version__ = "0.1.0"
