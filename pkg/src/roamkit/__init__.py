"""roamkit: roaming sets, coned-off Cayley graphs and exact l2 checks on finite balls."""

__version__ = "0.1.0"

from .presentation import (Element, GroupPresentation, ProductGroup, SubgroupSpec, Tri,
                           cyclic_subgroup, in_subgroup, load_group, presentation)
from .graph import BallGraph, Cone, build_ball, build_coned_off_ball, estimate_delta
from .topology import NeighborhoodSpec, Ray, compute_v_set, in_neighborhood
from .roaming import RoamingSetSpec, build_roaming_pair, verify_disjoining
from .l2 import AlgebraElement, SupportPredicate

__all__ = [
    "Element", "GroupPresentation", "ProductGroup", "SubgroupSpec", "Tri", "cyclic_subgroup",
    "in_subgroup", "load_group", "presentation", "BallGraph", "Cone", "build_ball",
    "build_coned_off_ball", "estimate_delta", "NeighborhoodSpec", "Ray", "compute_v_set",
    "in_neighborhood", "RoamingSetSpec", "build_roaming_pair", "verify_disjoining",
    "AlgebraElement", "SupportPredicate",
]
