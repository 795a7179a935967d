"""Generators for the concrete posets and labelings."""

from ._common import DEFAULT_CAPS
from .dyck import (
    LabeledDyckPath,
    decreasing_pf_to_dyck,
    dyck_merge,
    is_parking_function,
    ncdyck_poset,
)
from .forests import increasing_forest_poset, rooted_forest_poset, tree_cost, tree_descents
from .partitions import (
    is_geometric,
    is_noncrossing,
    minimum_labeling,
    noncrossing_lattice,
    partition_lattice,
    set_partitions,
)
from .weighted import (
    forest_map,
    lambda_C,
    lambda_E,
    pi_of_forest,
    weighted_covers,
    weighted_partition_poset,
)

__all__ = [
    "DEFAULT_CAPS", "LabeledDyckPath", "decreasing_pf_to_dyck", "dyck_merge",
    "forest_map", "increasing_forest_poset", "is_geometric", "is_noncrossing",
    "is_parking_function", "lambda_C", "lambda_E", "minimum_labeling",
    "ncdyck_poset", "noncrossing_lattice", "partition_lattice", "pi_of_forest",
    "rooted_forest_poset", "set_partitions", "tree_cost", "tree_descents",
    "weighted_covers", "weighted_partition_poset",
]
