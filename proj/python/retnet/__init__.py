"""Python access to the retnet library."""

from ._core import (
    RetnetError,
    bounds,
    canonical_code,
    counting_lower_bound,
    decode,
    displayed_trees,
    displays,
    encode,
    formula_lower_bound,
    min_reticulations,
    networks,
    tree_count,
    trees,
    trivial_network,
    verify_lemmas,
)

__all__ = [
    "RetnetError",
    "bounds",
    "canonical_code",
    "counting_lower_bound",
    "decode",
    "displayed_trees",
    "displays",
    "encode",
    "formula_lower_bound",
    "min_reticulations",
    "networks",
    "tree_count",
    "trees",
    "trivial_network",
    "verify_lemmas",
]
