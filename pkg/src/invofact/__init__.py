"""Counting, enumerating and sampling factorizations of permutations into two involutions."""

from invofact.permutation import (
    CycleType,
    Permutation,
    compose,
    cycle_decomposition,
    cycle_type,
    format_cycles,
    from_cycles,
    inverse,
    is_involution,
    parse_cycles,
)
from invofact.counting import (
    count_factorizations,
    hermite_factor,
    inner_factor,
    involution_count,
    log_count,
    product_of_cycle_lengths,
)

__version__ = "0.1.0"

__all__ = [
    "CycleType",
    "Permutation",
    "compose",
    "count_factorizations",
    "cycle_decomposition",
    "cycle_type",
    "format_cycles",
    "from_cycles",
    "hermite_factor",
    "inner_factor",
    "inverse",
    "involution_count",
    "is_involution",
    "log_count",
    "parse_cycles",
    "product_of_cycle_lengths",
]
