from ._tdasp import (
    analyze,
    baseline,
    count_models,
    encode,
    group_size,
    group_size_iota,
    heuristic_td,
    nicify_td,
    rank_perm,
    unrank_perm,
    verify,
)

__all__ = [
    "analyze",
    "baseline",
    "count_models",
    "encode",
    "group_size",
    "group_size_iota",
    "heuristic_td",
    "nicify_td",
    "rank_perm",
    "unrank_perm",
    "verify",
]
