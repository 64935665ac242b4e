from ._core import (
    CoverSolution,
    Net,
    SolverStats,
    afn,
    euclidean_kcenter,
    generate,
    greedy_kcenter,
    meb,
    oracle,
)

__all__ = [
    "CoverSolution",
    "Net",
    "SolverStats",
    "afn",
    "euclidean_kcenter",
    "generate",
    "greedy_kcenter",
    "meb",
    "oracle",
]
