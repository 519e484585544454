"""Generalized eigenvalue problems: validation, whitening, dense oracle, instance generation."""

from .problem import (
    GAP_TOL,
    GepProblem,
    GepSolution,
    TopK,
    whiten,
    solve_dense,
    top_k,
    top_k_distance,
    spans_top_k,
)
from .generate import GeneratedInstance, make_instance, parse_spectrum

__all__ = [
    "GAP_TOL",
    "GepProblem",
    "GepSolution",
    "TopK",
    "whiten",
    "solve_dense",
    "top_k",
    "top_k_distance",
    "spans_top_k",
    "GeneratedInstance",
    "make_instance",
    "parse_spectrum",
]
