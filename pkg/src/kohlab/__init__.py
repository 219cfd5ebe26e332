"""Exact q-binomial arithmetic, KOH decompositions and Bergeron differences."""

from .bergeron import Quadruple, check, difference, enumerate_quadruples, sweep
from .kohdec import Partition, enumerate_partitions, koh_sum, koh_term
from .qbinom import classify_strict, gauss_box, qbin
from .qpoly import QPoly, dominates, range_poly, truncated_first_difference, unimodality_report

__version__ = "0.1.0"

__all__ = [
    "QPoly",
    "range_poly",
    "dominates",
    "truncated_first_difference",
    "unimodality_report",
    "gauss_box",
    "qbin",
    "classify_strict",
    "Partition",
    "enumerate_partitions",
    "koh_term",
    "koh_sum",
    "Quadruple",
    "difference",
    "check",
    "enumerate_quadruples",
    "sweep",
]
