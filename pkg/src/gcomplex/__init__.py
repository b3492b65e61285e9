"""Exact spanning-tree counts, Laplacian spectra and extremal graph search."""

from gcomplex.graph import Graph, canonical_form, complement, is_isomorphic, srg_check, triangle_count
from gcomplex.kernels import BACKEND
from gcomplex.spectral import eigenvalues, trace_power, tree_count_exact

__all__ = [
    "BACKEND",
    "Graph",
    "canonical_form",
    "complement",
    "eigenvalues",
    "is_isomorphic",
    "srg_check",
    "trace_power",
    "tree_count_exact",
    "triangle_count",
]
