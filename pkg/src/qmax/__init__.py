"""Signless-Laplacian spectral radius of outer-planar graphs: enumeration and verification."""

__version__ = "0.1.0"

from .enumeration import (Triangulation, canonical_form, canonicalize, enumerate_classes,
                          enumerate_labeled, filter_by_max_degree, flip, flip_search_max_q)
from .families import Family, FamilySpec, d1, d2, d3, fan, near_fan, star
from .graph import (CycleGraph, GeneralGraph, add_edge, degrees, graph6_decode, graph6_encode,
                    is_maximal_outerplanar, neighbor_degree_sum, remove_edge, signless_laplacian)
from .spectral import PerronResult, full_spectrum, qindex, rayleigh
from .verify import VerificationReport, check_theorem, reproduce_tables

__all__ = [
    "CycleGraph", "GeneralGraph", "Triangulation", "Family", "FamilySpec", "PerronResult",
    "VerificationReport", "add_edge", "remove_edge", "degrees", "neighbor_degree_sum",
    "signless_laplacian", "is_maximal_outerplanar", "graph6_encode", "graph6_decode",
    "fan", "near_fan", "d1", "d2", "d3", "star", "enumerate_labeled", "enumerate_classes",
    "canonicalize", "canonical_form", "filter_by_max_degree", "flip", "flip_search_max_q",
    "qindex", "full_spectrum", "rayleigh", "check_theorem", "reproduce_tables",
]
