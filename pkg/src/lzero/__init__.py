"""Finite stage graphs, homomorphism extension, parity colorings and didistance sets."""

from .graph import FiniteGraph, OddPair, Vertex
from .stages import build_oriented_stage, build_path, build_stage, project, special_vertex

__all__ = [
    "FiniteGraph",
    "OddPair",
    "Vertex",
    "build_oriented_stage",
    "build_path",
    "build_stage",
    "project",
    "special_vertex",
]
__version__ = "0.1.0"
