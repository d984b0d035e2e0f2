"""Exact shear-coordinate algebra of geodesics on bordered surfaces.

Subpackages by concern:

- ``ring``       exact Laurent / quantum-torus coefficient arithmetic
- ``fatgraph``   embedded trivalent graphs with pending (dot-vertex) edges
- ``poisson``    Weil-Petersson pairing on edges and brackets of functions
- ``geodesic``   path words, holonomy traces, multicurves
- ``moves``      flips on inner and pending edges with path transport
- ``algebras``   triangle/annulus generator systems, braid actions, invariants
- ``foliation``  freeway measures and tropical (piecewise-linear) dynamics
- ``cli``        command-line front end
"""

from .ring import HalfInt, QCoeff, LaurentElem, TorusElem, TorusContext, Vars
from .fatgraph import FatGraph, SurfaceSignature, standard_graph, double_signature
from .poisson import PoissonMatrix, wp_matrix, bracket, casimir_check
from .geodesic import PathWord, Step, Multicurve, holonomy_trace, quantum_trace

__all__ = [
    "HalfInt",
    "QCoeff",
    "LaurentElem",
    "TorusElem",
    "TorusContext",
    "Vars",
    "FatGraph",
    "SurfaceSignature",
    "standard_graph",
    "double_signature",
    "PoissonMatrix",
    "wp_matrix",
    "bracket",
    "casimir_check",
    "PathWord",
    "Step",
    "Multicurve",
    "holonomy_trace",
    "quantum_trace",
]
