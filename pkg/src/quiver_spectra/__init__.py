"""Kirchhoff spectra of quivers: bounds, exact counts and census experiments."""

from .quiver import (
    Quiver,
    adjacency,
    classify,
    delete_vertex,
    from_edge_list,
    gradient,
    jacobi_quiver,
    kirchhoff,
)
from .spectral import char_poly, det_shifted, eigenvalues_sym, pseudo_det

__version__ = "0.1.0"

__all__ = [
    "Quiver",
    "adjacency",
    "classify",
    "delete_vertex",
    "from_edge_list",
    "gradient",
    "jacobi_quiver",
    "kirchhoff",
    "char_poly",
    "det_shifted",
    "eigenvalues_sym",
    "pseudo_det",
]
