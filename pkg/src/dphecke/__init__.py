"""Exact rational verification of the Hecke constraint system on the
quartic del Pezzo moduli space."""

from .qlin import Q, QMat, QVec, AffineSolutionSet, solve_linear, floor_vec, char_poly_on

__all__ = [
    "Q", "QMat", "QVec", "AffineSolutionSet", "solve_linear", "floor_vec",
    "char_poly_on",
]
