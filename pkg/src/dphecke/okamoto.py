"""The modular basis of the surface Picard group and the reduced residue map.

The determinant-of-cohomology class theta and the five flag classes f_i
give a basis of H^2 of the del Pezzo; modulo the canonical class the f_i
alone form a basis, and the map taking eigenvalue residues to twisting
classes becomes an honest 5x5 matrix there.
"""

from __future__ import annotations

from fractions import Fraction

from .lines import (EVEN_LABELS, PIC_INDEX, POINTS, canonical_class, complement,
                    line_class, line_combination)
from .qlin import Q, QMat, QVec, solve_linear

THETA_INDEX = ("theta", "f1", "f2", "f3", "f4", "f5")


def theta_class() -> QVec:
    """theta = -L_(empty) in the blow-up Picard basis."""
    return -1 * line_class(())


def f_class(i: int) -> QVec:
    """f_i = L_(empty) - L_(complement of i)."""
    if i not in POINTS:
        raise ValueError(f"point index out of range: {i}")
    return line_class(()) - line_class(complement((i,)))


def _basis_matrix() -> QMat:
    cols = [theta_class()] + [f_class(i) for i in POINTS]
    return QMat.from_rows(PIC_INDEX, THETA_INDEX,
                          [[c.entries[r] for c in cols] for r in range(6)])


_BASIS = _basis_matrix()


def to_theta_basis(c: QVec) -> QVec:
    """Coordinates of a Picard class in the (theta, f_1..f_5) basis."""
    sol = solve_linear(_BASIS, c)
    if not sol.consistent or sol.dim != 0:
        raise ValueError("the theta basis must express every class uniquely")
    return sol.particular


def line_in_theta_basis(label) -> QVec:
    """Line class in the modular basis, computed from the Picard model."""
    return to_theta_basis(line_class(label))


def minus_KX_in_basis() -> QVec:
    return to_theta_basis(-1 * canonical_class())


REDUCED_INDEX = ("f1", "f2", "f3", "f4", "f5")


def reduce_mod_K(c: QVec) -> QVec:
    """Image of a Picard class in H^2 / (canonical class), in the f-bar basis.

    In the quotient theta-bar = -(1/8) sum of the f-bars, so a class with
    theta coordinate t and f coordinates v reduces to v - t/8 on each
    coordinate.
    """
    coords = to_theta_basis(c)
    t = coords["theta"]
    return QVec(REDUCED_INDEX,
                tuple(coords[k] - t * Fraction(1, 8) for k in REDUCED_INDEX))


def reduced_okamoto(a: QVec) -> QVec:
    """The reduced residue-to-twisting map on a 5-vector of residues.

    Evaluates (1/8) sum_I (1 - 5 delta_(I,i)) a_i L_I through the line
    classes and reduces modulo the canonical class.
    """
    if a.index != POINTS:
        raise ValueError("expected a vector over the five marked points")
    coeffs = []
    for I in EVEN_LABELS:
        s = Q(0)
        for pos, i in enumerate(POINTS):
            s += (1 - 5 * (1 if i in I else 0)) * a.entries[pos]
        coeffs.append(s * Fraction(1, 8))
    cls = line_combination(QVec(EVEN_LABELS, tuple(coeffs)))
    return reduce_mod_K(cls)


def okamoto_matrix() -> QMat:
    """The 5x5 matrix (5/8)(J - 4 Id), checked against column assembly."""
    mat = QMat.from_rows(
        REDUCED_INDEX, POINTS,
        [[Fraction(5, 8) * (1 - 4 * (1 if r == c else 0)) for c in range(5)]
         for r in range(5)])
    for pos, i in enumerate(POINTS):
        col = reduced_okamoto(QVec.unit(POINTS, i))
        if tuple(mat.col(i).entries) != col.entries:
            raise AssertionError("matrix disagrees with column assembly")
    return mat
