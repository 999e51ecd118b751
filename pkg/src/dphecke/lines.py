"""Label calculus for the 16 lines on the quartic del Pezzo surface.

Lines are labeled by even-cardinality subsets of {1..5}, viewed as the
4-dimensional F2-vector space of parity-zero functions on five points.
Labels are sorted integer tuples; () is the empty set.  The canonical
order sorts labels by the integer value of their 5-bit characteristic
vector (bit i-1 set iff i in I), which fixes every matrix layout and
serialization downstream.
"""

from __future__ import annotations

from fractions import Fraction

from .qlin import Q, QMat, QVec

POINTS = (1, 2, 3, 4, 5)
FULL_MASK = 0b11111


def _mask(label: tuple) -> int:
    return sum(1 << (i - 1) for i in label)


def _unmask(mask: int) -> tuple:
    return tuple(i for i in POINTS if mask & (1 << (i - 1)))


def _parity(mask: int) -> int:
    return bin(mask).count("1") & 1


EVEN_LABELS = tuple(sorted((_unmask(m) for m in range(32) if _parity(m) == 0), key=_mask))
ODD_LABELS = tuple(_unmask(FULL_MASK ^ _mask(lbl)) for lbl in EVEN_LABELS)

# Picard basis of the blow-up model: hyperplane class + five exceptional classes.
PIC_INDEX = ("h", "x1", "x2", "x3", "x4", "x5")


def is_even_label(label: tuple) -> bool:
    return label in EVEN_LABELS


def complement(label: tuple) -> tuple:
    """Bridge between the even and odd labeling conventions."""
    return _unmask(FULL_MASK ^ _mask(label))


def underline(i: int) -> tuple:
    """The distinguished F2 vector of a point index; underline(6) is zero."""
    if i == 6:
        return ()
    if i not in POINTS:
        raise ValueError(f"point index out of range: {i}")
    return _unmask(FULL_MASK ^ (1 << (i - 1)))


def label_add(label: tuple, i: int) -> tuple:
    """F2 sum I + underline(i); stays inside the even labels."""
    return _unmask(_mask(label) ^ _mask(underline(i)))


def label_sum(a: tuple, b: tuple) -> tuple:
    return _unmask(_mask(a) ^ _mask(b))


def incidence_delta(label: tuple, i: int) -> int:
    """1 iff the point index i lies in the label."""
    if i not in POINTS:
        raise ValueError(f"point index out of range: {i}")
    return 1 if i in label else 0


def neighbors(label: tuple) -> tuple:
    """The five labels adjacent to I, i.e. I+1, ..., I+5."""
    return tuple(label_add(label, i) for i in POINTS)


def delta_matrix() -> QMat:
    """16x5 incidence matrix with entries delta_{I,i}."""
    return QMat.from_rows(
        EVEN_LABELS, POINTS,
        [[Q(incidence_delta(I, i)) for i in POINTS] for I in EVEN_LABELS])


def ones_16x5() -> QMat:
    return QMat.from_rows(EVEN_LABELS, POINTS, [[Q(1)] * 5 for _ in EVEN_LABELS])


def intersection_matrix() -> QMat:
    """The 16x16 Gram matrix of the lines: -1 on the diagonal, 1 on adjacent pairs."""
    ent = []
    for I in EVEN_LABELS:
        nb = set(neighbors(I))
        row = []
        for J in EVEN_LABELS:
            if I == J:
                row.append(Q(-1))
            elif J in nb:
                row.append(Q(1))
            else:
                row.append(Q(0))
        ent.append(row)
    return QMat.from_rows(EVEN_LABELS, EVEN_LABELS, ent)


IMAT = intersection_matrix()
SIGMA = QVec.constant(EVEN_LABELS, 1)
SIGMA5 = QVec.constant(POINTS, 1)

EIGENVALUES = (Q(4), Q(-4), Q(0))


def _projector(eigenvalue: Fraction) -> QMat:
    # Lagrange interpolation of the spectrum {4, -4, 0} at the matrix IMAT
    I2 = IMAT @ IMAT
    if eigenvalue == 4:
        return Fraction(1, 32) * (I2 + 4 * IMAT)
    if eigenvalue == -4:
        return Fraction(1, 32) * (I2 - 4 * IMAT)
    if eigenvalue == 0:
        return Fraction(1, 16) * (16 * QMat.identity(EVEN_LABELS) - I2)
    raise ValueError(f"not an eigenvalue of the intersection matrix: {eigenvalue}")


PROJECTORS = {ev: _projector(ev) for ev in EIGENVALUES}


def eigen_project(v: QVec, eigenvalue) -> QVec:
    """Project a 16-vector onto the eigenspace of the intersection matrix."""
    ev = Q(eigenvalue)
    if ev not in PROJECTORS:
        raise ValueError(f"not an eigenvalue of the intersection matrix: {eigenvalue}")
    return PROJECTORS[ev] @ v


def eigen_components(v: QVec) -> dict:
    return {ev: eigen_project(v, ev) for ev in EIGENVALUES}


def line_class(label: tuple) -> QVec:
    """Class of the line L_I in the blow-up Picard basis (h; x1..x5).

    The empty label is the conic through all five blown-up points, the
    four-element labels are the exceptional curves, and the two-element
    labels are the strict transforms of lines through two points.
    """
    if label not in EVEN_LABELS:
        raise ValueError(f"not an even label: {label}")
    k = len(label)
    ent = [Q(0)] * 6
    if k == 0:
        ent[0] = Q(2)
        for j in range(1, 6):
            ent[j] = Q(-1)
    elif k == 4:
        (i,) = complement(label)
        ent[i] = Q(1)
    elif k == 2:
        i, j = label
        ent[0] = Q(1)
        ent[i] = Q(-1)
        ent[j] = Q(-1)
    return QVec(PIC_INDEX, tuple(ent))


def pic_pair(c1: QVec, c2: QVec) -> Fraction:
    """Intersection pairing on Pic(X): diag(1, -1, -1, -1, -1, -1)."""
    if c1.index != PIC_INDEX or c2.index != PIC_INDEX:
        raise ValueError("pic_pair expects classes in the blow-up Picard basis")
    s = c1.entries[0] * c2.entries[0]
    for j in range(1, 6):
        s -= c1.entries[j] * c2.entries[j]
    return s


def canonical_class() -> QVec:
    return QVec(PIC_INDEX, (Q(-3), Q(1), Q(1), Q(1), Q(1), Q(1)))


def line_combination(v: QVec) -> QVec:
    """The Picard class of sum_I v_I L_I for a 16-vector v."""
    if v.index != EVEN_LABELS:
        raise ValueError("expected a vector over the even labels")
    acc = QVec.zero(PIC_INDEX)
    for lbl, c in zip(EVEN_LABELS, v.entries):
        acc = acc + c * line_class(lbl)
    return acc


def label_to_json(label: tuple) -> list:
    return list(label)
