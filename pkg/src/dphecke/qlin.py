"""Exact rational scalars, vectors, matrices and linear solving.

Everything downstream works over Q.  Scalars are `fractions.Fraction`
(arbitrary precision, always in lowest terms, positive denominator),
vectors and matrices carry an explicit index set so that arithmetic
between differently-indexed objects fails loudly instead of silently
permuting coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


def qval(x) -> Fraction:
    """Coerce ints / strings like '3/4' / Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def qstr(x: Fraction) -> str:
    """Serialize as 'p/q', or 'p' when the denominator is 1."""
    x = qval(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qfloor(x: Fraction) -> Fraction:
    """Greatest integer <= x, as a Fraction."""
    return Fraction(math.floor(qval(x)))


def is_integral(x: Fraction) -> bool:
    return qval(x).denominator == 1


class IndexMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QVec:
    """A rational vector over an ordered, finite index set."""

    index: tuple
    entries: tuple

    def __post_init__(self):
        if len(self.index) != len(self.entries):
            raise DimensionMismatch("index and entries lengths differ")
        object.__setattr__(self, "entries", tuple(qval(e) for e in self.entries))

    @staticmethod
    def from_entries(index: Sequence, entries: Iterable) -> "QVec":
        return QVec(tuple(index), tuple(entries))

    @staticmethod
    def constant(index: Sequence, value) -> "QVec":
        v = qval(value)
        return QVec(tuple(index), tuple(v for _ in index))

    @staticmethod
    def zero(index: Sequence) -> "QVec":
        return QVec.constant(index, 0)

    @staticmethod
    def unit(index: Sequence, at) -> "QVec":
        index = tuple(index)
        return QVec(index, tuple(Q(1) if k == at else Q(0) for k in index))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, key):
        return self.entries[self.index.index(key)]

    def at(self, pos: int) -> Fraction:
        return self.entries[pos]

    def _check(self, other: "QVec"):
        if self.index != other.index:
            raise IndexMismatch("vectors indexed by different label sets")

    def __add__(self, other: "QVec") -> "QVec":
        self._check(other)
        return QVec(self.index, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QVec") -> "QVec":
        self._check(other)
        return QVec(self.index, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QVec":
        return QVec(self.index, tuple(-a for a in self.entries))

    def __rmul__(self, c) -> "QVec":
        c = qval(c)
        return QVec(self.index, tuple(c * a for a in self.entries))

    def __mul__(self, c) -> "QVec":
        return self.__rmul__(c)

    def dot(self, other: "QVec") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Q(0))

    def floor(self) -> "QVec":
        return QVec(self.index, tuple(qfloor(a) for a in self.entries))

    def frac(self) -> "QVec":
        return QVec(self.index, tuple(a - qfloor(a) for a in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_integral(self) -> bool:
        return all(is_integral(a) for a in self.entries)

    def total(self) -> Fraction:
        return sum(self.entries, Q(0))

    def with_entry(self, key, value) -> "QVec":
        pos = self.index.index(key)
        ents = list(self.entries)
        ents[pos] = qval(value)
        return QVec(self.index, tuple(ents))

    def to_strings(self) -> list:
        return [qstr(a) for a in self.entries]


def floor_vec(v: QVec) -> QVec:
    """Componentwise floor; integer-valued output vector."""
    return v.floor()


@dataclass(frozen=True)
class QMat:
    """A rational matrix with named row and column index sets."""

    rows: tuple
    cols: tuple
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != len(self.rows):
            raise DimensionMismatch("row count mismatch")
        norm = []
        for r in self.entries:
            if len(r) != len(self.cols):
                raise DimensionMismatch("column count mismatch")
            norm.append(tuple(qval(e) for e in r))
        object.__setattr__(self, "entries", tuple(norm))

    @staticmethod
    def from_rows(rows: Sequence, cols: Sequence, entries) -> "QMat":
        return QMat(tuple(rows), tuple(cols), tuple(tuple(r) for r in entries))

    @staticmethod
    def identity(index: Sequence) -> "QMat":
        index = tuple(index)
        n = len(index)
        return QMat(index, index,
                    tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: Sequence, cols: Sequence) -> "QMat":
        rows, cols = tuple(rows), tuple(cols)
        return QMat(rows, cols, tuple(tuple(Q(0) for _ in cols) for _ in rows))

    def entry(self, r, c) -> Fraction:
        return self.entries[self.rows.index(r)][self.cols.index(c)]

    def shape(self):
        return (len(self.rows), len(self.cols))

    def row(self, r) -> QVec:
        return QVec(self.cols, self.entries[self.rows.index(r)])

    def col(self, c) -> QVec:
        j = self.cols.index(c)
        return QVec(self.rows, tuple(row[j] for row in self.entries))

    def transpose(self) -> "QMat":
        return QMat(self.cols, self.rows,
                    tuple(tuple(self.entries[i][j] for i in range(len(self.rows)))
                          for j in range(len(self.cols))))

    def __add__(self, other: "QMat") -> "QMat":
        if self.rows != other.rows or self.cols != other.cols:
            raise IndexMismatch("matrix index sets differ")
        return QMat(self.rows, self.cols,
                    tuple(tuple(a + b for a, b in zip(r1, r2))
                          for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMat") -> "QMat":
        return self + (-1) * other

    def __rmul__(self, c) -> "QMat":
        c = qval(c)
        return QMat(self.rows, self.cols,
                    tuple(tuple(c * a for a in r) for r in self.entries))

    def __matmul__(self, other):
        if isinstance(other, QVec):
            if self.cols != other.index:
                raise IndexMismatch("matrix columns do not match vector index")
            return QVec(self.rows,
                        tuple(sum((a * b for a, b in zip(r, other.entries)), Q(0))
                              for r in self.entries))
        if isinstance(other, QMat):
            if self.cols != other.rows:
                raise IndexMismatch("inner index sets differ")
            ot = other.transpose().entries
            return QMat(self.rows, other.cols,
                        tuple(tuple(sum((a * b for a, b in zip(r, c)), Q(0)) for c in ot)
                              for r in self.entries))
        raise TypeError(f"cannot multiply QMat by {type(other)}")

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def to_lists(self):
        return [list(r) for r in self.entries]


def rref(rows: list, ncols: int):
    """In-place reduced row echelon form. Returns the list of pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [e / pv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solutions of M x = b as particular + span of a canonical kernel basis."""

    consistent: bool
    particular: QVec | None
    kernel: tuple  # tuple of QVec

    def sample(self, coeffs: Sequence) -> QVec:
        if not self.consistent:
            raise ValueError("inconsistent system has no solutions")
        if len(coeffs) != len(self.kernel):
            raise DimensionMismatch("one coefficient per kernel basis vector")
        v = self.particular
        for c, k in zip(coeffs, self.kernel):
            v = v + qval(c) * k
        return v

    @property
    def dim(self) -> int:
        return len(self.kernel)


def solve_linear(M: QMat, b: QVec) -> AffineSolutionSet:
    """Exact solution set of M x = b with a deterministic (echelon-ordered) kernel basis."""
    if M.rows != b.index:
        raise IndexMismatch("right-hand side index does not match matrix rows")
    n = len(M.cols)
    aug = [list(r) + [be] for r, be in zip(M.entries, b.entries)]
    pivots = rref(aug, n)
    # inconsistent iff a pivot appears in the augmented column
    for row in aug:
        if all(e == 0 for e in row[:n]) and row[n] != 0:
            return AffineSolutionSet(False, None, ())
    part = [Q(0)] * n
    for r, c in enumerate(pivots):
        part[c] = aug[r][n]
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for r, c in enumerate(pivots):
            v[c] = -aug[r][f]
        kernel.append(QVec(M.cols, tuple(v)))
    return AffineSolutionSet(True, QVec(M.cols, tuple(part)), tuple(kernel))


def kernel_basis(M: QMat) -> tuple:
    return solve_linear(M, QVec.zero(M.rows)).kernel


def matrix_rank(M: QMat) -> int:
    rows = [list(r) for r in M.entries]
    return len(rref(rows, len(M.cols)))


def char_poly_on(M: QMat) -> list:
    """Monic characteristic polynomial coefficients [1, c1, ..., cn] of det(xI - M).

    Faddeev-LeVerrier; exact over Q.
    """
    if M.rows != M.cols:
        raise DimensionMismatch("characteristic polynomial needs a square matrix")
    n = len(M.rows)
    ident = QMat.identity(M.rows)
    coeffs = [Q(1)]
    Mk = QMat.zeros(M.rows, M.cols)  # running M * (M_{k-1} + c_{k-1} I)
    Nk = ident
    for k in range(1, n + 1):
        Mk = M @ Nk
        ck = -Fraction(sum(Mk.entries[i][i] for i in range(n)), k)
        coeffs.append(ck)
        Nk = Mk + ck * ident
    return coeffs


def det_bareiss(M: QMat) -> Fraction:
    """Determinant by fraction-free Bareiss elimination (independent of char_poly_on)."""
    if len(M.rows) != len(M.cols):
        raise DimensionMismatch("determinant needs a square matrix")
    a = [list(r) for r in M.entries]
    n = len(a)
    sign = 1
    prev = Q(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Q(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def poly_eval(coeffs: Sequence, x) -> Fraction:
    """Evaluate a monic-first coefficient list at x."""
    acc = Q(0)
    for c in coeffs:
        acc = acc * qval(x) + qval(c)
    return acc


def _smith_clear(a, left, right, n, m):
    """Helper for solve_integer: put a into diagonal form by unimodular row/col ops."""
    t = 0
    while t < min(n, m):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, n):
            for j in range(t, m):
                if a[i][j] != 0:
                    if piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        left[t], left[i] = left[i], left[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        for row in right:
            row[t], row[j] = row[j], row[t]
        dirty = False
        for i in range(t + 1, n):
            q = a[i][t] // a[t][t]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                left[i] = [x - q * y for x, y in zip(left[i], left[t])]
            if a[i][t]:
                dirty = True
        for j in range(t + 1, m):
            q = a[t][j] // a[t][t]
            if q:
                for row in a:
                    row[j] -= q * row[t]
                for row in right:
                    row[j] -= q * row[t]
            if a[t][j]:
                dirty = True
        if not dirty:
            t += 1
    return t


def solve_integer(M: QMat, b: QVec):
    """One integer solution x of M x = b, or None when none exists.

    Entries of M and b must be integers.  Diagonalizes M = L^-1 D R^-1 by
    unimodular operations (Smith-style) and solves in the new coordinates.
    """
    if M.rows != b.index:
        raise IndexMismatch("right-hand side index does not match matrix rows")
    n, m = len(M.rows), len(M.cols)
    a = [[int(e) for e in row] for row in M.entries]
    for row, e in zip(M.entries, b.entries):
        if any(x.denominator != 1 for x in row) or e.denominator != 1:
            raise ValueError("solve_integer needs integer data")
    left = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    right = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    rank = _smith_clear(a, left, right, n, m)
    c = [sum(left[i][k] * int(b.entries[k]) for k in range(n)) for i in range(n)]
    y = [0] * m
    for t in range(rank):
        if c[t] % a[t][t] != 0:
            return None
        y[t] = c[t] // a[t][t]
    for t in range(rank, n):
        if c[t] != 0:
            return None
    x = [sum(right[i][k] * y[k] for k in range(m)) for i in range(m)]
    return QVec(M.cols, tuple(Q(v) for v in x))
