from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dphecke.lines import EVEN_LABELS, IMAT
from dphecke.qlin import (DimensionMismatch, QMat, QVec, char_poly_on,
                          det_bareiss, floor_vec, poly_eval, qstr, qval,
                          solve_integer, solve_linear)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)


def test_qstr_roundtrip():
    assert qstr(F(3, 4)) == "3/4"
    assert qstr(F(-7)) == "-7"
    assert qval("3/4") == F(3, 4)


@given(rationals, rationals, rationals)
@settings(max_examples=50, deadline=None)
def test_rational_field_laws(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)


def test_vector_index_discipline():
    v = QVec(("a", "b"), (1, 2))
    w = QVec(("b", "a"), (1, 2))
    with pytest.raises(Exception):
        v + w


def test_floor_vec_examples():
    assert floor_vec(QVec(("a", "b"), (0, 0))) == QVec(("a", "b"), (0, 0))
    assert floor_vec(QVec(("a", "b"), (F(5, 8), F(-1, 8)))) == QVec(("a", "b"), (0, -1))
    assert floor_vec(QVec(("a", "b"), (3, -2))) == QVec(("a", "b"), (3, -2))


@given(st.lists(rationals, min_size=4, max_size=4),
       st.lists(st.integers(min_value=-20, max_value=20), min_size=4, max_size=4))
@settings(max_examples=50, deadline=None)
def test_floor_shift_by_integers(vals, ints):
    idx = tuple(range(4))
    v = QVec(idx, tuple(vals))
    w = QVec(idx, tuple(F(k) for k in ints))
    assert floor_vec(v + w) == floor_vec(v) + w


def test_solve_identity_case():
    m = QMat.identity(("a", "b"))
    sol = solve_linear(m, QVec(("a", "b"), (3, F(1, 2))))
    assert sol.consistent
    assert sol.particular == QVec(("a", "b"), (3, F(1, 2)))
    assert sol.kernel == ()


def test_solve_one_row_kernel():
    m = QMat.from_rows((0,), ("x", "y"), [[1, 1]])
    sol = solve_linear(m, QVec((0,), (0,)))
    assert sol.consistent
    assert len(sol.kernel) == 1
    k = sol.kernel[0]
    assert k["x"] == -k["y"] != 0


def test_intersection_matrix_kernel_dimension():
    sol = solve_linear(IMAT, QVec.zero(EVEN_LABELS))
    assert sol.dim == 10


def test_solve_inconsistent():
    m = QMat.from_rows((0, 1), ("x",), [[1], [1]])
    sol = solve_linear(m, QVec((0, 1), (1, 2)))
    assert not sol.consistent


def test_sampled_solutions_satisfy_system():
    import random
    rng = random.Random(5)
    rows = tuple(range(6))
    cols = tuple(range(9))
    m = QMat.from_rows(rows, cols,
                       [[F(rng.randint(-4, 4)) for _ in cols] for _ in rows])
    x0 = QVec(cols, tuple(F(rng.randint(-3, 3), rng.randint(1, 5)) for _ in cols))
    b = m @ x0
    sol = solve_linear(m, b)
    assert sol.consistent
    for _ in range(100):
        coeffs = [F(rng.randint(-9, 9), rng.randint(1, 7)) for _ in sol.kernel]
        assert m @ sol.sample(coeffs) == b


def test_char_poly_small_cases():
    assert char_poly_on(QMat.identity((0, 1, 2))) == [F(1), F(-3), F(3), F(-1)]
    m = QMat.from_rows((0, 1), (0, 1), [[4, 0], [0, -4]])
    assert char_poly_on(m) == [F(1), F(0), F(-16)]
    with pytest.raises(DimensionMismatch):
        char_poly_on(QMat.from_rows((0,), (0, 1), [[1, 2]]))


def test_char_poly_against_determinant_oracle():
    # independent oracle: evaluate det(xI - M) by Bareiss elimination
    coeffs = char_poly_on(IMAT)
    for x in range(-3, 4):
        shifted = QMat.from_rows(
            EVEN_LABELS, EVEN_LABELS,
            [[(F(x) if i == j else F(0)) - IMAT.entries[i][j] for j in range(16)]
             for i in range(16)])
        assert poly_eval(coeffs, x) == det_bareiss(shifted)


def test_solve_integer():
    m = QMat.from_rows((0, 1), ("x", "y", "z"), [[2, 0, 2], [0, 3, 3]])
    b = QVec((0, 1), (4, 6))
    x = solve_integer(m, b)
    assert x is not None and x.is_integral() and m @ x == b
    # 2x = 1 has no integer solution
    m2 = QMat.from_rows((0,), ("x",), [[2]])
    assert solve_integer(m2, QVec((0,), (1,))) is None
