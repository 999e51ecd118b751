from fractions import Fraction as F

from dphecke.lines import PIC_INDEX, POINTS, canonical_class, line_class
from dphecke.okamoto import (REDUCED_INDEX, f_class, line_in_theta_basis,
                             minus_KX_in_basis, okamoto_matrix, reduce_mod_K,
                             reduced_okamoto, theta_class)
from dphecke.qlin import QVec, det_bareiss
from dphecke.sampling import RationalSampler


def test_line_expansions_in_modular_basis():
    empty = line_in_theta_basis(())
    assert empty == QVec(("theta",) + REDUCED_INDEX, (-1, 0, 0, 0, 0, 0))
    one_c = line_in_theta_basis((2, 3, 4, 5))
    assert one_c == QVec(("theta",) + REDUCED_INDEX, (-1, -1, 0, 0, 0, 0))
    pair = line_in_theta_basis((1, 2))
    # -theta + f1 + f2 - (1/2) sum f
    assert pair["theta"] == -1
    assert pair["f1"] == F(1, 2) and pair["f2"] == F(1, 2)
    assert pair["f3"] == F(-1, 2)
    # consistency: expanding back in the blow-up basis returns the line class
    acc = pair["theta"] * theta_class()
    for k, i in zip(REDUCED_INDEX, POINTS):
        acc = acc + pair[k] * f_class(i)
    assert acc == line_class((1, 2)) == QVec(PIC_INDEX, (1, -1, -1, 0, 0, 0))


def test_minus_KX():
    v = minus_KX_in_basis()
    assert v["theta"] == -4
    assert all(v[k] == F(-1, 2) for k in REDUCED_INDEX)
    # and the reduction of theta
    th_red = reduce_mod_K(theta_class())
    assert th_red == QVec(REDUCED_INDEX, (F(-1, 8),) * 5)


def test_reduction_representative_independence():
    smp = RationalSampler(7)
    K = canonical_class()
    for _ in range(100):
        cls = smp.vector(PIC_INDEX, -6, 6)
        t = smp.rational(-6, 6)
        assert reduce_mod_K(cls) == reduce_mod_K(cls + t * K)
    assert reduce_mod_K(K).is_zero()


def test_reduced_okamoto_values():
    col = reduced_okamoto(QVec.unit(POINTS, 1))
    assert col == QVec(REDUCED_INDEX, (F(-15, 8), F(5, 8), F(5, 8), F(5, 8), F(5, 8)))
    assert reduced_okamoto(QVec.zero(POINTS)).is_zero()
    ones = QVec.constant(POINTS, 1)
    assert reduced_okamoto(ones) == QVec(REDUCED_INDEX, (F(5, 8),) * 5)


def test_reduced_okamoto_linearity():
    smp = RationalSampler(13)
    for _ in range(40):
        x = smp.vector5(-7, 7)
        y = smp.vector5(-7, 7)
        c = smp.rational(-5, 5)
        assert reduced_okamoto(x + y) == reduced_okamoto(x) + reduced_okamoto(y)
        assert reduced_okamoto(c * x) == c * reduced_okamoto(x)


def test_okamoto_matrix():
    mat = okamoto_matrix()
    for r in range(5):
        for c in range(5):
            assert mat.entries[r][c] == (F(-15, 8) if r == c else F(5, 8))
    assert det_bareiss(mat) == F(3125, 128)
