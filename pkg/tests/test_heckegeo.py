from fractions import Fraction as F

import pytest

from dphecke.heckelines import (DegenerateGeometry, HeckeInput,
                                PencilConfig, hecke_anchor_values,
                                hecke_line_map, hecke_point,
                                hecke_rational_components, iota_map,
                                pencil_member_at, singular_point_of_22,
                                slope_oracle_at)
from dphecke.proj import INF, Moebius, PPoint, one_one_through
from dphecke.qlin import QMat, QVec, solve_linear
from dphecke.sampling import RationalSampler


def test_iota_worked_example():
    res = iota_map(PencilConfig(2, 3))
    alpha, beta, gamma = res.conic_coeffs
    # closed forms up to common scale: (l5-l4, l4(1-l5), l5(l4-1)) = (1, -4, 3)
    assert (beta / alpha, gamma / alpha) == (F(-4), F(3))
    assert res.v_values[0] == PPoint.of(F(1, 4))
    assert res.v_values[1] == PPoint.of(F(1, 2))
    assert res.u_value(4) == PPoint.of(2)
    assert res.u_value(5) == PPoint.of(3)


def test_iota_seeded():
    smp = RationalSampler(9)
    done = 0
    while done < 50:
        l4, l5 = smp.distinct_rationals(2, -9, 9, avoid=(F(0), F(1)))
        try:
            res = iota_map(PencilConfig(l4, l5))
        except DegenerateGeometry:
            continue
        assert res.u_value(1) == PPoint.of(0)
        assert res.u_value(2) == INF
        assert res.u_value(3) == PPoint.of(1)
        done += 1


def test_pencil_config_validation():
    with pytest.raises(DegenerateGeometry):
        PencilConfig(2, 2)
    with pytest.raises(DegenerateGeometry):
        PencilConfig(1, 3)


def test_one_one_through():
    ident = one_one_through([(0, 0), (1, 1), (INF, INF)])
    assert ident(5) == PPoint.of(5)
    double = one_one_through([(0, 0), (1, 2), (INF, INF)])
    assert double(3) == PPoint.of(6)
    with pytest.raises(DegenerateGeometry):
        one_one_through([(0, 0), (0, 1), (1, 2)])


def test_slope_at():
    ident = Moebius(((1, 0), (0, 1)))
    assert ident.slope_at(7) == 1
    inv = Moebius(((0, 1), (1, 0)))
    assert inv.slope_at(2) == F(-1, 4)
    m = Moebius(((1, -1), (1, -3)))  # (z - 1)/(z - 3)
    assert m.slope_at(0) == F(-2, 9)
    with pytest.raises(DegenerateGeometry):
        m.slope_at(3)


def test_anchor_values_worked_example():
    inp = HeckeInput(2, 3, 4, 5)
    h0, h1, hinf = hecke_anchor_values(inp)
    assert h1 == F(3, 2)
    assert h0 == F(15, 8)
    assert hinf == F(3, 4)
    m = hecke_line_map(inp)
    assert m(1) == PPoint.of(F(3, 2))  # interpolation node


def test_fourth_point_consistency_seeded():
    smp = RationalSampler(31)
    done = 0
    while done < 40:
        vals = smp.distinct_rationals(4, -8, 8, avoid=(F(0), F(1)))
        try:
            inp = HeckeInput(*vals)
            m = hecke_line_map(inp)
            p = smp.nonintegral(-6, 6)
            got = m(p)
            oracle = slope_oracle_at(inp, p)
        except DegenerateGeometry:
            continue
        assert not got.is_infinity and got.value() == oracle
        done += 1


def test_anchor_closed_forms_seeded():
    smp = RationalSampler(37)
    done = 0
    while done < 60:
        vals = smp.distinct_rationals(4, -8, 8, avoid=(F(0), F(1)))
        try:
            hecke_anchor_values(HeckeInput(*vals))  # asserts oracle == closed forms
        except DegenerateGeometry:
            continue
        done += 1


def test_singular_point_of_node():
    inp = HeckeInput(2, 3, 4, 5)
    A, B, C, D = hecke_rational_components(inp, 7)
    assert singular_point_of_22(A, B, C, D) == (F(2), F(3))


def test_singular_point_degenerate_cases():
    # the diagonal traversed twice: kernel is two-dimensional
    with pytest.raises(DegenerateGeometry):
        singular_point_of_22([0, 0, 1], [1, 0, 0], [0, 0, 1], [1, 0, 0])
    # f -> (f^2, f^2 + f): kernel is one-dimensional but a c = 0
    quads = ([0, 0, 1], [1, 0, 0], [0, 1, 1], [1, 0, 0])
    mat = QMat.from_rows(("A", "B", "C", "D"), (0, 1, 2), list(quads)).transpose()
    ker = solve_linear(mat, QVec.zero((0, 1, 2))).kernel
    assert len(ker) == 1
    k = ker[0]
    assert k["A"] == 0 and k["C"] == 0 and k["B"] == -k["D"] != 0
    with pytest.raises(DegenerateGeometry):
        singular_point_of_22(*quads)


def test_hecke_point_lands_on_line_map_image():
    # the image points of the modification parametrization trace the (2,2)
    # curve whose pencil coordinate equals the line-map value
    inp = HeckeInput(2, 3, 4, 5)
    member = pencil_member_at(inp, 7)
    from dphecke.proj import biform_eval
    for f in (9, 10, F(13, 2)):
        u, v = hecke_point(inp, 7, f)
        assert biform_eval(member, u, v) == 0


def test_hecke_input_validation():
    with pytest.raises(DegenerateGeometry):
        HeckeInput(2, 3, 4, 4)
    with pytest.raises(DegenerateGeometry):
        HeckeInput(0, 3, 4, 5)
    with pytest.raises(DegenerateGeometry):
        HeckeInput(4, 5, 4, 5)
