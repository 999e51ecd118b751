from fractions import Fraction as F

import pytest

from dphecke.proj import INF, Moebius, PPoint, DegenerateGeometry, moebius_through
from dphecke.qlin import QVec
from dphecke.sampling import RationalSampler
from dphecke.stability import (Chamber, Deg0K1Config, FlagConfig0, FlagConfig1,
                               ON_MINUS_TWO, WeightTriple, chamber_of,
                               is_stable_deg0_k0, is_stable_deg0_k1,
                               is_stable_deg1, normalize_moduli,
                               on_moebius_graph, wobbly_witness)

POINTS5 = (1, 2, 3, 4, 5)


def cfg0(points, flags):
    return FlagConfig0(tuple(PPoint.of(p) for p in points),
                       tuple(PPoint.of(f) for f in flags))


STD_POINTS = (0, 1, "inf", 4, 5)


def test_chamber_of():
    assert chamber_of(F(1, 2)) is Chamber.C2
    assert chamber_of(F(2, 5)) is Chamber.WALL
    assert chamber_of(F(9, 10)) is Chamber.C4
    assert chamber_of(F(1, 5)) is Chamber.C1
    assert chamber_of(F(3, 4)) is Chamber.C3
    with pytest.raises(ValueError):
        chamber_of(F(7, 5))


def wt(d, a, b):
    return WeightTriple(d, QVec.constant(POINTS5, a), QVec.constant(POINTS5, b))


def test_normalize_moduli():
    assert normalize_moduli(wt(0, 0, F(1, 2))) == F(1, 2)
    assert normalize_moduli(wt(1, 0, F(1, 2))) == F(1, 2)
    assert normalize_moduli(wt(2, F(1, 4), F(1, 2))) == F(1, 4)


def test_moebius_through():
    ident = moebius_through([0, 1, INF], [0, 1, INF])
    for z in (0, 1, 7, F(3, 2)):
        assert ident(z) == PPoint.of(z)
    flip = moebius_through([0, 1, INF], [1, 0, INF])
    assert flip(F(1, 3)) == PPoint.of(F(2, 3))
    with pytest.raises(DegenerateGeometry):
        moebius_through([0, 0, 1], [0, 1, INF])


def test_stable_example_first_chamber():
    cfg = cfg0(STD_POINTS, (0, 0, 1, "inf", 2))
    assert is_stable_deg0_k0(cfg, F(1, 5)).stable


def test_flags_at_points_unstable_in_middle_chamber():
    cfg = cfg0(STD_POINTS, STD_POINTS)
    v = is_stable_deg0_k0(cfg, F(1, 2))
    assert not v.stable
    assert "five" in v.violated
    assert is_stable_deg0_k0(cfg, F(1, 5)).stable


def test_three_coincident_flags_always_unstable():
    cfg = cfg0(STD_POINTS, (0, 0, 0, 1, "inf"))
    for q in (F(1, 5), F(1, 2), F(3, 4), F(9, 10)):
        assert not is_stable_deg0_k0(cfg, q).stable


def test_wall_rejected():
    cfg = cfg0(STD_POINTS, (0, 0, 1, "inf", 2))
    with pytest.raises(ValueError):
        is_stable_deg0_k0(cfg, F(2, 3))


def test_chamber_monotonicity():
    smp = RationalSampler(17)
    for _ in range(60):
        flags = [smp.rational(-6, 6, den_max=9) for _ in range(5)]
        cfg = cfg0(STD_POINTS, flags)
        s3 = is_stable_deg0_k0(cfg, F(3, 4)).stable
        s2 = is_stable_deg0_k0(cfg, F(1, 2)).stable
        s1 = is_stable_deg0_k0(cfg, F(1, 5)).stable
        if s3:
            assert s2
        if s2:
            assert s1


def test_moebius_invariance_of_verdicts():
    smp = RationalSampler(23)
    done = 0
    while done < 60:
        flags = [smp.rational(-6, 6, den_max=9) for _ in range(5)]
        a, bb, c, d = (smp.rational(-5, 5, den_max=7) for _ in range(4))
        if a * d - bb * c == 0:
            continue
        g = Moebius(((a, bb), (c, d)))
        cfg = cfg0(STD_POINTS, flags)
        moved = FlagConfig0(cfg.points, tuple(g(f) for f in cfg.flags))
        for q in (F(1, 5), F(1, 2), F(3, 4)):
            assert is_stable_deg0_k0(cfg, q).stable == is_stable_deg0_k0(moved, q).stable
        done += 1


def test_on_moebius_graph():
    pairs = [(0, 0), (1, 1), (INF, INF), (5, 5)]
    assert on_moebius_graph(pairs)
    assert not on_moebius_graph([(0, 0), (1, 1), (INF, INF), (5, 6)])
    # repeated flag values exclude an irreducible graph
    assert not on_moebius_graph([(0, 2), (1, 2), (3, 5)])


# degree 1, plane model -------------------------------------------------------


def plane_config(ts, dirs=None):
    base = (0, 0, 1)
    dirs = dirs or ((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0))
    flags = []
    for t, d in zip(ts, dirs):
        flags.append(base if t == "pt" else (t * d[0], t * d[1], 1))
    return FlagConfig1(base, dirs, tuple(flags))


def test_deg1_empty_chamber():
    cfg = plane_config((1, 1, 1, 1, 1))
    assert not is_stable_deg1(cfg, F(1, 10)).stable


def test_deg1_flags_at_base_unstable():
    cfg = plane_config(("pt", 1, 1, 2, 3))
    v = is_stable_deg1(cfg, F(1, 4))
    assert not v.stable
    assert "base point" in v.violated


def test_deg1_generic_stable():
    cfg = plane_config((1, 2, 3, 4, 5))
    assert is_stable_deg1(cfg, F(1, 4)).stable
    assert is_stable_deg1(cfg, F(1, 2)).stable


def test_deg1_collinear_rules():
    # flags at parameter 1 on four lines are collinear iff the dirs are arranged so;
    # use dirs on a line: points (t, kt, 1) with same t lie on z = ... not generally
    # collinear; craft four collinear flags instead
    base = (0, 0, 1)
    dirs = ((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0))
    # flags on the line y = 1 - x: solve (t dx, t dy) with t dy = 1 - t dx
    flags = []
    for dx, dy, _ in dirs[:4]:
        t = F(1, dx + dy)
        flags.append((t * dx, t * dy, 1))
    flags.append((5, 15, 1))
    cfg = FlagConfig1(base, dirs, tuple(flags))
    assert not is_stable_deg1(cfg, F(1, 2)).stable
    assert is_stable_deg1(cfg, F(1, 4)).stable  # at most 4 collinear is fine there
    with pytest.raises(ValueError):
        is_stable_deg1(cfg, F(1, 5))


def test_deg1_conic_rule():
    # five flags on the smooth conic x^2 + y^2 = z^2 through... base (0,0,1) is NOT
    # on it; use the conic y z = x^2 through the base point
    base = (0, 0, 1)
    dirs = ((1, 1, 0), (1, 2, 0), (1, 3, 0), (1, 4, 0), (1, 5, 0))
    flags = []
    for dx, dy, _ in dirs:
        # point (t dx, t dy, 1) on y = x^2: t dy = t^2 dx^2 -> t = dy / dx^2
        t = F(dy, dx * dx)
        flags.append((t * dx, t * dy, 1))
    cfg = FlagConfig1(base, dirs, tuple(flags))
    assert is_stable_deg1(cfg, F(1, 2)).stable
    v = is_stable_deg1(cfg, F(7, 10))
    assert not v.stable and "conic" in v.violated


# the k = 1 stratum of degree zero -------------------------------------------


def test_deg0_k1_predicates():
    pts = tuple(PPoint.of(x) for x in (0, 1, 2, 3, 4))
    on_sec = Deg0K1Config(pts, (ON_MINUS_TWO, 1, 2, 3, 4))
    assert not is_stable_deg0_k1(on_sec, F(1, 2)).stable
    # five values of one quadratic: z = p^2
    quad = Deg0K1Config(pts, (0, 1, 4, 9, 16))
    assert not is_stable_deg0_k1(quad, F(1, 2)).stable
    generic = Deg0K1Config(pts, (0, 1, 4, 9, 17))
    assert is_stable_deg0_k1(generic, F(1, 2)).stable
    # first chamber carries no stable structure on this bundle
    assert not is_stable_deg0_k1(generic, F(1, 5)).stable


# wobbly witnesses ------------------------------------------------------------


def test_wobbly_witness_two_coincident():
    cfg = cfg0(STD_POINTS, (0, 0, 1, "inf", 2))
    wit = wobbly_witness(cfg)
    assert wit.kind == "nilpotent-field"
    assert wit.pair == (0, 1)
    # the cubic vanishes exactly at the three other marked points
    from dphecke.stability import _poly_eval_h
    for k in (2, 3, 4):
        assert _poly_eval_h(wit.cubic, cfg.points[k]) == 0
    for k in (0, 1):
        assert _poly_eval_h(wit.cubic, cfg.points[k]) != 0
    assert wit.verify(cfg)


def test_wobbly_witness_rejects_unstable():
    cfg = cfg0(STD_POINTS, STD_POINTS)  # all five on the diagonal graph
    with pytest.raises(ValueError):
        wobbly_witness(cfg)


def test_wobbly_four_on_graph():
    # flags on the graph of the identity for four of the points, fifth off it
    cfg = cfg0(STD_POINTS, (0, 1, "inf", 4, 7))
    wit = wobbly_witness(cfg)
    assert wit.kind == "four-on-graph"


def test_very_stable_candidate():
    cfg = cfg0(STD_POINTS, (1, 2, 5, 7, 11))
    wit = wobbly_witness(cfg)
    assert wit.kind == "very-stable-candidate"


def test_witness_fields_on_seeded_sweep():
    smp = RationalSampler(41)
    done = 0
    while done < 40:
        pts = smp.distinct_rationals(5, -8, 8)
        vals = smp.distinct_rationals(4, -8, 8)
        flags = [vals[0], vals[0], vals[1], vals[2], vals[3]]
        try:
            cfg = cfg0(pts, flags)
            wit = wobbly_witness(cfg)
        except ValueError:
            continue
        assert wit.kind == "nilpotent-field"
        assert wit.verify(cfg)
        done += 1
