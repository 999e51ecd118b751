#!/usr/bin/env python3
"""Walk the constraint pipeline on two weight choices and print what happens.

The first choice (with thirds) satisfies the spectral-side conditions but no
integral level shifts exist for it, so the divisorial condition cannot close:
the run shows exactly which certificate entries survive.  The second choice
(half-integral) closes completely: integral shifts are found by an exact
integer solve and every certificate entry is green, wall jumps included.
"""

from fractions import Fraction as F

from dphecke import divisors
from dphecke.lines import POINTS
from dphecke.qlin import QVec, qstr
from dphecke.solver import pipeline


def show(tag, a, b):
    print(f"=== {tag}: a = {a.to_strings()}  b = {b.to_strings()}")
    res = pipeline(a, b)
    for key, val in res.certificate.items():
        print(f"  {key:24} {'ok' if val else 'FAILS'}")
    print(f"  integrality: {res.params.integrality()}")
    print(f"  d = {res.params.d.to_strings()[:4]} ...")
    ps = res.params
    jumps = divisors.single_wall_jumps(ps.lp, ps.lq, ps.llc, ps.e, ps.d,
                                       ps.r1, ps.r2, ps.a, ps.b)
    bad = [j for j in jumps if not j.quotient_zero]
    print(f"  wall jumps: {len(jumps)} total, {len(bad)} fail to vanish in the quotient")
    print()


if __name__ == "__main__":
    thirds_a = QVec(POINTS, (F(1, 2), F(1, 2), F(1, 2), F(1, 3), F(1, 3)))
    thirds_b = QVec(POINTS, (F(1, 2), F(1, 2), F(1, 2), F(-1, 3), F(-1, 3)))
    halves = QVec(POINTS, (F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(-1, 2)))
    show("weights with thirds (obstructed)", thirds_a, thirds_b)
    show("half-integral weights (fully certified)", halves, halves)
