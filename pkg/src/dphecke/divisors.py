"""Divisor-class bookkeeping on the resolved correspondence and its covers.

Three ambient groups appear:

* the 58 parabolic divisor components on the correspondence itself
  (Lp_I, Lq_I, LLC_I, R_{1,i}, R_{2,i}), probed by 49 spanning curves;
* the 165 natural divisors on the resolved triple cover (S_I, EC_I,
  GC_I, N_I, Yp_i, M_{I,i}) carrying the three pullback tables;
* the 53 natural divisors on the product of the spectral surface with
  the spectral curve (Theta_I, E_I x C, G_I x C, Y x p_i), modulo 34
  cohomological relations, where the level-quantified Hecke condition
  is tested.

Fractional (1/2) pullback coefficients are honest: some of the divisors
are Weil but not Cartier, and their pullbacks live in Pic tensor Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lines import EVEN_LABELS, IMAT, POINTS, incidence_delta, label_add, neighbors
from .qlin import Q, QMat, QVec, qfloor, qval, rref, solve_linear

# ---------------------------------------------------------------------------
# Pic(H): 58 generators, 49 spanning curves
# ---------------------------------------------------------------------------

PICH_INDEX = (tuple(("Lp", I) for I in EVEN_LABELS)
              + tuple(("Lq", I) for I in EVEN_LABELS)
              + tuple(("LLC", I) for I in EVEN_LABELS)
              + tuple(("R1", i) for i in POINTS)
              + tuple(("R2", i) for i in POINTS))

CURVES_INDEX = (tuple(("Lxpt", I) for I in EVEN_LABELS)
                + tuple(("ptxL", I) for I in EVEN_LABELS)
                + (("Dhat", 0),)
                + tuple(("Sig", I) for I in EVEN_LABELS))


def pic_h_class(lp: QVec, lq: QVec, llc: QVec, r1: QVec, r2: QVec) -> QVec:
    return QVec(PICH_INDEX, lp.entries + lq.entries + llc.entries + r1.entries + r2.entries)


def _curve_row(curve) -> list:
    kind, lab = curve
    row = []
    for gen_kind, gen_lab in PICH_INDEX:
        if kind == "Lxpt":
            if gen_kind == "Lp":
                row.append(IMAT.entry(lab, gen_lab))
            elif gen_kind == "R1":
                row.append(Q(1 - incidence_delta(lab, gen_lab)))
            elif gen_kind == "R2":
                row.append(Q(incidence_delta(lab, gen_lab)))
            else:
                row.append(Q(0))
        elif kind == "ptxL":
            if gen_kind == "Lq":
                row.append(IMAT.entry(lab, gen_lab))
            elif gen_kind == "R1":
                row.append(Q(1 - incidence_delta(lab, gen_lab)))
            elif gen_kind == "R2":
                row.append(Q(incidence_delta(lab, gen_lab)))
            else:
                row.append(Q(0))
        elif kind == "Dhat":
            row.append(Q(1) if gen_kind in ("R1", "R2") else Q(0))
        elif kind == "Sig":
            if gen_kind == "Lp" and gen_lab == lab:
                row.append(Q(1))
            elif gen_kind == "Lq" and gen_lab == lab:
                row.append(Q(1))
            elif gen_kind == "LLC" and gen_lab == lab:
                row.append(Q(-1))
            elif gen_kind == "R1":
                row.append(Q(incidence_delta(lab, gen_lab)))
            elif gen_kind == "R2":
                row.append(Q(1 - incidence_delta(lab, gen_lab)))
            else:
                row.append(Q(0))
        else:
            raise ValueError(f"unknown curve kind {kind}")
    return row


def curve_table() -> QMat:
    """49 x 58 intersection table of the spanning curves with the divisor components."""
    return QMat.from_rows(CURVES_INDEX, PICH_INDEX,
                          [_curve_row(c) for c in CURVES_INDEX])


CURVE_TABLE = curve_table()


def delta_hat_pairings() -> QVec:
    """Intersections of the strict diagonal with the 49 spanning curves."""
    ent = []
    for kind, _ in CURVES_INDEX:
        ent.append(Q(-1) if kind == "Dhat" else Q(0))
    return QVec(CURVES_INDEX, tuple(ent))


def _symmetric_class(x, y, z, u) -> QVec:
    lp = QVec.constant(EVEN_LABELS, x)
    lq = QVec.constant(EVEN_LABELS, y)
    llc = QVec.constant(EVEN_LABELS, z)
    r = QVec.constant(POINTS, u)
    return pic_h_class(lp, lq, llc, r, r)


def delta_hat_class() -> QVec:
    """Closed form of the strict diagonal as a rational divisor combination."""
    return _symmetric_class(Fraction(1, 8), Fraction(1, 8), Fraction(-1, 4), Fraction(-1, 10))


def omega_q_class() -> QVec:
    """The relative dualizing class of the second projection, assembled from the
    diagonal expression."""
    return _symmetric_class(Fraction(-1, 8), Fraction(1, 8), Fraction(1, 2), Fraction(3, 10))


def delta_hat_solved_symmetric() -> QVec:
    """Recompute the diagonal class from the curve table in the symmetric ansatz.

    Symmetric combinations x Lp + y Lq + z LLC + u RR reduce the 49
    conditions to four independent ones; the solution is unique.
    """
    # rows: pairings of the ansatz with the four curve types
    rows = [
        [Q(4), Q(0), Q(0), Q(5)],   # with L x pt:  4x + 5u
        [Q(0), Q(4), Q(0), Q(5)],   # with pt x L:  4y + 5u
        [Q(0), Q(0), Q(0), Q(10)],  # with the diagonal fiber: 10u
        [Q(1), Q(1), Q(-1), Q(5)],  # with Sigma_I: x + y - z + 5u
    ]
    rhs = QVec((0, 1, 2, 3), (Q(0), Q(0), Q(-1), Q(0)))
    mat = QMat.from_rows((0, 1, 2, 3), ("x", "y", "z", "u"), rows)
    sol = solve_linear(mat, rhs)
    if not sol.consistent or sol.dim != 0:
        raise AssertionError("symmetric diagonal system must have a unique solution")
    p = sol.particular
    return _symmetric_class(p["x"], p["y"], p["z"], p["u"])


def delta_hat_full_solution():
    """Solve the full 49-row system for the diagonal; returns the solution set."""
    return solve_linear(CURVE_TABLE, delta_hat_pairings())


def pullback_p(I) -> QVec:
    out = QVec.zero(PICH_INDEX)
    return out.with_entry(("Lp", I), 1).with_entry(("LLC", I), 1)


def pullback_q_line(I) -> QVec:
    out = QVec.zero(PICH_INDEX)
    return out.with_entry(("Lq", I), 1).with_entry(("LLC", I), 1)


def pullback_q_point(i) -> QVec:
    out = QVec.zero(PICH_INDEX)
    return out.with_entry(("R1", i), 1).with_entry(("R2", i), 1)


def curve_pairings(c: QVec) -> QVec:
    """Intersections of a divisor class with the 49 spanning curves."""
    return CURVE_TABLE @ c


def orthogonal_to_all_curves(c: QVec) -> bool:
    return curve_pairings(c).is_zero()


# ---------------------------------------------------------------------------
# the resolved triple cover: 165 generators, three pullback tables
# ---------------------------------------------------------------------------

PICHT_INDEX = (tuple(("S", I) for I in EVEN_LABELS)
               + tuple(("EC", I) for I in EVEN_LABELS)
               + tuple(("GC", I) for I in EVEN_LABELS)
               + tuple(("N", I) for I in EVEN_LABELS)
               + tuple(("Yp", i) for i in POINTS)
               + tuple(("M", I, i) for I in EVEN_LABELS for i in (1, 2, 3, 4, 5, 6)))


def _ht(pairs) -> QVec:
    out = QVec.zero(PICHT_INDEX)
    for key, val in pairs:
        out = out.with_entry(key, out[key] + qval(val))
    return out


def ptilde_E(I) -> QVec:
    return _ht([(("N", I), 1)] + [(("M", I, i), 1) for i in (1, 2, 3, 4, 5, 6)])


def ptilde_G(I) -> QVec:
    return _ht([(("S", I), 1), (("EC", I), 1)])


def qtilde_EC(I) -> QVec:
    return _ht([(("EC", I), 1)] + [(("M", I, i), 1) for i in (1, 2, 3, 4, 5, 6)])


def qtilde_GC(I) -> QVec:
    return _ht([(("GC", I), 1), (("N", I), 1)])


def qtilde_Yp(i) -> QVec:
    return _ht([(("Yp", i), 1)] + [(("M", I, i), 1) for I in EVEN_LABELS])


def g_Lp(I) -> QVec:
    return _ht([(("S", I), 1), (("N", I), 1)]
               + [(("M", label_add(I, i), i), 2) for i in POINTS])


def g_Lq(I) -> QVec:
    return _ht([(("EC", I), 1), (("GC", I), 1)]
               + [(("M", I, i), 2) for i in POINTS])


def g_LLC(I) -> QVec:
    return _ht([(("EC", I), 1), (("N", I), 1), (("M", I, 6), 2)])


def g_R1(i) -> QVec:
    return _ht([(("Yp", i), 1)]
               + [(("M", I, i), 2) for I in EVEN_LABELS if incidence_delta(I, i)])


def g_R2(i) -> QVec:
    return _ht([(("Yp", i), 1)]
               + [(("M", I, i), 2) for I in EVEN_LABELS if not incidence_delta(I, i)])


def gZ_LpE(I) -> QVec:
    return _ht([(("N", I), Fraction(1, 2))] + [(("M", label_add(I, i), i), 1) for i in POINTS])


def gZ_LLE(I) -> QVec:
    return _ht([(("N", I), Fraction(1, 2)), (("M", I, 6), 1)])


def gZ_LpG(I) -> QVec:
    return _ht([(("S", I), 1)])


def gZ_LLG(I) -> QVec:
    return _ht([(("EC", I), 1)])


def g_of_pic_h(c: QVec) -> QVec:
    """Total pullback of a divisor class from the correspondence to the cover."""
    if c.index != PICH_INDEX:
        raise ValueError("expected a class over the 58 standard generators")
    out = QVec.zero(PICHT_INDEX)
    for (kind, lab), coeff in zip(PICH_INDEX, c.entries):
        if coeff == 0:
            continue
        if kind == "Lp":
            out = out + coeff * g_Lp(lab)
        elif kind == "Lq":
            out = out + coeff * g_Lq(lab)
        elif kind == "LLC":
            out = out + coeff * g_LLC(lab)
        elif kind == "R1":
            out = out + coeff * g_R1(lab)
        elif kind == "R2":
            out = out + coeff * g_R2(lab)
    return out


def gZ_pullback_abH() -> QVec:
    """Pullback of the abelianized correspondence divisor, composed from the tables.

    The derived identity behind it: the divisor equals the relative
    dualizing class twisted by one ruling-type component, so its pullback
    is g* omega_q + gZ* LpE.
    """
    total = g_of_pic_h(omega_q_class())
    for I in EVEN_LABELS:
        total = total + gZ_LpE(I)
    return total


def gZ_pullback_abH_boxed() -> QVec:
    """The printed combination: -1/8 S + 5/8 EC + 1/8 GC + 3/5 Yp + 3/8 N
    + 3/5 M_(.,<=5) + M_(.,6)."""
    out = QVec.zero(PICHT_INDEX)
    for I in EVEN_LABELS:
        out = out.with_entry(("S", I), Fraction(-1, 8))
        out = out.with_entry(("EC", I), Fraction(5, 8))
        out = out.with_entry(("GC", I), Fraction(1, 8))
        out = out.with_entry(("N", I), Fraction(3, 8))
        for i in POINTS:
            out = out.with_entry(("M", I, i), Fraction(3, 5))
        out = out.with_entry(("M", I, 6), Q(1))
    for i in POINTS:
        out = out.with_entry(("Yp", i), Fraction(3, 5))
    return out


def drop_exceptional(c: QVec) -> QVec:
    """Forget the blow-up exceptional coordinates (N and M families)."""
    keep = [k for k in PICHT_INDEX if k[0] in ("S", "EC", "GC", "Yp")]
    return QVec(tuple(keep), tuple(c[k] for k in keep))


# ---------------------------------------------------------------------------
# the product of the spectral surface with the spectral curve
# ---------------------------------------------------------------------------

PICYC_INDEX = (tuple(("Th", I) for I in EVEN_LABELS)
               + tuple(("EY", I) for I in EVEN_LABELS)
               + tuple(("GY", I) for I in EVEN_LABELS)
               + tuple(("Yp", i) for i in POINTS))


def _yc(pairs) -> QVec:
    out = QVec.zero(PICYC_INDEX)
    for key, val in pairs:
        out = out.with_entry(key, out[key] + qval(val))
    return out


def relation_differences() -> tuple:
    """The 34 relation classes spanning the kernel of the cohomology quotient."""
    base = EVEN_LABELS[0]
    rels = []

    def ring(I):
        return _yc([(("GY", I), 1), (("EY", I), 1)] + [(("EY", J), 1) for J in neighbors(I)])

    def theta(I):
        return _yc([(("Th", I), 1), (("EY", I), 1)])

    for I in EVEN_LABELS[1:]:
        rels.append(ring(I) - ring(base))
    for I in EVEN_LABELS[1:]:
        rels.append(theta(I) - theta(base))
    for i in POINTS[1:]:
        rels.append(_yc([(("Yp", i), 1)]) - _yc([(("Yp", POINTS[0]), 1)]))
    return tuple(rels)


_REL_ROWS = None
_REL_PIVOTS = None


def _relation_rref():
    global _REL_ROWS, _REL_PIVOTS
    if _REL_ROWS is None:
        rows = [list(r.entries) for r in relation_differences()]
        _REL_PIVOTS = rref(rows, len(PICYC_INDEX))
        _REL_ROWS = [row for row in rows if any(x != 0 for x in row)]
    return _REL_ROWS, _REL_PIVOTS


def quotient_reduce(c: QVec) -> QVec:
    """Canonical representative of a class modulo the 34 relations."""
    if c.index != PICYC_INDEX:
        raise ValueError("expected a class over the product generators")
    rows, pivots = _relation_rref()
    vec = list(c.entries)
    for row, p in zip(rows, pivots):
        if vec[p] != 0:
            f = vec[p]
            vec = [a - f * b for a, b in zip(vec, row)]
    return QVec(PICYC_INDEX, tuple(vec))


def quotient_is_zero(c: QVec) -> bool:
    return quotient_reduce(c).is_zero()


def hecke_divisor_class(lp: QVec, lq: QVec, llc: QVec, e: QVec, d: QVec,
                        r1: QVec, r2: QVec, a: QVec, b: QVec,
                        T: QVec, t: QVec) -> QVec:
    """The level-(T, t) divisorial Hecke class on the product."""
    th = (lp + d).floor() - QVec.constant(EVEN_LABELS, Fraction(1, 8))
    ey = ((T + llc + d).floor() + (T + lq).floor()
          + QVec.constant(EVEN_LABELS, Fraction(5, 8))
          - (T + e).floor() - (T + d).floor())
    gy = ((T + lq).floor() + QVec.constant(EVEN_LABELS, Fraction(1, 8))
          - (T + d).floor())
    yp = ((t + r1).floor() + (t + r2).floor()
          + QVec.constant(POINTS, Fraction(3, 5))
          - (t + a).floor() - (t + b).floor())
    return QVec(PICYC_INDEX, th.entries + ey.entries + gy.entries + yp.entries)


def alternative_classify(lp: QVec, d: QVec, e: QVec) -> str:
    """The mutually exclusive numerical alternatives for the abelianized condition."""
    pd = (lp + d).is_integral()
    pe = (lp + e).is_integral()
    if pd and pe:
        return "ALT_I"
    if pd and not pe:
        return "ALT_II"
    return "NEITHER"


@dataclass(frozen=True)
class WallJump:
    side: str        # "T" or "t"
    position: int    # coordinate index (canonical order / point index)
    wall: Fraction   # fractional wall position in the level coordinate
    jump: QVec       # change of the divisor class across the wall
    quotient_zero: bool
    matched_integrality: bool  # the corresponding integrality condition


def single_wall_jumps(lp, lq, llc, e, d, r1, r2, a, b) -> list:
    """Classify every floor wall of the level variables and its jump class.

    The jump across a wall is relation-quotient-zero precisely when the
    floor arguments hitting that wall pair up, which is the integrality
    bookkeeping of the constraint system; both sides are computed
    independently here so the equivalence is observable.
    """
    jumps = []
    for pos, I in enumerate(EVEN_LABELS):
        args = {
            "llc+d": (llc + d).entries[pos],
            "lq": lq.entries[pos],
            "e": e.entries[pos],
            "d": d.entries[pos],
        }
        sign = {"llc+d": 1, "lq": 1, "e": -1, "d": -1}
        gy_part = {"lq": 1, "d": -1}
        walls = {}
        for name, v in args.items():
            frac = v - qfloor(v)
            walls.setdefault(frac, []).append(name)
        b_int = (lq.entries[pos] - d.entries[pos]).denominator == 1
        c_int = (llc.entries[pos] + d.entries[pos] - e.entries[pos]).denominator == 1
        for frac, names in walls.items():
            vec = QVec.zero(PICYC_INDEX)
            for name in names:
                vec = vec.with_entry(("EY", I), vec[("EY", I)] + sign[name])
                if name in gy_part:
                    vec = vec.with_entry(("GY", I), vec[("GY", I)] + gy_part[name])
            matched = b_int and c_int
            jumps.append(WallJump("T", pos, frac, vec, quotient_is_zero(vec), matched))
    for pos, i in enumerate(POINTS):
        args = {"r1": r1.entries[pos], "r2": r2.entries[pos],
                "a": a.entries[pos], "b": b.entries[pos]}
        sign = {"r1": 1, "r2": 1, "a": -1, "b": -1}
        walls = {}
        for name, v in args.items():
            frac = v - qfloor(v)
            walls.setdefault(frac, []).append(name)
        fr = sorted(((args["r1"] - qfloor(args["r1"])), (args["r2"] - qfloor(args["r2"]))))
        fab = sorted(((args["a"] - qfloor(args["a"])), (args["b"] - qfloor(args["b"]))))
        matched = fr == fab
        for frac, names in walls.items():
            s = sum(sign[name] for name in names)
            vec = QVec.zero(PICYC_INDEX).with_entry(("Yp", i), s)
            jumps.append(WallJump("t", pos, frac, vec, quotient_is_zero(vec), matched))
    return jumps
