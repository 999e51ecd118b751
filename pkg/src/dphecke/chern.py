"""Cohomology-ring calculus on the spectral surface and the del Pezzo base.

Surface classes are stored as (rank, divisor part, point part).  On the
spectral surface the divisor generators are the sixteen exceptional curves
E_I and the sixteen theta transforms G_I; on the base they are the sixteen
lines L_I.  All products are evaluated through the exact Gram matrices

    E^t E = -1,   G^t E = 2 + II,   G^t G = -4,   L^t L = II,

with II the intersection matrix of the lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lines import EVEN_LABELS, IMAT, SIGMA, line_combination
from .qlin import Q, QVec, qfloor, qval

Y_INDEX = tuple(("E", I) for I in EVEN_LABELS) + tuple(("G", I) for I in EVEN_LABELS)
XL_INDEX = tuple(("L", I) for I in EVEN_LABELS)


def yvec(e: QVec, g: QVec) -> QVec:
    """Assemble a divisor vector on the spectral surface from E and G coefficients."""
    return QVec(Y_INDEX, e.entries + g.entries)


def xvec(l: QVec) -> QVec:
    return QVec(XL_INDEX, l.entries)


def _pair_y(d1: QVec, d2: QVec) -> Fraction:
    n = 16
    e1, g1 = d1.entries[:n], d1.entries[n:]
    e2, g2 = d2.entries[:n], d2.entries[n:]
    s = Q(0)
    # E.E = -1
    s += sum(-a * b for a, b in zip(e1, e2))
    # G.G = -4 * identity
    s += sum(-4 * a * b for a, b in zip(g1, g2))
    # G.E = 2 * identity + II, applied in both orders
    for i in range(n):
        for j in range(n):
            gij = IMAT.entries[i][j] + (2 if i == j else 0)
            if gij:
                s += gij * (g1[i] * e2[j] + e1[i] * g2[j])
    return s


def _pair_xl(d1: QVec, d2: QVec) -> Fraction:
    s = Q(0)
    for i in range(16):
        for j in range(16):
            c = IMAT.entries[i][j]
            if c:
                s += c * d1.entries[i] * d2.entries[j]
    return s


_PAIRINGS = {"Y": _pair_y, "X": _pair_xl}
_INDICES = {"Y": Y_INDEX, "X": XL_INDEX}


@dataclass(frozen=True)
class SurfaceClass:
    """rank * [surface] + divisor + point-coefficient * [pt] on a tagged surface."""

    tag: str
    rank: Fraction
    div: QVec
    pt: Fraction

    def __post_init__(self):
        if self.tag not in _PAIRINGS:
            raise ValueError(f"unknown surface tag: {self.tag}")
        if self.div.index != _INDICES[self.tag]:
            raise ValueError("divisor part indexed by the wrong generator set")
        object.__setattr__(self, "rank", qval(self.rank))
        object.__setattr__(self, "pt", qval(self.pt))

    @staticmethod
    def on_y(rank, e: QVec, g: QVec, pt) -> "SurfaceClass":
        return SurfaceClass("Y", qval(rank), yvec(e, g), qval(pt))

    @staticmethod
    def on_x(rank, l: QVec, pt) -> "SurfaceClass":
        return SurfaceClass("X", qval(rank), xvec(l), qval(pt))

    def __add__(self, other: "SurfaceClass") -> "SurfaceClass":
        self._check(other)
        return SurfaceClass(self.tag, self.rank + other.rank,
                            self.div + other.div, self.pt + other.pt)

    def __sub__(self, other: "SurfaceClass") -> "SurfaceClass":
        self._check(other)
        return SurfaceClass(self.tag, self.rank - other.rank,
                            self.div - other.div, self.pt - other.pt)

    def __rmul__(self, c) -> "SurfaceClass":
        c = qval(c)
        return SurfaceClass(self.tag, c * self.rank, c * self.div, c * self.pt)

    def _check(self, other: "SurfaceClass"):
        if self.tag != other.tag:
            raise ValueError("classes live on different surfaces")

    def __eq__(self, other):
        return (isinstance(other, SurfaceClass) and self.tag == other.tag
                and self.rank == other.rank and self.div == other.div
                and self.pt == other.pt)

    def l_part(self) -> QVec:
        if self.tag != "X":
            raise ValueError("line coefficients only exist on the base surface")
        return QVec(EVEN_LABELS, self.div.entries)


def mult_surface(c1: SurfaceClass, c2: SurfaceClass) -> SurfaceClass:
    """Graded product truncated at the point class."""
    c1._check(c2)
    pair = _PAIRINGS[c1.tag]
    rank = c1.rank * c2.rank
    div = c1.rank * c2.div + c2.rank * c1.div
    pt = c1.rank * c2.pt + c2.rank * c1.pt + pair(c1.div, c2.div)
    return SurfaceClass(c1.tag, rank, div, pt)


def unit_y() -> SurfaceClass:
    return SurfaceClass.on_y(1, QVec.zero(EVEN_LABELS), QVec.zero(EVEN_LABELS), 0)


def unit_x() -> SurfaceClass:
    return SurfaceClass.on_x(1, QVec.zero(EVEN_LABELS), 0)


def todd_Y() -> SurfaceClass:
    return SurfaceClass.on_y(1, Fraction(-1, 2) * SIGMA, QVec.zero(EVEN_LABELS), 0)


def todd_X_inv() -> SurfaceClass:
    return SurfaceClass.on_x(1, Fraction(-1, 8) * SIGMA, 0)


def pushforward_f(c: SurfaceClass) -> SurfaceClass:
    """Pushforward along the degree-4 cover: E_I -> L_I isomorphically, G_I -> L_I doubly."""
    if c.tag != "Y":
        raise ValueError("pushforward starts on the spectral surface")
    e = QVec(EVEN_LABELS, c.div.entries[:16])
    g = QVec(EVEN_LABELS, c.div.entries[16:])
    return SurfaceClass.on_x(4 * c.rank, e + 2 * g, c.pt)


def ch_M(e: QVec, d: QVec, T: QVec) -> SurfaceClass:
    """Chern character of the level-(T,T) line bundle upstairs (boxed formula)."""
    ee = (T + e).floor()
    dd = (T + d).floor()
    diff = ee - dd
    pt = Fraction(1, 2) * (-diff.dot(diff) + 2 * (ee + dd).dot(IMAT @ dd))
    return SurfaceClass.on_y(1, ee + dd, dd, pt)


def ch_F(e: QVec, d: QVec, T: QVec) -> SurfaceClass:
    """Chern character of the pushed-forward level bundle (boxed formula)."""
    ee = (T + e).floor()
    dd = (T + d).floor()
    diff = ee - dd
    lpart = ee + 3 * dd - SIGMA
    pt = Fraction(1, 2) * (-8 * dd.dot(SIGMA) - diff.dot(diff)
                           + 2 * (ee + dd).dot(IMAT @ dd) + 8)
    return SurfaceClass.on_x(4, lpart, pt)


def ch_F_grr(e: QVec, d: QVec, T: QVec) -> SurfaceClass:
    """The same class through the pushforward pipeline; must agree with ch_F."""
    up = mult_surface(ch_M(e, d, T), todd_Y())
    return mult_surface(todd_X_inv(), pushforward_f(up))


# ---------------------------------------------------------------------------
# exact unit-cell moments
# ---------------------------------------------------------------------------


def cube_moment(k: int, kind: str, e, d) -> Fraction:
    """Exact integral over [-d, 1-d] of t^k, floor(t+e)^k, or t*floor(t+e).

    kind is one of "T", "floor", "cross".  The floor integrand is piecewise
    constant with a single interior breakpoint, so the integral splits into
    at most two polynomial pieces.
    """
    e, d = qval(e), qval(d)
    lo, hi = -d, 1 - d
    if kind == "T":
        if k == 0:
            return Q(1)
        if k == 1:
            return (hi ** 2 - lo ** 2) / 2
        if k == 2:
            return (hi ** 3 - lo ** 3) / 3
        raise ValueError("power out of range")
    m = qfloor(e - d)
    t0 = m + 1 - e  # breakpoint where floor(t+e) steps from m to m+1
    if not (lo < t0 < hi):
        t0 = hi  # integral floor value on the whole cell
    if kind == "floor":
        if k == 0:
            return Q(1)
        if k == 1:
            return m * (t0 - lo) + (m + 1) * (hi - t0)
        if k == 2:
            return m ** 2 * (t0 - lo) + (m + 1) ** 2 * (hi - t0)
        raise ValueError("power out of range")
    if kind == "cross":
        return m * (t0 ** 2 - lo ** 2) / 2 + (m + 1) * (hi ** 2 - t0 ** 2) / 2
    raise ValueError(f"unknown moment kind: {kind}")


def _riemann_floor_refine(e, d, pieces: int) -> Fraction:
    """Midpoint sum for the floor moment; exact once pieces separate the breakpoint."""
    e, d = qval(e), qval(d)
    lo = -d
    h = Fraction(1, pieces)
    s = Q(0)
    for j in range(pieces):
        mid = lo + h * j + h / 2
        s += qfloor(mid + e) * h
    return s


# ---------------------------------------------------------------------------
# the parabolic Chern character of the pushed-forward family
# ---------------------------------------------------------------------------


RHS_POINT = Fraction(88, 3)


def integral_TIT_unit_cube() -> Fraction:
    """Exact integral of T^t II T over the unit cube (all offsets zero)."""
    return integral_TIT(QVec.zero(EVEN_LABELS))


def integral_TIT(d: QVec) -> Fraction:
    s = Q(0)
    for i, I in enumerate(EVEN_LABELS):
        s += IMAT.entries[i][i] * cube_moment(2, "T", 0, d.entries[i])
        for j, J in enumerate(EVEN_LABELS):
            if i != j and IMAT.entries[i][j]:
                s += (IMAT.entries[i][j]
                      * cube_moment(1, "T", 0, d.entries[i])
                      * cube_moment(1, "T", 0, d.entries[j]))
    return s


def eq_TIT(d: QVec) -> Fraction:
    """Closed form for the doubled second moment of the line pairing."""
    return Fraction(88, 3) - 8 * SIGMA.dot(d) + 2 * d.dot(IMAT @ d)


def integral_e2_half(e: QVec, d: QVec) -> Fraction:
    """Factorized integral of -(1/2) floor(T+e)^2 over the shifted cube."""
    return Fraction(-1, 2) * sum(
        (cube_moment(2, "floor", ei, di) for ei, di in zip(e.entries, d.entries)), Q(0))


def eq_a2(e: QVec, d: QVec) -> Fraction:
    fl = (e - d).floor()
    return (Fraction(1, 2) * fl.dot(fl)
            - Fraction(1, 2) * fl.dot(2 * e - 2 * d - SIGMA)
            - Fraction(1, 2) * (e - d).dot(SIGMA))


def integral_eminussigma_IT(e: QVec, d: QVec) -> Fraction:
    """Factorized integral of -(floor(T+e) - sigma)^t II T over the shifted cube."""
    s = Q(0)
    for i in range(16):
        ei, di = e.entries[i], d.entries[i]
        # diagonal entry -1: contributes + integral of (floor - 1) * t
        s += cube_moment(2, "cross", ei, di) - cube_moment(1, "T", 0, di)
        for j in range(16):
            if i != j and IMAT.entries[i][j]:
                s -= (IMAT.entries[i][j]
                      * (cube_moment(1, "floor", ei, di) - 1)
                      * cube_moment(1, "T", 0, d.entries[j]))
    return s


def eq_eminussigma(e: QVec, d: QVec) -> Fraction:
    fl = (e - d).floor()
    diff = e - d
    return (-Fraction(1, 2) * fl.dot(fl)
            + Fraction(1, 2) * fl.dot(2 * e - 2 * d - SIGMA)
            - Fraction(1, 2) * diff.dot(diff)
            + e.dot(IMAT @ d) - d.dot(IMAT @ d)
            - Fraction(3, 2) * e.dot(SIGMA) - Fraction(5, 2) * d.dot(SIGMA)
            + 32)


def degree4_lhs(e: QVec, d: QVec) -> Fraction:
    """Degree-four piece of the averaged character, by exact factorized integration."""
    return (Q(4)
            + integral_e2_half(e, d)
            + 2 * integral_TIT(d)
            + integral_eminussigma_IT(e, d))


@dataclass(frozen=True)
class ParchResult:
    parch0: Fraction          # always 4
    parch1_line_vec: QVec     # the 16-vector e + 3d - sigma
    parch1_class: QVec        # its Picard class, sum of lines
    parch1_condition: QVec    # II (e + 3d - sigma); zero iff parch1 vanishes
    parch2: Fraction          # point-degree discrepancy against the constant side

    def vanishes(self) -> bool:
        return self.parch1_condition.is_zero() and self.parch2 == 0

    def triple(self):
        one = self.parch1_condition.is_zero()
        return (self.parch0, Q(0) if one else Q(1), self.parch2)


def parch(e: QVec, d: QVec) -> ParchResult:
    """Averaged (parabolic) Chern data of the pushed-forward family."""
    v = e + 3 * d - SIGMA
    return ParchResult(
        parch0=Q(4),
        parch1_line_vec=v,
        parch1_class=line_combination(v),
        parch1_condition=IMAT @ v,
        parch2=degree4_lhs(e, d) - RHS_POINT,
    )


def parch_conditions(e: QVec, d: QVec):
    """The two vanishing conditions: linear on the line classes, then quadratic.

    When the linear condition holds, the raw quadratic (before substituting
    the linear relation) must agree with the simplified one; this is checked
    and enforced.
    """
    v = e + 3 * d - SIGMA
    linear = (IMAT @ v).is_zero()
    diff = e - d
    quad_raw = (36 - Fraction(1, 2) * diff.dot(diff) + e.dot(IMAT @ d)
                + d.dot(IMAT @ d) - (2 * e + 10 * d).dot(SIGMA))
    quad_simplified = (36 - Fraction(1, 2) * diff.dot(diff) - 2 * d.dot(IMAT @ d)
                       - (2 * e + 6 * d).dot(SIGMA))
    if linear and quad_raw != quad_simplified:
        raise AssertionError("quadratic forms disagree despite the linear relation")
    return (linear, quad_simplified == 0)


def spectral_parch_ok(a: QVec, b: QVec) -> bool:
    """Degree-zero condition on the eigenvalue side: the weights sum to three."""
    return (a + b).total() == 3
