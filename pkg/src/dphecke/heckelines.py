"""Exact geometry of Hecke lines on the quartic del Pezzo.

Two independent computational routes are kept side by side throughout:
a synthetic one (pencils of curves on P^1 x P^1, slopes of components of
singular fibers) and closed rational formulas.  The synthetic route is
authoritative; the closed forms act as regression targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .proj import (DegenerateGeometry, INF, Moebius, PPoint, bracket,
                   form_product, moebius_through, one_one_form, one_one_through)
from .qlin import Q, QMat, QVec, qval, rref, solve_linear


@dataclass(frozen=True)
class PencilConfig:
    """Two extra singular-fiber parameters of the quadric pencil, besides 0, 1, inf."""

    l4: Fraction
    l5: Fraction

    def __post_init__(self):
        l4, l5 = qval(self.l4), qval(self.l5)
        if l4 == l5 or l4 in (0, 1) or l5 in (0, 1):
            raise DegenerateGeometry("pencil parameters 0, 1, l4, l5 must be distinct")
        object.__setattr__(self, "l4", l4)
        object.__setattr__(self, "l5", l5)


@dataclass(frozen=True)
class IotaResult:
    """The pencil-parameter isomorphism in coordinates.

    v is the rational coordinate on the dual conic pinned by the three
    coordinate points; u is the renormalization taking the values 0, inf, 1
    on the first three distinguished points.
    """

    conic_coeffs: tuple   # (alpha, beta, gamma)
    v_values: tuple       # v at the five distinguished points
    u: Moebius

    def u_value(self, k: int) -> PPoint:
        return self.u(self.v_values[k - 1])


def _dual_points(cfg: PencilConfig):
    one = Q(1)
    return (
        (one, one, one),
        (one, cfg.l4, cfg.l5),
        (one, Q(0), Q(0)),
        (Q(0), one, Q(0)),
        (Q(0), Q(0), one),
    )


def _conic_coeffs(cfg: PencilConfig):
    # conic a*yz + b*xz + c*xy through the five dual points; the three
    # coordinate points force this shape, the remaining two points force
    # the coefficients up to scale.
    pts = _dual_points(cfg)
    rows = [[p[1] * p[2], p[0] * p[2], p[0] * p[1]] for p in pts[:2]]
    work = [r[:] for r in rows]
    piv = rref(work, 3)
    if len(piv) != 2:
        raise DegenerateGeometry("degenerate pencil configuration")
    free = [c for c in range(3) if c not in piv][0]
    coeff = [Q(0)] * 3
    coeff[free] = Q(1)
    for r, c in enumerate(piv):
        coeff[c] = -work[r][free]
    return tuple(coeff)


def _param_invert(coeffs, p):
    """Point (s : t) of the rational parametrization of the conic hitting p.

    The parametrization is (s:t) -> (a t(t-s) : b s(s-t) : c s t); it sends
    0, inf, 1 to the three coordinate points.
    """
    a, b, c = coeffs
    x, y, z = p
    # from the parametrization: x * (c s t) = z * (a t (t-s)) for z != 0 etc.
    if z != 0:
        # s (c x + a z) = a z t
        return PPoint(a * z, c * x + a * z)
    if x != 0:
        # t = s: the z = 0, y = 0 point is (1:1)? solve via y-row:
        # y * (c s t) = z * ... degenerate; use x and y rows directly
        # y * a t (t - s) = x * b s (s - t)  =>  t(-a y t + a y s ... )
        # points with z = 0 are s = 0 or t = 0
        return PPoint(Q(0), Q(1)) if y == 0 else PPoint(Q(1), Q(0))
    return PPoint(Q(1), Q(0))


def iota_map(cfg: PencilConfig) -> IotaResult:
    """Coordinates of the isomorphism from the pencil parameter line.

    Builds the dual conic through the five distinguished dual points,
    parametrizes it, and renormalizes so the first three points go to
    0, inf, 1.  The postcondition that the last two points then go to the
    pencil parameters themselves is asserted.
    """
    coeffs = _conic_coeffs(cfg)
    pts = _dual_points(cfg)
    for p in pts:
        a, b, c = coeffs
        if a * p[1] * p[2] + b * p[0] * p[2] + c * p[0] * p[1] != 0:
            raise DegenerateGeometry("dual conic construction failed")
    v = tuple(_param_invert(coeffs, p) for p in pts)
    u = moebius_through([v[0], v[1], v[2]], [PPoint.of(0), INF, PPoint.of(1)])
    res = IotaResult(coeffs, v, u)
    if bracket(res.u_value(4), PPoint.of(cfg.l4)) != 0 or \
       bracket(res.u_value(5), PPoint.of(cfg.l5)) != 0:
        raise DegenerateGeometry("pencil parameter isomorphism postcondition failed")
    return res


def slope_at(m: Moebius, z) -> Fraction:
    return m.slope_at(z)


@dataclass(frozen=True)
class HeckeInput:
    """Normalized data of a Hecke line: base point moduli and a flag point.

    The first three marked points and flags sit at 0, 1, inf; the data is
    the remaining pair of marked points (p4, p5) and the surface point
    x = (f4, f5).
    """

    f4: Fraction
    f5: Fraction
    p4: Fraction
    p5: Fraction

    def __post_init__(self):
        f4, f5, p4, p5 = (qval(v) for v in (self.f4, self.f5, self.p4, self.p5))
        special = (Q(0), Q(1))
        if p4 == p5 or p4 in special or p5 in special:
            raise DegenerateGeometry("marked points 0, 1, inf, p4, p5 must be distinct")
        if (f4, f5) == (p4, p5):
            raise DegenerateGeometry("the flag point must avoid the blown-up point")
        if f4 in special or f5 in special or f4 == 0 or f5 == 0:
            raise DegenerateGeometry("flag coordinates 0, 1, inf are excluded for genericity")
        object.__setattr__(self, "f4", f4)
        object.__setattr__(self, "f5", f5)
        object.__setattr__(self, "p4", p4)
        object.__setattr__(self, "p5", p5)


def _slope_through(aux1, aux2, inp: HeckeInput) -> Fraction:
    """Slope at (0,0) of the (1,1) curve through (0,0), (f4,f5) and an auxiliary pair."""
    m = one_one_through([(PPoint.of(0), PPoint.of(0)),
                         (PPoint.of(inp.f4), PPoint.of(inp.f5)),
                         (aux1, aux2)])
    return m.slope_at(0)


def hecke_anchor_values(inp: HeckeInput):
    """Values of the Hecke-line map at the parameter points 0, 1, inf.

    Computed from the singular fibers of the pencil of nodal anticanonical
    curves: each anchor is the tangent slope at the node image of the fiber
    component through it.  Cross-checked against the closed forms.
    """
    h0 = _slope_through(PPoint.of(inp.p4), PPoint.of(inp.p5), inp)
    h1 = _slope_through(INF, INF, inp)
    hinf = _slope_through(PPoint.of(1), PPoint.of(1), inp)
    f4, f5, p4, p5 = inp.f4, inp.f5, inp.p4, inp.p5
    closed0 = ((p4 - f4) * p5 * f5) / (f4 * (p5 - f5) * p4)
    closed1 = f5 / f4
    closedinf = ((f4 - 1) * f5) / (f4 * (f5 - 1))
    if (h0, h1, hinf) != (closed0, closed1, closedinf):
        raise AssertionError("slope oracle disagrees with the closed anchor formulas")
    return (h0, h1, hinf)


def hecke_line_map(inp: HeckeInput) -> Moebius:
    """The Hecke-line map as a Moebius function of the modification point."""
    h0, h1, hinf = hecke_anchor_values(inp)
    return moebius_through([PPoint.of(0), PPoint.of(1), INF],
                           [PPoint.of(h0), PPoint.of(h1), PPoint.of(hinf)])


# ---------------------------------------------------------------------------
# the (2,2) pencil route: an independent fourth-point oracle
# ---------------------------------------------------------------------------


def _product_form(pairs1, pairs2) -> dict:
    c1 = one_one_form(one_one_through(pairs1))
    c2 = one_one_form(one_one_through(pairs2))
    return form_product(c1, c2)


def _pencil_members(inp: HeckeInput):
    """The three reducible (2,2) members of the nodal-curve pencil at 0, 1, inf."""
    o = (PPoint.of(0), PPoint.of(0))
    e = (PPoint.of(1), PPoint.of(1))
    i = (INF, INF)
    x = (PPoint.of(inp.f4), PPoint.of(inp.f5))
    pp = (PPoint.of(inp.p4), PPoint.of(inp.p5))
    m0 = _product_form([x, o, pp], [x, e, i])
    m1 = _product_form([x, e, pp], [x, o, i])
    minf = _product_form([x, i, pp], [x, o, e])
    return m0, m1, minf


_FORM_KEYS = tuple((j, k) for j in range(3) for k in range(3))


def _form_vec(form: dict) -> QVec:
    return QVec(_FORM_KEYS, tuple(form[k] for k in _FORM_KEYS))


def pencil_member_at(inp: HeckeInput, p) -> dict:
    """The (2,2) curve of the pencil at parameter p, normalized through the anchors."""
    m0, m1, minf = (_form_vec(m) for m in _pencil_members(inp))
    mat = QMat.from_rows(_FORM_KEYS, ("c0", "cinf"),
                         [[m0[k], minf[k]] for k in _FORM_KEYS])
    sol = solve_linear(mat, m1)
    if not sol.consistent or sol.dim != 0:
        raise DegenerateGeometry("pencil normalization failed")
    s0, sinf = sol.particular["c0"], sol.particular["cinf"]
    p = PPoint.of(p)
    vec = (p.b * s0) * m0 + (p.a * sinf) * minf
    return {k: vec[k] for k in _FORM_KEYS}


def slope_oracle_at(inp: HeckeInput, p) -> Fraction:
    """Slope at the origin of the pencil member at p; independent of the anchor route."""
    form = pencil_member_at(inp, p)
    fu = form[(1, 0)]  # affine u-coefficient at the origin
    fv = form[(0, 1)]
    if form[(0, 0)] != 0:
        raise DegenerateGeometry("pencil member does not pass through the origin")
    if fv == 0:
        raise DegenerateGeometry("vertical tangent at the origin")
    return -fu / fv


# ---------------------------------------------------------------------------
# the full Hecke-line parametrization and the node locator
# ---------------------------------------------------------------------------


def _two_one_through(points) -> dict:
    """The (2,1) form through five points of P^1 x P^1, unique up to scale."""
    if len(points) != 5:
        raise DegenerateGeometry("exactly five points are required")
    keys = tuple((j, k) for j in range(3) for k in range(2))
    rows = []
    for u, v in points:
        u, v = PPoint.of(u), PPoint.of(v)
        rows.append([u.a ** j * u.b ** (2 - j) * v.a ** k * v.b ** (1 - k) for j, k in keys])
    work = [r[:] for r in rows]
    piv = rref(work, 6)
    if len(piv) != 5:
        raise DegenerateGeometry("the five points do not determine a unique (2,1) curve")
    free = [c for c in range(6) if c not in piv][0]
    coeff = [Q(0)] * 6
    coeff[free] = Q(1)
    for r, c in enumerate(piv):
        coeff[c] = -work[r][free]
    return dict(zip(keys, coeff))


def _ruling_form(c: PPoint) -> dict:
    # (1,0) form vanishing on the ruling u = c
    return {(1, 0): c.b, (0, 0): -c.a}


def _three_one_member(c: PPoint, others) -> QVec:
    """Reducible (3,1) member: the ruling over c times the (2,1) through the others."""
    rul = _ruling_form(c)
    k21 = _two_one_through(others)
    keys31 = tuple((j, k) for j in range(4) for k in range(2))
    out = {key: Q(0) for key in keys31}
    for (j1, k1), a in rul.items():
        for (j2, k2), b in k21.items():
            out[(j1 + j2, k1 + k2)] += a * b
    return QVec(keys31, tuple(out[k] for k in keys31))


def hecke_point(inp: HeckeInput, p, f) -> tuple:
    """Image of the modification at flag f and point p, via the discriminant pencil.

    Six marked points determine a pencil of (3,1) curves; its six reducible
    members are labeled by the six base parameters.  The affine coordinate
    on the pencil taking 0, 1, inf at the members over 0, 1, inf evaluates
    at the members over p4 and p5 to the image point.
    """
    p, f = PPoint.of(p), PPoint.of(f)
    base = {
        "0": (PPoint.of(0), PPoint.of(0)),
        "1": (PPoint.of(1), PPoint.of(1)),
        "inf": (INF, INF),
        "p4": (PPoint.of(inp.p4), PPoint.of(inp.f4)),
        "p5": (PPoint.of(inp.p5), PPoint.of(inp.f5)),
        "p": (p, f),
    }
    first = {"0": PPoint.of(0), "1": PPoint.of(1), "inf": INF,
             "p4": PPoint.of(inp.p4), "p5": PPoint.of(inp.p5), "p": p}

    def member(label):
        others = [base[k] for k in base if k != label]
        return _three_one_member(first[label], others)

    m0, m1, minf = member("0"), member("1"), member("inf")
    keys31 = m0.index
    mat = QMat.from_rows(keys31, ("c0", "cinf"), [[m0[k], minf[k]] for k in keys31])
    sol = solve_linear(mat, m1)
    if not sol.consistent or sol.dim != 0:
        raise DegenerateGeometry("discriminant pencil normalization failed")
    s0, sinf = sol.particular["c0"], sol.particular["cinf"]

    def coordinate(label):
        mc = member(label)
        matc = QMat.from_rows(keys31, ("a", "b"),
                              [[(s0 * m0)[k], (sinf * minf)[k]] for k in keys31])
        solc = solve_linear(matc, mc)
        if not solc.consistent or solc.dim != 0:
            raise DegenerateGeometry("reducible member is not in the pencil")
        return PPoint(solc.particular["b"], solc.particular["a"])

    return (coordinate("p4"), coordinate("p5"))


def singular_point_of_22(A, B, C, D) -> tuple:
    """Node of the image of f -> (A/B, C/D) for quadratic polynomials A..D.

    The coefficient matrix of (A, B, C, D) must have a one-dimensional
    kernel (a, b, c, d) with a c != 0; the node is (-b/a, -d/c).
    """
    quads = []
    for poly in (A, B, C, D):
        poly = [qval(c) for c in poly]
        if len(poly) != 3:
            raise DegenerateGeometry("quadratic coefficient lists of length 3 are required")
        quads.append(poly)
    mat = QMat.from_rows(("A", "B", "C", "D"), (0, 1, 2), quads).transpose()
    ker = solve_linear(mat, QVec.zero((0, 1, 2))).kernel
    if len(ker) != 1:
        raise DegenerateGeometry("kernel of the coefficient matrix is not one-dimensional")
    a, b, c, d = (ker[0]["A"], ker[0]["B"], ker[0]["C"], ker[0]["D"])
    if a == 0 or c == 0:
        raise DegenerateGeometry("node formula needs a and c nonzero in the kernel vector")
    return (-b / a, -d / c)


def hecke_rational_components(inp: HeckeInput, p):
    """Quadratic numerators/denominators of both coordinates of the Hecke map at p.

    Recovered exactly from seven samples of the synthetic parametrization;
    feeds the node locator.
    """
    p = PPoint.of(p)
    samples = []
    taken = 0
    f = 7
    while taken < 7:
        fp = PPoint.of(Fraction(f, 1))
        try:
            u, v = hecke_point(inp, p, fp)
        except DegenerateGeometry:
            f += 1
            continue
        if u.is_infinity or v.is_infinity:
            f += 1
            continue
        samples.append((fp.a, u.value(), v.value()))
        taken += 1
        f += 1

    def fit(idx):
        rows = []
        for fv, u, v in samples:
            w = (u, v)[idx]
            rows.append([Q(1), fv, fv ** 2, -w, -w * fv, -w * fv ** 2])
        work = [r[:] for r in rows]
        piv = rref(work, 6)
        if len(piv) != 5:
            raise DegenerateGeometry("rational-function fit is not unique")
        free = [c for c in range(6) if c not in piv][0]
        coeff = [Q(0)] * 6
        coeff[free] = Q(1)
        for r, c in enumerate(piv):
            coeff[c] = -work[r][free]
        return coeff[:3], coeff[3:]

    A, B = fit(0)
    C, D = fit(1)
    return A, B, C, D
