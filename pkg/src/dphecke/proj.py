"""Exact projective geometry over Q: the line P^1, Moebius maps, plane conics.

Points of P^1 are kept in homogeneous coordinates (a : b) so that infinity
(1 : 0) needs no special casing in any formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qlin import Q, QMat, qval, rref


class DegenerateGeometry(ValueError):
    pass


@dataclass(frozen=True)
class PPoint:
    """A point of P^1 over Q in normalized homogeneous coordinates."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = qval(self.a), qval(self.b)
        if a == 0 and b == 0:
            raise DegenerateGeometry("(0 : 0) is not a projective point")
        if b != 0:
            a, b = a / b, Q(1)
        else:
            a, b = Q(1), Q(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @staticmethod
    def of(x) -> "PPoint":
        if isinstance(x, PPoint):
            return x
        if isinstance(x, str) and x.strip() in ("inf", "oo", "infty"):
            return INF
        return PPoint(qval(x), Q(1))

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    def value(self) -> Fraction:
        if self.is_infinity:
            raise DegenerateGeometry("the point at infinity has no affine value")
        return self.a

    def __str__(self):
        if self.is_infinity:
            return "inf"
        x = self.a
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


INF = PPoint(Q(1), Q(0))


def bracket(p: PPoint, q: PPoint) -> Fraction:
    """det [p q]; zero iff the points coincide."""
    return p.a * q.b - p.b * q.a


@dataclass(frozen=True)
class Moebius:
    """A fractional-linear map of P^1, stored as a 2x2 rational matrix up to scale."""

    m: tuple  # ((a, b), (c, d))

    def __post_init__(self):
        (a, b), (c, d) = self.m
        a, b, c, d = qval(a), qval(b), qval(c), qval(d)
        if a * d - b * c == 0:
            raise DegenerateGeometry("Moebius matrix must be invertible")
        object.__setattr__(self, "m", ((a, b), (c, d)))

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.m
        return a * d - b * c

    def __call__(self, p) -> PPoint:
        p = PPoint.of(p)
        (a, b), (c, d) = self.m
        return PPoint(a * p.a + b * p.b, c * p.a + d * p.b)

    def inverse(self) -> "Moebius":
        (a, b), (c, d) = self.m
        return Moebius(((d, -b), (-c, a)))

    def compose(self, other: "Moebius") -> "Moebius":
        (a, b), (c, d) = self.m
        (e, f), (g, h) = other.m
        return Moebius(((a * e + b * g, a * f + b * h),
                        (c * e + d * g, c * f + d * h)))

    def slope_at(self, z) -> Fraction:
        """Exact derivative at an affine point; errors at the pole."""
        z = PPoint.of(z)
        (a, b), (c, d) = self.m
        if z.is_infinity:
            raise DegenerateGeometry("slope at infinity is not an affine derivative")
        den = c * z.a + d * z.b
        if den == 0:
            raise DegenerateGeometry("derivative requested at a pole")
        return self.det / den ** 2

    def fixed_of_three(self):
        return self.m


def _to_0_inf_1(p: PPoint, q: PPoint, r: PPoint) -> Moebius:
    # sends p -> 0, q -> inf, r -> 1
    if bracket(p, q) == 0 or bracket(p, r) == 0 or bracket(q, r) == 0:
        raise DegenerateGeometry("three distinct points are required")
    qr = bracket(q, r)
    pr = bracket(p, r)
    return Moebius(((qr * p.b, -qr * p.a), (pr * q.b, -pr * q.a)))


def moebius_through(sources, targets) -> Moebius:
    """The unique Moebius map with m(sources[k]) = targets[k] for k = 0, 1, 2."""
    ps = [PPoint.of(x) for x in sources]
    qs = [PPoint.of(x) for x in targets]
    if len(ps) != 3 or len(qs) != 3:
        raise DegenerateGeometry("exactly three source/target pairs are required")
    return _to_0_inf_1(*qs).inverse().compose(_to_0_inf_1(*ps))


def one_one_through(pairs) -> Moebius:
    """The Moebius map whose graph is the irreducible (1,1) curve through three points
    of P^1 x P^1; errors when no such curve exists."""
    if len(pairs) != 3:
        raise DegenerateGeometry("exactly three points are required")
    us = [PPoint.of(u) for u, _ in pairs]
    vs = [PPoint.of(v) for _, v in pairs]
    for i in range(3):
        for j in range(i + 1, 3):
            if bracket(us[i], us[j]) == 0 or bracket(vs[i], vs[j]) == 0:
                raise DegenerateGeometry("no irreducible (1,1) curve through aligned points")
    return moebius_through(us, vs)


def one_one_form(m: Moebius) -> QMat:
    """Coefficient matrix of the (1,1) form of the graph of m.

    The form is F = sum_{j,k} F[j][k] u0^j u1^(1-j) v0^k v1^(1-k); its zero
    locus on P^1 x P^1 is {(u, m(u))}.
    """
    (a, b), (c, d) = m.m
    # v*(c u + d) - (a u + b) = 0, homogenized in u = (u0:u1), v = (v0:v1)
    return QMat.from_rows((1, 0), (1, 0), [[c, -a], [d, -b]])


def form_product(f: QMat, g: QMat) -> dict:
    """Product of two (1,1) forms as a (2,2) form, keyed by (deg_u0, deg_v0)."""
    out = {(j, k): Q(0) for j in range(3) for k in range(3)}
    for j1 in (0, 1):
        for k1 in (0, 1):
            for j2 in (0, 1):
                for k2 in (0, 1):
                    out[(j1 + j2, k1 + k2)] += f.entries[1 - j1][1 - k1] * g.entries[1 - j2][1 - k2]
    return out


def biform_eval(form: dict, u: PPoint, v: PPoint, deg=(2, 2)) -> Fraction:
    du, dv = deg
    s = Q(0)
    for (j, k), c in form.items():
        s += c * u.a ** j * u.b ** (du - j) * v.a ** k * v.b ** (dv - k)
    return s


@dataclass(frozen=True)
class Conic:
    """A plane conic over Q given by a symmetric 3x3 coefficient matrix."""

    sym: tuple  # symmetric 3x3 of Fractions

    def contains(self, p: tuple) -> bool:
        return self.eval(p) == 0

    def eval(self, p: tuple) -> Fraction:
        p = tuple(qval(x) for x in p)
        return sum(self.sym[i][j] * p[i] * p[j] for i in range(3) for j in range(3))

    def is_smooth(self) -> bool:
        from .qlin import det_bareiss
        return det_bareiss(QMat.from_rows((0, 1, 2), (0, 1, 2), self.sym)) != 0


def conic_through(points) -> Conic:
    """The conic through five points of P^2; errors when not unique."""
    pts = [tuple(qval(x) for x in p) for p in points]
    if len(pts) != 5:
        raise DegenerateGeometry("exactly five points are required")
    monos = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
    rows = []
    for p in pts:
        rows.append([p[i] * p[j] if i == j else 2 * p[i] * p[j] for i, j in monos])
    work = [row[:] for row in rows]
    pivots = rref(work, 6)
    if len(pivots) != 5:
        raise DegenerateGeometry("the five points do not determine a unique conic")
    free = [c for c in range(6) if c not in pivots][0]
    coeff = [Q(0)] * 6
    coeff[free] = Q(1)
    for r, c in enumerate(pivots):
        coeff[c] = -work[r][free]
    sym = [[Q(0)] * 3 for _ in range(3)]
    for (i, j), v in zip(monos, coeff):
        if i == j:
            sym[i][i] = v
        else:
            sym[i][j] = v
            sym[j][i] = v
    return Conic(tuple(tuple(r) for r in sym))


def collinear(p: tuple, q: tuple, r: tuple) -> bool:
    p, q, r = (tuple(qval(x) for x in t) for t in (p, q, r))
    det = (p[0] * (q[1] * r[2] - q[2] * r[1])
           - p[1] * (q[0] * r[2] - q[2] * r[0])
           + p[2] * (q[0] * r[1] - q[1] * r[0]))
    return det == 0
