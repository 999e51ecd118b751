"""Stability deciders for rank-2 parabolic bundles on (P^1, 5 points).

Weights are balanced: all lower weights equal, all upper weights equal,
so after normalization a single rational q in (0,1) governs stability.
The q-line splits into four chambers with walls at 2/5, 2/3, 4/5 (even
degree) and the verdicts inside each chamber are configuration-theoretic
conditions on the five flags.  Walls are rejected: every statement we
rely on holds for interior weights only.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .proj import (DegenerateGeometry, Moebius, PPoint, bracket, collinear,
                   moebius_through, rref)
from .qlin import Q, QVec, qval

POINTED = (1, 2, 3, 4, 5)


class Chamber(enum.Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    WALL = "WALL"


WALLS_DEG0 = (Fraction(2, 5), Fraction(2, 3), Fraction(4, 5))
WALLS_DEG1 = (Fraction(1, 5), Fraction(1, 3), Fraction(3, 5))


def chamber_of(q) -> Chamber:
    """Chamber of a normalized weight difference q in (0,1); walls map to WALL."""
    q = qval(q)
    if not (0 < q < 1):
        raise ValueError(f"normalized weight must lie in (0,1): {q}")
    if q in WALLS_DEG0:
        return Chamber.WALL
    if q < Fraction(2, 5):
        return Chamber.C1
    if q < Fraction(2, 3):
        return Chamber.C2
    if q < Fraction(4, 5):
        return Chamber.C3
    return Chamber.C4


@dataclass(frozen=True)
class WeightTriple:
    """Degree plus balanced weight vectors over the five marked points."""

    d: int
    a: QVec
    b: QVec

    def __post_init__(self):
        if self.a.index != POINTED or self.b.index != POINTED:
            raise ValueError("weights must be indexed by the five marked points")
        for ai, bi in zip(self.a.entries, self.b.entries):
            if not (ai <= bi <= ai + 1):
                raise ValueError("weights must satisfy a_i <= b_i <= a_i + 1")

    def is_balanced(self) -> bool:
        return (len(set(self.a.entries)) == 1 and len(set(self.b.entries)) == 1)


def normalize_moduli(w: WeightTriple) -> Fraction:
    """Collapse a balanced moduli problem to its degree-0 normal form parameter q.

    Even degree: tensor down and shift weights, q = b - a.  Odd degree:
    additionally apply the parity shift, q = a - b + 1.
    """
    if not w.is_balanced():
        raise ValueError("normalization implemented for balanced weights only")
    a, b = w.a.entries[0], w.b.entries[0]
    if w.d % 2 == 0:
        return b - a
    return a - b + 1


@dataclass(frozen=True)
class FlagConfig0:
    """Five distinct marked points of P^1 and a flag point over each.

    Encodes a parabolic structure on the trivial rank-2 bundle: the pairs
    (p_i, f_i) are five points of P^1 x P^1 lying over distinct first
    coordinates.
    """

    points: tuple  # five PPoint, pairwise distinct
    flags: tuple   # five PPoint

    def __post_init__(self):
        pts = tuple(PPoint.of(p) for p in self.points)
        fls = tuple(PPoint.of(f) for f in self.flags)
        if len(pts) != 5 or len(fls) != 5:
            raise ValueError("five marked points and five flags are required")
        for i in range(5):
            for j in range(i + 1, 5):
                if bracket(pts[i], pts[j]) == 0:
                    raise ValueError("marked points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "flags", fls)

    def pairs(self):
        return tuple(zip(self.points, self.flags))


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    violated: str | None = None

    def __bool__(self):
        return self.stable


def on_moebius_graph(pairs) -> bool:
    """Do the given (p, f) pairs lie on the graph of a single Moebius map?

    First coordinates must be pairwise distinct.  Irreducible (1,1) curves
    on P^1 x P^1 are exactly such graphs.
    """
    pairs = [(PPoint.of(p), PPoint.of(f)) for p, f in pairs]
    if len(pairs) < 3:
        return True
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if bracket(pairs[i][1], pairs[j][1]) == 0:
                return False
    m = moebius_through([p for p, _ in pairs[:3]], [f for _, f in pairs[:3]])
    return all(bracket(m(p), f) == 0 for p, f in pairs[3:])


def _coincidence_classes(flags):
    classes = []
    for i, f in enumerate(flags):
        for cls in classes:
            if bracket(flags[cls[0]], f) == 0:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def max_flag_coincidence(cfg: FlagConfig0) -> int:
    return max(len(c) for c in _coincidence_classes(cfg.flags))


def is_stable_deg0_k0(cfg: FlagConfig0, q) -> StabilityVerdict:
    """Stability of (O + O, flags) at balanced weights (0, q); interior q only."""
    ch = chamber_of(q)
    if ch is Chamber.WALL:
        raise ValueError("stability is only decided for q in a chamber interior")
    if max_flag_coincidence(cfg) >= 3:
        return StabilityVerdict(False, "three or more flags coincide")
    if ch is Chamber.C1:
        return StabilityVerdict(True)
    if ch is Chamber.C2:
        if on_moebius_graph(cfg.pairs()):
            return StabilityVerdict(False, "all five flag points lie on one (1,1) curve")
        return StabilityVerdict(True)
    if ch is Chamber.C3:
        for sub in itertools.combinations(cfg.pairs(), 4):
            if on_moebius_graph(sub):
                return StabilityVerdict(False, "four flag points lie on one (1,1) curve")
        return StabilityVerdict(True)
    return StabilityVerdict(False, "no stable configuration on the trivial bundle in this chamber")


# ---------------------------------------------------------------------------
# degree-0 stability on O(-1) + O(1)
#
# The flags live on the Hirzebruch surface F_2 = P(O + O(2)).  We encode a
# flag either as the distinguished point on the (-2)-section, or by its
# affine coordinate in the fiber of O(2) at the marked point.  "Five flags
# on a member of |O_V(1) (x) O_C(1)|" then means the affine coordinates are
# simultaneously interpolated by one quadratic polynomial in the marked
# points.  These predicates mirror the degree-1 table under the parity
# shift; there is no independent direct test for this stratum at degree 0.
# ---------------------------------------------------------------------------

ON_MINUS_TWO = "minus-two-section"


@dataclass(frozen=True)
class Deg0K1Config:
    points: tuple  # five distinct PPoint (affine; infinity allowed)
    flags: tuple   # each either ON_MINUS_TWO or a rational affine fiber coordinate

    def __post_init__(self):
        pts = tuple(PPoint.of(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        fl = tuple(f if f == ON_MINUS_TWO else qval(f) for f in self.flags)
        object.__setattr__(self, "flags", fl)


def _on_quadratic_graph(points, values) -> bool:
    # do the affine samples (p_i, z_i) lie on z = g(p) for one quadratic g?
    rows = []
    for p, z in zip(points, values):
        if p.is_infinity:
            raise DegenerateGeometry("quadratic interpolation needs affine points here")
        rows.append([Q(1), p.a, p.a ** 2, qval(z)])
    work = [r[:] for r in rows]
    piv = rref(work, 3)
    for row in work:
        if all(e == 0 for e in row[:3]) and row[3] != 0:
            return False
    return True


def is_stable_deg0_k1(cfg: Deg0K1Config, q) -> StabilityVerdict:
    ch = chamber_of(q)
    if ch is Chamber.WALL:
        raise ValueError("stability is only decided for q in a chamber interior")
    n_on = sum(1 for f in cfg.flags if f == ON_MINUS_TWO)
    if ch is Chamber.C1:
        return StabilityVerdict(False, "no stable configuration on this bundle in the first chamber")
    if ch is Chamber.C2:
        if n_on > 0:
            return StabilityVerdict(False, "a flag lies on the (-2) section")
        if _on_quadratic_graph(cfg.points, cfg.flags):
            return StabilityVerdict(False, "all five flags lie on one unisecant curve")
        return StabilityVerdict(True)
    if ch is Chamber.C3:
        if n_on > 1:
            return StabilityVerdict(False, "two flags lie on the (-2) section")
        affine = [(p, f) for p, f in zip(cfg.points, cfg.flags) if f != ON_MINUS_TWO]
        for sub in itertools.combinations(affine, 4):
            if _on_quadratic_graph([p for p, _ in sub], [f for _, f in sub]):
                return StabilityVerdict(False, "four flags lie on one unisecant curve")
        return StabilityVerdict(True)
    return StabilityVerdict(False, "no stable configuration in the last chamber")


# ---------------------------------------------------------------------------
# degree-1 stability in the plane model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlagConfig1:
    """Base point of P^2, five distinct lines through it, a flag on each line.

    Points of P^2 are homogeneous rational triples; lines are given by the
    second point spanning them together with the base point.
    """

    base: tuple
    line_dirs: tuple  # five points, each distinct from base, spanning the lines
    flags: tuple      # five points, flag i on the line through base and line_dirs[i]

    def __post_init__(self):
        base = tuple(qval(x) for x in self.base)
        dirs = tuple(tuple(qval(x) for x in d) for d in self.line_dirs)
        flags = tuple(tuple(qval(x) for x in f) for f in self.flags)
        if len(dirs) != 5 or len(flags) != 5:
            raise ValueError("five lines and five flags are required")
        for d in dirs:
            if _proj_eq(base, d):
                raise ValueError("line directions must differ from the base point")
        for i in range(5):
            for j in range(i + 1, 5):
                if collinear(base, dirs[i], dirs[j]):
                    raise ValueError("the five lines must be pairwise distinct")
        for d, f in zip(dirs, flags):
            if not collinear(base, d, f):
                raise ValueError("each flag must lie on its line")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "line_dirs", dirs)
        object.__setattr__(self, "flags", flags)


def _proj_eq(p: tuple, q: tuple) -> bool:
    return (p[0] * q[1] - p[1] * q[0] == 0 and
            p[0] * q[2] - p[2] * q[0] == 0 and
            p[1] * q[2] - p[2] * q[1] == 0)


def _max_collinear(points) -> int:
    best = min(2, len(points))
    for k in range(len(points), 2, -1):
        for sub in itertools.combinations(points, k):
            if all(collinear(sub[0], sub[1], r) for r in sub[2:]):
                return k
    return best


def _five_on_smooth_conic_through(base, flags) -> bool:
    pts = [base] + list(flags)
    monos = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
    rows = []
    for p in pts:
        rows.append([p[i] * p[j] if i == j else 2 * p[i] * p[j] for i, j in monos])
    work = [r[:] for r in rows]
    pivots = rref(work, 6)
    ndim = 6 - len(pivots)
    if ndim == 0:
        return False
    free = [c for c in range(6) if c not in pivots]
    basis = []
    for fcol in free:
        coeff = [Q(0)] * 6
        coeff[fcol] = Q(1)
        for r, c in enumerate(pivots):
            coeff[c] = -work[r][fcol]
        basis.append(coeff)

    def smooth(coeff):
        sym = [[Q(0)] * 3 for _ in range(3)]
        for (i, j), v in zip(monos, coeff):
            sym[i][j] = v
            sym[j][i] = v
        a, b, c = sym[0], sym[1], sym[2]
        det = (a[0] * (b[1] * c[2] - b[2] * c[1])
               - a[1] * (b[0] * c[2] - b[2] * c[0])
               + a[2] * (b[0] * c[1] - b[1] * c[0]))
        return det != 0

    # det is a cubic along any pencil inside the family, so a handful of
    # exact samples decides whether a smooth member exists
    samples = [basis[0]]
    for extra in basis[1:]:
        samples += [[x + t * y for x, y in zip(basis[0], extra)] for t in (1, 2, 3, 5)]
        samples.append(extra)
    return any(smooth(s) for s in samples)


def is_stable_deg1(cfg: FlagConfig1, q) -> StabilityVerdict:
    """Stability for determinant-degree-1 bundles, via the plane model."""
    q = qval(q)
    if not (0 < q < 1):
        raise ValueError(f"normalized weight must lie in (0,1): {q}")
    if q in WALLS_DEG1:
        raise ValueError("stability is only decided for q in a chamber interior")
    at_base = sum(1 for f in cfg.flags if _proj_eq(f, cfg.base))
    if q < Fraction(1, 5):
        return StabilityVerdict(False, "the moduli space is empty in this chamber")
    if q < Fraction(1, 3):
        if at_base > 0:
            return StabilityVerdict(False, "a flag coincides with the base point")
        if _max_collinear(cfg.flags) >= 5:
            return StabilityVerdict(False, "all five flags are collinear")
        return StabilityVerdict(True)
    if at_base > 1:
        return StabilityVerdict(False, "two flags coincide with the base point")
    if _max_collinear(cfg.flags) >= 4:
        return StabilityVerdict(False, "four flags are collinear")
    if q < Fraction(3, 5):
        return StabilityVerdict(True)
    if _five_on_smooth_conic_through(cfg.base, cfg.flags):
        return StabilityVerdict(False, "all five flags lie on a smooth conic through the base point")
    return StabilityVerdict(True)


# ---------------------------------------------------------------------------
# wobbly witnesses
# ---------------------------------------------------------------------------


def _lin_form(p: PPoint):
    # homogeneous linear form vanishing at p, coefficients [t-coeff? s^k]
    return [-p.a, p.b]  # value at (s,t): p.b * s - p.a * t


def _poly_mul(f, g):
    out = [Q(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _poly_eval_h(f, p: PPoint):
    d = len(f) - 1
    return sum(c * p.a ** k * p.b ** (d - k) for k, c in enumerate(f))


@dataclass(frozen=True)
class WobblyWitness:
    kind: str                 # "nilpotent-field" | "four-on-graph" | "very-stable-candidate"
    flag: PPoint | None = None
    pair: tuple | None = None
    cubic: tuple | None = None       # coefficients of a, vanishing at the other 3 points
    theta: tuple | None = None       # 2x2 matrix of homogeneous cubic coefficient lists

    def verify(self, cfg: FlagConfig0) -> bool:
        if self.kind != "nilpotent-field":
            return True
        th = self.theta
        if all(all(c == 0 for c in e) for row in th for e in row):
            return False
        # theta^2 = 0 as a matrix of polynomials
        for i in range(2):
            for j in range(2):
                acc = [Q(0)] * (2 * len(self.cubic) - 1)
                for k in range(2):
                    prod = _poly_mul(th[i][k], th[k][j])
                    acc = [x + y for x, y in zip(acc, prod)]
                if any(c != 0 for c in acc):
                    return False
        # the flag must be preserved at every point where the cubic is nonzero
        for p, f in cfg.pairs():
            if _poly_eval_h(self.cubic, p) != 0 and bracket(f, self.flag) != 0:
                return False
        return True


def wobbly_witness(cfg: FlagConfig0, q=Fraction(1, 2)) -> WobblyWitness:
    """Search for a nonzero nilpotent Higgs field on a stable configuration.

    Two flags agreeing at distinct marked points give an explicit field: the
    constant nilpotent matrix with the common flag as kernel, scaled by the
    cubic vanishing at the other three points.  Four flag points on one
    Moebius graph mark the other wobbly stratum; such a configuration is
    wobbly but the field lives on a different bundle model, so only a tag is
    returned.  Everything else is a very stable candidate.
    """
    verdict = is_stable_deg0_k0(cfg, q)
    if not verdict.stable:
        raise ValueError(f"wobbly witnesses need a stable configuration: {verdict.violated}")
    classes = _coincidence_classes(cfg.flags)
    pair = next((tuple(c[:2]) for c in classes if len(c) >= 2), None)
    if pair is not None:
        i, j = pair
        flag = cfg.flags[i]
        b, c = flag.a, flag.b
        others = [cfg.points[k] for k in range(5) if k not in pair]
        cubic = [Q(1)]
        for p in others:
            cubic = _poly_mul(cubic, _lin_form(p))
        nil = ((b * c, -b * b), (c * c, -b * c))
        theta = tuple(tuple(tuple(coef * e for coef in cubic) for e in row) for row in nil)
        return WobblyWitness("nilpotent-field", flag=flag, pair=pair,
                             cubic=tuple(cubic), theta=theta)
    for sub in itertools.combinations(cfg.pairs(), 4):
        if on_moebius_graph(sub):
            return WobblyWitness("four-on-graph")
    return WobblyWitness("very-stable-candidate")
