"""Solve and cross-audit the full constraint system for the eigensheaf weights.

The ground truth is the reduced linear system probed by the 49 spanning
curves together with the two vanishing conditions on the averaged Chern
data.  The prose solutions of the source derivation carry transcription
inconsistencies (a factor of two in the eigencomponent sum, a sign in a
scalar condition, an extra factor on one incidence term); those variants
are substituted and reported by audits without being trusted anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import divisors
from .chern import parch, parch_conditions
from .lines import (EVEN_LABELS, IMAT, POINTS, SIGMA, delta_matrix,
                    eigen_project, ones_16x5)
from .qlin import (AffineSolutionSet, Q, QMat, QVec, solve_integer,
                   solve_linear)

DELTA = delta_matrix()
ONES165 = ones_16x5()
IDENT16 = QMat.identity(EVEN_LABELS)


class ConstraintError(ValueError):
    """Raised by the pipeline with the first failed constraint named."""


def weight_inhomogeneity(r1: QVec, r2: QVec) -> QVec:
    """The 16-vector (1 - delta) r1 + delta r2 entering every curve condition."""
    return (ONES165 - DELTA) @ r1 + DELTA @ r2


@dataclass(frozen=True)
class ParamSet:
    """Full solution record with integrality annotations.

    The derived fields satisfy lp = A - d, lq = B + d, llc = C + e - d,
    r1 = a + n1, r2 = b + n2 by construction.
    """

    a: QVec
    b: QVec
    e: QVec
    d: QVec
    lp: QVec
    lq: QVec
    llc: QVec
    r1: QVec
    r2: QVec
    A: QVec
    B: QVec
    C: QVec
    n1: QVec
    n2: QVec

    def __post_init__(self):
        assert self.lp == self.A - self.d
        assert self.lq == self.B + self.d
        assert self.llc == self.C + self.e - self.d
        assert self.r1 == self.a + self.n1
        assert self.r2 == self.b + self.n2

    def integrality(self) -> dict:
        return {
            "A": self.A.is_integral(),
            "B": self.B.is_integral(),
            "C": self.C.is_integral(),
            "n1": self.n1.is_integral(),
            "n2": self.n2.is_integral(),
        }

    def kernel_class(self) -> QVec:
        return divisors.pic_h_class(self.lp, self.lq, self.llc, self.r1, self.r2)


@dataclass(frozen=True)
class ChernFamily:
    """The two free eigencomponents of the level-offset solution family."""

    d5: QVec
    d10: QVec

    @property
    def d(self) -> QVec:
        return Fraction(1, 8) * SIGMA + self.d5 + self.d10

    @property
    def e(self) -> QVec:
        return self.d10 - 3 * self.d5 + Fraction(5, 8) * SIGMA


def chern_family_sample(d5: QVec, d10: QVec):
    """A member of the solution family of the two Chern conditions.

    Inputs are projected onto the correct eigenspaces when necessary and
    the projection is reported.  The output always satisfies both vanishing
    conditions; this is asserted.
    """
    p5 = eigen_project(d5, -4)
    p10 = eigen_project(d10, 0)
    projected = (p5 != d5) or (p10 != d10)
    fam = ChernFamily(p5, p10)
    ok_lin, ok_quad = parch_conditions(fam.e, fam.d)
    if not (ok_lin and ok_quad):
        raise AssertionError("family member violates the Chern vanishing conditions")
    return fam.e, fam.d, projected


def neighbor_sum(v: QVec) -> QVec:
    """For each label, the sum of v over the five adjacent labels."""
    return (IMAT + IDENT16) @ v


@dataclass(frozen=True)
class HeckeIntegralityReport:
    A_integral: bool
    B_integral: bool
    C_integral: bool
    n1_integral: bool
    n2_integral: bool
    A_sum_is_2: bool
    B_sum_is_minus_2: bool
    C_matches_neighbor_rule: bool
    alternative: str

    def all_ok(self) -> bool:
        return (self.A_integral and self.B_integral and self.C_integral
                and self.n1_integral and self.n2_integral
                and self.A_sum_is_2 and self.B_sum_is_minus_2
                and self.C_matches_neighbor_rule and self.alternative == "ALT_II")


def hecke_integrality_check(ps: ParamSet) -> HeckeIntegralityReport:
    """Per-condition booleans of the integrality half of the Hecke condition.

    The neighbor-sum form of the C rule is recomputed both as A + (II + 1)B
    and as the literal sum over adjacent labels; the diagonal of II + 1 is
    zero so they agree, and this is verified rather than assumed.
    """
    c_matrix_form = ps.A + (IMAT + IDENT16) @ ps.B
    c_neighbors = ps.A + neighbor_sum(ps.B)
    if c_matrix_form != c_neighbors:
        raise AssertionError("the two forms of the neighbor rule disagree")
    return HeckeIntegralityReport(
        A_integral=ps.A.is_integral(),
        B_integral=ps.B.is_integral(),
        C_integral=ps.C.is_integral(),
        n1_integral=ps.n1.is_integral(),
        n2_integral=ps.n2.is_integral(),
        A_sum_is_2=ps.A.dot(SIGMA) == 2,
        B_sum_is_minus_2=ps.B.dot(SIGMA) == -2,
        C_matches_neighbor_rule=ps.C == c_matrix_form,
        alternative=divisors.alternative_classify(ps.lp, ps.d, ps.e),
    )


@dataclass(frozen=True)
class KernelSolveResult:
    solutions: AffineSolutionSet
    inhomogeneity: QVec
    w_in_image: bool
    scalar_condition_ok: bool


def kernel_vanishing_solve(a: QVec, b: QVec, n1: QVec, n2: QVec,
                           A: QVec, B: QVec) -> KernelSolveResult:
    """Exact solution set in the level offset d of the curve-orthogonality system.

    The system stacks II d = II A + w and II d = -II B - w, where w is the
    weight inhomogeneity.  Solvability needs w in the image of II (checked
    exactly: the zero-eigencomponent of w must vanish) and compatibility of
    the two right-hand sides; when consistent, the freedom in d is exactly
    the ten-dimensional kernel of II.
    """
    r1, r2 = a + n1, b + n2
    scalar_ok = (r1 + r2).total() == 0
    w = weight_inhomogeneity(r1, r2)
    w_in_image = eigen_project(w, 0).is_zero()
    rows_index = tuple(("eq1", I) for I in EVEN_LABELS) + tuple(("eq2", I) for I in EVEN_LABELS)
    stacked = QMat.from_rows(rows_index, EVEN_LABELS,
                             [list(r) for r in IMAT.entries] + [list(r) for r in IMAT.entries])
    rhs1 = IMAT @ A + w
    rhs2 = -1 * (IMAT @ B) - w
    rhs = QVec(rows_index, rhs1.entries + rhs2.entries)
    if not scalar_ok:
        return KernelSolveResult(AffineSolutionSet(False, None, ()), w, w_in_image, False)
    return KernelSolveResult(solve_linear(stacked, rhs), w, w_in_image, True)


def default_choices(a: QVec, b: QVec) -> dict:
    """Free data defaults: n1 = 0, n2 = -(a+b), the minimal integral lift of A,
    an exact companion B, and no zero-eigenspace offset."""
    n2 = -1 * (a + b)
    A = QVec.unit(EVEN_LABELS, EVEN_LABELS[0]) * 2
    return {"n1": QVec.zero(POINTS), "n2": n2, "A": A, "B": None,
            "d10": QVec.zero(EVEN_LABELS)}


def companion_B(A: QVec, w: QVec) -> tuple:
    """A vector B making the kernel system consistent: II(A + B) = -2w.

    Prefers an integral B (solved over the integers when the data allows);
    otherwise returns the rational solution -A + w/2 + zero-eigenspace
    correction-free choice.  Returns (B, was_integral_solve).
    """
    target = -2 * w
    if target.is_integral() and A.is_integral():
        rows = [list(r) for r in IMAT.entries] + [list(SIGMA.entries)]
        idx = tuple(("row", I) for I in EVEN_LABELS) + (("sum", 0),)
        m = QMat.from_rows(idx, EVEN_LABELS, rows)
        rhs = QVec(idx, tuple(target.entries) + (Q(0),))
        sol = solve_integer(m, rhs)
        if sol is not None:
            return sol - A, True
    return -1 * A + Fraction(1, 2) * w, False


@dataclass(frozen=True)
class PipelineResult:
    params: ParamSet
    certificate: dict
    kernel: KernelSolveResult

    def all_green(self) -> bool:
        return all(self.certificate.values())


def pipeline(a: QVec, b: QVec, n1=None, n2=None, A=None, B=None, d10=None,
             require_sl2: bool = False) -> PipelineResult:
    """Assemble a full ParamSet from weights plus free choices, then verify it.

    The certificate records: both Chern vanishing conditions, the full
    integrality report, orthogonality of the kernel class to all 49 curves,
    and vanishing of the divisorial Hecke class in the relation quotient at
    the representative level.  No silent repair happens: infeasible inputs
    raise with the first failed constraint named, and certificate entries
    that fail honestly stay false.
    """
    if (a + b).total() != 3:
        raise ConstraintError("weights must satisfy sum(a + b) = 3")
    if require_sl2 and not (a + b).is_integral():
        raise ConstraintError("the SL2 normalization needs a + b integral")
    defaults = default_choices(a, b)
    n1 = defaults["n1"] if n1 is None else n1
    n2 = defaults["n2"] if n2 is None else n2
    d10 = defaults["d10"] if d10 is None else eigen_project(d10, 0)
    if not n1.is_integral() or not n2.is_integral():
        raise ConstraintError("n1 and n2 must be integral")
    if (n1 + n2).total() != -3:
        raise ConstraintError("the choices must satisfy sum(n1 + n2) = -3")
    A = defaults["A"] if A is None else A
    if A.dot(SIGMA) != 2:
        raise ConstraintError("A must satisfy A . sigma = 2")
    r1, r2 = a + n1, b + n2
    w = weight_inhomogeneity(r1, r2)
    b_was_integral = None
    if B is None:
        B, b_was_integral = companion_B(A, w)
    if B.dot(SIGMA) != -2:
        raise ConstraintError("B must satisfy B . sigma = -2")
    kernel = kernel_vanishing_solve(a, b, n1, n2, A, B)
    if not kernel.solutions.consistent:
        raise ConstraintError(
            "kernel system inconsistent: the minus-four eigencomponent of A + B "
            "must equal half that of the weight inhomogeneity")
    dpart = kernel.solutions.particular
    d = (eigen_project(dpart, 4) + eigen_project(dpart, -4) + d10)
    e = d + IMAT @ d
    lp = A - d
    lq = B + d
    C = A + (IMAT + IDENT16) @ B
    llc = C + e - d
    ps = ParamSet(a=a, b=b, e=e, d=d, lp=lp, lq=lq, llc=llc,
                  r1=r1, r2=r2, A=A, B=B, C=C, n1=n1, n2=n2)
    ok_lin, ok_quad = parch_conditions(e, d)
    integrality = hecke_integrality_check(ps)
    kernel_zero = divisors.orthogonal_to_all_curves(ps.kernel_class())
    rep_class = divisors.hecke_divisor_class(
        lp, lq, llc, e, d, r1, r2, a, b, T=-1 * d, t=QVec.zero(POINTS))
    certificate = {
        "chern-linear": ok_lin,
        "chern-quadratic": ok_quad,
        "hecke-integrality": integrality.all_ok(),
        "kernel-class-zero": kernel_zero,
        "hecke-divisorial-zero": divisors.quotient_is_zero(rep_class),
    }
    return PipelineResult(ps, certificate, kernel)


# ---------------------------------------------------------------------------
# audits of the prose solutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    name: str
    discrepant: bool
    residuals: dict


def thm14_audit(a: QVec, b: QVec) -> AuditReport:
    """Substitute the headline closed-form weights and report their residuals.

    The formulas e = 5/8 sigma - 3/8 (1-delta)(a - floor a) + 3/2 delta (b -
    floor b) and d = 1/8 sigma - 1/8 (...) + 1/2 delta (...) are evaluated
    and tested against both vanishing conditions.  No side is declared
    correct: the report carries the exact residuals.
    """
    abar = a - a.floor()
    bbar = b - b.floor()
    e = (Fraction(5, 8) * SIGMA - Fraction(3, 8) * ((ONES165 - DELTA) @ abar)
         + Fraction(3, 2) * (DELTA @ bbar))
    d = (Fraction(1, 8) * SIGMA - Fraction(1, 8) * ((ONES165 - DELTA) @ abar)
         + Fraction(1, 2) * (DELTA @ bbar))
    res_linear = IMAT @ (e + 3 * d - SIGMA)
    expected = -3 * (DELTA @ abar) + 12 * ((ONES165 - DELTA) @ bbar)
    ok_lin, ok_quad = parch_conditions(e, d)
    return AuditReport(
        name="headline-weight-formulas",
        discrepant=not (ok_lin and ok_quad),
        residuals={
            "linear": res_linear,
            "linear_closed_form_check": res_linear == expected,
            "linear_ok": ok_lin,
            "quadratic_ok": ok_quad,
            "e": e,
            "d": d,
        },
    )


def stated_solution_audit(a: QVec, b: QVec, n1: QVec, n2: QVec, A: QVec) -> AuditReport:
    """Substitute the prose 'general solution' of the curve system and report.

    That text pins the minus-four eigencomponent of A + B to a quarter of
    the weight inhomogeneity and the level offset to half of A + B; exact
    elimination forces half, respectively half the difference.  Residuals
    of both kernel equation blocks under the stated reading are returned.
    """
    r1, r2 = a + n1, b + n2
    w = weight_inhomogeneity(r1, r2)
    w5 = eigen_project(w, -4)
    stated_sum = Fraction(1, 4) * w5
    required_sum = Fraction(1, 2) * w5
    d_stated = Fraction(1, 8) * SIGMA + Fraction(1, 2) * stated_sum
    # B with the stated eigencomponent sum, B . sigma = -2, and no
    # zero-eigenspace part beyond the one forced by A
    B_stated = (Fraction(-1, 8) * SIGMA
                + (stated_sum - eigen_project(A, -4))
                - eigen_project(A, 0))
    res1 = IMAT @ (A - d_stated) + w
    res2 = IMAT @ (B_stated + d_stated) + w
    return AuditReport(
        name="stated-general-solution",
        discrepant=not (res1.is_zero() and res2.is_zero()),
        residuals={
            "eigensum_gap": stated_sum - required_sum,
            "eq1": res1,
            "eq2": res2,
        },
    )


def scalar_condition_audit(n1: QVec, n2: QVec) -> AuditReport:
    """The two printed scalar conditions on the integer shifts disagree in sign.

    We enforce sum(n1 + n2) = -3 throughout; the variant sum(n2 - n1) = 3 is
    evaluated here and reported.
    """
    enforced = (n1 + n2).total()
    variant = (n2 - n1).total()
    return AuditReport(
        name="scalar-shift-condition",
        discrepant=(enforced == -3) and (variant != 3),
        residuals={
            "enforced_sum": enforced,
            "variant_sum": variant,
            "variant_holds": variant == 3,
        },
    )
