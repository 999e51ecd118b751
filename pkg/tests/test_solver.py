from fractions import Fraction as F

import pytest

from dphecke import divisors
from dphecke.chern import parch, parch_conditions
from dphecke.lines import EVEN_LABELS, IMAT, POINTS, SIGMA, eigen_project
from dphecke.qlin import QMat, QVec
from dphecke.sampling import RationalSampler
from dphecke.solver import (ConstraintError, ParamSet, chern_family_sample,
                            default_choices, hecke_integrality_check,
                            kernel_vanishing_solve, neighbor_sum, pipeline,
                            scalar_condition_audit, stated_solution_audit,
                            thm14_audit, weight_inhomogeneity)

A_THIRDS = QVec(POINTS, (F(1, 2), F(1, 2), F(1, 2), F(1, 3), F(1, 3)))
B_THIRDS = QVec(POINTS, (F(1, 2), F(1, 2), F(1, 2), F(-1, 3), F(-1, 3)))
A_HALVES = QVec(POINTS, (F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(-1, 2)))

Z16 = QVec.zero(EVEN_LABELS)
Z5 = QVec.zero(POINTS)


def test_family_base_point():
    e, d, projected = chern_family_sample(Z16, Z16)
    assert e == F(5, 8) * SIGMA
    assert d == F(1, 8) * SIGMA
    assert not projected


def test_family_random_members_satisfy_conditions():
    smp = RationalSampler(12)
    for _ in range(25):
        e, d, _ = chern_family_sample(smp.vector16(-3, 3), smp.vector16(-3, 3))
        assert parch_conditions(e, d) == (True, True)
        assert parch(e, d).vanishes()


def test_family_projection_report():
    v = QVec.unit(EVEN_LABELS, ())
    _, _, projected = chern_family_sample(v, Z16)
    assert projected  # a unit vector is not an eigenvector
    assert eigen_project(eigen_project(v, 0), -4).is_zero()


def test_neighbor_sum_matches_adjacency():
    smp = RationalSampler(14)
    B = smp.vector16(-5, 5).floor()
    ns = neighbor_sum(B)
    from dphecke.lines import neighbors
    for pos, I in enumerate(EVEN_LABELS):
        expected = sum((B[J] for J in neighbors(I)), F(0))
        assert ns.entries[pos] == expected


def test_integrality_report_on_simple_data():
    d = F(1, 8) * SIGMA
    e = F(5, 8) * SIGMA
    A = 2 * QVec.unit(EVEN_LABELS, ())
    B = -2 * QVec.unit(EVEN_LABELS, ())
    C = A + (IMAT + QMat.identity(EVEN_LABELS)) @ B
    ps = ParamSet(a=Z5, b=Z5, e=e, d=d, lp=A - d, lq=B + d, llc=C + e - d,
                  r1=Z5, r2=Z5, A=A, B=B, C=C, n1=Z5, n2=Z5)
    rep = hecke_integrality_check(ps)
    assert rep.A_integral and rep.B_integral and rep.C_integral
    assert rep.A_sum_is_2 and rep.B_sum_is_minus_2
    assert rep.C_matches_neighbor_rule
    # lp + d = A integral, lp + e = A + (e - d) with e - d = sigma/2 non-integral
    assert rep.alternative == "ALT_II"


def test_alternative_one_flag():
    # lp = -d = -e makes both lp + d and lp + e integral
    d = Z16
    e = Z16
    assert divisors.alternative_classify(Z16, d, e) == "ALT_I"


def test_kernel_solve_worked_weights():
    n1 = Z5
    n2 = -1 * (A_THIRDS + B_THIRDS)
    w = weight_inhomogeneity(A_THIRDS + n1, B_THIRDS + n2)
    A = 2 * QVec.unit(EVEN_LABELS, ())
    # choose B compatible with the system so that it is consistent
    B = -1 * A + F(1, 2) * eigen_project(w, -4)
    res = kernel_vanishing_solve(A_THIRDS, B_THIRDS, n1, n2, A, B)
    assert res.scalar_condition_ok and res.w_in_image
    assert res.solutions.consistent
    assert res.solutions.dim == 10
    # every solution has sigma-component sigma/8
    smp = RationalSampler(19)
    for _ in range(5):
        d = res.solutions.sample([smp.rational(-3, 3) for _ in range(10)])
        assert eigen_project(d, 4) == F(1, 8) * SIGMA
    # solutions are closed under adding zero-eigenvectors
    d0 = res.solutions.particular
    k = eigen_project(smp.vector16(-4, 4), 0)
    lhs = IMAT @ (A - (d0 + k)) + w
    assert lhs.is_zero()


def test_kernel_solve_incompatible_choice():
    n1 = Z5
    n2 = -1 * (A_THIRDS + B_THIRDS)
    A = 2 * QVec.unit(EVEN_LABELS, ())
    B = -1 * A  # wrong minus-four component
    res = kernel_vanishing_solve(A_THIRDS, B_THIRDS, n1, n2, A, B)
    assert not res.solutions.consistent


def test_kernel_solve_scalar_violation():
    res = kernel_vanishing_solve(A_THIRDS, B_THIRDS, Z5, Z5,
                                 2 * QVec.unit(EVEN_LABELS, ()),
                                 -2 * QVec.unit(EVEN_LABELS, ()))
    assert not res.scalar_condition_ok
    assert not res.solutions.consistent


def test_scalar_solvability_is_automatic():
    # sigma . w = 8 sum(r1 + r2): the column sums of both incidence blocks are 8
    smp = RationalSampler(21)
    for _ in range(20):
        r1 = smp.vector5(-5, 5)
        r2 = -1 * r1
        w = weight_inhomogeneity(r1, r2)
        assert w.dot(SIGMA) == 0
        assert eigen_project(w, 0).is_zero()


def test_pipeline_worked_weights_certificate():
    res = pipeline(A_THIRDS, B_THIRDS)
    cert = res.certificate
    assert cert["chern-linear"] and cert["chern-quadratic"]
    assert cert["kernel-class-zero"]
    # the level-shift integralities are genuinely obstructed for these weights
    assert not cert["hecke-integrality"]
    assert not cert["hecke-divisorial-zero"]
    assert res.params.integrality()["A"]
    assert not res.params.integrality()["B"]
    assert res.kernel.solutions.dim == 10


def test_pipeline_feasible_weights_all_green():
    res = pipeline(A_HALVES, A_HALVES)
    assert res.all_green()
    assert all(res.params.integrality().values())
    rep = hecke_integrality_check(res.params)
    assert rep.all_ok()


def test_pipeline_d10_override():
    smp = RationalSampler(30)
    d10 = eigen_project(smp.vector16(-2, 2), 0)
    res = pipeline(A_HALVES, A_HALVES, d10=d10)
    assert eigen_project(res.params.d, 0) == d10
    assert res.certificate["kernel-class-zero"]


def test_pipeline_rejects_bad_choices():
    with pytest.raises(ConstraintError):
        pipeline(A_THIRDS, Z5)  # weights do not sum to 3
    with pytest.raises(ConstraintError):
        pipeline(A_THIRDS, B_THIRDS, A=QVec.unit(EVEN_LABELS, ()))  # A sum is 1
    with pytest.raises(ConstraintError):
        pipeline(A_THIRDS, B_THIRDS, n1=Z5, n2=Z5)  # shift sum is 0


def test_pipeline_sl2_gate():
    a = QVec(POINTS, (F(3, 10),) * 5)
    with pytest.raises(ConstraintError):
        pipeline(a, a, require_sl2=True)


def test_default_choices_structure():
    ch = default_choices(A_THIRDS, B_THIRDS)
    assert ch["n1"].is_zero()
    assert ch["n2"] == -1 * (A_THIRDS + B_THIRDS)
    assert ch["A"].dot(SIGMA) == 2
    assert (ch["n1"] + ch["n2"]).total() == -3


def test_thm14_audit():
    # integral fractional parts reduce the formulas to the base point: passes
    ints = QVec(POINTS, (1, 1, 1, 0, 0))
    rep = thm14_audit(ints, ints)
    assert not rep.discrepant
    assert rep.residuals["e"] == F(5, 8) * SIGMA
    assert rep.residuals["d"] == F(1, 8) * SIGMA
    # generic weights: the closed-form residual formula is reproduced exactly
    rep2 = thm14_audit(A_THIRDS, B_THIRDS)
    assert rep2.discrepant
    assert rep2.residuals["linear_closed_form_check"]
    # determinism
    rep3 = thm14_audit(A_THIRDS, B_THIRDS)
    assert rep3.residuals["linear"] == rep2.residuals["linear"]


def test_stated_solution_audit():
    ch = default_choices(A_THIRDS, B_THIRDS)
    rep = stated_solution_audit(A_THIRDS, B_THIRDS, ch["n1"], ch["n2"], ch["A"])
    assert rep.discrepant
    gap = rep.residuals["eigensum_gap"]
    w5 = eigen_project(weight_inhomogeneity(A_THIRDS, -1 * A_THIRDS), -4)
    assert gap == F(-1, 4) * w5


def test_scalar_condition_audit():
    ch = default_choices(A_THIRDS, B_THIRDS)
    rep = scalar_condition_audit(ch["n1"], ch["n2"])
    assert rep.discrepant
    assert rep.residuals["enforced_sum"] == -3
    assert rep.residuals["variant_sum"] == -3  # not the printed +3


def test_curve_orthogonality_equals_solver_equations():
    # the 49-row pairing system and the assembled constraint equations agree
    res = pipeline(A_HALVES, A_HALVES)
    ps = res.params
    pairings = divisors.curve_pairings(ps.kernel_class())
    w = weight_inhomogeneity(ps.r1, ps.r2)
    eq1 = IMAT @ ps.lp + w
    eq2 = IMAT @ ps.lq + w
    for pos, (kind, lab) in enumerate(divisors.CURVES_INDEX):
        if kind == "Lxpt":
            assert pairings.entries[pos] == eq1[lab]
        elif kind == "ptxL":
            assert pairings.entries[pos] == eq2[lab]
        elif kind == "Dhat":
            assert pairings.entries[pos] == (ps.r1 + ps.r2).total()
