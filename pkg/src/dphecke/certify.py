"""The verify-all certificate: every machine-checkable identity in one report.

Each check has a stable identifier listed in the registry below, runs
deterministically from a seed, and reports PASS, FAIL, or
AUDIT-DISCREPANCY.  The last status is reserved for the three documented
internal inconsistencies of the source derivation, which the audits
reproduce on purpose; they do not fail a run.  A FAIL carries an exact
residual or counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import divisors, heckelines, okamoto, solver, stability
from .chern import (ch_F, ch_F_grr, cube_moment, eq_TIT, eq_a2, eq_eminussigma,
                    integral_TIT, integral_TIT_unit_cube, integral_e2_half,
                    integral_eminussigma_IT, parch, parch_conditions)
from .lines import (EVEN_LABELS, IMAT, PIC_INDEX, POINTS, SIGMA, canonical_class,
                    line_class, pic_pair)
from .proj import PPoint
from .qlin import Q, QVec, char_poly_on, qstr
from .sampling import RationalSampler

# stable check identifiers and what each one certifies
REGISTRY = {
    "spectrum-of-line-gram": "characteristic polynomial of the 16x16 line Gram matrix",
    "gram-vs-picard-model": "line pairings against the blow-up Picard model",
    "cube-moments": "exact unit-cell moments of levels and floors",
    "integral-identities": "closed forms of the three cube integrals vs factorized integration",
    "chern-vanishing-family": "both Chern vanishing conditions on the solution family",
    "grr-pipeline": "pushforward character pipeline against the boxed formula",
    "okamoto-matrix": "reduced residue map matrix and canonical-class independence",
    "hecke-anchors": "slope oracle versus closed anchor formulas and fourth point",
    "pencil-parameter-iso": "coordinates of the pencil-parameter isomorphism",
    "diagonal-class": "strict diagonal class solved from the curve table",
    "pullback-coherence": "pullback tables compose coherently across the tower",
    "end-to-end-kernel": "worked-weight pipeline kernel class pairs to zero with all 49 curves",
    "end-to-end-divisorial": "worked-weight divisorial class vanishes in the relation quotient",
    "end-to-end-feasible": "half-integral-weight pipeline is fully certified, jumps included",
    "jump-audit-equivalence": "single-wall jumps vanish exactly when the integralities hold",
    "stability-regression": "chamber verdicts on the pinned configurations",
    "wobbly-sweep": "nilpotent witness fields on coincidence configurations",
    "audit-headline-weights": "closed-form weight substitution residuals",
    "audit-stated-solution": "prose general-solution substitution residuals",
    "audit-scalar-condition": "sign variants of the scalar shift condition",
}

STATUS_PASS = "PASS"
STATUS_FAIL = "FAIL"
STATUS_AUDIT = "AUDIT-DISCREPANCY"

WORKED_A = QVec(POINTS, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2),
                         Fraction(1, 3), Fraction(1, 3)))
WORKED_B = QVec(POINTS, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2),
                         Fraction(-1, 3), Fraction(-1, 3)))


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str
    residual: str
    detail: str = ""


def _pass(cid, detail=""):
    return CheckResult(cid, STATUS_PASS, "0", detail)


def _fail(cid, residual, detail=""):
    return CheckResult(cid, STATUS_FAIL, residual, detail)


def _check_spectrum():
    coeffs = char_poly_on(IMAT)
    # (x-4)(x+4)^5 x^10 expanded, monic first
    target = [Q(1)]
    def mul_lin(poly, root):
        out = [Q(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            out[i] += c
            out[i + 1] -= root * c
        return out
    target = mul_lin(target, Q(4))
    for _ in range(5):
        target = mul_lin(target, Q(-4))
    target += [Q(0)] * 10
    if coeffs == target:
        return _pass("spectrum-of-line-gram", "eigenvalues 4, -4, 0 with multiplicities 1, 5, 10")
    return _fail("spectrum-of-line-gram", str([qstr(c) for c in coeffs]))


def _check_gram():
    for i, I in enumerate(EVEN_LABELS):
        for j, J in enumerate(EVEN_LABELS):
            lhs = pic_pair(line_class(I), line_class(J))
            if lhs != IMAT.entries[i][j]:
                return _fail("gram-vs-picard-model", qstr(lhs - IMAT.entries[i][j]),
                             f"pair {I} {J}")
    total = QVec.zero(PIC_INDEX)
    for I in EVEN_LABELS:
        total = total + line_class(I)
    if total != -4 * canonical_class():
        return _fail("gram-vs-picard-model", "line sum mismatch")
    return _pass("gram-vs-picard-model", "256 pairings and the line-sum identity")


def _check_cube_moments(seed, samples):
    if integral_TIT_unit_cube() != Fraction(44, 3):
        return _fail("cube-moments", qstr(integral_TIT_unit_cube() - Fraction(44, 3)))
    smp = RationalSampler(seed)
    for _ in range(samples):
        e, d = smp.nonintegral(), smp.nonintegral()
        if cube_moment(1, "floor", e, d) != e - d:
            return _fail("cube-moments", qstr(cube_moment(1, "floor", e, d) - (e - d)))
        if cube_moment(1, "T", 0, d) != Fraction(1, 2) - d:
            return _fail("cube-moments", qstr(cube_moment(1, "T", 0, d) - Fraction(1, 2) + d))
    return _pass("cube-moments", f"{samples} seeded cells plus the unit cube")


def _check_integral_identities(seed, samples):
    smp = RationalSampler(seed)
    for _ in range(samples):
        e = smp.nonintegral_vector(EVEN_LABELS, -4, 4)
        d = smp.nonintegral_vector(EVEN_LABELS, -4, 4)
        if 2 * integral_TIT(d) != eq_TIT(d):
            return _fail("integral-identities", qstr(2 * integral_TIT(d) - eq_TIT(d)), "TIT")
        if integral_e2_half(e, d) != eq_a2(e, d):
            return _fail("integral-identities",
                         qstr(integral_e2_half(e, d) - eq_a2(e, d)), "e2")
        if integral_eminussigma_IT(e, d) != eq_eminussigma(e, d):
            return _fail("integral-identities",
                         qstr(integral_eminussigma_IT(e, d) - eq_eminussigma(e, d)), "cross")
    return _pass("integral-identities", f"{samples} seeded offset pairs, three identities each")


def _check_chern_family(seed, samples):
    base_e = Fraction(5, 8) * SIGMA
    base_d = Fraction(1, 8) * SIGMA
    res = parch(base_e, base_d)
    if res.triple() != (Q(4), Q(0), Q(0)):
        return _fail("chern-vanishing-family", str([qstr(x) for x in res.triple()]))
    if parch_conditions(base_e, base_d) != (True, True):
        return _fail("chern-vanishing-family", "base point fails a condition")
    smp = RationalSampler(seed)
    for _ in range(samples):
        e, d, _ = solver.chern_family_sample(smp.vector16(-3, 3), smp.vector16(-3, 3))
        r = parch(e, d)
        if not r.vanishes():
            return _fail("chern-vanishing-family",
                         qstr(r.parch2), "family sample with nonzero averaged character")
    return _pass("chern-vanishing-family", f"base point and {samples} family samples")


def _check_grr(seed, samples):
    smp = RationalSampler(seed)
    for _ in range(samples):
        e = smp.nonintegral_vector(EVEN_LABELS, -3, 3)
        d = smp.nonintegral_vector(EVEN_LABELS, -3, 3)
        T = smp.vector16(-2, 2)
        if ch_F_grr(e, d, T) != ch_F(e, d, T):
            return _fail("grr-pipeline", "class mismatch", f"sample {_}")
    return _pass("grr-pipeline", f"{samples} seeded level triples")


def _check_okamoto(seed, samples):
    mat = okamoto.okamoto_matrix()
    for r in range(5):
        for c in range(5):
            want = Fraction(-15, 8) if r == c else Fraction(5, 8)
            if mat.entries[r][c] != want:
                return _fail("okamoto-matrix", qstr(mat.entries[r][c] - want))
    smp = RationalSampler(seed)
    K = canonical_class()
    for _ in range(samples):
        cls = smp.vector(PIC_INDEX, -5, 5)
        t = smp.rational(-5, 5)
        if okamoto.reduce_mod_K(cls) != okamoto.reduce_mod_K(cls + t * K):
            return _fail("okamoto-matrix", "reduction depends on the representative")
    return _pass("okamoto-matrix", f"boxed matrix and {samples} representative shifts")


def _sample_hecke_input(smp: RationalSampler):
    while True:
        vals = smp.distinct_rationals(4, -8, 8, avoid=(Q(0), Q(1)))
        f4, f5, p4, p5 = vals
        try:
            return heckelines.HeckeInput(f4, f5, p4, p5)
        except Exception:
            continue


def _check_hecke_anchors(seed, samples):
    smp = RationalSampler(seed)
    done = 0
    while done < samples:
        inp = _sample_hecke_input(smp)
        try:
            m = heckelines.hecke_line_map(inp)
            p = smp.nonintegral(-6, 6)
            via_map = m(p)
            via_pencil = heckelines.slope_oracle_at(inp, p)
        except heckelines.DegenerateGeometry:
            continue
        if via_map.is_infinity or via_map.value() != via_pencil:
            return _fail("hecke-anchors", "fourth-point mismatch",
                         f"f4={qstr(inp.f4)} f5={qstr(inp.f5)} p4={qstr(inp.p4)} p5={qstr(inp.p5)}")
        done += 1
    return _pass("hecke-anchors", f"{samples} seeded inputs, anchors plus fourth point")


def _check_iota(seed, samples):
    smp = RationalSampler(seed)
    done = 0
    while done < samples:
        l4, l5 = smp.distinct_rationals(2, -9, 9, avoid=(Q(0), Q(1)))
        try:
            heckelines.iota_map(heckelines.PencilConfig(l4, l5))
        except heckelines.DegenerateGeometry:
            continue
        done += 1
    return _pass("pencil-parameter-iso", f"{samples} seeded parameter pairs")


def _check_diagonal():
    closed = divisors.delta_hat_class()
    if divisors.delta_hat_solved_symmetric() != closed:
        return _fail("diagonal-class", "symmetric solve mismatch")
    sols = divisors.delta_hat_full_solution()
    if not sols.consistent:
        return _fail("diagonal-class", "full system inconsistent")
    if not divisors.curve_pairings(closed - sols.particular).is_zero():
        return _fail("diagonal-class", "closed form is not a solution of the full system")
    return _pass("diagonal-class", "symmetric ansatz unique; closed form solves all 49 rows")


def _check_pullback_coherence():
    for I in EVEN_LABELS:
        lhs = divisors.g_Lp(I)
        rhs = 2 * divisors.gZ_LpE(I) + divisors.gZ_LpG(I)
        if lhs != rhs:
            return _fail("pullback-coherence", "Lp family", str(I))
        lhs = divisors.g_LLC(I)
        rhs = 2 * divisors.gZ_LLE(I) + divisors.gZ_LLG(I)
        if lhs != rhs:
            return _fail("pullback-coherence", "LLC family", str(I))
    assembled = divisors.gZ_pullback_abH()
    boxed = divisors.gZ_pullback_abH_boxed()
    if divisors.drop_exceptional(assembled) != divisors.drop_exceptional(boxed):
        return _fail("pullback-coherence", "non-exceptional parts differ")
    gap = assembled - boxed
    expect = QVec.zero(divisors.PICHT_INDEX)
    for I in EVEN_LABELS:
        expect = expect + divisors.gZ_LpE(I)
    if gap != expect:
        return _fail("pullback-coherence", "exceptional gap is not the ruling pullback")
    return _pass("pullback-coherence",
                 "composition identities hold; printed combination differs from the table "
                 "assembly by exactly the exceptional ruling pullback")


def _worked_pipeline():
    return solver.pipeline(WORKED_A, WORKED_B)


def _check_end_to_end_kernel():
    res = _worked_pipeline()
    if not res.certificate["kernel-class-zero"]:
        prs = divisors.curve_pairings(res.params.kernel_class())
        return _fail("end-to-end-kernel", str([qstr(x) for x in prs.entries if x != 0]))
    if not (res.certificate["chern-linear"] and res.certificate["chern-quadratic"]):
        return _fail("end-to-end-kernel", "Chern conditions fail on the pipeline output")
    return _pass("end-to-end-kernel", "all 49 pairings vanish on the worked weights")


def _check_end_to_end_divisorial():
    res = _worked_pipeline()
    ps = res.params
    cls = divisors.hecke_divisor_class(ps.lp, ps.lq, ps.llc, ps.e, ps.d,
                                       ps.r1, ps.r2, ps.a, ps.b,
                                       T=-1 * ps.d, t=QVec.zero(POINTS))
    red = divisors.quotient_reduce(cls)
    if red.is_zero():
        return _pass("end-to-end-divisorial")
    nz = {f"{k[0]}{list(k[1]) if isinstance(k[1], tuple) else k[1]}": qstr(v)
          for k, v in zip(red.index, red.entries) if v != 0}
    return _fail("end-to-end-divisorial", str(nz),
                 "obstructed for these weights: integrality of the level shifts "
                 "fails for any admissible free choices (see README)")


FEASIBLE_A = QVec(POINTS, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2),
                           Fraction(1, 2), Fraction(-1, 2)))


def _check_end_to_end_feasible():
    res = solver.pipeline(FEASIBLE_A, FEASIBLE_A)
    if not res.all_green():
        bad = [k for k, v in res.certificate.items() if not v]
        return _fail("end-to-end-feasible", str(bad))
    ps = res.params
    jumps = divisors.single_wall_jumps(ps.lp, ps.lq, ps.llc, ps.e, ps.d,
                                       ps.r1, ps.r2, ps.a, ps.b)
    if not all(j.quotient_zero for j in jumps):
        return _fail("end-to-end-feasible", "a single-wall jump does not vanish")
    return _pass("end-to-end-feasible",
                 "integral shifts exist; representative level and all wall jumps vanish")


def _check_jump_audit():
    res = _worked_pipeline()
    ps = res.params
    jumps = divisors.single_wall_jumps(ps.lp, ps.lq, ps.llc, ps.e, ps.d,
                                       ps.r1, ps.r2, ps.a, ps.b)
    by_coord = {}
    for j in jumps:
        by_coord.setdefault((j.side, j.position), []).append(j)
    for key, group in by_coord.items():
        all_zero = all(j.quotient_zero for j in group)
        predicted = group[0].matched_integrality
        if all_zero != predicted:
            return _fail("jump-audit-equivalence", f"coordinate {key}")
    return _pass("jump-audit-equivalence",
                 "per-coordinate wall cancellation matches the integrality flags")


def _check_stability_regression():
    pts = [PPoint.of(0), PPoint.of(1), PPoint.of("inf"), PPoint.of(4), PPoint.of(5)]
    normalized = stability.FlagConfig0(tuple(pts),
                                       (PPoint.of(0), PPoint.of(1), PPoint.of("inf"),
                                        PPoint.of(4), PPoint.of(5)))
    if stability.is_stable_deg0_k0(normalized, Fraction(1, 2)).stable:
        return _fail("stability-regression", "flags-at-points stable in the middle chamber")
    if not stability.is_stable_deg0_k0(normalized, Fraction(1, 5)).stable:
        return _fail("stability-regression", "flags-at-points unstable in the first chamber")
    triple = stability.FlagConfig0(tuple(pts),
                                   (PPoint.of(0), PPoint.of(0), PPoint.of(0),
                                    PPoint.of(1), PPoint.of("inf")))
    for q in (Fraction(1, 5), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)):
        if stability.is_stable_deg0_k0(triple, q).stable:
            return _fail("stability-regression", f"triple coincidence stable at {qstr(q)}")
    return _pass("stability-regression", "pinned verdicts in all four chambers")


def _check_wobbly(seed, samples):
    smp = RationalSampler(seed)
    done = 0
    while done < samples:
        pts = smp.distinct_rationals(5, -10, 10)
        flags = smp.distinct_rationals(4, -10, 10)
        shared = flags[0]
        arrangement = [shared, shared, flags[1], flags[2], flags[3]]
        try:
            cfg = stability.FlagConfig0(tuple(PPoint.of(p) for p in pts),
                                        tuple(PPoint.of(f) for f in arrangement))
            wit = stability.wobbly_witness(cfg)
        except ValueError:
            continue
        if wit.kind != "nilpotent-field" or not wit.verify(cfg):
            return _fail("wobbly-sweep", "witness failed verification", str(pts))
        done += 1
    return _pass("wobbly-sweep", f"{samples} coincidence configurations with verified fields")


def _audit_results():
    out = []
    rep_thm = solver.thm14_audit(WORKED_A, WORKED_B)
    status = STATUS_AUDIT if rep_thm.discrepant else STATUS_PASS
    res = rep_thm.residuals["linear"]
    out.append(CheckResult("audit-headline-weights", status,
                           str([qstr(x) for x in res.entries[:4]]) + "...",
                           "closed-form weights fail the linear vanishing condition"))
    choices = solver.default_choices(WORKED_A, WORKED_B)
    rep_sol = solver.stated_solution_audit(WORKED_A, WORKED_B,
                                           choices["n1"], choices["n2"], choices["A"])
    status = STATUS_AUDIT if rep_sol.discrepant else STATUS_PASS
    out.append(CheckResult("audit-stated-solution", status,
                           "eigensum gap " + qstr(rep_sol.residuals["eigensum_gap"].entries[0]) + "...",
                           "prose solution misses the exact elimination by a factor of two"))
    rep_sc = solver.scalar_condition_audit(choices["n1"], choices["n2"])
    status = STATUS_AUDIT if rep_sc.discrepant else STATUS_PASS
    out.append(CheckResult("audit-scalar-condition", status,
                           f"variant sum {qstr(rep_sc.residuals['variant_sum'])}",
                           "the sign variant of the scalar condition fails on the default shifts"))
    return out


def run_certificate(seed: int = 1, samples: int | None = None) -> list:
    """Run every check; deterministic for a fixed (seed, samples)."""
    n = samples
    results = [
        _check_spectrum(),
        _check_gram(),
        _check_cube_moments(seed, n or 100),
        _check_integral_identities(seed, n or 100),
        _check_chern_family(seed, n or 50),
        _check_grr(seed, n or 100),
        _check_okamoto(seed, n or 100),
        _check_hecke_anchors(seed, n or 200),
        _check_iota(seed, n or 200),
        _check_diagonal(),
        _check_pullback_coherence(),
        _check_end_to_end_kernel(),
        _check_end_to_end_divisorial(),
        _check_end_to_end_feasible(),
        _check_jump_audit(),
        _check_stability_regression(),
        _check_wobbly(seed, n or 100),
    ]
    results.extend(_audit_results())
    for r in results:
        if r.check_id not in REGISTRY:
            raise AssertionError(f"check {r.check_id} missing from the registry")
    return results
