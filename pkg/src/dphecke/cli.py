"""Command-line front end: structured, deterministic reports for every module."""

from __future__ import annotations

import argparse
import json
import sys

from . import certify, divisors, heckelines, okamoto, solver, stability
from .chern import ch_F, ch_M, parch
from .lines import EVEN_LABELS, IMAT, POINTS, PROJECTORS, line_class, pic_pair
from .proj import PPoint
from .qlin import QVec, qstr, qval


def _parse_vec(text: str, index) -> QVec:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != len(index):
        raise SystemExit(f"expected {len(index)} comma-separated rationals, got {len(parts)}")
    return QVec(tuple(index), tuple(qval(p) for p in parts))


def _emit(payload, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        def walk(obj, indent=0):
            pad = "  " * indent
            if isinstance(obj, dict):
                for k, v in obj.items():
                    if isinstance(v, (dict, list)):
                        print(f"{pad}{k}:")
                        walk(v, indent + 1)
                    else:
                        print(f"{pad}{k}: {v}")
            elif isinstance(obj, list):
                for v in obj:
                    walk(v, indent)
            else:
                print(f"{pad}{obj}")
        walk(payload)


def _vec_strings(v: QVec):
    return [qstr(x) for x in v.entries]


def cmd_lines(args):
    payload = {
        "labels": [list(I) for I in EVEN_LABELS],
        "intersection_matrix": [[qstr(x) for x in row] for row in IMAT.entries],
        "projectors": {qstr(ev): [[qstr(x) for x in row] for row in P.entries]
                       for ev, P in PROJECTORS.items()},
        "gram_check": all(
            pic_pair(line_class(I), line_class(J)) == IMAT.entry(I, J)
            for I in EVEN_LABELS for J in EVEN_LABELS),
    }
    _emit(payload, args.format)
    return 0


def cmd_stability(args):
    if args.input:
        with open(args.input) as fh:
            cfg_data = json.load(fh)
    else:
        raise SystemExit("stability needs --input with a configuration file")
    points = tuple(PPoint.of(p) for p in cfg_data["points"])
    flags = tuple(PPoint.of(f) for f in cfg_data["flags"])
    cfg = stability.FlagConfig0(points, flags)
    verdict = stability.is_stable_deg0_k0(cfg, qval(args.q))
    _emit({"verdict": "STABLE" if verdict.stable else "UNSTABLE",
           "violated": verdict.violated or ""}, args.format)
    return 0


def cmd_hecke_line(args):
    inp = heckelines.HeckeInput(qval(args.f4), qval(args.f5), qval(args.p4), qval(args.p5))
    h0, h1, hinf = heckelines.hecke_anchor_values(inp)
    payload = {"anchors": {"at_0": qstr(h0), "at_1": qstr(h1), "at_inf": qstr(hinf)}}
    if args.at is not None:
        m = heckelines.hecke_line_map(inp)
        payload["value"] = str(m(qval(args.at)))
        payload["slope_oracle"] = qstr(heckelines.slope_oracle_at(inp, qval(args.at)))
    _emit(payload, args.format)
    return 0


def cmd_iota(args):
    cfg = heckelines.PencilConfig(qval(args.l4), qval(args.l5))
    res = heckelines.iota_map(cfg)
    payload = {
        "conic_coefficients": [qstr(c) for c in res.conic_coeffs],
        "v_values": [str(v) for v in res.v_values],
        "u_images": {str(k): str(res.u_value(k)) for k in range(1, 6)},
    }
    _emit(payload, args.format)
    return 0


def cmd_chern(args):
    e = _parse_vec(args.e, EVEN_LABELS)
    d = _parse_vec(args.d, EVEN_LABELS)
    T = _parse_vec(args.T, EVEN_LABELS) if args.T else QVec.zero(EVEN_LABELS)
    m = ch_M(e, d, T)
    f = ch_F(e, d, T)
    pr = parch(e, d)
    payload = {
        "ch_M": {"rank": qstr(m.rank), "divisor": _vec_strings(m.div), "pt": qstr(m.pt)},
        "ch_F": {"rank": qstr(f.rank), "divisor": _vec_strings(f.div), "pt": qstr(f.pt)},
        "parch": {
            "degree0": qstr(pr.parch0),
            "degree1_condition": _vec_strings(pr.parch1_condition),
            "degree1_vanishes": pr.parch1_condition.is_zero(),
            "degree2_residual": qstr(pr.parch2),
        },
    }
    _emit(payload, args.format)
    return 0


def cmd_solve(args):
    if args.audit_thm14:
        a = _parse_vec(args.a, POINTS)
        b = _parse_vec(args.b, POINTS)
        rep = solver.thm14_audit(a, b)
        payload = {
            "audit": rep.name,
            "discrepant": rep.discrepant,
            "linear_residual": _vec_strings(rep.residuals["linear"]),
            "linear_ok": rep.residuals["linear_ok"],
            "quadratic_ok": rep.residuals["quadratic_ok"],
        }
        _emit(payload, args.format)
        return 0
    a = _parse_vec(args.a, POINTS)
    b = _parse_vec(args.b, POINTS)
    kwargs = {}
    if args.n1:
        kwargs["n1"] = _parse_vec(args.n1, POINTS)
    if args.n2:
        kwargs["n2"] = _parse_vec(args.n2, POINTS)
    if args.A:
        kwargs["A"] = _parse_vec(args.A, EVEN_LABELS)
    if args.B:
        kwargs["B"] = _parse_vec(args.B, EVEN_LABELS)
    if args.d10:
        kwargs["d10"] = _parse_vec(args.d10, EVEN_LABELS)
    try:
        res = solver.pipeline(a, b, **kwargs)
    except solver.ConstraintError as exc:
        _emit({"error": str(exc)}, args.format)
        return 2
    ps = res.params
    payload = {
        "certificate": res.certificate,
        "integrality": ps.integrality(),
        "e": _vec_strings(ps.e),
        "d": _vec_strings(ps.d),
        "lp": _vec_strings(ps.lp),
        "lq": _vec_strings(ps.lq),
        "llc": _vec_strings(ps.llc),
        "A": _vec_strings(ps.A),
        "B": _vec_strings(ps.B),
        "C": _vec_strings(ps.C),
        "r1": _vec_strings(ps.r1),
        "r2": _vec_strings(ps.r2),
    }
    _emit(payload, args.format)
    return 0 if res.all_green() else 1


def cmd_okamoto(args):
    mat = okamoto.okamoto_matrix()
    payload = {
        "matrix": [[qstr(x) for x in row] for row in mat.entries],
        "theta_in_blowup_basis": _vec_strings(okamoto.theta_class()),
        "f_classes": {str(i): _vec_strings(okamoto.f_class(i)) for i in POINTS},
        "minus_K_in_modular_basis": _vec_strings(okamoto.minus_KX_in_basis()),
    }
    _emit(payload, args.format)
    return 0


def _load_paramset(path: str) -> solver.ParamSet:
    with open(path) as fh:
        data = json.load(fh)
    def vec(key, index):
        return QVec(tuple(index), tuple(qval(x) for x in data[key]))
    return solver.ParamSet(
        a=vec("a", POINTS), b=vec("b", POINTS),
        e=vec("e", EVEN_LABELS), d=vec("d", EVEN_LABELS),
        lp=vec("lp", EVEN_LABELS), lq=vec("lq", EVEN_LABELS),
        llc=vec("llc", EVEN_LABELS),
        r1=vec("r1", POINTS), r2=vec("r2", POINTS),
        A=vec("A", EVEN_LABELS), B=vec("B", EVEN_LABELS), C=vec("C", EVEN_LABELS),
        n1=vec("n1", POINTS), n2=vec("n2", POINTS))


def cmd_divisors(args):
    if args.export_tables:
        table = divisors.curve_table()
        header = ["curve"] + [f"{kind}:{lab}" for kind, lab in table.cols]
        print(",".join(header))
        for curve, row in zip(table.rows, table.entries):
            print(",".join([f"{curve[0]}:{curve[1]}"] + [qstr(x) for x in row]))
        return 0
    if not args.input:
        raise SystemExit("divisors needs --input with a parameter-set file")
    ps = _load_paramset(args.input)
    payload = {}
    if args.check_kernel:
        pairings = divisors.curve_pairings(ps.kernel_class())
        payload["kernel_orthogonal"] = pairings.is_zero()
        payload["nonzero_pairings"] = {
            f"{k[0]}:{k[1]}": qstr(v) for k, v in zip(pairings.index, pairings.entries)
            if v != 0}
    if args.check_hecke:
        cls = divisors.hecke_divisor_class(ps.lp, ps.lq, ps.llc, ps.e, ps.d,
                                           ps.r1, ps.r2, ps.a, ps.b,
                                           T=-1 * ps.d, t=QVec.zero(POINTS))
        red = divisors.quotient_reduce(cls)
        payload["hecke_class_vanishes"] = red.is_zero()
        payload["reduced_class"] = {
            f"{k[0]}:{k[1]}": qstr(v) for k, v in zip(red.index, red.entries) if v != 0}
    _emit(payload, args.format)
    ok = all(v for k, v in payload.items() if isinstance(v, bool))
    return 0 if ok else 1


def cmd_verify_all(args):
    results = certify.run_certificate(seed=args.seed, samples=args.samples)
    payload = []
    failed = False
    for r in results:
        payload.append({"check": r.check_id, "status": r.status,
                        "residual": r.residual, "detail": r.detail})
        if r.status == certify.STATUS_FAIL:
            failed = True
    if args.format == "json":
        _emit(payload, "json")
    else:
        for row in payload:
            print(f"[{row['status']:>18}] {row['check']}"
                  + (f"  ({row['detail']})" if row["detail"] else ""))
            if row["status"] == certify.STATUS_FAIL:
                print(f"{'':>21} residual: {row['residual']}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dphecke",
                                 description="exact verification of the del Pezzo "
                                             "Hecke constraint system")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--input", default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("lines", help="labels, intersection matrix, eigenprojectors")

    sp = sub.add_parser("stability", help="stability verdict for a flag configuration")
    sp.add_argument("--q", required=True)

    sp = sub.add_parser("hecke-line", help="anchor values of a Hecke line")
    sp.add_argument("--f4", required=True)
    sp.add_argument("--f5", required=True)
    sp.add_argument("--p4", required=True)
    sp.add_argument("--p5", required=True)
    sp.add_argument("--at", default=None)

    sp = sub.add_parser("iota", help="pencil-parameter isomorphism in coordinates")
    sp.add_argument("--l4", required=True)
    sp.add_argument("--l5", required=True)

    sp = sub.add_parser("chern", help="characters and averaged Chern data")
    sp.add_argument("--e", required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--T", default=None)

    sp = sub.add_parser("solve", help="solve the constraint system for given weights")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--n1", default=None)
    sp.add_argument("--n2", default=None)
    sp.add_argument("--A", default=None)
    sp.add_argument("--B", default=None)
    sp.add_argument("--d10", default=None)
    sp.add_argument("--audit-thm14", action="store_true")

    sub.add_parser("okamoto", help="the reduced residue-map matrix and basis data")

    sp = sub.add_parser("divisors", help="kernel and divisorial checks on a parameter set")
    sp.add_argument("--check-kernel", action="store_true")
    sp.add_argument("--check-hecke", action="store_true")
    sp.add_argument("--export-tables", action="store_true")

    sub.add_parser("verify-all", help="run the whole certificate suite")
    return ap


COMMANDS = {
    "lines": cmd_lines,
    "stability": cmd_stability,
    "hecke-line": cmd_hecke_line,
    "iota": cmd_iota,
    "chern": cmd_chern,
    "solve": cmd_solve,
    "okamoto": cmd_okamoto,
    "divisors": cmd_divisors,
    "verify-all": cmd_verify_all,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
