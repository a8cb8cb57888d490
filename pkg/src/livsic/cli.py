"""Command-line interface.

Every command prints one JSON document on standard output.  Exit codes:
0 success, 1 verification failure, 2 malformed or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import curves as cv
from . import detrep as dr
from . import hyperbolicity as hy
from .errors import (InvalidArgument, LivsicError, NormalizationFailure,
                     TransversalityFailure)
from .fileformats import (complex_pair, curve_from_json, curve_to_json, dumps,
                          gamma_from_json, gamma_to_json, parse_array,
                          read_json, write_text)

OK, FAILED, BAD_INPUT = 0, 1, 2


def _emit(doc: dict, out: str | None = None, to_file: dict | None = None) -> None:
    text = dumps(doc)
    print(text)
    if out:
        write_text(out, dumps(to_file if to_file is not None else doc))


def _load_gamma(path):
    return gamma_from_json(read_json(path))


def _load_curve(path):
    return curve_from_json(read_json(path))


def _json_arg(arg: str):
    """Inline JSON, or the path of a JSON file."""
    text = Path(arg).read_text() if Path(arg).is_file() else arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"cannot parse {arg!r} as JSON: {exc}") from None


def _vectors(arg: str, d: int) -> np.ndarray:
    """A JSON list of vectors of length d+1."""
    arr = parse_array(_json_arg(arg), 2)
    if arr.size and arr.shape[1] != d + 1:
        raise InvalidArgument(f"vectors must have {d + 1} coordinates")
    return arr.reshape(-1, d + 1)


def _vector(arg: str, d: int) -> np.ndarray:
    arr = parse_array(_json_arg(arg), 1)
    if arr.shape != (d + 1,):
        raise InvalidArgument(f"vector must have {d + 1} coordinates")
    return arr


def cmd_construct(args) -> int:
    c = _load_curve(args.curve)
    mode = args.mode.replace("-", "_")
    if mode == "real_section" and args.hyperplane is None:
        res = cv.hermitian_representation(c, args.seed, samples=args.samples)
    else:
        h = None if args.hyperplane is None else _vector(args.hyperplane, c.d)
        res = cv.represent_curve(c, args.seed, mode, h, args.samples)
    norm = res.normalization
    passed = res.report.vr and res.containment_residual < args.tol
    doc = {
        "command": "construct",
        "passed": passed,
        "gamma": gamma_to_json(res.gamma),
        "report": {
            "vr": res.report.vr,
            "containment_residual": res.containment_residual,
            "normalized_containment_residual": res.report.containment_residual,
            "divisor": [complex_pair(p) for p in norm.divisor],
            "g": norm.g,
            "mobius": list(norm.mobius) if norm.mobius else None,
            "hermitian": res.gamma.is_hermitian(),
        },
    }
    _emit(doc, args.out, gamma_to_json(res.gamma))
    return OK if passed else FAILED


def cmd_verify(args) -> int:
    gamma = _load_gamma(args.gamma)
    c = _load_curve(args.curve)
    if gamma.k != 1:
        raise InvalidArgument("verify expects a curve tensor (k = 1)")
    cont = cv.containment_check(c, gamma, args.samples, args.seed, args.tol)
    try:
        deg = dr.degree(gamma, seed=args.seed).degree if dr.is_nondegenerate(gamma, seed=args.seed) else None
    except TransversalityFailure:
        deg = None
    vr = deg == gamma.n
    passed = cont.passed and vr
    _emit({
        "command": "verify",
        "passed": passed,
        "containment_residual": cont.residual,
        "kernel_dims": list(cont.kernel_dims),
        "degree": deg,
        "n": gamma.n,
        "very_reasonable": vr,
    }, args.out)
    return OK if passed else FAILED


def _dividing_doc(v) -> dict | None:
    if v is None:
        return None
    return {"is_dividing": v.is_dividing, "orientation_sign": v.orientation_sign,
            "failure_witness": v.failure_witness, "reason": v.reason,
            "poles": [float(p) for p in v.poles], "residues": [float(r) for r in v.residues]}


def cmd_witness(args) -> int:
    c = _load_curve(args.curve)
    V = _vectors(args.plane, c.d)
    if np.iscomplexobj(V) or not c.real:
        raise InvalidArgument("witness needs a real curve and a real plane")
    plane = hy.PlaneSpec(V)
    try:
        gamma = cv.hermitian_representation(c, args.seed, hyperplanes=plane.dual_pair,
                                            samples=args.samples).gamma
    except NormalizationFailure:
        gamma = None
    rep = hy.witness_report(c, plane, gamma, args.count, args.seed, args.tol)
    s = rep.section_stats
    _emit({
        "command": "witness",
        "witness": rep.is_witness,
        "disjoint": rep.disjoint,
        "dividing": _dividing_doc(rep.dividing),
        "definite_sign": rep.definite_sign,
        "hermitian_representation": gamma is not None,
        "section_stats": None if s is None else {
            "count": s.count, "all_real": s.all_real, "max_imag": s.max_imag},
        "common_points": [complex_pair(p) if np.isfinite(p) else "inf" for p in rep.common_points],
    }, args.out)
    return OK if rep.is_witness else FAILED


def cmd_lmi(args) -> int:
    exp = hy.lmi_export(_load_gamma(args.gamma))
    doc = {"command": "lmi", "d": exp.d, "k": exp.k, "n": exp.n,
           "matrices": [{"J": list(J), "matrix": [[complex_pair(x) for x in row] for row in M]}
                        for J, M in exp.matrices.items()]}
    _emit(doc, args.out)
    return OK


def cmd_examples(args) -> int:
    if args.curve:
        doc = curve_to_json(cv.builtin_curve(args.name))
    else:
        doc = gamma_to_json(cv.builtin_example(args.name))
    _emit(doc, args.out)
    return OK


def cmd_slice(args) -> int:
    gamma = _load_gamma(args.gamma)
    V0 = _vectors(args.v0, gamma.d) if args.v0 else np.zeros((0, gamma.d + 1))
    w1 = _vector(args.w1, gamma.d)
    w2 = _vector(args.w2, gamma.d)
    prof = dr.schubert_det_profile(gamma, V0, w1, w2, args.samples)
    r = prof.roots() if prof.degree >= 1 else np.zeros(0)
    _emit({"command": "slice", "degree": prof.degree,
           "coefficients": [complex_pair(x) for x in prof.coeffs],
           "roots": [complex_pair(x) for x in r]}, args.out)
    return OK


def cmd_degree(args) -> int:
    gamma = _load_gamma(args.gamma)
    if not dr.is_nondegenerate(gamma, seed=args.seed):
        _emit({"command": "degree", "nondegenerate": False, "degree": None, "n": gamma.n,
               "very_reasonable": False}, args.out)
        return FAILED
    rep = dr.degree(gamma, args.trials, args.seed)
    _emit({"command": "degree", "nondegenerate": True, "degree": rep.degree, "n": rep.n,
           "very_reasonable": rep.degree == rep.n,
           "trials": [{"transversal": t.transversal, "kernel_dims": t.kernel_dims}
                      for t in rep.trials]}, args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="livsic", description="Determinantal representations of curves")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed: bool):
        sp.add_argument("--seed", type=int, required=seed, default=None if seed else 0)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--out")

    sp = sub.add_parser("construct", help="build γ for a rational curve")
    sp.add_argument("curve")
    sp.add_argument("--mode", choices=["generic", "real-section"], default="generic")
    sp.add_argument("--hyperplane", help="real covector for real-section mode")
    sp.add_argument("--samples", type=int, default=50)
    common(sp, True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check that γ represents a curve")
    sp.add_argument("gamma")
    sp.add_argument("curve")
    sp.add_argument("--samples", type=int, default=25)
    common(sp, True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("witness", help="hyperbolicity of a real curve w.r.t. a plane")
    sp.add_argument("curve")
    sp.add_argument("--plane", required=True, help="JSON list of d-1 vectors, or a file")
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--samples", type=int, default=25)
    common(sp, True)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("lmi", help="Plücker-coordinate coefficients of γ(V)")
    sp.add_argument("gamma")
    common(sp, False)
    sp.set_defaults(func=cmd_lmi)

    sp = sub.add_parser("examples", help="emit a built-in tensor")
    sp.add_argument("name")
    sp.add_argument("--curve", action="store_true", help="emit the curve instead")
    common(sp, False)
    sp.set_defaults(func=cmd_examples)

    sp = sub.add_parser("slice", help="t ↦ det γ(span(V0, w1 + t w2))")
    sp.add_argument("gamma")
    sp.add_argument("--v0", help="JSON list of vectors (may be omitted when empty)")
    sp.add_argument("--w1", required=True)
    sp.add_argument("--w2", required=True)
    sp.add_argument("--samples", type=int, default=None)
    common(sp, False)
    sp.set_defaults(func=cmd_slice)

    sp = sub.add_parser("degree", help="degree and very-reasonableness of γ")
    sp.add_argument("gamma")
    sp.add_argument("--trials", type=int, default=6)
    common(sp, True)
    sp.set_defaults(func=cmd_degree)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError) as exc:
        # package input errors subclass ValueError or KeyError
        print(dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return BAD_INPUT
    except LivsicError as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
