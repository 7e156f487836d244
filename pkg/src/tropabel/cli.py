"""Command-line surface with stable JSON input and output.

Every document argument accepts either inline JSON or a file path.  Exit
codes: 0 for success or a true verdict, 1 for a false verdict, 2 for any
error, which is reported as machine-readable JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio, svg
from .core import SkewForm
from .curve import mikhalkin_multiplicity, validate
from .enumeration import (
    SearchBounds,
    certify_bounds_stability,
    enumerate_curves,
    tropical_invariant,
)
from .errors import SchemaError, TropabelError
from .multicover import verify_multiple_cover
from .mumford import MumfordFamily, check_family_polarization, sigma
from .polarization import check_riemann, poincare_dual, polarization_type
from .surface import check_tropical_polarization


def _load(text: str):
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _imat(doc):
    m = tuple(tuple(int(x) for x in row) for row in doc)
    if len(m) != 2 or any(len(r) != 2 for r in m):
        raise SchemaError("expected a 2x2 integer matrix")
    return m


def _emit(doc, out_path=None):
    data = jsonio.to_bytes(doc)
    sys.stdout.write(data.decode())
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)


def _bool_exit(flag: bool) -> int:
    return 0 if flag else 1


def _exponent_str(value) -> str:
    re = jsonio.rat_str(value.re)
    if value.im == 0:
        return re
    return f"{re}+({jsonio.rat_str(value.im)})i"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropabel")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("check-polarization", help="Riemann relations for (Z, Q)")
    q.add_argument("--Z", required=True)
    q.add_argument("--Q", required=True)

    q = sub.add_parser("poincare-dual", help="dual blocks of a skew form")
    q.add_argument("--Q", required=True)

    q = sub.add_parser("type", help="polarization type (d1, d2)")
    q.add_argument("--Q", required=True)

    q = sub.add_parser("check-tropical", help="tropical polarization test")
    q.add_argument("--torus", required=True)
    q.add_argument("--C", required=True)

    q = sub.add_parser("mumford-build", help="build a polarized family")
    q.add_argument("--B", required=True)
    q.add_argument("--tau", type=int, required=True)
    q.add_argument("--S", required=True)
    q.add_argument("--out")

    q = sub.add_parser("mumford-check", help="family polarization criterion")
    q.add_argument("--Z", required=True)
    q.add_argument("--S", required=True)
    q.add_argument("--Q", required=True)

    q = sub.add_parser("sigma", help="realizability phase exponent")
    q.add_argument("--Z", required=True)
    q.add_argument("--B", required=True)
    q.add_argument("--delta", type=int, required=True)

    q = sub.add_parser("validate-curve", help="curve invariant diagnostics")
    q.add_argument("--curve", required=True)
    q.add_argument("--torus", required=True)

    q = sub.add_parser("multiplicity", help="curve counting multiplicity")
    q.add_argument("--curve", required=True)
    q.add_argument("--torus", required=True)

    q = sub.add_parser("enumerate", help="genus-g degree-B curves through points")
    q.add_argument("--torus", required=True)
    q.add_argument("--degree", required=True)
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--slope-bound", type=int)
    q.add_argument("--winding-bound", type=int)
    q.add_argument("--certify", action="store_true")
    q.add_argument("--jobs", type=int)
    q.add_argument("--out")

    q = sub.add_parser("invariant", help="stratified tropical count from a result")
    q.add_argument("--result", required=True)
    q.add_argument("--k", type=int, required=True)

    q = sub.add_parser("multicover", help="verify the multiple cover identity")
    q.add_argument("--torus", required=True)
    q.add_argument("--degree", required=True)
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--jobs", type=int)
    q.add_argument("--out")
    q.add_argument("--svg")

    q = sub.add_parser("svg", help="draw every curve of a result")
    q.add_argument("--result", required=True)
    q.add_argument("--out", required=True)

    return p


def _bounds_from_args(args, B):
    from .enumeration import default_bounds

    base = default_bounds(B)
    sb = args.slope_bound if args.slope_bound else base.slope_bound
    wb = args.winding_bound if args.winding_bound else base.winding_bound
    return SearchBounds(slope_bound=sb, winding_bound=wb)


def _run(args) -> int:
    cmd = args.command
    if cmd == "check-polarization":
        period = jsonio.period_parse(_load(args.Z))
        q = jsonio.skewform_parse(_load(args.Q))
        holds = check_riemann(period, q)
        _emit({"schema": jsonio.SCHEMA, "holds": holds})
        return _bool_exit(holds)

    if cmd == "poincare-dual":
        q = jsonio.skewform_parse(_load(args.Q))
        dual = poincare_dual(q)
        _emit({
            "schema": jsonio.SCHEMA,
            "T": jsonio.imat_doc(dual.T),
            "B": jsonio.imat_doc(dual.B),
        })
        return 0

    if cmd == "type":
        q = jsonio.skewform_parse(_load(args.Q))
        d1, d2 = polarization_type(q)
        _emit({"schema": jsonio.SCHEMA, "d1": d1, "d2": d2})
        return 0

    if cmd == "check-tropical":
        torus = jsonio.torus_parse(_load(args.torus))
        c = _imat(_load(args.C))
        holds = check_tropical_polarization(torus, c)
        _emit({"schema": jsonio.SCHEMA, "holds": holds})
        return _bool_exit(holds)

    if cmd == "mumford-build":
        b = _imat(_load(args.B))
        s = _imat(_load(args.S))
        fam = MumfordFamily.build(b, args.tau, s)
        _emit(jsonio.family_doc(fam), args.out)
        return 0

    if cmd == "mumford-check":
        z = jsonio.zmatrix_parse(_load(args.Z))
        s = _imat(_load(args.S))
        q = jsonio.skewform_parse(_load(args.Q))
        check = check_family_polarization(z, s, q)
        _emit({
            "schema": jsonio.SCHEMA,
            "ok": check.ok,
            "failures": list(check.failures),
        })
        return _bool_exit(check.ok)

    if cmd == "sigma":
        z = jsonio.zmatrix_parse(_load(args.Z))
        b = _imat(_load(args.B))
        exponent = sigma(z, b, args.delta)
        _emit({
            "schema": jsonio.SCHEMA,
            "exponent": _exponent_str(exponent.value),
            "is_one": exponent.is_one(),
        })
        return _bool_exit(exponent.is_one())

    if cmd == "validate-curve":
        torus = jsonio.torus_parse(_load(args.torus))
        pc = jsonio.curve_parse(_load(args.curve), torus)
        diags = validate(pc)
        _emit({"schema": jsonio.SCHEMA, "valid": not diags, "diagnostics": diags})
        return _bool_exit(not diags)

    if cmd == "multiplicity":
        torus = jsonio.torus_parse(_load(args.torus))
        pc = jsonio.curve_parse(_load(args.curve), torus)
        mult = mikhalkin_multiplicity(pc)
        _emit({"schema": jsonio.SCHEMA, **jsonio.multiplicity_doc(mult)})
        return 0

    if cmd == "enumerate":
        torus = jsonio.torus_parse(_load(args.torus))
        b = _imat(_load(args.degree))
        from .surface import sample_config

        cfg = sample_config(torus, args.genus, args.seed)
        bounds = _bounds_from_args(args, b)
        runner = certify_bounds_stability if args.certify else enumerate_curves
        res = runner(torus, b, args.genus, cfg, bounds, args.jobs)
        _emit(jsonio.result_doc(res), args.out)
        return 0

    if cmd == "invariant":
        res = jsonio.result_parse(_load(args.result))
        value = tropical_invariant(res, args.k)
        _emit({"schema": jsonio.SCHEMA, "k": args.k, "value": value})
        return 0

    if cmd == "multicover":
        torus = jsonio.torus_parse(_load(args.torus))
        b = _imat(_load(args.degree))
        rep = verify_multiple_cover(torus, b, args.genus, args.seed, jobs=args.jobs)
        _emit(jsonio.report_doc(rep), args.out)
        if args.svg:
            from .surface import sample_config

            cfg = sample_config(torus, args.genus, rep.seed)
            res = certify_bounds_stability(
                torus, b, args.genus, cfg, rep.bounds[1], args.jobs
            )
            svg.render_result(res, args.svg)
        return _bool_exit(rep.verdict)

    if cmd == "svg":
        res = jsonio.result_parse(_load(args.result))
        names = svg.render_result(res, args.out)
        _emit({"schema": jsonio.SCHEMA, "files": names})
        return 0

    raise AssertionError(f"unhandled command {cmd}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except TropabelError as exc:
        _emit({"error": exc.code, "detail": str(exc)})
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": "invalid_input", "detail": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
