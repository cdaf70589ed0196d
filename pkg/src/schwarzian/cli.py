"""JSON command-line front end.

Grammar: schwarzian <subcommand> [--tol X] [--seed N] [--attempts N]
[--order N] [--in FILE|-].  Input JSON on stdin or file; output JSON on
stdout, diagnostics on stderr.  Exit codes: 0 ok, 2 parse error,
3 degenerate input, 4 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra
from .cubic import (
    criticality_discriminant,
    cross_ratio,
    cubic_fiber_explicit,
    is_regular_tetrahedron,
    ratio_orbit,
)
from .errors import DegenerateInput, ObstructionNonzero, PoleTooHigh, SchwarzianError
from .fiber import local_primitive, reconstruct_rational, solve_fiber
from .jsonio import (
    decode_complex,
    decode_poly,
    decode_rational,
    encode_complex,
    encode_fiber_report,
    encode_poly,
    encode_rational,
)
from .primitivity import (
    CriticalConfiguration,
    check_polynomial_criterion,
    check_rational_criterion,
    classify_holonomy,
    condition_determinant,
    series_obstruction,
)
from .quaddiff import infinity_type, laurent_at, pole_report, schwarzian

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_SOLVER = 4


class _PayloadError(Exception):
    pass


def _require(payload, key):
    if key not in payload:
        raise _PayloadError(f"missing field {key!r}")
    return payload[key]


def _reject_unknown(payload, allowed):
    unknown = set(payload) - set(allowed)
    if unknown:
        raise _PayloadError(f"unknown fields: {sorted(unknown)}")


def cmd_schwarzian(payload, args):
    _reject_unknown(payload, {"num", "den"})
    f = decode_rational({"num": _require(payload, "num"), "den": _require(payload, "den")})
    s = schwarzian(f)
    poles, at_inf = pole_report(s, order=args.order)
    return {
        "schwarzian": encode_rational(s),
        "poles": [
            {
                "point": encode_complex(g.pole),
                "leading": encode_complex(g.leading),
                "local_degree": g.local_degree_hint,
            }
            for g in poles
        ],
        "infinity": {"kind": at_inf.kind,
                     "leading": encode_complex(at_inf.leading)
                     if at_inf.leading is not None else None},
    }


def _config_from_phi(phi, order):
    poles, _ = pole_report(phi, order=order)
    points = []
    params = []
    for g in poles:
        points.append(g.pole)
        # a_1 = -(3/2) A at a simple critical point.
        params.append(-2.0 / 3.0 * g.residue_and_tail[0])
    return CriticalConfiguration(tuple(points), tuple(params))


def cmd_check(payload, args):
    _reject_unknown(payload, {"phi", "mode", "point", "d", "variant"})
    phi = decode_rational(_require(payload, "phi"))
    mode = _require(payload, "mode")
    if mode == "local":
        point = decode_complex(_require(payload, "point"))
        germ = laurent_at(phi, point, args.order)
        d = payload.get("d", germ.local_degree_hint)
        out = {
            "mode": "local",
            "point": encode_complex(point),
            "leading": encode_complex(germ.leading),
            "local_degree": germ.local_degree_hint,
        }
        if d is None:
            out["verdict"] = "leading coefficient is not (1-d^2)/2 for integer d"
            q = algebra.TruncatedSeries(base=complex(point), coeffs=germ.residue_and_tail)
            out["holonomy"] = classify_holonomy(germ, q).kind
            return out
        tail = list(germ.residue_and_tail[:d])
        det = condition_determinant(d, tail)
        q = algebra.TruncatedSeries(base=complex(point), coeffs=germ.residue_and_tail)
        b_hat = series_obstruction(d, q)
        holo = classify_holonomy(germ, q)
        out.update(
            {
                "determinant": encode_complex(det),
                "b_hat": encode_complex(b_hat),
                "holonomy": holo.kind,
                "primitive_exists": bool(abs(det) <= args.tol * 10),
            }
        )
        return out
    if mode == "rational":
        variant = payload.get("variant", "AllL_E123")
        config = _config_from_phi(phi, args.order)
        rec = check_rational_criterion(config, variant)
        return rec.to_json()
    if mode == "polynomial":
        config = _config_from_phi(phi, args.order)
        _, rec = check_polynomial_criterion(config.points)
        return rec.to_json()
    if mode == "merom":
        poles, _ = pole_report(phi, order=max(args.order, 3))
        equations = []
        overall = True
        for g in poles:
            det = condition_determinant(2, list(g.residue_and_tail[:2]))
            ok = abs(det) <= args.tol * 10
            overall = overall and ok and g.local_degree_hint == 2
            equations.append(
                {
                    "name": f"c2@{encode_complex(g.pole)}",
                    "residual": abs(det),
                    "pass": bool(ok),
                }
            )
        return {"variant": "merom", "equations": equations, "overall": overall}
    raise _PayloadError(f"unknown mode {mode!r}")


def cmd_solve(payload, args):
    _reject_unknown(payload, {"points"})
    points = [decode_complex(p) for p in _require(payload, "points")]
    if len(points) % 2 != 0 or not points:
        raise DegenerateInput("need an even number of distinct points")
    maps, report = reconstruct_rational(points, attempts=args.attempts, seed=args.seed)
    out = encode_fiber_report(report)
    out["maps"] = [encode_rational(f) for f in maps]
    if len(points) == 4:
        out["tetrahedron"] = is_regular_tetrahedron(points)
    if report.warning:
        print("warning: no Newton restart converged", file=sys.stderr)
        raise SystemExit(EXIT_SOLVER)
    return out


def cmd_cubic(payload, args):
    _reject_unknown(payload, {"points", "quartic"})
    if "points" in payload:
        points = [decode_complex(p) for p in payload["points"]]
        if len(points) != 4:
            raise DegenerateInput("need exactly four points")
        target = algebra.Poly.from_roots(points)
    else:
        target = decode_poly(_require(payload, "quartic"))
        if target.degree != 4:
            raise DegenerateInput("quartic must have degree 4")
        target = target.monic()
        points = algebra.poly_roots(target)
    w = list(target.coeffs[:4])
    t = cross_ratio(*points)
    branches = cubic_fiber_explicit(w)
    return {
        "points": [encode_complex(p) for p in points],
        "cross_ratio": encode_complex(t),
        "orbit": [encode_complex(v) for v in ratio_orbit(t)],
        "tetrahedron": is_regular_tetrahedron(points),
        "criticality_discriminant": encode_complex(criticality_discriminant(w)),
        "fiber_branches": [
            {
                "a_p": [encode_complex(c) for c in b.a_p],
                "a_q": [encode_complex(c) for c in b.a_q],
            }
            for b in branches
        ],
    }


def cmd_reconstruct_local(payload, args):
    _reject_unknown(payload, {"phi", "point"})
    phi = decode_rational(_require(payload, "phi"))
    point = decode_complex(_require(payload, "point"))
    series = local_primitive(phi, point, args.order)
    return {
        "base": encode_complex(series.base),
        "coeffs": [encode_complex(c) for c in series.coeffs],
    }


COMMANDS = {
    "schwarzian": cmd_schwarzian,
    "check": cmd_check,
    "solve": cmd_solve,
    "cubic": cmd_cubic,
    "reconstruct-local": cmd_reconstruct_local,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="schwarzian",
        description="Schwarzian primitives of rational maps: decide, "
        "reconstruct, classify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--attempts", type=int, default=None)
        p.add_argument("--order", type=int, default=32)
        p.add_argument("--in", dest="infile", default="-")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.tol <= 0 or args.order <= 0 or (args.attempts is not None and args.attempts <= 0):
        print("error: numeric flags must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.infile == "-":
            raw = sys.stdin.read()
        else:
            with open(args.infile) as fh:
                raw = fh.read()
        payload = json.loads(raw) if raw.strip() else {}
        if not isinstance(payload, dict):
            raise _PayloadError("payload must be a JSON object")
    except (OSError, json.JSONDecodeError, _PayloadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = COMMANDS[args.command](payload, args)
    except _PayloadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DegenerateInput, PoleTooHigh, ObstructionNonzero) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except SystemExit as exc:
        return int(exc.code)
    except SchwarzianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    json.dump(result, sys.stdout)
    sys.stdout.write("\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
