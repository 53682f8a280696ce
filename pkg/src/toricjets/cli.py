"""Command line: ``toricjets <command> [--in FILE] [--format json|text]``.

Exit codes: 0 success (or certified / jet ample), 1 negative verdict,
2 input error.  Errors go to stdout as a JSON object; stderr only carries
diagnostics.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import divisor as dv
from . import examples as ex
from . import jets
from . import semigroup as sg
from .lattice import LatticeError
from .polyhedral import PolyhedralError
from .serialize import InputDocument, InputError, ReportDocument, loads_input, parse_q, to_wire

_INPUT_ERRORS = (InputError, LatticeError, PolyhedralError, dv.DivisorError, sg.SemigroupError,
                 jets.JetError, ex.ExampleError, KeyError, TypeError, ValueError)


# --------------------------------------------------------------------------
# rendering


def _text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                out.append(pad + "  ".join(f"{k}={_flat(x)}" for k, x in v.items()))
            else:
                out.append(pad + _flat(v))
    else:
        out.append(pad + _flat(obj))
    return out


def _flat(v: Any) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_flat(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    return str(v)


def _emit(args, command: str, echo: dict, result: dict) -> None:
    rep = ReportDocument(command, echo, result)
    if args.format == "json":
        print(rep.dumps())
    else:
        print("\n".join(_text(to_wire(result))))


# --------------------------------------------------------------------------
# input


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _doc(args) -> InputDocument:
    return loads_input(_read(args.infile))


# --------------------------------------------------------------------------
# commands


def cmd_gamma_q(args) -> int:
    data = json.loads(_read(args.cone))
    rays = data["cone"]["rays"] if isinstance(data, dict) and "cone" in data else data.get("rays") if isinstance(data, dict) else data
    if not isinstance(rays, list):
        raise InputError("cone file needs a list of rays")
    Q = sg.DualConeData([tuple(int(parse_q(x)) for x in r) for r in rays])
    res = {"gamma_q": Q.gamma, "rays": Q.rays, "box_points": len(Q.box_points), "smooth": Q.is_smooth}
    _emit(args, "gamma-q", {"cone": {"rays": to_wire(Q.rays)}}, res)
    return 0


def cmd_gamma_x(args) -> int:
    doc = _doc(args)
    fan = doc.fan_only()
    table = sg.gamma_table(fan)
    rows = [{"cone": i, "rays": fan.cones[i], "gamma": g} for i, g in table.items()]
    _emit(args, "gamma-x", doc.to_dict(), {"gamma_x": max(table.values()), "cones": rows})
    return 0


def _cert_dict(c: jets.JetCertificate) -> dict:
    return {
        "k": c.k,
        "certified": c.certified,
        "min_slack": c.min_slack,
        "cones": [{"cone": r.cone, "vertex": r.vertex, "L": r.L, "gamma": r.gamma, "slack": r.slack} for r in c.rows],
    }


def cmd_certify(args) -> int:
    doc = _doc(args)
    c = jets.certify(doc.divisor(), args.k)
    _emit(args, "certify", doc.to_dict(), _cert_dict(c))
    return 0 if c.certified else 1


def cmd_max_k(args) -> int:
    doc = _doc(args)
    m = jets.max_certified_k(doc.divisor())
    res = {"max_k": m.k, "global_max_k": m.global_k, "gamma_x": m.gamma_x, "min_edge": m.min_edge,
           "cones": [{"cone": i, "max_k": v} for i, v in m.per_cone.items()]}
    _emit(args, "max-k", doc.to_dict(), res)
    return 0


def _report_dict(rep: jets.OracleReport | None) -> dict | None:
    if rep is None:
        return None
    return {"configuration": [list(p) for p in rep.configuration.parts], "surjective": rep.surjective, "witness": rep.witness}


def cmd_oracle(args) -> int:
    doc = _doc(args)
    max_r = args.max_r if args.max_r is not None else args.k + 1
    v = jets.oracle_jet_ample(doc.divisor(), args.k, max_r)
    res = {"k": args.k, "max_r": max_r, "jet_ample": v.jet_ample, "configurations_checked": v.checked,
           "failure": _report_dict(v.failure)}
    _emit(args, "oracle", doc.to_dict(), res)
    return 0 if v.jet_ample else 1


def cmd_intersections(args) -> int:
    doc = _doc(args)
    rep = dv.edge_lengths(doc.divisor())
    rows = [{"sigma1": r.sigma1, "sigma2": r.sigma2, "tau": r.tau, "u1": r.u1, "u2": r.u2,
             "length": r.length, "intersection": r.intersection} for r in rep.rows]
    _emit(args, "intersections", doc.to_dict(), {"min_length": rep.min_length, "walls": rows})
    return 0


def cmd_seshadri(args) -> int:
    doc = _doc(args)
    D = doc.divisor()
    pts = [{"cone": i, "vertex": D.local[i], "seshadri": dv.seshadri_invariant_point(D, i)} for i in range(len(D.fan.cones))]
    _emit(args, "seshadri", doc.to_dict(), {"global": dv.seshadri_global(D), "fixed_points": pts})
    return 0


def cmd_concavity(args) -> int:
    doc = _doc(args)
    _emit(args, "concavity", doc.to_dict(), {"max_concavity": dv.max_concavity(doc.divisor())})
    return 0


def cmd_fujita(args) -> int:
    doc = _doc(args)
    fan = doc.fan_only()
    D = doc.q_divisor()
    if args.dprime == "canonical":
        Dp = dv.canonical_divisor(fan)
    elif args.dprime == "zero":
        Dp = dv.TQDivisor(fan, [0] * len(fan.rays))
    elif doc.dprime is not None:
        Dp = dv.TQDivisor(fan, doc.dprime)
    else:
        raise InputError("fujita needs 'dprime' in the input or --dprime canonical|zero")
    v = jets.fujita_check(fan, D, Dp, args.k, run_oracle=not args.no_oracle)
    res = {
        "k": args.k,
        "hypotheses": [{"name": h.name, "passed": h.passed, "detail": h.detail} for h in v.hypotheses],
        "hypotheses_hold": v.hypotheses_hold,
        "certificate": _cert_dict(v.certificate) if v.certificate else None,
        "oracle": None if v.oracle is None else {"jet_ample": v.oracle.jet_ample, "failure": _report_dict(v.oracle.failure)},
        "confirmed": v.confirmed,
        "note": v.note,
    }
    _emit(args, "fujita", doc.to_dict(), res)
    return 0 if v.confirmed else 1


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "example31":
        spec = ex.ExampleSpec(fam, {"n": args.n, "r": args.r, "k": args.k})
    elif fam == "wps":
        spec = ex.ExampleSpec(fam, {"weights": [int(x) for x in args.weights.split(",")]})
    elif fam == "simplex":
        spec = ex.ExampleSpec(fam, {"dim": args.dim, "m": args.m})
    elif fam == "cube":
        sides = [int(x) for x in args.sides.split(",")] if args.sides else None
        spec = ex.ExampleSpec(fam, {"dim": args.dim, "sides": sides})
    else:
        spec = ex.ExampleSpec(fam, {"a": args.a, "p": args.p, "q": args.q})
    print(json.dumps(InputDocument.from_polytope(spec.polytope()).to_dict()))
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toricjets", description="Jet ampleness of toric divisors.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, infile=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("json", "text"), default="text")
        if infile:
            p.add_argument("--in", dest="infile", default=None, help="input document (stdin if omitted)")
        p.set_defaults(func=func)
        return p

    p = add("gamma-q", cmd_gamma_q, "Gamma of a pointed cone in M", infile=False)
    p.add_argument("--cone", default=None, help="JSON with {'cone': {'rays': ...}} (stdin if omitted)")
    add("gamma-x", cmd_gamma_x, "Gamma_X and the per-cone table")
    p = add("certify", cmd_certify, "per-cone k-jet certificate")
    p.add_argument("--k", type=int, required=True)
    add("max-k", cmd_max_k, "largest certified k")
    p = add("oracle", cmd_oracle, "evaluation-map oracle over fixed-point configurations")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-r", dest="max_r", type=int, default=None)
    add("intersections", cmd_intersections, "wall intersection numbers and edge lengths")
    add("seshadri", cmd_seshadri, "Seshadri constants at the fixed points")
    add("concavity", cmd_concavity, "maximal concavity of the support function")
    p = add("fujita", cmd_fujita, "Fujita-type hypotheses and cross-checks for D + D'")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dprime", choices=("input", "canonical", "zero"), default="input")
    p.add_argument("--no-oracle", dest="no_oracle", action="store_true")

    g = sub.add_parser("gen", help="emit an input document for an example family")
    g.set_defaults(func=cmd_gen)
    gs = g.add_subparsers(dest="family", required=True)
    e = gs.add_parser("example31")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--r", type=int, required=True)
    e.add_argument("--k", type=int, default=1)
    w = gs.add_parser("wps")
    w.add_argument("--weights", required=True)
    s = gs.add_parser("simplex")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--m", type=int, default=1)
    c = gs.add_parser("cube")
    c.add_argument("--dim", type=int, default=2)
    c.add_argument("--sides", default=None, help="comma separated side lengths")
    h = gs.add_parser("hirzebruch")
    h.add_argument("--a", type=int, default=1)
    h.add_argument("--p", type=int, default=1)
    h.add_argument("--q", type=int, default=1)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        err = {"type": "InputError", "message": f"malformed JSON: {exc}"}
    except OSError as exc:
        err = {"type": "InputError", "message": str(exc)}
    except _INPUT_ERRORS as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
    print(json.dumps({"error": err}))
    print(f"toricjets: {err['message']}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
