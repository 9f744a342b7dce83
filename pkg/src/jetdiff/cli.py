"""Command line front end.

Every command prints one JSON envelope on stdout::

    {"schema": 1, "command": ..., "status": "ok" | "mismatch" | "error",
     "inputs": {...}, "result": {...}, "witness": [...] | null}

and a one-line human summary on stderr.  Exit codes: 0 ok, 1 parse or usage
error, 2 domain error, 3 mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .algebra import T, DiffPoly, collect, render
from .brackets import SizeLimitError, bracket, certificate_poly, expressibility_check, invariant_basis, qk_tower
from .expr import ExprSyntaxError, UnknownVariableError, parse_expr, parse_rational
from .jets import is_invariant
from .picard import (alternating_residual, dependence_test, galois_scaling_check, ode_from_solutions,
                     series_solution)
from .series import PrecisionError, TruncSeries
from .wronskian import (Partition, VanishingWronskianError, generalized_wronskian, giambelli_report,
                        hook_expansion_report, indeterminates, schur_delta)

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, DiffPoly):
        return render(x)
    if isinstance(x, TruncSeries):
        return {"coeffs": [jsonable(c) for c in x.coeffs], "prec": x.prec}
    if isinstance(x, Partition):
        return list(x.parts)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def poly_in_t(text: str) -> TruncSeries:
    """Read a polynomial in t with rational coefficients as an exact series."""
    p = parse_expr(text)
    if p.variables() - {T}:
        raise UsageError(f"expected a polynomial in t: {text!r}")
    parts = collect(p, [T])
    deg = max((dict(m).get(T, 0) for m in parts), default=0)
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in parts.items():
        coeffs[dict(m).get(T, 0)] = c.constant_value()
    return TruncSeries.poly(coeffs)


def _series_arg(text: str) -> TruncSeries:
    vals = [parse_rational(v) for v in text.split(",") if v.strip()]
    return TruncSeries(vals, len(vals))


def _functions(args) -> list:
    if getattr(args, "poly", None):
        return [poly_in_t(p) for p in args.poly]
    if args.m is None:
        raise UsageError("give -m or at least one --poly")
    return indeterminates(args.m)


# -- commands ------------------------------------------------------------

def cmd_wronskian(args):
    fs = _functions(args)
    w = generalized_wronskian(Partition(()), fs)
    return {"wronskian": w}, None


def cmd_genw(args):
    fs = _functions(args)
    lam = Partition.parse(args.partition)
    return {"partition": lam, "w_lambda": generalized_wronskian(lam, fs)}, None


def cmd_schur(args):
    lam = Partition.parse(args.partition)
    x = None
    if args.values is not None:
        x = [Fraction(1)] + [parse_rational(v) for v in args.values.split(",")]
    return {"partition": lam, "delta": schur_delta(lam, x)}, None


def cmd_hook_check(args):
    rep = hook_expansion_report(args.m, args.k)
    rows = [{"partition": r.partition, "coefficient": r.coefficient, "c_lambda": r.c_lambda,
             "hooks": r.partition.hook_lengths(), "match": r.match} for r in rep.rows]
    witness = None if rep.ok else [{"residual": rep.residual},
                                   *[r for r in rows if not r["match"]]]
    return {"rows": rows, "residual_zero": rep.residual.is_zero()}, witness


def cmd_giambelli(args):
    fs = [poly_in_t(p) for p in args.poly]
    lam = Partition.parse(args.partition)
    rep = giambelli_report(lam, fs, parse_rational(args.point))
    result = {"partition": lam, "point": rep.point, "W0": rep.w0, "a": rep.a, "b": rep.b,
              "W_lambda": rep.w_lambda, "delta": rep.delta, "delta_times_W0": rep.rhs,
              "holds": rep.holds, "constant_coefficients": rep.constant_coefficients}
    witness = None if rep.holds else [{"residual": rep.residual,
                                       "constant_coefficients": rep.constant_coefficients}]
    return result, witness


def cmd_bracket(args):
    p, q = parse_expr(args.P), parse_expr(args.Q)
    b = bracket(p, q)
    return {"bracket": b}, None


def cmd_qk_tower(args):
    tower = qk_tower(args.n, args.k)
    levels = {}
    witness = []
    for level, comps in tower.items():
        out = []
        for key, comp in comps.items():
            res = is_invariant(comp, "unipotent", k=level)
            out.append({"index": list(key), "poly": comp, "invariant": res.holds})
            if not res.holds:
                witness.append({"level": level, "index": list(key), "residual": res.residual})
        levels[str(level)] = out
    return {"levels": levels}, witness or None


def cmd_invariants(args):
    basis = invariant_basis(args.n, args.k, args.m, args.mode)
    witness = []
    out = []
    for cand in basis:
        q = cand.poly()
        ok = args.m == 0 or is_invariant(q, args.mode, weight=args.m if args.mode == "weighted" else None,
                                         k=args.k).holds
        out.append(q)
        if not ok:
            witness.append({"candidate": q})
    return {"dimension": len(basis), "basis": out}, witness or None


def cmd_member(args):
    q = parse_expr(args.Q)
    gens = [parse_expr(g) for g in args.gen]
    res = expressibility_check(q, gens, args.max_weight)
    result = {"member": res.member, "weight": res.weight, "products": len(res.products),
              "span_rank": res.span_rank,
              "certificate": [{"coeff": c, "exponents": list(e)} for c, e in res.certificate]}
    if res.note:
        result["note"] = res.note
    witness = None
    if res.member and certificate_poly(gens, res.certificate) != q:
        witness = [{"certificate_residual": certificate_poly(gens, res.certificate) - q}]
    return result, witness


def cmd_ode_from(args):
    us = [poly_in_t(p) for p in args.poly or []] + [_series_arg(s) for s in args.series or []]
    if not us:
        raise UsageError("give at least one --poly or --series")
    op = ode_from_solutions(us, args.prec)
    witness = []
    for j, u in enumerate(us):
        prec = args.prec if u.is_exact else None
        res = op.apply(u.truncate(prec) if prec else u)
        if not res.is_zero():
            witness.append({"solution": j, "residual": res})
    return {"order": op.order, "coeffs": list(op.coeffs), "operator": str(op)}, witness or None


def cmd_series_sol(args):
    a = [parse_expr(x) for x in args.a.split(",")]
    a = [p.constant_value() if p.is_constant() else p for p in a]
    xi0 = series_solution(a, args.N)
    res = alternating_residual(a, xi0)
    witness = None if res.is_zero() else [{"residual": res}]
    return {"series": xi0, "residual_zero_through": (res.prec or 0) - 1}, witness


def cmd_dep_test(args):
    us = [poly_in_t(p) for p in args.poly]
    res = dependence_test(us)
    result = {"verdict": res.verdict, "wronskian": res.wronskian, "rank": res.rank,
              "relation": res.relation, "agrees_with_rank": res.agrees}
    witness = None if res.agrees else [{"rank": res.rank, "wronskian": res.wronskian}]
    return result, witness


def cmd_galois_scale(args):
    matrix = None
    if args.matrix:
        matrix = [[parse_expr(x) for x in row.split(",")] for row in args.matrix.split(";")]
    rep = galois_scaling_check(args.m, matrix)
    result = {"matrix": rep.matrix, "det": rep.det, "lhs": rep.lhs, "rhs": rep.rhs, "holds": rep.holds}
    return result, None if rep.holds else [{"residual": rep.residual}]


def cmd_verify_all(args):
    from .verify import verify_all
    crits = verify_all()
    rows = [{"criterion": c.number, "name": c.name, "ok": c.ok, "checks": c.checks, "detail": c.detail}
            for c in crits]
    witness = [{"criterion": c.number, "witness": c.witness} for c in crits if not c.ok]
    for c in crits:
        print(f"[{'PASS' if c.ok else 'FAIL'}] {c.number:2d} {c.name} ({c.checks} checks)", file=sys.stderr)
    return {"criteria": rows, "passed": sum(c.ok for c in crits), "total": len(crits)}, witness or None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="jetdiff", description="Exact jet-differential and Wronskian computations.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = add("wronskian", cmd_wronskian, "classical Wronskian")
    p.add_argument("-m", type=int)
    p.add_argument("--poly", action="append", help="polynomial in t (repeatable)")

    p = add("genw", cmd_genw, "generalized Wronskian W_lambda")
    p.add_argument("-p", "--partition", required=True)
    p.add_argument("-m", type=int)
    p.add_argument("--poly", action="append")

    p = add("schur", cmd_schur, "Schur determinant Delta_lambda")
    p.add_argument("-p", "--partition", required=True)
    p.add_argument("--values", help="comma separated x1, x2, ... (x0 = 1)")

    p = add("hook-check", cmd_hook_check, "expand D^k W in the W_lambda basis")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-k", type=int, required=True)

    p = add("giambelli", cmd_giambelli, "compare W_lambda with Delta_lambda(b) W_0")
    p.add_argument("-p", "--partition", required=True)
    p.add_argument("--poly", action="append", required=True)
    p.add_argument("--point", default="0")

    p = add("bracket", cmd_bracket, "invariant bracket [P, Q]")
    p.add_argument("P")
    p.add_argument("Q")

    p = add("qk-tower", cmd_qk_tower, "Q_k tower components")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)

    p = add("invariants", cmd_invariants, "basis of weight-m invariants")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--mode", choices=("unipotent", "weighted"), default="unipotent")

    p = add("member", cmd_member, "bounded-degree algebra membership")
    p.add_argument("Q")
    p.add_argument("--gen", action="append", required=True)
    p.add_argument("--max-weight", type=int)

    p = add("ode-from", cmd_ode_from, "monic operator annihilating given solutions")
    p.add_argument("--poly", action="append")
    p.add_argument("--series", action="append", help="truncated coefficients c0,c1,...")
    p.add_argument("--prec", type=int)

    p = add("series-sol", cmd_series_sol, "series solution from the generating function")
    p.add_argument("--a", required=True, help="comma separated a1,...,a_(r+1); symbols allowed")
    p.add_argument("-N", type=int, default=10)

    p = add("dep-test", cmd_dep_test, "Wronskian linear dependence test")
    p.add_argument("--poly", action="append", required=True)

    p = add("galois-scale", cmd_galois_scale, "W(c xi) = det(c) W(xi)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--matrix", help="rows separated by ';', entries by ','")

    add("verify-all", cmd_verify_all, "run the full identity suite")
    return ap


def run_command(argv: List[str]):
    """Return (envelope, exit code) without printing."""
    env = {"schema": SCHEMA, "command": None, "status": "ok", "inputs": {}, "result": None, "witness": None}
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("missing subcommand")
        env["command"] = args.command
        env["inputs"] = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
        result, witness = args.func(args)
        env["result"] = jsonable(result)
        if witness:
            env["status"] = "mismatch"
            env["witness"] = jsonable(witness)
            return env, EXIT_MISMATCH
        return env, EXIT_OK
    except (UsageError, ExprSyntaxError, UnknownVariableError) as exc:
        env["status"] = "error"
        env["error"] = {"kind": "usage", "message": str(exc)}
        return env, EXIT_USAGE
    except (VanishingWronskianError, SizeLimitError, PrecisionError, ValueError, ZeroDivisionError, TypeError) as exc:
        env["status"] = "error"
        env["error"] = {"kind": "domain", "message": str(exc)}
        return env, EXIT_DOMAIN


def main(argv: Optional[List[str]] = None) -> int:
    env, code = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(json.dumps(env, indent=2) + "\n")
    if env["status"] == "error":
        print(f"error: {env['error']['message']}", file=sys.stderr)
    else:
        print(f"{env['command']}: {env['status']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
