"""Command-line interface.

Every subcommand prints one JSON document on stdout.  Exit status is 0 when
the check passes, 1 when it was carried out and came back false, and 2 on
malformed input or I/O problems (with an error object on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import calogero as cal
from .arith import Z, ArithError, BiFraction, MatF, matf_from_json, matf_to_json
from .closure import check_full_rank_one, missing_monomials, span_close
from .nilpotent import (
    NilpotentData,
    NotInGamma,
    ThetaPoly,
    basis_E,
    build_b,
    gamma_relations,
    nilpotent_to_json,
    schrodinger,
    standard_data,
    theoremgen_conditions,
    theta_from_json,
    theta_to_json,
    wave,
)
from .operators import (
    OperatorX,
    ad_power,
    check_left_eigen,
    check_right_eigen,
    operator_to_json,
)
from .pierce import generators, verify_pierce
from .properties import SUITES, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _nilpotent(args) -> NilpotentData:
    if getattr(args, "s", None):
        S = matf_from_json(_load_json(args.s))
        return NilpotentData(args.n, S, args.d if args.d is not None else args.n)
    return standard_data(args.n, args.d)


def _load_theta(path: str, n: int, var: str = "x") -> ThetaPoly:
    t = theta_from_json(_load_json(path))
    if t.n != n:
        raise ArithError(f"theta is {t.n}x{t.n} but n = {n}")
    if t.var != var:
        raise ArithError(f"expected a polynomial in {var}, got one in {t.var}")
    return t


# -- subcommands ------------------------------------------------------------

def cmd_verify_nilpotent(args) -> int:
    nd = _nilpotent(args)
    psi = wave(nd)
    ok = check_left_eigen(schrodinger(nd), psi, MatF.scalar(nd.n, -BiFraction(Z * Z)))
    _emit({"data": nilpotent_to_json(nd), "eigen": ok})
    return 0 if ok else 1


def cmd_membership(args) -> int:
    nd = _nilpotent(args)
    theta = _load_theta(args.theta, nd.n)
    out = {}
    verdicts = []
    if args.form in ("relations", "both"):
        first, second = gamma_relations(theta, nd)
        ok = all(m.is_zero() for m in first + second)
        out["relations"] = {"member": ok,
                            "first": [matf_to_json(m) for m in first],
                            "second": [matf_to_json(m) for m in second]}
        verdicts.append(ok)
    if args.form in ("theoremgen", "both"):
        conds = theoremgen_conditions(theta, nd)
        ok = all(m.is_zero() for _, m in conds)
        out["theoremgen"] = {"member": ok,
                             "conditions": [{"name": k, "residual": matf_to_json(m)} for k, m in conds]}
        verdicts.append(ok)
    if len(set(verdicts)) > 1:
        out["disagreement"] = True
    member = all(verdicts)
    out["member"] = member
    _emit(out)
    return 0 if member else 1


def cmd_build_b(args) -> int:
    nd = _nilpotent(args)
    theta = _load_theta(args.theta, nd.n)
    try:
        B = build_b(theta, nd)
    except NotInGamma as exc:
        _emit({"member": False, "error": str(exc)})
        return 1
    out = {"operator": operator_to_json(B)}
    code = 0
    if args.verify:
        ok = check_right_eigen(wave(nd), B, theta.to_matf())
        out["verified"] = ok
        code = 0 if ok else 1
    _emit(out)
    return code


def cmd_basis_e(args) -> int:
    nd = _nilpotent(args)
    basis = basis_E(nd)
    _emit({"data": nilpotent_to_json(nd), "dimension": len(basis),
           "basis": [theta_to_json(t) for t in basis]})
    return 0


def cmd_pierce(args) -> int:
    report = verify_pierce(args.n)
    out = report.to_json()
    out["pass"] = report.passed
    _emit(out)
    return 0 if report.passed else 1


def cmd_generators(args) -> int:
    N = args.n
    cap = args.cap if args.cap is not None else 4 * N + 2
    lo, hi = 2 * N, cap - 2 * N
    if hi < lo:
        raise ArithError(f"cap must be at least {4 * N}")
    gens = generators(N)
    sb = span_close(gens, cap)
    missing = missing_monomials(sb, range(lo, hi + 1))
    nd = standard_data(N)
    out = {"n": N, "cap": cap, "closure_dimension": sb.dim, "certified_range": [lo, hi],
           "missing": [list(m) for m in missing], "pass": not missing}
    if args.full_rank:
        out["full_rank_from_E"] = check_full_rank_one(nd, cap).to_json()
    _emit(out)
    return 0 if not missing else 1


def cmd_verify_calogero(args) -> int:
    psi, L, B, theta, F = cal.calogero_fixture()
    left = check_left_eigen(L, psi, F)
    right = check_right_eigen(psi, B, theta)
    _emit({"left_eigen": left, "right_eigen": right})
    return 0 if left and right else 1


def cmd_calogero_build_l(args) -> int:
    F = _load_theta(args.f, 2, "z")
    try:
        L = cal.build_l(F)
    except cal.NotInGammaC as exc:
        _emit({"member": False, "error": str(exc)})
        return 1
    out = {"operator": operator_to_json(L)}
    code = 0
    if args.verify:
        ok = check_left_eigen(L, cal.calogero_wave(), F.to_matf())
        out["verified"] = ok
        code = 0 if ok else 1
    _emit(out)
    return code


def cmd_ad_check(args) -> int:
    nd = _nilpotent(args)
    theta = _load_theta(args.theta, nd.n)
    L = schrodinger(nd)
    T = OperatorX.const(theta.to_matf())
    r = max(theta.degree, 0) + 1
    orders = []
    for k in range(1, r + 1):
        orders.append(ad_power(L, T, k).order)
    vanishes = orders[-1] < 0
    _emit({"power": r, "orders": orders, "vanishes": vanishes})
    return 0 if vanishes else 1


def cmd_properties(args) -> int:
    if args.suite == "list":
        _emit({"suites": sorted(SUITES)})
        return 0
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    res = run_suite(args.suite, args.trials, args.seed)
    _emit(res.to_json())
    return 0 if res.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="matbispec", description="Exact checks for matrix bispectral triples.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nil(sp, need_d=False):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--d", type=int, required=need_d, default=None)

    sp = sub.add_parser("verify-nilpotent", help="check L psi = -z^2 psi")
    nil(sp)
    sp.add_argument("--s", help="JSON matrix for S (default: shift matrix)")
    sp.set_defaults(func=cmd_verify_nilpotent)

    sp = sub.add_parser("membership", help="membership residuals for theta")
    nil(sp, True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--form", choices=["relations", "theoremgen", "both"], default="both")
    sp.add_argument("--s")
    sp.set_defaults(func=cmd_membership)

    sp = sub.add_parser("build-b", help="construct B with psi B = theta psi")
    nil(sp, True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--s")
    sp.set_defaults(func=cmd_build_b)

    sp = sub.add_parser("basis-e", help="basis of the finite head E")
    nil(sp, True)
    sp.add_argument("--s")
    sp.set_defaults(func=cmd_basis_e)

    sp = sub.add_parser("pierce", help="verify the Pierce idempotents")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_pierce)

    sp = sub.add_parser("generators", help="closure of the generator family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cap", type=int)
    sp.add_argument("--full-rank", action="store_true", help="also certify the closure of E")
    sp.set_defaults(func=cmd_generators)

    sp = sub.add_parser("verify-calogero", help="check the spin Calogero fixture")
    sp.set_defaults(func=cmd_verify_calogero)

    sp = sub.add_parser("calogero-build-l", help="construct L with L psi = psi F")
    sp.add_argument("--f", required=True)
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_calogero_build_l)

    sp = sub.add_parser("ad-check", help="check (ad L)^(deg+1)(theta) = 0")
    nil(sp, True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--s")
    sp.set_defaults(func=cmd_ad_check)

    sp = sub.add_parser("properties", help="run a named invariant suite ('list' to enumerate)")
    sp.add_argument("--suite", required=True)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_properties)
    return p


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return 2


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc))
    except (OSError, json.JSONDecodeError) as exc:
        return _fail("io", str(exc))
    except (ArithError, TypeError, ValueError, KeyError) as exc:
        return _fail("input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
