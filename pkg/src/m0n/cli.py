"""Command-line interface: ``m0n <group> <command> ...``.

Output is JSON on stdout unless ``--text`` is given.  Exit codes: 0 on
success, 1 on a domain error (or a failed verification), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import chen_coskun as cc
from . import extremal, hypertree, verify
from .classes import DivisorClass, class_from_polynomial, pullback_class_from_polynomial
from .diagonal_mult import PartialDiagonal, multiplicity_along
from .errors import M0nError, ParseError, UnsupportedN
from .polyring import parse, render


class Result:
    """What a handler produces: a JSON payload, a text rendering and an exit code."""

    def __init__(self, payload, text: str | None = None, code: int = 0):
        self.payload = payload
        self.text = text
        self.code = code


def _kv_text(d: dict) -> str:
    width = max((len(k) for k in d), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in d.items())


def _class_text(c: DivisorClass) -> str:
    return f"n={c.n} basis={c.basis_index}\n{c.render()}"


def _shift(args) -> int:
    return 1 if args.zero_based else 0


def _load_hypertree(args) -> hypertree.Hypertree:
    try:
        return hypertree.Hypertree.load(args.file, zero_based=args.zero_based)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"cannot read hypertree from {args.file}: {exc}") from exc


def _basis(args) -> int:
    return args.basis + _shift(args)


def _rng(args):
    return random.Random(args.seed) if args.seed is not None else None


# --------------------------------------------------------------------------
# ht


def ht_validate(args) -> Result:
    report = hypertree.validate(_load_hypertree(args))
    return Result(report.to_json(), _kv_text(report.to_json()))


def ht_poly(args) -> Result:
    h = _load_hypertree(args)
    g = hypertree.divisor_polynomial(h, pivot_row=args.pivot_row)
    payload = {"n": h.n, "d": h.d, "degree": g.degree(), "polynomial": render(g)}
    return Result(payload, render(g))


def ht_class(args) -> Result:
    h = _load_hypertree(args)
    c = class_from_polynomial(hypertree.divisor_polynomial(h), h.n, _basis(args), fast=args.fast, rng=_rng(args))
    return Result(c.to_json(), _class_text(c))


def ht_enum(args) -> Result:
    if args.n >= extremal.DEEP_N and not args.deep:
        raise UnsupportedN(f"n = {args.n} needs --deep")
    found = hypertree.enumerate_irreducible(args.n)
    payload = {"n": args.n, "count": len(found), "hypertrees": [h.to_json() for h in found]}
    lines = [f"n={args.n}: {len(found)} irreducible hypertrees"]
    lines += ["  " + " ".join(",".join(map(str, b)) for b in h.blocks) for h in found]
    return Result(payload, "\n".join(lines))


def ht_aut(args) -> Result:
    h = _load_hypertree(args)
    order = hypertree.automorphism_group_size(h)
    return Result({"n": h.n, "automorphism_order": order}, str(order))


def ht_bipyramid(args) -> Result:
    h = hypertree.bipyramid(args.k)
    if args.interleaved:
        h = h.relabel(extremal.interleaving(args.k))
    return Result(h.to_json(), " ".join(",".join(map(str, b)) for b in h.blocks))


# --------------------------------------------------------------------------
# cc


def cc_poly(args) -> Result:
    w = cc.parse_weights(args.weights)
    g = cc.lambda_polynomial(w)
    return Result({"weights": list(w.a), "degree": g.degree(), "polynomial": render(g)}, render(g))


def cc_class(args) -> Result:
    w = cc.parse_weights(args.weights)
    if args.pullback:
        c = cc.pullback_class_closed_form(w)
        oracle = (lambda: pullback_class_from_polynomial(cc.lambda_polynomial(w), w.n + 2))
    else:
        r = _basis(args)
        c = cc.class_in_basis(w, r)
        oracle = (lambda: class_from_polynomial(cc.lambda_polynomial(w), w.n + 2, r))
    payload = c.to_json()
    text = _class_text(c)
    if args.oracle:
        agrees = oracle() == c
        payload["oracle_agrees"] = agrees
        text += f"\noracle_agrees: {agrees}"
    return Result(payload, text)


def cc_restrict(args) -> Result:
    report = cc.restriction(cc.parse_weights(args.weights))
    return Result(report.to_json(), _kv_text(report.to_json()))


# --------------------------------------------------------------------------
# dk, db, verify, poly


def dk(args) -> Result:
    c = extremal.dk_class(args.k)
    payload = {"k": args.k, "weights": list(extremal.dk_weights(args.k)), "class": c.to_json()}
    text = [f"D_{args.k} = Lambda_{extremal.dk_weights(args.k)}", _class_text(c)]
    if args.pair:
        rep = extremal.dk_pairing(args.k)
        payload["pairing"] = rep.to_json()
        text.append(
            f"pairing: {rep.degree_term} - {rep.point_term} - {rep.span_term} = {rep.pairing}"
        )
    if args.counterexample:
        rep = extremal.counterexample_check(args.k)
        payload["counterexample"] = rep.to_json()
        text.append(
            f"pullback H-coefficient {rep.pullback_h} vs hypertree bound {rep.hypertree_degree_bound}: "
            f"{'not a hypertree divisor' if rep.is_counterexample else 'no obstruction'}"
        )
    return Result(payload, "\n".join(text))


def db_build(args) -> Result:
    out = Path(args.out)
    with out.open("w") as fh:
        count, truncated = extremal.write_database(
            fh, args.n_min, args.n_max, deep=args.deep, budget_seconds=args.budget
        )
    payload = {"out": str(out), "records": count, "truncated": truncated}
    return Result(payload, _kv_text(payload))


def verify_bipyramid(args) -> Result:
    ok = extremal.bipyramid_matches_lambda(args.k, _basis(args))
    payload = {"k": args.k, "basis": _basis(args), "classes_equal": ok}
    return Result(payload, _kv_text(payload), 0 if ok else 1)


def verify_all(args) -> Result:
    cfg = verify.VerifyConfig(seed=args.seed if args.seed is not None else 0)
    results = verify.run_checks(cfg)
    ok = all(r.passed for r in results)
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<26} {r.detail} ({r.seconds:.2f}s)" for r in results)
    return Result({"passed": ok, "checks": [r.to_json() for r in results]}, text, 0 if ok else 1)


def poly_mult(args) -> Result:
    f = parse(args.poly)
    J = [int(v) + _shift(args) for v in args.J.split(",") if v.strip()]
    m = multiplicity_along(f, PartialDiagonal(args.n, J), fast=args.fast, rng=_rng(args))
    return Result({"n": args.n, "J": sorted(J), "multiplicity": m}, str(m))


def poly_class(args) -> Result:
    c = class_from_polynomial(parse(args.poly), args.n, _basis(args), fast=args.fast, rng=_rng(args))
    return Result(c.to_json(), _class_text(c))


# --------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    # SUPPRESS defaults so the flags work both before and after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--text", action="store_true", default=argparse.SUPPRESS, help="human-readable output")
    p.add_argument("--zero-based", action="store_true", default=argparse.SUPPRESS, help="input labels start at 0")
    p.add_argument("--fast", action="store_true", default=argparse.SUPPRESS, help="probabilistic multiplicities")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for --fast and verify")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="m0n", description=__doc__.splitlines()[0])
    parser.set_defaults(text=False, zero_based=False, fast=False, seed=None)
    parser.add_argument("--text", action="store_true")
    parser.add_argument("--zero-based", action="store_true")
    parser.add_argument("--fast", action="store_true")
    parser.add_argument("--seed", type=int)
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    ht = groups.add_parser("ht", help="hypertrees").add_subparsers(dest="cmd", required=True)
    p = leaf(ht, "validate", ht_validate, "check the hypertree axioms")
    p.add_argument("file")
    p = leaf(ht, "poly", ht_poly, "divisor equation")
    p.add_argument("file")
    p.add_argument("--pivot-row", type=int, default=0, help="0-based triple row to eliminate")
    p = leaf(ht, "class", ht_class, "divisor class in a Kapranov basis")
    p.add_argument("file")
    p.add_argument("--basis", type=int, default=1)
    p = leaf(ht, "enum", ht_enum, "irreducible hypertrees up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="allow n >= 9")
    p = leaf(ht, "aut", ht_aut, "automorphism group order")
    p.add_argument("file")
    p = leaf(ht, "bipyramid", ht_bipyramid, "bipyramid hypertree")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--interleaved", action="store_true", help="label the two equator color classes 1..k and k+1..2k")

    ccp = groups.add_parser("cc", help="Chen-Coskun divisors").add_subparsers(dest="cmd", required=True)
    p = leaf(ccp, "poly", cc_poly, "defining polynomial")
    p.add_argument("--weights", required=True)
    p = leaf(ccp, "class", cc_class, "closed-form class")
    p.add_argument("--weights", required=True)
    p.add_argument("--basis", type=int, default=1)
    p.add_argument("--oracle", action="store_true", help="compare with the multiplicity engine")
    p.add_argument("--pullback", action="store_true", help="pullback class in the last basis")
    p = leaf(ccp, "restrict", cc_restrict, "restriction identity")
    p.add_argument("--weights", required=True)

    p = groups.add_parser("dk", parents=[common], help="the D_k family")
    p.set_defaults(func=dk)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pair", action="store_true")
    p.add_argument("--counterexample", action="store_true")

    dbp = groups.add_parser("db", help="hypertree divisor database").add_subparsers(dest="cmd", required=True)
    p = leaf(dbp, "build", db_build, "build the database as JSON")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--deep", action="store_true")
    p.add_argument("--budget", type=float, default=None, help="time budget in seconds")

    vp = groups.add_parser("verify", help="self checks").add_subparsers(dest="cmd", required=True)
    p = leaf(vp, "bipyramid", verify_bipyramid, "bipyramid class equals Lambda_(1,..,1,-1,..,-1)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--basis", type=int, default=1)
    leaf(vp, "all", verify_all, "desk-scale property suite")

    pp = groups.add_parser("poly", help="arbitrary polynomials").add_subparsers(dest="cmd", required=True)
    p = leaf(pp, "mult", poly_mult, "multiplicity along a partial diagonal")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--J", required=True, help="comma-separated indices")
    p = leaf(pp, "class", poly_class, "class of V(f)")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.fast and args.group == "verify":
        parser.error("--fast is not allowed with verify")
    try:
        result = args.func(args)
    except (M0nError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1
    if args.text:
        print(result.text if result.text is not None else json.dumps(result.payload, indent=2))
    else:
        print(json.dumps(result.payload, sort_keys=True))
    return result.code


if __name__ == "__main__":
    sys.exit(main())
