"""Command line entry point: ``addilog <group> <command> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import AddilogError
from .report import Verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(parser, field_default="Q"):
    parser.add_argument("--field", default=field_default, help="field descriptor, e.g. Q(a) or Fp(3)[beta]")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=None, help="random seed (default: $ADDILOG_SEED or 0)")
    parser.add_argument("--trials", type=int, default=None, help="number of random samples")


def build_parser():
    p = argparse.ArgumentParser(prog="addilog", description="Exact checks for additive dilogarithm identities.")
    groups = p.add_subparsers(dest="group", metavar="{tb2,lie,chow,as,verify-all}")
    groups.required = True

    tb2 = groups.add_parser("tb2", help="pointy-bracket symbols and TB2 coordinates")
    tcmd = tb2.add_subparsers(dest="command")
    tcmd.required = True
    for name, helptext in (("rho", "regulator of <a, b>"), ("tame", "tame symbol of <a, b>")):
        c = tcmd.add_parser(name, help=helptext)
        c.add_argument("a", help="first entry, a rational function of t")
        c.add_argument("b", help="second entry, a rational function of t")
        c.add_argument("--hints", default=None, help="comma-separated roots of the special locus")
        _common(c)
    c = tcmd.add_parser("cathelineau", help="coordinates of <a> and the symbol-level check")
    c.add_argument("a", nargs="?", default="a")
    _common(c, "Q(a)")
    c = tcmd.add_parser("four-term", help="the four-term relation")
    c.add_argument("a", nargs="?", default="a")
    c.add_argument("b", nargs="?", default="b")
    _common(c, "Q(a,b)")
    c = tcmd.add_parser("inversion", help="<a> = -a*<1/a>")
    c.add_argument("a", nargs="?", default="a")
    _common(c, "Q(a)")
    c = tcmd.add_parser("entropy", help="the entropy functional equation")
    c.add_argument("--p", type=int, action="append", default=None, help="exponent (repeatable; default 2 and 3)")
    _common(c)

    lie = groups.add_parser("lie", help="formal co-Lie algebra")
    lcmd = lie.add_subparsers(dest="command")
    lcmd.required = True
    for name, helptext in (("dsq", "check that the boundary squares to zero"), ("boundary", "boundary of a generator")):
        c = lcmd.add_parser(name, help=helptext)
        c.add_argument("generator", help="{a}_n or <a>_n")
        _common(c, "Q(a)")

    chow = groups.add_parser("chow", help="additive cycles")
    ccmd = chow.add_subparsers(dest="command")
    ccmd.required = True
    for name, helptext in (("boundary", "boundary 0-cycle"), ("good-position", "face intersections"),
                           ("modulus", "modulus condition"), ("reciprocity", "psi of the boundary")):
        c = ccmd.add_parser(name, help=helptext)
        c.add_argument("curve", help="x; y1; ...; yn in the parameter")
        c.add_argument("--param", default="t", help="parameter name (default t)")
        c.add_argument("--m", type=int, default=2, help="modulus (default 2)")
        _common(c)
    c = ccmd.add_parser("psi", help="psi of a rational point x; y1; ...")
    c.add_argument("point")
    _common(c)
    c = ccmd.add_parser("phi", help="the point (1/a, b1, ...) and psi of it")
    c.add_argument("entries", help="a; b1; ...")
    _common(c)
    c = ccmd.add_parser("norm", help="norm of (1/a, b1, ...) from a simple extension")
    c.add_argument("entries", help="a; b1; ... with a in the extension and b's in its base")
    _common(c, "ext(Q(b), u, u^2-2)")

    as_ = groups.add_parser("as", help="Artin-Schreier data in characteristic p")
    acmd = as_.add_subparsers(dest="command")
    acmd.required = True
    for name, helptext in (("delta", "delta(y)"), ("eta", "the form eta and its residues"),
                           ("verify", "symbolic checks"), ("heisenberg", "randomized group-scheme checks")):
        c = acmd.add_parser(name, help=helptext)
        c.add_argument("--p", type=int, default=2, help="the characteristic (default 2)")
        _common(c)

    v = groups.add_parser("verify-all", help="run the full suite")
    v.add_argument("--suite", action="append", choices=("bloch", "lie", "chow", "as", "all"), default=None)
    v.add_argument("--p", type=int, action="append", default=None, help="prime for the Artin-Schreier part")
    v.add_argument("--degree-cap", type=int, default=None)
    v.add_argument("--timings", action="store_true", help="record wall time per check")
    v.add_argument("--json", action="store_true")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--trials", type=int, default=None)
    return p


# output

def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _emit_value(args, label, value):
    _emit(args, f"{label} = {value}", {"value": value})
    return EXIT_OK


def _emit_verification(args, v: Verification):
    _emit(args, f"{v.status.upper()} {v.name}: {v.witness}",
          {"id": v.name, "status": v.status, "witness": v.witness})
    return EXIT_FAIL if v.status == "fail" else EXIT_OK


def _seed(args):
    from .suite import default_seed

    return default_seed() if args.seed is None else args.seed


def _parts(text):
    return [s for s in text.split(";")]


# handlers

def _field(args):
    from .parsing import parse_field_descriptor

    return parse_field_descriptor(args.field)


def cmd_tb2(args):
    from . import bloch
    from .parsing import parse_expression

    K = _field(args)
    if args.command in ("rho", "tame"):
        F = bloch.param_field(K)
        a = parse_expression(args.a, K, param="t")
        b = parse_expression(args.b, K, param="t")
        s = bloch.symbol(a, b, F)
        if args.command == "rho":
            return _emit_value(args, "rho", K.format(bloch.symbol_rho(s)))
        hints = [parse_expression(h, K) for h in args.hints.split(",")] if args.hints else []
        return _emit_value(args, "tame", bloch.symbol_tame(s, hints).format())
    if args.command == "cathelineau":
        a = parse_expression(args.a, K)
        x = bloch.cathelineau(a, K)
        s, hints = bloch.cathelineau_symbol(a, field=K)
        ok = bloch.symbol_rho(s) == x.rho and bloch.symbol_tame(s, hints) == x.tame
        v = Verification("cathelineau", ok, f"rho = {K.format(x.rho)}, tame = {x.tame.format()}")
        return _emit_verification(args, v)
    if args.command == "four-term":
        a, b = parse_expression(args.a, K), parse_expression(args.b, K)
        v = Verification.combine("four-term", [bloch.four_term_check(a, b, K), bloch.faux_product_check(a, b, K)],
                                 witness="sum = 0 in both coordinates; X = 1 - (a-b)^2 t^2")
        return _emit_verification(args, v)
    if args.command == "inversion":
        return _emit_verification(args, bloch.inversion_check(parse_expression(args.a, K), K))
    ps = args.p or [2, 3]
    return _emit_verification(args, Verification.combine("entropy", [bloch.entropy_check(p) for p in ps],
                                                         witness=f"p = {', '.join(map(str, ps))}"))


def cmd_lie(args):
    from .lie import d_squared_zero, lie_boundary
    from .parsing import parse_generator

    K = _field(args)
    g = parse_generator(args.generator, K)
    if args.command == "boundary":
        return _emit_value(args, f"d {g.format()}", lie_boundary(g).format())
    return _emit_verification(args, d_squared_zero(g.arg, g.weight))


def cmd_chow(args):
    from . import chow
    from .parsing import parse_curve, parse_expression

    K = _field(args)
    if args.command in ("boundary", "good-position", "modulus", "reciprocity"):
        comps = parse_curve(args.curve, K, param=args.param)
        C = chow.ParamCurve(comps[0], comps[1:])
        if args.command == "boundary":
            return _emit_value(args, "boundary", chow.boundary(C).format())
        if args.command == "good-position":
            return _emit_verification(args, chow.good_position(C))
        if args.command == "modulus":
            return _emit_verification(args, chow.modulus_check(C, args.m).to_verification())
        return _emit_verification(args, chow.verify_reciprocity(C, args.m))
    if args.command == "psi":
        coords = [parse_expression(s, K) for s in _parts(args.point)]
        return _emit_value(args, "psi", chow.psi_evaluate(chow.ZeroCycle([(1, chow.point(K, *coords))]), K).format())
    if args.command == "phi":
        a, *bs = [parse_expression(s, K) for s in _parts(args.entries)]
        Z = chow.phi_map(a, bs, K)
        form = chow.psi_evaluate(Z, K)
        return _emit(args, f"phi = {Z.format()}\npsi(phi) = {form.format()}",
                     {"value": Z.format(), "psi": form.format()}) or EXIT_OK
    if args.command == "norm":
        if K.base is None or not hasattr(K, "minpoly"):
            raise UsageError("chow norm needs --field ext(<base>, u, <poly>)")
        first, *rest = _parts(args.entries)
        a = parse_expression(first, K)
        bs = [parse_expression(s, K.base) for s in rest]
        N, v = chow.norm_generator(K, a, bs)
        _emit(args, f"N = {N.format()}\n{v.status.upper()} {v.name}: {v.witness}",
              {"value": N.format(), "status": v.status, "witness": v.witness})
        return EXIT_FAIL if v.status == "fail" else EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def cmd_as(args):
    from . import artin_schreier as AS
    from .suite import check_seed

    p = args.p
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise UsageError(f"--p must be prime, got {p}")
    ctx = AS.ASContext(p)
    if args.command == "delta":
        return _emit_value(args, "delta", ctx.F.format(AS.delta(ctx)))
    if args.command == "eta":
        form = AS.eta(ctx).format()
        v = AS.verify_eta_residues(ctx)
        _emit(args, f"eta = {form}\n{v.status.upper()} {v.name}: {v.witness}",
              {"value": form, "status": v.status, "witness": v.witness})
        return EXIT_FAIL if v.status == "fail" else EXIT_OK
    if args.command == "verify":
        parts = [AS.verify_eta_residues(ctx), AS.verify_eta_dlog_delta(ctx), AS.verify_rho_lift(ctx)]
        parts += [AS.verify_monodromy(ctx, a) for a in range(p)]
        return _emit_verification(args, Verification.combine(f"as p={p}", parts))
    trials = 200 if args.trials is None else args.trials
    if trials <= 0:
        return _emit_verification(args, Verification.skip(f"heisenberg p={p}", "trials = 0"))
    seed = check_seed(_seed(args), f"as.p{p}.heisenberg")
    parts = AS.heisenberg_checks(p, trials, seed) + [AS.central_extension_check(p, trials, seed)]
    return _emit_verification(args, Verification.combine(f"heisenberg p={p}", parts,
                                                         witness=f"{trials} samples per axiom"))


def cmd_verify_all(args):
    from .suite import DEFAULT_PRIMES, SuiteConfig, run_suite

    kwargs = {"suites": tuple(args.suite or ("all",)), "primes": tuple(args.p or DEFAULT_PRIMES),
              "trials": args.trials, "seed": _seed(args), "output": "json" if args.json else "text",
              "timings": args.timings}
    if args.degree_cap is not None:
        kwargs["degree_cap"] = args.degree_cap
    report = run_suite(SuiteConfig(**kwargs))
    print(report.to_json() if args.json else report.to_text())
    return report.exit_status


HANDLERS = {"tb2": cmd_tb2, "lie": cmd_lie, "chow": cmd_chow, "as": cmd_as, "verify-all": cmd_verify_all}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.group](args)
    except (AddilogError, UsageError, ValueError, KeyError) as exc:
        print(f"addilog: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
