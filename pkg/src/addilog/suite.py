"""The verify-all suite: every executable identity, one report.

Each check has a stable identifier, a short reference label and a flag
saying whether it draws random samples.  Randomized checks are seeded with
``seed + crc32(identifier)`` so that adding or removing checks never shifts
another check's samples, and the report is sorted by identifier.
"""

from __future__ import annotations

import json
import os
import random
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

from .chow import DEGREE_CAP
from .report import Verification

SUITES = ("bloch", "lie", "chow", "as")
DEFAULT_PRIMES = (2, 3, 5)
DEFAULT_SEED = 0


def default_seed():
    raw = os.environ.get("ADDILOG_SEED")
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    return int(raw)


@dataclass
class SuiteConfig:
    suites: tuple = ("all",)
    primes: tuple = DEFAULT_PRIMES
    trials: int | None = None
    seed: int = field(default_factory=default_seed)
    degree_cap: int = DEGREE_CAP
    output: str = "text"
    timings: bool = False

    def selected(self):
        if "all" in self.suites:
            return SUITES
        return tuple(s for s in SUITES if s in self.suites)

    def count(self, default):
        return default if self.trials is None else self.trials

    def echo(self):
        return {
            "suites": list(self.selected()),
            "primes": list(self.primes),
            "trials": self.trials,
            "seed": self.seed,
            "degree_cap": self.degree_cap,
        }


@dataclass
class CheckResult:
    id: str
    paper_ref: str
    status: str
    witness: str
    millis: float | None = None

    def to_json(self):
        return {"id": self.id, "paper_ref": self.paper_ref, "status": self.status,
                "witness": self.witness, "millis": self.millis}


@dataclass
class Report:
    config: dict
    checks: list

    @property
    def summary(self):
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def exit_status(self):
        return 1 if self.summary["fail"] else 0

    def to_json(self):
        doc = {"config": self.config, "checks": [c.to_json() for c in self.checks], "summary": self.summary}
        return json.dumps(doc, indent=2, ensure_ascii=False)

    def to_text(self):
        lines = []
        for c in self.checks:
            t = "" if c.millis is None else f" [{c.millis:.0f} ms]"
            lines.append(f"{c.status.upper():7} {c.id}{t}: {c.witness}")
        s = self.summary
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines)


@dataclass
class Check:
    id: str
    suite: str
    ref: str
    run: object  # callable(n, seed, cfg) -> Verification
    default_trials: int = 0  # 0 marks a purely symbolic check

    @property
    def randomized(self):
        return self.default_trials > 0


def check_seed(seed, ident):
    return seed + zlib.crc32(ident.encode())


# bloch

def _qa():
    from .fields import QQ, function_field

    K = function_field(QQ, ["a"])
    return K, K.gen("a")


def _rand_q(rng, avoid=(0, 1), bound=30):
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x not in avoid:
            return x


def _bloch_relations(n, seed, cfg):
    from .bloch import pointy_relation_check
    from .fields import QQ

    return pointy_relation_check(n, seed=seed, bases=[QQ], with_tame=False)


def _bloch_relations_tower(n, seed, cfg):
    from .bloch import pointy_relation_check
    from .fields import QQ, function_field

    return pointy_relation_check(n, seed=seed, bases=[QQ, function_field(QQ, ["a"])], with_tame=True)


def _bloch_star(n, seed, cfg):
    from .bloch import cathelineau, cathelineau_symbol, param_field, star, symbol, symbol_rho, symbol_tame
    from .fields import QQ

    Qt = param_field(QQ)
    t = Qt.gen("t")
    base = symbol_rho(symbol(t * t, t))
    parts = [Verification("ρ⟨t²,t⟩ = −1", base == QQ(-1), str(base))]
    rng = random.Random(seed)
    K, a = _qa()
    x = cathelineau(a)
    bad = []
    for _ in range(n):
        c = _rand_q(rng, avoid=(0,))
        y = star(c, x)
        if y.rho != c ** 3 * x.rho or y.tame != x.tame.scale(c):
            bad.append(c)
            continue
        s, hints = cathelineau_symbol(a, c)
        if symbol_rho(s) != y.rho or symbol_tame(s, hints) != y.tame:
            bad.append(c)
    parts.append(Verification("c⋆ scaling", not bad, f"c = {bad[0]}" if bad else f"{n} weights"))
    return Verification.combine("star", parts, witness=f"ρ⟨t²,t⟩ = −1; c⋆ cubes ρ for {n} weights")


def _bloch_cathelineau(n, seed, cfg):
    from .bloch import cathelineau_symbol, symbol_rho, symbol_tame
    from .tensor import epsilon

    K, a = _qa()
    s, hints = cathelineau_symbol(a)
    rho, tame = symbol_rho(s), symbol_tame(s, hints)
    want = epsilon(a, K).scale(2)
    parts = [
        Verification("ρ = a(1−a)", rho == a * (1 - a), K.format(rho)),
        Verification("∂ = 2ε(a)", tame == want, tame.format()),
    ]
    return Verification.combine("cathelineau", parts, witness=f"ρ = {K.format(rho)}, ∂ = {tame.format()}")


def _bloch_four_term(n, seed, cfg):
    from .bloch import faux_product_check, four_term_check
    from .fields import QQ, function_field

    K = function_field(QQ, ["a", "b"])
    a, b = K.gen("a"), K.gen("b")
    return Verification.combine("four-term", [four_term_check(a, b, K), faux_product_check(a, b, K)],
                                witness="four-term sum = 0 and X = 1 − (a−b)²t² over Q(a,b)")


def _bloch_four_term_random(n, seed, cfg):
    from .bloch import four_term_check
    from .fields import QQ

    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        a = _rand_q(rng)
        b = _rand_q(rng, avoid=(0, 1, a))
        v = four_term_check(QQ(a), QQ(b), QQ)
        if not v:
            bad.append(f"(a, b) = ({a}, {b}): {v.witness}")
    return Verification("four-term-random", not bad, bad[0] if bad else f"{n} rational pairs")


def _bloch_inversion(n, seed, cfg):
    from .bloch import inversion_check

    K, a = _qa()
    return inversion_check(a, K)


def _bloch_inversion_random(n, seed, cfg):
    from .bloch import inversion_check
    from .fields import QQ

    rng = random.Random(seed)
    bad = [a for a in (_rand_q(rng) for _ in range(n)) if not inversion_check(QQ(a), QQ)]
    return Verification("inversion-random", not bad, f"a = {bad[0]}" if bad else f"{n} rationals")


def _bloch_presentation(n, seed, cfg):
    from .bloch import presentation_relation_check
    from .fields import QQ, function_field

    K = function_field(QQ, ["a", "x", "y", "z", "w"])
    a = K.gen("a")
    ws = [K.gen(v) for v in "xyzw"]
    return presentation_relation_check(ws, a, K)


def _bloch_presentation_random(n, seed, cfg):
    from .bloch import presentation_relation_check
    from .errors import DegenerateWeights
    from .fields import QQ

    rng = random.Random(seed)
    bad = []
    done = 0
    while done < n:
        a = _rand_q(rng)
        ws = [_rand_q(rng, avoid=(0,)) for _ in range(4)]
        try:
            v = presentation_relation_check([QQ(w) for w in ws], QQ(a), QQ)
        except DegenerateWeights:
            continue
        done += 1
        if not v:
            bad.append(f"weights {ws}, a = {a}: {v.witness}")
    return Verification("presentation-random", not bad, bad[0] if bad else f"{n} weight tuples")


def _bloch_entropy(n, seed, cfg):
    from .bloch import entropy_check

    parts = [entropy_check(p) for p in (2, 3)]
    return Verification.combine("entropy", parts,
                                witness="f_p(x) = x^p + (1−x)^p − 1 solves the entropy equation for p = 2, 3; "
                                        "x(1−x) = −(x³+(1−x)³−1)/3")


# lie

_LIE_ARGS = ("a", "1/3", "-2", "a^2/(a+1)", "5/7", "1-a")


def _lie_dsq(n, seed, cfg):
    from .lie import d_squared_zero
    from .parsing import parse_expression

    K, _ = _qa()
    parts = []
    for text in _LIE_ARGS:
        x = parse_expression(text, K)
        for w in range(1, 7):
            parts.append(d_squared_zero(x, w))
    return Verification.combine("d-squared", parts,
                                witness=f"∂∂ = 0 on {{x}}_n and <x>_n, n ≤ 6, {len(_LIE_ARGS)} arguments")


def _lie_weight2(n, seed, cfg):
    from .fields import QQ
    from .lie import angle, evaluate_weight2, lie_boundary
    from .tensor import epsilon

    K, a = _qa()
    got = evaluate_weight2(lie_boundary(angle(a, 2)), K)
    parts = [Verification("∂<a>_2 = ε(a)", got == epsilon(a, K), got.format())]
    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        x = QQ(_rand_q(rng))
        if evaluate_weight2(lie_boundary(angle(x, 2)), QQ) != epsilon(x, QQ):
            bad.append(x)
    parts.append(Verification("rational samples", not bad, f"a = {bad[0]}" if bad else f"{n} rationals"))
    return Verification.combine("weight-2", parts, witness=f"∂<a>_2 evaluates to ε(a); {n} rational samples")


# chow

def _families():
    """The five curve families over generic symbolic parameters."""
    from .chow import standard_curves
    from .fields import QQ, function_field

    Ka = function_field(QQ, ["a"])
    Kx = function_field(QQ, ["x", "xp", "y2"])
    Ki = function_field(QQ, ["x", "y2"])
    Kt = function_field(QQ, ["x0", "y1", "z1"])
    g = Kt.gen
    return {
        "z1": ({"a": Ka.gen("a")}, standard_curves("z1", a=Ka.gen("a"))),
        "z2": ({}, standard_curves("z2")),
        "additivity": ({"x": Kx.gen("x"), "xp": Kx.gen("xp"), "ys": [Kx.gen("y2")]},
                       standard_curves("additivity", x=Kx.gen("x"), xp=Kx.gen("xp"), ys=[Kx.gen("y2")])),
        "inverse": ({"x": Ki.gen("x"), "ys": [Ki.gen("y2")]},
                    standard_curves("inverse", x=Ki.gen("x"), ys=[Ki.gen("y2")])),
        "totaro": ({"x0": g("x0"), "y1": g("y1"), "z1": g("z1")},
                   standard_curves("totaro", x0=g("x0"), y1=g("y1"), z1=g("z1"))),
    }


def _chow_boundaries(n, seed, cfg):
    from .chow import EXAMPLE_SIGN, boundary, displayed_boundary, standard_curves
    from .fields import QQ

    parts = []
    fams = _families()
    fams["totaro-numeric"] = ({"x0": QQ(5), "y1": QQ(2), "z1": QQ(3)},
                              standard_curves("totaro", x0=QQ(5), y1=QQ(2), z1=QQ(3)))
    for name, (params, C) in fams.items():
        kind = name.split("-")[0]
        lit = boundary(C)
        shown = displayed_boundary(kind, **params)
        parts.append(Verification(name, lit == EXAMPLE_SIGN * shown,
                                  f"literal {lit.format()} vs displayed {shown.format()}"))
    return Verification.combine("boundaries", parts,
                                witness=f"all {len(parts)} literal boundaries equal {EXAMPLE_SIGN} × displayed")


def _chow_reciprocity(n, seed, cfg):
    from .chow import cathelineau_cycle, psi_regular_over_x0, verify_reciprocity

    parts = []
    for name, (_, C) in _families().items():
        v = verify_reciprocity(C)
        parts.append(Verification(f"ψ∂ {name}", v.passed, v.witness))
        r = psi_regular_over_x0(C)
        parts.append(Verification(f"regular {name}", r.passed, r.witness))
    _, a = _qa()
    v = verify_reciprocity(cathelineau_cycle(a))
    parts.append(Verification("ψ∂ Z(1−2a)", v.passed, v.witness))
    return Verification.combine("reciprocity", parts,
                                witness="ψ(∂C) = 0 and ψ regular over x = 0 for z1, z2, additivity, inverse, "
                                        "totaro and Z(1−2a)")


def _chow_control(n, seed, cfg):
    from .bloch import param_field
    from .chow import ParamCurve, modulus_check
    from .fields import QQ, function_field

    K = function_field(QQ, ["x"])
    F = param_field(K)
    t = F.gen("t")
    v = modulus_check(ParamCurve(t, [1 - K.gen("x") * t], F), 2).to_verification()
    return Verification("control", not v.passed, f"(t, 1−xt) rejected at m = 2: {v.witness}")


def _chow_bad_cycle(n, seed, cfg):
    from .chow import good_position, modulus_check, standard_curves

    _, a = _qa()
    C = standard_curves("bad", a=a)
    mod = modulus_check(C, 2).to_verification()
    gp = good_position(C)
    ok = mod.passed and not gp.passed and gp.witness == "(1,∞,∞)"
    return Verification("bad-cycle", ok, f"modulus 2: {mod.status}; good position: {gp.status} at {gp.witness}")


def _chow_cathelineau(n, seed, cfg):
    from .chow import cathelineau_cycle_check
    from .fields import QQ

    _, a = _qa()
    return Verification.combine("cathelineau-cycle", [cathelineau_cycle_check(a), cathelineau_cycle_check(QQ(1) / 3)],
                                witness="Z(1−2a) boundary matches; ψ agrees symbolically and at a = 1/3")


def _chow_phi_psi(n, seed, cfg):
    from .chow import phi_psi_check, psi_motivation_check

    parts = [phi_psi_check(k) for k in (1, 2, 3)] + [psi_motivation_check(k) for k in range(4)]
    return Verification.combine("phi-psi", parts, witness="ψ∘φ = id for n = 1, 2, 3; ω/t at t = 0 equals dψ for n ≤ 3")


def _chow_norm(n, seed, cfg):
    from .chow import ZeroCycle, norm_generator, point
    from .fields import QQ, function_field, simple_extension
    from .poly import UPoly

    K = function_field(QQ, ["b"])
    b = K.gen("b")
    kappa = simple_extension(K, "u", UPoly(K, [-2, 0, 1]))
    u = kappa.gen("u")
    cases = [(u, ZeroCycle()), (1 + u, ZeroCycle([(1, point(K, QQ(1) / 2, b))])),
             (kappa(b), ZeroCycle([(1, point(K, 1 / (2 * b), b))]))]
    parts = []
    for a, want in cases:
        N, diagram = norm_generator(kappa, a, [b])
        parts.append(Verification(f"N({kappa.format(a)})", N == want, N.format()))
        parts.append(diagram)
    return Verification.combine("norm", parts, witness="N(1/a, b) as expected and ψ∘N = Tr∘ψ for a = u, 1+u, b")


# artin-schreier

def _as_symbolic(p, which):
    def run(n, seed, cfg):
        from . import artin_schreier as AS

        ctx = AS.ASContext(p)
        if which == "eta-residues":
            return AS.verify_eta_residues(ctx)
        if which == "eta-dlog-delta":
            return AS.verify_eta_dlog_delta(ctx)
        if which == "rho-lift":
            return AS.verify_rho_lift(ctx)
        return Verification.combine(f"monodromy p={p}", [AS.verify_monodromy(ctx, a) for a in range(p)],
                                    witness=f"δ(y+a)/δ(y)·((1−x)/x)^a is a p-th power for all a ∈ Z/{p}")
    return run


_HEIS = ("associativity", "identity", "inverse", "commutator", "central", "projection", "V-action", "torsor")


def _as_heisenberg(p):
    def run(n, seed, cfg):
        from .artin_schreier import heisenberg_checks

        parts = heisenberg_checks(p, n, seed)
        return Verification.combine(f"heisenberg p={p}", parts,
                                    witness=f"{', '.join(_HEIS)}: {n} samples each over F_q[ε]/(ε^{p})")
    return run


def _as_central(p):
    def run(n, seed, cfg):
        from .artin_schreier import central_extension_check

        return central_extension_check(p, n, seed)
    return run


def build_checks(cfg):
    checks = [
        Check("bloch.cathelineau-coordinates", "bloch", "Cathelineau element coordinates", _bloch_cathelineau),
        Check("bloch.entropy", "bloch", "entropy functional equation", _bloch_entropy),
        Check("bloch.four-term", "bloch", "four-term relation and X-identity", _bloch_four_term),
        Check("bloch.four-term-random", "bloch", "four-term relation", _bloch_four_term_random, 100),
        Check("bloch.inversion", "bloch", "inversion", _bloch_inversion),
        Check("bloch.inversion-random", "bloch", "inversion", _bloch_inversion_random, 100),
        Check("bloch.presentation", "bloch", "presentation relations", _bloch_presentation),
        Check("bloch.presentation-random", "bloch", "presentation relations", _bloch_presentation_random, 100),
        Check("bloch.regulator-relations", "bloch", "regulator well-definedness", _bloch_relations, 500),
        Check("bloch.regulator-relations-tower", "bloch", "regulator and tame symbol on relations",
              _bloch_relations_tower, 10),
        Check("bloch.star-scaling", "bloch", "star action cubes the regulator", _bloch_star, 100),
        Check("lie.d-squared", "lie", "co-Lie boundary squares to zero", _lie_dsq),
        Check("lie.weight2-epsilon", "lie", "weight-two evaluation", _lie_weight2, 50),
        Check("chow.bad-cycle", "chow", "modulus without good position", _chow_bad_cycle),
        Check("chow.boundaries", "chow", "boundary of standard curves", _chow_boundaries),
        Check("chow.cathelineau-cycle", "chow", "Cathelineau cycle", _chow_cathelineau),
        Check("chow.modulus-control", "chow", "modulus condition", _chow_control),
        Check("chow.norm", "chow", "norm and trace diagram", _chow_norm),
        Check("chow.phi-psi", "chow", "reciprocity map identification", _chow_phi_psi),
        Check("chow.reciprocity", "chow", "reciprocity and regularity over x = 0", _chow_reciprocity),
    ]
    for p in cfg.primes:
        pre = f"as.p{p}."
        checks += [
            Check(pre + "eta-residues", "as", "residues of eta", _as_symbolic(p, "eta-residues")),
            Check(pre + "eta-dlog-delta", "as", "eta as dlog of delta, Cartier fixed", _as_symbolic(p, "eta-dlog-delta")),
            Check(pre + "rho-lift", "as", "Frobenius lift of rho", _as_symbolic(p, "rho-lift")),
            Check(pre + "monodromy", "as", "p-th power monodromy", _as_symbolic(p, "monodromy")),
            Check(pre + "heisenberg", "as", "Heisenberg group scheme", _as_heisenberg(p), 200),
            Check(pre + "central-extension", "as", "central extension", _as_central(p), 200),
        ]
    chosen = set(cfg.selected())
    return sorted((c for c in checks if c.suite in chosen), key=lambda c: c.id)


def run_check(check, cfg):
    n = cfg.count(check.default_trials) if check.randomized else 0
    if check.randomized and n <= 0:
        return Verification.skip(check.id, "trials = 0")
    try:
        return check.run(n, check_seed(cfg.seed, check.id), cfg)
    except Exception as exc:  # failures are data
        return Verification(check.id, False, f"{type(exc).__name__}: {exc}")


def run_suite(cfg=None):
    cfg = cfg or SuiteConfig()
    from . import chow

    saved = chow.DEGREE_CAP
    chow.DEGREE_CAP = cfg.degree_cap
    results = []
    try:
        for check in build_checks(cfg):
            start = time.perf_counter()
            v = run_check(check, cfg)
            ms = round((time.perf_counter() - start) * 1000, 1) if cfg.timings else None
            results.append(CheckResult(check.id, check.ref, v.status, v.witness, ms))
    finally:
        chow.DEGREE_CAP = saved
    return Report(cfg.echo(), results)


__all__ = ["Check", "CheckResult", "Report", "SuiteConfig", "build_checks", "check_seed", "default_seed",
           "run_check", "run_suite"]
