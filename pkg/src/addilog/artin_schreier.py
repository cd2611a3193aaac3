"""Characteristic-p Artin–Schreier dilogarithm data.

Over F_q = F_p[β]/(βᵖ − β − 1) with y a root of yᵖ − y = x, this module
builds δ(y), the closed form η, checks their relation through dlog and the
Cartier operator, and tests the p-th power monodromy of δ.  It also models
the Heisenberg group scheme ℋ_AS through its points in truncated rings
F_q[ε]/(ε^N), N ≤ p, together with its action on 𝕍 and on torsor words.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import LevelMismatch, RingMismatch
from .fields import artin_schreier_field, rational_function_field
from .forms import DifferentialForm, cartier, differential, dlog, pi_dlog
from .rational import Place, is_pth_power, ord_at, places_of, residue_at
from .report import Verification
from .tensor import TensorElement, epsilon


class ASContext:
    """F_q(y) with x = yᵖ − y and the fixed root β of Xᵖ − X − 1."""

    def __init__(self, p):
        self.p = p
        self.Fq = artin_schreier_field(p)
        self.F = rational_function_field(self.Fq, "y")
        self.y = self.F.gen("y")
        self.beta = self.F(self.Fq.gen("beta"))
        self.x = self.y ** p - self.y
        b = self.Fq.gen("beta")
        assert b ** p - b == self.Fq.one

    def shift(self, r, a):
        """r(y + a)."""
        return self.F.substitute(r, self.y + a)

    def __repr__(self):
        return f"ASContext(p={self.p})"


def delta(ctx):
    """δ(y) = ∏_{a=1}^{p−1} ((β − y − a)/(y + a))^a."""
    out = ctx.F.one
    for a in range(1, ctx.p):
        out = out * ((ctx.beta - ctx.y - a) / (ctx.y + a)) ** a
    return out


def eta(ctx):
    """η = (βx − y) dy / (x(1 − x))."""
    x, y = ctx.x, ctx.y
    coeff = (ctx.beta * x - y) / (x * (1 - x))
    return DifferentialForm(ctx.F, {(0,): coeff})


def eta_residues(ctx):
    """Residues of η at y = a and y = β − a for a ∈ F_p, and the order at ∞."""
    f = eta(ctx).terms[(0,)]
    K = ctx.Fq
    at_a = {a: residue_at(f, Place.at(K, a)) for a in range(ctx.p)}
    at_beta = {a: residue_at(f, Place.at(K, K.gen("beta") - a)) for a in range(ctx.p)}
    # f dy at infinity: with y = 1/s, dy = −ds/s²
    order_inf = ord_at(f, Place.infinity(K)) - 2
    total = K.zero
    for place, _ in places_of(f):
        total = total + residue_at(f, place)
    total = total + residue_at(f, Place.infinity(K))
    return at_a, at_beta, order_inf, total


def verify_eta_residues(ctx):
    at_a, at_beta, order_inf, total = eta_residues(ctx)
    K = ctx.Fq
    ok_a = all(at_a[a] == K(a) for a in at_a)
    ok_b = all(at_beta[a] == K(a) for a in at_beta)
    ok = ok_a and ok_b and order_inf >= 0 and not total
    fmt = K.format
    witness = (
        "res(y−a) = " + ", ".join(fmt(at_a[a]) for a in sorted(at_a))
        + "; res(y−(β−a)) = " + ", ".join(fmt(at_beta[a]) for a in sorted(at_beta))
        + f"; ord∞ = {order_inf}; Σ res = {fmt(total)}"
    )
    return Verification("eta-residues", ok, witness)


def verify_eta_dlog_delta(ctx):
    e = eta(ctx)
    d = dlog(delta(ctx), ctx.F)
    parts = [
        Verification("η = dlog δ", e == d, (e - d).format()),
        Verification("dη = 0", e.exterior_derivative().is_zero(), e.exterior_derivative().format()),
        Verification("C(η) = η", cartier(e) == e, (cartier(e) - e).format()),
    ]
    return Verification.combine("eta-dlog-delta", parts, witness="η = dlog δ, dη = 0, C(η) = η")


def rho_lift_form(ctx):
    """yᵖ·dx/x − (β − y)ᵖ·dx/(1 − x)."""
    F, x, y, p = ctx.F, ctx.x, ctx.y, ctx.p
    dx = differential(x, F)
    return dx.scale(y ** p / x) - dx.scale((ctx.beta - y) ** p / (1 - x))


def verify_rho_lift(ctx):
    F, x, y, p = ctx.F, ctx.x, ctx.y, ctx.p
    b = ctx.beta - y
    lifted = pi_dlog(TensorElement.from_terms(F, [(y ** p, x), (b ** p, 1 - x)]))
    displayed = rho_lift_form(ctx)
    e = eta(ctx)
    frob_minus_one = TensorElement.from_terms(F, [(y ** p - y, x), (b ** p - b, 1 - x)])
    eps = epsilon(x, F)
    parts = [
        Verification("φ(F⊗1)ρ = displayed", lifted == displayed, (lifted - displayed).format()),
        Verification("φ(F⊗1)ρ = η", lifted == e, (lifted - e).format()),
        Verification("(F⊗1−1)ρ = ε(x)", frob_minus_one == eps, (frob_minus_one - eps).format()),
        Verification("φ(ε(x)) = 0", pi_dlog(eps).is_zero(), pi_dlog(eps).format()),
    ]
    return Verification.combine("rho-lift", parts, witness="φ(F⊗1)ρ(y) = η and φ(ε(x)) = 0")


def monodromy_defect(ctx, a):
    """δ(y + a) · δ(y)⁻¹ · ((1 − x)/x)^a."""
    d = delta(ctx)
    return ctx.shift(d, a) / d * ((1 - ctx.x) / ctx.x) ** a


def verify_monodromy(ctx, a):
    a %= ctx.p
    r = monodromy_defect(ctx, a)
    test = is_pth_power(r)
    if not test:
        return Verification(f"monodromy a={a}", False, f"{ctx.F.format(r)} is not a p-th power")
    ok = test.witness ** ctx.p == r
    return Verification(f"monodromy a={a}", ok, f"defect = ({ctx.F.format(test.witness)})^{ctx.p}",
                        {"witness": test.witness})


# truncated rings and μ_p points

class MuRing:
    """F_q[ε]/(ε^N)."""

    def __init__(self, K, N):
        if N < 1:
            raise ValueError("the truncation order is positive")
        self.K = K
        self.N = N
        self.p = K.characteristic
        self.one = MuElt(self, (K.one,) + (K.zero,) * (N - 1))
        self.zero = MuElt(self, (K.zero,) * N)

    def __call__(self, coeffs):
        coeffs = [self.K(c) for c in coeffs][: self.N]
        coeffs += [self.K.zero] * (self.N - len(coeffs))
        return MuElt(self, tuple(coeffs))

    def eps(self):
        return self([0, 1])

    def random_mu(self, rng):
        """A random point 1 + n of μ_p (n nilpotent; nᵖ = 0 since N ≤ p)."""
        return self([self.K.one] + [self.K.random_element(rng) for _ in range(self.N - 1)])

    def __repr__(self):
        return f"MuRing({self.K.descriptor()}[ε]/(ε^{self.N}))"


class MuElt:
    __slots__ = ("ring", "c")

    def __init__(self, ring, c):
        self.ring = ring
        self.c = c

    def _check(self, other):
        if other.ring is not self.ring:
            raise RingMismatch(f"{other.ring} differs from {self.ring}")

    def __add__(self, other):
        self._check(other)
        return MuElt(self.ring, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        self._check(other)
        return MuElt(self.ring, tuple(a - b for a, b in zip(self.c, other.c)))

    def __mul__(self, other):
        self._check(other)
        N = self.ring.N
        K = self.ring.K
        out = [K.zero] * N
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j in range(N - i):
                b = other.c[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return MuElt(self.ring, tuple(out))

    def inverse(self):
        K = self.ring.K
        if not self.c[0]:
            raise ZeroDivisionError("not a unit of the truncated ring")
        u0 = K.one / self.c[0]
        # 1/(u0(1 + n)) = u0⁻¹ Σ (−n)^k
        n = MuElt(self.ring, (K.zero,) + tuple(c * u0 for c in self.c[1:]))
        minus_n = MuElt(self.ring, tuple(-c for c in n.c))
        acc = self.ring.one
        term = self.ring.one
        for _ in range(1, self.ring.N):
            term = term * minus_n
            acc = acc + term
        return MuElt(self.ring, tuple(c * u0 for c in acc.c))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ring.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, MuElt) and other.ring is self.ring and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def is_one(self):
        return self == self.ring.one

    def format(self):
        K = self.ring.K
        parts = []
        for i, c in enumerate(self.c):
            if not c:
                continue
            mono = "" if i == 0 else "ε" if i == 1 else f"ε^{i}"
            s = K.format(c)
            if mono:
                s = mono if s == "1" else f"({s})*{mono}"
            parts.append(s)
        return " + ".join(parts) or "0"

    def __repr__(self):
        return self.format()


def _in_mu_p(z):
    return (z ** z.ring.p).is_one()


# the Heisenberg group scheme

@dataclass(frozen=True)
class HeisenbergElement:
    zeta: MuElt
    theta: MuElt
    a: int

    def __post_init__(self):
        if self.zeta.ring is not self.theta.ring:
            raise RingMismatch("ζ and θ come from different rings")
        p = self.zeta.ring.p
        object.__setattr__(self, "a", self.a % p)
        if not _in_mu_p(self.zeta) or not _in_mu_p(self.theta):
            raise ValueError("ζ and θ must satisfy ζᵖ = θᵖ = 1")

    @property
    def ring(self):
        return self.zeta.ring

    @classmethod
    def identity(cls, ring):
        return cls(ring.one, ring.one, 0)

    @classmethod
    def random(cls, ring, rng):
        return cls(ring.random_mu(rng), ring.random_mu(rng), rng.randrange(ring.p))

    def format(self):
        return f"({self.zeta.format()}, {self.theta.format()}, {self.a})"


def _same_ring(*objs):
    rings = {id(o.ring) for o in objs}
    if len(rings) > 1:
        raise RingMismatch("elements come from different truncated rings")


def heisenberg_mul(g, h):
    """(ζ₁, θ₁, a₁)·(ζ₂, θ₂, a₂) = (ζ₁ζ₂θ₂^{a₁}, θ₁θ₂, a₁ + a₂)."""
    _same_ring(g, h)
    return HeisenbergElement(g.zeta * h.zeta * h.theta ** g.a, g.theta * h.theta, g.a + h.a)


def heisenberg_inverse(g):
    """(ζ⁻¹θ^a, θ⁻¹, −a)."""
    return HeisenbergElement(g.zeta.inverse() * g.theta ** g.a, g.theta.inverse(), -g.a)


def commutator(g, h):
    """g h g⁻¹ h⁻¹ computed in the group."""
    return heisenberg_mul(heisenberg_mul(g, h), heisenberg_mul(heisenberg_inverse(g), heisenberg_inverse(h)))


def pairing(g, h):
    """b((θ₁, a₁), (θ₂, a₂)) = θ₁^{−a₂} θ₂^{a₁}."""
    _same_ring(g, h)
    return g.theta ** (-h.a) * h.theta ** g.a


def heisenberg_commutator(g, h):
    c = commutator(g, h)
    expected = HeisenbergElement(pairing(g, h), g.ring.one, 0)
    if c != expected:
        raise AssertionError(f"commutator {c.format()} differs from the pairing {expected.format()}")
    return c


@dataclass(frozen=True)
class VElement:
    v1: MuElt
    v2: MuElt
    v3: int

    def __post_init__(self):
        if self.v1.ring is not self.v2.ring:
            raise RingMismatch("𝕍 coordinates come from different rings")
        object.__setattr__(self, "v3", self.v3 % self.v1.ring.p)

    @property
    def ring(self):
        return self.v1.ring

    @classmethod
    def random(cls, ring, rng):
        return cls(ring.random_mu(rng), ring.random_mu(rng), rng.randrange(ring.p))


def action_on_V(g, v):
    """(v₁ v₂^a ζ^{v₃}, v₂ θ^{v₃}, v₃)."""
    _same_ring(g, v)
    return VElement(v.v1 * v.v2 ** g.a * g.zeta ** v.v3, v.v2 * g.theta ** v.v3, v.v3)


# torsor words

@dataclass(frozen=True)
class TorsorWord:
    """(zc·z·w^e, wc·w, y + level) with zᵖ ≐ δ(y) and wᵖ ≐ x/(1 − x)."""

    ctx: ASContext
    zc: MuElt
    e: int
    wc: MuElt
    level: int

    def __post_init__(self):
        if self.zc.ring is not self.wc.ring:
            raise RingMismatch("torsor coefficients come from different rings")
        if (self.e - self.level) % self.ctx.p:
            raise LevelMismatch(f"w-exponent {self.e} does not match level y + {self.level}")
        object.__setattr__(self, "level", self.level % self.ctx.p)

    @property
    def ring(self):
        return self.zc.ring

    @classmethod
    def base_word(cls, ctx, ring):
        return cls(ctx, ring.one, 0, ring.one, 0)

    def z_pth_power(self):
        """Recorded p-th power of the z-slot: δ(y)·(x/(1 − x))^e."""
        c = self.ctx
        return delta(c) * (c.x / (1 - c.x)) ** self.e

    def format(self):
        return f"(({self.zc.format()})·z·w^{self.e}, ({self.wc.format()})·w, y + {self.level})"


def torsor_action(g, word):
    """(ζ, θ, a) ⋆ (z, w, y) = (ζ z w^a, θ w, y + a)."""
    _same_ring(g, word)
    return TorsorWord(word.ctx, g.zeta * word.zc * word.wc ** g.a, word.e + g.a, g.theta * word.wc,
                      word.level + g.a)


def torsor_words_agree(u, v):
    """Equal coefficients and level, and z-slot p-th powers equal modulo p-th powers."""
    if u.zc != v.zc or u.wc != v.wc or u.level != v.level:
        return False, None
    test = is_pth_power(u.z_pth_power() / v.z_pth_power())
    return test.holds, test.witness


def torsor_closure(word):
    """The z-slot p-th power agrees with δ(y + level) up to a verified p-th power."""
    c = word.ctx
    test = is_pth_power(word.z_pth_power() / c.shift(delta(c), word.level))
    return test


# suites

def heisenberg_checks(p, trials=200, seed=0, N=None):
    """Randomized group-scheme checks over F_q[ε]/(ε^N)."""
    ctx = ASContext(p)
    ring = MuRing(ctx.Fq, N or p)
    rng = random.Random(seed)
    e = HeisenbergElement.identity(ring)
    fails = {k: 0 for k in ("associativity", "identity", "inverse", "commutator", "central", "projection",
                            "V-action", "torsor")}
    word0 = TorsorWord.base_word(ctx, ring)
    for _ in range(trials):
        g, h, k = (HeisenbergElement.random(ring, rng) for _ in range(3))
        if heisenberg_mul(heisenberg_mul(g, h), k) != heisenberg_mul(g, heisenberg_mul(h, k)):
            fails["associativity"] += 1
        if heisenberg_mul(e, g) != g or heisenberg_mul(g, e) != g:
            fails["identity"] += 1
        if heisenberg_mul(g, heisenberg_inverse(g)) != e or heisenberg_mul(heisenberg_inverse(g), g) != e:
            fails["inverse"] += 1
        if commutator(g, h) != HeisenbergElement(pairing(g, h), ring.one, 0):
            fails["commutator"] += 1
        z = HeisenbergElement(ring.random_mu(rng), ring.one, 0)
        if heisenberg_mul(z, g) != heisenberg_mul(g, z):
            fails["central"] += 1
        gh = heisenberg_mul(g, h)
        if (gh.theta, gh.a) != (g.theta * h.theta, (g.a + h.a) % p):
            fails["projection"] += 1
        v = VElement.random(ring, rng)
        if action_on_V(gh, v) != action_on_V(g, action_on_V(h, v)):
            fails["V-action"] += 1
        word = torsor_action(k, word0)
        ok, _ = torsor_words_agree(torsor_action(gh, word), torsor_action(g, torsor_action(h, word)))
        if not ok:
            fails["torsor"] += 1
    return [
        Verification(f"heisenberg-{name} p={p}", not n,
                     f"{trials - n}/{trials} samples" if not n else f"{n} failing samples", {"trials": trials})
        for name, n in fails.items()
    ]


def central_extension_check(p, trials=200, seed=0):
    """0 → μ_p → ℋ_AS → μ_p × ℤ/p → 0 on sampled points.

    ι(ζ) = (ζ, 1, 0) and π(ζ, θ, a) = (θ, a).  Checked: ι and π are
    homomorphisms, ι has central image, π∘ι is trivial, π has the section
    (θ, a) ↦ (1, θ, a), and every g with π(g) trivial equals ι(ζ_g).
    """
    ctx = ASContext(p)
    ring = MuRing(ctx.Fq, p)
    rng = random.Random(seed)
    bad = []

    def iota(z):
        return HeisenbergElement(z, ring.one, 0)

    def proj(g):
        return g.theta, g.a

    eps = ring.one + ring.eps()
    for _ in range(trials):
        z1, z2 = ring.random_mu(rng), ring.random_mu(rng)
        g, h = HeisenbergElement.random(ring, rng), HeisenbergElement.random(ring, rng)
        if heisenberg_mul(iota(z1), iota(z2)) != iota(z1 * z2):
            bad.append("ι is not a homomorphism")
        for z in (z1, eps):
            if heisenberg_mul(iota(z), g) != heisenberg_mul(g, iota(z)):
                bad.append(f"ι({z.format()}) does not commute with {g.format()}")
        if proj(iota(z1)) != (ring.one, 0):
            bad.append("π∘ι is not trivial")
        gh = heisenberg_mul(g, h)
        if proj(gh) != (g.theta * h.theta, (g.a + h.a) % p):
            bad.append("π is not a homomorphism")
        if proj(HeisenbergElement(ring.one, g.theta, g.a)) != proj(g):
            bad.append("π has no section through (1, θ, a)")
        k = heisenberg_mul(g, heisenberg_inverse(HeisenbergElement(ring.one, g.theta, g.a)))
        if proj(k) != (ring.one, 0) or k != iota(k.zeta):
            bad.append(f"kernel element {k.format()} is not in the ζ-slot")
    if bad:
        return Verification(f"central-extension p={p}", False, bad[0], {"failures": len(bad)})
    return Verification(f"central-extension p={p}", True, f"{trials} samples")


def as_suite(p, trials=200, seed=0):
    ctx = ASContext(p)
    out = [
        verify_eta_residues(ctx),
        verify_eta_dlog_delta(ctx),
        verify_rho_lift(ctx),
        Verification.combine(f"monodromy p={p}", [verify_monodromy(ctx, a) for a in range(p)],
                             witness=f"defect is a p-th power for all a ∈ ℤ/{p}"),
    ]
    if trials:
        out.extend(heisenberg_checks(p, trials, seed))
        out.append(central_extension_check(p, trials, seed))
    return out


__all__ = [
    "ASContext",
    "HeisenbergElement",
    "MuElt",
    "MuRing",
    "TorsorWord",
    "VElement",
    "action_on_V",
    "as_suite",
    "central_extension_check",
    "commutator",
    "delta",
    "eta",
    "eta_residues",
    "heisenberg_checks",
    "heisenberg_commutator",
    "heisenberg_inverse",
    "heisenberg_mul",
    "monodromy_defect",
    "pairing",
    "rho_lift_form",
    "torsor_action",
    "torsor_closure",
    "torsor_words_agree",
    "verify_eta_dlog_delta",
    "verify_eta_residues",
    "verify_monodromy",
    "verify_rho_lift",
]
