"""Gcds and factorizations over ℚ and over towers ℚ(x1)...(xn), delegated to sympy.

Euclid over Fraction coefficients swells badly.  Over a tower of pure
transcendental extensions of ℚ we clear denominators, work in
ℚ[x1, ..., xn, T] (Gauss's lemma) and read the result back.
"""

from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ as SQQ
from sympy.polys.euclidtools import dup_gcd
from sympy.polys.rings import ring as sympy_ring

_CTX = {}


def _qq_chain(F):
    """[QQ, F1, ..., F] if F is a pure function-field tower over ℚ, else None."""
    chain = list(reversed(F.tower()))
    if not chain[0].is_rational_field:
        return None
    for G in chain[1:]:
        if not hasattr(G, "var"):
            return None
    return chain


def _context(chain):
    key = tuple(id(G) for G in chain)
    ctx = _CTX.get(key)
    if ctx is None:
        names = [G.var for G in chain[1:]] + ["_T_"]
        R, *gens = sympy_ring(",".join(names), SQQ)
        ctx = _CTX[key] = (R, gens)
    return ctx


def _common(pairs, R):
    """Clear denominators of the pairs (N_i, D_i): return L and [N_i·L/D_i]."""
    L = R.one
    for _, D in pairs:
        if not D.is_ground:
            L = D if L.is_one else L.lcm(D)
    out = []
    for N, D in pairs:
        if D.is_ground:
            out.append((N * L).quo_ground(D.LC))
        else:
            out.append(N * L.exquo(D))
    return L, out


def _lift(x, chain, level, R, gens):
    """(N, D) in R with x = N / D."""
    if level == 0:
        return R(SQQ(x.numerator, x.denominator)), R.one
    v = gens[level - 1]
    Ln, ns = _common([_lift(c, chain, level - 1, R, gens) for c in x.num.coeffs], R)
    num = R.zero
    for c in reversed(ns):
        num = num * v + c
    if x.den.degree == 0:
        Ld, (den,) = _common([_lift(x.den.coeffs[0], chain, level - 1, R, gens)], R)
        return num * Ld, den * Ln
    Ld, ds = _common([_lift(c, chain, level - 1, R, gens) for c in x.den.coeffs], R)
    den = R.zero
    for c in reversed(ds):
        den = den * v + c
    return num * Ld, den * Ln


def _from_terms(terms, chain, level):
    """Element of chain[level] from {exponent tuple: rational} over its variables."""
    if level == 0:
        return sum((Fraction(int(c.numerator), int(c.denominator)) for c in terms.values()), Fraction(0))
    F = chain[level]
    groups = {}
    for mon, c in terms.items():
        groups.setdefault(mon[-1], {})[mon[:-1]] = c
    top = max(groups)
    sub = chain[level - 1]
    coeffs = [sub.zero] * (top + 1)
    for e, inner in groups.items():
        coeffs[e] = _from_terms(inner, chain, level - 1)
    from .poly import UPoly

    return F.from_polys(UPoly(F.base, coeffs, _trusted=True))


def gcd_qq(f, g):
    a = [SQQ(c.numerator, c.denominator) for c in reversed(f.coeffs)]
    b = [SQQ(c.numerator, c.denominator) for c in reversed(g.coeffs)]
    h = dup_gcd(a, b, SQQ)
    return [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(h)]


def gcd_tower(f, g, chain):
    """Monic gcd coefficients (low first) of f, g over the tower top."""
    n = len(chain) - 1
    R, gens = _context(chain)
    lift = _lift_upoly
    return _monic_from_ring(lift(f, chain, n, R, gens).gcd(lift(g, chain, n, R, gens)), chain, n)


def _lift_upoly(p, chain, n, R, gens):
    T = gens[-1]
    _, cs = _common([_lift(c, chain, n, R, gens) for c in p.coeffs], R)
    acc = R.zero
    for c in reversed(cs):
        acc = acc * T + c
    return acc


def _monic_from_ring(h, chain, n):
    byT = {}
    for mon, c in h.terms():
        byT.setdefault(mon[-1], {})[mon[:-1]] = c
    top = max(byT)
    F = chain[-1]
    coeffs = [F.zero] * (top + 1)
    for e, inner in byT.items():
        coeffs[e] = _from_terms(inner, chain, n)
    inv = F.one / coeffs[-1]
    return [c * inv for c in coeffs]


def factor_tower(f, chain):
    """Monic irreducible factors of f over the tower top: [(coeffs, exponent)]."""
    n = len(chain) - 1
    R, gens = _context(chain)
    _, facs = _lift_upoly(f, chain, n, R, gens).factor_list()
    out = []
    for h, e in facs:
        if h.degree(gens[-1]) > 0:
            out.append((_monic_from_ring(h, chain, n), e))
    return out
