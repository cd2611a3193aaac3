"""Dense univariate polynomials over any field of the tower, with gcds,
squarefree decomposition and factorization.

Coefficients are stored low degree first and are elements of ``field``
(``Fraction`` for the rationals).  Instances are immutable.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DivisionByZero, UnsupportedFactorization, ZeroInput


class UPoly:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs=(), _trusted=False):
        if not _trusted:
            coeffs = [field(c) for c in coeffs]
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    # constructors
    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one], _trusted=True)

    @classmethod
    def monomial(cls, field, c, n):
        return cls(field, [field.zero] * n + [field(c)], _trusted=True)

    def _make(self, coeffs):
        return UPoly(self.field, coeffs, _trusted=True)

    # basic queries
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.field is other.field and self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.field), self.coeffs))
        return self._hash

    def __repr__(self):
        return f"UPoly({self.format('X')})"

    # arithmetic
    def _lift(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly(self.field, [other])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._make(out)

    __radd__ = __add__

    def __neg__(self):
        return self._make([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            other = self.field(other)
            if not other:
                return self._make(())
            return self._make([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._make(())
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return self._make(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = UPoly(self.field, [self.field.one], _trusted=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if not other:
            raise DivisionByZero("polynomial division by zero")
        if self.degree < other.degree:
            return self._make(()), self
        rem = list(self.coeffs)
        db = other.degree
        inv = self.field.one / other.lc
        q = [self.field.zero] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv
            q[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - c * bc[j]
        return self._make(q), self._make(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other):
        return not (other % self)

    def monic(self):
        if not self.coeffs:
            return self
        if self.lc == self.field.one:
            return self
        inv = self.field.one / self.lc
        return self._make([c * inv for c in self.coeffs])

    def derivative(self):
        return self._make([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; ``x`` may live in any field containing the coefficients."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return x * 0 if not isinstance(x, (int, Fraction)) else self.field.zero
        # force the result into the larger field when x lives there
        return acc + x * 0

    def compose(self, other):
        acc = self._make(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, c):
        """Return f(X + c)."""
        return self.compose(UPoly(self.field, [c, self.field.one]))

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return UPoly(field, [fn(c) for c in self.coeffs], _trusted=field is self.field)

    def reverse(self, n=None):
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return UPoly(self.field, cs[::-1], _trusted=True)

    def powmod(self, e, mod):
        result = UPoly(self.field, [self.field.one], _trusted=True) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def content_free(self):
        return self.monic()

    def format(self, var="t"):
        fmt = self.field.format
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            s = fmt(c)
            neg = s.startswith("-") and not _has_top_level_sum(s[1:])
            if neg:
                s = s[1:]
            if i == 0:
                body = s
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if s == "1":
                    body = mono
                elif _needs_parens(s):
                    body = f"({s})*{mono}"
                else:
                    body = f"{s}*{mono}"
            terms.append((neg, body))
        neg, body = terms[0]
        out = "-" + body if neg else body
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out


def _has_top_level_sum(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0 and s[i - 1] == " ":
            return True
    return False


def _needs_parens(s):
    body = s[1:] if s.startswith("-") else s
    return _has_top_level_sum(body) or "/" in body


# gcd machinery

def poly_gcd(f, g):
    if not g:
        return f.monic()
    if not f:
        return g.monic()
    if f.degree == 0 or g.degree == 0:
        return UPoly(f.field, [f.field.one], _trusted=True)
    if f.degree == 1 or g.degree == 1:
        lin, other = (f, g) if f.degree == 1 else (g, f)
        lin = lin.monic()
        if other(-lin.coeffs[0]):
            return UPoly(f.field, [f.field.one], _trusted=True)
        return lin
    fast = _fast_gcd(f, g)
    if fast is not None:
        return UPoly(f.field, fast, _trusted=True)
    while g:
        f, g = g, f % g
    return f.monic()


def _has_full_factorization(K):
    if getattr(K, "is_finite", False) or getattr(K, "is_rational_field", False):
        return True
    from . import _sympy_bridge

    return _sympy_bridge._qq_chain(K) is not None


def _fast_gcd(f, g):
    K = f.field
    if K.is_finite:
        return None
    from . import _sympy_bridge

    if K.is_rational_field:
        return _sympy_bridge.gcd_qq(f, g)
    chain = _sympy_bridge._qq_chain(K)
    if chain is None:
        return None
    return _sympy_bridge.gcd_tower(f, g, chain)


def poly_xgcd(f, g):
    """Return (d, s, t) with d = s*f + t*g monic."""
    K = f.field
    one = UPoly(K, [K.one], _trusted=True)
    zero = UPoly(K, (), _trusted=True)
    r0, r1 = f, g
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = K.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(f, g):
    return (f * g).exact_div(poly_gcd(f, g)).monic()


def squarefree_decomposition(f):
    """Return [(g_i, i)] with f = lc * prod g_i^i, g_i monic squarefree and pairwise coprime.

    Characteristic p is handled when the coefficient field can take p-th
    roots (perfect fields).
    """
    if not f:
        raise ZeroInput("squarefree decomposition of zero")
    K = f.field
    f = f.monic()
    if f.degree < 1:
        return []
    p = K.characteristic
    out = []
    fp = f.derivative()
    if not fp:
        if not hasattr(K, "pth_root"):
            raise UnsupportedFactorization("squarefree", K)
        root = _poly_pth_root(f)
        return [(g, m * p) for g, m in squarefree_decomposition(root)]
    c = poly_gcd(f, fp)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        if p == 0:  # pragma: no cover - impossible in characteristic zero
            raise ArithmeticError("squarefree decomposition failed")
        if not hasattr(K, "pth_root"):
            raise UnsupportedFactorization("squarefree", K)
        root = _poly_pth_root(c)
        out.extend((g, m * p) for g, m in squarefree_decomposition(root))
    return _merge_powers(out)


def _merge_powers(pairs):
    acc = {}
    for g, m in pairs:
        acc[m] = acc[m] * g if m in acc else g
    return sorted(((g.monic(), m) for m, g in acc.items()), key=lambda gm: gm[1])


def _poly_pth_root(f):
    K = f.field
    p = K.characteristic
    cs = f.coeffs
    if any(cs[i] for i in range(len(cs)) if i % p):
        raise ArithmeticError("polynomial is not a p-th power")
    return UPoly(K, [K.pth_root(cs[i]) for i in range(0, len(cs), p)], _trusted=True)


def gcd_free_basis(polys):
    """Pairwise coprime monic basis B such that every input is a product of powers of B."""
    basis = []
    for f in polys:
        f = f.monic()
        if f.degree < 1:
            continue
        pending = [f]
        while pending:
            g = pending.pop()
            if g.degree < 1:
                continue
            for idx, b in enumerate(basis):
                h = poly_gcd(g, b)
                if h.degree > 0:
                    basis.pop(idx)
                    rest = [b.exact_div(h).monic(), g.exact_div(h).monic(), h]
                    pending.extend(r for r in rest if r.degree > 0)
                    break
            else:
                basis.append(g)
    return sorted(set(basis), key=_poly_sort_key)


def _poly_sort_key(f):
    return (f.degree, f.format("X"))


def express_in_basis(f, basis):
    """Write monic f as prod b^e over a gcd-free basis; return ({b: e}, leftover)."""
    out = {}
    for b in basis:
        e = 0
        while f.degree >= b.degree:
            q, r = divmod(f, b)
            if r:
                break
            f = q
            e += 1
        if e:
            out[b] = e
    return out, f


# finite fields

def _rng(seed=0x5eed):
    return random.Random(seed)


def is_irreducible(f):
    """Irreducibility test over a finite field (Rabin) or over the rationals."""
    K = f.field
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    if getattr(K, "is_finite", False):
        return _rabin(f)
    if getattr(K, "is_rational_field", False):
        fs = factor_rational(f)[1]
        return len(fs) == 1 and fs[0][1] == 1
    raise UnsupportedFactorization("irreducibility", K)


def _prime_divisors(n):
    from sympy import factorint

    return sorted(factorint(n))


def _rabin(f):
    K = f.field
    q = K.order
    n = f.degree
    f = f.monic()
    x = UPoly.x(K)
    for r in _prime_divisors(n):
        h = x.powmod(q ** (n // r), f) - x
        if poly_gcd(f, h).degree > 0:
            return False
    return not ((x.powmod(q ** n, f) - x) % f)


def distinct_degree(f):
    """Distinct-degree factorization of a monic squarefree polynomial over F_q."""
    K = f.field
    q = K.order
    x = UPoly.x(K)
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def equal_degree(f, d, rng):
    """Cantor-Zassenhaus splitting of f, a product of irreducibles of degree d."""
    if f.degree == d:
        return [f.monic()]
    K = f.field
    q = K.order
    p = K.characteristic
    n = f.degree
    while True:
        a = UPoly(K, [K.random_element(rng) for _ in range(n)], _trusted=True)
        if a.degree < 1:
            continue
        if p == 2:
            k = q.bit_length() - 1
            term = a % f
            acc = term
            for _ in range(k * d - 1):
                term = (term * term) % f
                acc = acc + term
            b = acc
        else:
            b = a.powmod((q ** d - 1) // 2, f) - UPoly.const(K, K.one)
        g = poly_gcd(f, b)
        if 0 < g.degree < n:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor_finite(f, rng=None):
    """Full factorization over F_q: (unit, [(monic irreducible, exponent)])."""
    rng = rng or _rng()
    unit = f.lc
    out = []
    for g, m in squarefree_decomposition(f):
        for part, d in distinct_degree(g):
            for h in equal_degree(part, d, rng):
                out.append((h.monic(), m))
    return unit, _sorted_factors(out)


def _sorted_factors(pairs):
    acc = {}
    for g, m in pairs:
        acc[g] = acc.get(g, 0) + m
    return sorted(acc.items(), key=lambda gm: _poly_sort_key(gm[0]))


# the rationals

def factor_rational(f):
    """Full factorization over Q, delegated to sympy's integer factorization."""
    from sympy import Poly, QQ as SQQ, Symbol

    X = Symbol("X")
    sp = Poly([SQQ(c.numerator, c.denominator) for c in reversed(f.coeffs)], X, domain=SQQ)
    unit, pieces = sp.factor_list()
    K = f.field
    out = []
    for piece, m in pieces:
        cs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(piece.all_coeffs())]
        g = UPoly(K, cs)
        out.append((g.monic(), m))
    return f.lc, _sorted_factors(out)


def factor_univariate(f, mode="full", generators=()):
    """Factor ``f``: returns (unit, [(monic factor, exponent)]).

    Modes:
      * ``full`` -- irreducible factors over finite fields, Q and towers Q(x1)...(xn).
      * ``squarefree`` -- pairwise coprime squarefree parts.
      * ``gcd_free`` -- refinement of the supplied generating set; the part of
        ``f`` not covered by the generators is kept as one extra factor.
    """
    if not f:
        raise ZeroInput("cannot factor the zero polynomial")
    K = f.field
    if f.degree < 1:
        return f.lc, []
    if mode == "full":
        if getattr(K, "is_finite", False):
            return factor_finite(f)
        if getattr(K, "is_rational_field", False):
            return factor_rational(f)
        from . import _sympy_bridge

        chain = _sympy_bridge._qq_chain(K)
        if chain is None:
            raise UnsupportedFactorization(mode, K)
        facs = [(UPoly(K, cs, _trusted=True), e) for cs, e in _sympy_bridge.factor_tower(f, chain)]
        return f.lc, _sorted_factors(facs)
    if mode == "squarefree":
        return f.lc, squarefree_decomposition(f)
    if mode == "gcd_free":
        gens = [UPoly(K, g.coeffs, _trusted=True) if isinstance(g, UPoly) else g for g in generators]
        basis = gcd_free_basis(list(gens) + [f])
        exps, rest = express_in_basis(f.monic(), basis)
        out = list(exps.items())
        if rest.degree > 0:
            out.append((rest.monic(), 1))
        return f.lc, _sorted_factors(out)
    raise ValueError(f"unknown factorization mode {mode!r}")


def poly_sqrt(f):
    """Square root of f in K[X] if f is a perfect square, else None (char != 2)."""
    K = f.field
    if not f:
        return f
    if f.degree % 2:
        return None
    lc_root = K.sqrt(f.lc)
    if lc_root is None:
        return None
    n = f.degree // 2
    s = [K.zero] * (n + 1)
    s[n] = lc_root
    two_lead = lc_root * 2
    if not two_lead:
        return None
    for k in range(n - 1, -1, -1):
        acc = f[n + k]
        for i in range(k + 1, n):
            j = n + k - i
            if k < j <= n:
                acc = acc - s[i] * s[j]
        s[k] = acc / two_lead
    root = UPoly(K, s, _trusted=True)
    return root if root * root == f else None


def linear_roots(f, hints=()):
    """Split off linear factors of f over its coefficient field.

    Returns (roots, rest): ``roots`` maps each root to its multiplicity and
    ``rest`` is the cofactor left unsplit.  Hints are candidate roots that
    are checked by substitution before use.
    """
    K = f.field
    roots = {}
    rest = f.monic()
    for r in hints:
        r = K(r)
        lin = UPoly(K, [-r, K.one], _trusted=True)
        while rest.degree >= 1 and not rest(r):
            rest = rest.exact_div(lin)
            roots[r] = roots.get(r, 0) + 1
    if rest.degree < 1:
        return roots, rest
    if _has_full_factorization(K):
        _, facs = factor_univariate(rest, "full")
        left = UPoly(K, [K.one], _trusted=True)
        for g, m in facs:
            if g.degree == 1:
                r = -g[0]
                roots[r] = roots.get(r, 0) + m
            else:
                left = left * g ** m
        return roots, left
    left = UPoly(K, [K.one], _trusted=True)
    for g, m in squarefree_decomposition(rest):
        for piece in _split_generic(g):
            if piece.degree == 1:
                r = -piece[0]
                roots[r] = roots.get(r, 0) + m
            else:
                left = left * piece ** m
    return roots, left


def _split_generic(g):
    """Best-effort splitting over a field without a factorization algorithm."""
    if g.degree == 1:
        return [g]
    if g.degree == 2 and g.field.characteristic != 2:
        c, b, a = g.coeffs
        disc = b * b - a * c * 4
        sq = g.field.sqrt(disc)
        if sq is not None:
            K = g.field
            r1 = (-b + sq) / (a * 2)
            r2 = (-b - sq) / (a * 2)
            return [UPoly(K, [-r1, K.one], _trusted=True), UPoly(K, [-r2, K.one], _trusted=True)]
    return [g]


def split_factors(f, hints=()):
    """Monic factors of f for place enumeration: [(factor, exponent)].

    Factors are irreducible over finite fields, Q and function fields over Q;
    over other fields linear pieces are extracted and the remainder is
    returned as squarefree pieces whose irreducibility is the caller's
    obligation.
    """
    K = f.field
    if f.degree < 1:
        return []
    if _has_full_factorization(K):
        hinted, rest = linear_roots(f, hints) if hints else ({}, f.monic())
        out = [(UPoly(K, [-r, K.one], _trusted=True), m) for r, m in hinted.items()]
        if rest.degree > 0:
            out.extend(factor_univariate(rest, "full")[1])
        return _sorted_factors(out)
    roots, rest = linear_roots(f, hints)
    out = [(UPoly(K, [-r, K.one], _trusted=True), m) for r, m in roots.items()]
    if rest.degree > 0:
        out.extend(squarefree_decomposition(rest))
    return _sorted_factors(out)
