"""The tower of exact fields.

Supported fields:

* ``QQ`` -- the rationals; elements are plain ``fractions.Fraction``.
* ``PrimeField(p)`` and ``GaloisField`` -- finite fields.  Non-prime finite
  fields use Zech logarithm tables so every element is a single int.
* ``SimpleExt(base, name, minpoly)`` -- K[u]/(pi).
* ``RationalFunctionField(base, var)`` -- K(var).  Several variables are
  obtained by nesting, so Q(a, b) is Q(a)(b).  Elements keep a reduced
  numerator over a monic denominator, which makes equality structural.

All fields are cached so that identical descriptors give identical objects.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .errors import CoercionError, DivisionByZero, IrreducibilityFailure, UnsupportedField
from .poly import UPoly, is_irreducible, poly_gcd, poly_sqrt, poly_xgcd, squarefree_decomposition

_cache: dict = {}
_cache_lock = threading.Lock()


def _cached(key, build):
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    obj = build()
    with _cache_lock:
        return _cache.setdefault(key, obj)


class Field:
    """Common interface.  Subclasses implement the primitive operations."""

    characteristic = 0
    is_finite = False
    is_rational_field = False
    base = None

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        raise NotImplementedError

    def try_coerce(self, x):
        try:
            return self.coerce(x)
        except CoercionError:
            return None

    def is_zero(self, x):
        return x == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def variables(self):
        """Names that can be used in expressions over this field."""
        return ()

    def dvars(self):
        """Generators of the absolute differentials, innermost first."""
        return ()

    def gen(self, name):
        raise CoercionError(f"unknown generator {name!r} in {self}")

    def tower(self):
        out = [self]
        while out[-1].base is not None:
            out.append(out[-1].base)
        return out

    def prime_field(self):
        return self.tower()[-1]

    def format(self, x):
        return str(x)

    def __repr__(self):
        return self.descriptor()

    def descriptor(self):
        raise NotImplementedError


class Element:
    """Operator plumbing shared by non-rational elements."""

    __slots__ = ()

    def _other(self, other):
        return self.field.try_coerce(other)

    def _binop(self, other, op, reflected=False):
        F = self.field
        o = F.try_coerce(other)
        if o is None:
            # same Python type but a larger field: Python will not try the
            # reflected method, so push self upward here
            if isinstance(other, Element):
                G = other.field
                s = G.try_coerce(self)
                if s is not None:
                    return getattr(G, op)(other, s) if reflected else getattr(G, op)(s, other)
            return NotImplemented
        return getattr(F, op)(o, self) if reflected else getattr(F, op)(self, o)

    def __add__(self, other):
        return self._binop(other, "add")

    def __radd__(self, other):
        return self._binop(other, "add", True)

    def __sub__(self, other):
        return self._binop(other, "sub")

    def __rsub__(self, other):
        return self._binop(other, "sub", True)

    def __mul__(self, other):
        return self._binop(other, "mul")

    def __rmul__(self, other):
        return self._binop(other, "mul", True)

    def __truediv__(self, other):
        return self._binop(other, "div")

    def __rtruediv__(self, other):
        return self._binop(other, "div", True)

    def __neg__(self):
        return self.field.neg(self)

    def __pos__(self):
        return self

    def __pow__(self, n):
        return self.field.power(self, int(n))

    def __eq__(self, other):
        if type(other) is type(self) and other.field is self.field:
            return self._key() == other._key()
        o = self._other(other)
        if o is None:
            if isinstance(other, Element):
                s = other.field.try_coerce(self)
                if s is not None:
                    return s._key() == other._key()
            return NotImplemented
        return self._key() == o._key()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((id(self.field), self._key()))

    def __bool__(self):
        return not self.field.is_zero(self)

    def __repr__(self):
        return self.field.format(self)

    __str__ = __repr__


# the rationals

class RationalField(Field):
    is_rational_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise CoercionError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if n is None or d is None:
            return None
        return Fraction(n, d)

    def random_element(self, rng, bound=20):
        den = rng.randint(1, bound)
        return Fraction(rng.randint(-bound, bound), den)

    def format(self, x):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def descriptor(self):
        return "Q"


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


QQ = RationalField()


def field_of(x):
    if isinstance(x, (int, Fraction)):
        return QQ
    return x.field


# finite fields

class FiniteField(Field):
    is_finite = True

    def random_element(self, rng):
        return self.element_from_index(rng.randrange(self.order))

    def random_nonzero(self, rng):
        return self.element_from_index(rng.randrange(1, self.order))

    def elements(self):
        return [self.element_from_index(i) for i in range(self.order)]

    def pth_root(self, a):
        return self.power(a, self.order // self.characteristic)

    def frobenius(self, a):
        return self.power(a, self.characteristic)

    def sqrt(self, a):
        if not a:
            return a
        if self.characteristic == 2:
            return self.power(a, self.order // 2)
        return _tonelli(self, a)


def _tonelli(F, a):
    q = F.order
    if F.power(a, (q - 1) // 2) != F.one:
        return None
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = None
    for i in range(1, q):
        c = F.element_from_index(i)
        if F.power(c, (q - 1) // 2) != F.one:
            z = c
            break
    x = F.power(a, (s + 1) // 2)
    b = F.power(a, s)
    g = F.power(z, s)
    r = e
    while b != F.one:
        m, t = 0, b
        while t != F.one:
            t = F.mul(t, t)
            m += 1
        gs = F.power(g, 1 << (r - m - 1))
        x = F.mul(x, gs)
        g = F.mul(gs, gs)
        b = F.mul(b, g)
        r = m
    return x


class PFElt(Element):
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _key(self):
        return self.v

    def __int__(self):
        return self.v


class PrimeField(FiniteField):
    def __init__(self, p):
        from sympy import isprime

        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.order = p
        self.degree = 1
        self.zero = PFElt(self, 0)
        self.one = PFElt(self, 1 % p)

    def _e(self, v):
        return PFElt(self, v % self.characteristic)

    def element_from_index(self, i):
        return PFElt(self, i)

    def coerce(self, x):
        if isinstance(x, PFElt):
            if x.field is self:
                return x
            raise CoercionError(f"{x!r} belongs to {x.field}, not {self}")
        if isinstance(x, int):
            return self._e(x)
        if isinstance(x, Fraction):
            d = x.denominator % self.characteristic
            if not d:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.characteristic}")
            return self._e(x.numerator * pow(d, -1, self.characteristic))
        raise CoercionError(f"cannot coerce {x!r} into {self}")

    def is_zero(self, a):
        return a.v == 0

    def add(self, a, b):
        return self._e(a.v + b.v)

    def sub(self, a, b):
        return self._e(a.v - b.v)

    def neg(self, a):
        return self._e(-a.v)

    def mul(self, a, b):
        return self._e(a.v * b.v)

    def inv(self, a):
        if not a.v:
            raise DivisionByZero(f"division by zero in {self}")
        return PFElt(self, pow(a.v, -1, self.characteristic))

    def power(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        return PFElt(self, pow(a.v, n, self.characteristic))

    def pth_root(self, a):
        return a

    def digits(self, a):
        return [a.v]

    def format(self, x):
        return str(x.v)

    def descriptor(self):
        return f"Fp({self.characteristic})"


class GFElt(Element):
    """Element of a Zech-table field; ``v`` is the discrete log or -1 for zero."""

    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _key(self):
        return self.v


_ZECH_LIMIT = 1 << 17


class GaloisField(FiniteField):
    """F_p[name]/(modulus) for a monic irreducible modulus of degree >= 2."""

    def __init__(self, p, modulus, name):
        self.characteristic = p
        self.degree = d = len(modulus) - 1
        self.order = q = p ** d
        self.name = name
        self.modulus = tuple(int(c) % p for c in modulus)
        if q > _ZECH_LIMIT:
            raise UnsupportedField(f"finite field of order {q} exceeds the table limit")
        Fp = prime_field(p)
        mpoly = UPoly(Fp, self.modulus)
        if not is_irreducible(mpoly):
            raise IrreducibilityFailure(f"{mpoly.format(name)} is not irreducible over F_{p}")
        self._build_tables()
        self.zero = GFElt(self, -1)
        self.one = GFElt(self, 0)
        self._half = (q - 1) // 2 if p != 2 else 0

    def _mulx(self, code):
        # multiply a base-p digit code by the generator X, reducing by the modulus
        p, d = self.characteristic, self.degree
        digits = _to_digits(code, p, d)
        top = digits[-1]
        shifted = [0] + digits[:-1]
        if top:
            for i in range(d):
                shifted[i] = (shifted[i] - top * self.modulus[i]) % p
        return _from_digits(shifted, p)

    def _mul_codes(self, a, b):
        p, d = self.characteristic, self.degree
        acc = 0
        bd = _to_digits(b, p, d)
        cur = a
        for c in bd:
            if c:
                acc = _add_codes(acc, _scale_code(cur, c, p, d), p, d)
            cur = self._mulx(cur)
        return acc

    def _build_tables(self):
        p, d, q = self.characteristic, self.degree, self.order
        cand = p  # the class of X
        while True:
            exp = [1]
            cur = 1
            for _ in range(q - 2):
                cur = self._mul_codes(cur, cand)
                if cur == 1:
                    break
                exp.append(cur)
            if len(exp) == q - 1 and self._mul_codes(cur, cand) == 1:
                break
            cand += 1
        self.exp = exp
        self.log = log = [-1] * q
        for i, c in enumerate(exp):
            log[c] = i
        self.zech = [log[_add_codes(1, c, p, d)] for c in exp]

    def element_from_index(self, i):
        return GFElt(self, self.log[i])

    def from_digits(self, digits):
        return GFElt(self, self.log[_from_digits([int(c) % self.characteristic for c in digits], self.characteristic)])

    def digits(self, a):
        if a.v < 0:
            return [0] * self.degree
        return _to_digits(self.exp[a.v], self.characteristic, self.degree)

    def gen(self, name):
        if name == self.name:
            return self.from_digits([0, 1])
        raise CoercionError(f"unknown generator {name!r} in {self}")

    def variables(self):
        return (self.name,)

    def coerce(self, x):
        if isinstance(x, GFElt):
            if x.field is self:
                return x
            raise CoercionError(f"{x!r} belongs to {x.field}, not {self}")
        if isinstance(x, PFElt) and x.field.characteristic == self.characteristic:
            return self.from_digits([x.v])
        if isinstance(x, int):
            return self.from_digits([x % self.characteristic])
        if isinstance(x, Fraction):
            p = self.characteristic
            if not x.denominator % p:
                raise DivisionByZero(f"denominator of {x} vanishes mod {p}")
            return self.from_digits([x.numerator * pow(x.denominator, -1, p) % p])
        raise CoercionError(f"cannot coerce {x!r} into {self}")

    def is_zero(self, a):
        return a.v < 0

    def add(self, a, b):
        if a.v < 0:
            return b
        if b.v < 0:
            return a
        m = self.order - 1
        z = self.zech[(b.v - a.v) % m]
        if z < 0:
            return self.zero
        return GFElt(self, (a.v + z) % m)

    def neg(self, a):
        if a.v < 0 or self.characteristic == 2:
            return a
        return GFElt(self, (a.v + self._half) % (self.order - 1))

    def mul(self, a, b):
        if a.v < 0 or b.v < 0:
            return self.zero
        return GFElt(self, (a.v + b.v) % (self.order - 1))

    def inv(self, a):
        if a.v < 0:
            raise DivisionByZero(f"division by zero in {self}")
        return GFElt(self, (-a.v) % (self.order - 1))

    def power(self, a, n):
        if a.v < 0:
            if n < 0:
                raise DivisionByZero(f"division by zero in {self}")
            return self.one if n == 0 else self.zero
        return GFElt(self, (a.v * n) % (self.order - 1))

    def format(self, x):
        digits = self.digits(x)
        poly = UPoly(prime_field(self.characteristic), digits)
        return poly.format(self.name)

    def descriptor(self):
        p = self.characteristic
        if self.modulus == _as_modulus(p):
            return f"Fp({p})[{self.name}]"
        poly = UPoly(prime_field(p), self.modulus).format(self.name)
        return f"ext(Fp({p}), {self.name}, {poly})"


def _to_digits(code, p, d):
    out = []
    for _ in range(d):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _from_digits(digits, p):
    code = 0
    for c in reversed(digits):
        code = code * p + c
    return code


def _add_codes(a, b, p, d):
    da, db = _to_digits(a, p, d), _to_digits(b, p, d)
    return _from_digits([(x + y) % p for x, y in zip(da, db)], p)


def _scale_code(a, c, p, d):
    return _from_digits([(x * c) % p for x in _to_digits(a, p, d)], p)


def _as_modulus(p):
    # X^p - X - 1
    m = [0] * (p + 1)
    m[0] = (-1) % p
    m[1] = (-1) % p
    m[p] = 1
    if p == 2:
        m = [1, 1, 1]
    return tuple(m)


def prime_field(p):
    return _cached(("Fp", p), lambda: PrimeField(p))


def artin_schreier_field(p, name="beta"):
    """F_p[name]/(X^p - X - 1), irreducible for every prime p."""
    return _cached(("GF", p, _as_modulus(p), name), lambda: GaloisField(p, _as_modulus(p), name))


def galois_field(p, modulus, name):
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) == 2:
        return prime_field(p)
    return _cached(("GF", p, modulus, name), lambda: GaloisField(p, modulus, name))


# simple algebraic extensions

class ExtElt(Element):
    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _key(self):
        return self.c


class SimpleExt(Field):
    """base[name]/(minpoly) with elements stored as coefficient tuples of length deg."""

    def __init__(self, base, name, minpoly, check=True):
        if minpoly.field is not base:
            raise CoercionError("minimal polynomial must have coefficients in the base field")
        if minpoly.degree < 2 or minpoly.lc != base.one:
            raise ValueError("minimal polynomial must be monic of degree >= 2")
        self.base = base
        self.name = name
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self.characteristic = base.characteristic
        self.irreducibility_checked = False
        if check:
            if base.is_finite or base.is_rational_field:
                if not is_irreducible(minpoly):
                    raise IrreducibilityFailure(f"{minpoly.format(name)} is reducible over {base}")
                self.irreducibility_checked = True
            elif poly_gcd(minpoly, minpoly.derivative()).degree > 0:
                raise IrreducibilityFailure(f"{minpoly.format(name)} is not squarefree over {base}")
        z = base.zero
        self.zero = ExtElt(self, (z,) * self.degree)
        self.one = ExtElt(self, (base.one,) + (z,) * (self.degree - 1))
        self.is_finite = base.is_finite
        if self.is_finite:
            self.order = base.order ** self.degree
        self._traces = None

    def _from_poly(self, poly):
        r = poly % self.minpoly if poly.degree >= self.degree else poly
        cs = list(r.coeffs) + [self.base.zero] * (self.degree - len(r.coeffs))
        return ExtElt(self, tuple(cs))

    def to_poly(self, a):
        return UPoly(self.base, a.c, _trusted=True)

    def from_base(self, c):
        return ExtElt(self, (c,) + (self.base.zero,) * (self.degree - 1))

    def gen(self, name):
        if name == self.name:
            return self._from_poly(UPoly.x(self.base))
        return self.from_base(self.base.gen(name))

    def variables(self):
        return self.base.variables() + (self.name,)

    def dvars(self):
        return self.base.dvars()

    def coerce(self, x):
        if isinstance(x, ExtElt) and x.field is self:
            return x
        try:
            return self.from_base(self.base.coerce(x))
        except CoercionError:
            raise CoercionError(f"cannot coerce {x!r} into {self}") from None

    def is_zero(self, a):
        return all(not c for c in a.c)

    def add(self, a, b):
        return ExtElt(self, tuple(x + y for x, y in zip(a.c, b.c)))

    def sub(self, a, b):
        return ExtElt(self, tuple(x - y for x, y in zip(a.c, b.c)))

    def neg(self, a):
        return ExtElt(self, tuple(-x for x in a.c))

    def mul(self, a, b):
        return self._from_poly(self.to_poly(a) * self.to_poly(b))

    def inv(self, a):
        f = self.to_poly(a)
        if not f:
            raise DivisionByZero(f"division by zero in {self}")
        g, s, _ = poly_xgcd(f, self.minpoly)
        if g.degree != 0:
            raise IrreducibilityFailure(f"{self.minpoly.format(self.name)} has a nontrivial factor {g.format(self.name)}")
        return self._from_poly(s)

    def element_in_base(self, a):
        """The base-field value of ``a`` when it lies in the base, else None."""
        if all(not c for c in a.c[1:]):
            return a.c[0]
        return None

    def trace(self, a):
        if self._traces is None:
            u = self.gen(self.name)
            cur = self.one
            traces = []
            for _ in range(self.degree):
                t = self.base.zero
                w = cur
                for j in range(self.degree):
                    t = t + w.c[j]
                    w = w * u
                    # coefficient of u^j in cur*u^j
                traces.append(t)
                cur = cur * u
            self._traces = traces
        acc = self.base.zero
        for c, tr in zip(a.c, self._traces):
            if c:
                acc = acc + c * tr
        return acc

    def norm(self, a):
        # determinant of multiplication by a, via resultant-free Gaussian elimination
        d = self.degree
        u = self.gen(self.name)
        cols = []
        cur = a
        for _ in range(d):
            cols.append(list(cur.c))
            cur = cur * u
        return _det([[cols[j][i] for j in range(d)] for i in range(d)], self.base)

    def pth_root(self, a):
        if not self.is_finite:
            raise UnsupportedField(f"p-th roots are not available in {self}")
        return self.power(a, self.order // self.characteristic)

    def sqrt(self, a):
        if self.is_finite:
            if not a:
                return a
            if self.characteristic == 2:
                return self.power(a, self.order // 2)
            return _tonelli(self, a)
        inner = self.element_in_base(a)
        if inner is not None:
            r = self.base.sqrt(inner)
            if r is not None:
                return self.from_base(r)
        return None

    def random_element(self, rng):
        return ExtElt(self, tuple(self.base.random_element(rng) for _ in range(self.degree)))

    def element_from_index(self, i):
        q = self.base.order
        cs = []
        for _ in range(self.degree):
            i, r = divmod(i, q)
            cs.append(self.base.element_from_index(r))
        return ExtElt(self, tuple(cs))

    def format(self, x):
        return self.to_poly(x).format(self.name)

    def descriptor(self):
        return f"ext({self.base.descriptor()}, {self.name}, {self.minpoly.format(self.name)})"


def _det(m, K):
    n = len(m)
    m = [row[:] for row in m]
    det = K.one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return K.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = K.one / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
    return det


def simple_extension(base, name, minpoly, check=True):
    if not isinstance(minpoly, UPoly):
        minpoly = UPoly(base, minpoly)
    if isinstance(base, PrimeField) and check:
        return galois_field(base.characteristic, [c.v for c in minpoly.coeffs], name)
    key = ("ext", id(base), name, minpoly.coeffs)
    return _cached(key, lambda: SimpleExt(base, name, minpoly, check))


# rational function fields

class RFElt(Element):
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    def _key(self):
        return (self.num.coeffs, self.den.coeffs)

    @property
    def numer(self):
        return self.num

    @property
    def denom(self):
        return self.den

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        """Coefficient-field value of a constant element."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant in {self.field.var}")
        return self.num[0]

    def __call__(self, value):
        return self.field.evaluate(self, value)


class RationalFunctionField(Field):
    def __init__(self, base, var):
        if var in base.variables():
            raise ValueError(f"variable {var!r} already occurs in {base}")
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        one = UPoly(base, [base.one], _trusted=True)
        self._one_poly = one
        self.zero = RFElt(self, UPoly(base, (), _trusted=True), one)
        self.one = RFElt(self, one, one)

    def gen(self, name):
        if name == self.var:
            return RFElt(self, UPoly.x(self.base), self._one_poly)
        return self.from_base(self.base.gen(name))

    def variables(self):
        return self.base.variables() + (self.var,)

    def dvars(self):
        return self.base.dvars() + (self.var,)

    def poly_ring_field(self):
        return self.base

    def from_base(self, c):
        if not c:
            return self.zero
        return RFElt(self, UPoly(self.base, [c], _trusted=True), self._one_poly)

    def from_polys(self, num, den=None):
        if den is None:
            den = self._one_poly
        return self._normalize(num, den)

    def _normalize(self, num, den):
        if not den:
            raise DivisionByZero(f"zero denominator in {self}")
        if not num:
            return self.zero
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != self.base.one:
            inv = self.base.one / lc
            num = num * inv
            den = den * inv
        return RFElt(self, num, den)

    def coerce(self, x):
        if isinstance(x, RFElt) and x.field is self:
            return x
        if isinstance(x, UPoly) and x.field is self.base:
            return self.from_polys(x)
        try:
            return self.from_base(self.base.coerce(x))
        except CoercionError:
            raise CoercionError(f"cannot coerce {x!r} into {self}") from None

    def is_zero(self, a):
        return not a.num

    def add(self, a, b):
        if a.den == b.den:
            return self._normalize(a.num + b.num, a.den)
        return self._normalize(a.num * b.den + b.num * a.den, a.den * b.den)

    def sub(self, a, b):
        if a.den == b.den:
            return self._normalize(a.num - b.num, a.den)
        return self._normalize(a.num * b.den - b.num * a.den, a.den * b.den)

    def neg(self, a):
        return RFElt(self, -a.num, a.den)

    def mul(self, a, b):
        if not a.num or not b.num:
            return self.zero
        # cross cancellation keeps intermediate sizes down
        g1 = poly_gcd(a.num, b.den)
        g2 = poly_gcd(b.num, a.den)
        n1 = a.num.exact_div(g1) if g1.degree > 0 else a.num
        d2 = b.den.exact_div(g1) if g1.degree > 0 else b.den
        n2 = b.num.exact_div(g2) if g2.degree > 0 else b.num
        d1 = a.den.exact_div(g2) if g2.degree > 0 else a.den
        num, den = n1 * n2, d1 * d2
        lc = den.lc
        if lc != self.base.one:
            inv = self.base.one / lc
            num, den = num * inv, den * inv
        return RFElt(self, num, den)

    def inv(self, a):
        if not a.num:
            raise DivisionByZero(f"division by zero in {self}")
        return self._normalize(a.den, a.num)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        if n == 0:
            return self.one
        return RFElt(self, a.num ** n, a.den ** n)

    def evaluate(self, a, value):
        """Substitute var = value (value in the base or an extension of it)."""
        d = a.den(value)
        if not d:
            raise DivisionByZero(f"{self.var} = {value} is a pole of {a}")
        return a.num(value) / d

    def substitute(self, a, value):
        """Substitute var = value, where value is any element of a field
        that contains the base field (for example another rational function)."""
        return a.num(value) / a.den(value)

    def sqrt(self, a):
        if not a.num:
            return a
        n = poly_sqrt(a.num)
        if n is None:
            return None
        d = poly_sqrt(a.den)
        if d is None:
            return None
        return RFElt(self, n, d.monic() if d.lc == self.base.one else d)

    def random_element(self, rng, degree=2):
        K = self.base
        while True:
            num = UPoly(K, [K.random_element(rng) for _ in range(rng.randint(0, degree) + 1)])
            den = UPoly(K, [K.random_element(rng) for _ in range(rng.randint(0, degree) + 1)])
            if den:
                return self._normalize(num, den)

    def format(self, x):
        v = self.var
        n = x.num.format(v)
        if x.den.is_one():
            return n
        d = x.den.format(v)
        if not _simple(n):
            n = f"({n})"
        if not _simple(d):
            d = f"({d})"
        return f"{n}/{d}"

    def descriptor(self):
        names = []
        F = self
        while isinstance(F, RationalFunctionField):
            names.append(F.var)
            F = F.base
        inner = F.descriptor()
        return f"{inner}({','.join(reversed(names))})"


def _simple(s):
    body = s[1:] if s.startswith("-") else s
    return all(ch.isalnum() or ch in "_^" for ch in body)


def rational_function_field(base, var):
    return _cached(("rf", id(base), var), lambda: RationalFunctionField(base, var))


def function_field(base, variables):
    F = base
    for v in variables:
        F = rational_function_field(F, v)
    return F


def is_squarefree(f):
    return all(m == 1 for _, m in squarefree_decomposition(f))
