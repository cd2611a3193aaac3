"""Places of the projective line over a field K, and what can be computed at them:
orders, values, Laurent expansions and residues of elements of K(t).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedField, UnsupportedPlace, ZeroInput
from .fields import RationalFunctionField, simple_extension
from .poly import UPoly, split_factors, squarefree_decomposition
from .series import TruncatedSeries


class _Infinity:
    """The value infinity on P^1."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class Place:
    """A closed point of P^1 over K: a monic irreducible polynomial, or infinity."""

    __slots__ = ("field", "poly", "_kappa")

    def __init__(self, field, poly=None):
        if poly is not None:
            if poly.degree < 1:
                raise ValueError("a finite place needs a nonconstant polynomial")
            poly = poly.monic()
        self.field = field
        self.poly = poly
        self._kappa = None

    @classmethod
    def infinity(cls, field):
        return cls(field, None)

    @classmethod
    def at(cls, field, value):
        """The degree-one place t = value."""
        value = field(value)
        return cls(field, UPoly(field, [-value, field.one], _trusted=True))

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    def residue_field(self):
        if self.poly is None or self.poly.degree == 1:
            return self.field
        if self._kappa is None:
            K = self.field
            name = "xi"
            taken = set(K.variables())
            i = 0
            while name in taken:
                i += 1
                name = f"xi{i}"
            check = K.is_finite or K.is_rational_field
            try:
                self._kappa = simple_extension(K, name, self.poly, check=check)
            except Exception as exc:
                raise UnsupportedPlace(f"cannot build the residue field of {self}: {exc}") from exc
        return self._kappa

    def root(self):
        """The image of the parameter in the residue field."""
        if self.poly is None:
            raise UnsupportedPlace("the place at infinity has no finite root")
        if self.poly.degree == 1:
            return -self.poly[0]
        kappa = self.residue_field()
        return kappa.gen(kappa.name)

    def trace(self, x):
        """Trace from the residue field down to K."""
        if self.degree == 1:
            return x
        return self.residue_field().trace(x)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self.field is other.field and self.poly == other.poly

    def __hash__(self):
        return hash((id(self.field), None if self.poly is None else self.poly.coeffs))

    def format(self, var="t"):
        if self.poly is None:
            return "∞"
        return f"({self.poly.format(var)})"

    def __repr__(self):
        return f"Place{self.format()}"


def _check_rf(r):
    if not isinstance(r.field, RationalFunctionField):
        raise UnsupportedField(f"{r.field} is not a rational function field")
    return r.field


def _is_origin(pi):
    return pi.degree == 1 and not pi.coeffs[0]


def _multiplicity(poly, pi):
    if _is_origin(pi):
        return next(i for i, c in enumerate(poly.coeffs) if c)
    e = 0
    while poly.degree >= pi.degree:
        q, rem = divmod(poly, pi)
        if rem:
            break
        poly = q
        e += 1
    return e


def ord_at(r, place):
    """Valuation of r in K(t) at ``place``."""
    _check_rf(r)
    if not r:
        raise ZeroInput("the order of zero is undefined")
    if place.is_infinity:
        return r.den.degree - r.num.degree
    return _multiplicity(r.num, place.poly) - _multiplicity(r.den, place.poly)


def value_at(r, place):
    """Value of r at the place in its residue field, or INF at a pole."""
    F = _check_rf(r)
    K = F.base
    if place.is_infinity:
        dn, dd = r.num.degree, r.den.degree
        if dn > dd:
            return INF
        if dn < dd or not r.num:
            return K.zero
        return r.num.lc / r.den.lc
    o = ord_at(r, place) if r else 1
    if o < 0:
        return INF
    if o > 0:
        return place.residue_field().zero
    u = place.root()
    return r.num(u) / r.den(u)


def _local_polys(r, place):
    """Numerator and denominator of r in the local parameter, over the residue field.

    Returns (kappa, N, D, shift) with r = T^shift * N(T)/D(T) where T is the
    local parameter (t - root at finite places, 1/t at infinity).
    """
    F = _check_rf(r)
    if place.is_infinity:
        K = F.base
        dn, dd = r.num.degree, r.den.degree
        num = r.num.reverse(dn)
        den = r.den.reverse(dd)
        return K, num, den, dd - dn
    kappa = place.residue_field()
    if _is_origin(place.poly):
        return kappa, r.num, r.den, 0
    u = place.root()
    lift = kappa.coerce
    num = r.num.map_coeffs(lift, kappa).shift(u)
    den = r.den.map_coeffs(lift, kappa).shift(u)
    return kappa, num, den, 0


def expand_at(r, place, N):
    """Laurent expansion of r at the place, exact through order N-1."""
    if not r:
        K = place.residue_field()
        return TruncatedSeries(K, N, [], N)
    kappa, num, den, shift = _local_polys(r, place)
    a = next(i for i, c in enumerate(num.coeffs) if c)
    b = next(i for i, c in enumerate(den.coeffs) if c)
    v = a - b + shift
    terms = max(N - v, 0)
    n_series = TruncatedSeries(kappa, 0, num.coeffs[a:], terms)
    d_series = TruncatedSeries(kappa, 0, den.coeffs[b:], terms)
    unit = n_series / d_series if terms else TruncatedSeries(kappa, 0, [], 0)
    return TruncatedSeries(kappa, v, [unit.coefficient(i) for i in range(terms)], N)


def expand_at_zero(r, N):
    """Laurent expansion at t = 0 through order N-1."""
    F = _check_rf(r)
    return expand_at(r, Place.at(F.base, 0), N)


def residue_at(f, place):
    """Residue of the 1-form f dt at the place, traced down to the coefficient field."""
    F = _check_rf(f)
    if not f:
        return F.base.zero
    if place.is_infinity:
        # t = 1/s, dt = -ds/s^2
        return -expand_at(f, place, 2).coefficient(1)
    series = expand_at(f, place, 0)
    return place.trace(series.coefficient(-1))


def places_of(r, hints=()):
    """Zeros and poles of r as [(place, order)], including infinity when relevant.

    Over finite fields, Q and rational function fields over Q the places are
    irreducible.  Over other fields linear factors are split off (using verified ``hints`` and square roots
    of discriminants); remaining squarefree factors are returned as places
    whose irreducibility is the caller's obligation.
    """
    F = _check_rf(r)
    if not r:
        raise ZeroInput("zero has no divisor")
    K = F.base
    out = []
    for poly, sign in ((r.num, 1), (r.den, -1)):
        for g, m in split_factors(poly, hints):
            out.append((Place(K, g), sign * m))
    o = r.den.degree - r.num.degree
    if o:
        out.append((Place.infinity(K), o))
    return out


@dataclass(frozen=True)
class PowerTest:
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def is_pth_power(r):
    """Decide whether r in F_q(y) is a p-th power, returning a witness s with s^p = r."""
    F = _check_rf(r)
    if not r:
        raise ZeroInput("zero is excluded from the p-th power test")
    K = F.base
    if not K.is_finite:
        raise UnsupportedField(f"p-th power test needs a finite coefficient field, not {K}")
    p = K.characteristic
    parts = []
    for poly, sign in ((r.num, 1), (r.den, -1)):
        if poly.degree < 1:
            continue
        for g, m in squarefree_decomposition(poly):
            if m % p:
                return PowerTest(False)
            parts.append((g, sign * (m // p)))
    w = F.from_base(K.pth_root(r.num.lc))
    for g, e in parts:
        w = w * F.from_polys(g) ** e
    return PowerTest(True, w)
