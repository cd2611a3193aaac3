"""The group k ⊗_Z k^× with a canonical coordinate form.

A multiplicative entry is split into atoms: rational primes, and monic
polynomials at each level of a rational-function tower.  Signs, finite-field
constants and other roots of unity are torsion and are dropped, which is
harmless because k is uniquely divisible by their orders.  The polynomial
atoms of a tensor are refined into a gcd-free basis, so two tensors are
equal iff the coordinates of their difference all vanish.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from .errors import DegenerateArgument, UnsupportedField, ZeroMultiplicativeEntry
from .fields import QQ, RationalFunctionField, field_of
from .poly import express_in_basis, gcd_free_basis, squarefree_decomposition

log = logging.getLogger(__name__)


class Atom:
    """A basis element of k^× modulo torsion."""

    __slots__ = ("level", "prime", "poly", "_key")

    def __init__(self, level=None, prime=None, poly=None):
        self.level = level
        self.prime = prime
        self.poly = poly
        if prime is not None:
            self._key = ("Z", prime)
        else:
            self._key = ("P", id(level), poly.coeffs)

    def __eq__(self, other):
        return isinstance(other, Atom) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def depth(self):
        if self.prime is not None:
            return 0
        return len(self.level.tower()) - 1

    def sort_key(self):
        if self.prime is not None:
            return (0, 0, "", self.prime)
        return (self.depth(), self.poly.degree, self.poly.format(self.level.var), 0)

    def element(self, field):
        if self.prime is not None:
            return field(self.prime)
        return field.coerce(self.level.from_polys(self.poly))

    def format(self):
        if self.prime is not None:
            return str(self.prime)
        return self.poly.format(self.level.var)

    def __repr__(self):
        return f"Atom({self.format()})"


def _prime_factors(n):
    from sympy import factorint

    return factorint(n)


def raw_decomposition(x):
    """Split a nonzero element into (atom-or-poly, exponent) pairs.

    Polynomial parts are returned as squarefree monic pieces tagged with
    their level; they still need refinement against other entries.
    """
    if not x:
        raise ZeroMultiplicativeEntry("zero cannot occur in a multiplicative slot")
    F = field_of(x)
    out = []
    _raw(F, x, out)
    return out


def _raw(F, x, out):
    if F is QQ:
        x = Fraction(x)
        for p, e in _prime_factors(abs(x.numerator)).items():
            out.append((("Z", p), e))
        for p, e in _prime_factors(x.denominator).items():
            out.append((("Z", p), -e))
        return
    if F.is_finite:
        return
    if isinstance(F, RationalFunctionField):
        _raw(F.base, x.num.lc, out)
        for poly, sign in ((x.num, 1), (x.den, -1)):
            if poly.degree < 1:
                continue
            for g, m in squarefree_decomposition(poly):
                out.append((("P", F, g), sign * m))
        return
    raise UnsupportedField(f"no canonical form for {F}^× is implemented")


class TensorElement:
    """Finite sum  Σ c_i ⊗ b_i  with c_i in k and b_i basis atoms of k^×/torsion."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords=None):
        self.field = field
        self.coords = dict(coords or {})

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def from_terms(cls, field, terms):
        """Canonical form of Σ a ⊗ b over ``terms`` = [(a, b), ...]."""
        raws = []
        pending = {}
        for a, b in terms:
            a = field(a)
            if not a:
                if not b:
                    raise ZeroMultiplicativeEntry("zero cannot occur in a multiplicative slot")
                continue
            b = field(b)
            parts = raw_decomposition(b)
            raws.append((a, parts))
            for key, _ in parts:
                if key[0] == "P":
                    pending.setdefault(key[1], []).append(key[2])
        bases = {level: gcd_free_basis(polys) for level, polys in pending.items()}
        coords = {}
        for a, parts in raws:
            for key, e in parts:
                if key[0] == "Z":
                    atoms = [(Atom(prime=key[1]), 1)]
                else:
                    level = key[1]
                    exps, rest = express_in_basis(key[2], bases[level])
                    assert rest.degree < 1, "gcd-free basis failed to cover an entry"
                    atoms = [(Atom(level=level, poly=b), k) for b, k in exps.items()]
                for atom, k in atoms:
                    c = coords.get(atom, field.zero) + a * (e * k)
                    coords[atom] = c
        return cls(field, {k: v for k, v in coords.items() if v})

    def terms(self):
        return [(c, atom.element(self.field)) for atom, c in self.coords.items()]

    def _coerce_other(self, other):
        if not isinstance(other, TensorElement):
            raise TypeError(f"cannot combine a tensor with {other!r}")
        F = self.field
        if other.field is F:
            return F, self, other
        G = other.field
        if _tower_contains(F, G):
            return F, self, other.change_field(F)
        if _tower_contains(G, F):
            return G, self.change_field(G), other
        raise TypeError(f"tensors over {F} and {G} cannot be combined")

    def change_field(self, F):
        return TensorElement.from_terms(F, [(F(c), F(b)) for c, b in self.terms()])

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        F, a, b = self._coerce_other(other)
        return TensorElement.from_terms(F, a.terms() + b.terms())

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(self.field, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply every additive coordinate by c (the ⋆-action on the tame slot)."""
        c = self.field(c)
        if not c:
            return TensorElement(self.field)
        return TensorElement(self.field, {k: v * c for k, v in self.coords.items()})

    def __mul__(self, c):
        if isinstance(c, TensorElement):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.coords

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def coordinate(self, base):
        """Coordinate at the atom generated by ``base`` (a prime or a basis polynomial)."""
        target = TensorElement.from_terms(self.field, [(1, base)])
        if len(target.coords) != 1:
            raise ValueError(f"{base} is not a single basis atom")
        (atom, e), = target.coords.items()
        return self.coords.get(atom, self.field.zero) / e

    def sorted_items(self):
        return sorted(self.coords.items(), key=lambda kv: kv[0].sort_key())

    def format(self):
        if not self.coords:
            return "0"
        fmt = self.field.format
        return " + ".join(f"({fmt(c)})⊗({atom.format()})" for atom, c in self.sorted_items())

    def __repr__(self):
        return f"TensorElement[{self.format()}]"


def _tower_contains(big, small):
    F = big
    while F is not None:
        if F is small:
            return True
        F = F.base
    return False


def tensor(field, terms):
    return TensorElement.from_terms(field, terms)


def epsilon(a, field=None):
    """ε(a) = a⊗a + (1−a)⊗(1−a)."""
    F = field or field_of(a)
    a = F(a)
    if not a or a == F.one:
        raise DegenerateArgument(f"ε is undefined at {a}")
    return TensorElement.from_terms(F, [(a, a), (1 - a, 1 - a)])
