"""Absolute Kähler differential forms over the supported fields.

A form over a field F is a sum of coefficient * dv_{i1}∧...∧dv_{in} where the
v_i are F.dvars(): the transcendental variables of the tower, innermost
first.  Prime fields and finite fields contribute no generators; generators
of a simple extension are eliminated by implicit differentiation.
"""

from __future__ import annotations

from .errors import (
    InseparableGenerator,
    UnsupportedField,
    ZeroMultiplicativeEntry,
)
from .fields import QQ, RationalFunctionField, SimpleExt, field_of
from .poly import UPoly
from .tensor import TensorElement


def _merge_sign(a, b):
    """Sign and sorted tuple of the wedge of index words a and b, or (0, None)."""
    if set(a) & set(b):
        return 0, None
    word = list(a) + list(b)
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1] > word[j]:
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(word)


class DifferentialForm:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def scalar(cls, field, c):
        return cls(field, {(): field(c)})

    @classmethod
    def basis(cls, field, name):
        idx = field.dvars().index(name)
        return cls(field, {(idx,): field.one})

    def degree(self):
        degs = {len(k) for k in self.terms}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _lift(self, other):
        if isinstance(other, DifferentialForm):
            if other.field is self.field:
                return other
            return other.change_field(self.field)
        return DifferentialForm.scalar(self.field, other)

    def change_field(self, F):
        """Embed into a field F whose dvars extend ours as a prefix."""
        if F is self.field:
            return self
        mine = self.field.dvars()
        theirs = F.dvars()
        if theirs[: len(mine)] != mine:
            raise UnsupportedField(f"cannot move forms from {self.field} to {F}")
        return DifferentialForm(F, {k: F.coerce(v) for k, v in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, DifferentialForm) and other.field is not self.field:
            if _is_prefix(self.field, other.field):
                return self.change_field(other.field) + other
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return DifferentialForm(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialForm(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, DifferentialForm):
            return self + (-other)
        return self + (-self.field(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.field(c)
        return DifferentialForm(self.field, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DifferentialForm):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(self.field.one / self.field(c))

    def wedge(self, other):
        if other.field is not self.field:
            if _is_prefix(self.field, other.field):
                return self.change_field(other.field).wedge(other)
            other = other.change_field(self.field)
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                sign, word = _merge_sign(ka, kb)
                if not sign:
                    continue
                c = va * vb
                if sign < 0:
                    c = -c
                out[word] = out[word] + c if word in out else c
        return DifferentialForm(self.field, out)

    __xor__ = wedge

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def exterior_derivative(self):
        out = DifferentialForm(self.field)
        for word, c in self.terms.items():
            dc = differential(c, self.field)
            out = out + dc.wedge(DifferentialForm(self.field, {word: self.field.one}))
        return out

    def coefficient(self, *names):
        """Coefficient of d(names[0])∧d(names[1])∧... with the sign of the given order."""
        dv = self.field.dvars()
        sign, word = _merge_sign((), tuple(dv.index(n) for n in names))
        c = self.terms.get(word, self.field.zero)
        return c if sign > 0 else -c

    def map_coefficients(self, fn, field, drop=()):
        """Apply fn to coefficients, moving to ``field``; words using a dropped
        generator are discarded and indices are renumbered by name."""
        src = self.field.dvars()
        dst = field.dvars()
        out = {}
        for word, c in self.terms.items():
            names = [src[i] for i in word]
            if any(n in drop for n in names):
                continue
            new = tuple(dst.index(n) for n in names)
            v = fn(c)
            out[new] = out[new] + v if new in out else v
        return DifferentialForm(field, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def format(self):
        if not self.terms:
            return "0"
        dv = self.field.dvars()
        fmt = self.field.format
        parts = []
        for word, c in self.sorted_terms():
            mono = "^".join(f"d({dv[i]})" for i in word)
            parts.append(f"({fmt(c)}) {mono}".rstrip() if mono else f"({fmt(c)})")
        return " + ".join(parts)

    def __repr__(self):
        return f"DifferentialForm[{self.format()}]"


def _is_prefix(small, big):
    a, b = small.dvars(), big.dvars()
    return small is not big and b[: len(a)] == a and _tower_has(big, small)


def _tower_has(big, small):
    F = big
    while F is not None:
        if F is small:
            return True
        F = F.base
    return False


# exterior derivative of field elements

def differential(e, field=None):
    """Absolute differential d(e) as a 1-form over ``field`` (default: e's field)."""
    F = field or field_of(e)
    e = F(e)
    if F is QQ or F.is_finite:
        return DifferentialForm(F)
    if isinstance(F, RationalFunctionField):
        dnum = _d_poly(e.num, F)
        if e.den.is_one():
            return dnum
        dden = _d_poly(e.den, F)
        num = F.from_polys(e.num)
        den = F.from_polys(e.den)
        return (dnum.scale(den) - dden.scale(num)).scale(F.one / (den * den))
    if isinstance(F, SimpleExt):
        return _d_ext(e, F)
    raise UnsupportedField(f"differentials over {F} are not implemented")


def _d_poly(poly, F):
    """d of a polynomial in F.var with coefficients in F.base, as a form over F."""
    K = F.base
    v = F.gen(F.var)
    out = {}
    idx_v = len(F.dvars()) - 1
    dpoly = poly.derivative()
    if dpoly:
        out[(idx_v,)] = F.from_polys(dpoly)
    if K is not QQ and not K.is_finite:
        power = F.one
        for c in poly.coeffs:
            if c:
                dc = differential(c, K)
                for word, val in dc.terms.items():
                    term = F.coerce(val) * power
                    out[word] = out[word] + term if word in out else term
            power = power * v
    return DifferentialForm(F, out)


def derivation_of_generator(F):
    """d(u) for the generator u of a simple extension, as a form over F."""
    K = F.base
    u = F.gen(F.name)
    pi = F.minpoly
    dpi_u = pi.derivative().map_coeffs(F.coerce, F)(u)
    if not dpi_u:
        raise InseparableGenerator(f"{pi.format(F.name)} is inseparable")
    acc = DifferentialForm(F)
    power = F.one
    for c in pi.coeffs:
        if c:
            acc = acc + differential(c, K).change_field(F).scale(power)
        power = power * u
    return acc.scale(-F.one / dpi_u)


def _d_ext(e, F):
    K = F.base
    u = F.gen(F.name)
    acc = DifferentialForm(F)
    power = F.one
    for c in e.c:
        if c:
            acc = acc + differential(c, K).change_field(F).scale(power)
        power = power * u
    de = F.to_poly(e).derivative().map_coeffs(F.coerce, F)(u) if F.to_poly(e).degree > 0 else F.zero
    if de:
        acc = acc + derivation_of_generator(F).scale(de)
    return acc


def dlog(b, field=None):
    F = field or field_of(b)
    b = F(b)
    if not b:
        raise ZeroMultiplicativeEntry("dlog of zero")
    return differential(b, F).scale(F.one / b)


def wedge(*forms):
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def pi_dlog(te):
    """a ⊗ b ↦ a·db/b on k ⊗ k^×."""
    F = te.field
    out = DifferentialForm(F)
    for c, b in te.terms():
        out = out + dlog(b, F).scale(c)
    return out


def pi_dlog_terms(field, terms):
    """Same map applied to a formal sum before canonicalization."""
    out = DifferentialForm(field)
    for a, b in terms:
        out = out + dlog(b, field).scale(a)
    return out


# Cartier operator

def cartier(omega):
    """Cartier operator on 1-forms f·dy over F_q(y).

    With f = N/D we have f = N·D^(p-1) / D^p, and C((P/D^p) dy) = C(P dy)/D.
    C(P dy) collects the coefficients of y^(pm + p - 1) of P, taking p-th roots.
    """
    F = omega.field
    if not isinstance(F, RationalFunctionField) or not F.base.is_finite:
        raise UnsupportedField(f"the Cartier operator needs F_q(y), not {F}")
    if not omega.terms:
        return omega
    if set(omega.terms) != {(0,)}:
        raise ValueError("the Cartier operator is applied to 1-forms only")
    K = F.base
    p = K.characteristic
    f = omega.terms[(0,)]
    P = f.num * f.den ** (p - 1)
    cs = P.coeffs
    g = UPoly(K, [K.pth_root(cs[i]) if i < len(cs) else K.zero for i in range(p - 1, len(cs), p)])
    return DifferentialForm(F, {(0,): F.from_polys(g, f.den)})


# traces

class ExtensionTraceData:
    """κ = k[u]/(π) with the power-basis traces Tr(u^i)."""

    def __init__(self, kappa):
        if not isinstance(kappa, SimpleExt):
            raise UnsupportedField(f"{kappa} is not a simple extension")
        pi = kappa.minpoly
        if pi.derivative().degree < 0 or not pi.derivative().map_coeffs(kappa.coerce, kappa)(kappa.gen(kappa.name)):
            raise InseparableGenerator(f"{pi.format(kappa.name)} is inseparable")
        self.kappa = kappa
        self.base = kappa.base
        self.power_traces = tuple(kappa.trace(kappa.gen(kappa.name) ** i) for i in range(kappa.degree))

    def trace(self, x):
        x = self.kappa(x)
        acc = self.base.zero
        for c, tr in zip(x.c, self.power_traces):
            if c:
                acc = acc + c * tr
        return acc


def trace_form(omega, ext):
    """Apply Tr_{κ/k} coefficientwise to a form over κ."""
    if not isinstance(ext, ExtensionTraceData):
        ext = ExtensionTraceData(ext)
    if omega.field is not ext.kappa:
        omega = omega.change_field(ext.kappa)
    return DifferentialForm(ext.base, {k: ext.trace(v) for k, v in omega.terms.items()})


__all__ = [
    "DifferentialForm",
    "ExtensionTraceData",
    "TensorElement",
    "cartier",
    "differential",
    "dlog",
    "pi_dlog",
    "pi_dlog_terms",
    "trace_form",
    "wedge",
]
