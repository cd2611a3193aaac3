"""Formal additive polylogarithm co-Lie algebra.

Generators are {a}_n and <a>_n with a ∉ {0, 1}.  Expressions live in the
exterior algebra on the generators; all generators are odd, so the
boundary extends to wedge words as a derivation with alternating signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateArgument, NotWeightTwo
from .fields import field_of
from .report import Verification
from .tensor import TensorElement

BRACE = "{}"
ANGLE = "<>"
_KIND_ORDER = {ANGLE: 0, BRACE: 1}


@dataclass(frozen=True, eq=False)
class LieGenerator:
    kind: str
    arg: object
    weight: int

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.weight < 1:
            raise ValueError("generator weights start at 1")
        F = field_of(self.arg)
        if not self.arg or self.arg == F.one:
            raise DegenerateArgument(f"generator argument {self.arg} is 0 or 1")

    @property
    def field(self):
        return field_of(self.arg)

    def key(self):
        return (_KIND_ORDER[self.kind], self.weight, self.field.format(self.arg))

    def __eq__(self, other):
        return isinstance(other, LieGenerator) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def format(self):
        a = self.field.format(self.arg)
        if self.kind == BRACE:
            return f"{{{a}}}_{self.weight}"
        return f"<{a}>_{self.weight}"

    __str__ = format

    def __repr__(self):
        return f"LieGenerator({self.format()})"


def brace(a, n):
    return LieGenerator(BRACE, a, n)


def angle(a, n):
    return LieGenerator(ANGLE, a, n)


def _canonical(word):
    """Sorted word and sign, or (None, 0) if a generator repeats."""
    word = list(word)
    if len(set(word)) != len(word):
        return None, 0
    sign = 1
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j] < word[j - 1]:
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    return tuple(word), sign


class ExteriorExpression:
    """ℚ-linear combination of sorted wedge words of generators."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for word, c in (terms or {}).items():
            w, s = _canonical(word)
            if w is None or not c:
                continue
            out[w] = out.get(w, 0) + s * Fraction(c)
        self.terms = {w: c for w, c in out.items() if c}

    @classmethod
    def word(cls, *gens, coeff=1):
        return cls({tuple(gens): coeff})

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return ExteriorExpression(out)

    __radd__ = __add__

    def __neg__(self):
        return ExteriorExpression({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return ExteriorExpression({w: c * v for w, v in self.terms.items()})

    def wedge(self, other):
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w, s = _canonical(w1 + w2)
                if w is not None:
                    out[w] = out.get(w, 0) + s * c1 * c2
        return ExteriorExpression(out)

    __xor__ = wedge

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, ExteriorExpression):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def weights(self):
        return {sum(g.weight for g in w) for w in self.terms}

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            mono = "∧".join(g.format() for g in w)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ExteriorExpression[{self.format()}]"


def lie_boundary(g):
    """∂ on a single generator."""
    if g.weight == 1:
        return ExteriorExpression()
    one = g.field.one
    n = g.weight
    a = g.arg
    if g.kind == BRACE:
        return ExteriorExpression.word(brace(a, n - 1), brace(one - a, 1))
    return ExteriorExpression.word(angle(a, n - 1), brace(one - a, 1)) + ExteriorExpression.word(
        angle(one - a, 1), brace(a, n - 1)
    )


def extend_derivation(e):
    """∂ as an odd derivation on wedge words."""
    out = ExteriorExpression()
    for word, c in e.terms.items():
        for i, g in enumerate(word):
            dg = lie_boundary(g)
            if dg.is_zero():
                continue
            left = ExteriorExpression.word(*word[:i]) if i else ExteriorExpression({(): 1})
            right = ExteriorExpression.word(*word[i + 1:]) if i + 1 < len(word) else ExteriorExpression({(): 1})
            sign = -1 if i % 2 else 1
            out = out + (sign * c) * left.wedge(dg).wedge(right)
    return out


def d_squared_zero(a, n):
    """∂∂ vanishes on {a}_n and <a>_n."""
    parts = []
    for g in (brace(a, n), angle(a, n)):
        dd = extend_derivation(lie_boundary(g))
        parts.append(Verification(f"d^2 {g.format()}", dd.is_zero(), dd.format()))
    return Verification.combine("d-squared", parts, witness="0")


def evaluate_weight2(e, field=None):
    """Σ u ⊗ (1 - v) over the words <u>_1 ∧ {v}_1."""
    terms = []
    F = field
    for word, c in e.terms.items():
        if len(word) != 2 or any(g.weight != 1 for g in word):
            raise NotWeightTwo(f"{'∧'.join(g.format() for g in word)} is not of the form <u>_1∧{{v}}_1")
        first, second = word
        if first.kind != ANGLE or second.kind != BRACE:
            raise NotWeightTwo(f"{first.format()}∧{second.format()} is not of the form <u>_1∧{{v}}_1")
        F = F or first.field
        u, v = F(first.arg), F(second.arg)
        terms.append((F(c) * u, F.one - v))
    if F is None:
        from .fields import QQ

        F = QQ
    return TensorElement.from_terms(F, terms)


__all__ = [
    "ExteriorExpression",
    "LieGenerator",
    "angle",
    "brace",
    "d_squared_zero",
    "evaluate_weight2",
    "extend_derivation",
    "lie_boundary",
]
