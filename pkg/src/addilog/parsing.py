"""Text syntax for fields, elements, curves and co-Lie generators.

Field descriptors::

    Q | Q(a,b) | Fp(P) | Fp(P)[beta] | ext(<desc>, u, <monic poly in u>)

optionally followed by a parenthesised list of transcendental variables,
e.g. ``Fp(3)[beta](y)``.  Expressions are integers, variables, ``+ - * / ^``
with nonnegative integer exponents, and parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, UnknownVariable
from .fields import QQ, artin_schreier_field, function_field, prime_field, rational_function_field, simple_extension
from .poly import UPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, op, end
    text: str
    pos: int


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            out.append(Token("op", ch, m.start(3)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


_INFIX = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_PREFIX_MINUS = 30


class _ExprParser:
    def __init__(self, text, field, names):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.F = field
        self.names = names

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.peek()
        if t.text != text or t.kind != "op":
            got = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {got}", t.pos)
        return self.advance()

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        value = self.expr(0)
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return value

    def expr(self, rbp):
        left = self.nud(self.advance())
        while True:
            t = self.peek()
            if t.kind != "op" or t.text not in _INFIX or _INFIX[t.text] <= rbp:
                return left
            self.advance()
            left = self.led(t, left)

    def nud(self, t):
        if t.kind == "int":
            return self.F(int(t.text))
        if t.kind == "name":
            if t.text not in self.names:
                raise UnknownVariable(f"unknown variable {t.text!r}", t.pos)
            return self.F.gen(t.text)
        if t.kind == "op" and t.text == "(":
            value = self.expr(0)
            self.expect(")")
            return value
        if t.kind == "op" and t.text == "-":
            return -self.expr(_PREFIX_MINUS)
        if t.kind == "op" and t.text == "+":
            return self.expr(_PREFIX_MINUS)
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)

    def led(self, t, left):
        op = t.text
        if op == "^":
            e = self.advance()
            if e.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", e.pos)
            return left ** int(e.text)
        right = self.expr(_INFIX[op])
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if not right:
            raise ParseError("division by zero", t.pos)
        return left / right


def parse_expression(text, field, param=None):
    """Parse ``text`` into ``field``, or into field(param) when a parameter
    name is given."""
    if param is not None:
        field = rational_function_field(field, param)
    return _ExprParser(text, field, set(field.variables())).parse()


def expression_field(field, param=None):
    return rational_function_field(field, param) if param is not None else field


# field descriptors

class _DescParser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def error(self, msg, pos=None):
        raise ParseError(msg, self.pos if pos is None else pos)

    def lit(self, s):
        self.ws()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def ident(self):
        self.ws()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group(0)

    def integer(self):
        self.ws()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group(0)), m.start()

    def until_close(self):
        """Raw text up to the matching ')' of an already-open parenthesis."""
        depth = 1
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    return self.text[start:self.pos], start
            self.pos += 1
        self.error("unbalanced parenthesis")

    def field(self):
        self.ws()
        start = self.pos
        if self.text.startswith("ext", self.pos) and self.text[self.pos + 3:].lstrip().startswith("("):
            self.pos += 3
            self.lit("(")
            base = self.field()
            self.lit(",")
            name = self.ident()
            if name in base.variables():
                self.error(f"name {name!r} already used", self.pos - len(name))
            self.lit(",")
            body, at = self.until_close()
            self.pos += 1
            poly = _parse_poly(body, base, name, at)
            F = simple_extension(base, name, poly)
        elif self.text.startswith("Fp", self.pos):
            self.pos += 2
            self.lit("(")
            p, at = self.integer()
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                self.error(f"{p} is not prime", at)
            self.lit(")")
            self.ws()
            if self.text.startswith("[", self.pos):
                self.pos += 1
                name = self.ident()
                self.lit("]")
                F = artin_schreier_field(p, name)
            else:
                F = prime_field(p)
        elif self.text.startswith("Q", self.pos):
            self.pos += 1
            F = QQ
        else:
            self.error("expected Q, Fp(P) or ext(...)", start)
        self.ws()
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            self.pos += 1
            names = [self.ident()]
            self.ws()
            while self.text.startswith(",", self.pos):
                self.pos += 1
                names.append(self.ident())
                self.ws()
            self.lit(")")
            for n in names:
                if n in F.variables() or names.count(n) > 1:
                    self.error(f"variable {n!r} repeats")
            F = function_field(F, names)
        return F

    def parse(self):
        F = self.field()
        self.ws()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return F


def _parse_poly(body, base, name, offset):
    try:
        f = parse_expression(body, base, param=name)
    except ParseError as exc:
        raise ParseError(str(exc).rsplit(" (at offset", 1)[0], exc.position + offset) from None
    if not f.den.is_one():
        raise ParseError("the defining polynomial must be a polynomial", offset)
    poly = f.num
    if poly.degree < 1 or poly.lc != base.one:
        raise ParseError("the defining polynomial must be monic of positive degree", offset)
    return UPoly(base, poly.coeffs)


def parse_field_descriptor(text):
    """Field from its descriptor text.  Raises ParseError or
    IrreducibilityFailure."""
    return _DescParser(text).parse()


# curves and generators

def parse_curve(text, field, param="t"):
    """``x; y1; ...; yn`` as rational functions of ``param``."""
    parts = text.split(";")
    out = []
    offset = 0
    for part in parts:
        try:
            out.append(parse_expression(part, field, param=param))
        except ParseError as exc:
            cls = type(exc)
            raise cls(str(exc).rsplit(" (at offset", 1)[0], exc.position + offset) from None
        offset += len(part) + 1
    if len(out) < 2:
        raise ParseError("a curve needs x and at least one y coordinate", len(text))
    return out


_GEN = re.compile(r"\s*([{<])(.*)([}>])_(\d+)\s*$")


def parse_generator(text, field):
    """``{a}_n`` or ``<a>_n``."""
    from .lie import angle, brace

    m = _GEN.match(text)
    if not m or (m.group(1) == "{") != (m.group(3) == "}"):
        raise ParseError("expected {a}_n or <a>_n", 0)
    try:
        a = parse_expression(m.group(2), field)
    except ParseError as exc:
        raise type(exc)(str(exc).rsplit(" (at offset", 1)[0], exc.position + m.start(2)) from None
    n = int(m.group(4))
    return brace(a, n) if m.group(1) == "{" else angle(a, n)


__all__ = [
    "Token",
    "expression_field",
    "parse_curve",
    "parse_expression",
    "parse_field_descriptor",
    "parse_generator",
    "tokenize",
]
