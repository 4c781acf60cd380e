"""Text grammar for polynomials and 1-forms, and canonical printing.

Grammar (whitespace is insignificant)::

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | primary ("^" natural)?
    primary := rational | var | name | "(" expr ")" | "d" "(" expr ")" | "d" var

``rational`` is an integer or ``a/b`` with ``b > 0``. There is no implicit
multiplication, so ``2x`` and ``x y`` are syntax errors. ``d<var>`` is the
differential of a declared variable; a declared variable always wins over
the ``d`` reading, so with variables ``(d, x)`` the identifier ``dx`` is
``d(x)`` only if ``dx`` itself is not declared. ``name`` refers to an entry
of the optional environment of named definitions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra.extension import ExtElement
from .algebra.poly import SparsePoly, grlex_key
from .errors import CuspfoliateError


class ParseError(CuspfoliateError, ValueError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message, line=1, col=1, text=None):
        self.line = line
        self.col = col
        self.reason = message
        where = f"line {line}, column {col}"
        super().__init__(f"{message} at {where}")


class UnknownVariable(ParseError):
    pass


class NegativeExponent(ParseError):
    pass


class NonIntegerExponent(ParseError):
    pass


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


@dataclass
class ExprAst:
    """Parse tree node; ``kind`` is one of number, variable, name, add, sub,
    mul, pow, neg, group, dvar, dmacro."""

    kind: str
    children: list = field(default_factory=list)
    value: object = None
    pos: int = 0


def _tokenize(text):
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise _error(ParseError, f"unexpected character {text[i]!r}", text, i)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), i))
        i = m.end()
    out.append(Token("end", "", len(text)))
    return out


def _linecol(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _error(cls, message, text, pos):
    line, col = _linecol(text, pos)
    return cls(message, line, col)


class _Parser:
    def __init__(self, text, variables, env):
        self.text = text
        self.variables = tuple(variables)
        self.env = env or {}
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, message, tok=None, cls=ParseError):
        tok = tok or self.peek()
        raise _error(cls, message, self.text, tok.pos)

    def expect(self, text):
        t = self.peek()
        if t.text != text:
            found = "end of input" if t.kind == "end" else repr(t.text)
            self.fail(f"expected {text!r}, found {found}")
        return self.advance()

    def parse(self):
        if self.peek().kind == "end":
            self.fail("empty expression")
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            if t.kind in ("num", "ident") or t.text == "(":
                self.fail(f"expected an operator before {t.text!r} (multiplication must be explicit)")
            self.fail(f"unexpected {t.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            t = self.advance()
            node = ExprAst("add" if t.text == "+" else "sub", [node, self.term()], pos=t.pos)
        return node

    def term(self):
        node = self.factor()
        while self.peek().text == "*":
            t = self.advance()
            node = ExprAst("mul", [node, self.factor()], pos=t.pos)
        return node

    def factor(self):
        t = self.peek()
        if t.text == "-":
            self.advance()
            return ExprAst("neg", [self.factor()], pos=t.pos)
        base = self.primary()
        if self.peek().text == "^":
            self.advance()
            e = self.peek()
            if e.text == "-":
                self.fail("negative exponents are not allowed", e, NegativeExponent)
            if e.kind == "num":
                if "." in e.text or self.peek(1).text == "/":
                    self.fail("exponents must be nonnegative integers", e, NonIntegerExponent)
                self.advance()
                return ExprAst("pow", [base], value=int(e.text), pos=e.pos)
            if e.kind == "end":
                self.fail("expected an exponent, found end of input", e)
            self.fail("exponents must be nonnegative integer literals", e, NonIntegerExponent)
        return base

    def primary(self):
        t = self.peek()
        if t.kind == "num":
            if "." in t.text:
                self.fail("decimal literals are not exact; write a/b", t)
            self.advance()
            value = Fraction(int(t.text))
            if self.peek().text == "/":
                self.advance()
                den = self.peek()
                if den.kind != "num" or "." in den.text:
                    self.fail("a rational literal needs a positive integer denominator", den)
                self.advance()
                if int(den.text) == 0:
                    self.fail("zero denominator", den)
                value = Fraction(int(t.text), int(den.text))
            return ExprAst("number", value=value, pos=t.pos)
        if t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return ExprAst("group", [inner], pos=t.pos)
        if t.kind == "ident":
            self.advance()
            name = t.text
            if name in self.variables:
                return ExprAst("variable", value=name, pos=t.pos)
            if name == "d" and self.peek().text == "(":
                self.advance()
                inner = self.expr()
                self.expect(")")
                return ExprAst("dmacro", [inner], pos=t.pos)
            if name in self.env:
                return ExprAst("name", value=name, pos=t.pos)
            if name.startswith("d") and len(name) > 1:
                if name[1:] in self.variables:
                    return ExprAst("dvar", value=name[1:], pos=t.pos)
                self.fail(f"unknown variable {name[1:]!r} in differential {name!r}", t, UnknownVariable)
            self.fail(f"unknown variable {name!r}", t, UnknownVariable)
        if t.kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {t.text!r}")


# -- evaluation --------------------------------------------------------------


def _evaluate(node: ExprAst, text, variables, env):
    from .forms import DiffForm, differential

    def ev(n):
        k = n.kind
        if k == "number":
            return SparsePoly.constant(n.value, variables)
        if k == "variable":
            return SparsePoly.var(n.value, variables)
        if k == "name":
            v = env[n.value]
            if isinstance(v, str):
                v = _evaluate(_Parser(v, variables, env).parse(), v, variables, env)
            if isinstance(v, (SparsePoly, DiffForm)) and v.variables != variables:
                raise _error(ParseError, f"definition {n.value!r} uses other variables", text, n.pos)
            return v
        if k == "group":
            return ev(n.children[0])
        if k == "neg":
            return -ev(n.children[0])
        if k == "dvar":
            return DiffForm.dx(n.value, variables)
        if k == "dmacro":
            inner = ev(n.children[0])
            if not isinstance(inner, SparsePoly):
                raise _error(ParseError, "d(...) applies to polynomials only", text, n.pos)
            return differential(inner)
        if k == "pow":
            base = ev(n.children[0])
            if not isinstance(base, SparsePoly):
                raise _error(ParseError, "only polynomials can be raised to a power", text, n.pos)
            return base ** n.value
        a, b = ev(n.children[0]), ev(n.children[1])
        if k in ("add", "sub"):
            if type(a) is not type(b) or (isinstance(a, DiffForm) and a.degree != b.degree):
                raise _error(ParseError, "cannot add a polynomial and a form", text, n.pos)
            return a + b if k == "add" else a - b
        if k == "mul":
            if isinstance(a, DiffForm) and isinstance(b, DiffForm):
                raise _error(ParseError, "product of two forms; only function * form is allowed", text, n.pos)
            if isinstance(a, DiffForm):
                return a * b
            return b * a if isinstance(b, DiffForm) else a * b
        raise AssertionError(k)

    return ev(node)


def parse_ast(text: str, variables: Sequence[str], env=None) -> ExprAst:
    return _Parser(text, variables, env).parse()


def parse_expr(text: str, variables: Sequence[str], env: Mapping | None = None):
    """Parse to either a SparsePoly or a DiffForm, whichever the text denotes."""
    variables = tuple(variables)
    env = dict(env or {})
    return _evaluate(_Parser(text, variables, env).parse(), text, variables, env)


def parse_poly(text: str, variables: Sequence[str], env: Mapping | None = None) -> SparsePoly:
    value = parse_expr(text, variables, env)
    if not isinstance(value, SparsePoly):
        line, col = 1, 1
        raise ParseError("expected a polynomial but the text denotes a differential form", line, col)
    return value


def parse_form(text: str, variables: Sequence[str], env: Mapping | None = None):
    """Parse a 1-form such as ``2*x*dy - 3*y*dx`` or ``d(z^2 + x*y)``.

    A bare polynomial ``0`` is accepted as the zero form.
    """
    from .forms import DiffForm

    value = parse_expr(text, variables, env)
    if isinstance(value, SparsePoly):
        if value.is_zero:
            return DiffForm.zero(tuple(variables), 1)
        raise ParseError("expected a differential form but the text denotes a polynomial", 1, 1)
    return value


# -- printing ----------------------------------------------------------------


def format_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_text(exp, variables):
    parts = []
    for name, k in zip(variables, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _term_pieces(c, mono):
    """(negative?, body) for the term ``c * mono``."""
    if isinstance(c, ExtElement) and not c.is_rational():
        body = f"({c.to_text()})"
        return False, f"{body}*{mono}" if mono else body
    c = Fraction(c.coeffs[0]) if isinstance(c, ExtElement) else Fraction(c)
    neg = c < 0
    a = -c if neg else c
    if not mono:
        return neg, format_rational(a)
    if a == 1:
        return neg, mono
    return neg, f"{format_rational(a)}*{mono}"


def format_poly(f: SparsePoly) -> str:
    """Canonical text: terms in ascending graded-lex order.

    Lower total degree comes first; within a degree, exponent vectors are
    compared lexicographically in the declared variable order, smaller
    first. Coefficients print as integers or ``n/d``.
    """
    if not f.terms:
        return "0"
    out = []
    for exp, c in sorted(f.terms.items(), key=lambda t: grlex_key(t[0])):
        neg, body = _term_pieces(c, _monomial_text(exp, f.variables))
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _coeff_text(c: SparsePoly):
    """Coefficient of a form term: (neg, text) with parentheses when needed."""
    if len(c.terms) == 1:
        (exp, a), = c.terms.items()
        neg, body = _term_pieces(a, _monomial_text(exp, c.variables))
        return neg, body
    return False, f"({format_poly(c)})"


def format_form(omega) -> str:
    """Canonical text for a form: ``coeff*dx_i^dx_j`` terms in index order."""
    if not omega.coeffs:
        return "0"
    out = []
    for idx in sorted(omega.coeffs):
        c = omega.coeffs[idx]
        basis = "^".join("d" + omega.variables[i] for i in idx)
        neg, body = _coeff_text(c)
        if basis:
            if body == "1":
                text = basis
            else:
                text = f"{body}*{basis}"
        else:
            text = body
        if not out:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)
