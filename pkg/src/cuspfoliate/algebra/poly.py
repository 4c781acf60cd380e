"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a map from exponent tuples to nonzero coefficients over a
declared, ordered variable list. Coefficients are ``Fraction`` (the default
domain) or ``ExtElement`` of a single ``ExtField``; one polynomial never
mixes the two.

Division uses the graded lexicographic order with the declared variable
order (the first variable is the most significant).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from ..errors import DomainError, NotDivisible, UndefinedOrder
from .extension import ExtElement, ExtField

Exponent = tuple[int, ...]


def grlex_key(exp: Exponent):
    return (sum(exp), exp)


class SparsePoly:
    __slots__ = ("variables", "terms", "field")

    def __init__(self, variables: Sequence[str], terms=None, field: ExtField | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise DomainError(f"repeated variable name in {variables}")
        n = len(variables)
        clean: dict[Exponent, object] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, c in items:
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise DomainError(f"exponent {exp} does not match variables {variables}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = _coerce_coeff(c, field)
                if exp in clean:
                    c = clean[exp] + c
                if c:
                    clean[exp] = c
                else:
                    clean.pop(exp, None)
        self.variables = variables
        self.terms = clean
        self.field = field

    @classmethod
    def _raw(cls, variables, terms, field):
        # trusted constructor: terms already normalised
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj.field = field
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables, field=None):
        return cls._raw(tuple(variables), {}, field)

    @classmethod
    def constant(cls, c, variables, field=None):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c}, field)

    @classmethod
    def one(cls, variables, field=None):
        return cls.constant(1, variables, field)

    @classmethod
    def monomial(cls, exp, variables, c=1, field=None):
        return cls(variables, {tuple(exp): c}, field)

    @classmethod
    def var(cls, name, variables, field=None):
        variables = tuple(variables)
        if name not in variables:
            raise DomainError(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: 1}, field)

    @classmethod
    def gens(cls, variables, field=None):
        variables = tuple(variables)
        return tuple(cls.var(v, variables, field) for v in variables)

    # -- basic queries ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def constant_term(self):
        c = self.terms.get((0,) * self.nvars)
        if c is None:
            return self._zero_coeff()
        return c

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_term(self):
        """Leading (exponent, coefficient) in graded lexicographic order."""
        if not self.terms:
            raise UndefinedOrder("the zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def sorted_terms(self, descending=False):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=descending)

    def order(self) -> int:
        """Order at the origin: minimal total degree of the support."""
        if not self.terms:
            raise UndefinedOrder("the zero polynomial has no order at the origin")
        return min(sum(e) for e in self.terms)

    def monomial_content(self) -> Exponent:
        """Exponents of the largest monomial dividing the polynomial."""
        if not self.terms:
            raise UndefinedOrder("the zero polynomial has no monomial content")
        it = iter(self.terms)
        low = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < low[i]:
                    low[i] = x
        return tuple(low)

    def _index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise IndexError(f"variable index {var} out of range")
            return var
        try:
            return self.variables.index(var)
        except ValueError:
            raise DomainError(f"unknown variable {var!r}") from None

    def _zero_coeff(self):
        return self.field(0) if self.field is not None else Fraction(0)

    # -- domain handling ----------------------------------------------------

    def _compatible(self, other: "SparsePoly"):
        if self.variables != other.variables:
            raise DomainError(f"variable lists differ: {self.variables} vs {other.variables}")
        if self.field != other.field:
            raise DomainError(f"coefficient domains differ: {_dom(self.field)} vs {_dom(other.field)}")

    def _lift_operand(self, other):
        if isinstance(other, SparsePoly):
            self._compatible(other)
            return other
        if isinstance(other, (int, Fraction, _RationalABC, ExtElement)):
            return SparsePoly.constant(other, self.variables, self.field)
        return NotImplemented

    def lift(self, field: ExtField | None) -> "SparsePoly":
        """Same polynomial with coefficients moved into ``field``."""
        if field == self.field:
            return self
        if self.field is not None:
            raise DomainError("towers of extensions are not supported")
        return SparsePoly._raw(self.variables, {e: field(c) for e, c in self.terms.items()}, field)

    def rename(self, variables) -> "SparsePoly":
        """Reinterpret the exponent vectors over a new list of names."""
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise DomainError("renaming must keep the number of variables")
        return SparsePoly._raw(variables, dict(self.terms), self.field)

    def embed(self, variables) -> "SparsePoly":
        """View the polynomial inside a larger variable list (by name)."""
        variables = tuple(variables)
        pos = []
        for v in self.variables:
            if v not in variables:
                raise DomainError(f"variable {v!r} missing from {variables}")
            pos.append(variables.index(v))
        n = len(variables)
        terms = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, x in zip(pos, e):
                new[i] = x
            terms[tuple(new)] = c
        return SparsePoly._raw(variables, terms, self.field)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._lift_operand(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return SparsePoly._raw(self.variables, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.variables, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift_operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SparsePoly":
        c = _coerce_coeff(c, self.field)
        if not c:
            return SparsePoly.zero(self.variables, self.field)
        return SparsePoly._raw(self.variables, {e: v * c for e, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, _RationalABC, ExtElement)):
            return self.scale(other)
        other = self._lift_operand(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        out = {e: c for e, c in out.items() if c}
        return SparsePoly._raw(self.variables, out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if int(n) != n or n < 0:
            raise ValueError(f"polynomial powers need a nonnegative integer exponent, got {n}")
        result = SparsePoly.one(self.variables, self.field)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exp) -> "SparsePoly":
        """Multiply by the monomial with exponent vector ``exp``."""
        exp = tuple(exp)
        return SparsePoly._raw(
            self.variables,
            {tuple(x + y for x, y in zip(e, exp)): c for e, c in self.terms.items()},
            self.field,
        )

    def unshift(self, exp) -> "SparsePoly":
        """Exact division by the monomial with exponent vector ``exp``."""
        exp = tuple(exp)
        out = {}
        for e, c in self.terms.items():
            new = tuple(x - y for x, y in zip(e, exp))
            if any(x < 0 for x in new):
                raise NotDivisible(f"monomial {exp} does not divide the polynomial")
            out[new] = c
        return SparsePoly._raw(self.variables, out, self.field)

    def divide_exact(self, g: "SparsePoly") -> "SparsePoly":
        """Return ``q`` with ``self == q * g``; raise ``NotDivisible`` otherwise.

        Repeatedly cancels the grlex-leading term of the running remainder.
        Because ``{g}`` is a Groebner basis of the principal ideal it spans,
        the first leading term not divisible by ``LT(g)`` proves that ``g``
        does not divide ``self``.
        """
        g = self._lift_operand(g)
        if not g.terms:
            raise ZeroDivisionError("exact division by the zero polynomial")
        if not self.terms:
            return self
        lt_exp, lt_c = g.leading_term()
        inv = 1 / lt_c
        if len(g.terms) == 1:
            return self.unshift(lt_exp).scale(inv)
        rest = [(e, c) for e, c in g.terms.items() if e != lt_exp]
        rem = dict(self.terms)
        heap = [_heap_key(e) for e in rem]
        heapq.heapify(heap)
        quotient = {}
        while rem:
            while True:
                exp = _from_heap_key(heapq.heappop(heap))
                if exp in rem:
                    break
            c = rem.pop(exp)
            qe = tuple(x - y for x, y in zip(exp, lt_exp))
            if any(x < 0 for x in qe):
                raise NotDivisible("leading term of the remainder is not divisible by the divisor's")
            qc = c * inv
            quotient[qe] = qc
            for ge, gc in rest:
                e = tuple(x + y for x, y in zip(qe, ge))
                v = rem.get(e)
                if v is None:
                    rem[e] = -qc * gc
                    heapq.heappush(heap, _heap_key(e))
                else:
                    v = v - qc * gc
                    if v:
                        rem[e] = v
                    else:
                        del rem[e]
        return SparsePoly._raw(self.variables, quotient, self.field)

    def divides(self, f: "SparsePoly") -> bool:
        try:
            f.divide_exact(self)
        except NotDivisible:
            return False
        return True

    # -- calculus and composition ------------------------------------------

    def diff(self, var) -> "SparsePoly":
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                new = e[:i] + (k - 1,) + e[i + 1:]
                out[new] = c * k
        return SparsePoly._raw(self.variables, out, self.field)

    def subs(self, mapping: Mapping[str, "SparsePoly"]) -> "SparsePoly":
        """Compose with a substitution ``variable -> polynomial``.

        All images share one variable list, which becomes the variable list
        of the result. Variables not mentioned are kept as they are, which
        requires them to exist in the target list.
        """
        images = {}
        target_vars = None
        field = self.field
        for name, img in mapping.items():
            if name not in self.variables:
                raise DomainError(f"substitution for unknown variable {name!r}")
            if not isinstance(img, SparsePoly):
                raise TypeError(f"image of {name!r} must be a SparsePoly")
            if target_vars is None:
                target_vars = img.variables
            elif img.variables != target_vars:
                raise DomainError("substitution images must share one variable list")
            if img.field is not None:
                if field is not None and img.field != field:
                    raise DomainError("substitution mixes coefficient domains")
                field = img.field
            images[name] = img
        if target_vars is None:
            target_vars = self.variables
        for name in self.variables:
            if name not in images:
                images[name] = SparsePoly.var(name, target_vars)
        images = {k: v.lift(field) for k, v in images.items()}
        base = self.lift(field) if self.field is None and field is not None else self
        power_cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in power_cache:
                img = images[self.variables[i]]
                if k == 1:
                    power_cache[key] = img
                elif k % 2 == 0:
                    half = power(i, k // 2)
                    power_cache[key] = half * half
                else:
                    power_cache[key] = power(i, k - 1) * img
            return power_cache[key]

        out: dict = {}
        for e, c in base.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) if term is None else term * power(i, k)
            if term is None:
                items = (((0,) * len(target_vars), c),)
            else:
                items = ((te, tc * c) for te, tc in term.terms.items())
            for te, tc in items:
                v = out.get(te)
                out[te] = tc if v is None else v + tc
        out = {e: c for e, c in out.items() if c}
        return SparsePoly._raw(target_vars, out, field)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a point given as ``name -> scalar`` for every variable."""
        total = self._zero_coeff()
        for e, c in self.terms.items():
            v = c
            for name, k in zip(self.variables, e):
                if k:
                    v = v * point[name] ** k
            total = total + v
        return total

    # -- comparisons and display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return (self.variables == other.variables and self.field == other.field
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction, _RationalABC, ExtElement)):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.field, frozenset(self.terms.items())))

    def __str__(self):
        from ..parser import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"SparsePoly({str(self)!r}, variables={self.variables})"


def _heap_key(e):
    return (-sum(e), tuple(-x for x in e))


def _from_heap_key(k):
    return tuple(-x for x in k[1])


def _dom(field):
    return "Q" if field is None else str(field)


def _coerce_coeff(c, field):
    if isinstance(c, ExtElement):
        if field is None or c.field != field:
            raise DomainError(f"coefficient from {c.field} in a polynomial over {_dom(field)}")
        return c
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, (int, Fraction, _RationalABC)):
        c = Fraction(c)
        return field(c) if field is not None else c
    if isinstance(c, str):
        c = Fraction(c)
        return field(c) if field is not None else c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


# thin functional aliases matching the operation names used in the docs


def divide_exact(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    return f.divide_exact(g)


def partial_derivative(f: SparsePoly, var) -> SparsePoly:
    return f.diff(var)


def substitute(f: SparsePoly, mapping: Mapping[str, SparsePoly]) -> SparsePoly:
    return f.subs(mapping)


def order_at_origin(f: SparsePoly) -> int:
    return f.order()


def poly_sum(items: Iterable[SparsePoly], variables, field=None) -> SparsePoly:
    total = SparsePoly.zero(variables, field)
    for p in items:
        total = total + p
    return total
