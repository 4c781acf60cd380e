"""Simple algebraic extensions Q[t]/(t^delta - a).

Elements are stored as coefficient tuples ``(c_0, ..., c_{delta-1})`` of the
representative ``c_0 + c_1 t + ... + c_{delta-1} t^{delta-1}``. Irreducibility
of the modulus is not checked when the field is created; a reducible modulus
is detected the first time an inversion hits a zero divisor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from ..errors import DomainError, ReducibleModulus


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _udivmod(num, den):
    """Univariate division with remainder over Q, coefficient lists low->high."""
    num = _trim(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[i + shift] -= c * d
        num = _trim(num)
    return _trim(q), num


def _usub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _umul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _xgcd(a, b):
    """Return (g, s) with s*a = g mod b, g = gcd(a, b) (not normalised)."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(q, s1))
    return r0, s0


@dataclass(frozen=True)
class ExtField:
    """The ring Q[t]/(t^degree - a), meant to be a field."""

    degree: int
    a: Fraction
    name: str = "t"

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 1:
            raise ValueError(f"extension degree must be a positive integer, got {self.degree}")
        a = Fraction(self.a)
        if a == 0:
            raise ValueError("modulus t^delta - a needs a != 0")
        object.__setattr__(self, "a", a)

    def __call__(self, value) -> "ExtElement":
        if isinstance(value, ExtElement):
            if value.field != self:
                raise DomainError("element belongs to a different extension")
            return value
        if isinstance(value, (int, Fraction, _RationalABC)):
            return ExtElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        coeffs = [Fraction(c) for c in value]
        if len(coeffs) > self.degree:
            # reduce an arbitrary representative modulo t^delta - a
            coeffs = ExtElement._reduce(coeffs, self)
        return ExtElement(self, tuple(coeffs) + (Fraction(0),) * (self.degree - len(coeffs)))

    @property
    def gen(self) -> "ExtElement":
        """The class of ``t``; it satisfies ``gen**degree == a``."""
        if self.degree == 1:
            return self(self.a)
        return self([0, 1])

    @property
    def modulus(self):
        """Coefficients of ``t^degree - a`` from low to high."""
        return [-self.a] + [Fraction(0)] * (self.degree - 1) + [Fraction(1)]

    def __str__(self):
        return f"Q[{self.name}]/({self.name}^{self.degree} - {self.a})"


class ExtElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != field.degree:
            raise ValueError("representative must have exactly `degree` coefficients")
        self.field = field
        self.coeffs = coeffs

    @staticmethod
    def _reduce(coeffs, field):
        c = list(coeffs)
        delta, a = field.degree, field.a
        for i in range(len(c) - 1, delta - 1, -1):
            if c[i]:
                c[i - delta] += c[i] * a
                c[i] = Fraction(0)
        return c[:delta]

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.field != self.field:
                raise DomainError(f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction, _RationalABC)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.field, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.field, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExtElement(self.field, [x * other for x in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        delta = self.field.degree
        prod = [Fraction(0)] * (2 * delta - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        return ExtElement(self.field, self._reduce(prod, self.field))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "ExtElement":
        """Multiplicative inverse via the extended Euclidean algorithm.

        Raises ``ZeroDivisionError`` for zero and ``ReducibleModulus`` when the
        representative shares a nontrivial factor with the modulus.
        """
        rep = _trim(self.coeffs)
        if not rep:
            raise ZeroDivisionError("zero has no inverse")
        g, s = _xgcd(rep, self.field.modulus)
        if len(g) > 1:
            lead = g[-1]
            factor = [c / lead for c in g]
            raise ReducibleModulus(
                f"{self.field}: modulus has the factor {factor} (element {self} is a zero divisor)",
                factor,
            )
        c = g[0]
        return self.field([x / c for x in s])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, _RationalABC)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_text(self) -> str:
        from ..parser import format_rational

        name = self.field.name
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            if mono:
                body = mono if abs(c) == 1 else f"{format_rational(abs(c))}*{mono}"
            else:
                body = format_rational(abs(c))
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) or "0"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ExtElement({self.to_text()} in {self.field})"


def ext_invert(e: ExtElement) -> ExtElement:
    return e.inverse()


def rational_root(a, degree: int):
    """Return a rational ``xi`` with ``xi**degree == a``, or None."""
    a = Fraction(a)
    if degree == 1:
        return a
    sign = 1
    if a < 0:
        if degree % 2 == 0:
            return None
        sign, a = -1, -a

    def iroot(n):
        if n == 0:
            return 0
        try:
            x = int(round(n ** (1.0 / degree)))
        except OverflowError:
            x = 0
        for cand in (x - 1, x, x + 1):
            if cand >= 0 and cand ** degree == n:
                return cand
        # fall back to exact integer Newton iteration for huge n
        lo, hi = 0, 1
        while hi ** degree <= n:
            hi *= 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid ** degree <= n:
                lo = mid
            else:
                hi = mid - 1
        return lo if lo ** degree == n else None

    num, den = iroot(a.numerator), iroot(a.denominator)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def _prime_factors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def binomial_factor(degree: int, a):
    """A proper factor of ``t^degree - a`` over Q, or None if it is irreducible.

    Uses the classical criterion for binomials: ``t^n - a`` is reducible iff
    ``a`` is a ``p``-th power for some prime ``p | n``, or ``4 | n`` and
    ``a = -4 c^4``. Coefficients are returned low to high.
    """
    a = Fraction(a)
    for p in _prime_factors(degree):
        b = rational_root(a, p)
        if b is not None:
            k = degree // p
            return [-b] + [Fraction(0)] * (k - 1) + [Fraction(1)]
    if degree % 4 == 0 and a < 0:
        c = rational_root(-a / 4, 4)
        if c is not None:
            # x^4 + 4c^4 = (x^2 - 2cx + 2c^2)(x^2 + 2cx + 2c^2), x = t^(degree/4)
            k = degree // 4
            out = [Fraction(0)] * (2 * k + 1)
            out[0] = 2 * c * c
            out[k] = -2 * c
            out[2 * k] = Fraction(1)
            return out
    return None


def check_irreducible(field: ExtField) -> None:
    """Raise ``ReducibleModulus`` when ``t^delta - a`` factors over Q."""
    if field.degree == 1:
        return
    factor = binomial_factor(field.degree, field.a)
    if factor is not None:
        raise ReducibleModulus(f"{field}: the modulus is reducible, factor {factor}", factor)
