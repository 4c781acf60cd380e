"""Polynomial differential forms, integrability and logarithmic criteria.

A k-form is stored as a map from strictly increasing index tuples (into the
variable list) to nonzero polynomial coefficients, so ``{(0, 2): f}`` is
``f dx_0 ^ dx_2``. Meromorphic forms ``theta / f`` are handled through their
holomorphic numerators ``theta`` and the denominator ``f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra.poly import SparsePoly
from .errors import DomainError, NotDivisible, NotFree, NotLogarithmic, SearchBudgetExceeded


def _sort_sign(idx):
    """Sort an index tuple; return (sign, sorted) or (0, None) if repeated."""
    if len(set(idx)) != len(idx):
        return 0, None
    idx = list(idx)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class DiffForm:
    __slots__ = ("variables", "degree", "coeffs", "field")

    def __init__(self, variables: Sequence[str], degree: int, coeffs=None, field=None):
        variables = tuple(variables)
        if not 0 <= degree <= len(variables):
            raise ValueError(f"a {degree}-form does not exist in {len(variables)} variables")
        clean: dict[tuple[int, ...], SparsePoly] = {}
        for idx, c in (coeffs.items() if isinstance(coeffs, Mapping) else coeffs or ()):
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if not isinstance(c, SparsePoly):
                c = SparsePoly.constant(c, variables, field)
            if c.variables != variables:
                raise DomainError(f"coefficient over {c.variables}, form over {variables}")
            if field is None and c.field is not None:
                field = c.field
            elif c.field != field:
                raise DomainError("coefficients of one form must share a domain")
            sign, key = _sort_sign(idx)
            if not sign:
                continue
            c = c if sign > 0 else -c
            if key in clean:
                c = clean[key] + c
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.variables = variables
        self.degree = degree
        self.coeffs = clean
        self.field = field

    @classmethod
    def _raw(cls, variables, degree, coeffs, field):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.degree = degree
        obj.coeffs = coeffs
        obj.field = field
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables, degree, field=None):
        return cls._raw(tuple(variables), degree, {}, field)

    @classmethod
    def function(cls, f: SparsePoly) -> "DiffForm":
        """The polynomial ``f`` seen as a 0-form."""
        return cls(f.variables, 0, {(): f} if f else {}, f.field)

    @classmethod
    def dx(cls, name, variables, field=None) -> "DiffForm":
        variables = tuple(variables)
        if name not in variables:
            raise DomainError(f"unknown variable {name!r}")
        one = SparsePoly.one(variables, field)
        return cls._raw(variables, 1, {(variables.index(name),): one}, field)

    @classmethod
    def one_form(cls, coefficients: Mapping[str, SparsePoly], variables=None) -> "DiffForm":
        """Build ``sum a_v dv`` from a ``name -> coefficient`` map."""
        if variables is None:
            variables = next(iter(coefficients.values())).variables
        variables = tuple(variables)
        coeffs = {}
        for name, a in coefficients.items():
            if name not in variables:
                raise DomainError(f"unknown variable {name!r}")
            coeffs[(variables.index(name),)] = a
        return cls(variables, 1, coeffs)

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, *names) -> SparsePoly:
        """Coefficient of ``d names[0] ^ d names[1] ^ ...`` (sign-corrected)."""
        idx = tuple(self.variables.index(n) if isinstance(n, str) else n for n in names)
        sign, key = _sort_sign(idx)
        zero = SparsePoly.zero(self.variables, self.field)
        if not sign:
            return zero
        c = self.coeffs.get(key, zero)
        return c if sign > 0 else -c

    def order(self) -> int:
        """Order at the origin: the minimum over the coefficients."""
        from .errors import UndefinedOrder

        if not self.coeffs:
            raise UndefinedOrder("the zero form has no order at the origin")
        return min(c.order() for c in self.coeffs.values())

    def monomial_content(self):
        """Largest monomial dividing every coefficient, as an exponent tuple."""
        contents = [c.monomial_content() for c in self.coeffs.values()]
        if not contents:
            from .errors import UndefinedOrder

            raise UndefinedOrder("the zero form has no monomial content")
        return tuple(min(col) for col in zip(*contents))

    def _compatible(self, other):
        if self.variables != other.variables:
            raise DomainError(f"variable lists differ: {self.variables} vs {other.variables}")
        if self.field != other.field and self.coeffs and other.coeffs:
            raise DomainError("forms over different coefficient domains")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        self._compatible(other)
        if self.degree != other.degree:
            raise ValueError(f"cannot add a {self.degree}-form and a {other.degree}-form")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            if k in out:
                v = out[k] + c
                if v:
                    out[k] = v
                else:
                    del out[k]
            else:
                out[k] = c
        return DiffForm._raw(self.variables, self.degree, out, self.field or other.field)

    def __neg__(self):
        return DiffForm._raw(self.variables, self.degree,
                             {k: -c for k, c in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiplication by a function (polynomial or scalar)."""
        if isinstance(other, DiffForm):
            return NotImplemented
        out = {}
        for k, c in self.coeffs.items():
            v = c * other
            if v:
                out[k] = v
        field = self.field
        if isinstance(other, SparsePoly):
            if other.variables != self.variables:
                raise DomainError("function and form live over different variables")
            field = field or other.field
        return DiffForm._raw(self.variables, self.degree, out, field)

    __rmul__ = __mul__

    def wedge(self, other: "DiffForm") -> "DiffForm":
        return wedge(self, other)

    def __xor__(self, other):
        return wedge(self, other)

    def d(self) -> "DiffForm":
        return exterior_derivative(self)

    def pullback(self, mapping) -> "DiffForm":
        return pullback(self, mapping)

    def lift(self, field) -> "DiffForm":
        return DiffForm._raw(self.variables, self.degree,
                             {k: c.lift(field) for k, c in self.coeffs.items()}, field)

    def map_coefficients(self, fn) -> "DiffForm":
        out = {}
        for k, c in self.coeffs.items():
            v = fn(c)
            if v:
                out[k] = v
        field = next((v.field for v in out.values()), self.field)
        return DiffForm._raw(self.variables, self.degree, out, field)

    def divide_exact(self, f: SparsePoly) -> "DiffForm":
        """Divide every coefficient by ``f``; ``NotDivisible`` if any fails."""
        return DiffForm._raw(self.variables, self.degree,
                             {k: c.divide_exact(f) for k, c in self.coeffs.items()}, self.field)

    def shift(self, exp) -> "DiffForm":
        return DiffForm._raw(self.variables, self.degree,
                             {k: c.shift(exp) for k, c in self.coeffs.items()}, self.field)

    def unshift(self, exp) -> "DiffForm":
        return DiffForm._raw(self.variables, self.degree,
                             {k: c.unshift(exp) for k, c in self.coeffs.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.variables != other.variables:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.variables, self.degree, frozenset(self.coeffs.items())))

    def __str__(self):
        from .parser import format_form

        return format_form(self)

    def __repr__(self):
        return f"DiffForm({str(self)!r}, degree={self.degree})"


def differential(f: SparsePoly) -> DiffForm:
    """``df = sum df/dx_i dx_i`` as a 1-form."""
    coeffs = {}
    for i in range(f.nvars):
        c = f.diff(i)
        if c:
            coeffs[(i,)] = c
    return DiffForm._raw(f.variables, 1, coeffs, f.field)


def exterior_derivative(omega: DiffForm) -> DiffForm:
    """``d(f dx_I) = sum_j df/dx_j dx_j ^ dx_I``, normalised to sorted indices."""
    n = len(omega.variables)
    if omega.degree >= n:
        # top-degree forms are closed
        return DiffForm.zero(omega.variables, n, omega.field)
    out: dict = {}
    for idx, c in omega.coeffs.items():
        for j in range(n):
            if j in idx:
                continue
            dc = c.diff(j)
            if not dc:
                continue
            sign, key = _sort_sign((j,) + idx)
            term = dc if sign > 0 else -dc
            if key in out:
                v = out[key] + term
                if v:
                    out[key] = v
                else:
                    del out[key]
            else:
                out[key] = term
    return DiffForm._raw(omega.variables, omega.degree + 1, out, omega.field)


def wedge(omega: DiffForm, eta: DiffForm) -> DiffForm:
    """Graded-anticommutative exterior product."""
    if omega.variables != eta.variables:
        raise DomainError(f"variable lists differ: {omega.variables} vs {eta.variables}")
    deg = omega.degree + eta.degree
    if deg > len(omega.variables):
        return DiffForm.zero(omega.variables, len(omega.variables), omega.field)
    field = omega.field or eta.field
    out: dict = {}
    for i1, c1 in omega.coeffs.items():
        for i2, c2 in eta.coeffs.items():
            sign, key = _sort_sign(i1 + i2)
            if not sign:
                continue
            term = c1 * c2
            if sign < 0:
                term = -term
            if key in out:
                v = out[key] + term
                if v:
                    out[key] = v
                else:
                    del out[key]
            else:
                out[key] = term
    return DiffForm._raw(omega.variables, deg, {k: v for k, v in out.items() if v}, field)


def wedge_all(forms: Iterable[DiffForm]) -> DiffForm:
    forms = list(forms)
    result = forms[0]
    for f in forms[1:]:
        result = wedge(result, f)
    return result


def pullback(omega: DiffForm, mapping: Mapping[str, SparsePoly]) -> DiffForm:
    """``sigma^*(f dx_I) = (f o sigma) d(sigma_i1) ^ ... ^ d(sigma_ik)``."""
    images = {}
    target = None
    field = omega.field
    for name, img in mapping.items():
        if target is None:
            target = img.variables
        if img.field is not None:
            field = img.field
        images[name] = img
    if target is None:
        return omega
    for name in omega.variables:
        if name not in images:
            images[name] = SparsePoly.var(name, target)
    images = {k: v.lift(field) for k, v in images.items()}
    diffs = {name: differential(images[name]) for name in omega.variables}
    full = {name: images[name] for name in omega.variables}
    result = DiffForm.zero(target, omega.degree, field)
    for idx, c in omega.coeffs.items():
        coeff = c.subs(full)
        if not coeff:
            continue
        if idx:
            piece = wedge_all([diffs[omega.variables[i]] for i in idx])
        else:
            piece = DiffForm._raw(target, 0, {(): SparsePoly.one(target, field)}, field)
        result = result + piece * coeff
    return result


def is_integrable(omega: DiffForm) -> bool:
    """Frobenius condition ``omega ^ d omega == 0``, exactly."""
    if omega.degree != 1:
        raise ValueError("integrability is defined for 1-forms")
    return wedge(omega, exterior_derivative(omega)).is_zero


# -- logarithmic forms -------------------------------------------------------


def log_quotient(omega: DiffForm, f: SparsePoly):
    """Return ``(holds, eta)`` where ``omega ^ df == f * eta`` when ``holds``.

    ``eta`` is None when ``f`` does not divide ``omega ^ df``.
    """
    if f.is_zero:
        raise ValueError("the hypersurface equation must be nonzero")
    w = wedge(omega, differential(f))
    try:
        return True, w.divide_exact(f)
    except NotDivisible:
        return False, None


def is_logarithmic(omega: DiffForm, f: SparsePoly) -> bool:
    """True iff ``f`` divides every coefficient of ``omega ^ df``."""
    return log_quotient(omega, f)[0]


def is_logarithmic_meromorphic(theta: DiffForm, denominator: SparsePoly, f: SparsePoly,
                               via: str = "wedge") -> bool:
    """Whether ``theta / denominator`` is logarithmic along ``f = 0``.

    ``via="differential"`` tests that ``f*mu`` and ``f*d(mu)`` are
    holomorphic; ``via="wedge"`` tests ``f*mu`` and ``df ^ mu`` instead.
    Both phrasings must agree.
    """
    def divides(den, form):
        try:
            form.divide_exact(den)
        except NotDivisible:
            return False
        return True

    if not divides(denominator, theta * f):
        return False
    if via == "wedge":
        return divides(denominator, wedge(differential(f), theta))
    if via == "differential":
        # d(theta/D) = (D dtheta - dD ^ theta) / D^2
        num = exterior_derivative(theta) * denominator - wedge(differential(denominator), theta)
        return divides(denominator * denominator, num * f)
    raise ValueError(f"unknown criterion {via!r}")


@dataclass(frozen=True)
class SaitoTriple:
    """``g * omega + h * df == f * alpha`` with ``g`` coprime to ``f``."""

    g: SparsePoly
    h: SparsePoly
    alpha: DiffForm
    direction: tuple[int, ...]

    def residual(self, omega: DiffForm, f: SparsePoly) -> DiffForm:
        return omega * self.g + differential(f) * self.h - self.alpha * f


def _shares_factor(g: SparsePoly, factors) -> bool:
    return any(p.divides(g) for p in factors)


def saito_decompose(omega: DiffForm, f: SparsePoly, factors=None, budget: int | None = None) -> SaitoTriple:
    """Constructive form of the logarithmic criterion.

    Finds a direction ``v`` such that ``D_v f`` is divisible by none of the
    irreducible ``factors`` of ``f`` (default: ``[f]``) and returns
    ``g = D_v f``, ``h = -sum v_k a_k`` and ``alpha = sum_i (sum_k v_k g_ik) dx_i``
    where ``a_i d_j f - a_j d_i f = f g_ij``. When ``omega`` is a polynomial
    multiple ``u * df`` the trivial triple ``(1, -u, 0)`` is returned.
    """
    if omega.degree != 1:
        raise ValueError("saito_decompose expects a 1-form")
    if not is_logarithmic(omega, f):
        raise NotLogarithmic("precondition failed: omega is not logarithmic along f")
    factors = list(factors) if factors else [f]
    variables = f.variables
    n = len(variables)
    df = differential(f)
    a = [omega.coefficient(i) for i in range(n)]
    fd = [f.diff(i) for i in range(n)]
    zero = SparsePoly.zero(variables, f.field)

    # trivial case: omega = u * df
    u = None
    try:
        for ai, fi in zip(a, fd):
            if fi:
                cand = ai.divide_exact(fi)
                if u is None:
                    u = cand
                elif cand != u:
                    raise NotDivisible("inconsistent quotient")
            elif ai:
                raise NotDivisible("omega has a component df lacks")
        if u is not None and omega == df * u:
            return SaitoTriple(SparsePoly.one(variables, f.field), -u,
                               DiffForm.zero(variables, 1, f.field), ())
    except NotDivisible:
        pass

    gij = {}

    def g_entry(i, k):
        key = (i, k)
        if key not in gij:
            gij[key] = (a[i] * fd[k] - a[k] * fd[i]).divide_exact(f)
        return gij[key]

    def triple(v):
        g = zero
        h = zero
        for k, vk in enumerate(v):
            if vk:
                g = g + fd[k].scale(vk)
                h = h - a[k].scale(vk)
        coeffs = {}
        for i in range(n):
            c = zero
            for k, vk in enumerate(v):
                if vk and i != k:
                    c = c + g_entry(i, k).scale(vk)
            if c:
                coeffs[(i,)] = c
        return SaitoTriple(g, h, DiffForm(variables, 1, coeffs, f.field), tuple(v))

    directions = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    limit = budget if budget is not None else 5 ** n
    directions += list(itertools.islice(itertools.product(range(1, 6), repeat=n), limit))
    last = None
    for v in directions:
        last = v
        dvf = zero
        for k, vk in enumerate(v):
            if vk:
                dvf = dvf + fd[k].scale(vk)
        if dvf and not _shares_factor(dvf, factors):
            t = triple(v)
            if not t.residual(omega, f).is_zero:
                raise AssertionError("Saito identity failed")
            return t
    raise SearchBudgetExceeded(
        f"no directional derivative coprime to f within budget {limit}", last)


@dataclass(frozen=True)
class FreeBasisResult:
    U: SparsePoly
    is_unit: bool


def saito_free_basis_check(numerators: Sequence[DiffForm], f: SparsePoly) -> FreeBasisResult:
    """Freeness test for ``n`` logarithmic forms given by numerators ``f*omega_i``.

    Computes ``theta_1 ^ ... ^ theta_n = c dx_1 ^ ... ^ dx_n`` and returns
    ``U = c / f^(n-1)`` together with whether ``U`` is a unit (nonzero
    constant term). Raises ``NotFree`` when the wedge vanishes or
    ``f^(n-1)`` does not divide it.
    """
    n = len(f.variables)
    if len(numerators) != n:
        raise ValueError(f"need exactly {n} forms in {n} variables, got {len(numerators)}")
    for i, theta in enumerate(numerators):
        if not is_logarithmic(theta, f):
            raise NotLogarithmic(f"form {i + 1} is not logarithmic along f")
    top = wedge_all(numerators)
    c = top.coefficient(*range(n))
    if c.is_zero:
        raise NotFree("the wedge of the proposed basis vanishes identically")
    try:
        U = c.divide_exact(f ** (n - 1))
    except NotDivisible:
        raise NotFree(f"f^{n - 1} does not divide the wedge coefficient") from None
    return FreeBasisResult(U, U.constant_term() != 0)
