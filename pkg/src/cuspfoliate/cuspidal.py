"""The cuspidal family ``z^2 + prod (y^p - a_i x^q)^{d_i}`` and its generators.

Everything lives over the variables ``(x, y, z)``. A :class:`CuspidalSpec`
carries the defining data together with all the integers the resolution
charts need; :func:`assemble_generator` builds the polynomial 1-form
``d(z^2 + Psi^r) + G(Psi, z) (r z dPsi - 2 Psi dz)``, and
:func:`cuspidal_decompose` splits a logarithmic form along ``z^k + phi``
into ``U omega = omega_1 + H omega_2 + f omega_3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra.poly import SparsePoly
from .errors import ConsistencyError, DomainError, DuplicateRoot, NotDivisible, NotLogarithmic, OrderViolation
from .forms import DiffForm, differential, is_logarithmic

VARS = ("x", "y", "z")


@dataclass(frozen=True)
class CuspidalSpec:
    p: int
    q: int
    roots: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]
    delta: int
    r: int
    d: int
    reduced: tuple[int, ...]  # d'_i = d_i / r
    dprime: int  # d' = sum d'_i
    m: int
    n: int
    A: int  # (p+q)/delta - 1, the z exponent on x in Step I
    B: int  # m + n - 1
    P: int
    Q: int
    a_exp: int
    b_exp: int

    @property
    def e(self) -> int:
        """``(pq/delta) d'``, the x exponent of Psi after Step I."""
        return self.p * self.q // self.delta * self.dprime

    @property
    def f_exp(self) -> int:
        """``n q d'``, the y exponent of Psi after Step I."""
        return self.n * self.q * self.dprime

    def as_tuple(self):
        return (self.p, self.q, self.roots, self.multiplicities)

    def __str__(self):
        roots = ", ".join(str(a) for a in self.roots)
        mult = ", ".join(str(k) for k in self.multiplicities)
        return f"({self.p}, {self.q}, ({roots}), ({mult}))"


def bezout_pair(p: int, q: int) -> tuple[int, int]:
    """Smallest ``m >= 1`` with ``m p - n q = gcd(p, q)`` and the matching ``n >= 0``."""
    delta = math.gcd(p, q)
    ps, qs = p // delta, q // delta
    for m in range(1, qs + 1):
        if (m * ps - 1) % qs == 0:
            return m, (m * p - delta) // q
    raise AssertionError("no Bezout pair; p/delta and q/delta must be coprime")


def build_cuspidal_spec(p: int, q: int, roots: Sequence, multiplicities: Sequence[int]) -> CuspidalSpec:
    """Validate the family data and derive every integer used downstream.

    Negative ``P`` or ``Q`` are allowed here (the surface and the generator
    still make sense); the resolution charts refuse them.
    """
    for name, v in (("p", p), ("q", q)):
        if isinstance(v, bool) or int(v) != v or v < 2:
            raise DomainError(f"{name} must be an integer >= 2, got {v}")
    p, q = int(p), int(q)
    roots = tuple(Fraction(a) for a in roots)
    mult = tuple(int(k) for k in multiplicities)
    if not roots:
        raise DomainError("the family needs at least one branch")
    if len(roots) != len(mult):
        raise DomainError(f"{len(roots)} roots but {len(mult)} multiplicities")
    if any(a == 0 for a in roots):
        raise DomainError("branch coefficients a_i must be nonzero")
    if any(k < 1 or k != kk for k, kk in zip(mult, multiplicities)):
        raise DomainError("multiplicities d_i must be positive integers")
    if len(set(roots)) != len(roots):
        dup = next(a for a in roots if roots.count(a) > 1)
        raise DuplicateRoot(f"branch coefficient {dup} is repeated")
    delta = math.gcd(p, q)
    r = math.gcd(*mult)
    d = sum(mult)
    reduced = tuple(k // r for k in mult)
    dprime = sum(reduced)
    m, n = bezout_pair(p, q)
    A = (p + q) // delta - 1
    B = m + n - 1
    pq = p * q // delta
    P = pq * d - 2 * A
    Q = n * q * d - 2 * B
    a_exp = pq * dprime - A + 1
    b_exp = n * q * dprime - B + 1
    return CuspidalSpec(p, q, roots, mult, delta, r, d, reduced, dprime, m, n, A, B, P, Q, a_exp, b_exp)


def _branch(spec, a, variables=VARS):
    x = SparsePoly.var("x", variables)
    y = SparsePoly.var("y", variables)
    return y ** spec.p - x ** spec.q * a


def expand_psi(spec: CuspidalSpec, variables=VARS) -> SparsePoly:
    """``Psi = prod (y^p - a_i x^q)^{d'_i}``."""
    out = SparsePoly.one(variables)
    for a, k in zip(spec.roots, spec.reduced):
        out = out * _branch(spec, a, variables) ** k
    return out


def expand_phi(spec: CuspidalSpec, variables=VARS) -> SparsePoly:
    """``phi = prod (y^p - a_i x^q)^{d_i}``, checked against ``Psi^r``."""
    out = SparsePoly.one(variables)
    for a, k in zip(spec.roots, spec.multiplicities):
        out = out * _branch(spec, a, variables) ** k
    if out != expand_psi(spec, variables) ** spec.r:
        raise ConsistencyError("phi differs from Psi^r")
    return out


def surface(spec: CuspidalSpec, variables=VARS) -> SparsePoly:
    z = SparsePoly.var("z", variables)
    return z * z + expand_phi(spec, variables)


def h_poly(spec: CuspidalSpec, variables=VARS, field=None) -> SparsePoly:
    """``h(y) = prod (y^delta - a_i)^{d'_i}``."""
    y = SparsePoly.var("y", variables, field)
    out = SparsePoly.one(variables, field)
    for a, k in zip(spec.roots, spec.reduced):
        out = out * (y ** spec.delta - a) ** k
    return out


@dataclass(frozen=True)
class GPoly:
    """Finite truncation ``G(Psi, z) = sum c_{ab} Psi^a z^b``."""

    support: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (a, b), c in dict(self.support).items():
            if int(a) != a or int(b) != b or a < 0 or b < 0:
                raise DomainError(f"G exponents must be nonnegative integers, got ({a}, {b})")
            c = Fraction(c)
            key = (int(a), int(b))
            c = clean.get(key, 0) + c
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        object.__setattr__(self, "support", dict(sorted(clean.items())))

    @classmethod
    def from_terms(cls, terms) -> "GPoly":
        out: dict = {}
        for a, b, c in terms:
            out[(a, b)] = out.get((a, b), 0) + Fraction(c)
        return cls(out)

    @classmethod
    def from_poly(cls, g: SparsePoly) -> "GPoly":
        """Read ``G`` from a bivariate polynomial in ``(psi, z)``."""
        if g.nvars != 2:
            raise DomainError("G must be a polynomial in two variables (psi, z)")
        if g.field is not None:
            raise DomainError("G must have rational coefficients")
        return cls({e: c for e, c in g.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.support

    def terms(self):
        return [(a, b, c) for (a, b), c in self.support.items()]

    def evaluate(self, psi: SparsePoly, z: SparsePoly) -> SparsePoly:
        """``G(psi, z)`` for polynomial arguments sharing one variable list."""
        out = SparsePoly.zero(psi.variables, psi.field)
        pcache: dict = {}
        zcache: dict = {}
        for (a, b), c in self.support.items():
            if a not in pcache:
                pcache[a] = psi ** a
            if b not in zcache:
                zcache[b] = z ** b
            out = out + (pcache[a] * zcache[b]).scale(c)
        return out

    def as_poly(self, variables=("psi", "z")) -> SparsePoly:
        return SparsePoly(variables, dict(self.support))

    def __str__(self):
        return str(self.as_poly())


def assemble_generator(spec: CuspidalSpec, G: GPoly) -> DiffForm:
    """``d(z^2 + Psi^r) + G(Psi, z) (r z dPsi - 2 Psi dz)`` over ``(x, y, z)``.

    This is the polynomial form of ``d(z^2+phi) + G zPsi (dphi/phi - 2dz/z)``.
    """
    psi = expand_psi(spec)
    z = SparsePoly.var("z", VARS)
    f = z * z + psi ** spec.r
    omega = differential(f)
    if G.is_zero:
        return omega
    dz = DiffForm.dx("z", VARS)
    bracket = differential(psi) * (z.scale(spec.r)) - dz * psi.scale(2)
    return omega + bracket * G.evaluate(psi, z)


# -- decomposition along z^k + phi ------------------------------------------


@dataclass(frozen=True)
class CuspDecomposition:
    """``U omega = D omega_1 + H omega_2 + f omega_3`` with everything polynomial.

    ``D`` (``denominator``) is 1 whenever the quotient can be taken without
    fractions. Otherwise the true decomposition is ``U/D``, ``H/D``,
    ``omega_3/D``; ``unit_factor`` is the polynomial ``c = G_1/phi_{x_1}``
    whose nonzero constant term certifies that ``U/D`` is a unit.
    """

    U: SparsePoly
    H: SparsePoly
    omega3: DiffForm
    denominator: SparsePoly
    unit_factor: SparsePoly
    pivot: str
    k: int
    phi: SparsePoly

    @property
    def f(self) -> SparsePoly:
        z = SparsePoly.var(self.zname, self.phi.variables)
        return z ** self.k + self.phi

    @property
    def zname(self) -> str:
        return self.phi.variables[-1]

    def omega1(self) -> DiffForm:
        return differential(self.f)

    def omega2(self) -> DiffForm:
        return cusp_omega2(self.phi, self.k)

    def residual(self, omega: DiffForm) -> DiffForm:
        return (omega * self.U - self.omega1() * self.denominator
                - self.omega2() * self.H - self.omega3 * self.f)

    @property
    def is_unit(self) -> bool:
        return self.unit_factor.constant_term() != 0


def cusp_omega2(phi: SparsePoly, k: int) -> DiffForm:
    """``z dphi - k phi dz``; ``z`` is the last variable."""
    zname = phi.variables[-1]
    z = SparsePoly.var(zname, phi.variables)
    return differential(phi) * z - DiffForm.dx(zname, phi.variables) * phi.scale(k)


def cuspidal_decompose(omega: DiffForm, k: int, phi: SparsePoly) -> CuspDecomposition:
    """Split ``omega`` as ``U omega = omega_1 + H omega_2 + f omega_3``.

    ``f = z^k + phi`` with ``z`` the last variable of ``omega`` and ``phi``
    independent of ``z``. The coefficients ``H_i, G_i`` are read off from
    ``omega ^ omega_1`` and ``omega ^ omega_2`` along ``dx_i ^ dz``; the two
    linear relations they satisfy are solved for the ``dx_1`` direction,
    where ``x_1`` is the first variable with ``phi_{x_1} != 0`` for which
    ``G_1 / phi_{x_1}`` is a polynomial with nonzero constant term.
    """
    if omega.degree != 1:
        raise ValueError("cuspidal_decompose expects a 1-form")
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k}")
    variables = omega.variables
    if phi.variables != variables:
        if phi.variables == variables[:-1]:
            phi = phi.embed(variables)
        else:
            raise DomainError(f"phi is over {phi.variables}, omega over {variables}")
    zname = variables[-1]
    if phi.degree_in(zname):
        raise DomainError(f"phi must not depend on {zname}")
    if phi.is_zero or phi.order() < k:
        raise DomainError(f"phi must have order at least k = {k} at the origin")
    z = SparsePoly.var(zname, variables)
    f = z ** k + phi
    if not is_logarithmic(omega, f):
        raise NotLogarithmic("omega is not logarithmic along z^k + phi")

    nz = len(variables) - 1
    A = omega.coefficient(nz)
    zk1 = z ** (k - 1)
    H, Gs, dphi = [], [], []
    try:
        for i in range(nz):
            Ai = omega.coefficient(i)
            pi = phi.diff(i)
            dphi.append(pi)
            H.append((zk1 * Ai.scale(k) - A * pi).divide_exact(f))
            Gs.append(-(Ai * phi.scale(k) + z * A * pi).divide_exact(f))
    except NotDivisible:
        raise ConsistencyError("logarithmic form with non-divisible wedge coefficients") from None

    chosen = None
    for i in range(nz):
        if not dphi[i]:
            continue
        try:
            c = Gs[i].divide_exact(dphi[i])
        except NotDivisible:
            continue
        if c.constant_term() != 0:
            chosen = (i, c)
            break
    if chosen is None:
        raise OrderViolation(
            "G_1/phi_x1 is not a unit for any pivot: omega does not have order k-1 in the required form")
    i1, c = chosen
    G1, p1 = Gs[i1], dphi[i1]
    W = {i: G1 * dphi[i] - Gs[i] * p1 for i in range(nz) if i != i1}

    # true values: U = -k p1/G1 = -k/c, H = -H1/G1, omega3_i = -W_i/(phi G1)
    # try the denominators 1, c, G1, phi*G1 in turn
    phiG1 = phi * G1
    one = SparsePoly.one(variables)
    candidates = [one, c, G1, phiG1]
    result = None
    for D in candidates:
        try:
            U = (p1 * D).scale(-k).divide_exact(G1)
            Hh = -(H[i1] * D).divide_exact(G1)
            coeffs = {}
            for i, w in W.items():
                v = -(w * D).divide_exact(phiG1)
                if v:
                    coeffs[(i,)] = v
            result = (U, Hh, DiffForm(variables, 1, coeffs), D)
            break
        except NotDivisible:
            continue
    if result is None:
        raise ConsistencyError("no polynomial clearing of the decomposition")
    U, Hh, om3, D = result
    if D.is_constant():
        s = 1 / D.constant_term()
        U, Hh, om3, D = U.scale(s), Hh.scale(s), om3 * s, one
    dec = CuspDecomposition(U, Hh, om3, D, c, variables[i1], k, phi)
    if not dec.residual(omega).is_zero:
        raise ConsistencyError("decomposition identity failed")
    return dec


# -- singular locus -----------------------------------------------------------


@dataclass(frozen=True)
class SingularLocus:
    """The origin together with the curves ``y^p - a_i x^q = z = 0`` for ``d_i > 1``."""

    origin: bool
    curves: tuple[tuple[SparsePoly, SparsePoly], ...]
    indices: tuple[int, ...]

    def describe(self) -> list[str]:
        out = ["origin"] if self.origin else []
        for eq, z in self.curves:
            out.append(f"{{{eq} = 0, {z} = 0}}")
        return out

    def __str__(self):
        return " U ".join(self.describe())


def singular_locus(spec: CuspidalSpec) -> SingularLocus:
    z = SparsePoly.var("z", VARS)
    curves, idx = [], []
    for i, (a, k) in enumerate(zip(spec.roots, spec.multiplicities)):
        if k > 1:
            curves.append((_branch(spec, a), z))
            idx.append(i)
    return SingularLocus(True, tuple(curves), tuple(idx))
