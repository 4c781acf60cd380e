"""Weighted blow-up charts for the cuspidal family and the surface conditions.

Each step pulls back the previous strict transforms along one chart and
divides out the largest monomial factor; those actual multiplicities are
authoritative. Alongside, the displayed closed forms of every strict
transform (the brackets built from ``F_k``, ``omega_k``, ``h`` and the
transformed ``G``) are kept as Laurent-monomial-weighted forms ``N / D``
and checked against the pullback of the previous display. A ratio ``K``
links the display chain to the actual chain, so any disagreement between
the displayed and the computed exceptional exponents is visible instead of
silently absorbed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.extension import ExtField, check_irreducible, rational_root
from .algebra.poly import SparsePoly
from .algebra.weights import weighted_valuation
from .cuspidal import VARS, CuspidalSpec, GPoly, assemble_generator, expand_psi, h_poly, surface
from .errors import ConsistencyError, NegativeExponent, UnsupportedParity
from .forms import DiffForm, differential, is_integrable, is_logarithmic, pullback


@dataclass(frozen=True)
class ChartMap:
    label: str
    substitution: dict
    field: ExtField | None = None
    xi: object = None

    def describe(self) -> str:
        parts = [f"{v} -> {self.substitution[v]}" for v in VARS if v in self.substitution]
        return ", ".join(parts)

    def __str__(self):
        return f"{self.label}: {self.describe()}"


@dataclass
class ChartReport:
    label: str
    chart: ChartMap
    surface: SparsePoly
    surface_multiplicity: tuple[int, ...]
    form: DiffForm
    form_multiplicity: tuple[int, ...]
    displayed_surface_prefactor: tuple[int, ...]
    displayed_form_prefactor: tuple[int, ...]
    display_matches_actual: bool | None
    residual_locus: list[str]
    verdicts: list[tuple[str, bool]] = field(default_factory=list)
    objects: dict = field(default_factory=dict)
    # chaining state
    display: tuple | None = None
    ratio: tuple | None = None
    G: SparsePoly | None = None
    field: ExtField | None = None

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.verdicts)

    def summary(self) -> list[str]:
        lines = [f"{self.label}: {self.chart.describe()}"]
        if self.chart.xi is not None:
            lines.append(f"  xi = {self.chart.xi}" + (f" in {self.chart.field}" if self.chart.field else ""))
        lines.append(f"  exceptional multiplicity (surface): {_exp_text(self.surface_multiplicity)}")
        lines.append(f"  exceptional multiplicity (form): {_exp_text(self.form_multiplicity)}")
        lines.append(f"  displayed form prefactor: {_exp_text(self.displayed_form_prefactor)}")
        if self.display_matches_actual is not None:
            lines.append(f"  displayed bracket equals actual strict transform: {self.display_matches_actual}")
        lines.append(f"  strict surface: {self.surface}")
        lines.append(f"  residual singular locus: {'; '.join(self.residual_locus) or 'none near the chart origin'}")
        for name, hold in self.verdicts:
            lines.append(f"  [{'ok' if hold else 'FAILED'}] {name}")
        return lines


def _exp_text(e):
    names = ("x", "y", "z")
    return "(" + ", ".join(f"{n}:{k}" for n, k in zip(names, e)) + ")"


# -- small helpers ------------------------------------------------------------


def _gens(fld=None):
    return SparsePoly.gens(VARS, fld)


def _mono(exp, fld=None):
    return SparsePoly.monomial(tuple(exp) + (0,) * (3 - len(exp)), VARS, 1, fld)


def _pow_product(bases, exps, fld):
    out = SparsePoly.one(VARS, fld)
    for b, e in zip(bases, exps):
        if e:
            out = out * b ** e
    return out


def _combine(pieces, bases, fld):
    """``sum base^e * form`` as ``(N, D)`` with ``D`` a product of base powers."""
    shifts = [max([0] + [-e[j] for e, _ in pieces]) for j in range(len(bases))]
    num = DiffForm.zero(VARS, 1, fld)
    for e, form in pieces:
        if form.is_zero:
            continue
        num = num + form.lift(fld) * _pow_product(bases, [a + s for a, s in zip(e, shifts)], fld)
    return num, _pow_product(bases, shifts, fld)


def _split(bases, exps, fld):
    pos = [max(e, 0) for e in exps]
    neg = [max(-e, 0) for e in exps]
    return _pow_product(bases, pos, fld), _pow_product(bases, neg, fld)


def _dx(name, fld):
    return DiffForm.dx(name, VARS, fld)


def _check(verdicts, name, holds):
    verdicts.append((name, bool(holds)))
    if not holds:
        raise ConsistencyError(f"{name} failed")


def _display_stage(verdicts, name, prev_display, sigma, pieces, bases, prefactor, fld):
    """Check ``sigma^*(N_prev/D_prev) == pi * N/D`` and return ``(N, D)``."""
    n_prev, d_prev = prev_display
    sn = pullback(n_prev.lift(fld), sigma)
    sd = d_prev.lift(fld).subs(sigma)
    num, den = _combine(pieces, bases, fld)
    pn, pd = _split(bases, prefactor, fld)
    _check(verdicts, name, sn * (pd * den) == num * (pn * sd))
    return (num, den), (pn, pd)


def _advance_ratio(prev_ratio, stages, mu, fld):
    kn, kd = prev_ratio
    kn, kd = kn.lift(fld), kd.lift(fld)
    for sigma, (pn, pd) in stages:
        kn = kn.subs(sigma) * pn
        kd = kd.subs(sigma) * pd
    kd = kd * _mono(mu, fld)
    c = tuple(min(a, b) for a, b in zip(kn.monomial_content(), kd.monomial_content()))
    return kn.unshift(c), kd.unshift(c)


def _strict(poly_or_form):
    mu = poly_or_form.monomial_content()
    return poly_or_form.unshift(mu), mu


def _form_checks(verdicts, label, form, surf, check_integrable):
    if check_integrable:
        _check(verdicts, f"{label} strict form is integrable", is_integrable(form))
        _check(verdicts, f"{label} strict form is logarithmic along the strict surface",
               is_logarithmic(form, surf))


# -- Step I ---------------------------------------------------------------------


def step1_map(spec: CuspidalSpec) -> ChartMap:
    """``x -> x^(p/delta) y^n, y -> x^(q/delta) y^m, z -> x^A y^B z``."""
    ps, qs = spec.p // spec.delta, spec.q // spec.delta
    sub = {
        "x": _mono((ps, spec.n, 0)),
        "y": _mono((qs, spec.m, 0)),
        "z": _mono((spec.A, spec.B, 1)),
    }
    return ChartMap("Step I", sub)


def _g_poly(spec, G: GPoly | None):
    if G is None or G.is_zero:
        return SparsePoly.zero(VARS)
    return G.evaluate(expand_psi(spec), SparsePoly.var("z", VARS))


def step1_transform(spec: CuspidalSpec, omega: DiffForm | None = None, G: GPoly | None = None,
                    check_integrable: bool = True) -> ChartReport:
    """Step I chart: surface identity, displayed bracket and strict transforms.

    With ``G`` given, ``omega`` defaults to (and must equal) the assembled
    generator; with only ``omega``, the displayed bracket is not checked.
    """
    if spec.P < 0 or spec.Q < 0:
        raise NegativeExponent(f"Step I: P = {spec.P}, Q = {spec.Q}; the chart exponents must be nonnegative")
    chart = step1_map(spec)
    sigma = chart.substitution
    x, y, z = _gens()
    verdicts: list = []
    if omega is None:
        if G is None:
            G = GPoly()
        omega = assemble_generator(spec, G)
    elif G is not None:
        _check(verdicts, "input form is the assembled generator", omega == assemble_generator(spec, G))

    h = h_poly(spec)
    r = spec.r
    f0 = surface(spec)
    pulled = f0.subs(sigma)
    F1 = z * z + (h ** r).shift((spec.P, spec.Q, 0))
    _check(verdicts, "Step I surface identity f o sigma = x^(2A) y^(2B) (z^2 + x^P y^Q h^r)",
           pulled == F1.shift((2 * spec.A, 2 * spec.B, 0)))
    strict_s, mu_s = _strict(pulled)
    _check(verdicts, "Step I total transform factorization (surface)", pulled == strict_s.shift(mu_s))
    psi1 = expand_psi(spec).subs(sigma)
    _check(verdicts, "Step I Psi o sigma = x^e y^f h", psi1 == h.shift((spec.e, spec.f_exp, 0)))

    pw = pullback(omega, sigma)
    strict_w, mu_w = _strict(pw)
    _check(verdicts, "Step I total transform factorization (form)", pw == strict_w.shift(mu_w))

    display = ratio = None
    matches = None
    G1 = None
    if G is not None:
        G0 = _g_poly(spec, G)
        G1 = G0.subs(sigma)
        A, B, P, Q = spec.A, spec.B, spec.P, spec.Q
        om1 = _dx("x", None) * y.scale(2 * A) + _dx("y", None) * x.scale(2 * B)
        pieces = [((0, 0), om1 * F1 + differential(F1) * (x * y))]
        if G1:
            aE, bE = spec.a_exp, spec.b_exp
            pieces += [
                ((aE - 1, bE), _dx("x", None) * (z * h * G1).scale(P)),
                ((aE, bE - 1), _dx("y", None) * (z * h * G1).scale(Q)),
                ((aE, bE), (_dx("z", None) * h.scale(-2) + differential(h) * z.scale(r)) * G1),
            ]
        prev = (omega, SparsePoly.one(VARS))
        pref = (2 * A - 1, 2 * B - 1)
        display, pi = _display_stage(verdicts, "Step I displayed bracket (omega_1 = 2A y dx + 2B x dy)",
                                     prev, sigma, pieces, [x, y], pref, None)
        ratio = _advance_ratio((SparsePoly.one(VARS), SparsePoly.one(VARS)), [(sigma, pi)], mu_w, None)
        _check(verdicts, "Step I display chain links to the actual strict transform",
               strict_w * display[1] * ratio[1] == display[0] * ratio[0])
        matches = ratio[0] == ratio[1]
    _form_checks(verdicts, "Step I", strict_w, strict_s, check_integrable)

    locus = []
    if spec.P >= 2:
        locus.append("{x = 0, z = 0}")
    if spec.Q >= 2:
        locus.append("{y = 0, z = 0}")
    for a, k in zip(spec.roots, spec.multiplicities):
        if k > 1:
            locus.append(f"{{y^{spec.delta} - {a} = 0, z = 0}}" if spec.delta > 1 else f"{{y - {a} = 0, z = 0}}")
    return ChartReport(
        "Step I", chart, strict_s, mu_s, strict_w, mu_w,
        (2 * spec.A, 2 * spec.B, 0), (2 * spec.A - 1, 2 * spec.B - 1, 0), matches, locus, verdicts,
        {"h": h, "P": spec.P, "Q": spec.Q},
        display, ratio, G1, None,
    )


# -- Step II --------------------------------------------------------------------


def step2_map(spec: CuspidalSpec) -> ChartMap:
    """``z -> x^(P/2) y^(Q/2) z``; needs ``P`` and ``Q`` even."""
    if spec.P % 2 or spec.Q % 2:
        odd = "P" if spec.P % 2 else "Q"
        raise UnsupportedParity("Step II", f"{odd} = {spec.P if odd == 'P' else spec.Q} is odd; "
                                           "only the even case has an explicit chart")
    if spec.P < 0 or spec.Q < 0:
        raise NegativeExponent(f"Step II: P = {spec.P}, Q = {spec.Q} must be nonnegative")
    return ChartMap("Step II", {"z": _mono((spec.P // 2, spec.Q // 2, 1))})


def step2_transform(spec: CuspidalSpec, report: ChartReport, check_integrable: bool = True) -> ChartReport:
    chart = step2_map(spec)
    sigma = chart.substitution
    x, y, z = _gens()
    verdicts: list = []
    h = h_poly(spec)
    r = spec.r
    pulled = report.surface.subs(sigma)
    strict_s, mu_s = _strict(pulled)
    F2 = z * z + h ** r
    _check(verdicts, "Step II strict surface is z^2 + prod (y^delta - a_i)^(d_i)", strict_s == F2)
    _check(verdicts, "Step II total transform factorization (surface)",
           pulled == strict_s.shift(mu_s) and mu_s == (spec.P, spec.Q, 0))

    pw = pullback(report.form, sigma)
    strict_w, mu_w = _strict(pw)
    _check(verdicts, "Step II total transform factorization (form)", pw == strict_w.shift(mu_w))

    display = ratio = None
    matches = None
    G2 = None
    if report.display is not None:
        G2 = report.G.subs(sigma)
        pq = spec.p * spec.q // spec.delta
        om2 = _dx("x", None) * y.scale(pq * spec.d) + _dx("y", None) * x.scale(spec.n * spec.q * spec.d)
        pieces = [((0, 0), om2 * F2 + differential(F2) * (x * y))]
        if G2:
            pieces.append(((spec.a_exp - spec.P // 2, spec.b_exp - spec.Q // 2),
                           (_dx("z", None) * h.scale(-2) + differential(h) * z.scale(r)) * G2))
        display, pi = _display_stage(
            verdicts, "Step II displayed bracket (omega_2 = (pq/delta) d y dx + nqd x dy)",
            report.display, sigma, pieces, [x, y], (spec.P, spec.Q), None)
        ratio = _advance_ratio(report.ratio, [(sigma, pi)], mu_w, None)
        _check(verdicts, "Step II display chain links to the actual strict transform",
               strict_w * display[1] * ratio[1] == display[0] * ratio[0])
        matches = ratio[0] == ratio[1]
    _form_checks(verdicts, "Step II", strict_w, strict_s, check_integrable)

    locus = []
    for a, k in zip(spec.roots, spec.multiplicities):
        if k > 1:
            locus.append(f"{{y^{spec.delta} - {a} = 0, z = 0}}" if spec.delta > 1 else f"{{y - {a} = 0, z = 0}}")
    return ChartReport(
        "Step II", chart, strict_s, mu_s, strict_w, mu_w,
        (spec.P, spec.Q, 0), (spec.P, spec.Q, 0), matches, locus, verdicts,
        {"omega_2": om2 if report.display is not None else None},
        display, ratio, G2, None,
    )


# -- Step III -------------------------------------------------------------------


def branch_root(spec: CuspidalSpec, i: int):
    """``(xi, field)`` with ``xi^delta = a_i``; rational whenever possible."""
    a = spec.roots[i - 1]
    xi = rational_root(a, spec.delta)
    if xi is not None:
        return xi, None
    fld = ExtField(spec.delta, a, "t")
    check_irreducible(fld)
    return fld.gen, fld


def step3_map(spec: CuspidalSpec, i: int) -> ChartMap:
    """Composite of ``y -> y + xi`` and ``z -> y^(d_i/2) z`` for branch ``i`` (1-based)."""
    if not 1 <= i <= len(spec.roots):
        raise IndexError(f"branch index {i} out of range 1..{len(spec.roots)}")
    di = spec.multiplicities[i - 1]
    if di % 2:
        raise UnsupportedParity(f"Step III({i})", f"d_{i} = {di} is odd; only the even case has an explicit chart")
    xi, fld = branch_root(spec, i)
    x, y, z = _gens(fld)
    sub = {"x": x, "y": y + xi, "z": z * y ** (di // 2)}
    return ChartMap(f"Step III({i})", sub, fld, xi)


def extract_H(spec: CuspidalSpec, i: int, xi, fld) -> SparsePoly:
    """``H_i`` with ``h(y + xi) = y^(d'_i) H_i(y)`` and ``H_i(0) != 0``."""
    x, y, z = _gens(fld)
    ht = h_poly(spec, VARS, fld).subs({"y": y + xi})
    k = spec.reduced[i - 1]
    H = ht.unshift((0, k, 0))
    c0 = H.constant_term()
    if not c0:
        raise ConsistencyError(f"H_{i}(0) vanishes")
    # an inverse exists in a field; a zero divisor would expose a reducible modulus
    if fld is not None:
        fld(c0).inverse()
    return H


def step3_transform(spec: CuspidalSpec, i: int, report: ChartReport, check_integrable: bool = True) -> ChartReport:
    chart = step3_map(spec, i)
    fld, xi = chart.field, chart.xi
    di = spec.multiplicities[i - 1]
    dpi = spec.reduced[i - 1]
    r = spec.r
    x, y, z = _gens(fld)
    verdicts: list = []
    H = extract_H(spec, i, xi, fld)
    _check(verdicts, f"Step III({i}) h(y + xi) = y^(d'_i) H_i with H_i(0) != 0", H.constant_term() != 0)

    sigma = chart.substitution
    surf_prev = report.surface.lift(fld)
    pulled = surf_prev.subs(sigma)
    strict_s, mu_s = _strict(pulled)
    F4 = z * z + H ** r
    _check(verdicts, f"Step III({i}) final strict surface z^2 + H_i^r", strict_s == F4)
    _check(verdicts, f"Step III({i}) total transform factorization (surface)",
           pulled == strict_s.shift(mu_s) and mu_s == (0, di, 0))

    pw = pullback(report.form.lift(fld), sigma)
    strict_w, mu_w = _strict(pw)
    _check(verdicts, f"Step III({i}) total transform factorization (form)", pw == strict_w.shift(mu_w))

    display = ratio = None
    matches = None
    G4 = None
    if report.display is not None:
        yx = y + xi
        trans = {"y": yx}
        zmap = {"z": z * y ** (di // 2)}
        pq = spec.p * spec.q // spec.delta
        nqd = spec.n * spec.q * spec.d
        ea, eb = spec.a_exp - spec.P // 2, spec.b_exp - spec.Q // 2
        bases = [x, y, yx]
        G3 = report.G.lift(fld).subs(trans)
        F3 = z * z + (H ** r).shift((0, di, 0))
        om3 = _dx("x", fld) * (yx.scale(pq * spec.d)) + _dx("y", fld) * x.scale(nqd)
        pieces = [((0, 0, 0), om3 * F3 + differential(F3) * (x * yx))]
        if G3:
            br = (_dx("z", fld) * H.shift((0, dpi, 0)).scale(-2)
                  + _dx("y", fld) * (z * H).shift((0, dpi - 1, 0)).scale(di)
                  + differential(H) * z.shift((0, dpi, 0)).scale(r))
            pieces.append(((ea, 0, eb), br * G3))
        d3, pi3 = _display_stage(verdicts, f"Step III({i}) translated bracket (omega_3)",
                                 report.display, trans, pieces, bases, (0, 0, 0), fld)
        G4 = G3.subs(zmap)
        om4 = _dx("x", fld) * (yx * y).scale(pq * spec.d) + _dx("y", fld) * (x * (y.scale(nqd) + yx.scale(di)))
        pieces = [((0, 0, 0), om4 * F4 + differential(F4) * (x * y * yx))]
        if G4:
            pieces.append(((ea, dpi - di // 2 + 1, eb),
                           (_dx("z", fld) * H.scale(-2) + differential(H) * z.scale(r)) * G4))
        display, pi4 = _display_stage(
            verdicts, f"Step III({i}) final bracket (omega_4 = (pq/delta) d (y+xi) y dx + (nqd y + d_i (y+xi)) x dy)",
            d3, zmap, pieces, bases, (0, di - 1, 0), fld)
        ratio = _advance_ratio(report.ratio, [(trans, pi3), (zmap, pi4)], mu_w, fld)
        _check(verdicts, f"Step III({i}) display chain links to the actual strict transform",
               strict_w * display[1] * ratio[1] == display[0] * ratio[0])
        matches = ratio[0] == ratio[1]
    _form_checks(verdicts, f"Step III({i})", strict_w, strict_s, check_integrable)

    locus = [] if H.constant_term() else ["{y = 0, z = 0}"]
    return ChartReport(
        f"Step III({i})", chart, strict_s, mu_s, strict_w, mu_w,
        (0, di, 0), (0, di - 1, 0), matches, locus, verdicts,
        {"H": H, "xi": xi},
        display, ratio, G4, fld,
    )


# -- pipeline -------------------------------------------------------------------


def resolve(spec: CuspidalSpec, G: GPoly | None = None, check_integrable: bool = True,
            workers: int = 1) -> list[ChartReport]:
    """Step I, Step II, then Step III(i) for every branch with ``d_i > 1``.

    The Step III charts are independent; with ``workers > 1`` they run in a
    thread pool, and the reports always come back in branch order.
    """
    G = G if G is not None else GPoly()
    r1 = step1_transform(spec, G=G, check_integrable=check_integrable)
    r2 = step2_transform(spec, r1, check_integrable)
    branches = [i for i, k in enumerate(spec.multiplicities, start=1) if k > 1]
    for i in branches:
        step3_map(spec, i)  # fail on parity before any expensive work
    if workers > 1 and len(branches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            r3 = list(pool.map(lambda i: step3_transform(spec, i, r2, check_integrable), branches))
    else:
        r3 = [step3_transform(spec, i, r2, check_integrable) for i in branches]
    return [r1, r2] + r3


# -- inequalities and conditions ----------------------------------------------


@dataclass(frozen=True)
class GTermInequalities:
    alpha: int
    beta: int
    values: dict  # name -> exact left-hand side
    sufficient: bool  # 2 alpha + beta >= r - 2

    @property
    def holds(self) -> dict:
        return {k: v >= 0 for k, v in self.values.items()}

    @property
    def all_hold(self) -> bool:
        return all(v >= 0 for v in self.values.values())


def gterm_inequalities(spec: CuspidalSpec, alpha: int, beta: int) -> GTermInequalities:
    """Evaluate ``c(1 - r/2) + 1 + c(alpha + r beta/2) >= 0`` for the three exponents.

    ``c`` runs over ``(pq/delta) d'`` (the x exponent), ``n q d'`` (the
    ``y`` exponent in Step I/II) and each ``d'_i`` (the ``y`` exponent in
    Step III(i)).
    """
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    r = Fraction(spec.r)

    def lhs(c):
        c = Fraction(c)
        return c * (1 - r / 2) + 1 + c * (alpha + r * beta / 2)

    values = {"x: (pq/delta) d'": lhs(spec.e), "y: n q d'": lhs(spec.f_exp)}
    for i, k in enumerate(spec.reduced, start=1):
        values[f"y (branch {i}): d'_{i}"] = lhs(k)
    return GTermInequalities(alpha, beta, values, 2 * alpha + beta >= spec.r - 2)


@dataclass(frozen=True)
class GSVerdict:
    valuation: Fraction | float
    threshold: Fraction
    satisfied: bool
    table: tuple  # (alpha, beta, weighted value, GTermInequalities)

    def text(self) -> str:
        nu = "inf" if self.valuation == math.inf else str(self.valuation)
        rel = ">=" if self.satisfied else "<"
        return f"nu = {nu} {rel} {self.threshold}"


def gs_condition(spec: CuspidalSpec, G: GPoly) -> GSVerdict:
    """``nu_(2,r)(G) >= (r - 2)/gcd(2, r)`` with ``nu(Psi^a z^b) = (2a + r b)/gcd(2, r)``."""
    r = spec.r
    g = math.gcd(2, r)
    threshold = Fraction(r - 2, g)
    table = tuple((a, b, Fraction(2 * a + r * b, g), gterm_inequalities(spec, a, b))
                  for (a, b) in G.support)
    if not table:
        return GSVerdict(math.inf, threshold, True, ())
    nu = min(t[2] for t in table)
    return GSVerdict(nu, threshold, nu >= threshold, table)


@dataclass(frozen=True)
class LorayVerdict:
    valuation: Fraction | float
    threshold: Fraction
    satisfied: bool
    form: DiffForm

    def text(self) -> str:
        nu = "inf" if self.valuation == math.inf else str(self.valuation)
        rel = ">" if self.satisfied else "<="
        return f"nu = {nu} {rel} {self.threshold}"


def loray_form(p: int, q: int, delta_poly: SparsePoly) -> DiffForm:
    """``d(y^p - x^q) + Delta (p x dy - q y dx)`` over the variables of ``Delta``."""
    v = delta_poly.variables
    x, y = SparsePoly.gens(v)
    dx, dy = DiffForm.dx(v[0], v), DiffForm.dx(v[1], v)
    return differential(y ** p - x ** q) + (dy * x.scale(p) - dx * y.scale(q)) * delta_poly


def loray_condition_2d(p: int, q: int, delta_poly: SparsePoly) -> LorayVerdict:
    """Strict ``nu_(p,q)(Delta) > (p-1)(q-1)/gcd(p, q)``; ``x`` has weight ``p``."""
    if delta_poly.nvars != 2:
        raise ValueError("Delta must be bivariate")
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    threshold = Fraction((p - 1) * (q - 1), math.gcd(p, q))
    form = loray_form(p, q, delta_poly)
    if delta_poly.is_zero:
        return LorayVerdict(math.inf, threshold, True, form)
    nu = weighted_valuation(delta_poly, p, q)
    return LorayVerdict(nu, threshold, nu > threshold, form)
