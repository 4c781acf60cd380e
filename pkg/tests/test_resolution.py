import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from cuspfoliate import (
    GPoly,
    SparsePoly,
    assemble_generator,
    build_cuspidal_spec,
    gs_condition,
    gterm_inequalities,
    is_integrable,
    loray_condition_2d,
    parse_form,
    parse_poly,
    pullback,
    resolve,
    step1_map,
    step1_transform,
    step2_map,
    step2_transform,
    step3_map,
)
from cuspfoliate.errors import NegativeExponent, ReducibleModulus, UnsupportedParity
from cuspfoliate.forms import is_logarithmic
from cuspfoliate.resolution import branch_root, extract_H

from .oracle import same
from .strategies import XY, XYZ, cusp_data, gpolys

DICRITICAL = (2, 5, (-1, -2), (5, 10))
GOLDEN = (2, 3, (1,), (2,))
EVEN_SPECS = [
    (2, 3, (1,), (2,)),
    (2, 3, (2,), (2,)),
    (2, 3, (1, 2), (2, 2)),
    (2, 5, (1,), (2,)),
    (3, 2, (1,), (2,)),
    (2, 3, (1,), (4,)),
]


def P(text):
    return parse_poly(text, XYZ)


class TestMaps:
    def test_step1_golden(self):
        sub = step1_map(build_cuspidal_spec(*GOLDEN)).substitution
        assert (sub["x"], sub["y"], sub["z"]) == (P("x^2*y"), P("x^3*y^2"), P("x^4*y^2*z"))

    def test_step1_dicritical(self):
        sub = step1_map(build_cuspidal_spec(*DICRITICAL)).substitution
        assert (sub["x"], sub["y"], sub["z"]) == (P("x^2*y"), P("x^5*y^3"), P("x^6*y^3*z"))

    @given(cusp_data())
    def test_step1_monomial(self, data):
        sub = step1_map(build_cuspidal_spec(*data)).substitution
        for image in sub.values():
            assert image.is_monomial() and all(e >= 0 for e in next(iter(image.terms)))

    def test_step2_golden(self):
        assert step2_map(build_cuspidal_spec(*GOLDEN)).substitution["z"] == P("x^2*y*z")

    def test_step3_golden(self):
        chart = step3_map(build_cuspidal_spec(*GOLDEN), 1)
        assert chart.xi == 1 and chart.field is None
        assert chart.substitution["y"] == P("y + 1")
        assert chart.substitution["z"] == P("y*z")

    def test_branch_index(self):
        with pytest.raises(IndexError):
            step3_map(build_cuspidal_spec(*GOLDEN), 2)


class TestStepOne:
    def test_surface_identity(self):
        spec = build_cuspidal_spec(*GOLDEN)
        report = step1_transform(spec)
        assert report.surface_multiplicity == (8, 4, 0)
        assert report.surface == P("z^2 + x^4*y^2*(y-1)^2")
        # oracle: substitute in sympy and factor out x^8 y^4
        x, y, z = sympy.symbols(XYZ)
        comp = sympy.expand(z ** 2 + (y ** 2 - x ** 3) ** 2).subs(
            {x: x ** 2 * y, y: x ** 3 * y ** 2, z: x ** 4 * y ** 2 * z}, simultaneous=True)
        assert same(report.surface, sympy.cancel(comp / (x ** 8 * y ** 4)))

    def test_bracket_shape_for_zero_g(self):
        spec = build_cuspidal_spec(*GOLDEN)
        report = step1_transform(spec, G=GPoly())
        F1 = P("z^2 + x^4*y^2*(y-1)^2")
        # (z^2 + x^P y^Q h^r) omega_1 + x y dF1 with omega_1 = 8 y dx + 4 x dy
        bracket = parse_form("8*y*dx + 4*x*dy", XYZ) * F1 + parse_form("d(z^2 + x^4*y^2*(y-1)^2)", XYZ) * P("x*y")
        assert report.display[0] == bracket
        assert any("displayed bracket" in name and ok for name, ok in report.verdicts)

    def test_both_prefactors_recorded(self):
        report = step1_transform(build_cuspidal_spec(*GOLDEN), G=GPoly())
        assert report.displayed_surface_prefactor == (8, 4, 0)
        assert report.displayed_form_prefactor == (7, 3, 0)
        # the form's actual divided exponent, whichever display it agrees with
        omega = assemble_generator(build_cuspidal_spec(*GOLDEN), GPoly())
        pulled = pullback(omega, step1_map(build_cuspidal_spec(*GOLDEN)).substitution)
        assert pulled == report.form.shift(report.form_multiplicity)
        assert report.form_multiplicity == (7, 3, 0)

    def test_negative_exponent(self):
        spec = build_cuspidal_spec(2, 3, (1,), (1,))
        assert spec.P == -2
        with pytest.raises(NegativeExponent):
            step1_transform(spec)

    @pytest.mark.parametrize("args", EVEN_SPECS + [DICRITICAL, (4, 6, (1,), (1,)), (3, 4, (1, -1), (1, 2))])
    def test_identity_over_grid(self, args):
        spec = build_cuspidal_spec(*args)
        report = step1_transform(spec, G=GPoly.from_terms([(0, 1, 1)]))
        assert report.ok
        assert report.surface_multiplicity == (2 * spec.A, 2 * spec.B, 0)


class TestStepTwo:
    def test_golden(self):
        spec = build_cuspidal_spec(*GOLDEN)
        r2 = step2_transform(spec, step1_transform(spec, G=GPoly()))
        assert r2.surface == P("z^2 + (y-1)^2")
        assert r2.surface_multiplicity == (4, 2, 0)
        assert r2.objects["omega_2"] == parse_form("12*y*dx + 6*x*dy", XYZ)

    def test_odd_p(self):
        spec = build_cuspidal_spec(*DICRITICAL)
        with pytest.raises(UnsupportedParity) as info:
            step2_map(spec)
        assert info.value.step == "Step II"

    def test_odd_q_guard(self):
        spec = build_cuspidal_spec(2, 3, (1,), (3,))
        assert spec.P % 2 == 0 and spec.Q % 2 == 1
        with pytest.raises(UnsupportedParity):
            step2_map(spec)


class TestStepThree:
    def test_golden(self):
        spec = build_cuspidal_spec(*GOLDEN)
        reports = resolve(spec)
        assert [r.label for r in reports] == ["Step I", "Step II", "Step III(1)"]
        final = reports[-1]
        assert final.surface == P("z^2 + 1")
        assert final.objects["H"] == 1
        assert final.surface_multiplicity == (0, 2, 0)

    def test_odd_multiplicity(self):
        spec = build_cuspidal_spec(2, 3, (1, 2), (2, 3))
        with pytest.raises(UnsupportedParity) as info:
            step3_map(spec, 2)
        assert info.value.step == "Step III(2)"

    @pytest.mark.parametrize("args", EVEN_SPECS + [(2, 4, (2,), (2,)), (2, 4, (3,), (2,)), (2, 4, (4,), (2,))])
    def test_H_nonzero_at_origin(self, args):
        spec = build_cuspidal_spec(*args)
        for i, k in enumerate(spec.multiplicities, start=1):
            if k % 2:
                continue
            xi, fld = branch_root(spec, i)
            H = extract_H(spec, i, xi, fld)
            assert H.constant_term() != 0

    def test_extension_field(self):
        spec = build_cuspidal_spec(2, 4, (3,), (2,))
        chart = step3_map(spec, 1)
        assert chart.field is not None and chart.xi * chart.xi == 3
        final = resolve(spec)[-1]
        assert final.ok and final.field == chart.field

    def test_rational_root_preferred(self):
        spec = build_cuspidal_spec(2, 4, (4,), (2,))
        xi, fld = branch_root(spec, 1)
        assert fld is None and xi * xi == 4

    def test_reducible_modulus(self):
        # t^4 + 4 = (t^2 + 2t + 2)(t^2 - 2t + 2)
        spec = build_cuspidal_spec(4, 4, (-4,), (2,))
        with pytest.raises(ReducibleModulus) as info:
            step3_map(spec, 1)
        assert info.value.factor is not None


class TestResolve:
    def test_dicritical_fails_on_parity(self):
        with pytest.raises(UnsupportedParity) as info:
            resolve(build_cuspidal_spec(*DICRITICAL), GPoly.from_terms([(1, 0, 1)]))
        assert info.value.step == "Step II"

    @pytest.mark.parametrize("args", EVEN_SPECS)
    @pytest.mark.parametrize("G", [GPoly(), GPoly.from_terms([(0, 0, 2)]), GPoly.from_terms([(1, 1, -1), (0, 2, 3)])])
    def test_every_chart_integrable_and_logarithmic(self, args, G):
        spec = build_cuspidal_spec(*args)
        for report in resolve(spec, G):
            assert report.ok
            assert is_integrable(report.form)
            assert is_logarithmic(report.form, report.surface)
            assert report.form == report.form  # hashable, comparable

    def test_workers_keep_order(self):
        spec = build_cuspidal_spec(2, 3, (1, 2), (2, 2))
        G = GPoly.from_terms([(0, 1, 1)])
        serial = resolve(spec, G)
        parallel = resolve(spec, G, workers=4)
        assert [r.label for r in parallel] == ["Step I", "Step II", "Step III(1)", "Step III(2)"]
        assert [r.form for r in serial] == [r.form for r in parallel]

    def test_high_multiplicity_chart_exponents(self):
        # with r = 4 and G = 1, 2 alpha + beta < r - 2 and the form has less to divide
        spec = build_cuspidal_spec(2, 3, (1,), (4,))
        r2 = resolve(spec, GPoly.from_terms([(0, 0, 1)]))[1]
        assert r2.surface_multiplicity == (spec.P, spec.Q, 0) == (16, 8, 0)
        assert r2.form_multiplicity == (11, 6, 0)


class TestInequalities:
    def test_dicritical_term(self):
        spec = build_cuspidal_spec(*DICRITICAL)
        t = gterm_inequalities(spec, 1, 0)
        assert not t.sufficient
        # c(1 - 5/2) + 1 + c, c = 30, 15, 1, 2
        assert list(t.values.values()) == [Fraction(-14), Fraction(-13, 2), Fraction(1, 2), Fraction(0)]

    def test_r_two(self):
        t = gterm_inequalities(build_cuspidal_spec(*GOLDEN), 0, 0)
        assert t.sufficient and t.all_hold

    def test_negative_input(self):
        with pytest.raises(ValueError):
            gterm_inequalities(build_cuspidal_spec(*GOLDEN), -1, 0)

    @given(cusp_data(max_mult=6), st.integers(0, 6), st.integers(0, 6))
    def test_sufficient_implies_all(self, data, a, b):
        spec = build_cuspidal_spec(*data)
        t = gterm_inequalities(spec, a, b)
        if t.sufficient:
            assert t.all_hold

    def test_oracle_values(self):
        spec = build_cuspidal_spec(*DICRITICAL)
        c, r, al, be = sympy.symbols("c r alpha beta")
        lhs = c * (1 - r / 2) + 1 + c * (al + r * be / 2)
        t = gterm_inequalities(spec, 2, 1)
        for got, cv in zip(t.values.values(), [30, 15, 1, 2]):
            assert sympy.Rational(got.numerator, got.denominator) == lhs.subs({c: cv, r: 5, al: 2, be: 1})


class TestGSCondition:
    def test_dicritical_psi(self):
        v = gs_condition(build_cuspidal_spec(*DICRITICAL), GPoly.from_terms([(1, 0, 1)]))
        assert (v.valuation, v.threshold, v.satisfied) == (2, 3, False)
        assert v.text() == "nu = 2 < 3"

    def test_dicritical_psi_z(self):
        v = gs_condition(build_cuspidal_spec(*DICRITICAL), GPoly.from_terms([(1, 1, 1)]))
        assert (v.valuation, v.satisfied) == (7, True)

    def test_zero(self):
        v = gs_condition(build_cuspidal_spec(*DICRITICAL), GPoly())
        assert v.valuation == math.inf and v.satisfied

    @given(gpolys(max_exp=4))
    def test_r_two_always(self, G):
        v = gs_condition(build_cuspidal_spec(*GOLDEN), G)
        assert v.threshold == 0 and v.satisfied

    def test_even_r_halves(self):
        spec = build_cuspidal_spec(2, 3, (1,), (4,))
        v = gs_condition(spec, GPoly.from_terms([(0, 1, 1)]))
        assert (v.valuation, v.threshold) == (2, 1)

    @given(cusp_data(max_mult=6), gpolys(max_exp=4), st.integers(0, 6), st.integers(0, 6))
    def test_monotone(self, data, G, a, b):
        spec = build_cuspidal_spec(*data)
        assume(not G.is_zero)
        v = gs_condition(spec, G)
        g = math.gcd(2, spec.r)
        assume(Fraction(2 * a + spec.r * b, g) > v.valuation)
        grown = GPoly({**G.support, (a, b): 1}) if (a, b) not in G.support else G
        assert gs_condition(spec, grown).satisfied == v.satisfied


class TestLoray:
    def test_satisfied(self):
        v = loray_condition_2d(2, 3, parse_poly("x^2*y", XY))
        assert (v.valuation, v.threshold, v.satisfied) == (7, 2, True)

    def test_condition_not_necessary(self):
        v = loray_condition_2d(6, 3, parse_poly("5*x*y", XY))
        assert (v.valuation, v.threshold, v.satisfied) == (3, Fraction(10, 3), False)
        assert v.text() == "nu = 3 <= 10/3"
        # the form is still integrable (any 1-form in the plane) and logarithmic along y^6 - x^3
        assert is_logarithmic(v.form, parse_poly("y^6 - x^3", XY))

    def test_zero(self):
        v = loray_condition_2d(2, 3, SparsePoly.zero(XY))
        assert v.valuation == math.inf and v.satisfied

    def test_form(self):
        v = loray_condition_2d(2, 3, parse_poly("1", XY))
        assert v.form == parse_form("d(y^2 - x^3) + 2*x*dy - 3*y*dx", XY)
