import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cuspfoliate import (
    DiffForm,
    GPoly,
    SparsePoly,
    assemble_generator,
    build_cuspidal_spec,
    differential,
    exterior_derivative,
    is_integrable,
    is_logarithmic,
    is_logarithmic_meromorphic,
    log_quotient,
    parse_form,
    parse_poly,
    pullback,
    saito_decompose,
    saito_free_basis_check,
    step1_map,
    step2_map,
    step3_map,
    wedge,
)
from cuspfoliate.errors import NotFree, NotLogarithmic, SearchBudgetExceeded

from .oracle import to_sympy
from .strategies import XY, XYZ, forms_of_degree, monomial_maps, nonzero_polys, one_forms, poly_maps, polys


def F(text, variables=XYZ):
    return parse_form(text, variables)


def P(text, variables=XYZ):
    return parse_poly(text, variables)


class TestExteriorDerivative:
    def test_of_function(self):
        assert differential(P("z^2+x^3")) == F("3*x^2*dx + 2*z*dz")
        assert exterior_derivative(DiffForm.function(P("z^2+x^3"))) == F("3*x^2*dx + 2*z*dz")

    def test_exact_form_is_closed(self):
        assert exterior_derivative(F("y*dx + x*dy")).is_zero

    def test_x_dy(self):
        d = exterior_derivative(F("x*dy"))
        assert d.degree == 2 and d.coefficient("x", "y") == 1
        assert d.coefficient("y", "x") == -1

    @given(polys())
    def test_dd_zero_on_functions(self, f):
        assert exterior_derivative(differential(f)).is_zero

    @given(one_forms())
    def test_dd_zero_on_one_forms(self, w):
        assert exterior_derivative(exterior_derivative(w)).is_zero

    @given(one_forms(max_terms=3))
    def test_derivative_matches_oracle(self, w):
        xs = sympy.symbols(XYZ)
        d = exterior_derivative(w)
        a = [to_sympy(w.coefficient(i)) for i in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                expected = sympy.diff(a[j], xs[i]) - sympy.diff(a[i], xs[j])
                assert sympy.expand(to_sympy(d.coefficient(i, j)) - expected) == 0

    @given(polys(max_terms=3), one_forms(max_terms=3))
    def test_leibniz(self, f, w):
        lhs = exterior_derivative(w * f)
        rhs = wedge(differential(f), w) + exterior_derivative(w) * f
        assert lhs == rhs


class TestWedge:
    def test_dx_dx(self):
        dx = DiffForm.dx("x", XY)
        assert wedge(dx, dx).is_zero

    def test_plane_cusp_wedge(self):
        w = wedge(F("3*x^2*dx + 2*y*dy", XY), F("2*x*dy - 3*y*dx", XY))
        assert w.coefficient("x", "y") == P("6*(y^2+x^3)", XY)

    def test_anticommutative_basis(self):
        dx, dy = DiffForm.dx("x", XY), DiffForm.dx("y", XY)
        assert wedge(dx, dy) == -wedge(dy, dx)

    @given(one_forms(max_terms=3), one_forms(max_terms=3))
    def test_graded_anticommutativity(self, a, b):
        assert wedge(a, b) == -wedge(b, a)

    @given(one_forms(max_terms=2), forms_of_degree(2, max_terms=2))
    def test_one_two_commute(self, a, b):
        assert wedge(a, b) == wedge(b, a)

    @given(one_forms(max_terms=2), one_forms(max_terms=2), one_forms(max_terms=2))
    def test_associative(self, a, b, c):
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


class TestPullback:
    def test_chain_rule(self):
        assert pullback(F("dx", XY), {"x": P("x^2*y", XY)}) == F("2*x*y*dx + x^2*dy", XY)

    def test_identity(self):
        w = F("z*dx + x*dy + y*dz")
        assert pullback(w, {v: SparsePoly.var(v, XYZ) for v in XYZ}) == w

    def test_step_one_commutes_with_d(self):
        spec = build_cuspidal_spec(2, 3, (1,), (2,))
        sigma = step1_map(spec).substitution
        f = P("y^2 - x^3")
        assert pullback(differential(f), sigma) == differential(f.subs(sigma))
        # oracle: d(f o sigma) expanded independently
        xs = sympy.symbols(XYZ)
        comp = to_sympy(f).subs({s: to_sympy(sigma[v]) for s, v in zip(xs, XYZ)}, simultaneous=True)
        pulled = pullback(differential(f), sigma)
        for i, s in enumerate(xs):
            assert sympy.expand(to_sympy(pulled.coefficient(i)) - sympy.diff(comp, s)) == 0

    @given(one_forms(max_terms=3), poly_maps())
    def test_naturality_random_maps(self, w, m):
        assert pullback(exterior_derivative(w), m) == exterior_derivative(pullback(w, m))

    @given(one_forms(max_terms=3), monomial_maps())
    def test_naturality_monomial_charts(self, w, m):
        assert pullback(exterior_derivative(w), m) == exterior_derivative(pullback(w, m))

    @pytest.mark.parametrize("spec_args,branch", [
        ((2, 3, (1,), (2,)), 1),
        ((2, 3, (1, 2), (2, 2)), 2),
        ((2, 4, (3,), (2,)), 1),  # xi lives in Q(sqrt 3)
    ])
    def test_naturality_resolution_charts(self, spec_args, branch):
        spec = build_cuspidal_spec(*spec_args)
        w = F("x*y*dz + z^2*dx - y^3*dy + (x + z)*dz")
        for chart in (step1_map(spec), step2_map(spec), step3_map(spec, branch)):
            m = chart.substitution
            lifted = w.lift(chart.field)
            assert pullback(exterior_derivative(lifted), m) == exterior_derivative(pullback(lifted, m))

    @given(one_forms(max_terms=2), one_forms(max_terms=2), poly_maps())
    def test_pullback_respects_wedge(self, a, b, m):
        assert pullback(wedge(a, b), m) == wedge(pullback(a, m), pullback(b, m))


class TestIntegrability:
    def test_exact(self):
        assert is_integrable(F("d(z^2 + x*y)"))

    def test_generator(self):
        spec = build_cuspidal_spec(2, 3, (1,), (2,))
        w = assemble_generator(spec, GPoly.from_terms([(0, 0, 1), (1, 1, 1)]))
        assert is_integrable(w)

    def test_contact_like_form(self):
        w = F("z*dx + x*dy + y*dz")
        assert not is_integrable(w)
        assert wedge(w, exterior_derivative(w)).coefficient("x", "y", "z") == P("x + y + z")

    @given(polys(max_terms=3), nonzero_polys(max_terms=3))
    def test_multiples_of_exact_forms(self, g, f):
        assert is_integrable(differential(f) * g)


class TestLogarithmic:
    def test_plane_cusp(self):
        f = P("y^2+x^3", XY)
        ok, eta = log_quotient(F("2*x*dy - 3*y*dx", XY), f)
        assert ok
        # (2x dy - 3y dx) ^ (3x^2 dx + 2y dy) = -6(y^2 + x^3) dx ^ dy
        assert eta.coefficient("x", "y") == -6

    def test_cuspidal_line(self):
        f = P("z^2+x*y")
        w = F("d(z^2+x*y) + 3*(z*d(x*y) - 2*x*y*dz)")
        ok, eta = log_quotient(w, f)
        assert ok
        assert eta == wedge(F("y*dx + x*dy"), F("dz")) * 6

    def test_not_logarithmic(self):
        assert not is_logarithmic(F("dx", XY), P("y^2+x^3", XY))

    @given(nonzero_polys(max_terms=3))
    def test_df_is_logarithmic(self, f):
        assert is_logarithmic(differential(f), f)

    @given(polys(max_terms=3), st.sampled_from([1, 2, 3]))
    def test_multiples_stay_logarithmic(self, m, n):
        f = P(f"y^2+x^{n}", XY)
        w = F(f"2*x*dy - {n}*y*dx", XY)
        m = m.rename(XYZ).subs({"x": P("x", XY), "y": P("y", XY), "z": P("x*y", XY)})
        assert is_logarithmic(w * m, f)

    @pytest.mark.parametrize("theta,den,f", [
        ("d(y^2+x^3)", "y^2+x^3", "y^2+x^3"),
        ("2*x*dy - 3*y*dx", "y^2+x^3", "y^2+x^3"),
        ("dx", "y^2+x^3", "y^2+x^3"),
        ("dx", "x", "x*y"),
        ("x*dy", "x*y", "x*y"),
        ("y*dx", "x^2", "x"),
    ])
    def test_two_meromorphic_criteria_agree(self, theta, den, f):
        th, d, ff = F(theta, XY), P(den, XY), P(f, XY)
        a = is_logarithmic_meromorphic(th, d, ff, via="differential")
        b = is_logarithmic_meromorphic(th, d, ff, via="wedge")
        assert a == b

    def test_meromorphic_values(self):
        f = P("y^2+x^3", XY)
        assert is_logarithmic_meromorphic(F("2*x*dy - 3*y*dx", XY), f, f)
        assert not is_logarithmic_meromorphic(F("dx", XY), f, f)


class TestSaito:
    def test_plane_cusp_triple(self):
        f = P("y^2+x^3", XY)
        w = F("2*x*dy - 3*y*dx", XY)
        t = saito_decompose(w, f, [f])
        assert (t.g, t.h, t.alpha) == (P("3*x^2", XY), P("3*y", XY), F("6*dy", XY))
        assert t.residual(w, f).is_zero

    def test_n_four(self):
        f = P("y^2+x^4", XY)
        t = saito_decompose(F("2*x*dy - 4*y*dx", XY), f, [f])
        assert (t.g, t.h, t.alpha) == (P("4*x^3", XY), P("4*y", XY), F("8*dy", XY))

    def test_exact_form(self):
        f = P("z^2 + x*y")
        t = saito_decompose(differential(f), f)
        assert (t.g, t.h) == (1, -1) and t.alpha.is_zero

    def test_precondition(self):
        with pytest.raises(NotLogarithmic):
            saito_decompose(F("dx", XY), P("y^2+x^3", XY))

    def test_factor_list_forces_direction_search(self):
        # f = x*y: d_x f = y and d_y f = x each share a factor with f
        f = P("x*y", XY)
        w = F("y*dx", XY)
        t = saito_decompose(w, f, [P("x", XY), P("y", XY)])
        assert t.direction == (1, 1)
        assert t.residual(w, f).is_zero

    def test_budget(self):
        f = P("x*y", XY)
        with pytest.raises(SearchBudgetExceeded) as info:
            saito_decompose(F("y*dx", XY), f, [P("x", XY), P("y", XY)], budget=0)
        assert info.value.last_direction == (0, 1)

    @given(st.integers(2, 6), polys(XY, max_terms=2), polys(XY, max_terms=2))
    def test_identity_for_combinations(self, n, a, b):
        f = P(f"y^2+x^{n}", XY)
        w = differential(f) * a + F(f"2*x*dy - {n}*y*dx", XY) * b
        if w.is_zero:
            return
        t = saito_decompose(w, f, [f])
        assert t.residual(w, f).is_zero


class TestFreeBasis:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_plane_cusp_family(self, n):
        f = P(f"y^2+x^{n}", XY)
        res = saito_free_basis_check([differential(f), F(f"2*x*dy - {n}*y*dx", XY)], f)
        assert res.U == 2 * n and res.is_unit

    def test_degenerate_pair(self):
        f = P("y^2+x^3", XY)
        with pytest.raises(NotFree):
            saito_free_basis_check([differential(f), differential(f)], f)

    def test_not_unit(self):
        f = P("y^2+x^3", XY)
        res = saito_free_basis_check([differential(f), F("2*x*dy - 3*y*dx", XY) * P("x", XY)], f)
        assert res.U == P("6*x", XY) and not res.is_unit

    def test_three_variables(self):
        # normal crossing xyz: f dx/x, f dy/y, f dz/z
        f = P("x*y*z")
        forms = [F("y*z*dx"), F("x*z*dy"), F("x*y*dz")]
        res = saito_free_basis_check(forms, f)
        assert res.U == 1 and res.is_unit
