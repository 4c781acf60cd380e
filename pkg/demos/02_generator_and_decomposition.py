"""Assemble a generator for z^2 + (y^2 - x^3)^2 and split a form along z^2 + phi."""

from cuspfoliate import (
    GPoly,
    assemble_generator,
    build_cuspidal_spec,
    cuspidal_decompose,
    is_integrable,
    is_logarithmic,
    parse_form,
    parse_poly,
    singular_locus,
    surface,
)

XYZ = ("x", "y", "z")

spec = build_cuspidal_spec(2, 3, (1,), (2,))
print("spec", spec, "P =", spec.P, "Q =", spec.Q, "a =", spec.a_exp, "b =", spec.b_exp)
G = GPoly.from_terms([(0, 0, 1), (1, 1, -2)])
omega = assemble_generator(spec, G)
print("omega =", omega)
print("integrable:", is_integrable(omega), " logarithmic:", is_logarithmic(omega, surface(spec)))
print("singular locus:", singular_locus(spec))

phi = parse_poly("x*y", XYZ)
w = parse_form("d(z^2 + x*y) + 3*(z*d(x*y) - 2*x*y*dz)", XYZ)
dec = cuspidal_decompose(w, 2, phi)
print(f"U = {dec.U}, H = {dec.H}, omega3 = {dec.omega3}, identity holds: {dec.residual(w).is_zero}")
