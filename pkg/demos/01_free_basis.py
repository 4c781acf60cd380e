"""Logarithmic forms along the plane cusp family y^2 + x^n.

For each n the pair df, 2x dy - n y dx is a free basis of the logarithmic
forms; the determinant check returns the exact unit U = 2n, and the
constructive decomposition g*omega + h*df = f*alpha is printed for n = 3.
"""

from cuspfoliate import differential, parse_form, parse_poly, saito_decompose, saito_free_basis_check

XY = ("x", "y")

for n in range(2, 7):
    f = parse_poly(f"y^2 + x^{n}", XY)
    w = parse_form(f"2*x*dy - {n}*y*dx", XY)
    res = saito_free_basis_check([differential(f), w], f)
    print(f"n = {n}: U = {res.U}, unit = {res.is_unit}")

f = parse_poly("y^2 + x^3", XY)
w = parse_form("2*x*dy - 3*y*dx", XY)
t = saito_decompose(w, f, [f])
print(f"g = {t.g}, h = {t.h}, alpha = {t.alpha}")
print("residual:", t.residual(w, f))
