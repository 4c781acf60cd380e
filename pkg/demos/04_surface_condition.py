"""The weighted-valuation condition on G, and its dimension-two analogue."""

from cuspfoliate import GPoly, build_cuspidal_spec, gs_condition, gterm_inequalities, loray_condition_2d, parse_poly

spec = build_cuspidal_spec(2, 5, (-1, -2), (5, 10))
for label, G in (("Psi", GPoly.from_terms([(1, 0, 1)])), ("Psi*z", GPoly.from_terms([(1, 1, 1)]))):
    v = gs_condition(spec, G)
    print(f"G = {label}: {v.text()}, satisfied = {v.satisfied}")

t = gterm_inequalities(spec, 1, 0)
for name, value in t.values.items():
    print(f"  {name}: {value} {'>= 0' if value >= 0 else '< 0'}")

# the strict threshold is sufficient, not necessary
v = loray_condition_2d(6, 3, parse_poly("x*y", ("x", "y")))
print("d(y^6 - x^3) + x*y*(6x dy - 3y dx):", v.text())
