"""Three charts taking z^2 + (y^2 - x^3)^2 to the smooth surface z^2 + 1."""

from cuspfoliate import GPoly, build_cuspidal_spec, resolve

spec = build_cuspidal_spec(2, 3, (1,), (2,))
for report in resolve(spec, GPoly.from_terms([(0, 1, 1)])):
    print()
    for line in report.summary():
        print(line)

# over Q(sqrt 3): the branch y^2 - 3 x^4 needs xi with xi^2 = 3
spec = build_cuspidal_spec(2, 4, (3,), (2,))
final = resolve(spec)[-1]
print()
print(final.label, "over", final.field, "->", final.surface)
