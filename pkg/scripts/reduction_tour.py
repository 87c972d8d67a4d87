"""How a continued fraction over Q behaves modulo a prime."""
from hypcf import classify_reduction, compute_lambda, genus1_pattern, parse_poly, valuation_table
from hypcf.fields import OrdAt, PAdic
from hypcf.reduction import VALUATION_HEADER

spacer = "_" * 60

D = parse_poly("x^4+5*x^2-3*x+19")
print("D =", D)
print("first bad index mod 5:", classify_reduction(D, 5, 20))

print(spacer)
print("Gauss norms at 5 (-inf marks complete quotients that do not reduce):")
print("  ".join(VALUATION_HEADER))
for row in valuation_table(D, 5, 18):
    print("  ".join(c.rjust(len(h)) for c, h in zip(row.cells(), VALUATION_HEADER)))

print(spacer)

lm = compute_lambda(D, PAdic(5), 34)
print("indices sharing a reduced convergent:",
      [ns for ns in lm.fibres().values() if len(ns) > 1])

g = genus1_pattern(D, 5, 35)
print("residue quasi-period", g.ell, "; unbounded positions", g.unbounded,
      "; pattern holds:", g.ok)

print(spacer)

# The same questions make sense for Q(t) at a point t = t0
D = parse_poly("x^6+x+t")
print("D =", D)
print("at t = 0:", classify_reduction(D, OrdAt(0), 10))
print("at t = 3:", classify_reduction(D, OrdAt(3), 8))
