"""Continued fractions of sqrt(D) and the polynomial Pell equation."""
from hypcf import (cf_init_sqrt, convergents, detect_period, find_pell, parse_poly,
                   partial_quotients, torsion_order_mod, two_prime_test)
from hypcf.fields import GF

spacer = "_" * 60

D = parse_poly("x^6+x")
print("D =", D)
rep, sol = find_pell(D)
print("quotients in one period:", [str(a) for a in rep.quotients[:rep.period]])
print("p =", sol.p, " q =", sol.q, " p^2 - D q^2 =", sol.omega)

print(spacer)

# Without a period the expansion just keeps going, with growing coefficients
D = parse_poly("x^4+5*x^2-3*x+19")
for n, a in enumerate(partial_quotients(D, 5)):
    print(f"a_{n} =", a)

print(spacer)

# Modulo a prime every expansion is periodic; the first convergent
# numerator of the period has degree equal to the torsion order
for p in (5, 7, 19):
    r = torsion_order_mod(D, p)
    note = "" if r.squarefree else "  (not square-free mod p)"
    print(f"mod {p}: quasi-period {r.quasi_period}, torsion order {r.torsion_order}{note}")

print("\nTwo primes whose orders cannot come from one integer order:")
print(two_prime_test(D, 5, 7).reason)

print(spacer)

Dp = parse_poly("x^4+5*x^2-3*x+19", GF(19))
rep = detect_period(cf_init_sqrt(Dp))
c = convergents(rep.quotients)[rep.quasi_period - 1]
print("over F_19: p =", c.p)
print("           q =", c.q)
print("  p^2 - D q^2 =", c.p * c.p - Dp * c.q * c.q)
