"""Heights of convergents and their linear-algebra description."""
from hypcf import convergents, parse_poly, partial_quotients, proj_height, proj_height_places
from hypcf.heights import convergent_height_report
from hypcf.toeplitz import kernel_convergent, proportional, sqrt_system

spacer = "_" * 60

f = parse_poly("6/5*x^2-3*x+9/10")
print("f =", f)
print("height from the primitive integer vector:", proj_height(f))
print("height summed over all places:           ", proj_height_places(f))

print(spacer)

D = parse_poly("x^4+5*x^2-3*x+19")
print(" m   h(q_m)      bound")
for r in convergent_height_report(D, 10):
    print(f"{r.m:2d}  {r.h_q:9.3f}  {r.bound_q:9.3f}")

print(spacer)

# A convergent with deg q = n spans the kernel of a small Toeplitz matrix
for c in convergents(partial_quotients(D, 5)):
    sys = sqrt_system(D, int(c.q.deg))
    p, q = kernel_convergent(sys)
    print(f"n = {int(c.q.deg)}: matrix {sys.shape}, matches recursion:",
          proportional(p, q, c.p, c.q))
