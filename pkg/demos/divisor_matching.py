"""Walkthrough: cusp combinatorics, the eta-product matching system, and
weighted CM-point degrees, ending in a divisor-matching certificate.

Run with ``python3 demos/divisor_matching.py``.
"""

from fractions import Fraction

from weilq import (converse_pipeline, cusp_classes, cusp_space_dimension,
                   divisor_classes, eta_divisor, eta_order, fricke_image,
                   heegner_degree, index_gamma0, solve_cusp_matching)


def banner(text):
    print()
    print(f"== {text} ==")


N = 36

banner(f"cusp classes of level N = {N}")
print(" c   orbit  width  conductor")
for cl in cusp_classes(N):
    print(f"{cl.c:>2}   {cl.orbit_size:>4}  {cl.width:>5}  {cl.conductor:>9}")
total = sum(cl.orbit_size * cl.width for cl in cusp_classes(N))
print(f"sum of orbit * width = {total} = index of the level-{N} group "
      f"({index_gamma0(N)})")
assert total == index_gamma0(N)

banner("cusp orders of the eta products")
classes = divisor_classes(N)
print(f"Fricke-symmetric divisor classes d ~ N/d: {classes}")
print("order at each cusp class (rows d, columns c):")
cs = [cl.c for cl in cusp_classes(N)]
print("      " + "  ".join(f"{c:>6}" for c in cs))
for d in classes:
    row = "  ".join(f"{str(eta_order(N, d, c)):>6}" for c in cs)
    print(f"d={d:>2}  {row}")
for d in classes:
    deg = sum((cl.orbit_size * eta_order(N, d, cl.c)
               for cl in cusp_classes(N)), Fraction(0))
    assert deg == Fraction(index_gamma0(N), 12)
print(f"every row has total degree index/12 = {Fraction(index_gamma0(N), 12)}")

banner("solving the matching system")
dim = cusp_space_dimension(N)
print(f"matching space dimension: {dim} (= number of divisor classes)")
target = eta_divisor(N, 2).scaled(Fraction(1, 3)) + eta_divisor(N, 6)
assert fricke_image(target).orders == target.orders
x = solve_cusp_matching(N, target)
print("target: (1/3) * div(class 2) + div(class 6)")
print("solved coordinates:", [str(v) for v in x])
assert x == [Fraction(0), Fraction(1, 3), Fraction(0), Fraction(0),
             Fraction(1)][:dim]

banner("weighted CM-point degrees")
print("level 1 anchors (class-number values):")
for disc in (-3, -4, -7, -8, -11, -12):
    g = disc % 2
    print(f"  degree(n = {disc}) = {heegner_degree(1, disc, g)}")
print("level 5 example: n = -4 splits over the classes gamma = 4, 6")
print("  degree:", heegner_degree(5, -4, 4), "per class")

banner("a divisor-matching certificate")
cert = converse_pipeline(1, {(-4, 0): 2}, eta_divisor(1, 1))
print(f"principal part 2 q^(-4/4) at level 1, cusp target div(eta^2)")
print(f"  CM degree: {cert.heegner.degree}")
print(f"  cusp correction multiplicity: {cert.heegner.correction_mult}")
print(f"  theta coordinates: {[(d, str(v)) for d, v in cert.theta_coefficients]}")
print(f"  weight {cert.weight}, leading exponent {cert.weyl}")
assert cert.heegner.degree + cert.heegner.correction_mult == 0

print()
print("the certificate balances CM-point degrees against cusp orders exactly.")
