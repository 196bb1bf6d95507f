"""
Tube domain geometry and its symmetries
========================================

Points of the domain satisfy Re(4p z1) + Re(z2)^{2p} < 1.  The group
generated by imaginary translations, a one-parameter dilation family and
the flip z2 -> -z2 acts by biholomorphisms, and the single invariant
X = Re(z2) / (1 - 4p Re z1)^{1/(2p)} labels the orbits (up to sign).
"""

from tubeke import (
    BoundaryClass,
    Point,
    RegionClass,
    TubeAutomorphism,
    TubeParams,
    apply,
    classify_boundary,
    in_cone,
    in_domain,
    jacobian,
    normalizing_automorphism,
    region,
    x_invariant,
)

params = TubeParams(p=2)
z = Point.parse("-0.05,1.25,0.6,-2.0")
print(f"z = {z}")
print(f"in domain: {in_domain(params, z)},  X(z) = {x_invariant(params, z):.12f}")

# --- automorphisms preserve |X| ----------------------------------------

phi = TubeAutomorphism(params=params, lam=1.7, u=(0.4, -3.0), flip=True)
w = apply(phi, z)
print(f"\nphi(z) = {w}")
print(f"X(phi(z)) = {x_invariant(params, w):.12f}   (flip negates X)")
J = jacobian(phi)
print(f"Jacobian diag({J[0, 0]:.6f}, {J[1, 1]:.6f})")

# --- every point normalizes onto the real axis ------------------------

psi = normalizing_automorphism(params, z)
axis = apply(psi, z)
print(f"\nnormalized point: z1 = {axis.z1}, z2 = {axis.z2}")

# --- the boundary is strictly pseudoconvex except on a real curve -----
# Degeneracy happens exactly where Re(z2) = 0, the tube's "edge".

for q in (Point(0.125 + 3.0j, 7.0j), Point(0j, 1.0 + 0j)):
    print(f"boundary point {q}: {classify_boundary(params, q).name}")
assert classify_boundary(params, Point(0.125 + 3.0j, 7.0j)) \
    is BoundaryClass.WEAKLY_PSEUDOCONVEX

# --- interior regions --------------------------------------------------
# The asymptotic analysis splits the domain by the ratio X^{2p}: an
# inner region (ratio < alpha), an outer one (ratio > 1 - alpha), and a
# middle band.  Cones with vertex at the weakly pseudoconvex edge
# (1/(4p), 0) stay in the inner region once they are thin enough.

print()
for pt, alpha in ((Point(0j, 0j), 0.3), (Point(0j, 0.998 + 0j), 0.02)):
    print(f"region of {pt} at alpha={alpha}: {region(params, pt, alpha).name}")
print(f"point on the cone axis, inside a thin cone: "
      f"{in_cone(params, Point(-0.5 + 0j, 0j), theta=0.05)}")
assert region(params, Point(0j, 0j), 0.3) is RegionClass.INNER
