"""Circle-integral symmetries of lightfields in split coordinates.

For a field satisfying the split-coordinate wave identity, the mean
over a circle in the (xi1, xi4) plane equals the mean over the circle
of the same radius in the (xi2, xi3) plane, and the two radii of a
double circle integral can be swapped. Both fail for generic fields,
and the failure has a computable size, which makes a good sanity probe
for the quadrature itself.
"""

import numpy as np

from lfpolar import (
    XiPoint,
    as_xi_field,
    double_circle_integral,
    fixture_scene,
    radiance_field,
    theorem1_check,
    theorem2_check,
)

field_xi = as_xi_field(radiance_field(fixture_scene()))

center = XiPoint(0.3, -0.2, 0.4, 0.1)
print("single-circle identity on the fixture field")
for radius in (0.25, 0.5, 1.0, 2.0):
    rep = theorem1_check(field_xi, center, radius, n_nodes=512)
    print(f"  radius {radius:<5} lhs {rep.lhs:.12f} rhs {rep.rhs:.12f} rel diff {rep.rel_diff:.2e}")

print("\ndouble-circle identity, radii swapped")
for r1, r2 in ((0.5, 1.5), (1.0, 2.0), (0.3, 0.7)):
    rep = theorem2_check(field_xi, center, r1, r2, n_nodes=256)
    print(f"  radii ({r1}, {r2}): rel diff {rep.rel_diff:.2e}")

# counter-case: xi1^2 does not satisfy the identity. The two circle
# integrals differ by exactly pi R^2, which the quadrature reproduces
# to machine precision.
def xi1_squared(q):
    return np.asarray(q.xi1, dtype=float) ** 2

print("\ncounter-case xi1^2: gap should equal pi R^2")
for radius in (0.5, 1.0, 2.0):
    rep = theorem1_check(xi1_squared, XiPoint(0.0, 0.0, 0.0, 0.0), radius, n_nodes=512)
    gap = rep.lhs - rep.rhs
    print(f"  radius {radius:<5} gap {gap:.12f} pi R^2 {np.pi * radius**2:.12f}")

# the swapped double integral of xi1^2 + xi4^2 misses by (2 pi)^2 (R1^2 - R2^2)
def radial_14(q):
    return np.asarray(q.xi1, dtype=float) ** 2 + np.asarray(q.xi4, dtype=float) ** 2

lhs = double_circle_integral(radial_14, XiPoint(0.0, 0.0, 0.0, 0.0), 1.5, 0.5, n_nodes=128)
rhs = double_circle_integral(radial_14, XiPoint(0.0, 0.0, 0.0, 0.0), 0.5, 1.5, n_nodes=128)
expect = (2 * np.pi) ** 2 * (1.5**2 - 0.5**2)
print(f"\ncounter-case xi1^2 + xi4^2: swapped gap {lhs - rhs:.10f}, expected {expect:.10f}")
