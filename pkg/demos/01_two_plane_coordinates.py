"""Walk through the three coordinate systems for rays.

A ray is stored as (x, y, u, v): it pierces the first plane at (x, y)
and travels with slope (u, v), visiting (x + u z, y + v z) at height z.
The split coordinates average and difference the two planes, and the
double-polar coordinates put a radius and an angle on each of the two
split planes.
"""

import numpy as np

from lfpolar import (
    RayTP,
    polar_from_ray,
    ray_from_polar,
    ray_from_xi,
    xi_from_ray,
)

ray = RayTP(x=1.0, y=2.0, u=3.0, v=4.0)
print("ray            ", ray)

xi = xi_from_ray(ray)
print("split          ", xi)
print("back from split", ray_from_xi(xi))

pol = polar_from_ray(ray)
print("polar          ", pol)
print("back from polar", ray_from_polar(pol))

# The split transform halves sums and differences, so it is exact in
# binary arithmetic for most inputs; the polar route goes through
# transcendental functions and loses a few digits.
rng = np.random.default_rng(0)
rays = RayTP(*rng.uniform(-100, 100, size=(4, 200000)))

back = ray_from_xi(xi_from_ray(rays))
err = max(float(np.abs(np.asarray(b) - np.asarray(a)).max()) for a, b in zip(rays, back))
print(f"\nsplit round trip over 2e5 rays: max abs error {err:.3e}")

back = ray_from_polar(polar_from_ray(rays))
err = max(float(np.abs(np.asarray(b) - np.asarray(a)).max()) for a, b in zip(rays, back))
print(f"polar round trip over 2e5 rays: max abs error {err:.3e}")

# The degenerate ray through the origin has both radii zero; its
# angles are pinned to zero so the representation stays unique.
print("\norigin ray maps to", polar_from_ray(RayTP(0.0, 0.0, 0.0, 0.0)))
