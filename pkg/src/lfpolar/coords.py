"""Coordinate systems for rays of a two-plane lightfield.

A ray is recorded where it crosses two parallel planes: (x, y) on the
image plane and (u, v) giving its direction, so the ray visits the point
(x + u*z, y + v*z, z) at height z. Three equivalent coordinate systems
are used throughout the package:

    x, y, u, v            two-plane coordinates of the ray
    xi1, xi2, xi3, xi4    split coordinates, the half sums and half
                          differences of the direction and position
                          components; the mixed second-order identity
                          satisfied by lightfields becomes a pure wave
                          operator in these variables
    theta1, R1, theta2, R2
                          double-polar coordinates: (theta1, R1) are the
                          polar coordinates of the (xi1, xi4) pair and
                          (theta2, R2) those of the (xi2, xi3) pair

All transforms are pure functions, accept scalars or numpy arrays of
matching shape, and broadcast componentwise. Angles are normalized to
[0, 2*pi); a zero-radius polar component gets the canonical angle 0.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]

TWO_PI = 2.0 * math.pi


class RayTP(NamedTuple):
    """A ray in two-plane coordinates: position (x, y), direction (u, v)."""

    x: ArrayLike
    y: ArrayLike
    u: ArrayLike
    v: ArrayLike


class XiPoint(NamedTuple):
    """A ray in split coordinates (xi1, xi2, xi3, xi4)."""

    xi1: ArrayLike
    xi2: ArrayLike
    xi3: ArrayLike
    xi4: ArrayLike


class PolarPoint(NamedTuple):
    """A ray in double-polar coordinates.

    (theta1, r1) is the polar form of the (xi1, xi4) plane and
    (theta2, r2) that of the (xi2, xi3) plane. Angles lie in [0, 2*pi).
    """

    theta1: ArrayLike
    theta2: ArrayLike
    r1: ArrayLike
    r2: ArrayLike


def xi_from_ray(ray: RayTP) -> XiPoint:
    """Split coordinates of a two-plane ray.

    xi1 = (u + y)/2, xi2 = (u - y)/2, xi3 = (v + x)/2, xi4 = (v - x)/2.
    """
    x, y, u, v = (np.asarray(c, dtype=float) for c in ray)
    return XiPoint(
        (0.5 * (u + y))[()],
        (0.5 * (u - y))[()],
        (0.5 * (v + x))[()],
        (0.5 * (v - x))[()],
    )


def ray_from_xi(q: XiPoint) -> RayTP:
    """Two-plane coordinates of a split point; exact inverse of xi_from_ray."""
    xi1, xi2, xi3, xi4 = (np.asarray(c, dtype=float) for c in q)
    return RayTP((xi3 - xi4)[()], (xi1 - xi2)[()], (xi1 + xi2)[()], (xi3 + xi4)[()])


def arctan2_normalized(y: ArrayLike, x: ArrayLike) -> ArrayLike:
    """Angle of the vector (x, y) in [0, 2*pi).

    Negative results of arctan2 are lifted by 2*pi. The origin has no
    angle; raises ValueError if any input pair is (0, 0).
    """
    ya = np.asarray(y, dtype=float)
    xa = np.asarray(x, dtype=float)
    if np.any((ya == 0.0) & (xa == 0.0)):
        raise ValueError("angle undefined at the origin (0, 0)")
    ang = np.arctan2(ya, xa)
    ang = np.where(ang < 0.0, ang + TWO_PI, ang)
    return ang[()]


def polar_from_ray(ray: RayTP) -> PolarPoint:
    """Double-polar coordinates of a two-plane ray.

    theta1 is the angle of (u + y, v - x) and 2*R1 its length; theta2 is
    the angle of (u - y, v + x) and 2*R2 its length. A degenerate pair
    (radius 0) gets angle 0 rather than an error, so every ray has a
    polar form; arctan2 alone would give -pi for (-0.0, -0.0).
    """
    x, y, u, v = (np.asarray(c, dtype=float) for c in ray)
    a1 = u + y
    b1 = v - x
    a2 = u - y
    b2 = v + x
    r1 = 0.5 * np.hypot(a1, b1)
    r2 = 0.5 * np.hypot(a2, b2)
    t1 = np.arctan2(b1, a1)
    t1 = np.where(t1 < 0.0, t1 + TWO_PI, t1)
    t1 = np.where(r1 == 0.0, 0.0, t1)
    t2 = np.arctan2(b2, a2)
    t2 = np.where(t2 < 0.0, t2 + TWO_PI, t2)
    t2 = np.where(r2 == 0.0, 0.0, t2)
    return PolarPoint(t1[()], t2[()], r1[()], r2[()])


def ray_from_polar(p: PolarPoint) -> RayTP:
    """Two-plane coordinates of a double-polar point.

    x = R2*sin(theta2) - R1*sin(theta1)
    y = R1*cos(theta1) - R2*cos(theta2)
    u = R1*cos(theta1) + R2*cos(theta2)
    v = R2*sin(theta2) + R1*sin(theta1)
    """
    t1, t2, r1, r2 = (np.asarray(c, dtype=float) for c in p)
    c1 = r1 * np.cos(t1)
    s1 = r1 * np.sin(t1)
    c2 = r2 * np.cos(t2)
    s2 = r2 * np.sin(t2)
    return RayTP((s2 - s1)[()], (c1 - c2)[()], (c1 + c2)[()], (s2 + s1)[()])
