import math

import numpy as np
import pytest

from lfpolar import (
    PolarPoint,
    RayTP,
    XiPoint,
    arctan2_normalized,
    polar_from_ray,
    ray_from_polar,
    ray_from_xi,
    xi_from_ray,
)


def test_xi_known_values():
    q = xi_from_ray(RayTP(1.0, 2.0, 3.0, 4.0))
    assert q == XiPoint(2.5, 0.5, 2.5, 1.5)


def test_xi_inverse_known_values():
    ray = ray_from_xi(XiPoint(2.5, 0.5, 2.5, 1.5))
    assert ray == RayTP(1.0, 2.0, 3.0, 4.0)


def test_xi_roundtrip_random():
    rng = np.random.default_rng(4)
    rays = RayTP(*rng.uniform(-100.0, 100.0, size=(4, 100000)))
    back = ray_from_xi(xi_from_ray(rays))
    worst = max(np.abs(np.asarray(b) - np.asarray(a)).max() for a, b in zip(rays, back))
    assert worst <= 1e-12


def test_xi_roundtrip_other_direction():
    rng = np.random.default_rng(5)
    q = XiPoint(*rng.uniform(-50.0, 50.0, size=(4, 10000)))
    back = xi_from_ray(ray_from_xi(q))
    worst = max(np.abs(np.asarray(b) - np.asarray(a)).max() for a, b in zip(q, back))
    assert worst <= 1e-12


def test_polar_known_values():
    # (u + y, v - x) = (1, 1) and (u - y, v + x) = (1, 1)
    p = polar_from_ray(RayTP(0.0, 0.0, 1.0, 1.0))
    assert p.theta1 == pytest.approx(math.pi / 4, abs=1e-15)
    assert p.theta2 == pytest.approx(math.pi / 4, abs=1e-15)
    assert p.r1 == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)
    assert p.r2 == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)


def test_polar_inverse_known_values():
    ray = ray_from_polar(PolarPoint(0.0, 0.0, 1.0, 1.0))
    # cos terms add on y/u, sin terms vanish
    assert ray.x == 0.0
    assert ray.y == 0.0
    assert ray.u == 2.0
    assert ray.v == 0.0


def test_polar_roundtrip_random():
    rng = np.random.default_rng(6)
    rays = RayTP(*rng.uniform(-100.0, 100.0, size=(4, 100000)))
    back = ray_from_polar(polar_from_ray(rays))
    worst = max(np.abs(np.asarray(b) - np.asarray(a)).max() for a, b in zip(rays, back))
    assert worst <= 1e-9


def test_polar_angles_normalized():
    rng = np.random.default_rng(7)
    rays = RayTP(*rng.uniform(-5.0, 5.0, size=(4, 5000)))
    p = polar_from_ray(rays)
    for theta in (p.theta1, p.theta2):
        assert np.all(theta >= 0.0)
        assert np.all(theta < 2.0 * math.pi)
    assert np.all(p.r1 >= 0.0)
    assert np.all(p.r2 >= 0.0)


def test_polar_degenerate_angle_is_zero():
    # u = -y and v = x collapses the first radius; angle must be 0, not -pi
    p = polar_from_ray(RayTP(0.5, 0.7, -0.7, 0.5))
    assert p.r1 == 0.0
    assert p.theta1 == 0.0
    p = polar_from_ray(RayTP(0.0, 0.0, 0.0, 0.0))
    assert p == PolarPoint(0.0, 0.0, 0.0, 0.0)
    assert ray_from_polar(p) == RayTP(0.0, 0.0, 0.0, 0.0)


def test_polar_degenerate_negative_zero():
    p = polar_from_ray(RayTP(-0.0, -0.0, -0.0, -0.0))
    assert p.theta1 == 0.0
    assert p.theta2 == 0.0


def test_arctan2_branches_exact():
    # right half plane: plain arctan
    assert arctan2_normalized(1.0, 2.0) == math.atan(1.0 / 2.0)
    # left half plane, y >= 0: arctan + pi
    assert arctan2_normalized(1.0, -2.0) == math.atan(1.0 / -2.0) + math.pi
    assert arctan2_normalized(0.0, -2.0) == math.pi
    # left half plane, y < 0: arctan - pi, lifted by 2 pi
    assert arctan2_normalized(-1.0, -2.0) == math.atan(-1.0 / -2.0) + math.pi
    # vertical axis
    assert arctan2_normalized(1.0, 0.0) == math.pi / 2
    assert arctan2_normalized(-1.0, 0.0) == 3.0 * math.pi / 2
    # fourth quadrant wraps into [0, 2 pi)
    assert arctan2_normalized(-1.0, 2.0) == math.atan(-1.0 / 2.0) + 2.0 * math.pi


def test_arctan2_origin_raises():
    with pytest.raises(ValueError):
        arctan2_normalized(0.0, 0.0)
    with pytest.raises(ValueError):
        arctan2_normalized(-0.0, -0.0)
    with pytest.raises(ValueError):
        arctan2_normalized(np.array([1.0, 0.0]), np.array([1.0, 0.0]))


def test_arctan2_array_matches_scalar():
    rng = np.random.default_rng(8)
    y = rng.standard_normal(64)
    x = rng.standard_normal(64)
    batch = arctan2_normalized(y, x)
    singles = np.array([arctan2_normalized(yy, xx) for yy, xx in zip(y, x)])
    assert np.array_equal(batch, singles)


def test_transforms_accept_arrays_and_match_scalars():
    rng = np.random.default_rng(9)
    comps = rng.uniform(-3.0, 3.0, size=(4, 32))
    rays = RayTP(*comps)
    q = xi_from_ray(rays)
    p = polar_from_ray(rays)
    for i in range(comps.shape[1]):
        one = RayTP(*comps[:, i])
        q1 = xi_from_ray(one)
        p1 = polar_from_ray(one)
        assert all(np.asarray(a)[i] == b for a, b in zip(q, q1))
        assert all(np.asarray(a)[i] == b for a, b in zip(p, p1))
