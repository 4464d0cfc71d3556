import numpy as np
import pytest

from lfpolar import (
    RayTP,
    ResidualReport,
    StencilSpec,
    XiPoint,
    as_xi_field,
    fixture_scene,
    john_residual,
    radiance_field,
    ray_from_xi,
    residual_sweep,
    ultrahyperbolic_residual,
    xi_from_ray,
)


def constant_field(_):
    return 1.25


def xv_field(ray):
    return np.asarray(ray.x, dtype=float) * np.asarray(ray.v, dtype=float)


def test_constant_field_zero_residuals():
    st = StencilSpec(0.05)
    assert john_residual(constant_field, RayTP(0.3, -0.1, 0.7, 0.2), st) == 0.0
    assert ultrahyperbolic_residual(constant_field, XiPoint(0.3, -0.1, 0.7, 0.2), st) == 0.0


def test_constant_field_report_all_zeros():
    rng = np.random.default_rng(30)
    pts = RayTP(*rng.uniform(-2, 2, size=(4, 200)))
    rep = residual_sweep(constant_field, pts, StencilSpec(0.1), which="john")
    assert rep.max_abs == 0.0
    assert rep.mean_abs == 0.0
    assert rep.rms == 0.0


def test_xv_residual_exactly_minus_one_on_dyadic_points():
    # dyadic coordinates and a dyadic step keep every stencil evaluation
    # exact, so the quadratic identity survives floating arithmetic
    st = StencilSpec(0.0625)
    for pt in (
        RayTP(0.0, 0.0, 0.0, 0.0),
        RayTP(0.25, -0.5, 1.0, 0.75),
        RayTP(-2.0, 3.5, -0.125, 8.0),
    ):
        assert john_residual(xv_field, pt, st) == -1.0


def test_xv_residual_near_minus_one_everywhere():
    rng = np.random.default_rng(31)
    pts = RayTP(*rng.uniform(-2, 2, size=(4, 1000)))
    res = john_residual(xv_field, pts, StencilSpec(0.05))
    assert np.max(np.abs(res + 1.0)) <= 1e-11


def test_xv_report_stats():
    rng = np.random.default_rng(32)
    pts = RayTP(*rng.uniform(-2, 2, size=(4, 500)))
    rep = residual_sweep(xv_field, pts, StencilSpec(0.05), which="john")
    assert rep.max_abs == pytest.approx(1.0, abs=1e-9)
    assert rep.mean_abs == pytest.approx(1.0, abs=1e-9)
    assert rep.rms == pytest.approx(1.0, abs=1e-9)


def test_ultra_exact_on_quadratics():
    st = StencilSpec(0.5)  # dyadic: differences of squares stay exact

    def balanced(q):
        return np.asarray(q.xi1) ** 2 + np.asarray(q.xi2) ** 2

    def unbalanced(q):
        return np.asarray(q.xi1) ** 2

    for point in (XiPoint(0.0, 0.0, 0.0, 0.0), XiPoint(0.25, -1.5, 2.0, 0.75)):
        assert ultrahyperbolic_residual(balanced, point, st) == 0.0
        assert ultrahyperbolic_residual(unbalanced, point, st) == 2.0


def test_john_exact_on_degree_two_polynomials():
    def poly(ray):
        x, y, u, v = (np.asarray(c, dtype=float) for c in ray)
        return 1.0 + 2.0 * x - y + 0.5 * u + v + x * u - y * v + 0.25 * x * x

    st = StencilSpec(0.25)
    for pt in (RayTP(0.5, -0.25, 1.0, 0.75), RayTP(0.0, 0.0, 0.0, 0.0)):
        assert john_residual(poly, pt, st) == 0.0


def test_gaussian_field_second_order_convergence():
    field = radiance_field(fixture_scene())
    rng = np.random.default_rng(33)
    pts = RayTP(*rng.uniform(-2, 2, size=(4, 1000)))
    coarse = residual_sweep(field, pts, StencilSpec(0.1), which="john")
    fine = residual_sweep(field, pts, StencilSpec(0.05), which="john")
    ratio = coarse.rms / fine.rms
    assert 3.0 <= ratio <= 5.0


def test_ultra_second_order_convergence():
    field_xi = as_xi_field(radiance_field(fixture_scene()))
    rng = np.random.default_rng(34)
    pts = XiPoint(*rng.uniform(-2, 2, size=(4, 1000)))
    coarse = residual_sweep(field_xi, pts, StencilSpec(0.1), which="ultrahyperbolic")
    fine = residual_sweep(field_xi, pts, StencilSpec(0.05), which="ultrahyperbolic")
    ratio = coarse.rms / fine.rms
    assert 3.0 <= ratio <= 5.0


def test_residuals_vanish_together_on_solution_field():
    field = radiance_field(fixture_scene())
    field_xi = as_xi_field(field)
    rng = np.random.default_rng(35)
    rays = RayTP(*rng.uniform(-1.5, 1.5, size=(4, 300)))
    st = StencilSpec(0.05)
    jr = residual_sweep(field, rays, st, which="john")
    ur = residual_sweep(field_xi, XiPoint(*(np.asarray(c) for c in rays)), st, which="ultrahyperbolic")
    peak = float(np.max(np.asarray(field(rays))))
    assert jr.rms <= 1e-3 * peak
    assert ur.rms <= 1e-3 * peak


def test_stencil_ratio_constant_on_non_solution_field():
    # a smooth field that violates the identity everywhere; the two
    # stencils must measure proportional violations at every point
    def bent(ray):
        x, y, u, v = (np.asarray(c, dtype=float) for c in ray)
        return np.exp(0.1 * x * v - 0.05 * y * u)

    def bent_xi(q):
        return bent(ray_from_xi(q))

    rng = np.random.default_rng(36)
    rays = np.asarray(rng.uniform(-1.5, 1.5, size=(4, 60)))
    st = StencilSpec(0.02)
    jr = np.asarray(john_residual(bent, RayTP(*rays), st))
    q = xi_from_ray(RayTP(*rays))
    ur = np.asarray(ultrahyperbolic_residual(bent_xi, q, st))
    ratios = ur / jr
    med = np.median(ratios)
    assert med != 0.0
    assert np.all(np.abs(ratios / med - 1.0) <= 0.05)


def test_report_fields_and_validation():
    rep = ResidualReport(which="john", h=0.05, sample_count=10, max_abs=2.0, mean_abs=1.0, rms=1.5)
    assert rep.max_abs >= rep.mean_abs >= 0.0
    with pytest.raises(ValueError):
        ResidualReport(which="john", h=0.05, sample_count=10, max_abs=0.5, mean_abs=1.0, rms=0.7)
    with pytest.raises(ValueError):
        ResidualReport(which="john", h=0.05, sample_count=0, max_abs=1.0, mean_abs=1.0, rms=1.0)


def test_stencil_validation():
    with pytest.raises(ValueError):
        StencilSpec(0.0)
    with pytest.raises(ValueError):
        StencilSpec(-0.1)
    with pytest.raises(ValueError):
        StencilSpec(float("nan"))


def test_sweep_validation():
    with pytest.raises(ValueError):
        residual_sweep(constant_field, RayTP(0.0, 0.0, 0.0, 0.0), StencilSpec(0.05), which="bogus")
    empty = RayTP(np.array([]), np.array([]), np.array([]), np.array([]))
    with pytest.raises(ValueError):
        residual_sweep(xv_field, empty, StencilSpec(0.05), which="john")
