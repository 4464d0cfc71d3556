import math

import numpy as np
import pytest
from scipy.integrate import quad

from lfpolar import (
    GaussianBlob,
    LightfieldGeometry,
    RayTP,
    Scene,
    fixture_scene,
    radiance_closed_form,
    radiance_field,
    radiance_quadrature,
    sample_plenoptic_raster,
)

UNIT_BLOB = Scene((GaussianBlob(center=(0.0, 0.0, 0.0), sigma=1.0, amplitude=1.0),))


def test_closed_form_frozen_values():
    # independently derived by quadrature of exp(-z^2) and exp(-2 z^2)
    assert radiance_closed_form(UNIT_BLOB, RayTP(0, 0, 0, 0)) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert radiance_closed_form(UNIT_BLOB, RayTP(1, 0, 0, 0)) == pytest.approx(math.sqrt(math.pi) * math.exp(-1.0), rel=1e-14)
    assert radiance_closed_form(UNIT_BLOB, RayTP(0, 0, 1, 0)) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-14)


def test_quadrature_matches_frozen_value():
    got = radiance_quadrature(UNIT_BLOB, RayTP(0, 0, 0, 0), half_width=10.0, n_points=2001)
    assert abs(got - math.sqrt(math.pi)) <= 1e-10


def test_quadrature_far_field_is_dark():
    scene = Scene((GaussianBlob(center=(0.0, 0.0, 0.0), sigma=0.1, amplitude=1.0),))
    got = radiance_quadrature(scene, RayTP(5.0, 5.0, 0.0, 0.0), half_width=10.0, n_points=2001)
    assert got < 1e-30


def test_quadrature_converges_monotonically():
    ray = RayTP(0.4, -0.3, 0.8, -0.2)
    exact = radiance_closed_form(UNIT_BLOB, ray)
    errs = [abs(radiance_quadrature(UNIT_BLOB, ray, 10.0, n) - exact) for n in (21, 41, 81, 161)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_quadrature_agrees_with_closed_form_on_random_rays():
    scene = fixture_scene()
    sigma_max = max(b.sigma for b in scene.blobs)
    center_max = max(math.hypot(*b.center) for b in scene.blobs)
    hw = 12.0 * sigma_max + center_max
    rng = np.random.default_rng(20)
    rays = RayTP(*rng.uniform(-10.0, 10.0, size=(4, 200)))
    cf = np.asarray(radiance_closed_form(scene, rays))
    qd = np.asarray(radiance_quadrature(scene, rays, half_width=hw, n_points=4001))
    assert np.all(np.abs(cf - qd) <= 1e-8 * cf + 1e-12)


def test_scipy_adaptive_oracle_agrees():
    # a second, adaptive oracle sharing no code with the package quadrature
    scene = fixture_scene()
    for ray in (RayTP(0.2, -0.5, 0.9, 0.3), RayTP(-1.5, 0.8, -0.4, 1.1)):

        def density(z):
            total = 0.0
            for blob in scene.blobs:
                a, b, c = blob.center
                d2 = (ray.x + ray.u * z - a) ** 2 + (ray.y + ray.v * z - b) ** 2 + (z - c) ** 2
                total += blob.amplitude * math.exp(-d2 / blob.sigma**2)
            return total

        want, err = quad(density, -np.inf, np.inf, epsabs=1e-13, epsrel=1e-13)
        got = radiance_closed_form(scene, ray)
        assert got == pytest.approx(want, rel=1e-10)


def test_linearity_of_scene_sum():
    b1 = GaussianBlob(center=(0.3, -0.2, 0.5), sigma=1.4, amplitude=1.0)
    b2 = GaussianBlob(center=(-0.6, 0.4, 1.5), sigma=1.8, amplitude=0.8)
    rng = np.random.default_rng(21)
    rays = RayTP(*rng.uniform(-3.0, 3.0, size=(4, 500)))
    both = np.asarray(radiance_closed_form(Scene((b1, b2)), rays))
    split = np.asarray(radiance_closed_form(Scene((b1,)), rays)) + np.asarray(
        radiance_closed_form(Scene((b2,)), rays)
    )
    assert np.allclose(both, split, rtol=1e-14, atol=0.0)


def test_amplitude_scaling():
    base = GaussianBlob(center=(0.1, 0.2, -0.4), sigma=0.9, amplitude=1.0)
    scaled = GaussianBlob(center=(0.1, 0.2, -0.4), sigma=0.9, amplitude=3.5)
    ray = RayTP(0.5, -0.1, 0.2, 0.7)
    v1 = radiance_closed_form(Scene((base,)), ray)
    v2 = radiance_closed_form(Scene((scaled,)), ray)
    assert v2 == pytest.approx(3.5 * v1, rel=1e-14)


def test_positivity():
    rng = np.random.default_rng(22)
    rays = RayTP(*rng.uniform(-20.0, 20.0, size=(4, 2000)))
    vals = np.asarray(radiance_closed_form(fixture_scene(), rays))
    assert np.all(vals > 0.0)


def test_translation_covariance():
    da, db = 0.8, -1.3
    scene = fixture_scene()
    moved = Scene(
        tuple(
            GaussianBlob(center=(b.center[0] + da, b.center[1] + db, b.center[2]), sigma=b.sigma, amplitude=b.amplitude)
            for b in scene.blobs
        )
    )
    rng = np.random.default_rng(23)
    rays = np.asarray(rng.uniform(-2.0, 2.0, size=(4, 300)))
    v_orig = np.asarray(radiance_closed_form(scene, RayTP(*rays)))
    shifted = RayTP(rays[0] + da, rays[1] + db, rays[2], rays[3])
    v_moved = np.asarray(radiance_closed_form(moved, shifted))
    assert np.allclose(v_orig, v_moved, rtol=1e-12, atol=0.0)


def test_field_callable_matches_direct_evaluation():
    scene = fixture_scene()
    field = radiance_field(scene)
    ray = RayTP(0.3, 0.1, -0.2, 0.6)
    assert field(ray) == radiance_closed_form(scene, ray)


def test_raster_maximal_at_reference_for_centered_blob():
    scene = Scene((GaussianBlob(center=(0.0, 0.0, 0.0), sigma=1.0, amplitude=1.0),))
    geom = LightfieldGeometry(5, 5, 9, 9, ref_micro=(2, 2), ref_pixel=(4, 4))
    lf = sample_plenoptic_raster(scene, geom)
    assert lf.raster.shape == (45, 45)
    center_row = 2 * 9 + 4
    center_col = 2 * 9 + 4
    peak = lf.raster[center_row, center_col]
    assert peak == lf.raster.max()
    others = lf.raster.copy()
    others[center_row, center_col] = -np.inf
    assert peak > others.max()


def test_raster_linearity():
    b1 = GaussianBlob(center=(0.5, 0.0, 0.3), sigma=0.8, amplitude=1.0)
    b2 = GaussianBlob(center=(-0.5, 0.2, -0.6), sigma=1.1, amplitude=0.7)
    geom = LightfieldGeometry(3, 3, 7, 7, ref_micro=(1, 1), ref_pixel=(3, 3))
    both = sample_plenoptic_raster(Scene((b1, b2)), geom).raster
    split = sample_plenoptic_raster(Scene((b1,)), geom).raster + sample_plenoptic_raster(Scene((b2,)), geom).raster
    assert np.allclose(both, split, rtol=1e-14, atol=0.0)


def test_raster_amplitude_scaling():
    b = GaussianBlob(center=(0.2, -0.1, 0.4), sigma=1.0, amplitude=1.0)
    bk = GaussianBlob(center=(0.2, -0.1, 0.4), sigma=1.0, amplitude=2.5)
    geom = LightfieldGeometry(3, 3, 5, 5, ref_micro=(1, 1), ref_pixel=(2, 2))
    r1 = sample_plenoptic_raster(Scene((b,)), geom).raster
    rk = sample_plenoptic_raster(Scene((bk,)), geom).raster
    assert np.allclose(rk, 2.5 * r1, rtol=1e-14, atol=0.0)


def test_blob_validation():
    with pytest.raises(ValueError):
        GaussianBlob(center=(0, 0, 0), sigma=0.0, amplitude=1.0)
    with pytest.raises(ValueError):
        GaussianBlob(center=(0, 0, 0), sigma=-1.0, amplitude=1.0)
    with pytest.raises(ValueError):
        GaussianBlob(center=(0, 0, 0), sigma=1.0, amplitude=0.0)
    with pytest.raises(ValueError):
        GaussianBlob(center=(0, 0, math.inf), sigma=1.0, amplitude=1.0)


def test_scene_validation():
    with pytest.raises(ValueError):
        Scene(())
    with pytest.raises(ValueError):
        Scene((object(),))


def test_quadrature_validation():
    with pytest.raises(ValueError):
        radiance_quadrature(UNIT_BLOB, RayTP(0, 0, 0, 0), half_width=0.0, n_points=101)
    with pytest.raises(ValueError):
        radiance_quadrature(UNIT_BLOB, RayTP(0, 0, 0, 0), half_width=10.0, n_points=100)
    with pytest.raises(ValueError):
        radiance_quadrature(UNIT_BLOB, RayTP(0, 0, 0, 0), half_width=10.0, n_points=1)


def test_fixture_scene_loads():
    scene = fixture_scene()
    assert len(scene.blobs) == 3
    assert all(b.sigma >= 0.5 for b in scene.blobs)
