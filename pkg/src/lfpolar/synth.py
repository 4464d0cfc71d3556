"""Ground-truth radiance fields from Gaussian emitter scenes.

A scene is a list of isotropic Gaussian emitters in 3D. The radiance
carried by the ray (x, y, u, v) is the line integral of the emitter
density along (x + u*z, y + v*z, z); for Gaussians the integral has a
closed form. With blob center (a, b, c), width sigma and amplitude amp:

    A = 1 + u^2 + v^2
    B = u*(a - x) + v*(b - y) + c
    C = (x - a)^2 + (y - b)^2 + c^2
    integral = amp * sigma * sqrt(pi / A) * exp(-(C - B^2 / A) / sigma^2)

(complete the square in z: the squared distance from the line point at
height z to the center is A*z^2 - 2*B*z + C). radiance_quadrature
evaluates the same integral by composite Simpson quadrature and serves
as an independent cross-check of the closed form.

Fields built here are smooth and strictly positive, which makes them
exact test inputs for the derivative and circle-integral checks in the
residuals and asgeirsson modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .coords import ArrayLike, RayTP, XiPoint, ray_from_xi

SQRT_PI = math.sqrt(math.pi)

# An evaluatable radiance map; takes a RayTP of scalars or of broadcastable
# arrays, returns matching scalars/arrays.
RadianceField = Callable[[RayTP], ArrayLike]


@dataclass(frozen=True)
class GaussianBlob:
    """One isotropic Gaussian emitter.

    center is (a, b, c) in scene units, sigma the 1/e half-width,
    amplitude the peak density.
    """

    center: Tuple[float, float, float]
    sigma: float
    amplitude: float

    def __post_init__(self):
        a, b, c = self.center
        if not all(math.isfinite(t) for t in (a, b, c)):
            raise ValueError("blob center must be finite")
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be positive and finite")
        if not (self.amplitude > 0.0 and math.isfinite(self.amplitude)):
            raise ValueError("amplitude must be positive and finite")
        object.__setattr__(self, "center", (float(a), float(b), float(c)))
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "amplitude", float(self.amplitude))

    def density(self, px: ArrayLike, py: ArrayLike, pz: ArrayLike) -> ArrayLike:
        """Emitter density at the 3D point (px, py, pz)."""
        a, b, c = self.center
        d2 = (np.asarray(px, dtype=float) - a) ** 2 + (np.asarray(py, dtype=float) - b) ** 2 + (np.asarray(pz, dtype=float) - c) ** 2
        return self.amplitude * np.exp(-d2 / self.sigma**2)


@dataclass(frozen=True)
class Scene:
    """An ordered, non-empty collection of Gaussian emitters."""

    blobs: Tuple[GaussianBlob, ...]

    def __post_init__(self):
        blobs = tuple(self.blobs)
        if not blobs:
            raise ValueError("scene must contain at least one blob")
        if not all(isinstance(b, GaussianBlob) for b in blobs):
            raise ValueError("scene entries must be GaussianBlob instances")
        object.__setattr__(self, "blobs", blobs)


def radiance_closed_form(scene: Scene, ray: RayTP) -> ArrayLike:
    """Exact line-integral radiance of a Gaussian scene along a ray.

    Sum over blobs of amp*sigma*sqrt(pi/A)*exp(-(C - B^2/A)/sigma^2),
    the closed form of the Gaussian line integral (see module docstring).
    Accepts array-valued ray components.
    """
    x, y, u, v = (np.asarray(c, dtype=float) for c in ray)
    A = 1.0 + u * u + v * v
    total = 0.0
    for blob in scene.blobs:
        a, b, c = blob.center
        B = u * (a - x) + v * (b - y) + c
        C = (x - a) ** 2 + (y - b) ** 2 + c * c
        s2 = blob.sigma * blob.sigma
        total = total + blob.amplitude * blob.sigma * np.sqrt(np.pi / A) * np.exp(-(C - B * B / A) / s2)
    return np.asarray(total)[()]


def radiance_field(scene: Scene) -> RadianceField:
    """Closed-form radiance of a scene as a reusable callable on rays."""

    def field(ray: RayTP) -> ArrayLike:
        return radiance_closed_form(scene, ray)

    return field


def as_xi_field(field: RadianceField) -> Callable[[XiPoint], ArrayLike]:
    """The same radiance as a function of split coordinates."""

    def xi_field(q: XiPoint) -> ArrayLike:
        return field(ray_from_xi(q))

    return xi_field


def radiance_quadrature(scene: Scene, ray: RayTP, half_width: float, n_points: int) -> ArrayLike:
    """Composite-Simpson estimate of the radiance line integral.

    Integrates the scene density along (x + u*z, y + v*z, z) for
    z in [-half_width, half_width] with n_points nodes (odd, >= 3).
    Deliberately built from the density alone so it cross-checks
    radiance_closed_form without sharing any algebra with it.
    """
    if not (half_width > 0.0 and math.isfinite(half_width)):
        raise ValueError("half_width must be positive and finite")
    n_points = int(n_points)
    if n_points < 3 or n_points % 2 == 0:
        raise ValueError("n_points must be an odd integer >= 3")
    x, y, u, v = (np.asarray(c, dtype=float) for c in ray)
    z = np.linspace(-half_width, half_width, n_points)
    w = np.ones(n_points)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (2.0 * half_width / (n_points - 1)) / 3.0
    # evaluate the density on the outer product of rays and nodes
    zb = z.reshape((1,) * x.ndim + (-1,))
    px = x[..., None] + u[..., None] * zb
    py = y[..., None] + v[..., None] * zb
    total = 0.0
    for blob in scene.blobs:
        total = total + blob.density(px, py, zb)
    return np.asarray(np.sum(total * w, axis=-1))[()]


def sample_plenoptic_raster(scene: Scene, geometry) -> "DiscreteLightfield":
    """Render a scene into a microimage-grid raster.

    The raster is a grid of geometry.microimage_rows x microimage_cols
    microimages, each pitch_y x pitch_x pixels. Pixel (row, col) holds
    the closed-form radiance of the ray whose direction indices are the
    microimage offsets from ref_micro and whose position indices are the
    pixel offsets from ref_pixel. Every pixel is defined (no mask).
    """
    from .resample import DiscreteLightfield  # local import, avoids a cycle

    g = geometry
    height = g.microimage_rows * g.pitch_y
    width = g.microimage_cols * g.pitch_x
    rows = np.arange(height)
    cols = np.arange(width)
    mv, py = np.divmod(rows, g.pitch_y)
    mu, px = np.divmod(cols, g.pitch_x)
    u0, v0 = g.ref_micro
    x0, y0 = g.ref_pixel
    u = (mu - u0).astype(float)
    v = (mv - v0).astype(float)
    x = (px - x0).astype(float)
    y = (py - y0).astype(float)
    raster = radiance_closed_form(
        scene,
        RayTP(x[None, :], y[:, None], u[None, :], v[:, None]),
    )
    return DiscreteLightfield(geometry=g, raster=np.asarray(raster, dtype=float))
