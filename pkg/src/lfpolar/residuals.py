"""Finite-difference residuals of the two lightfield identities.

Any radiance field produced by integrating a 3D density along rays
satisfies a mixed second-order identity in two-plane coordinates,

    (d/dy d/du - d/dx d/dv) r = 0,

and, rewritten in split coordinates, the wave-operator form

    (d2/dxi1^2 - d2/dxi2^2 - d2/dxi3^2 + d2/dxi4^2) rt = 0.

This module estimates both left-hand sides with central differences so
a field can be tested for membership: residuals of order h^2 mean the
identity holds, residuals that refuse to shrink mean it does not.
Both stencils are exact on polynomials of total degree <= 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coords import ArrayLike, RayTP, XiPoint


@dataclass(frozen=True)
class StencilSpec:
    """Step size for the second-order central-difference stencils."""

    h: float = 0.05

    def __post_init__(self):
        if not (self.h > 0.0 and math.isfinite(self.h)):
            raise ValueError("stencil step h must be positive and finite")
        object.__setattr__(self, "h", float(self.h))


@dataclass(frozen=True)
class ResidualReport:
    """Absolute-residual statistics over a sample set."""

    which: str
    h: float
    sample_count: int
    max_abs: float
    mean_abs: float
    rms: float

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("report needs at least one sample")
        if self.max_abs + 1e-15 < self.mean_abs:
            raise ValueError("max_abs cannot be below mean_abs")


def john_residual(field, p: RayTP, st: StencilSpec) -> ArrayLike:
    """Central-difference estimate of (d_y d_u - d_x d_v) r at p.

    Each mixed derivative uses the 4-corner cross difference
    [r(+h,+h) - r(+h,-h) - r(-h,+h) + r(-h,-h)] / (4 h^2), so the whole
    residual costs 8 field evaluations. Vectorizes over array-valued
    ray components.
    """
    h = st.h
    x, y, u, v = p
    dyu = (
        field(RayTP(x, y + h, u + h, v))
        - field(RayTP(x, y + h, u - h, v))
        - field(RayTP(x, y - h, u + h, v))
        + field(RayTP(x, y - h, u - h, v))
    )
    dxv = (
        field(RayTP(x + h, y, u, v + h))
        - field(RayTP(x + h, y, u, v - h))
        - field(RayTP(x - h, y, u, v + h))
        + field(RayTP(x - h, y, u, v - h))
    )
    return (dyu - dxv) / (4.0 * h * h)


def ultrahyperbolic_residual(field_xi, q: XiPoint, st: StencilSpec) -> ArrayLike:
    """Central-difference estimate of the split-coordinate wave operator.

    Sum of axis second differences with signs (+, -, -, +) on
    (xi1, xi2, xi3, xi4), each (rt(q + h e_i) - 2 rt(q) + rt(q - h e_i)) / h^2.
    field_xi takes an XiPoint.
    """
    h = st.h
    x1, x2, x3, x4 = q
    center = field_xi(q)
    acc = 0.0
    for sign, plus, minus in (
        (1.0, XiPoint(x1 + h, x2, x3, x4), XiPoint(x1 - h, x2, x3, x4)),
        (-1.0, XiPoint(x1, x2 + h, x3, x4), XiPoint(x1, x2 - h, x3, x4)),
        (-1.0, XiPoint(x1, x2, x3 + h, x4), XiPoint(x1, x2, x3 - h, x4)),
        (1.0, XiPoint(x1, x2, x3, x4 + h), XiPoint(x1, x2, x3, x4 - h)),
    ):
        acc = acc + sign * (field_xi(plus) - 2.0 * center + field_xi(minus))
    return acc / (h * h)


def residual_sweep(field, points, st: StencilSpec, which: str = "john") -> ResidualReport:
    """Aggregate |residual| statistics over a set of sample points.

    which selects the stencil: "john" expects a ray-space field and a
    RayTP of coordinate arrays; "ultrahyperbolic" expects a
    split-coordinate field and an XiPoint of coordinate arrays.
    """
    if which == "john":
        res = john_residual(field, points, st)
    elif which == "ultrahyperbolic":
        res = ultrahyperbolic_residual(field, points, st)
    else:
        raise ValueError("which must be 'john' or 'ultrahyperbolic'")
    res = np.abs(np.asarray(res, dtype=float)).ravel()
    if res.size == 0:
        raise ValueError("points must be non-empty")
    return ResidualReport(
        which=which,
        h=st.h,
        sample_count=int(res.size),
        max_abs=float(res.max()),
        mean_abs=float(res.mean()),
        rms=float(np.sqrt(np.mean(res * res))),
    )
