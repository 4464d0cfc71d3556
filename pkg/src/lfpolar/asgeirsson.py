"""Circle-integral identities satisfied by line-integral lightfields.

For a radiance field rt in split coordinates that solves the
wave-operator identity (see the residuals module), two classical
mean-value facts hold:

  1. the integral of rt around a circle of radius R in the (xi1, xi4)
     plane equals the integral around the circle of the same radius in
     the (xi2, xi3) plane, both centered at the same point;

  2. the double integral over two circles, radius R1 in the (xi1, xi4)
     plane and R2 in the (xi2, xi3) plane, is unchanged when the two
     radii are swapped.

Both are checked here with uniform periodic trapezoid quadrature, which
converges spectrally for the smooth integrands produced by Gaussian
scenes, so the reported differences measure the identity itself rather
than the quadrature. The discrete analogue compares raw pixel sums of
(R1, R2) vs (R2, R1) microimages of a polar-resampled lightfield: the
bin counts (7R+1) match across the pair, so the sums are comparable
Riemann approximations of the double integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .coords import XiPoint

TWO_PI = 2.0 * math.pi

# rel_diff denominator floor; a representation guard against 0/0,
# not a tolerance.
REL_FLOOR = 1e-300

# ITU-R BT.709 luma weights, used to reduce 3-channel pixels to one
# scalar before summing.
LUMA_WEIGHTS = np.array([0.2126, 0.7152, 0.0722])


@dataclass(frozen=True)
class CircleSpec:
    """A quadrature circle: center, radius, and node count."""

    center: XiPoint
    radius: float
    n_nodes: int = 256

    def __post_init__(self):
        if not (self.radius >= 0.0 and math.isfinite(self.radius)):
            raise ValueError("radius must be finite and >= 0")
        if int(self.n_nodes) < 8:
            raise ValueError("n_nodes must be >= 8")
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "n_nodes", int(self.n_nodes))


@dataclass(frozen=True)
class TheoremReport:
    """Two sides of an identity and their difference.

    rel_diff = abs_diff / max(|lhs|, |rhs|, tiny floor).
    spec echoes the inputs that produced the report.
    """

    lhs: float
    rhs: float
    abs_diff: float
    rel_diff: float
    spec: dict


def _report(lhs: float, rhs: float, spec: dict) -> TheoremReport:
    lhs = float(lhs)
    rhs = float(rhs)
    abs_diff = abs(lhs - rhs)
    rel_diff = abs_diff / max(abs(lhs), abs(rhs), REL_FLOOR)
    return TheoremReport(lhs=lhs, rhs=rhs, abs_diff=abs_diff, rel_diff=rel_diff, spec=spec)


def _circle_nodes(n: int) -> np.ndarray:
    # uniform nodes on [0, 2*pi): node at 0, no duplicated endpoint,
    # which is the trapezoid rule for periodic integrands
    return TWO_PI * np.arange(n) / n


def circle_integral_14(field_xi, c: CircleSpec) -> float:
    """Integral of the field around a circle in the (xi1, xi4) plane.

    Approximates the angular integral over [0, 2*pi) of
    field(xi1 + R cos t, xi2, xi3, xi4 + R sin t) with c.n_nodes uniform
    nodes (periodic trapezoid, spectrally accurate on smooth fields).
    """
    t = _circle_nodes(c.n_nodes)
    x1, x2, x3, x4 = c.center
    vals = field_xi(XiPoint(x1 + c.radius * np.cos(t), x2, x3, x4 + c.radius * np.sin(t)))
    # broadcast so fields that collapse constant axes still reduce over
    # the same summation path on both sides of an identity
    vals = np.broadcast_to(np.asarray(vals, dtype=float), t.shape)
    return float(np.mean(vals) * TWO_PI)


def circle_integral_23(field_xi, c: CircleSpec) -> float:
    """Integral around the same-radius circle in the (xi2, xi3) plane."""
    t = _circle_nodes(c.n_nodes)
    x1, x2, x3, x4 = c.center
    vals = field_xi(XiPoint(x1, x2 + c.radius * np.cos(t), x3 + c.radius * np.sin(t), x4))
    vals = np.broadcast_to(np.asarray(vals, dtype=float), t.shape)
    return float(np.mean(vals) * TWO_PI)


def theorem1_check(field_xi, center: XiPoint, radius: float, n_nodes: int = 512) -> TheoremReport:
    """Compare the two single-circle integrals at a common center/radius.

    For fields that satisfy the wave-operator identity the two sides
    agree; the report's rel_diff is then pure quadrature error. At
    radius 0 both sides evaluate the identical node set, so the
    difference is exactly zero for any field.
    """
    c = CircleSpec(center=center, radius=radius, n_nodes=n_nodes)
    lhs = circle_integral_14(field_xi, c)
    rhs = circle_integral_23(field_xi, c)
    return _report(lhs, rhs, {"center": tuple(center), "radius": c.radius, "n_nodes": c.n_nodes})


def double_circle_integral(field_xi, center: XiPoint, r_14: float, r_23: float, n_nodes: int = 256) -> float:
    """Tensor-product circle integral: radius r_14 in (xi1, xi4), r_23 in (xi2, xi3).

    Periodic trapezoid on an n_nodes x n_nodes angle grid.
    """
    if not (r_14 >= 0.0 and r_23 >= 0.0):
        raise ValueError("radii must be >= 0")
    n = int(n_nodes)
    if n < 8:
        raise ValueError("n_nodes must be >= 8")
    t1 = _circle_nodes(n)[:, None]
    t2 = _circle_nodes(n)[None, :]
    x1, x2, x3, x4 = center
    vals = field_xi(
        XiPoint(
            x1 + r_14 * np.cos(t1),
            x2 + r_23 * np.cos(t2),
            x3 + r_23 * np.sin(t2),
            x4 + r_14 * np.sin(t1),
        )
    )
    vals = np.broadcast_to(np.asarray(vals, dtype=float), (n, n))
    return float(np.mean(vals) * TWO_PI * TWO_PI)


def theorem2_check(field_xi, center: XiPoint, r1: float, r2: float, n_nodes: int = 256) -> TheoremReport:
    """Compare the double-circle integral against its radius-swapped twin.

    lhs uses (r1 in the (xi1, xi4) plane, r2 in the (xi2, xi3) plane);
    rhs swaps the radii. Equal radii run the identical computation and
    report exactly zero.
    """
    lhs = double_circle_integral(field_xi, center, r1, r2, n_nodes)
    rhs = double_circle_integral(field_xi, center, r2, r1, n_nodes)
    return _report(lhs, rhs, {"center": tuple(center), "r1": float(r1), "r2": float(r2), "n_nodes": int(n_nodes)})


def luminance(values: np.ndarray) -> np.ndarray:
    """Reduce an array whose last axis is (R, G, B) to BT.709 luma."""
    return np.asarray(values, dtype=float) @ LUMA_WEIGHTS


@dataclass(frozen=True)
class PairRow:
    """Pixel-sum comparison of the (r1, r2) and (r2, r1) microimages."""

    r1: int
    r2: int
    sum_ab: float
    sum_ba: float
    abs_diff: float
    rel_diff: float
    fully_valid: bool


def discrete_microimage_sum(pl, r1: int, r2: int) -> Tuple[float, int, int]:
    """Sum of valid pixel values in the (r1, r2) microimage.

    Returns (sum, valid_count, total_count). 3-channel values are
    reduced to luma before summing.
    """
    values = pl.block_values(r1, r2)
    mask = pl.block_mask(r1, r2)
    if values.ndim == 3:
        values = luminance(values)
    total = int(mask.size)
    valid = int(np.count_nonzero(mask))
    return float(values[mask].sum()), valid, total


def discrete_asgeirsson_report(pl) -> List[PairRow]:
    """Pixel-sum symmetry table over all off-diagonal microimage pairs.

    One row per unordered pair r1 < r2 with both indices within the
    field's range; diagonal pairs are omitted (identically equal by
    construction). fully_valid is true when neither microimage has
    out-of-bounds pixels; rows with invalid pixels are still reported
    so callers can choose to include or filter them.
    """
    rmax = min(pl.r1max, pl.r2max)
    rows = []
    for r1 in range(rmax + 1):
        for r2 in range(r1 + 1, rmax + 1):
            sum_ab, valid_ab, total_ab = discrete_microimage_sum(pl, r1, r2)
            sum_ba, valid_ba, total_ba = discrete_microimage_sum(pl, r2, r1)
            abs_diff = abs(sum_ab - sum_ba)
            rel_diff = abs_diff / max(abs(sum_ab), abs(sum_ba), REL_FLOOR)
            rows.append(
                PairRow(
                    r1=r1,
                    r2=r2,
                    sum_ab=sum_ab,
                    sum_ba=sum_ba,
                    abs_diff=abs_diff,
                    rel_diff=rel_diff,
                    fully_valid=(valid_ab == total_ab and valid_ba == total_ba),
                )
            )
    return rows
