"""Polar discretization of lightfields and shift-corrected resampling.

The double-polar coordinates of the coords module are discretized the
following way: radii are quantized to integer rings R = 0, 1, 2, ...,
and the angle of a ring at radius R is evenly split into 7R+1 bins over
[0, 2*pi). A bin is identified by the angle of its LEFT edge,
2*pi*k/(7R+1), so bin 0 of every ring contains the angle 0 exactly.
The pair of quantized radii (R1, R2) addresses a "microimage": the
(7R1+1) x (7R2+1) grid of angle bins, the discrete unit of the polar
representation.

Sampling a captured (or synthesized) plenoptic raster at a continuous
ray uses nearest-neighbor lookup with a shift correction: the direction
(u, v) is rounded to the nearest recorded microimage and the rounding
residual, scaled by the per-depth shift value, displaces the pixel
coordinate inside that microimage. This substitutes a pixel from a
neighboring view for rays whose exact direction was not captured.

Rendering helpers lay the polar blocks out as images (value layout,
block colormap, and the reverse map showing which original pixel each
polar bin reads).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Tuple

import numpy as np

from ._util import round_half_away
from .coords import RayTP, TWO_PI


class _OutOfBounds:
    """Singleton sentinel for samples that leave the raster; falsy."""

    __slots__ = ()

    def __repr__(self):
        return "OUT_OF_BOUNDS"

    def __bool__(self):
        return False


OUT_OF_BOUNDS = _OutOfBounds()

GRAY_LEVEL = 128  # rendered level for undefined (out-of-bounds) pixels


def angular_bins(r: int) -> int:
    """Number of angle bins on the ring of integer radius r: 7r+1."""
    r = int(r)
    if r < 0:
        raise ValueError("ring radius must be >= 0")
    return 7 * r + 1


def bin_center_angle(r: int, k: int) -> float:
    """Angle identifying bin k of ring r: the bin's left edge 2*pi*k/(7r+1)."""
    n = angular_bins(r)
    k = int(k)
    if not 0 <= k < n:
        raise IndexError(f"bin index {k} out of range for ring {r} with {n} bins")
    return TWO_PI * k / n


@dataclass(frozen=True)
class LightfieldGeometry:
    """Layout and reference frame of a plenoptic raster.

    The raster is a microimage_rows x microimage_cols grid of
    microimages, each pitch_y x pitch_x pixels. ref_micro = (u0, v0) and
    ref_pixel = (x0, y0) name the pixel that represents the ray origin
    (0, 0, 0, 0): column u0, row v0 of the microimage grid, column x0,
    row y0 within that microimage. shift is the per-depth disparity in
    pixels applied to position coordinates when sampling between
    recorded directions.
    """

    microimage_cols: int
    microimage_rows: int
    pitch_x: int
    pitch_y: int
    ref_micro: Tuple[int, int]
    ref_pixel: Tuple[int, int]
    shift: float = 0.0

    def __post_init__(self):
        for name in ("microimage_cols", "microimage_rows", "pitch_x", "pitch_y"):
            val = getattr(self, name)
            if int(val) != val or int(val) < 1:
                raise ValueError(f"{name} must be an integer >= 1")
            object.__setattr__(self, name, int(val))
        u0, v0 = self.ref_micro
        x0, y0 = self.ref_pixel
        if not (0 <= int(u0) < self.microimage_cols and 0 <= int(v0) < self.microimage_rows):
            raise ValueError("ref_micro outside the microimage grid")
        if not (0 <= int(x0) < self.pitch_x and 0 <= int(y0) < self.pitch_y):
            raise ValueError("ref_pixel outside the microimage pitch")
        object.__setattr__(self, "ref_micro", (int(u0), int(v0)))
        object.__setattr__(self, "ref_pixel", (int(x0), int(y0)))
        if not (math.isfinite(self.shift) and self.shift >= 0.0):
            raise ValueError("shift must be finite and >= 0")
        object.__setattr__(self, "shift", float(self.shift))

    @property
    def raster_shape(self) -> Tuple[int, int]:
        return (self.microimage_rows * self.pitch_y, self.microimage_cols * self.pitch_x)


@dataclass(frozen=True)
class DiscreteLightfield:
    """A plenoptic raster plus the geometry that indexes it.

    raster is (height, width) for single-channel data or
    (height, width, 3) for color, values as reals.
    """

    geometry: LightfieldGeometry
    raster: np.ndarray

    def __post_init__(self):
        raster = np.asarray(self.raster, dtype=float)
        if raster.ndim == 3 and raster.shape[2] != 3:
            raise ValueError("color rasters must have exactly 3 channels")
        if raster.ndim not in (2, 3):
            raise ValueError("raster must be 2D or 2D+channels")
        if raster.shape[:2] != self.geometry.raster_shape:
            raise ValueError(
                f"raster shape {raster.shape[:2]} does not match geometry "
                f"{self.geometry.raster_shape}"
            )
        object.__setattr__(self, "raster", raster)

    @property
    def channels(self) -> int:
        return 1 if self.raster.ndim == 2 else 3


class PolarLightfield:
    """Values and validity on the (R1, R2, theta1, theta2) bin grid.

    Block (r1, r2) holds a (7*r1+1) x (7*r2+1) value array (with a
    trailing channel axis for color) and a same-shape boolean mask;
    mask False marks bins whose value is undefined (their stored value
    is 0 and must not be read). rho records the radial scale (pixels
    per unit ring) used to build the field; angles follow the left-edge
    bin convention of bin_center_angle.
    """

    angle_convention = "left-edge"

    def __init__(self, r1max: int, r2max: int, channels: int = 1, rho: float = 1.0):
        r1max = int(r1max)
        r2max = int(r2max)
        if r1max < 0 or r2max < 0:
            raise ValueError("r1max and r2max must be >= 0")
        if channels not in (1, 3):
            raise ValueError("channels must be 1 or 3")
        if not (rho > 0.0 and math.isfinite(rho)):
            raise ValueError("rho must be positive and finite")
        self.r1max = r1max
        self.r2max = r2max
        self.channels = int(channels)
        self.rho = float(rho)
        self._values = {}
        self._mask = {}
        for r1, r2 in self.blocks():
            shape = (angular_bins(r1), angular_bins(r2))
            vshape = shape + (3,) if channels == 3 else shape
            self._values[(r1, r2)] = np.zeros(vshape, dtype=float)
            self._mask[(r1, r2)] = np.zeros(shape, dtype=bool)

    def blocks(self) -> Iterator[Tuple[int, int]]:
        """All (r1, r2) block keys in lexicographic order."""
        for r1 in range(self.r1max + 1):
            for r2 in range(self.r2max + 1):
                yield (r1, r2)

    def _check_key(self, r1: int, r2: int) -> Tuple[int, int]:
        key = (int(r1), int(r2))
        if key not in self._values:
            raise IndexError(f"block {key} outside (r1max={self.r1max}, r2max={self.r2max})")
        return key

    def block_values(self, r1: int, r2: int) -> np.ndarray:
        return self._values[self._check_key(r1, r2)]

    def block_mask(self, r1: int, r2: int) -> np.ndarray:
        return self._mask[self._check_key(r1, r2)]

    def set_block(self, r1: int, r2: int, values: np.ndarray, mask: np.ndarray) -> None:
        """Install a block's values and mask, checking the shape law."""
        key = self._check_key(r1, r2)
        values = np.asarray(values, dtype=float)
        mask = np.asarray(mask, dtype=bool)
        if values.shape != self._values[key].shape:
            raise ValueError(f"block {key} values must have shape {self._values[key].shape}")
        if mask.shape != self._mask[key].shape:
            raise ValueError(f"block {key} mask must have shape {self._mask[key].shape}")
        self._values[key] = values
        self._mask[key] = mask


def _nn_indices(geom: LightfieldGeometry, x, y, u, v, shift_sign: int):
    """Raster (row, col) indices of nearest-neighbor samples, plus bounds mask.

    Implements the shift-corrected lookup: directions round to the
    nearest microimage, and the rounding residual times the shift moves
    the pixel coordinate. Arrays in, arrays out; (row, col) are only
    meaningful where ok is True (they are clipped to 0 elsewhere so the
    result can index the raster safely).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    ui = round_half_away(u)
    vi = round_half_away(v)
    du = u - ui
    dv = v - vi
    s = shift_sign * geom.shift
    mu = geom.ref_micro[0] + ui
    mv = geom.ref_micro[1] + vi
    px = geom.ref_pixel[0] + round_half_away(x + s * du)
    py = geom.ref_pixel[1] + round_half_away(y + s * dv)
    ok = (
        (mu >= 0)
        & (mu < geom.microimage_cols)
        & (mv >= 0)
        & (mv < geom.microimage_rows)
        & (px >= 0)
        & (px < geom.pitch_x)
        & (py >= 0)
        & (py < geom.pitch_y)
    )
    ok = np.asarray(ok)
    row = np.where(ok, mv * geom.pitch_y + py, 0)
    col = np.where(ok, mu * geom.pitch_x + px, 0)
    return row, col, ok


def sample_rays_nn(lf: DiscreteLightfield, rays: RayTP, shift_sign: int = 1):
    """Vectorized nearest-neighbor sampling of a raster.

    Returns (values, ok): values has the broadcast shape of the ray
    components (plus a channel axis for color rasters) with 0 where the
    sample left the raster, and ok is the in-bounds mask.
    """
    x, y, u, v = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in rays))
    row, col, ok = _nn_indices(lf.geometry, x, y, u, v, shift_sign)
    values = lf.raster[row, col]
    if lf.channels == 3:
        values = np.where(ok[..., None], values, 0.0)
    else:
        values = np.where(ok, values, 0.0)
    return values, ok


def sample_ray_nn(lf: DiscreteLightfield, p: RayTP, shift_sign: int = 1):
    """Nearest-neighbor sample of one ray; OUT_OF_BOUNDS when it misses.

    Scalar counterpart of sample_rays_nn: returns the stored pixel
    value (a float, or a length-3 array for color rasters).
    """
    values, ok = sample_rays_nn(lf, RayTP(*(float(c) for c in p)), shift_sign)
    if not bool(ok):
        return OUT_OF_BOUNDS
    if lf.channels == 3:
        return np.asarray(values, dtype=float)
    return float(values)


def _sub_offsets(n_bins: int, oversample: int, rng) -> np.ndarray:
    """Per-bin angular sub-offsets in units of one bin width, shape (n_bins, oversample).

    Deterministic mode places sub-sample j at offset j/oversample from
    the bin's left edge (so oversample=1 evaluates the bin angle
    itself); with an rng, each sub-sample jitters uniformly inside its
    stratum.
    """
    base = np.arange(oversample, dtype=float)
    if rng is None:
        return np.broadcast_to(base / oversample, (n_bins, oversample)).copy()
    return (base + rng.random((n_bins, oversample))) / oversample


def _block_rays(r1: int, r2: int, rho: float, off1: np.ndarray, off2: np.ndarray) -> RayTP:
    """Continuous rays of every sub-sample of block (r1, r2).

    off1/off2 are _sub_offsets arrays for the two angle axes. Component
    arrays have shape (n1, os, n2, os).
    """
    n1 = angular_bins(r1)
    n2 = angular_bins(r2)
    t1 = (np.arange(n1)[:, None] + off1) * (TWO_PI / n1)
    t2 = (np.arange(n2)[:, None] + off2) * (TWO_PI / n2)
    c1 = rho * r1 * np.cos(t1)
    s1 = rho * r1 * np.sin(t1)
    c2 = rho * r2 * np.cos(t2)
    s2 = rho * r2 * np.sin(t2)
    c1 = c1[:, :, None, None]
    s1 = s1[:, :, None, None]
    c2 = c2[None, None, :, :]
    s2 = s2[None, None, :, :]
    return RayTP(s2 - s1, c1 - c2, c1 + c2, s2 + s1)


def to_polar_grid(
    source,
    r1max: int,
    r2max: int,
    oversample: int = 1,
    *,
    rho: float = 1.0,
    shift_sign: int = 1,
    jitter_rng=None,
    threads: int = 1,
) -> PolarLightfield:
    """Resample a lightfield onto the polar bin grid.

    source is either a DiscreteLightfield (nearest-neighbor sampling
    with shift correction) or a callable radiance field on RayTP
    (analytic evaluation mode: exact values, every bin valid). Each bin
    of block (r1, r2) is converted to the continuous ray of its angle
    pair at radii (rho*r1, rho*r2) and sampled; with oversample > 1 the
    bin value is the mean of oversample^2 stratified sub-samples per
    bin and the bin is valid only if every sub-sample was in bounds.
    jitter_rng randomizes sub-sample positions inside their strata
    (raster sources only; analytic mode keeps the deterministic
    sub-grid so refinement studies are reproducible). threads > 1
    distributes blocks over a thread pool; results are identical to the
    serial run.
    """
    oversample = int(oversample)
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    analytic = callable(source)
    channels = 1 if analytic else source.channels
    pl = PolarLightfield(r1max, r2max, channels=channels, rho=rho)
    keys = list(pl.blocks())

    # Draw all jitter up front, in block order, so the random stream is
    # consumed identically no matter how many threads run the sampling.
    offsets = {}
    for r1, r2 in keys:
        rng = None if analytic else jitter_rng
        offsets[(r1, r2)] = (
            _sub_offsets(angular_bins(r1), oversample, rng),
            _sub_offsets(angular_bins(r2), oversample, rng),
        )

    def build(key):
        r1, r2 = key
        off1, off2 = offsets[key]
        rays = _block_rays(r1, r2, rho, off1, off2)
        if analytic:
            vals = np.asarray(source(rays), dtype=float)
            ok = np.ones(vals.shape, dtype=bool)
        else:
            vals, ok = sample_rays_nn(source, rays, shift_sign)
        # collapse the two sub-sample axes
        value = vals.mean(axis=(1, 3))
        mask = ok.all(axis=(1, 3))
        if channels == 3:
            value = np.where(mask[..., None], value, 0.0)
        else:
            value = np.where(mask, value, 0.0)
        return key, value, mask

    if threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            results = list(pool.map(build, keys))
    else:
        results = [build(key) for key in keys]
    for key, value, mask in results:
        pl.set_block(key[0], key[1], value, mask)
    return pl


def _layout_starts(rmax: int, separators: bool) -> List[int]:
    """Pixel offset of each block along one layout axis."""
    starts = []
    pos = 0
    for r in range(rmax + 1):
        starts.append(pos)
        pos += angular_bins(r)
        if separators:
            pos += 1
    return starts


def layout_size(rmax: int, separators: bool = False) -> int:
    """Total pixels along one axis of the block layout."""
    size = sum(angular_bins(r) for r in range(rmax + 1))
    if separators:
        size += rmax  # one line between consecutive blocks, none outside
    return size


def _quantize_unit(values: np.ndarray) -> np.ndarray:
    """Map [0,1] reals to uint8 levels, clipping and rounding half away."""
    levels = round_half_away(np.clip(values, 0.0, 1.0) * 255.0)
    return levels.astype(np.uint8)


def render_polar_layout(pl: PolarLightfield, separators: bool = False) -> np.ndarray:
    """Render the block grid as an image: theta1 as rows within a block,
    R1 increasing downward, theta2 as columns, R2 rightward.

    Valid bins show their value quantized from [0,1] to 8-bit; invalid
    bins render gray; optional separators draw 1-pixel black lines
    between blocks.
    """
    h = layout_size(pl.r1max, separators)
    w = layout_size(pl.r2max, separators)
    shape = (h, w, 3) if pl.channels == 3 else (h, w)
    img = np.zeros(shape, dtype=np.uint8)
    rstart = _layout_starts(pl.r1max, separators)
    cstart = _layout_starts(pl.r2max, separators)
    for r1, r2 in pl.blocks():
        values = pl.block_values(r1, r2)
        mask = pl.block_mask(r1, r2)
        tile = _quantize_unit(values)
        if pl.channels == 3:
            tile[~mask] = (GRAY_LEVEL, GRAY_LEVEL, GRAY_LEVEL)
        else:
            tile[~mask] = GRAY_LEVEL
        i0 = rstart[r1]
        j0 = cstart[r2]
        img[i0 : i0 + tile.shape[0], j0 : j0 + tile.shape[1]] = tile
    return img


def render_colormap(pl: PolarLightfield) -> np.ndarray:
    """Color each block by its (R1, R2) index, gray where invalid.

    Block (r1, r2) fills with red = round(255*(r2+1)/(r2max+1)),
    green = round(255*(r1+1)/(r1max+1)), blue = 0; both channel ramps
    get lighter as the radius grows. Invalid bins render
    (128, 128, 128). No separators; the layout matches
    render_polar_layout(separators=False).
    """
    h = layout_size(pl.r1max, False)
    w = layout_size(pl.r2max, False)
    img = np.zeros((h, w, 3), dtype=np.uint8)
    rstart = _layout_starts(pl.r1max, False)
    cstart = _layout_starts(pl.r2max, False)
    for r1, r2 in pl.blocks():
        mask = pl.block_mask(r1, r2)
        color = block_color(r1, r2, pl.r1max, pl.r2max)
        tile = np.empty(mask.shape + (3,), dtype=np.uint8)
        tile[...] = color
        tile[~mask] = (GRAY_LEVEL, GRAY_LEVEL, GRAY_LEVEL)
        i0 = rstart[r1]
        j0 = cstart[r2]
        img[i0 : i0 + tile.shape[0], j0 : j0 + tile.shape[1]] = tile
    return img


def block_color(r1: int, r2: int, r1max: int, r2max: int) -> Tuple[int, int, int]:
    """The (R, G, B) tone identifying block (r1, r2) in the colormap."""
    red = round_half_away(255.0 * (r2 + 1) / (r2max + 1))
    green = round_half_away(255.0 * (r1 + 1) / (r1max + 1))
    return (int(red), int(green), 0)


class CoordinateMap(NamedTuple):
    """Reverse-map image plus the number of pixel write collisions."""

    image: np.ndarray
    collisions: int


def render_coordinate_map_original(
    geom: LightfieldGeometry,
    r1max: int,
    r2max: int,
    oversample: int = 1,
    *,
    rho: float = 1.0,
    shift_sign: int = 1,
) -> CoordinateMap:
    """Paint each raster pixel with the color of the polar bin that reads it.

    Walks every bin (and sub-sample) of every block in lexicographic
    (R1, R2, k1, k2) order, resolves it to a raster pixel with the same
    nearest-neighbor rule as to_polar_grid, and writes the block color;
    the last writer wins on collisions, and the number of overwrites is
    returned alongside the image. Pixels no bin reads stay black.
    """
    height, width = geom.raster_shape
    img = np.zeros((height * width, 3), dtype=np.uint8)
    written = np.zeros(height * width, dtype=bool)
    collisions = 0
    oversample = int(oversample)
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    for r1 in range(int(r1max) + 1):
        for r2 in range(int(r2max) + 1):
            off1 = _sub_offsets(angular_bins(r1), oversample, None)
            off2 = _sub_offsets(angular_bins(r2), oversample, None)
            rays = _block_rays(r1, r2, rho, off1, off2)
            row, col, ok = _nn_indices(geom, *rays, shift_sign)
            flat = (row * width + col)[ok]
            if flat.size == 0:
                continue
            unique = np.unique(flat)
            collisions += int(flat.size - unique.size)
            collisions += int(np.count_nonzero(written[unique]))
            written[unique] = True
            img[flat] = block_color(r1, r2, r1max, r2max)
    return CoordinateMap(image=img.reshape(height, width, 3), collisions=collisions)
