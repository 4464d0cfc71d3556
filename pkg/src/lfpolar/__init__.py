"""Lightfield polar toolkit.

Coordinate systems for two-plane lightfields, exact Gaussian-scene
radiance synthesis, finite-difference residuals of the lightfield
identities, circle-integral symmetry checks, polar discretization with
shift-corrected resampling, and bit-exact file interchange.
"""

from .asgeirsson import (
    CircleSpec,
    PairRow,
    TheoremReport,
    circle_integral_14,
    circle_integral_23,
    discrete_asgeirsson_report,
    discrete_microimage_sum,
    double_circle_integral,
    luminance,
    theorem1_check,
    theorem2_check,
)
from .coords import (
    PolarPoint,
    RayTP,
    XiPoint,
    arctan2_normalized,
    polar_from_ray,
    ray_from_polar,
    ray_from_xi,
    xi_from_ray,
)
from .io import (
    ArchiveFormatError,
    MalformedHeader,
    ParseError,
    RasterFormatError,
    TruncatedPayload,
    UnsupportedImageFormat,
    fixture_scene,
    format_cell,
    parse_scene_text,
    read_geometry,
    read_polar_archive,
    read_raster,
    read_scene,
    write_csv_report,
    write_geometry,
    write_polar_archive,
    write_raster,
    write_scene,
)
from .resample import (
    OUT_OF_BOUNDS,
    CoordinateMap,
    DiscreteLightfield,
    LightfieldGeometry,
    PolarLightfield,
    angular_bins,
    bin_center_angle,
    block_color,
    layout_size,
    render_colormap,
    render_coordinate_map_original,
    render_polar_layout,
    sample_ray_nn,
    sample_rays_nn,
    to_polar_grid,
)
from .residuals import (
    ResidualReport,
    StencilSpec,
    john_residual,
    residual_sweep,
    ultrahyperbolic_residual,
)
from .synth import (
    GaussianBlob,
    RadianceField,
    Scene,
    as_xi_field,
    radiance_closed_form,
    radiance_field,
    radiance_quadrature,
    sample_plenoptic_raster,
)

__version__ = "0.1.0"

__all__ = [
    "ArchiveFormatError",
    "CircleSpec",
    "CoordinateMap",
    "DiscreteLightfield",
    "GaussianBlob",
    "LightfieldGeometry",
    "MalformedHeader",
    "OUT_OF_BOUNDS",
    "PairRow",
    "ParseError",
    "PolarLightfield",
    "PolarPoint",
    "RadianceField",
    "RasterFormatError",
    "RayTP",
    "ResidualReport",
    "Scene",
    "StencilSpec",
    "TheoremReport",
    "TruncatedPayload",
    "UnsupportedImageFormat",
    "XiPoint",
    "angular_bins",
    "arctan2_normalized",
    "as_xi_field",
    "bin_center_angle",
    "block_color",
    "circle_integral_14",
    "circle_integral_23",
    "discrete_asgeirsson_report",
    "discrete_microimage_sum",
    "double_circle_integral",
    "fixture_scene",
    "format_cell",
    "john_residual",
    "layout_size",
    "luminance",
    "parse_scene_text",
    "polar_from_ray",
    "radiance_closed_form",
    "radiance_field",
    "radiance_quadrature",
    "ray_from_polar",
    "ray_from_xi",
    "read_geometry",
    "read_polar_archive",
    "read_raster",
    "read_scene",
    "render_colormap",
    "render_coordinate_map_original",
    "render_polar_layout",
    "residual_sweep",
    "sample_plenoptic_raster",
    "sample_ray_nn",
    "sample_rays_nn",
    "theorem1_check",
    "theorem2_check",
    "to_polar_grid",
    "ultrahyperbolic_residual",
    "write_csv_report",
    "write_geometry",
    "write_polar_archive",
    "write_raster",
    "write_scene",
    "xi_from_ray",
]
