"""Bit-exact file interchange: rasters, text metadata, archives, reports.

Formats owned by this module:

  rasters        binary PGM (P5, single channel) and PPM (P6, color),
                 maxval 255 or 65535 (two-byte samples big-endian per
                 the PNM convention); values cross the API boundary as
                 reals in [0, 1]
  scene text     one Gaussian blob per line, "a b c sigma amplitude",
                 '#' starts a comment
  geometry text  "key value" lines, one per LightfieldGeometry field
  polar archive  little-endian binary dump of a PolarLightfield:
                 magic, (r1max, r2max, channels) header, then per block
                 in lexicographic order the float32 values and uint8
                 mask
  CSV reports    comma-separated with a header row, optional leading
                 '# key=value' configuration echo, LF line endings

Every writer goes through a write-temp-then-rename so a failed run
never leaves a half-written file, and every reader validates before
returning, so no partially-populated structure escapes on error.
"""

from __future__ import annotations

import struct
from typing import Dict, List, Optional, Sequence

import numpy as np

from ._util import atomic_write_bytes, atomic_write_text, round_half_away
from .resample import LightfieldGeometry, PolarLightfield, angular_bins
from .synth import GaussianBlob, Scene


class RasterFormatError(ValueError):
    """Base class for unreadable raster files."""


class UnsupportedImageFormat(RasterFormatError):
    """The file is not binary PGM/PPM (magic other than P5/P6)."""


class MalformedHeader(RasterFormatError):
    """The PNM header cannot be parsed or declares unsupported values."""


class TruncatedPayload(RasterFormatError):
    """The pixel payload is shorter than the header promises."""


class ParseError(ValueError):
    """A text input failed to parse; carries the 1-based line number.

    line 0 marks whole-file problems (missing keys, empty scene).
    """

    def __init__(self, message: str, line: int = 0):
        self.line = int(line)
        if self.line:
            message = f"line {self.line}: {message}"
        super().__init__(message)


class ArchiveFormatError(ValueError):
    """A polar archive is malformed or truncated."""


# ---------------------------------------------------------------------------
# PNM rasters

_WHITESPACE = b" \t\r\n\x0b\x0c"


def _next_header_token(buf: bytes, pos: int):
    while pos < len(buf):
        ch = buf[pos : pos + 1]
        if ch in _WHITESPACE:
            pos += 1
        elif ch == b"#":
            nl = buf.find(b"\n", pos)
            if nl < 0:
                raise MalformedHeader("unterminated comment in header")
            pos = nl + 1
        else:
            break
    start = pos
    while pos < len(buf) and buf[pos : pos + 1] not in _WHITESPACE and buf[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise MalformedHeader("unexpected end of header")
    return buf[start:pos], pos


def _header_int(buf: bytes, pos: int, what: str):
    token, pos = _next_header_token(buf, pos)
    try:
        value = int(token)
    except ValueError:
        raise MalformedHeader(f"{what} is not an integer: {token!r}") from None
    return value, pos


def read_raster(path) -> np.ndarray:
    """Read a binary PGM/PPM file as floats in [0, 1].

    Returns (height, width) for P5 and (height, width, 3) for P6.
    Raises UnsupportedImageFormat for other magics, MalformedHeader for
    bad header fields, TruncatedPayload when pixel data is missing.
    """
    with open(path, "rb") as f:
        buf = f.read()
    if len(buf) < 2:
        raise UnsupportedImageFormat("file too short for a PNM magic")
    magic = buf[:2]
    if magic not in (b"P5", b"P6"):
        raise UnsupportedImageFormat(f"unsupported magic {magic!r} (need binary P5 or P6)")
    channels = 1 if magic == b"P5" else 3
    pos = 2
    width, pos = _header_int(buf, pos, "width")
    height, pos = _header_int(buf, pos, "height")
    maxval, pos = _header_int(buf, pos, "maxval")
    if width < 1 or height < 1:
        raise MalformedHeader(f"non-positive dimensions {width}x{height}")
    if maxval not in (255, 65535):
        raise MalformedHeader(f"unsupported maxval {maxval} (need 255 or 65535)")
    if pos >= len(buf) or buf[pos : pos + 1] not in _WHITESPACE:
        raise MalformedHeader("missing whitespace after maxval")
    pos += 1
    itemsize = 1 if maxval == 255 else 2
    expected = width * height * channels * itemsize
    payload = buf[pos:]
    if len(payload) < expected:
        raise TruncatedPayload(f"payload holds {len(payload)} bytes, header promises {expected}")
    if len(payload) > expected:
        raise MalformedHeader(f"{len(payload) - expected} trailing bytes after payload")
    dtype = np.dtype(">u2") if itemsize == 2 else np.dtype("u1")
    data = np.frombuffer(payload, dtype=dtype).astype(np.float64)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return (data / maxval).reshape(shape)


def write_raster(image: np.ndarray, path, maxval: Optional[int] = None) -> None:
    """Write an array as binary PGM (2D) or PPM (2D + 3 channels).

    Integer uint8/uint16 arrays are stored as-is (maxval 255/65535).
    Float arrays are clipped to [0, 1] and quantized to maxval levels
    (default 255), rounding halves away from zero. Two-byte samples are
    written big-endian. The write is atomic.
    """
    image = np.asarray(image)
    if image.ndim == 3 and image.shape[2] != 3:
        raise ValueError("color images must have exactly 3 channels")
    if image.ndim not in (2, 3):
        raise ValueError("image must be 2D or 2D+channels")
    if image.dtype == np.uint8:
        if maxval not in (None, 255):
            raise ValueError("uint8 images imply maxval 255")
        maxval = 255
        levels = image
    elif image.dtype == np.uint16:
        if maxval not in (None, 65535):
            raise ValueError("uint16 images imply maxval 65535")
        maxval = 65535
        levels = image
    else:
        maxval = 255 if maxval is None else int(maxval)
        if maxval not in (255, 65535):
            raise ValueError("maxval must be 255 or 65535")
        scaled = round_half_away(np.clip(image.astype(np.float64), 0.0, 1.0) * maxval)
        levels = scaled.astype(np.uint8 if maxval == 255 else np.uint16)
    magic = b"P5" if image.ndim == 2 else b"P6"
    height, width = image.shape[:2]
    header = magic + b"\n%d %d\n%d\n" % (width, height, maxval)
    if maxval == 255:
        payload = levels.astype("u1").tobytes(order="C")
    else:
        payload = levels.astype(">u2").tobytes(order="C")
    atomic_write_bytes(path, header + payload)


# ---------------------------------------------------------------------------
# scene and geometry text


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def parse_scene_text(text: str) -> Scene:
    """Parse scene text: one "a b c sigma amplitude" blob per line."""
    blobs = []
    for lineno, body in _content_lines(text):
        parts = body.split()
        if len(parts) != 5:
            raise ParseError(f"expected 5 fields 'a b c sigma amplitude', got {len(parts)}", lineno)
        try:
            a, b, c, sigma, amplitude = (float(p) for p in parts)
        except ValueError:
            raise ParseError(f"non-numeric field in {body!r}", lineno) from None
        try:
            blobs.append(GaussianBlob(center=(a, b, c), sigma=sigma, amplitude=amplitude))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if not blobs:
        raise ParseError("scene file defines no blobs")
    return Scene(blobs=tuple(blobs))


def read_scene(path) -> Scene:
    with open(path, "r", encoding="utf-8") as f:
        return parse_scene_text(f.read())


def write_scene(scene: Scene, path) -> None:
    """Write a scene as text; read_scene(write_scene(s)) == s exactly."""
    lines = ["# one Gaussian blob per line: a b c sigma amplitude"]
    for blob in scene.blobs:
        a, b, c = blob.center
        lines.append(f"{a!r} {b!r} {c!r} {blob.sigma!r} {blob.amplitude!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def fixture_scene() -> Scene:
    """The three-blob scene that ships with the package.

    Blobs at mixed depths with widths chosen so derivative and
    circle-integral checks converge cleanly at the default step sizes.
    """
    from importlib.resources import files

    text = files("lfpolar").joinpath("data/fixture_scene.txt").read_text(encoding="utf-8")
    return parse_scene_text(text)


_GEOMETRY_KEYS = (
    "cols",
    "rows",
    "pitch_x",
    "pitch_y",
    "ref_micro_u",
    "ref_micro_v",
    "ref_pixel_x",
    "ref_pixel_y",
    "shift",
)


def read_geometry(path) -> LightfieldGeometry:
    """Read "key value" geometry text; every key required exactly once."""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    seen: Dict[str, float] = {}
    for lineno, body in _content_lines(text):
        parts = body.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'key value', got {body!r}", lineno)
        key, literal = parts
        if key not in _GEOMETRY_KEYS:
            raise ParseError(f"unknown geometry key {key!r}", lineno)
        if key in seen:
            raise ParseError(f"duplicate geometry key {key!r}", lineno)
        try:
            seen[key] = float(literal) if key == "shift" else int(literal)
        except ValueError:
            raise ParseError(f"bad value for {key}: {literal!r}", lineno) from None
    missing = [k for k in _GEOMETRY_KEYS if k not in seen]
    if missing:
        raise ParseError("missing geometry keys: " + ", ".join(missing))
    try:
        return LightfieldGeometry(
            microimage_cols=seen["cols"],
            microimage_rows=seen["rows"],
            pitch_x=seen["pitch_x"],
            pitch_y=seen["pitch_y"],
            ref_micro=(seen["ref_micro_u"], seen["ref_micro_v"]),
            ref_pixel=(seen["ref_pixel_x"], seen["ref_pixel_y"]),
            shift=seen["shift"],
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_geometry(geom: LightfieldGeometry, path) -> None:
    lines = [
        f"cols {geom.microimage_cols}",
        f"rows {geom.microimage_rows}",
        f"pitch_x {geom.pitch_x}",
        f"pitch_y {geom.pitch_y}",
        f"ref_micro_u {geom.ref_micro[0]}",
        f"ref_micro_v {geom.ref_micro[1]}",
        f"ref_pixel_x {geom.ref_pixel[0]}",
        f"ref_pixel_y {geom.ref_pixel[1]}",
        f"shift {geom.shift!r}",
    ]
    atomic_write_text(path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# polar archive

_ARCHIVE_MAGIC = b"PLFA1\n"
_ARCHIVE_HEADER = struct.Struct("<III")


def write_polar_archive(pl: PolarLightfield, path) -> None:
    """Serialize a PolarLightfield: header then per-block values + mask.

    Values are stored as little-endian float32 in C order, masks as one
    byte per bin (0 or 1), blocks in lexicographic (r1, r2) order.
    """
    chunks = [_ARCHIVE_MAGIC, _ARCHIVE_HEADER.pack(pl.r1max, pl.r2max, pl.channels)]
    for r1, r2 in pl.blocks():
        chunks.append(pl.block_values(r1, r2).astype("<f4").tobytes(order="C"))
        chunks.append(pl.block_mask(r1, r2).astype("u1").tobytes(order="C"))
    atomic_write_bytes(path, b"".join(chunks))


def read_polar_archive(path) -> PolarLightfield:
    """Read back a polar archive; exact inverse of write_polar_archive.

    Stored values are float32, so a field that was built in float64
    comes back quantized; the file itself round-trips bit-exactly.
    The radial scale is not recorded; the result reports rho = 1.
    """
    with open(path, "rb") as f:
        buf = f.read()
    if not buf.startswith(_ARCHIVE_MAGIC):
        raise ArchiveFormatError("not a polar archive (bad magic)")
    pos = len(_ARCHIVE_MAGIC)
    if len(buf) < pos + _ARCHIVE_HEADER.size:
        raise ArchiveFormatError("truncated header")
    r1max, r2max, channels = _ARCHIVE_HEADER.unpack_from(buf, pos)
    pos += _ARCHIVE_HEADER.size
    if channels not in (1, 3):
        raise ArchiveFormatError(f"invalid channel count {channels}")
    if r1max > 4096 or r2max > 4096:
        raise ArchiveFormatError("implausible block range in header")
    pl = PolarLightfield(r1max, r2max, channels=channels)
    for r1, r2 in pl.blocks():
        n1 = angular_bins(r1)
        n2 = angular_bins(r2)
        count = n1 * n2 * channels
        nbytes = 4 * count
        if len(buf) < pos + nbytes + n1 * n2:
            raise ArchiveFormatError(f"truncated at block ({r1}, {r2})")
        values = np.frombuffer(buf, dtype="<f4", count=count, offset=pos).astype(np.float64)
        pos += nbytes
        mask_bytes = np.frombuffer(buf, dtype="u1", count=n1 * n2, offset=pos)
        pos += n1 * n2
        if mask_bytes.max(initial=0) > 1:
            raise ArchiveFormatError(f"mask byte out of range in block ({r1}, {r2})")
        vshape = (n1, n2, 3) if channels == 3 else (n1, n2)
        pl.set_block(r1, r2, values.reshape(vshape), mask_bytes.reshape(n1, n2).astype(bool))
    if pos != len(buf):
        raise ArchiveFormatError(f"{len(buf) - pos} trailing bytes after last block")
    return pl


# ---------------------------------------------------------------------------
# CSV reports


def format_cell(value) -> str:
    """Canonical CSV cell text: floats via repr, booleans true/false."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def write_csv_report(path, columns: Sequence[str], rows: List[Sequence], config: Optional[Dict] = None) -> None:
    """Write a CSV report with an optional '# key=value' config echo.

    Cells are formatted with format_cell, so identical inputs always
    produce identical bytes. LF line endings.
    """
    lines = []
    if config:
        for key in sorted(config):
            lines.append(f"# {key}={format_cell(config[key])}")
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row width {len(row)} does not match {len(columns)} columns")
        lines.append(",".join(format_cell(cell) for cell in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
