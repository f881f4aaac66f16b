"""Frame manifest loading and image decoding.

The manifest is UTF-8 text, one frame per line:

    frame_id <TAB> timestamp_ms <TAB> image_path [<TAB> label]

Lines starting with `#` are comments. Frame ids must be strictly
increasing and timestamps non-decreasing in file order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, DimensionError, OrderError, ParseError

MIN_WIDTH = 64
MIN_HEIGHT = 48


@dataclass(frozen=True)
class FrameManifestEntry:
    frame_id: int
    timestamp_ms: int
    image_path: Path
    external_label: str | None = None


@dataclass(frozen=True)
class Raster:
    """Decoded frame: row-major RGB, 8 bits per channel.

    `pixels` is an (height, width, 3) uint8 array; immutable after
    construction so rasters can be shared across threads.
    """

    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        px = self.pixels
        if px.ndim != 3 or px.shape[2] != 3 or px.dtype != np.uint8:
            raise ValueError("pixels must be an (H, W, 3) uint8 array")
        h, w = px.shape[:2]
        if w < MIN_WIDTH or h < MIN_HEIGHT:
            raise DimensionError(
                f"frame {w}x{h} below minimum {MIN_WIDTH}x{MIN_HEIGHT}")
        px.setflags(write=False)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def load_manifest(path: str | Path) -> list[FrameManifestEntry]:
    """Parse the manifest file, enforcing ordering invariants."""
    entries: list[FrameManifestEntry] = []
    base = Path(path).parent
    text = Path(path).read_text(encoding="utf-8")
    prev_id = None
    prev_ts = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.rstrip("\n").split("\t")
        if len(parts) not in (3, 4):
            raise ParseError(f"expected 3 or 4 tab-separated fields, got "
                             f"{len(parts)}", line_no)
        try:
            frame_id = int(parts[0])
            timestamp_ms = int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer id or timestamp in {raw!r}",
                             line_no) from None
        if frame_id < 0 or timestamp_ms < 0:
            raise ParseError("frame_id and timestamp_ms must be non-negative",
                             line_no)
        image_path = Path(parts[2])
        if not image_path.is_absolute():
            image_path = base / image_path
        label = parts[3].strip() if len(parts) == 4 and parts[3].strip() else None
        if prev_id is not None and frame_id <= prev_id:
            raise OrderError(f"frame_id {frame_id} not greater than previous "
                             f"{prev_id}", line_no)
        if prev_ts is not None and timestamp_ms < prev_ts:
            raise OrderError(f"timestamp {timestamp_ms} earlier than previous "
                             f"{prev_ts}", line_no)
        prev_id, prev_ts = frame_id, timestamp_ms
        entries.append(FrameManifestEntry(frame_id, timestamp_ms, image_path,
                                          label))
    return entries


def load_frame(entry: FrameManifestEntry) -> Raster:
    """Decode one frame image into a Raster.

    Grayscale inputs are expanded to equal RGB channels. Frames below
    64x48 are rejected as degenerate.
    """
    try:
        with Image.open(entry.image_path) as img:
            img = img.convert("RGB")
            pixels = np.asarray(img, dtype=np.uint8)
    except FileNotFoundError as exc:
        raise DecodeError(f"image file not found: {entry.image_path}") from exc
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"cannot decode {entry.image_path}: {exc}") from exc
    return Raster(pixels)
