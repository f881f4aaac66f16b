"""Media-type classification via a decision tree of static image filters.

Each key frame is assigned exactly one media type. Externally labeled
"ppt" frames bypass the tree; dark or black-bordered frames are computer
screens; predominantly green frames split into board and podium by where
the green sits; predominantly white frames split into computer and sheet
by horizontal linearity; everything else runs a residual sequence of
tests with illustration as the default.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .config import Config
from .ingest import Raster


class MediaType(enum.Enum):
    BOARD = "board"
    CLASS = "class"
    COMPUTER = "computer"
    ILLUSTRATION = "illustration"
    PODIUM = "podium"
    SHEET = "sheet"
    PPT = "ppt"


# External labels the manifest may carry. "class" is never produced by the
# tree itself; it is only assignable through this channel.
_LABEL_TYPES = {t.value: t for t in MediaType}


@dataclass(frozen=True)
class ColorProfile:
    green_fraction: float
    green_bottom10_fraction: float
    white_fraction: float
    light_gray_fraction: float
    skin_fraction: float
    mean_luminance: float
    border_dark_fraction: float
    border_band_fraction: float


@dataclass(frozen=True)
class StructureProfile:
    horizontal_line_measure: float
    color_repetition_measure: float


def luminance(pixels: np.ndarray) -> np.ndarray:
    """Rec. 601 luma, float in [0, 255]."""
    px = pixels.astype(np.float64)
    return 0.299 * px[..., 0] + 0.587 * px[..., 1] + 0.114 * px[..., 2]


def green_mask(pixels: np.ndarray) -> np.ndarray:
    """Chalkboard-green pixels: HSV hue 70..170 deg, sat >= 0.15, val 0.10..0.90."""
    px = pixels.astype(np.float64) / 255.0
    r, g, b = px[..., 0], px[..., 1], px[..., 2]
    cmax = px.max(axis=-1)
    cmin = px.min(axis=-1)
    delta = cmax - cmin
    hue = np.zeros_like(cmax)
    nz = delta > 0
    rmax = nz & (cmax == r)
    gmax = nz & ~rmax & (cmax == g)
    bmax = nz & ~rmax & ~gmax
    with np.errstate(invalid="ignore", divide="ignore"):
        hue[rmax] = (60.0 * ((g[rmax] - b[rmax]) / delta[rmax])) % 360.0
        hue[gmax] = 60.0 * ((b[gmax] - r[gmax]) / delta[gmax]) + 120.0
        hue[bmax] = 60.0 * ((r[bmax] - g[bmax]) / delta[bmax]) + 240.0
    sat = np.where(cmax > 0, delta / np.maximum(cmax, 1e-12), 0.0)
    return ((hue >= 70.0) & (hue <= 170.0) & (sat >= 0.15)
            & (cmax >= 0.10) & (cmax <= 0.90))


def white_mask(pixels: np.ndarray) -> np.ndarray:
    px = pixels.astype(np.int16)
    spread = px.max(axis=-1) - px.min(axis=-1)
    return (px.min(axis=-1) >= 200) & (spread <= 30)


def light_gray_mask(pixels: np.ndarray) -> np.ndarray:
    px = pixels.astype(np.int16)
    spread = px.max(axis=-1) - px.min(axis=-1)
    return (px.min(axis=-1) >= 140) & (px.max(axis=-1) <= 200) & (spread <= 20)


def skin_mask(pixels: np.ndarray) -> np.ndarray:
    px = pixels.astype(np.int16)
    r, g, b = px[..., 0], px[..., 1], px[..., 2]
    return (r > 95) & (g > 40) & (b > 20) & (r > g) & (g > b) & ((r - b) > 15)


def _border_band(h: int, w: int, frac: float) -> np.ndarray:
    """Boolean mask of the border band of the given fractional width."""
    bh = max(1, round(frac * h))
    bw = max(1, round(frac * w))
    band = np.ones((h, w), dtype=bool)
    band[bh:h - bh, bw:w - bw] = False
    return band


def is_dark_or_black_bordered(r: Raster, cfg: Config | None = None) -> bool:
    """Dark overall, or framed by a near-solid black border band.

    Border bands of every width from 5% to 10% of each dimension are
    tried; any band where at least `classifier.border_coverage` of the
    pixels fall below `classifier.t_black` counts.
    """
    cfg = cfg or Config()
    lum = luminance(r.pixels)
    if lum.mean() < cfg["classifier.t_dark"]:
        return True
    dark = lum < cfg["classifier.t_black"]
    h, w = lum.shape
    for pct in (0.05, 0.06, 0.07, 0.08, 0.09, 0.10):
        band = _border_band(h, w, pct)
        if dark[band].mean() >= cfg["classifier.border_coverage"]:
            return True
    return False


def color_profile(r: Raster, cfg: Config | None = None) -> ColorProfile:
    cfg = cfg or Config()
    px = r.pixels
    h, w = px.shape[:2]
    green = green_mask(px)
    bottom = green[h - max(1, round(0.10 * h)):, :]
    lum = luminance(px)
    band = _border_band(h, w, 0.07)
    dark = lum < cfg["classifier.t_black"]
    return ColorProfile(
        green_fraction=float(green.mean()),
        green_bottom10_fraction=float(bottom.mean()),
        white_fraction=float(white_mask(px).mean()),
        light_gray_fraction=float(light_gray_mask(px).mean()),
        skin_fraction=float(skin_mask(px).mean()),
        mean_luminance=float(lum.mean()),
        border_dark_fraction=float(dark[band].mean()),
        border_band_fraction=0.07,
    )


def _laplacian_edges_padded(pixels: np.ndarray, t_edge: float) -> np.ndarray:
    """4-neighbor Laplacian on luminance with replicate padding, binarized.

    Replicate padding lets lines that reach the frame edge produce
    full-width edge runs, which the line measure relies on.
    """
    lum = luminance(pixels)
    padded = np.pad(lum, 1, mode="edge")
    lap = (4.0 * padded[1:-1, 1:-1] - padded[:-2, 1:-1] - padded[2:, 1:-1]
           - padded[1:-1, :-2] - padded[1:-1, 2:])
    return np.abs(lap) >= t_edge


def horizontal_line_measure(r: Raster, cfg: Config | None = None) -> float:
    """Weighted presence of horizontal edge lines, favoring long runs.

    Maximal horizontal runs of edge pixels with length l >= W/16
    contribute 2**(8*l/W); the total is normalized by the frame area.
    """
    cfg = cfg or Config()
    edges = _laplacian_edges_padded(r.pixels, cfg["filter.t_edge"])
    h, w = edges.shape
    min_len = w / 16.0
    # Run lengths per row from transitions in the padded boolean plane.
    padded = np.zeros((h, w + 2), dtype=bool)
    padded[:, 1:-1] = edges
    diff = np.diff(padded.astype(np.int8), axis=1)
    starts = np.argwhere(diff == 1)
    ends = np.argwhere(diff == -1)
    # argwhere preserves row-major order, so starts/ends pair up per row
    lengths = ends[:, 1] - starts[:, 1]
    lengths = lengths[lengths >= min_len]
    if lengths.size == 0:
        return 0.0
    weights = np.exp2(8.0 * lengths / w)
    return float(weights.sum() / (w * h))


def color_repetition_measure(r: Raster) -> float:
    """Max fraction of adjacent row or column pairs with near-identical
    64-bin color histograms (intersection >= 0.9)."""
    px = r.pixels
    quant = ((px[..., 0] >> 6).astype(np.int32) * 16
             + (px[..., 1] >> 6).astype(np.int32) * 4
             + (px[..., 2] >> 6).astype(np.int32))

    def direction_fraction(lines: np.ndarray) -> float:
        n, length = lines.shape
        if n < 2:
            return 0.0
        hist = np.zeros((n, 64), dtype=np.float64)
        for i in range(n):
            hist[i] = np.bincount(lines[i], minlength=64)
        hist /= length
        inter = np.minimum(hist[:-1], hist[1:]).sum(axis=1)
        return float((inter >= 0.9).mean())

    return max(direction_fraction(quant), direction_fraction(quant.T))


def structure_profile(r: Raster, cfg: Config | None = None) -> StructureProfile:
    cfg = cfg or Config()
    return StructureProfile(
        horizontal_line_measure=horizontal_line_measure(r, cfg),
        color_repetition_measure=color_repetition_measure(r),
    )


def _green_lower_border(r: Raster) -> bool:
    h = r.height
    bottom = green_mask(r.pixels[h - max(1, round(0.10 * h)):, :])
    return bool(bottom.mean() >= 0.5)


def _green_full_border(r: Raster) -> bool:
    px = r.pixels
    h, w = px.shape[:2]
    bh = max(1, round(0.05 * h))
    bw = max(1, round(0.05 * w))
    bands = [px[:bh, :], px[h - bh:, :], px[:, :bw], px[:, w - bw:]]
    return all(green_mask(b).mean() >= 0.8 for b in bands)


def _board_or_podium(r: Raster, profile: ColorProfile, t_green: float,
                     t_gb: float) -> MediaType | None:
    if profile.green_fraction < t_green:
        return None
    if profile.green_bottom10_fraction < t_gb:
        return MediaType.PODIUM
    if _green_lower_border(r) or _green_full_border(r):
        return MediaType.BOARD
    return None


def classify(r: Raster, external_label: str | None = None,
             cfg: Config | None = None,
             trace: list[str] | None = None) -> MediaType:
    """Run the full decision tree; total and deterministic.

    `trace`, when given, records the ids of the tree steps actually
    evaluated ("label", "dark", "green", "white", "residual").
    """
    cfg = cfg or Config()

    def visit(step: str):
        if trace is not None:
            trace.append(step)

    visit("label")
    if external_label is not None and external_label.lower() in _LABEL_TYPES:
        return _LABEL_TYPES[external_label.lower()]

    visit("dark")
    if is_dark_or_black_bordered(r, cfg):
        return MediaType.COMPUTER

    visit("green")
    profile = color_profile(r, cfg)
    verdict = _board_or_podium(r, profile, cfg["classifier.t_green"],
                               cfg["classifier.t_green_bottom"])
    if verdict is not None:
        return verdict

    if profile.green_fraction < cfg["classifier.t_green"]:
        # Only frames that never entered the green branch reach the white
        # tests; green frames failing both board rules go to the residual.
        visit("white")
        if profile.white_fraction >= cfg["classifier.t_white"]:
            if horizontal_line_measure(r, cfg) >= cfg["classifier.theta_hline"]:
                return MediaType.COMPUTER
            light = (profile.white_fraction + profile.light_gray_fraction
                     + profile.skin_fraction)
            if light >= cfg["classifier.t_sheet"]:
                return MediaType.SHEET

    visit("residual")
    if (horizontal_line_measure(r, cfg) >= cfg["classifier.theta_hline"]
            or color_repetition_measure(r) >= cfg["classifier.theta_repetition"]):
        return MediaType.COMPUTER
    verdict = _board_or_podium(r, profile, cfg["classifier.t_green_relaxed"],
                               cfg["classifier.t_green_bottom"])
    if verdict is not None:
        return verdict
    return MediaType.ILLUSTRATION
