"""Extraction of writing pixels from board and sheet frames.

The output of the filter chain is the derived content frame: a binary
plane the size of the source frame holding only writing pixels. Boards
flood the green background, extract a bright-writing foreground, and
denoise it; sheets flood the light background, extract a dark-writing
foreground, and skip the noise stages because ink contrast is high.

Binary images are plain (H, W) bool arrays throughout.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from .classifier import green_mask, light_gray_mask, luminance, white_mask
from .config import Config
from .errors import DimensionMismatch, NoBoardFound, NoSheetFound
from .ingest import Raster

# Filter-chain stage ids in pipeline order.
BOARD_STAGES = "abcdefghijk"
SHEET_STAGES = "abcdefjk"

_BOX3 = np.ones((3, 3), dtype=bool)

# Minimum aligned run of artifact candidates before suppression fires.
ARTIFACT_MIN_RUN = 8


def laplacian_edge(r: Raster, cfg: Config | None = None,
                   polarity: str = "abs") -> np.ndarray:
    """3x3 Laplacian on luminance, binarized at `filter.t_edge`.

    Border pixels (no full neighborhood) are always false. Polarity
    selects which responses count as edges: "abs" either sign, "bright"
    only positive responses (light writing on a dark background),
    "dark" only negative ones.
    """
    cfg = cfg or Config()
    t_edge = cfg["filter.t_edge"]
    lum = luminance(r.pixels)
    lap = np.zeros_like(lum)
    lap[1:-1, 1:-1] = (4.0 * lum[1:-1, 1:-1] - lum[:-2, 1:-1] - lum[2:, 1:-1]
                       - lum[1:-1, :-2] - lum[1:-1, 2:])
    if polarity == "abs":
        return np.abs(lap) >= t_edge
    if polarity == "bright":
        return lap >= t_edge
    if polarity == "dark":
        return lap <= -t_edge
    raise ValueError(f"unknown polarity {polarity!r}")


def _shift(px: np.ndarray, dy: int, dx: int) -> np.ndarray:
    """Shift an image, replicating edge pixels."""
    h, w = px.shape[:2]
    ys = np.clip(np.arange(h) + dy, 0, h - 1)
    xs = np.clip(np.arange(w) + dx, 0, w - 1)
    return px[np.ix_(ys, xs)]


def color_similarity_suppress(e: np.ndarray, r: Raster,
                              cfg: Config | None = None) -> np.ndarray:
    """Clear edge pixels produced by borders of large homogeneous regions.

    An edge pixel is an artifact candidate along a direction when the
    pixels on each side of it (offsets 1..4) are each internally
    homogeneous, the two sides differ from each other, and the pixel
    itself matches one side. Candidates only count as artifacts when
    they line up in a run of at least ARTIFACT_MIN_RUN along the border
    direction; stroke end caps fire the local test too but never form
    long runs.
    """
    cfg = cfg or Config()
    if e.shape != r.pixels.shape[:2]:
        raise DimensionMismatch("edge image and raster dimensions differ")
    d_sim = cfg["filter.d_sim"]
    px = r.pixels.astype(np.int16)
    artifact = np.zeros(e.shape, dtype=bool)
    for dy, dx in ((0, 1), (1, 0)):
        sides = []
        for sign in (-1, 1):
            samples = np.stack([_shift(px, sign * k * dy, sign * k * dx)
                                for k in range(1, 5)])
            span = samples.max(axis=0) - samples.min(axis=0)
            homogeneous = (span <= d_sim).all(axis=-1)
            sides.append((samples[0], homogeneous))
        (near_m, hom_m), (near_p, hom_p) = sides
        differ = (np.abs(near_m - near_p) > d_sim).any(axis=-1)
        pixel_fits = ((np.abs(px - near_m) <= d_sim).all(axis=-1)
                      | (np.abs(px - near_p) <= d_sim).all(axis=-1))
        candidate = hom_m & hom_p & differ & pixel_fits
        # a horizontal color test detects vertical borders, and vice versa
        line = np.ones((ARTIFACT_MIN_RUN, 1) if dx else (1, ARTIFACT_MIN_RUN),
                       dtype=bool)
        artifact |= ndimage.binary_opening(candidate, structure=line)
    return e & ~artifact


def _flood_background(seeds: np.ndarray, e: np.ndarray,
                      error: Exception) -> np.ndarray:
    """Flood the background predicate into its dominant closed region(s).

    4-connected components of (seeds minus edges) within 80% of the
    largest area are kept; the union is then hole-filled so writing
    inside the region belongs to the mask.
    """
    if not seeds.any():
        raise error
    region = seeds & ~e
    if not region.any():
        raise error
    four = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
    labels, count = ndimage.label(region, structure=four)
    areas = np.bincount(labels.ravel())[1:]
    keep = np.flatnonzero(areas >= 0.8 * areas.max()) + 1
    return np.isin(labels, keep)


def _outline(mask: np.ndarray) -> np.ndarray:
    return mask & ~ndimage.binary_erosion(mask, structure=_BOX3)


def flood_board(r: Raster, e: np.ndarray,
                cfg: Config | None = None) -> np.ndarray:
    """Board background mask: flooded green region(s), holes filled."""
    if e.shape != r.pixels.shape[:2]:
        raise DimensionMismatch("edge image and raster dimensions differ")
    kept = _flood_background(green_mask(r.pixels), e,
                             NoBoardFound("no green board pixels"))
    return ndimage.binary_fill_holes(kept)


def morph_denoise(b: np.ndarray) -> np.ndarray:
    """8-neighbor majority filter: removes speckles, keeps strokes.

    A set pixel survives with at least 2 set neighbors; a clear pixel is
    filled only when at least 5 neighbors are set, so small holes close
    without strokes growing sideways.
    """
    kernel = np.ones((3, 3), dtype=np.uint8)
    kernel[1, 1] = 0
    neighbors = ndimage.convolve(b.astype(np.uint8), kernel, mode="constant")
    return (neighbors >= 5) | (b & (neighbors >= 2))


def morph_restore(b: np.ndarray) -> np.ndarray:
    """3x3 morphological closing: bridges 1-pixel gaps in strokes."""
    return ndimage.binary_closing(b, structure=_BOX3)


def remove_large_blobs(b: np.ndarray, cfg: Config | None = None) -> np.ndarray:
    """Drop 8-connected components larger than `filter.a_max_frac` of the
    frame area; they carry no matchable detail."""
    cfg = cfg or Config()
    h, w = b.shape
    a_max = cfg["filter.a_max_frac"] * w * h
    labels, count = ndimage.label(b, structure=_BOX3)
    if count == 0:
        return b.copy()
    areas = np.bincount(labels.ravel())
    areas[0] = 0
    keep = areas <= a_max
    keep[0] = False
    return keep[labels]


def extract_board_content(r: Raster, cfg: Config | None = None,
                          want_trace: bool = False):
    """Full board chain, stages a-k; returns (content frame, trace).

    The trace maps stage letter to its binary snapshot and is None
    unless requested.
    """
    cfg = cfg or Config()
    trace: dict[str, np.ndarray] = {}
    h, w = r.pixels.shape[:2]
    background = green_mask(r.pixels)
    edges = laplacian_edge(r, cfg, polarity="bright")
    kept = _flood_background(background, edges,
                             NoBoardFound("no green board pixels"))
    filled = ndimage.binary_fill_holes(kept)
    fg = color_similarity_suppress(edges, r, cfg)
    denoised = morph_denoise(fg)
    closed = morph_restore(denoised)
    combined = filled & closed
    content = remove_large_blobs(combined, cfg)
    if want_trace:
        trace = {"a": np.ones((h, w), dtype=bool), "b": background, "c": kept,
                 "d": _outline(kept), "e": filled, "f": edges, "g": fg,
                 "h": denoised, "i": closed, "j": combined, "k": content}
    return content, (trace if want_trace else None)


def extract_sheet_content(r: Raster, cfg: Config | None = None,
                          want_trace: bool = False):
    """Sheet chain: light background, dark ink, noise stages g-i omitted."""
    cfg = cfg or Config()
    h, w = r.pixels.shape[:2]
    background = white_mask(r.pixels) | light_gray_mask(r.pixels)
    edges = laplacian_edge(r, cfg, polarity="dark")
    kept = _flood_background(background, edges,
                             NoSheetFound("no light sheet pixels"))
    filled = ndimage.binary_fill_holes(kept)
    combined = filled & edges
    content = remove_large_blobs(combined, cfg)
    trace = None
    if want_trace:
        trace = {"a": np.ones((h, w), dtype=bool), "b": background, "c": kept,
                 "d": _outline(kept), "e": filled, "f": edges, "j": combined,
                 "k": content}
    return content, trace
