"""Multi-scale sub-window matching between two derived content frames.

A newer frame elaborates an older one when enough of the older frame's
interest windows re-locate in the newer frame with consistent geometry.
Scale is modeled explicitly by a 14-factor sweep; perspective is handled
implicitly by treating the frame as independent local windows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage, signal

from .classifier import MediaType
from .config import Config
from .errors import MediaTypeMismatch
from .windows import InterestWindow, select_windows, window_shape

SCALE_MIN = 0.6
SCALE_MAX = 1.7
SCALE_STEPS = 14

_BOX3 = np.ones((3, 3), dtype=bool)

# Placements whose quality falls within this of the best one are treated
# as ties and resolved toward the smallest translation.
QUALITY_TIE_TOL = 0.02

# Weight of the soft distance prior in placement selection: a placement a
# full search radius away must beat a same-quality placement at the
# origin by this much. Repetitive writing produces distant near-clones
# of a window; without the prior they capture windows at random.
DISTANCE_PRIOR = 0.1


def scale_sweep() -> list[float]:
    """The 14 geometrically spaced factors from 0.6 to 1.7 inclusive."""
    ratio = SCALE_MAX / SCALE_MIN
    return [SCALE_MIN * ratio ** (k / (SCALE_STEPS - 1))
            for k in range(SCALE_STEPS)]


@dataclass(frozen=True)
class WindowMatch:
    window: InterestWindow
    best_position: tuple[int, int]      # (x, y) in the searched frame
    translation: tuple[int, int]        # (dx, dy)
    quality: float


@dataclass(frozen=True)
class MatchResult:
    n: int
    mean_quality: float
    translation_consistency: float
    spatial_consistency: float
    scale: float
    direction: str
    total: float
    accepted: bool
    matches: tuple[WindowMatch, ...] = field(default=(), repr=False)


def blur_for_match(d: np.ndarray, cfg: Config | None = None) -> np.ndarray:
    """Blur the searched frame with a 3x3 mask before matching.

    Default is a morphological opening (the literal procedure); set
    `match.blur = dilate` to expand content instead.
    """
    cfg = cfg or Config()
    mode = cfg["match.blur"]
    if mode == "open":
        return ndimage.binary_opening(d, structure=_BOX3)
    if mode == "dilate":
        return ndimage.binary_dilation(d, structure=_BOX3)
    raise ValueError(f"unknown match.blur mode {mode!r}")


def locate_window(template: np.ndarray, origin: tuple[int, int],
                  j: np.ndarray, radius: int) -> WindowMatch | None:
    """Exhaustively place the template within `radius` of its origin.

    Match quality at a placement is the matched writing over the total
    writing of both sub-windows, 2|T & J| / (|T| + |J|): symmetric, so
    neither an empty nor an overstuffed target window scores well.
    Selection maximizes quality minus a soft distance prior
    (DISTANCE_PRIOR at the full radius), so a coincidental clone far
    from the origin cannot capture the window unless it is genuinely
    sharper; placements within QUALITY_TIE_TOL of the best count as
    ties and go to the smallest translation length, then smallest y,
    then x. Returns None only when no placement fits inside j at all.
    """
    th, tw = template.shape
    jh, jw = j.shape
    ox, oy = origin
    y0 = max(0, oy - radius)
    y1 = min(jh - th, oy + radius)
    x0 = max(0, ox - radius)
    x1 = min(jw - tw, ox + radius)
    if y1 < y0 or x1 < x0:
        return None
    sub = j[y0:y1 + th, x0:x1 + tw]
    kernel = template[::-1, ::-1].astype(np.float32)
    overlaps = np.rint(signal.fftconvolve(sub.astype(np.float32), kernel,
                                          mode="valid"))
    overlaps = np.maximum(overlaps, 0.0)
    # per-placement content count of j via an integral image
    ii = np.zeros((sub.shape[0] + 1, sub.shape[1] + 1), dtype=np.int64)
    np.cumsum(np.cumsum(sub, axis=0), axis=1, out=ii[1:, 1:])
    counts = (ii[th:, tw:] - ii[:-th, tw:] - ii[th:, :-tw] + ii[:-th, :-tw])
    popcount = int(template.sum())
    quality_map = 2.0 * overlaps / np.maximum(popcount + counts, 1)
    gy, gx = np.mgrid[y0:y1 + 1, x0:x1 + 1]
    dist = np.hypot(gx - ox, gy - oy)
    selection = quality_map - DISTANCE_PRIOR * dist / max(radius, 1)
    best = selection.max()
    ys, xs = np.nonzero(selection >= best - QUALITY_TIE_TOL)
    dx = (xs + x0) - ox
    dy = (ys + y0) - oy
    order = np.lexsort((xs, ys, dx * dx + dy * dy))
    pick = order[0]
    pos = (int(xs[pick] + x0), int(ys[pick] + y0))
    return WindowMatch(
        window=None,  # filled by the caller
        best_position=pos,
        translation=(int(dx[pick]), int(dy[pick])),
        quality=float(quality_map[ys[pick], xs[pick]]),
    )


def _population_std(values: list[float]) -> float:
    if len(values) <= 1:
        return 0.0
    return float(np.std(values))


def score(ms: list[WindowMatch], window_h: int, scale: float = 1.0,
          direction: str = "forward",
          cfg: Config | None = None) -> MatchResult:
    """Combine per-window matches into the four-component total score.

    total = alpha*n + beta*mean_quality + gamma*c_t + delta*c_s, where
    the consistency terms are negative population standard deviations in
    units of the window height.
    """
    cfg = cfg or Config()
    good = [m for m in ms if m.quality >= cfg["match.q_min"]]
    n = len(good)
    q_bar = float(np.mean([m.quality for m in good])) if good else 0.0

    lengths = [math.hypot(*m.translation) for m in good]
    c_t = -_population_std(lengths) / window_h if n > 1 else 0.0

    errors = []
    for a in range(n):
        for b in range(a + 1, n):
            wa, wb = good[a], good[b]
            d_src = math.hypot(wa.window.x - wb.window.x,
                               wa.window.y - wb.window.y)
            d_dst = math.hypot(wa.best_position[0] - wb.best_position[0],
                               wa.best_position[1] - wb.best_position[1])
            errors.append(d_dst - d_src)
    # deviation is taken about zero: a faithful match has no error, so a
    # consistent bias is as damning as scatter
    c_s = (-float(np.sqrt(np.mean(np.square(errors)))) / window_h
           if errors else 0.0)

    total = (cfg["match.alpha"] * n + cfg["match.beta"] * q_bar
             + cfg["match.gamma"] * c_t + cfg["match.delta"] * c_s)
    accepted = n >= 2 and total >= cfg["match.tau"]
    return MatchResult(n=n, mean_quality=q_bar, translation_consistency=c_t,
                       spatial_consistency=c_s, scale=scale,
                       direction=direction, total=total, accepted=accepted,
                       matches=tuple(good))


def _rescale(d: np.ndarray, factor: float) -> np.ndarray:
    """Nearest-neighbor rescale of a binary frame."""
    if factor == 1.0:
        return d
    out = ndimage.zoom(d.astype(np.uint8), factor, order=0, grid_mode=True,
                       mode="grid-constant")
    return out.astype(bool)


def _match_direction(src: np.ndarray, wins: list[InterestWindow],
                     dst: np.ndarray, scale: float, direction: str,
                     cfg: Config) -> MatchResult:
    """Locate src's windows in dst rescaled by 1/scale, then score.

    `scale` is the hypothesis "dst content is scale times src content",
    so dst is shrunk (or grown) by its inverse before the search.
    """
    wh, _ = window_shape(src.shape[0], cfg)
    if not wins:
        return score([], wh, scale, direction, cfg)
    dst_scaled = blur_for_match(_rescale(dst, 1.0 / scale), cfg)
    radius = int(round(cfg["match.search_radius_frac"] * min(src.shape)))
    matches = []
    for win in wins:
        template = src[win.y:win.y + win.h, win.x:win.x + win.w]
        located = locate_window(template, (win.x, win.y), dst_scaled, radius)
        if located is not None:
            matches.append(WindowMatch(win, located.best_position,
                                       located.translation, located.quality))
    return score(matches, wh, scale, direction, cfg)


def match_pair(i: np.ndarray, j: np.ndarray, media: MediaType,
               cfg: Config | None = None) -> MatchResult:
    """Best MatchResult over the scale sweep (and, for boards, both
    directions). Ties prefer the scale nearest 1.0, forward first."""
    cfg = cfg or Config()
    if media not in (MediaType.BOARD, MediaType.SHEET):
        raise MediaTypeMismatch(f"cannot match media type {media.value}")
    wins_i = select_windows(i, cfg)
    wins_j = select_windows(j, cfg) if media is MediaType.BOARD else []
    candidates = []
    for scale in scale_sweep():
        candidates.append(_match_direction(i, wins_i, j, scale, "forward", cfg))
        if media is MediaType.BOARD:
            candidates.append(_match_direction(j, wins_j, i, scale, "reverse",
                                               cfg))
    return min(candidates,
               key=lambda m: (-m.total, abs(m.scale - 1.0),
                              m.direction != "forward"))
