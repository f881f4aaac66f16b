"""Interest-window selection over a derived content frame.

Up to six fixed-size 2:1 sub-windows are picked, two per vertical strip
(one from a top-down grid scan, one bottom-up), keeping only placements
whose content-pixel count sits in the informative 5-30% band.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Config

STRIPS = ("left", "middle", "right")


@dataclass(frozen=True)
class InterestWindow:
    x: int
    y: int
    w: int
    h: int
    cc: int
    strip: str
    scan: str


def window_shape(frame_h: int, cfg: Config | None = None) -> tuple[int, int]:
    """(h, w) of the interest window: h spans roughly two text lines."""
    cfg = cfg or Config()
    h = max(2, round(cfg["windows.height_frac"] * frame_h))
    return h, 2 * h


def _integral(d: np.ndarray) -> np.ndarray:
    ii = np.zeros((d.shape[0] + 1, d.shape[1] + 1), dtype=np.int64)
    np.cumsum(np.cumsum(d, axis=0), axis=1, out=ii[1:, 1:])
    return ii


def _count(ii: np.ndarray, y: int, x: int, h: int, w: int) -> int:
    return int(ii[y + h, x + w] - ii[y, x + w] - ii[y + h, x] + ii[y, x])


def select_windows(d: np.ndarray,
                   cfg: Config | None = None) -> list[InterestWindow]:
    """Scan each strip's coarse grid in both directions; first hit wins.

    Identical placements reported by both scans collapse to one window,
    so the result holds at most six windows, two per strip.
    """
    cfg = cfg or Config()
    frame_h, frame_w = d.shape
    wh, ww = window_shape(frame_h, cfg)
    low = cfg["windows.low_frac"] * wh * ww
    high = cfg["windows.high_frac"] * wh * ww
    step = max(1, wh // 2)
    ii = _integral(d)

    windows: list[InterestWindow] = []
    strip_w = frame_w // 3
    for si, strip in enumerate(STRIPS):
        x0 = si * strip_w
        x1 = (si + 1) * strip_w if si < 2 else frame_w
        xs = list(range(x0, x1 - ww + 1, step))
        ys = list(range(0, frame_h - wh + 1, step))
        if not xs or not ys:
            continue

        def first_hit(order):
            for y, x in order:
                cc = _count(ii, y, x, wh, ww)
                if low <= cc <= high:
                    return InterestWindow(x, y, ww, wh, cc, strip, "")
            return None

        top = first_hit((y, x) for y in ys for x in xs)
        bottom = first_hit((y, x) for y in reversed(ys) for x in reversed(xs))
        if top is not None:
            windows.append(InterestWindow(top.x, top.y, ww, wh, top.cc,
                                          strip, "top_down"))
        if bottom is not None and not (top is not None
                                       and (bottom.x, bottom.y) == (top.x, top.y)):
            windows.append(InterestWindow(bottom.x, bottom.y, ww, wh,
                                          bottom.cc, strip, "bottom_up"))
    return windows
