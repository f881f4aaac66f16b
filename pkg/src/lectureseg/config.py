"""Pipeline configuration.

Config files are line-oriented UTF-8 text: `key = value`, one per line,
`#` starts a comment. Keys are namespaced per subsystem (classifier.*,
filter.*, windows.*, match.*). Unknown keys are rejected so typos fail
loudly.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError

# Frozen defaults. Threshold values were calibrated once on the synthetic
# fixture suite and are not meant to be tuned per video.
DEFAULTS = {
    # media classifier
    "classifier.t_dark": 40.0,          # mean-luminance cutoff for dark frames
    "classifier.t_black": 32.0,         # per-pixel luminance cutoff in the border band
    "classifier.border_coverage": 0.90, # fraction of band pixels that must be black
    "classifier.t_green": 0.50,
    "classifier.t_green_relaxed": 0.30,
    "classifier.t_green_bottom": 0.05,
    "classifier.t_white": 0.60,
    "classifier.t_sheet": 0.70,
    "classifier.theta_hline": 0.005,
    "classifier.theta_repetition": 0.50,
    # content filter
    "filter.t_edge": 24.0,
    "filter.d_sim": 20.0,
    "filter.a_max_frac": 0.005,         # blob area cap as fraction of frame area
    # window selection
    "windows.height_frac": 0.10,
    "windows.low_frac": 0.05,
    "windows.high_frac": 0.30,
    # matching
    "match.alpha": 0.5,                 # weight: window count
    "match.beta": 3.0,                  # weight: mean quality
    "match.gamma": 2.0,                 # weight: translation consistency
    "match.delta": 2.0,                 # weight: spatial consistency
    "match.tau": 3.5,                   # acceptance threshold on total score
    "match.q_min": 0.35,                # per-window quality floor
    "match.search_radius_frac": 0.35,
    "match.blur": "open",               # "open" (literal) or "dilate"
}

_STR_KEYS = {"match.blur"}


class Config:
    """Immutable view over the default table plus file overrides."""

    def __init__(self, overrides: dict | None = None):
        values = dict(DEFAULTS)
        if overrides:
            for key, val in overrides.items():
                if key not in DEFAULTS:
                    raise ParseError(f"unknown config key {key!r}")
                values[key] = val
        self._values = values

    def __getitem__(self, key: str):
        return self._values[key]

    def get(self, key: str, default=None):
        return self._values.get(key, default)

    def items(self):
        return self._values.items()


def load_config(path: str | Path | None) -> Config:
    """Parse a `key = value` config file; None yields pure defaults."""
    if path is None:
        return Config()
    overrides = {}
    text = Path(path).read_text(encoding="utf-8")
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected `key = value`, got {raw!r}", line_no)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in DEFAULTS:
            raise ParseError(f"unknown config key {key!r}", line_no)
        if key in _STR_KEYS:
            overrides[key] = value
        else:
            try:
                overrides[key] = float(value)
            except ValueError:
                raise ParseError(f"expected a number for {key!r}, got {value!r}",
                                 line_no) from None
    return Config(overrides)
