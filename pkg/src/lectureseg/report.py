"""Figure rendering for the bench subcommand."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .costs import MatchProbabilities, closed_form_matches


def render_cost_figure(points, fitted_a: float, fitted_b: float,
                       p: MatchProbabilities, topic_ratio: float,
                       out_path) -> None:
    """Scatter of observed cumulative match calls with the quadratic fit
    and the closed-form expectation overlaid."""
    fs = np.array([pt[0] for pt in points], dtype=np.float64)
    ms = np.array([pt[1] for pt in points], dtype=np.float64)
    grid = np.linspace(0, fs.max(), 200)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.scatter(fs, ms, s=12, color="tab:blue", alpha=0.6,
               label="observed (mean over trials)")
    ax.plot(grid, fitted_a * grid + fitted_b * grid ** 2, color="tab:red",
            label=f"fit: {fitted_a:.3f}f + {fitted_b:.5f}f²")
    ax.plot(grid, [closed_form_matches(f, p, topic_ratio) for f in grid],
            color="tab:green", linestyle="--", label="closed form")
    ax.set_xlabel("key frames f")
    ax.set_ylabel("cumulative match calls M(f)")
    ax.set_title("Match cost vs. number of key frames")
    ax.legend(loc="upper left", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
