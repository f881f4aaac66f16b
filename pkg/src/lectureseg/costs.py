"""Match-call cost accounting: closed form, simulation, and regression.

The clustering workload is summarized by three outcome probabilities per
frame: extending the most recent topic (one match call), extending a
prior topic (a partial recency scan), or opening a new topic (a full
scan). With the topic count growing as topic_ratio * f, the expected
cumulative cost is near-linear in the frame count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSystem, InvalidProbabilities


@dataclass(frozen=True)
class MatchProbabilities:
    p_exact: float      # match with the most recent topic
    p_previous: float   # match with some prior topic
    p_new_topic: float  # no match anywhere

    def __post_init__(self):
        probs = (self.p_exact, self.p_previous, self.p_new_topic)
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise InvalidProbabilities(f"probabilities out of range: {probs}")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise InvalidProbabilities(f"probabilities sum to {sum(probs)}")


# Corpus-derived defaults; free parameters of the simulator.
DEFAULT_PROBABILITIES = MatchProbabilities(0.89, 0.036, 0.074)
DEFAULT_TOPIC_RATIO = 0.074


@dataclass
class CostReport:
    per_frame: list[int]
    cumulative: list[int]
    fitted_a: float
    fitted_b: float
    residual: float


def closed_form_matches(f: float, p: MatchProbabilities,
                        topic_ratio: float) -> float:
    """Expected cumulative match calls for f frames.

    Per-frame expected cost at frame k is
    p_exact + (p_previous/2 + p_new_topic) * topic_ratio * k;
    integrating over k gives a pure quadratic in f with no constant term.
    """
    if f < 0:
        raise ValueError("frame count must be non-negative")
    quad = (p.p_previous / 2.0 + p.p_new_topic) * topic_ratio / 2.0
    return p.p_exact * f + quad * f * f


def simulate_workload(f: int, p: MatchProbabilities,
                      seed: int) -> CostReport:
    """Run the online clustering loop against a stochastic oracle.

    Topic identity is abstract: only the recency ordering matters for
    cost. A prior-topic match targets a uniformly random topic behind
    the most recent one and pays for the recency scan down to it; when
    only one topic exists the draw degrades to an exact match.
    """
    if f < 1:
        raise ValueError("need at least one frame")
    rng = np.random.default_rng(seed)
    per_frame = [0]     # first frame opens topic 1 without matching
    n_topics = 1
    for _ in range(1, f):
        outcome = rng.choice(3, p=(p.p_exact, p.p_previous, p.p_new_topic))
        if outcome == 0 or (outcome == 1 and n_topics == 1):
            per_frame.append(1)
        elif outcome == 1:
            rank = int(rng.integers(2, n_topics + 1))
            per_frame.append(rank)
        else:
            per_frame.append(n_topics)
            n_topics += 1
    cumulative = np.cumsum(per_frame)
    points = list(zip(range(1, f + 1), cumulative.tolist()))
    if f >= 3:
        a, b, residual = fit_quadratic(points)
    else:
        a = b = residual = float("nan")
    return CostReport(per_frame, cumulative.tolist(), a, b, residual)


def fit_quadratic(points) -> tuple[float, float, float]:
    """Least-squares fit of M = a*f + b*f^2 (no constant term)."""
    points = list(points)
    fs = np.array([pt[0] for pt in points], dtype=np.float64)
    ms = np.array([pt[1] for pt in points], dtype=np.float64)
    if len(points) < 3 or len(np.unique(fs)) < 3:
        raise DegenerateSystem("need at least 3 points with distinct f")
    design = np.column_stack([fs, fs * fs])
    coeffs, _, rank, _ = np.linalg.lstsq(design, ms, rcond=None)
    if rank < 2:
        raise DegenerateSystem("design matrix is rank deficient")
    residual = float(np.sqrt(np.mean((design @ coeffs - ms) ** 2)))
    return float(coeffs[0]), float(coeffs[1]), residual


def mean_cumulative_calls(f: int, p: MatchProbabilities, trials: int,
                          base_seed: int = 0) -> float:
    """Mean total match calls at frame f over independently seeded runs."""
    totals = [simulate_workload(f, p, base_seed + t).cumulative[-1]
              for t in range(trials)]
    return float(np.mean(totals))
