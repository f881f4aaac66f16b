"""Match-call cost model: closed form, simulation, regression fit."""

import numpy as np
import pytest

from lectureseg.costs import (DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO,
                              MatchProbabilities, closed_form_matches,
                              fit_quadratic, mean_cumulative_calls,
                              simulate_workload)
from lectureseg.errors import DegenerateSystem, InvalidProbabilities


# ----------------------------------------------------------------- closed form

def test_closed_form_zero_frames():
    assert closed_form_matches(0, DEFAULT_PROBABILITIES,
                               DEFAULT_TOPIC_RATIO) == 0.0


def test_closed_form_200_frames():
    m = closed_form_matches(200, DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO)
    assert m == pytest.approx(314.16, abs=0.5)


def test_closed_form_100_frames():
    m = closed_form_matches(100, DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO)
    assert m == pytest.approx(123.04, abs=0.5)


def test_closed_form_hand_computed():
    # 0.89*f + (0.036/2 + 0.074)*ratio/2 * f^2 evaluated by hand
    p, r = DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO
    for f in (1, 7, 50, 333):
        expected = 0.89 * f + 0.092 * r / 2.0 * f * f
        assert closed_form_matches(f, p, r) == pytest.approx(expected)


def test_closed_form_monotone_in_f():
    values = [closed_form_matches(f, DEFAULT_PROBABILITIES,
                                  DEFAULT_TOPIC_RATIO)
              for f in range(0, 500, 25)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_closed_form_negative_frames_rejected():
    with pytest.raises(ValueError):
        closed_form_matches(-1, DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO)


# ------------------------------------------------------------- probabilities

def test_probabilities_must_sum_to_one():
    with pytest.raises(InvalidProbabilities):
        MatchProbabilities(0.5, 0.5, 0.5)


def test_probabilities_must_be_in_range():
    with pytest.raises(InvalidProbabilities):
        MatchProbabilities(1.2, -0.2, 0.0)


# ------------------------------------------------------------------ simulation

def test_simulation_always_exact():
    report = simulate_workload(50, MatchProbabilities(1.0, 0.0, 0.0), seed=0)
    assert report.per_frame == [0] + [1] * 49
    assert report.cumulative[-1] == 49


def test_simulation_always_new_topic():
    f = 40
    report = simulate_workload(f, MatchProbabilities(0.0, 0.0, 1.0), seed=0)
    assert report.per_frame == list(range(f))
    assert report.cumulative[-1] == f * (f - 1) // 2


def test_simulation_first_frame_free():
    report = simulate_workload(10, DEFAULT_PROBABILITIES, seed=3)
    assert report.per_frame[0] == 0


def test_simulation_cumulative_consistency():
    report = simulate_workload(80, DEFAULT_PROBABILITIES, seed=4)
    assert report.cumulative == list(np.cumsum(report.per_frame))


def test_simulation_seed_determinism():
    a = simulate_workload(60, DEFAULT_PROBABILITIES, seed=7)
    b = simulate_workload(60, DEFAULT_PROBABILITIES, seed=7)
    assert a.per_frame == b.per_frame
    c = simulate_workload(60, DEFAULT_PROBABILITIES, seed=8)
    assert a.per_frame != c.per_frame


def test_simulation_needs_a_frame():
    with pytest.raises(ValueError):
        simulate_workload(0, DEFAULT_PROBABILITIES, seed=0)


def test_simulation_mean_tracks_closed_form():
    f = 200
    mean = mean_cumulative_calls(f, DEFAULT_PROBABILITIES, trials=100)
    expected = closed_form_matches(f, DEFAULT_PROBABILITIES,
                                   DEFAULT_TOPIC_RATIO)
    assert abs(mean - expected) <= 0.15 * expected


# ------------------------------------------------------------------ regression

def test_fit_exact_recovery():
    a, b = 0.84, 0.0039
    points = [(f, a * f + b * f * f) for f in range(1, 120)]
    fa, fb, residual = fit_quadratic(points)
    assert fa == pytest.approx(a, abs=1e-9)
    assert fb == pytest.approx(b, abs=1e-9)
    assert residual <= 1e-9


def test_fit_exact_recovery_other_coefficients():
    for a, b in ((0.89, 0.0034), (1.0, 0.0), (0.0, 0.01)):
        points = [(f, a * f + b * f * f) for f in (1, 2, 3, 10, 50)]
        fa, fb, residual = fit_quadratic(points)
        assert fa == pytest.approx(a, abs=1e-9)
        assert fb == pytest.approx(b, abs=1e-9)
        assert residual <= 1e-9


def test_fit_noisy_coverage():
    # Gaussian noise sigma=5 on a known curve: the fit should land near
    # the generator in nearly every trial
    rng = np.random.default_rng(0)
    hits = 0
    for _ in range(100):
        a = rng.uniform(0.80, 0.98)
        b = rng.uniform(0.002, 0.005)
        fs = np.arange(1, 201)
        ms = a * fs + b * fs * fs + rng.normal(0.0, 5.0, size=fs.size)
        fa, fb, _ = fit_quadratic(list(zip(fs.tolist(), ms.tolist())))
        if abs(fa - a) <= 0.1 and abs(fb - b) <= 0.001:
            hits += 1
    assert hits >= 95


def test_fit_rejects_too_few_points():
    with pytest.raises(DegenerateSystem):
        fit_quadratic([(1, 1.0), (2, 2.0)])


def test_fit_rejects_duplicate_abscissae():
    with pytest.raises(DegenerateSystem):
        fit_quadratic([(5, 1.0), (5, 2.0), (5, 3.0)])


def test_simulated_fit_near_per_frame_rates():
    # fitted linear term approximates p_exact, quadratic term the scan
    # growth rate, over a long run
    report = simulate_workload(400, DEFAULT_PROBABILITIES, seed=1)
    assert 0.7 <= report.fitted_a <= 1.1
    assert 0.0 < report.fitted_b < 0.01
    assert report.residual < 50.0
