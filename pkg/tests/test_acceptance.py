"""Acceptance gate: one test per release criterion.

Each test prints a single [PASS]/[FAIL] line (run pytest with -s or rely
on captured output of failing tests) and enforces both the functional
threshold and the runtime budget.
"""

import time

import numpy as np

from lectureseg.classifier import MediaType, classify
from lectureseg.cli import main
from lectureseg.content import extract_board_content, extract_sheet_content
from lectureseg.costs import (DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO,
                              closed_form_matches, fit_quadratic,
                              mean_cumulative_calls)
from lectureseg.matching import (_rescale, locate_window, match_pair,
                                 scale_sweep)
from lectureseg.topics import cluster_frames
from lectureseg.windows import select_windows

from synth import (board_frame, classifier_branch_suite, podium_frame,
                   save_png, scribble_content, sheet_frame, shifted,
                   write_manifest)


def _gate(name, ok, elapsed, budget):
    ok = ok and elapsed <= budget
    print(f"[{'PASS' if ok else 'FAIL'}] {name} "
          f"({elapsed:.3f}s / budget {budget:.0f}s)")
    assert ok, name


def test_closed_form_cost():
    closed_form_matches(200, DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO)
    t0 = time.perf_counter()
    value = closed_form_matches(200, DEFAULT_PROBABILITIES,
                                DEFAULT_TOPIC_RATIO)
    elapsed = time.perf_counter() - t0
    _gate("closed-form cost at 200 frames = 314 +/- 0.5",
          abs(value - 314.16) <= 0.5, elapsed, 0.001)


def test_simulation_tracks_closed_form():
    t0 = time.perf_counter()
    mean = mean_cumulative_calls(200, DEFAULT_PROBABILITIES, trials=100)
    elapsed = time.perf_counter() - t0
    expected = closed_form_matches(200, DEFAULT_PROBABILITIES,
                                   DEFAULT_TOPIC_RATIO)
    _gate("simulated mean within 15% of closed form",
          abs(mean - expected) <= 0.15 * expected, elapsed, 5.0)


def test_regression_recovery():
    a, b = 0.84, 0.0039
    points = [(f, a * f + b * f * f) for f in range(1, 201)]
    t0 = time.perf_counter()
    fa, fb, _ = fit_quadratic(points)
    elapsed = time.perf_counter() - t0
    _gate("quadratic fit recovers exact coefficients to 1e-9",
          abs(fa - a) <= 1e-9 and abs(fb - b) <= 1e-9, elapsed, 1.0)


def test_classifier_branch_suite():
    t0 = time.perf_counter()
    cases = classifier_branch_suite()
    correct = sum(classify(raster, label) is expected
                  for raster, label, expected in cases)
    elapsed = time.perf_counter() - t0
    _gate(f"classifier 100% on {len(cases)} branch-covering frames",
          len(cases) >= 30 and correct == len(cases), elapsed, 10.0)


def _f1(predicted, truth):
    tp = float((predicted & truth).sum())
    if tp == 0:
        return 0.0
    p = tp / predicted.sum()
    r = tp / truth.sum()
    return 2 * p * r / (p + r)


def test_filter_fidelity():
    t0 = time.perf_counter()
    board_ok = sheet_ok = True
    for seed in range(20):
        r, truth = board_frame(np.random.default_rng(seed))
        content, _ = extract_board_content(r)
        board_ok &= _f1(content, truth) >= 0.90
        r, truth = sheet_frame(np.random.default_rng(100 + seed))
        content, _ = extract_sheet_content(r)
        sheet_ok &= _f1(content, truth) >= 0.95
    elapsed = time.perf_counter() - t0
    _gate("filter F1: board >= 0.90 and sheet >= 0.95 on 20 frames each",
          board_ok and sheet_ok, elapsed, 30.0)


def test_matcher_recovery():
    t0 = time.perf_counter()

    # pure integer translations recovered to <= 2 px, checked per window
    # for every placement that stays inside the frame
    d = scribble_content(np.random.default_rng(1))
    translation_ok = True
    for dx, dy in ((12, 4), (-9, 7), (0, -15)):
        moved = shifted(d, dx, dy)
        for win in select_windows(d):
            if not (0 <= win.x + dx <= 320 - win.w
                    and 0 <= win.y + dy <= 240 - win.h):
                continue
            template = d[win.y:win.y + win.h, win.x:win.x + win.w]
            m = locate_window(template, (win.x, win.y), moved, radius=60)
            err = max(abs(m.translation[0] - dx), abs(m.translation[1] - dy))
            translation_ok &= err <= 2

    # every sweep factor recovered exactly
    scale_hits = 0
    for factor in scale_sweep():
        m = match_pair(d, _rescale(d, factor), MediaType.SHEET)
        scale_hits += m.accepted and m.scale == factor

    # disjoint random content rejected
    rejections = 0
    for trial in range(100):
        a = scribble_content(np.random.default_rng(2000 + 2 * trial))
        b = scribble_content(np.random.default_rng(2001 + 2 * trial))
        rejections += not match_pair(a, b, MediaType.SHEET).accepted

    elapsed = time.perf_counter() - t0
    _gate(f"matcher: translations <= 2px, scales {scale_hits}/14, "
          f"rejections {rejections}/100",
          translation_ok and scale_hits == 14 and rejections >= 99,
          elapsed, 60.0)


def test_clustering_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    ok = True
    for _ in range(50):
        n = int(rng.integers(1, 31))
        groups = {i: int(rng.integers(0, 6)) for i in range(n)}
        frames = [(i, MediaType.SHEET, i) for i in range(n)]
        result = cluster_frames(frames,
                                lambda a, b, m: groups[a] == groups[b])
        found = {frozenset(t.frame_ids) for t in result.topics}
        classes = {}
        for i, g in groups.items():
            classes.setdefault(g, set()).add(i)
        ok &= found == {frozenset(v) for v in classes.values()}
    elapsed = time.perf_counter() - t0
    _gate("clustering equals oracle partition on 50 random instances",
          ok, elapsed, 10.0)


def test_compression_band():
    t0 = time.perf_counter()
    rng = np.random.default_rng(42)
    frames = []
    for topic in range(20):
        base = scribble_content(np.random.default_rng(1000 + topic))
        for k in range(10):
            dx = 0 if k == 0 else int(rng.integers(-6, 7))
            dy = 0 if k == 0 else int(rng.integers(-6, 7))
            frames.append((len(frames), MediaType.SHEET,
                           shifted(base, dx, dy)))
    result = cluster_frames(frames,
                            lambda a, b, m: match_pair(a, b, m).accepted)
    ratio = len(result.topics) / len(frames)
    elapsed = time.perf_counter() - t0
    _gate(f"compression ratio {ratio:.3f} within [0.05, 0.20] on 200 frames",
          0.05 <= ratio <= 0.20, elapsed, 120.0)


def test_end_to_end_determinism(tmp_path):
    board, _ = board_frame(np.random.default_rng(0), n_strokes=200,
                           stroke_width=5)
    podium = podium_frame(np.random.default_rng(1))
    sheet, _ = sheet_frame(np.random.default_rng(2))
    for name, raster in (("b0.png", board), ("b1.png", board),
                         ("p.png", podium), ("s.png", sheet)):
        save_png(raster, tmp_path / name)
    write_manifest(tmp_path / "frames.tsv",
                   [(0, 1000, "b0.png"), (1, 2000, "b1.png"),
                    (2, 3000, "p.png"), (3, 4000, "s.png")])
    t0 = time.perf_counter()
    args = ["index", "--manifest", str(tmp_path / "frames.tsv")]
    ok = main(args + ["--out", str(tmp_path / "a.json")]) == 0
    ok &= main(args + ["--out", str(tmp_path / "b.json")]) == 0
    identical = ((tmp_path / "a.json").read_bytes()
                 == (tmp_path / "b.json").read_bytes())
    elapsed = time.perf_counter() - t0
    _gate("repeated CLI runs produce byte-identical index.json",
          ok and identical, elapsed, 60.0)
