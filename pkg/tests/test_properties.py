"""Property-based invariants across modules."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from lectureseg.classifier import MediaType
from lectureseg.costs import MatchProbabilities, closed_form_matches
from lectureseg.matching import score
from lectureseg.topics import cluster_frames, decode_runs, encode_runs
from lectureseg.windows import select_windows

labels = st.sampled_from(["A", "B", "C", "X", "Y", "Z", "AA"])


@given(st.lists(labels, max_size=60))
def test_decode_encode_round_trip(seq):
    assert decode_runs(encode_runs(list(enumerate(seq)))) == seq


@given(st.lists(labels, min_size=1, max_size=60))
def test_encode_runs_token_shape(seq):
    tokens = encode_runs(list(enumerate(seq))).split()
    assert sum(int(t.rpartition("^")[2]) for t in tokens) == len(seq)
    run_labels = [t.rpartition("^")[0] for t in tokens]
    assert all(a != b for a, b in zip(run_labels, run_labels[1:]))


@st.composite
def probabilities(draw):
    a = draw(st.floats(0, 1))
    b = draw(st.floats(0, 1))
    c = draw(st.floats(0, 1))
    total = a + b + c
    if total == 0:
        return MatchProbabilities(1.0, 0.0, 0.0)
    return MatchProbabilities(a / total, b / total, c / total)


@given(probabilities(), st.integers(0, 2000), st.integers(1, 2000),
       st.floats(0.0, 1.0))
def test_closed_form_nonnegative_and_monotone(p, f, step, ratio):
    lo = closed_form_matches(f, p, ratio)
    hi = closed_form_matches(f + step, p, ratio)
    assert lo >= 0.0
    assert hi >= lo


@given(st.integers(0, 50), st.integers(2, 8))
def test_cluster_partition_total(n, k):
    groups = {i: i % k for i in range(n)}
    frames = [(i, MediaType.SHEET, i) for i in range(n)]
    result = cluster_frames(frames, lambda a, b, m: groups[a] == groups[b])
    seen = sorted(fid for t in result.topics for fid in t.frame_ids)
    assert seen == list(range(n))
    assert len(result.frame_labels) == n


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_windows_respect_band_and_caps(seed):
    rng = np.random.default_rng(seed)
    d = rng.random((240, 320)) < rng.uniform(0.0, 0.4)
    wins = select_windows(d)
    assert len(wins) <= 6
    for win in wins:
        count = int(d[win.y:win.y + win.h, win.x:win.x + win.w].sum())
        assert win.cc == count
        assert 0.05 * win.w * win.h <= count <= 0.30 * win.w * win.h


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_score_accepts_only_with_two_windows(seed):
    from lectureseg.matching import WindowMatch
    from lectureseg.windows import InterestWindow
    rng = np.random.default_rng(seed)
    ms = []
    for _ in range(int(rng.integers(0, 5))):
        win = InterestWindow(int(rng.integers(0, 200)),
                             int(rng.integers(0, 200)), 48, 24, 100,
                             "left", "top_down")
        ms.append(WindowMatch(win, (win.x, win.y),
                              (int(rng.integers(-20, 21)),
                               int(rng.integers(-20, 21))),
                              float(rng.uniform(0.0, 1.0))))
    result = score(ms, window_h=24)
    if result.accepted:
        assert result.n >= 2
        assert result.total >= 3.5
