"""Online clustering of key frames into temporally ordered topics.

The first clusterable frame opens the first topic; every later frame is
matched against the most recent frame of each topic in recency order and
either extends the first topic that accepts it (promoting that topic to
most recent) or opens a new one. Only board and sheet frames take part
in matching; other media types accrue under reserved run labels.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field

from .classifier import MediaType

# Reserved run-notation letters for unclustered media.
PODIUM_LABEL = "X"
COMPUTER_LABEL = "Y"
OTHER_LABEL = "Z"
CLUSTERABLE = (MediaType.BOARD, MediaType.SHEET)


def _topic_labels():
    """A, B, ... AA, AB, ... skipping the reserved letters."""
    reserved = {PODIUM_LABEL, COMPUTER_LABEL, OTHER_LABEL}
    for size in itertools.count(1):
        for letters in itertools.product(string.ascii_uppercase, repeat=size):
            label = "".join(letters)
            if label not in reserved:
                yield label


def media_run_label(media: MediaType) -> str:
    if media is MediaType.PODIUM:
        return PODIUM_LABEL
    if media is MediaType.COMPUTER:
        return COMPUTER_LABEL
    return OTHER_LABEL


@dataclass
class Topic:
    label: str
    media: MediaType
    frame_ids: list[int] = field(default_factory=list)

    @property
    def most_recent_frame(self) -> int:
        return self.frame_ids[-1]


@dataclass
class ClusterResult:
    topics: list[Topic]                     # ordered most recent first
    frame_labels: list[tuple[int, str]]     # every frame, video order
    match_calls: list[int]                  # per frame, video order


def cluster_frames(frames, match) -> ClusterResult:
    """Cluster (frame_id, media, content) triples with a match oracle.

    `match(content_a, content_b, media) -> bool` decides whether the
    newer frame elaborates the older one. Contents of non-clusterable
    frames may be None; they bypass matching entirely. Matching is only
    attempted between frames of equal media type.
    """
    labels = _topic_labels()
    contents: dict[int, object] = {}
    topics: list[Topic] = []
    frame_labels: list[tuple[int, str]] = []
    match_calls: list[int] = []

    for frame_id, media, content in frames:
        if media not in CLUSTERABLE:
            frame_labels.append((frame_id, media_run_label(media)))
            match_calls.append(0)
            continue
        contents[frame_id] = content
        calls = 0
        extended = None
        for idx, topic in enumerate(topics):
            if topic.media is not media:
                continue
            calls += 1
            if match(contents[topic.most_recent_frame], content, media):
                extended = idx
                break
        if extended is None:
            topic = Topic(next(labels), media, [frame_id])
            topics.insert(0, topic)
        else:
            topic = topics.pop(extended)
            topic.frame_ids.append(frame_id)
            topics.insert(0, topic)
        frame_labels.append((frame_id, topic.label))
        match_calls.append(calls)

    return ClusterResult(topics, frame_labels, match_calls)


def encode_runs(labeled) -> str:
    """Run-length string: one `label^len` token per maximal run."""
    tokens = []
    for label, group in itertools.groupby(labeled, key=lambda fl: fl[1]):
        tokens.append(f"{label}^{sum(1 for _ in group)}")
    return " ".join(tokens)


def decode_runs(runs: str) -> list[str]:
    """Expand a run-length string back to the per-frame label sequence."""
    out: list[str] = []
    for token in runs.split():
        label, _, count = token.rpartition("^")
        out.extend([label] * int(count))
    return out
