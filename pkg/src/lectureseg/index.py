"""Pipeline orchestration and topic-index serialization.

`build_index` runs ingest -> classify -> filter -> cluster over one
manifest and assembles the JSON-serializable topic index the viewer
consumes. Frames that fail to decode or filter are annotated and kept;
one corrupt image must not sink a whole lecture.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from . import content as content_filter
from .classifier import MediaType, classify
from .config import Config, load_config
from .errors import (DecodeError, DimensionError, IoError, LecturesegError,
                     NoBoardFound, NoSheetFound)
from .ingest import load_frame, load_manifest
from .matching import match_pair
from .topics import cluster_frames, encode_runs

SCHEMA_VERSION = 1
THUMBNAIL_WIDTH = 160


def _thumbnail(raster, frame_id: int, thumbs_dir: Path) -> str:
    img = Image.fromarray(np.asarray(raster.pixels))
    if img.width > THUMBNAIL_WIDTH:
        height = max(1, round(img.height * THUMBNAIL_WIDTH / img.width))
        img = img.resize((THUMBNAIL_WIDTH, height), Image.LANCZOS)
    path = thumbs_dir / f"frame_{frame_id:06d}.png"
    img.save(path, format="PNG")
    return str(path)


def _dump_trace(trace, frame_id: int, trace_dir: Path):
    for stage, bits in trace.items():
        img = Image.fromarray(bits.astype(np.uint8) * 255).convert("1")
        img.save(trace_dir / f"{frame_id:06d}_{stage}.png", format="PNG")


def build_index(manifest_path, config_path=None, thumbs_dir=None,
                trace_dir=None, match=None, title=None) -> dict:
    """Run the full pipeline for one video; returns the index document."""
    cfg = load_config(config_path)
    if match is None:
        match = lambda a, b, media: match_pair(a, b, media, cfg).accepted
    entries = load_manifest(manifest_path)
    thumbs = Path(thumbs_dir) if thumbs_dir else None
    traces = Path(trace_dir) if trace_dir else None
    if thumbs:
        thumbs.mkdir(parents=True, exist_ok=True)
    if traces:
        traces.mkdir(parents=True, exist_ok=True)

    frame_rows = []
    cluster_input = []
    for entry in entries:
        row = {"frame_id": entry.frame_id, "timestamp_ms": entry.timestamp_ms,
               "media_type": None, "topic_label": None, "thumbnail_path": None}
        try:
            raster = load_frame(entry)
        except (DecodeError, DimensionError) as exc:
            row["media_type"] = "error"
            row["reason"] = str(exc)
            cluster_input.append((entry.frame_id, None, None))
            frame_rows.append(row)
            continue
        media = classify(raster, entry.external_label, cfg)
        row["media_type"] = media.value
        if thumbs:
            row["thumbnail_path"] = _thumbnail(raster, entry.frame_id, thumbs)
        frame_content = None
        cluster_media = media
        try:
            if media is MediaType.BOARD:
                frame_content, trace = content_filter.extract_board_content(
                    raster, cfg, want_trace=traces is not None)
            elif media is MediaType.SHEET:
                frame_content, trace = content_filter.extract_sheet_content(
                    raster, cfg, want_trace=traces is not None)
            else:
                trace = None
            if traces and trace:
                _dump_trace(trace, entry.frame_id, traces)
        except (NoBoardFound, NoSheetFound) as exc:
            row["reason"] = str(exc)
            cluster_media = None
        cluster_input.append((entry.frame_id, cluster_media, frame_content))
        frame_rows.append(row)

    result = cluster_frames(cluster_input, match)
    labels = dict(result.frame_labels)
    for row in frame_rows:
        row["topic_label"] = labels[row["frame_id"]]

    positions = {row["frame_id"]: i for i, row in enumerate(frame_rows)}
    timestamps = {row["frame_id"]: row["timestamp_ms"] for row in frame_rows}
    topic_rows = []
    for topic in sorted(result.topics, key=lambda t: t.most_recent_frame):
        pos = [positions[fid] for fid in topic.frame_ids]
        topic_rows.append({
            "label": topic.label,
            "media_type": topic.media.value,
            "frame_ids": list(topic.frame_ids),
            "first_timestamp_ms": timestamps[topic.frame_ids[0]],
            "last_timestamp_ms": timestamps[topic.frame_ids[-1]],
            "contiguous": pos == list(range(pos[0], pos[-1] + 1)),
        })

    duration = entries[-1].timestamp_ms if entries else 0
    return {
        "schema": SCHEMA_VERSION,
        "video": {
            "title": title or Path(manifest_path).stem,
            "duration_ms": duration,
        },
        "frames": frame_rows,
        "topics": topic_rows,
        "runs": encode_runs(result.frame_labels),
    }


def write_index(idx: dict, out_path) -> None:
    """Write the index as canonical JSON, atomically."""
    out_path = Path(out_path)
    payload = json.dumps(idx, sort_keys=True, indent=2,
                         ensure_ascii=False) + "\n"
    tmp_name = None
    try:
        fd, tmp_name = tempfile.mkstemp(dir=out_path.parent,
                                        prefix=out_path.name, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(payload)
        os.replace(tmp_name, out_path)
        tmp_name = None
    except OSError as exc:
        raise IoError(f"cannot write index to {out_path}: {exc}") from exc
    finally:
        if tmp_name is not None and os.path.exists(tmp_name):
            os.unlink(tmp_name)


def read_index(path) -> dict:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)
