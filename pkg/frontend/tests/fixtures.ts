import type { TopicIndex } from "../src/types.js";

/** 4-frame lecture: board topic A (2 frames), podium, sheet topic B. */
export const smallIndex: TopicIndex = {
  schema: 1,
  video: { title: "frames", duration_ms: 95000 },
  frames: [
    { frame_id: 0, timestamp_ms: 1000, media_type: "board",
      topic_label: "A", thumbnail_path: "thumbs/frame_000000.png" },
    { frame_id: 1, timestamp_ms: 2000, media_type: "board",
      topic_label: "A", thumbnail_path: "thumbs/frame_000001.png" },
    { frame_id: 2, timestamp_ms: 3000, media_type: "podium",
      topic_label: "X", thumbnail_path: "thumbs/frame_000002.png" },
    { frame_id: 7, timestamp_ms: 95000, media_type: "sheet",
      topic_label: "B", thumbnail_path: null },
  ],
  topics: [
    { label: "A", media_type: "board", frame_ids: [0, 1],
      first_timestamp_ms: 1000, last_timestamp_ms: 2000, contiguous: true },
    { label: "B", media_type: "sheet", frame_ids: [7],
      first_timestamp_ms: 95000, last_timestamp_ms: 95000,
      contiguous: true },
  ],
  runs: "A^2 X^1 B^1",
};

/** Topic A returns after an interleaved topic B frame. */
export const splitTopicIndex: TopicIndex = {
  schema: 1,
  video: { title: "split", duration_ms: 3000 },
  frames: [
    { frame_id: 0, timestamp_ms: 1000, media_type: "board",
      topic_label: "A", thumbnail_path: null },
    { frame_id: 1, timestamp_ms: 2000, media_type: "board",
      topic_label: "B", thumbnail_path: null },
    { frame_id: 2, timestamp_ms: 3000, media_type: "board",
      topic_label: "A", thumbnail_path: null },
  ],
  topics: [
    { label: "B", media_type: "board", frame_ids: [1],
      first_timestamp_ms: 2000, last_timestamp_ms: 2000, contiguous: true },
    { label: "A", media_type: "board", frame_ids: [0, 2],
      first_timestamp_ms: 1000, last_timestamp_ms: 3000, contiguous: false },
  ],
  runs: "A^1 B^1 A^1",
};

export const emptyIndex: TopicIndex = {
  schema: 1,
  video: { title: "empty", duration_ms: 0 },
  frames: [],
  topics: [],
  runs: "",
};
