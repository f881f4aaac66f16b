/** Wire types for the topic index (schema 1) and the viewer state. */

export interface FrameRow {
  frame_id: number;
  timestamp_ms: number;
  media_type: string;
  topic_label: string;
  thumbnail_path: string | null;
  reason?: string;
}

export interface TopicRow {
  label: string;
  media_type: string;
  frame_ids: number[];
  first_timestamp_ms: number;
  last_timestamp_ms: number;
  contiguous: boolean;
}

export interface TopicIndex {
  schema: number;
  video: { title: string; duration_ms: number };
  frames: FrameRow[];
  topics: TopicRow[];
  runs: string;
}

/** All interaction state; rendering is a pure function of (index, state). */
export interface ViewState {
  selectedTopic: string | null;
  magnifiedFrame: number | null;
  videoPositionMs: number | null;
}

export const initialState: ViewState = {
  selectedTopic: null,
  magnifiedFrame: null,
  videoPositionMs: null,
};
