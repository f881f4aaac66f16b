/** Pure render core: (index, state) -> plain view-model objects.
 *
 * The DOM layer (main.ts) only materializes these structures, so every
 * visual invariant is testable without a browser.
 */

import type { FrameRow, TopicIndex, ViewState } from "./types.js";

export interface MediaStyle {
  color: string;
  icon: string;
}

/** Color-blind-safe hue per media type, plus a distinguishing glyph. */
export const MEDIA_STYLES: Record<string, MediaStyle> = {
  board: { color: "#117733", icon: "▦" },
  sheet: { color: "#ddcc77", icon: "▤" },
  ppt: { color: "#332288", icon: "▧" },
  computer: { color: "#88ccee", icon: "▣" },
  podium: { color: "#cc6677", icon: "♟" },
  illustration: { color: "#aa4499", icon: "✦" },
  error: { color: "#888888", icon: "✕" },
};

export function mediaStyle(mediaType: string): MediaStyle {
  return MEDIA_STYLES[mediaType] ?? MEDIA_STYLES["error"];
}

export class SchemaMismatch extends Error {}

/** Accept only schema-1 documents with the fields the views rely on. */
export function validateIndex(doc: unknown): TopicIndex {
  const idx = doc as TopicIndex;
  if (!idx || typeof idx !== "object" || idx.schema !== 1) {
    throw new SchemaMismatch(
      `unsupported index schema: ${idx && (idx as TopicIndex).schema}`,
    );
  }
  if (!Array.isArray(idx.frames) || !Array.isArray(idx.topics)) {
    throw new SchemaMismatch("index is missing frames or topics");
  }
  return idx;
}

export interface IconNode {
  frameId: number;
  mediaType: string;
  color: string;
  icon: string;
  topicLabel: string;
  highlighted: boolean;
}

export interface Connector {
  topicLabel: string;
  fromFrame: number;
  toFrame: number;
  /** True when the joined frames are not temporally adjacent; rendered
   * as a tapering line per the temporal-discontinuity convention. */
  tapering: boolean;
}

export interface TopologicalView {
  icons: IconNode[];
  connectors: Connector[];
  empty: boolean;
}

export interface ThumbnailColumn {
  frameId: number;
  thumbnail: string | null;
  topicLabel: string;
  highlighted: boolean;
  magnified: boolean;
}

export interface KeyFrameView {
  columns: ThumbnailColumn[];
  empty: boolean;
}

export interface LegendEntry {
  mediaType: string;
  color: string;
  icon: string;
}

function highlighted(frame: FrameRow, state: ViewState): boolean {
  return state.selectedTopic !== null
    && frame.topic_label === state.selectedTopic;
}

/** View A: one icon per frame in temporal order, topic connectors. */
export function renderTopological(
  index: TopicIndex, state: ViewState,
): TopologicalView {
  const icons = index.frames.map((frame) => ({
    frameId: frame.frame_id,
    mediaType: frame.media_type,
    color: mediaStyle(frame.media_type).color,
    icon: mediaStyle(frame.media_type).icon,
    topicLabel: frame.topic_label,
    highlighted: highlighted(frame, state),
  }));
  const position = new Map(
    index.frames.map((frame, i) => [frame.frame_id, i]),
  );
  const connectors: Connector[] = [];
  for (const topic of index.topics) {
    for (let i = 1; i < topic.frame_ids.length; i++) {
      const from = topic.frame_ids[i - 1];
      const to = topic.frame_ids[i];
      connectors.push({
        topicLabel: topic.label,
        fromFrame: from,
        toFrame: to,
        tapering: position.get(to)! - position.get(from)! > 1,
      });
    }
  }
  return { icons, connectors, empty: icons.length === 0 };
}

/** View B: thumbnail columns aligned under the icons of view A. */
export function renderKeyFrames(
  index: TopicIndex, state: ViewState,
): KeyFrameView {
  const columns = index.frames.map((frame) => ({
    frameId: frame.frame_id,
    thumbnail: frame.thumbnail_path,
    topicLabel: frame.topic_label,
    highlighted: highlighted(frame, state),
    magnified: state.magnifiedFrame === frame.frame_id,
  }));
  return { columns, empty: columns.length === 0 };
}

/** Exactly the media types present in the index, in first-seen order. */
export function renderLegend(index: TopicIndex): LegendEntry[] {
  const seen: string[] = [];
  for (const frame of index.frames) {
    if (!seen.includes(frame.media_type)) {
      seen.push(frame.media_type);
    }
  }
  return seen.map((mediaType) => ({ mediaType, ...mediaStyle(mediaType) }));
}

// ---------------------------------------------------------------- transitions

/** Topic icon click: select the topic, or deselect on a second click. */
export function clickTopic(state: ViewState, label: string): ViewState {
  return {
    ...state,
    selectedTopic: state.selectedTopic === label ? null : label,
  };
}

/** Thumbnail click: magnify and move the player to the frame's time. */
export function clickThumbnail(
  state: ViewState, index: TopicIndex, frameId: number,
): ViewState {
  const frame = index.frames.find((f) => f.frame_id === frameId);
  if (!frame) {
    return state; // dead space is a no-op
  }
  return {
    ...state,
    magnifiedFrame: frameId,
    videoPositionMs: frame.timestamp_ms,
  };
}

/** Player seek position in seconds, as consumed by a media element. */
export function playerSeconds(state: ViewState): number | null {
  return state.videoPositionMs === null ? null : state.videoPositionMs / 1000;
}
