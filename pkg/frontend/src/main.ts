/** DOM bootstrap: fetch the index, materialize the pure view models. */

import {
  clickThumbnail,
  clickTopic,
  playerSeconds,
  renderKeyFrames,
  renderLegend,
  renderTopological,
  SchemaMismatch,
  validateIndex,
} from "./render.js";
import { initialState, type TopicIndex, type ViewState } from "./types.js";

const PLACEHOLDER =
  "data:image/svg+xml," +
  encodeURIComponent(
    '<svg xmlns="http://www.w3.org/2000/svg" width="160" height="120">' +
    '<rect width="160" height="120" fill="#eee"/>' +
    '<text x="80" y="64" text-anchor="middle" fill="#999">no image</text>' +
    "</svg>",
  );

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function draw(root: HTMLElement, index: TopicIndex, state: ViewState,
              video: HTMLVideoElement | null): void {
  root.replaceChildren();

  const legend = el("div", "legend");
  for (const entry of renderLegend(index)) {
    const item = el("span", "legend-item", `${entry.icon} ${entry.mediaType}`);
    item.style.color = entry.color;
    legend.append(item);
  }
  root.append(legend);

  const rerender = (next: ViewState) => {
    state = next;
    const seconds = playerSeconds(state);
    if (video && seconds !== null) {
      video.currentTime = seconds;
    }
    draw(root, index, state, video);
  };

  const topo = renderTopological(index, state);
  const topoRow = el("div", "topological");
  if (topo.empty) {
    topoRow.append(el("p", "empty-state", "No frames in this index."));
  }
  for (const icon of topo.icons) {
    const node = el(
      "button",
      "frame-icon" + (icon.highlighted ? " highlighted" : ""),
      icon.icon,
    );
    node.style.background = icon.color;
    node.title = `frame ${icon.frameId} (${icon.mediaType})`;
    node.addEventListener("click", () =>
      rerender(clickTopic(state, icon.topicLabel)));
    topoRow.append(node);
  }
  for (const connector of topo.connectors) {
    topoRow.append(el(
      "span",
      "connector" + (connector.tapering ? " tapering" : ""),
      "",
    ));
  }
  root.append(topoRow);

  const frames = renderKeyFrames(index, state);
  const frameRow = el("div", "keyframes");
  for (const column of frames.columns) {
    const cell = el(
      "figure",
      "keyframe" + (column.highlighted ? " highlighted" : "")
        + (column.magnified ? " magnified" : ""),
    );
    const img = document.createElement("img");
    img.src = column.thumbnail ?? PLACEHOLDER;
    img.alt = `frame ${column.frameId}`;
    img.addEventListener("click", () =>
      rerender(clickThumbnail(state, index, column.frameId)));
    cell.append(img, el("figcaption", "", column.topicLabel));
    frameRow.append(cell);
  }
  root.append(frameRow);
}

export async function boot(root: HTMLElement): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const videoUrl = params.get("video");
  let video: HTMLVideoElement | null = null;
  if (videoUrl) {
    video = document.createElement("video");
    video.src = videoUrl;
    video.controls = true;
    root.before(video);
  }
  root.textContent = "Loading index…";
  try {
    const response = await fetch(params.get("index") ?? "index.json");
    const index = validateIndex(await response.json());
    draw(root, index, initialState, video);
  } catch (err) {
    const banner = el(
      "p",
      "error-banner",
      err instanceof SchemaMismatch
        ? `Incompatible index: ${err.message}`
        : `Failed to load index: ${err}`,
    );
    root.replaceChildren(banner);
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
