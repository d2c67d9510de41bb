/** Overview panel: per-type probability histograms plus the multi-axis
 * scatter. The y axis of the scatter is always probability; the x axis is
 * whichever feature chip was dropped on it. Dragging across a histogram
 * brushes a probability interval for that asset type.
 */

import { crossFilteredRows, histogram } from "../state.js";
import { Store } from "../store.js";
import { FEATURE_AXES, FeatureAxis, featureValue } from "../types.js";
import { el, extent, scaleLinear, svg, typeColor } from "./common.js";

const HIST_W = 150;
const HIST_H = 64;
const SCATTER_W = 460;
const SCATTER_H = 300;
const PAD = 28;

function renderHistogram(store: Store, assetType: string): HTMLElement {
  const state = store.state;
  const bars = histogram(state, assetType);
  const maxCount = Math.max(1, ...bars.map((b) => b.count));
  const node = svg("svg", {
    class: "histogram",
    width: HIST_W,
    height: HIST_H,
    viewBox: `0 0 ${HIST_W} ${HIST_H}`,
    "data-type": assetType,
  });
  const y = scaleLinear(0, maxCount, HIST_H - 14, 2);
  for (const bar of bars) {
    const h = HIST_H - 14 - y(bar.count);
    node.append(
      svg("rect", {
        class: "hist-bar",
        x: bar.lo * HIST_W + 1,
        y: y(bar.count),
        width: HIST_W / bars.length - 2,
        height: Math.max(h, 0),
        fill: typeColor(store.meta?.asset_types ?? [], assetType),
      }),
    );
  }
  const brush = state.brush;
  if (brush && (!brush.assetTypes.length || brush.assetTypes.includes(assetType))) {
    node.append(
      svg("rect", {
        class: "brush-overlay",
        x: brush.lo * HIST_W,
        y: 0,
        width: (brush.hi - brush.lo) * HIST_W,
        height: HIST_H - 14,
      }),
    );
  }
  node.append(
    svg("text", { x: 2, y: HIST_H - 3, class: "hist-label" }, assetType),
  );

  // drag to brush this type's probability range; pixel -> [0,1] via width
  let dragStart: number | null = null;
  const toProb = (ev: PointerEvent) => {
    const rect = (node as unknown as Element).getBoundingClientRect();
    const width = rect.width || HIST_W;
    const x = rect.width ? ev.clientX - rect.left : ev.clientX;
    return Math.max(0, Math.min(1, x / width));
  };
  node.addEventListener("pointerdown", (ev) => {
    dragStart = toProb(ev as PointerEvent);
  });
  node.addEventListener("pointerup", (ev) => {
    if (dragStart === null) return;
    const end = toProb(ev as PointerEvent);
    if (Math.abs(end - dragStart) < 0.01) {
      store.brush(null); // a plain click clears
    } else {
      store.brush({ assetTypes: [assetType], lo: dragStart, hi: end });
    }
    dragStart = null;
  });

  return el("div", { class: "hist-cell" }, node as unknown as Node as HTMLElement);
}

function renderScatter(store: Store): HTMLElement {
  const state = store.state;
  const rows = crossFilteredRows(state);
  const node = svg("svg", {
    id: "scatter",
    width: SCATTER_W,
    height: SCATTER_H,
    viewBox: `0 0 ${SCATTER_W} ${SCATTER_H}`,
    "data-x-axis": state.scatterX,
  });

  // x domain comes from the full sample so brushing never rescales axes
  const [lo, hi] = extent(state.sample.map((r) => featureValue(r, state.scatterX)));
  const x = scaleLinear(lo, hi, PAD, SCATTER_W - 10);
  const y = scaleLinear(0, 1, SCATTER_H - PAD, 10);

  node.append(
    svg("line", { x1: PAD, y1: y(0), x2: SCATTER_W - 10, y2: y(0), class: "axis" }),
    svg("line", { x1: PAD, y1: y(0), x2: PAD, y2: y(1), class: "axis" }),
    svg("text", { x: 4, y: 12, class: "axis-label" }, "probability"),
  );

  for (const row of rows) {
    const emphasized = state.hovered === row.destination;
    const point = svg("circle", {
      class: emphasized ? "point emphasized" : "point",
      cx: x(featureValue(row, state.scatterX)),
      cy: y(row.probability),
      r: emphasized ? 7 : 3.5,
      fill: typeColor(store.meta?.asset_types ?? [], row.dest_asset_type),
      "data-dest": row.destination,
    });
    point.addEventListener("pointerenter", () => store.hover(row.destination));
    point.addEventListener("pointerleave", () => store.hover(null));
    node.append(point);
  }

  // drop target for the axis chips
  const dropZone = el("div", { id: "x-axis-drop", class: "axis-drop" }, `x: ${state.scatterX}`);
  dropZone.addEventListener("dragover", (ev) => ev.preventDefault());
  dropZone.addEventListener("drop", (ev) => {
    ev.preventDefault();
    const axis = ev.dataTransfer?.getData("text/plain") ?? "";
    if ((FEATURE_AXES as string[]).includes(axis)) store.scatterX(axis as FeatureAxis);
  });

  const chips = el("div", { class: "axis-chips" });
  for (const axis of FEATURE_AXES) {
    const chip = el(
      "span",
      {
        class: axis === state.scatterX ? "chip active" : "chip",
        draggable: "true",
        "data-axis": axis,
      },
      axis,
    );
    chip.addEventListener("dragstart", (ev) => {
      ev.dataTransfer?.setData("text/plain", axis);
    });
    chips.append(chip);
  }

  return el("div", { class: "scatter-wrap" }, node as unknown as HTMLElement, dropZone, chips);
}

export function renderOverview(container: HTMLElement, store: Store): void {
  const state = store.state;
  const panel = el("div", { class: "overview-panel" });

  if (!state.sample.length) {
    panel.append(el("p", { class: "empty-state" }, "No sample loaded."));
    container.replaceChildren(panel);
    return;
  }

  const hists = el("div", { class: "histograms" });
  for (const assetType of store.meta?.asset_types ?? []) {
    hists.append(renderHistogram(store, assetType));
  }
  panel.append(hists);

  if (state.brush) {
    const clear = el("button", { id: "clear-brush" }, "clear brush");
    clear.addEventListener("click", () => store.brush(null));
    const kinds = state.brush.assetTypes.join(", ") || "all types";
    panel.append(
      el(
        "div",
        { class: "brush-note" },
        `brush: ${kinds} ∈ [${state.brush.lo.toFixed(2)}, ${state.brush.hi.toFixed(2)}] `,
        clear,
      ),
    );
  }

  panel.append(renderScatter(store));
  container.replaceChildren(panel);
}
