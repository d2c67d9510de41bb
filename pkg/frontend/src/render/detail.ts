/** Detail panel: probability-attribute rank view and the embedding
 * projection. Both honor the brush; the projection keeps the source
 * visible regardless (diamond marker, circles for destinations).
 */

import { crossFilteredRows, rankPairs } from "../state.js";
import { Store } from "../store.js";
import { FEATURE_AXES, FeatureAxis } from "../types.js";
import { el, extent, formatNumber, ramp, scaleLinear, svg, typeColor } from "./common.js";

const RANK_W = 300;
const ROW_H = 18;
const PROJ_W = 320;
const PROJ_H = 260;

function renderRank(store: Store): HTMLElement {
  const state = store.state;
  const pairs = rankPairs(state);
  const total = crossFilteredRows(state).length;

  const select = el("select", { id: "rank-feature" });
  for (const axis of FEATURE_AXES) {
    const opt = el("option", { value: axis }, axis);
    if (axis === state.rankFeature) opt.setAttribute("selected", "selected");
    select.append(opt);
  }
  select.addEventListener("change", () => store.rankFeature(select.value as FeatureAxis));

  const [flo, fhi] = extent(pairs.map((p) => p.feature));
  const height = pairs.length * ROW_H + (total > 10 ? ROW_H : 0) + 4;
  const node = svg("svg", {
    id: "rank-view",
    width: RANK_W,
    height,
    viewBox: `0 0 ${RANK_W} ${height}`,
  });

  const half = RANK_W / 2 - 60;
  let yPos = 2;
  pairs.forEach((pair, i) => {
    if (total > 10 && i === 5) {
      node.append(
        svg("text", { x: RANK_W / 2, y: yPos + 12, class: "rank-gap" }, `⋯ ${total - 10} hidden ⋯`),
      );
      yPos += ROW_H;
    }
    // two divergent single-hue ramps, darker = higher value
    const pScale = pair.probability;
    const fScale = fhi === flo ? 0.5 : (pair.feature - flo) / (fhi - flo);
    const row = svg("g", { class: "rank-pair", "data-dest": pair.destination });
    row.append(
      svg("rect", {
        x: 0,
        y: yPos,
        width: half,
        height: ROW_H - 3,
        fill: ramp(pScale, 230),
        class: "rank-prob",
      }),
      svg("rect", {
        x: half + 2,
        y: yPos,
        width: half,
        height: ROW_H - 3,
        fill: ramp(fScale, 25),
        class: "rank-feature",
      }),
      svg(
        "text",
        { x: RANK_W - 114, y: yPos + ROW_H - 7, class: "rank-label" },
        `${pair.destination} ${formatNumber(pair.probability)}`,
      ),
    );
    node.append(row);
    yPos += ROW_H;
  });

  return el(
    "div",
    { class: "rank-wrap" },
    el("div", { class: "controls" }, el("label", {}, "attribute "), select),
    node as unknown as HTMLElement,
  );
}

function renderProjection(store: Store): HTMLElement {
  const state = store.state;
  const wrap = el("div", { class: "projection-wrap" });
  if (store.projectionError) {
    wrap.append(el("div", { class: "error", id: "projection-error" }, store.projectionError));
    return wrap;
  }
  const points = store.projection;
  if (!points) {
    wrap.append(el("div", { class: "empty-state" }, "projection not loaded"));
    return wrap;
  }

  const visible = new Set(crossFilteredRows(state).map((r) => r.destination));
  const shown = points.filter((p) => p.id === state.source || visible.has(p.id));
  const x = scaleLinear(...extent(points.map((p) => p.x)), 10, PROJ_W - 10);
  const y = scaleLinear(...extent(points.map((p) => p.y)), PROJ_H - 10, 10);

  const node = svg("svg", {
    id: "projection",
    width: PROJ_W,
    height: PROJ_H,
    viewBox: `0 0 ${PROJ_W} ${PROJ_H}`,
  });
  for (const p of shown) {
    const color = typeColor(store.meta?.asset_types ?? [], p.asset_type);
    if (p.id === state.source) {
      const cx = x(p.x);
      const cy = y(p.y);
      node.append(
        svg("path", {
          class: "proj-source",
          d: `M ${cx} ${cy - 7} L ${cx + 7} ${cy} L ${cx} ${cy + 7} L ${cx - 7} ${cy} Z`,
          fill: color,
          "data-id": p.id,
        }),
      );
      continue;
    }
    const emphasized = state.hovered === p.id;
    const dot = svg("circle", {
      class: emphasized ? "proj-point emphasized" : "proj-point",
      cx: x(p.x),
      cy: y(p.y),
      r: emphasized ? 8 : 4,
      fill: color,
      "data-id": p.id,
    });
    dot.addEventListener("pointerenter", () => store.hover(p.id));
    dot.addEventListener("pointerleave", () => store.hover(null));
    node.append(dot);
  }
  wrap.append(node as unknown as HTMLElement);
  return wrap;
}

export function renderDetail(container: HTMLElement, store: Store): void {
  const panel = el("div", { class: "detail-panel" });
  if (!store.state.sample.length) {
    panel.append(el("p", { class: "empty-state" }, "No sample loaded."));
    container.replaceChildren(panel);
    return;
  }
  panel.append(renderRank(store), renderProjection(store));
  container.replaceChildren(panel);
}
