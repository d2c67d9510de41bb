/** Data panel: node selector, sampled recommendation table, star ratings.
 *
 * Hover and brush only add emphasis classes here; the row set itself is
 * driven by the table's own sort/filter/column controls.
 */

import { brushedSet, tableRows } from "../state.js";
import { Store } from "../store.js";
import { RecommendationRow } from "../types.js";
import { el, formatNumber } from "./common.js";

interface Column {
  key: keyof RecommendationRow;
  label: string;
}

const COLUMNS: Column[] = [
  { key: "destination", label: "destination" },
  { key: "probability", label: "probability" },
  { key: "dest_asset_type", label: "type" },
  { key: "dest_degree", label: "degree" },
  { key: "dest_centrality", label: "centrality" },
  { key: "dest_community", label: "community" },
  { key: "same_community", label: "same comm." },
  { key: "hop_distance", label: "hops" },
  { key: "existing_edge", label: "existing" },
];

const MAX_STARS = 5;

function starCell(store: Store, destination: string): HTMLElement {
  const current = store.state.stars[destination] ?? 0;
  const cell = el("td", { class: "stars", "data-dest": destination });
  for (let s = 1; s <= MAX_STARS; s++) {
    const btn = el("button", { class: "star", "data-stars": s }, s <= current ? "★" : "☆");
    btn.addEventListener("click", (ev) => {
      ev.stopPropagation();
      void store.rate(destination, s);
    });
    cell.append(btn);
  }
  const failure = store.ratingFailure;
  if (failure && failure.destination === destination) {
    const retry = el("button", { class: "retry", title: failure.message }, "retry");
    retry.addEventListener("click", (ev) => {
      ev.stopPropagation();
      void store.rate(failure.destination, failure.stars);
    });
    cell.append(retry);
  }
  return cell;
}

export function renderDataPanel(container: HTMLElement, store: Store): void {
  const state = store.state;
  const panel = el("div", { class: "data-panel" });

  // -- selector row
  const sourceInput = el("input", {
    id: "source-input",
    placeholder: "source node id",
    value: state.source ?? "",
  });
  const loadBtn = el("button", { id: "load-source" }, "load");
  loadBtn.addEventListener("click", () => {
    if (sourceInput.value) void store.selectSource(sourceInput.value);
  });
  sourceInput.addEventListener("keydown", (ev) => {
    if (ev.key === "Enter" && sourceInput.value) void store.selectSource(sourceInput.value);
  });
  const redraw = el("button", { id: "draw-sample" }, "draw new sample");
  redraw.addEventListener("click", () => void store.drawNewSample());
  const seedNote = el(
    "span",
    { class: "seed-note" },
    state.sampleSeed === null ? "" : `seed ${state.sampleSeed}`,
  );
  panel.append(el("div", { class: "controls" }, sourceInput, loadBtn, redraw, seedNote));

  if (store.sampleError) {
    const retry = el("button", { class: "retry" }, "retry");
    retry.addEventListener("click", () => {
      if (state.source ?? sourceInput.value) {
        void store.selectSource(state.source ?? sourceInput.value, state.sampleSeed ?? 0);
      }
    });
    panel.append(el("div", { class: "error" }, `sample failed: ${store.sampleError} `, retry));
  }

  if (!state.sample.length) {
    panel.append(el("p", { class: "empty-state" }, "Pick a source node to sample recommendations."));
    container.replaceChildren(panel);
    return;
  }

  // -- table-local filter
  const filter = el("input", {
    id: "destination-filter",
    placeholder: "filter destination…",
    value: state.table.destinationFilter,
  });
  filter.addEventListener("input", () => {
    store.tableControls({ destinationFilter: filter.value });
  });
  const filterRow = el("div", { class: "controls" }, filter);
  if (state.table.hiddenColumns.length) {
    const restore = el("button", { id: "restore-columns" }, "restore columns");
    restore.addEventListener("click", () => store.tableControls({ hiddenColumns: [] }));
    filterRow.append(restore);
  }
  panel.append(filterRow);

  // -- table
  const visible = COLUMNS.filter((c) => !state.table.hiddenColumns.includes(c.key));
  const headRow = el("tr");
  for (const col of visible) {
    const sortMark =
      state.table.sortColumn === col.key ? (state.table.sortAscending ? " ▲" : " ▼") : "";
    const th = el("th", { "data-column": col.key }, `${col.label}${sortMark}`);
    th.addEventListener("click", () => {
      const ascending = state.table.sortColumn === col.key ? !state.table.sortAscending : false;
      store.tableControls({ sortColumn: col.key, sortAscending: ascending });
    });
    const remove = el("button", { class: "remove-column", title: "remove column" }, "×");
    remove.addEventListener("click", (ev) => {
      ev.stopPropagation();
      store.tableControls({ hiddenColumns: [...state.table.hiddenColumns, col.key] });
    });
    th.append(remove);
    headRow.append(th);
  }
  headRow.append(el("th", {}, "rating"));

  const body = el("tbody");
  const brushed = brushedSet(state);
  for (const row of tableRows(state)) {
    const classes = ["row"];
    if (state.hovered === row.destination) classes.push("emphasized");
    if (brushed.has(row.destination)) classes.push("brushed");
    const tr = el("tr", { class: classes.join(" "), "data-dest": row.destination });
    for (const col of visible) {
      const v = row[col.key];
      tr.append(el("td", {}, typeof v === "number" ? formatNumber(v) : String(v)));
    }
    tr.append(starCell(store, row.destination));
    tr.addEventListener("pointerenter", () => store.hover(row.destination));
    tr.addEventListener("pointerleave", () => store.hover(null));
    body.append(tr);
  }

  panel.append(el("table", { class: "rec-table" }, el("thead", {}, headRow), body));
  container.replaceChildren(panel);
}
