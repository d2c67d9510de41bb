/** Shared view state and the pure transitions the panels coordinate through.
 *
 * Everything here is synchronous and side-effect free; the store applies
 * these and notifies renderers. Two rules the transitions must never
 * break: the table's row set depends only on the source, the sample seed
 * and the table's own filter controls (hover/brush emphasize, they do not
 * remove rows), and every view draws from the one shared sample.
 */

import { FeatureAxis, RecommendationRow, featureValue } from "./types.js";

export interface BrushState {
  /** Asset types the brush applies to; empty set means all types. */
  assetTypes: string[];
  /** Closed probability interval, inside [0, 1]. */
  lo: number;
  hi: number;
}

export interface TableControls {
  sortColumn: keyof RecommendationRow;
  sortAscending: boolean;
  /** Substring match on the destination id; "" keeps everything. */
  destinationFilter: string;
  hiddenColumns: string[];
}

export interface ViewState {
  source: string | null;
  sampleSeed: number | null;
  sample: RecommendationRow[];
  hovered: string | null;
  brush: BrushState | null;
  scatterX: FeatureAxis;
  rankFeature: FeatureAxis;
  table: TableControls;
  /** destination id -> stars, for the current source + model version. */
  stars: Record<string, number>;
}

export function initialState(): ViewState {
  return {
    source: null,
    sampleSeed: null,
    sample: [],
    hovered: null,
    brush: null,
    scatterX: "degree",
    rankFeature: "hop_distance",
    table: {
      sortColumn: "probability",
      sortAscending: false,
      destinationFilter: "",
      hiddenColumns: [],
    },
    stars: {},
  };
}

// -- transitions -----------------------------------------------------------

export function setSample(
  state: ViewState,
  source: string,
  seed: number,
  rows: RecommendationRow[],
): ViewState {
  // new sample invalidates hover/brush; table controls are kept so a
  // re-draw does not reset the analyst's column setup
  return { ...state, source, sampleSeed: seed, sample: rows, hovered: null, brush: null, stars: {} };
}

export function setHover(state: ViewState, destination: string | null): ViewState {
  if (destination !== null && !state.sample.some((r) => r.destination === destination)) {
    return state;
  }
  return { ...state, hovered: destination };
}

export function setBrush(state: ViewState, brush: BrushState | null): ViewState {
  if (brush !== null) {
    const lo = Math.max(0, Math.min(brush.lo, brush.hi));
    const hi = Math.min(1, Math.max(brush.lo, brush.hi));
    brush = { ...brush, lo, hi };
  }
  return { ...state, brush };
}

export function setScatterX(state: ViewState, axis: FeatureAxis): ViewState {
  return { ...state, scatterX: axis };
}

export function setRankFeature(state: ViewState, axis: FeatureAxis): ViewState {
  return { ...state, rankFeature: axis };
}

export function setTableControls(state: ViewState, patch: Partial<TableControls>): ViewState {
  return { ...state, table: { ...state.table, ...patch } };
}

export function setStars(state: ViewState, destination: string, stars: number): ViewState {
  return { ...state, stars: { ...state.stars, [destination]: stars } };
}

// -- selectors ---------------------------------------------------------------

function brushMatches(brush: BrushState, row: RecommendationRow): boolean {
  if (brush.assetTypes.length && !brush.assetTypes.includes(row.dest_asset_type)) {
    return false;
  }
  return row.probability >= brush.lo && row.probability <= brush.hi;
}

/** Rows the overview scatter and the detail views display. */
export function crossFilteredRows(state: ViewState): RecommendationRow[] {
  if (!state.brush) return state.sample;
  const brush = state.brush;
  return state.sample.filter((r) => brushMatches(brush, r));
}

/** Destination ids the brush covers (table highlight, never a filter). */
export function brushedSet(state: ViewState): Set<string> {
  if (!state.brush) return new Set();
  return new Set(crossFilteredRows(state).map((r) => r.destination));
}

/** Table row set: the sample under the table's own controls, nothing else. */
export function tableRows(state: ViewState): RecommendationRow[] {
  const { sortColumn, sortAscending, destinationFilter } = state.table;
  let rows = state.sample;
  if (destinationFilter) {
    const needle = destinationFilter.toLowerCase();
    rows = rows.filter((r) => r.destination.toLowerCase().includes(needle));
  }
  const dir = sortAscending ? 1 : -1;
  return [...rows].sort((a, b) => {
    const av = a[sortColumn];
    const bv = b[sortColumn];
    if (av < bv) return -dir;
    if (av > bv) return dir;
    return a.destination < b.destination ? -1 : 1;
  });
}

export interface RankPair {
  destination: string;
  probability: number;
  feature: number;
}

/**
 * Probability-attribute pairs for the rank view: descending probability
 * (ties by ascending id); past ten rows only the top and bottom five.
 */
export function rankPairs(state: ViewState): RankPair[] {
  const rows = [...crossFilteredRows(state)].sort(
    (a, b) => b.probability - a.probability || (a.destination < b.destination ? -1 : 1),
  );
  const shown = rows.length <= 10 ? rows : [...rows.slice(0, 5), ...rows.slice(-5)];
  return shown.map((r) => ({
    destination: r.destination,
    probability: r.probability,
    feature: featureValue(r, state.rankFeature),
  }));
}

export interface HistogramBar {
  lo: number;
  hi: number;
  count: number;
}

/** Fixed-width probability histogram over the full sample for one type. */
export function histogram(state: ViewState, assetType: string, bins = 10): HistogramBar[] {
  const bars: HistogramBar[] = [];
  for (let b = 0; b < bins; b++) {
    bars.push({ lo: b / bins, hi: (b + 1) / bins, count: 0 });
  }
  for (const row of state.sample) {
    if (row.dest_asset_type !== assetType) continue;
    const b = Math.min(Math.floor(row.probability * bins), bins - 1);
    bars[b].count += 1;
  }
  return bars;
}
