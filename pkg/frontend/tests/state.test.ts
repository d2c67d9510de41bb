/** State-machine checks for the cross-view coordination rules. */

import { describe, expect, it } from "vitest";

import {
  ViewState,
  brushedSet,
  crossFilteredRows,
  histogram,
  initialState,
  rankPairs,
  setBrush,
  setHover,
  setRankFeature,
  setSample,
  setScatterX,
  setTableControls,
  tableRows,
} from "../src/state.js";
import { sampleRows } from "./helpers.js";

function loaded(n = 24): ViewState {
  return setSample(initialState(), "user-1", 7, sampleRows(n));
}

describe("hover", () => {
  it("never changes the table row set", () => {
    let state = loaded();
    const before = tableRows(state).map((r) => r.destination);
    state = setHover(state, "dest-003");
    expect(tableRows(state).map((r) => r.destination)).toEqual(before);
    state = setHover(state, "dest-011");
    expect(tableRows(state).map((r) => r.destination)).toEqual(before);
  });

  it("un-hover restores the exact pre-hover state", () => {
    const before = loaded();
    const after = setHover(setHover(before, "dest-001"), null);
    expect(after).toEqual(before);
  });

  it("ignores destinations outside the sample", () => {
    const state = loaded();
    expect(setHover(state, "no-such-node")).toBe(state);
  });

  it("is origin-independent: same destination, same state", () => {
    const state = loaded();
    const fromTable = setHover(state, "dest-002");
    const fromScatter = setHover(state, "dest-002");
    expect(fromScatter).toEqual(fromTable);
  });
});

describe("brush", () => {
  it("cross-filters the scatter/detail rows", () => {
    const state = setBrush(loaded(), { assetTypes: ["table"], lo: 0.0, hi: 0.5 });
    const rows = crossFilteredRows(state);
    expect(rows.length).toBeGreaterThan(0);
    expect(rows.length).toBeLessThan(state.sample.length);
    for (const r of rows) {
      expect(r.dest_asset_type).toBe("table");
      expect(r.probability).toBeGreaterThanOrEqual(0);
      expect(r.probability).toBeLessThanOrEqual(0.5);
    }
  });

  it("highlights table rows without removing any", () => {
    const plain = loaded();
    const brushed = setBrush(plain, { assetTypes: [], lo: 0.4, hi: 0.6 });
    expect(tableRows(brushed)).toEqual(tableRows(plain));
    const marked = brushedSet(brushed);
    expect(marked.size).toBeGreaterThan(0);
    expect(marked.size).toBeLessThan(plain.sample.length);
  });

  it("clearing restores the full sample without refetching", () => {
    const before = loaded();
    const after = setBrush(setBrush(before, { assetTypes: ["user"], lo: 0, hi: 1 }), null);
    expect(after).toEqual(before);
    expect(crossFilteredRows(after)).toBe(after.sample);
  });

  it("clamps the interval into [0, 1] and orders the ends", () => {
    const state = setBrush(loaded(), { assetTypes: [], lo: 1.4, hi: -0.2 });
    expect(state.brush).toMatchObject({ lo: 0, hi: 1 });
  });

  it("empty type set means every type", () => {
    const state = setBrush(loaded(), { assetTypes: [], lo: 0, hi: 1 });
    expect(crossFilteredRows(state)).toHaveLength(state.sample.length);
  });
});

describe("rank pairs", () => {
  it("shows min(10, filtered) pairs: top and bottom five past ten", () => {
    const state = loaded(24); // 24 filtered rows
    const pairs = rankPairs(state);
    expect(pairs).toHaveLength(10);
    const sorted = [...state.sample].sort((a, b) => b.probability - a.probability);
    expect(pairs.slice(0, 5).map((p) => p.destination)).toEqual(
      sorted.slice(0, 5).map((r) => r.destination),
    );
    expect(pairs.slice(5).map((p) => p.destination)).toEqual(
      sorted.slice(-5).map((r) => r.destination),
    );
  });

  it("keeps everything at ten rows or fewer, no duplication", () => {
    for (const n of [1, 5, 9, 10]) {
      const pairs = rankPairs(loaded(n));
      expect(pairs).toHaveLength(n);
      expect(new Set(pairs.map((p) => p.destination)).size).toBe(n);
    }
  });

  it("orders by probability descending, ties by ascending id", () => {
    let state = initialState();
    state = setSample(state, "user-1", 0, [
      ...sampleRows(4).map((r) => ({ ...r, probability: 0.5 })),
    ]);
    const pairs = rankPairs(state);
    expect(pairs.map((p) => p.destination)).toEqual([
      "dest-000",
      "dest-001",
      "dest-002",
      "dest-003",
    ]);
  });

  it("respects the brush", () => {
    const state = setBrush(loaded(24), { assetTypes: [], lo: 0.0, hi: 0.3 });
    const pairs = rankPairs(state);
    expect(pairs.length).toBe(Math.min(10, crossFilteredRows(state).length));
    for (const p of pairs) expect(p.probability).toBeLessThanOrEqual(0.3);
  });

  it("switching the rank feature changes values, not membership", () => {
    const state = loaded(24);
    const hops = rankPairs(state);
    const byDegree = rankPairs(setRankFeature(state, "degree"));
    expect(byDegree.map((p) => p.destination)).toEqual(hops.map((p) => p.destination));
    expect(byDegree.map((p) => p.feature)).not.toEqual(hops.map((p) => p.feature));
  });
});

describe("table controls", () => {
  it("filtering to one destination leaves a single row", () => {
    const state = setTableControls(loaded(), { destinationFilter: "dest-004" });
    const rows = tableRows(state);
    expect(rows).toHaveLength(1);
    expect(rows[0].destination).toBe("dest-004");
  });

  it("sorting does not depend on hover or brush", () => {
    let state = setTableControls(loaded(), { sortColumn: "dest_degree", sortAscending: true });
    const order = tableRows(state).map((r) => r.destination);
    state = setHover(state, "dest-001");
    state = setBrush(state, { assetTypes: ["table"], lo: 0, hi: 0.4 });
    expect(tableRows(state).map((r) => r.destination)).toEqual(order);
  });
});

describe("axis swap", () => {
  it("changes only the x encoding of the state", () => {
    const before = loaded();
    const after = setScatterX(before, "centrality");
    expect(after.scatterX).toBe("centrality");
    expect({ ...after, scatterX: before.scatterX }).toEqual(before);
  });
});

describe("histogram", () => {
  it("bins the full sample regardless of brush", () => {
    const plain = loaded(24);
    const brushed = setBrush(plain, { assetTypes: ["table"], lo: 0, hi: 0.1 });
    for (const t of ["user", "table", "workbook"]) {
      expect(histogram(brushed, t)).toEqual(histogram(plain, t));
    }
    const total = META_TYPES.map((t) => histogram(plain, t))
      .flat()
      .reduce((acc, bar) => acc + bar.count, 0);
    expect(total).toBe(plain.sample.length);
  });
});

const META_TYPES = ["user", "database", "table", "workflow", "workbook", "curated-source"];
