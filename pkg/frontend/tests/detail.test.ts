/** Detail panel: rank view cardinality and the projection markers. */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderDetail } from "../src/render/detail.js";
import { Store } from "../src/store.js";
import { flush, makeStubApi, sampleRows } from "./helpers.js";

function setup(n: number) {
  const stub = makeStubApi(sampleRows(n));
  const store = new Store(new ApiClient(stub.fetchImpl));
  const container = document.createElement("div");
  document.body.replaceChildren(container);
  store.subscribe(() => renderDetail(container, store));
  return { store, container, stub };
}

async function load(store: Store) {
  await store.init();
  await store.selectSource("user-1", 0);
  await flush();
}

beforeEach(() => document.body.replaceChildren());

describe("rank view", () => {
  it("12 filtered rows -> exactly 10 pairs plus a gap marker", async () => {
    const { store, container } = setup(12);
    await load(store);
    expect(container.querySelectorAll("#rank-view .rank-pair")).toHaveLength(10);
    expect(container.querySelector("#rank-view .rank-gap")?.textContent).toContain("2 hidden");
  });

  it("shows all pairs when ten or fewer", async () => {
    const { store, container } = setup(7);
    await load(store);
    expect(container.querySelectorAll("#rank-view .rank-pair")).toHaveLength(7);
    expect(container.querySelector("#rank-view .rank-gap")).toBeNull();
  });

  it("brushing narrows the pairs", async () => {
    const { store, container } = setup(30);
    await load(store);
    store.brush({ assetTypes: [], lo: 0.0, hi: 0.2 });
    const pairs = container.querySelectorAll("#rank-view .rank-pair");
    expect(pairs.length).toBeLessThanOrEqual(10);
    expect(pairs.length).toBeGreaterThan(0);
  });

  it("every pair draws one probability and one attribute rectangle", async () => {
    const { store, container } = setup(9);
    await load(store);
    for (const pair of container.querySelectorAll("#rank-view .rank-pair")) {
      expect(pair.querySelectorAll(".rank-prob")).toHaveLength(1);
      expect(pair.querySelectorAll(".rank-feature")).toHaveLength(1);
    }
  });
});

describe("projection", () => {
  it("draws the source as a diamond and destinations as circles", async () => {
    const { store, container } = setup(8);
    await load(store);
    expect(container.querySelectorAll("#projection .proj-source")).toHaveLength(1);
    expect(container.querySelectorAll("#projection .proj-point")).toHaveLength(8);
  });

  it("a fetch failure stays local to the projection view", async () => {
    const { store, container, stub } = setup(8);
    stub.state.failProjection = true;
    await load(store);
    expect(container.querySelector("#projection-error")).not.toBeNull();
    // the rank view still renders from the shared sample
    expect(container.querySelectorAll("#rank-view .rank-pair").length).toBeGreaterThan(0);
  });

  it("brush filters projection points but never hides the source", async () => {
    const { store, container } = setup(20);
    await load(store);
    store.brush({ assetTypes: [], lo: 0.9, hi: 1.0 });
    const shown = container.querySelectorAll("#projection .proj-point").length;
    expect(shown).toBeLessThan(20);
    expect(container.querySelectorAll("#projection .proj-source")).toHaveLength(1);
  });

  it("hover from the projection matches hover from anywhere else", async () => {
    const { store, container } = setup(8);
    await load(store);
    const dot = container.querySelector('#projection .proj-point[data-id="dest-003"]') as SVGElement;
    dot.dispatchEvent(new Event("pointerenter"));
    expect(store.state.hovered).toBe("dest-003");
    expect(
      container
        .querySelector('#projection .proj-point[data-id="dest-003"]')
        ?.classList.contains("emphasized"),
    ).toBe(true);
  });
});
