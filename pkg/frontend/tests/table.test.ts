/** Data panel component tests against the stubbed API. */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderDataPanel } from "../src/render/table.js";
import { Store } from "../src/store.js";
import { flush, makeStubApi, sampleRows } from "./helpers.js";

const ROWS = sampleRows(12);

function setup(stub = makeStubApi(ROWS)) {
  const store = new Store(new ApiClient(stub.fetchImpl));
  const container = document.createElement("div");
  document.body.replaceChildren(container);
  store.subscribe(() => renderDataPanel(container, store));
  return { store, container, stub };
}

async function load(store: Store) {
  await store.init();
  await store.selectSource("user-1", 0);
  await flush();
}

function starsShown(container: HTMLElement, dest: string): string {
  const cell = container.querySelector(`td.stars[data-dest="${dest}"]`);
  return [...(cell?.querySelectorAll("button.star") ?? [])].map((b) => b.textContent).join("");
}

beforeEach(() => {
  document.body.replaceChildren();
});

describe("star ratings", () => {
  it("persist through a reload against the same backend", async () => {
    const { store, container, stub } = setup();
    await load(store);

    const cell = container.querySelector('td.stars[data-dest="dest-002"]');
    (cell?.querySelectorAll("button.star")[3] as HTMLButtonElement).click();
    await flush();

    expect(starsShown(container, "dest-002")).toBe("★★★★☆");
    const post = stub.state.calls.find((c) => c.init?.method === "POST");
    expect(post).toBeDefined();
    expect(JSON.parse(String(post?.init?.body))).toMatchObject({
      source: "user-1",
      destination: "dest-002",
      stars: 4,
    });

    // fresh store + fresh DOM, same backend: the rating comes back
    const second = setup(stub);
    await load(second.store);
    expect(starsShown(second.container, "dest-002")).toBe("★★★★☆");
  });

  it("shows an inline retry when the write fails, and the retry works", async () => {
    const { store, container, stub } = setup();
    await load(store);

    stub.state.failPosts = true;
    (container.querySelector('td.stars[data-dest="dest-001"] button.star') as HTMLButtonElement).click();
    await flush();
    const retry = container.querySelector('td.stars[data-dest="dest-001"] button.retry');
    expect(retry).not.toBeNull();
    expect(starsShown(container, "dest-001")).toBe("☆".repeat(5));

    stub.state.failPosts = false;
    (retry as HTMLButtonElement).click();
    await flush();
    expect(starsShown(container, "dest-001")).toBe("★☆☆☆☆");
    expect(container.querySelector("button.retry")).toBeNull();
  });
});

describe("row set independence", () => {
  it("hovering emphasizes a row without changing the row set", async () => {
    const { store, container } = setup();
    await load(store);
    const ids = () => [...container.querySelectorAll("tbody tr")].map((tr) => tr.getAttribute("data-dest"));
    const before = ids();

    const row = container.querySelector('tbody tr[data-dest="dest-005"]') as HTMLElement;
    row.dispatchEvent(new Event("pointerenter"));
    expect(ids()).toEqual(before);
    expect(
      container.querySelector('tbody tr[data-dest="dest-005"]')?.classList.contains("emphasized"),
    ).toBe(true);
  });

  it("brushing highlights matching rows but keeps all of them", async () => {
    const { store, container } = setup();
    await load(store);
    const before = container.querySelectorAll("tbody tr").length;

    store.brush({ assetTypes: [], lo: 0.0, hi: 0.25 });
    expect(container.querySelectorAll("tbody tr").length).toBe(before);
    const brushed = container.querySelectorAll("tbody tr.brushed").length;
    expect(brushed).toBeGreaterThan(0);
    expect(brushed).toBeLessThan(before);
  });

  it("the destination filter is the only thing that drops rows", async () => {
    const { store, container } = setup();
    await load(store);
    const filter = container.querySelector("#destination-filter") as HTMLInputElement;
    filter.value = "dest-007";
    filter.dispatchEvent(new Event("input"));
    const rows = container.querySelectorAll("tbody tr");
    expect(rows).toHaveLength(1);
    expect(rows[0].getAttribute("data-dest")).toBe("dest-007");
  });
});

describe("columns", () => {
  it("can be removed and restored", async () => {
    const { store, container } = setup();
    await load(store);
    const headers = () => [...container.querySelectorAll("thead th")].map((th) => th.getAttribute("data-column"));
    expect(headers()).toContain("dest_degree");

    (container.querySelector('th[data-column="dest_degree"] .remove-column') as HTMLButtonElement).click();
    expect(headers()).not.toContain("dest_degree");

    (container.querySelector("#restore-columns") as HTMLButtonElement).click();
    expect(headers()).toContain("dest_degree");
  });

  it("header click toggles the sort direction", async () => {
    const { store, container } = setup();
    await load(store);
    const probs = () =>
      [...container.querySelectorAll("tbody tr")].map((tr) => Number(tr.children[1].textContent));
    expect(probs()).toEqual([...probs()].sort((a, b) => b - a)); // default: descending

    (container.querySelector('th[data-column="probability"]') as HTMLElement).click();
    expect(probs()).toEqual([...probs()].sort((a, b) => a - b));

    (container.querySelector('th[data-column="probability"]') as HTMLElement).click();
    expect(probs()).toEqual([...probs()].sort((a, b) => b - a));
  });
});
