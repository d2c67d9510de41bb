/** API client: stale-response discarding and the draw-new-sample flow. */

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { Store } from "../src/store.js";
import { flush, makeStubApi, sampleRows } from "./helpers.js";

afterEach(() => vi.restoreAllMocks());

describe("stale responses", () => {
  it("a superseded sample resolves to null", async () => {
    const resolvers: Array<(r: Response) => void> = [];
    const client = new ApiClient(
      () => new Promise<Response>((resolve) => resolvers.push(resolve)),
    );

    const first = client.sample("user-1", { seed: 1 });
    const second = client.sample("user-1", { seed: 2 });
    const body = JSON.stringify({ source: "user-1", sample_seed: 0, rows: [] });
    // the slow first response lands after the second was already issued
    resolvers[1](new Response(body, { status: 200 }));
    resolvers[0](new Response(body, { status: 200 }));

    expect(await first).toBeNull();
    expect(await second).not.toBeNull();
  });

  it("channels are independent: an annotation fetch does not stale a sample", async () => {
    const stub = makeStubApi(sampleRows(4));
    const client = new ApiClient(stub.fetchImpl);
    const sample = client.sample("user-1", { seed: 3 });
    const anns = client.annotations("user-1");
    expect(await sample).not.toBeNull();
    expect(await anns).not.toBeNull();
  });
});

describe("draw new sample", () => {
  it("requests a different seed and applies the new draw", async () => {
    const stub = makeStubApi(sampleRows(10));
    const store = new Store(new ApiClient(stub.fetchImpl));
    await store.init();
    await store.selectSource("user-1", 0);
    await flush();
    expect(store.state.sampleSeed).toBe(0);
    const firstOrder = store.state.sample.map((r) => r.destination);

    vi.spyOn(Math, "random").mockReturnValue(0.5);
    await store.drawNewSample();
    await flush();

    expect(store.state.sampleSeed).toBe(Math.floor(0.5 * 2 ** 31));
    expect(store.state.sample.map((r) => r.destination)).not.toEqual(firstOrder);
    const urls = stub.state.calls.map((c) => c.url).filter((u) => u.includes("/recommendations"));
    expect(urls.at(-1)).toContain(`seed=${Math.floor(0.5 * 2 ** 31)}`);
  });

  it("a redraw resets hover and brush but keeps table controls", async () => {
    const stub = makeStubApi(sampleRows(10));
    const store = new Store(new ApiClient(stub.fetchImpl));
    await store.init();
    await store.selectSource("user-1", 0);
    store.tableControls({ destinationFilter: "dest" });
    store.hover("dest-001");
    store.brush({ assetTypes: [], lo: 0, hi: 0.5 });

    await store.drawNewSample();
    expect(store.state.hovered).toBeNull();
    expect(store.state.brush).toBeNull();
    expect(store.state.table.destinationFilter).toBe("dest");
  });
});

describe("error surfaces", () => {
  it("a failing sample fetch sets a message instead of throwing", async () => {
    const client = new ApiClient(async () => new Response("x", { status: 500 }));
    const store = new Store(client);
    await store.selectSource("user-1");
    expect(store.sampleError).toContain("500");
    expect(store.state.sample).toHaveLength(0);
  });
});
