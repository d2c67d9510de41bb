/** Stubbed API plumbing and fixture rows shared by the UI tests. */

import { FetchLike } from "../src/api.js";
import { Annotation, Meta, RecommendationRow } from "../src/types.js";

export const META: Meta = {
  asset_types: ["user", "database", "table", "workflow", "workbook", "curated-source"],
  feature_names: ["degree", "centrality", "community", "hop_distance"],
  model_version: "abc123def456",
  node_count: 40,
  embedding_dim: 8,
};

export function row(overrides: Partial<RecommendationRow> & { destination: string }): RecommendationRow {
  return {
    source: "user-1",
    probability: 0.5,
    dest_asset_type: "table",
    dest_degree: 3,
    dest_centrality: 0.01,
    dest_community: 0,
    same_community: false,
    hop_distance: 2,
    existing_edge: false,
    ...overrides,
  };
}

/** n rows with probabilities spread over (0, 1), deterministic ids. */
export function sampleRows(n: number): RecommendationRow[] {
  const types = META.asset_types;
  return Array.from({ length: n }, (_, i) =>
    row({
      destination: `dest-${String(i).padStart(3, "0")}`,
      probability: (i + 0.5) / n,
      dest_asset_type: types[i % types.length],
      dest_degree: (i * 7) % 23,
      dest_centrality: ((i * 13) % 17) / 1000,
      dest_community: i % 4,
      hop_distance: (i % 5) + 1,
    }),
  );
}

interface StubState {
  annotations: Annotation[];
  calls: Array<{ url: string; init?: RequestInit }>;
  failPosts: boolean;
  failProjection: boolean;
}

/**
 * In-memory fake of the workbench API. Annotations written through POST
 * survive across clients made from the same stub, mimicking the journal.
 */
export function makeStubApi(rows: RecommendationRow[]) {
  const state: StubState = { annotations: [], calls: [], failPosts: false, failProjection: false };

  const json = (body: unknown, status = 200) =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });

  const fetchImpl: FetchLike = async (url, init) => {
    state.calls.push({ url, init });
    if (url === "/api/meta") return json(META);
    if (url.includes("/recommendations")) {
      const seed = Number(new URL(url, "http://x").searchParams.get("seed") ?? "0");
      // a different seed pretends to be a different draw: rotate the rows
      const shift = seed % Math.max(rows.length, 1);
      const drawn = [...rows.slice(shift), ...rows.slice(0, shift)];
      return json({ source: "user-1", sample_seed: seed, rows: drawn });
    }
    if (url.startsWith("/api/projection")) {
      if (state.failProjection) return new Response("boom", { status: 500 });
      const ids = (new URL(url, "http://x").searchParams.get("ids") ?? "").split(",");
      return json(
        ids.filter(Boolean).map((id, i) => ({
          id,
          x: Math.cos(i),
          y: Math.sin(i),
          asset_type: id.startsWith("user") ? "user" : "table",
        })),
      );
    }
    if (url.startsWith("/api/annotations") && init?.method === "POST") {
      if (state.failPosts) return new Response("nope", { status: 500 });
      const body = JSON.parse(String(init.body));
      const ann: Annotation = {
        ...body,
        model_version: META.model_version,
        updated_at: "2026-01-01T00:00:00+00:00",
      };
      state.annotations = state.annotations.filter(
        (a) => !(a.source === ann.source && a.destination === ann.destination),
      );
      state.annotations.push(ann);
      return json(ann);
    }
    if (url.startsWith("/api/annotations")) {
      const source = new URL(url, "http://x").searchParams.get("source");
      return json(state.annotations.filter((a) => source === null || a.source === source));
    }
    return new Response("not found", { status: 404 });
  };

  return { fetchImpl, state };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
