/** Thin typed client for the workbench API.
 *
 * Sample/annotation/projection fetches carry a per-channel sequence
 * number; a response that comes back after a newer request on the same
 * channel resolves to null so the store never applies stale data.
 */

import { Annotation, Meta, ProjectionPoint, SampleResponse } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = `${resp.status}`;
    try {
      const body = await resp.json();
      if (body && body.detail) detail = `${resp.status}: ${JSON.stringify(body.detail)}`;
    } catch {
      // non-JSON error body; the status alone will do
    }
    throw new Error(`request failed (${detail})`);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  private fetchImpl: FetchLike;
  private seq: Record<string, number> = {};

  constructor(fetchImpl?: FetchLike) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async guarded<T>(channel: string, work: () => Promise<T>): Promise<T | null> {
    const mine = (this.seq[channel] ?? 0) + 1;
    this.seq[channel] = mine;
    const result = await work();
    return this.seq[channel] === mine ? result : null;
  }

  meta(): Promise<Meta> {
    return this.fetchImpl("/api/meta").then((r) => asJson<Meta>(r));
  }

  /** Sampled recommendation table; omit seed to let the server pick one. */
  sample(source: string, opts: { seed?: number; bins?: number; perBin?: number } = {}) {
    const params = new URLSearchParams();
    if (opts.seed !== undefined) params.set("seed", String(opts.seed));
    if (opts.bins !== undefined) params.set("bins", String(opts.bins));
    if (opts.perBin !== undefined) params.set("per_bin", String(opts.perBin));
    const qs = params.toString();
    const url = `/api/nodes/${encodeURIComponent(source)}/recommendations${qs ? "?" + qs : ""}`;
    return this.guarded("sample", () => this.fetchImpl(url).then((r) => asJson<SampleResponse>(r)));
  }

  projection(ids: string[]): Promise<ProjectionPoint[] | null> {
    const url = `/api/projection?ids=${encodeURIComponent(ids.join(","))}`;
    return this.guarded("projection", () =>
      this.fetchImpl(url).then((r) => asJson<ProjectionPoint[]>(r)),
    );
  }

  annotations(source: string): Promise<Annotation[] | null> {
    const url = `/api/annotations?source=${encodeURIComponent(source)}`;
    return this.guarded("annotations", () =>
      this.fetchImpl(url).then((r) => asJson<Annotation[]>(r)),
    );
  }

  saveAnnotation(source: string, destination: string, stars: number, note = ""): Promise<Annotation> {
    return this.fetchImpl("/api/annotations", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ source, destination, stars, note }),
    }).then((r) => asJson<Annotation>(r));
  }
}
