/** Single state store: applies pure transitions, runs API actions,
 * notifies renderers. All panel coordination goes through here.
 */

import { ApiClient } from "./api.js";
import {
  BrushState,
  TableControls,
  ViewState,
  initialState,
  setBrush,
  setHover,
  setRankFeature,
  setSample,
  setScatterX,
  setStars,
  setTableControls,
} from "./state.js";
import { FeatureAxis, Meta, ProjectionPoint } from "./types.js";

export interface RatingFailure {
  destination: string;
  stars: number;
  message: string;
}

export class Store {
  state: ViewState = initialState();
  meta: Meta | null = null;
  projection: ProjectionPoint[] | null = null;
  projectionError: string | null = null;
  sampleError: string | null = null;
  ratingFailure: RatingFailure | null = null;

  private listeners: Array<() => void> = [];

  constructor(public api: ApiClient) {}

  subscribe(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  private apply(next: ViewState): void {
    if (next !== this.state) {
      this.state = next;
      this.emit();
    }
  }

  async init(): Promise<void> {
    this.meta = await this.api.meta();
    this.emit();
  }

  /** Load the sampled table for a source; seed fixed so the URL is replayable. */
  async selectSource(source: string, seed = 0): Promise<void> {
    this.sampleError = null;
    this.emit();
    try {
      const resp = await this.api.sample(source, { seed });
      if (resp === null) return; // a newer request superseded this one
      this.apply(setSample(this.state, resp.source, resp.sample_seed, resp.rows));
      await Promise.all([this.loadAnnotations(), this.loadProjection()]);
    } catch (err) {
      this.sampleError = String(err);
      this.emit();
    }
  }

  /** Explicit re-draw: same source, fresh seed. */
  async drawNewSample(): Promise<void> {
    if (this.state.source === null) return;
    let seed = Math.floor(Math.random() * 2 ** 31);
    if (seed === this.state.sampleSeed) seed += 1;
    await this.selectSource(this.state.source, seed);
  }

  private async loadAnnotations(): Promise<void> {
    const source = this.state.source;
    if (source === null) return;
    const anns = await this.api.annotations(source);
    if (anns === null || this.state.source !== source) return;
    let next = this.state;
    for (const ann of anns) {
      if (ann.source === source) next = setStars(next, ann.destination, ann.stars);
    }
    this.apply(next);
  }

  private async loadProjection(): Promise<void> {
    const { source, sample } = this.state;
    if (source === null) return;
    this.projectionError = null;
    const ids = [source, ...sample.map((r) => r.destination)];
    try {
      const points = await this.api.projection(ids);
      if (points === null) return;
      this.projection = points;
    } catch (err) {
      this.projection = null;
      this.projectionError = String(err);
    }
    this.emit();
  }

  /** Hover emphasis; identical no matter which panel it came from. */
  hover(destination: string | null): void {
    this.apply(setHover(this.state, destination));
  }

  brush(brush: BrushState | null): void {
    this.apply(setBrush(this.state, brush));
  }

  scatterX(axis: FeatureAxis): void {
    this.apply(setScatterX(this.state, axis));
  }

  rankFeature(axis: FeatureAxis): void {
    this.apply(setRankFeature(this.state, axis));
  }

  tableControls(patch: Partial<TableControls>): void {
    this.apply(setTableControls(this.state, patch));
  }

  /** Persist a star rating, then reflect it locally. */
  async rate(destination: string, stars: number): Promise<void> {
    const source = this.state.source;
    if (source === null) return;
    try {
      const saved = await this.api.saveAnnotation(source, destination, stars);
      this.ratingFailure = null;
      if (this.state.source === source) {
        this.apply(setStars(this.state, saved.destination, saved.stars));
      }
    } catch (err) {
      this.ratingFailure = { destination, stars, message: String(err) };
      this.emit();
    }
  }
}
