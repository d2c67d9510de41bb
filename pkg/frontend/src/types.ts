/** Shapes served by the workbench API. */

export interface RecommendationRow {
  source: string;
  destination: string;
  probability: number;
  dest_asset_type: string;
  dest_degree: number;
  dest_centrality: number;
  dest_community: number;
  same_community: boolean;
  hop_distance: number;
  existing_edge: boolean;
}

export interface SampleResponse {
  source: string;
  sample_seed: number;
  rows: RecommendationRow[];
}

export interface Meta {
  asset_types: string[];
  feature_names: string[];
  model_version: string;
  node_count: number;
  embedding_dim: number;
}

export interface ProjectionPoint {
  id: string;
  x: number;
  y: number;
  asset_type: string;
}

export interface Annotation {
  source: string;
  destination: string;
  stars: number;
  note: string;
  model_version: string;
  updated_at: string;
}

/** Feature axes the scatter and rank views can encode. */
export type FeatureAxis = "degree" | "centrality" | "community" | "hop_distance";

export const FEATURE_AXES: FeatureAxis[] = [
  "degree",
  "centrality",
  "community",
  "hop_distance",
];

/** Row accessor for a feature axis. */
export function featureValue(row: RecommendationRow, axis: FeatureAxis): number {
  switch (axis) {
    case "degree":
      return row.dest_degree;
    case "centrality":
      return row.dest_centrality;
    case "community":
      return row.dest_community;
    case "hop_distance":
      return row.hop_distance;
  }
}
