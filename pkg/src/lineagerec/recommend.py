"""Recommendation rows for one source node, plus stratified sampling.

``build_recommendations`` joins the link-prediction scores with derived
node features and graph context (community match, hop distance from the
source, existing-edge flag) into the flat table the interactive views
consume. ``stratified_sample`` draws a seeded, probability-stratified
subset so the full [0, 1] range stays represented at catalog scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import expit

from .errors import ConsistencyError
from .features import FeatureTable, hop_distances_from
from .gnn import EmbeddingMatrix
from .graph import LineageGraph


class RecommendationRow(NamedTuple):
    source: str
    destination: str
    probability: float
    dest_asset_type: str
    dest_degree: int
    dest_centrality: float
    dest_community: int
    same_community: bool
    hop_distance: int
    existing_edge: bool


@dataclass
class SampleSpec:
    bins: int = 10
    per_bin: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.bins < 1:
            raise ValueError("bins must be >= 1")
        if self.per_bin < 1:
            raise ValueError("per_bin must be >= 1")


def _check_aligned(graph: LineageGraph, features: FeatureTable, embedding: EmbeddingMatrix):
    for name, ids in (("features", features.ids), ("embedding", embedding.ids)):
        if ids != graph.ids:
            missing = sorted(set(graph.ids) - set(ids))[:3]
            extra = sorted(set(ids) - set(graph.ids))[:3]
            raise ConsistencyError(
                f"{name} ids do not match graph (missing={missing}, extra={extra})"
            )


def build_recommendations(
    graph: LineageGraph,
    features: FeatureTable,
    embedding: EmbeddingMatrix,
    source: str,
) -> list[RecommendationRow]:
    """One row per destination node, descending probability.

    Hop distances come from a single BFS traversal from the source; ties
    in probability order by ascending destination id.
    """
    _check_aligned(graph, features, embedding)
    src_row = graph.row_of(source)
    n = graph.node_count

    probs = expit(embedding.values @ embedding.values[src_row])
    hops = hop_distances_from(graph, src_row)
    existing = np.zeros(n, dtype=bool)
    existing[graph.neighbor_rows(src_row)] = True
    if not (hops[existing] == 1).all():
        raise ConsistencyError("adjacency and hop distances disagree")
    same_comm = features.community == features.community[src_row]

    ids_arr = np.array(graph.ids)
    keep = np.arange(n) != src_row
    order = np.lexsort((ids_arr[keep], -probs[keep]))
    rows_idx = np.flatnonzero(keep)[order]

    type_names = [t.name for t in graph.asset_types]
    ids = graph.ids
    p = probs.tolist()
    deg = features.degree.tolist()
    cen = features.centrality.tolist()
    com = features.community.tolist()
    ords = features.asset_ordinal.tolist()
    hop = hops.tolist()
    same = same_comm.tolist()
    exist = existing.tolist()
    return [
        RecommendationRow(
            source,
            ids[i],
            p[i],
            type_names[ords[i]],
            deg[i],
            cen[i],
            com[i],
            same[i],
            hop[i],
            exist[i],
        )
        for i in rows_idx.tolist()
    ]


def stratified_sample(rows: list[RecommendationRow], spec: SampleSpec) -> list[RecommendationRow]:
    """Draw up to ``per_bin`` rows from each equal-width probability bin.

    Bins partition [0, 1]; draws are without replacement with the seeded
    generator, so every non-empty bin is represented and different seeds
    give different subsets. Output is sorted by descending probability,
    ascending destination id.
    """
    if not rows:
        return []
    probs = np.array([r.probability for r in rows])
    bin_idx = np.minimum((probs * spec.bins).astype(np.int64), spec.bins - 1)
    rng = np.random.default_rng(spec.seed)
    chosen: list[int] = []
    for b in range(spec.bins):
        members = np.flatnonzero(bin_idx == b)
        if members.size == 0:
            continue
        take = min(spec.per_bin, members.size)
        chosen.extend(rng.choice(members, size=take, replace=False).tolist())
    picked = [rows[i] for i in chosen]
    picked.sort(key=lambda r: (-r.probability, r.destination))
    return picked
