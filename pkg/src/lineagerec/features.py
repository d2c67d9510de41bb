"""Node features and graph attributes derived from the lineage graph.

Four per-node features (asset type, degree, PageRank centrality,
community label) plus the pairwise hop-distance attribute. Everything is
computed from the undirected adjacency and is deterministic given the
seed, so repeated pipeline runs produce identical artifacts.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from typing import Final

import numpy as np
import scipy.sparse as sp

from .errors import ConsistencyError, IngestError, NotFoundError
from .graph import LineageGraph

logger = logging.getLogger(__name__)

#: Hop distance reported for node pairs in different connected components.
UNREACHABLE: Final = -1

FEATURES_HEADER = ["id", "asset_type", "degree", "centrality", "community"]


def compute_degree(graph: LineageGraph) -> dict[str, int]:
    """Undirected degree per node id."""
    deg = graph.degrees()
    return {nid: int(deg[i]) for i, nid in enumerate(graph.ids)}


class CentralityScores(dict):
    """PageRank scores keyed by node id, with a convergence flag."""

    converged: bool = True


def pagerank_array(
    graph: LineageGraph, damping: float = 0.85, tol: float = 1e-8, max_iter: int = 200
) -> tuple[np.ndarray, bool]:
    """PageRank by power iteration over the undirected adjacency.

    Uniform teleport; dangling (isolated) nodes redistribute their mass
    uniformly. Iteration stops when the L1 change drops below ``tol``.
    Returns ``(scores, converged)`` with scores in sorted-id row order
    summing to 1.
    """
    n = graph.node_count
    if n == 0:
        raise ValueError("centrality is undefined on an empty graph")

    indptr, indices = graph.adjacency
    deg = graph.degrees().astype(np.float64)
    nonzero = deg > 0
    # column-stochastic transition: each node spreads 1/deg to neighbors
    inv_deg = np.zeros(n)
    inv_deg[nonzero] = 1.0 / deg[nonzero]
    weights = np.repeat(inv_deg, deg.astype(np.int64))
    # CSR row i lists neighbors of i; transpose orientation is symmetric,
    # but the weight belongs to the source column, hence repeat by row.
    transition = sp.csr_matrix(
        (weights, indices, indptr), shape=(n, n)
    ).T.tocsr()

    rank = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    converged = False
    for _ in range(max_iter):
        dangling = rank[~nonzero].sum()
        new_rank = damping * (transition @ rank) + damping * dangling / n + teleport
        delta = np.abs(new_rank - rank).sum()
        rank = new_rank
        if delta < tol:
            converged = True
            break
    if not converged:
        logger.warning("PageRank did not converge within %d iterations", max_iter)
    return rank, converged


def compute_centrality(
    graph: LineageGraph, damping: float = 0.85, tol: float = 1e-8, max_iter: int = 200
) -> CentralityScores:
    rank, converged = pagerank_array(graph, damping, tol, max_iter)
    scores = CentralityScores(zip(graph.ids, rank.tolist()))
    scores.converged = converged
    return scores


def community_array(graph: LineageGraph, seed: int) -> np.ndarray:
    """Label propagation, deterministic given ``seed``.

    Nodes are visited asynchronously in one seeded permutation of the
    sorted-id order, reused every sweep. Each visit adopts the most
    frequent neighbor label, ties broken by the lowest label. Runs to a
    fixed point or 100 sweeps, then labels are compacted to 0..C-1 in
    order of first appearance over sorted ids.
    """
    n = graph.node_count
    if n == 0:
        return np.empty(0, dtype=np.int64)

    indptr, indices = graph.adjacency
    ptr = indptr.tolist()
    nbrs = indices.tolist()
    labels = list(range(n))
    order = np.random.default_rng(seed).permutation(n).tolist()

    for _ in range(100):
        changed = False
        for i in order:
            start, end = ptr[i], ptr[i + 1]
            if start == end:
                continue
            counts: dict[int, int] = {}
            best_label = -1
            best_count = 0
            for j in nbrs[start:end]:
                lab = labels[j]
                c = counts.get(lab, 0) + 1
                counts[lab] = c
                if c > best_count or (c == best_count and lab < best_label):
                    best_count = c
                    best_label = lab
            if best_label != labels[i]:
                labels[i] = best_label
                changed = True
        if not changed:
            break

    compact: dict[int, int] = {}
    out = np.empty(n, dtype=np.int64)
    for i, lab in enumerate(labels):
        if lab not in compact:
            compact[lab] = len(compact)
        out[i] = compact[lab]
    return out


def compute_communities(graph: LineageGraph, seed: int) -> dict[str, int]:
    labels = community_array(graph, seed)
    return {nid: int(labels[i]) for i, nid in enumerate(graph.ids)}


def hop_distances_from(graph: LineageGraph, source_row: int) -> np.ndarray:
    """BFS hop counts from one node to all nodes (``-1`` if unreachable)."""
    n = graph.node_count
    indptr, indices = graph.adjacency
    dist = np.full(n, UNREACHABLE, dtype=np.int64)
    dist[source_row] = 0
    frontier = np.array([source_row], dtype=np.int64)
    depth = 0
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        ends = np.cumsum(counts)
        gather = np.repeat(starts - (ends - counts), counts) + np.arange(total)
        reached = indices[gather]
        reached = reached[dist[reached] < 0]
        if reached.size == 0:
            break
        frontier = np.unique(reached)
        depth += 1
        dist[frontier] = depth
    return dist


def shortest_path_hops(graph: LineageGraph, u: str, v: str) -> int:
    """Minimum undirected hop count, or :data:`UNREACHABLE`.

    Zero iff ``u == v``.
    """
    ui, vi = graph.row_of(u), graph.row_of(v)
    if ui == vi:
        return 0
    return int(hop_distances_from(graph, ui)[vi])


@dataclass
class FeatureTable:
    """Per-node derived features, columnar, in sorted-id row order."""

    ids: list[str]
    degree: np.ndarray
    centrality: np.ndarray
    community: np.ndarray
    asset_ordinal: np.ndarray

    def __post_init__(self):
        n = len(self.ids)
        for name in ("degree", "centrality", "community", "asset_ordinal"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"feature column {name!r} has wrong length")
        if n and not math.isclose(float(self.centrality.sum()), 1.0, abs_tol=1e-8):
            raise ValueError("centrality scores must sum to 1")
        self._row_of = {nid: i for i, nid in enumerate(self.ids)}

    def row_of(self, node_id: str) -> int:
        try:
            return self._row_of[node_id]
        except KeyError:
            raise NotFoundError(f"no feature row for node {node_id!r}") from None

    @property
    def community_count(self) -> int:
        return int(self.community.max()) + 1 if len(self.ids) else 0


def compute_features(
    graph: LineageGraph,
    seed: int = 0,
    damping: float = 0.85,
    tol: float = 1e-8,
    max_iter: int = 200,
) -> FeatureTable:
    """Run all per-node feature computations over one graph."""
    centrality, _ = pagerank_array(graph, damping, tol, max_iter)
    community = community_array(graph, seed)
    ordinals = np.array(
        [graph.nodes[nid].asset_type.ordinal for nid in graph.ids], dtype=np.int64
    )
    return FeatureTable(
        ids=list(graph.ids),
        degree=graph.degrees().astype(np.int64),
        centrality=centrality,
        community=community,
        asset_ordinal=ordinals,
    )


def build_feature_matrix(graph: LineageGraph, features: FeatureTable):
    """Assemble the dense model-input matrix, one row per node.

    Row layout: one-hot asset type (K columns), then log(1+degree),
    centrality rescaled to mean 1, and the node's community-size
    fraction. Rows follow sorted-id order; the id->row mapping is
    returned alongside.
    """
    if features.ids != graph.ids:
        missing = sorted(set(graph.ids) - set(features.ids))
        if missing:
            raise ConsistencyError(f"no feature row for node {missing[0]!r}")
        raise ConsistencyError("feature table does not match graph node set")
    n = graph.node_count
    k = len(graph.asset_types)
    x = np.zeros((n, k + 3))
    if n:
        x[np.arange(n), features.asset_ordinal] = 1.0
        x[:, k] = np.log1p(features.degree)
        x[:, k + 1] = features.centrality * n
        sizes = np.bincount(features.community, minlength=features.community_count)
        x[:, k + 2] = sizes[features.community] / n
    return x, dict(zip(graph.ids, range(n)))


def write_features_csv(path, graph: LineageGraph, features: FeatureTable) -> None:
    type_names = [t.name for t in graph.asset_types]
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(FEATURES_HEADER)
        for i, nid in enumerate(features.ids):
            w.writerow(
                [
                    nid,
                    type_names[features.asset_ordinal[i]],
                    int(features.degree[i]),
                    repr(float(features.centrality[i])),
                    int(features.community[i]),
                ]
            )


def read_features_csv(path, graph: LineageGraph) -> FeatureTable:
    """Load a features file and align it with ``graph``'s node set."""
    rows: dict[str, tuple[str, int, float, int]] = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != FEATURES_HEADER:
            raise IngestError(f"expected features header {FEATURES_HEADER}, got {header}", line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise IngestError(f"expected 5 fields, got {len(row)}", line=lineno)
            rows[row[0]] = (row[1], int(row[2]), float(row[3]), int(row[4]))

    if set(rows) != set(graph.ids):
        missing = sorted(set(graph.ids) - set(rows))
        extra = sorted(set(rows) - set(graph.ids))
        raise ConsistencyError(
            f"feature rows do not match graph nodes (missing={missing[:3]}, extra={extra[:3]})"
        )
    ids = list(graph.ids)
    return FeatureTable(
        ids=ids,
        degree=np.array([rows[i][1] for i in ids], dtype=np.int64),
        centrality=np.array([rows[i][2] for i in ids]),
        community=np.array([rows[i][3] for i in ids], dtype=np.int64),
        asset_ordinal=np.array(
            [graph.asset_types.get(rows[i][0]).ordinal for i in ids], dtype=np.int64
        ),
    )
