"""Message-passing link predictor over the lineage graph.

Encoder: ``layers`` rounds of mean-neighbor aggregation, each round a
linear map of the concatenated self/neighbor representations with a relu
nonlinearity (last round linear) into an N x M node embedding. Decoder:
sigmoid of the embedding dot product. Trained full-batch with plain
gradient descent on binary cross-entropy over graph edges (positives)
against uniformly sampled non-edges, so gradients stay exactly checkable
against finite differences.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp
from scipy.special import expit
from scipy.stats import rankdata

from .errors import IngestError, NotFoundError, TrainingDivergedError
from .graph import LineageGraph

EMBEDDING_MAGIC = b"REKM"
EMBEDDING_VERSION = 1

TRAINING_LOG_HEADER = ["epoch", "train_loss", "val_auc"]


@dataclass
class TrainConfig:
    layers: int = 2
    hidden_dim: int = 64
    embed_dim: int = 32
    epochs: int = 200
    learning_rate: float = 0.1
    negatives_per_positive: int = 5
    validation_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.layers < 1:
            raise ValueError("layers must be >= 1")
        if self.embed_dim < 2:
            raise ValueError("embed_dim must be >= 2")
        if not 0.0 < self.validation_fraction < 0.5:
            raise ValueError("validation_fraction must be in (0, 0.5)")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.negatives_per_positive < 1:
            raise ValueError("negatives_per_positive must be >= 1")


@dataclass
class EmbeddingMatrix:
    """Learned N x M node embedding plus the id -> row index."""

    values: np.ndarray
    ids: list[str]

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[0] != len(self.ids):
            raise ValueError("embedding shape does not match id count")
        if not np.isfinite(self.values).all():
            raise ValueError("embedding contains non-finite entries")
        self.id_index = {nid: i for i, nid in enumerate(self.ids)}

    @property
    def shape(self):
        return self.values.shape

    def row_of(self, node_id: str) -> int:
        try:
            return self.id_index[node_id]
        except KeyError:
            raise NotFoundError(f"node {node_id!r} not in embedding") from None

    def vector(self, node_id: str) -> np.ndarray:
        return self.values[self.row_of(node_id)]


class LinkScore(NamedTuple):
    source: str
    destination: str
    probability: float


@dataclass
class TrainingLog:
    rows: list[tuple[int, float, float]] = field(default_factory=list)

    @property
    def final_val_auc(self) -> float:
        return self.rows[-1][2] if self.rows else float("nan")

    def write_csv(self, path) -> None:
        import csv

        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(TRAINING_LOG_HEADER)
            for epoch, loss, auc in self.rows:
                w.writerow([epoch, repr(loss), repr(auc)])


# -- encoder ---------------------------------------------------------------


def mean_adjacency(graph: LineageGraph) -> sp.csr_matrix:
    """Row-normalized adjacency; isolated nodes get an all-zero row."""
    n = graph.node_count
    indptr, indices = graph.adjacency
    deg = graph.degrees().astype(np.float64)
    inv = np.zeros(n)
    nz = deg > 0
    inv[nz] = 1.0 / deg[nz]
    data = np.repeat(inv, deg.astype(np.int64))
    return sp.csr_matrix((data, indices, indptr), shape=(n, n))


def layer_dims(feature_dim: int, config: TrainConfig) -> list[int]:
    return [feature_dim] + [config.hidden_dim] * (config.layers - 1) + [config.embed_dim]


# The decoder squares the embedding scale (s = z_u . z_v), so a full
# Glorot final layer starts with |s| large enough to saturate the loss and
# plain gradient descent collapses the decoder toward zero. Shrinking the
# last layer keeps initial scores moderate without touching the relu
# layers' sign diversity.
_FINAL_LAYER_SCALE = 0.3


def init_weights(feature_dim: int, config: TrainConfig, rng: np.random.Generator):
    """Glorot-uniform weights; layer l maps 2*d_in -> d_out (concat of self/mean)."""
    dims = layer_dims(feature_dim, config)
    weights = []
    last = len(dims) - 2
    for l, (d_in, d_out) in enumerate(zip(dims[:-1], dims[1:])):
        bound = math.sqrt(6.0 / (2 * d_in + d_out))
        if l == last:
            bound *= _FINAL_LAYER_SCALE
        weights.append(rng.uniform(-bound, bound, size=(2 * d_in, d_out)))
    return weights


def forward(adj: sp.csr_matrix, x: np.ndarray, weights) -> np.ndarray:
    """Encode all nodes; returns the N x M embedding."""
    h = x
    last = len(weights) - 1
    for l, w in enumerate(weights):
        concat = np.hstack([h, adj @ h])
        pre = concat @ w
        h = pre if l == last else np.maximum(pre, 0.0)
    return h


def loss_and_gradients(adj, x, weights, u_idx, v_idx, labels):
    """Mean binary cross-entropy over scored pairs, with exact gradients.

    Returns ``(loss, grads, embedding)`` where ``grads`` aligns with
    ``weights``. Uses the softplus form of the loss for stability.
    """
    # forward, keeping per-layer caches for the backward pass
    h = x
    caches = []
    last = len(weights) - 1
    for l, w in enumerate(weights):
        concat = np.hstack([h, adj @ h])
        pre = concat @ w
        out = pre if l == last else np.maximum(pre, 0.0)
        caches.append((concat, pre))
        h = out
    z = h

    scores = np.einsum("ij,ij->i", z[u_idx], z[v_idx])
    batch = len(scores)
    # softplus(s) - y*s == -[y log p + (1-y) log(1-p)]
    loss = float(np.mean(np.logaddexp(0.0, scores) - labels * scores))

    dscore = (expit(scores) - labels) / batch
    dz = np.zeros_like(z)
    np.add.at(dz, u_idx, dscore[:, None] * z[v_idx])
    np.add.at(dz, v_idx, dscore[:, None] * z[u_idx])

    grads = [None] * len(weights)
    dh = dz
    for l in range(last, -1, -1):
        concat, pre = caches[l]
        dpre = dh if l == last else dh * (pre > 0)
        grads[l] = concat.T @ dpre
        dconcat = dpre @ weights[l].T
        d_in = concat.shape[1] // 2
        dh = dconcat[:, :d_in] + adj.T @ dconcat[:, d_in:]
    return loss, grads, z


# -- negative sampling -----------------------------------------------------


def sample_negatives(graph: LineageGraph, rng: np.random.Generator, count: int):
    """Uniform ordered non-adjacent pairs ``(u, v)``, ``u != v``."""
    n = graph.node_count
    if n < 2:
        raise ValueError("need at least 2 nodes to sample negative pairs")
    edge_keys = _edge_key_array(graph)
    us, vs = [], []
    need = count
    for _ in range(100):
        if need <= 0:
            break
        m = max(2 * need, 16)
        u = rng.integers(0, n, size=m)
        v = rng.integers(0, n, size=m)
        ok = u != v
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = lo * n + hi
        pos = np.searchsorted(edge_keys, keys)
        inside = pos < len(edge_keys)
        member = np.zeros(m, dtype=bool)
        member[inside] = edge_keys[pos[inside]] == keys[inside]
        ok &= ~member
        take = np.flatnonzero(ok)[:need]
        us.append(u[take])
        vs.append(v[take])
        need -= len(take)
    if need > 0:
        raise ValueError("graph too dense to sample the requested non-edges")
    return np.concatenate(us), np.concatenate(vs)


def _edge_key_array(graph: LineageGraph) -> np.ndarray:
    arr = getattr(graph, "_edge_key_arr", None)
    if arr is None:
        arr = np.fromiter(graph._edge_keys, dtype=np.int64, count=len(graph._edge_keys))
        arr.sort()
        graph._edge_key_arr = arr
    return arr


# -- training --------------------------------------------------------------


def train(graph: LineageGraph, feature_matrix: np.ndarray, config: TrainConfig):
    """Fit the encoder and return ``(EmbeddingMatrix, TrainingLog)``.

    Feature rows must follow the graph's sorted-id order. A
    ``validation_fraction`` slice of the edges is held out of the loss;
    per-epoch rows record the train loss (at the epoch's start weights)
    and the held-out AUC after the update. Deterministic given
    ``config.seed``.
    """
    n = graph.node_count
    if feature_matrix.ndim != 2 or feature_matrix.shape[0] != n:
        raise ValueError(
            f"feature matrix has {feature_matrix.shape[0]} rows, graph has {n} nodes"
        )
    x = np.asarray(feature_matrix, dtype=np.float64)
    rng = np.random.default_rng(config.seed)
    weights = init_weights(x.shape[1], config, rng)
    adj = mean_adjacency(graph)

    edges = graph.edge_index
    n_edges = len(edges)
    if config.epochs > 0 and n_edges == 0:
        raise ValueError("cannot train on a graph with no edges")

    perm = rng.permutation(n_edges)
    n_val = min(int(round(config.validation_fraction * n_edges)), max(n_edges - 1, 0))
    val_pos = edges[perm[:n_val]]
    train_pos = edges[perm[n_val:]]
    if len(val_pos):
        val_neg = sample_negatives(graph, rng, len(val_pos) * config.negatives_per_positive)
    else:
        val_neg = None

    log = TrainingLog()
    for epoch in range(1, config.epochs + 1):
        neg_u, neg_v = sample_negatives(
            graph, rng, len(train_pos) * config.negatives_per_positive
        )
        u_idx = np.concatenate([train_pos[:, 0], neg_u])
        v_idx = np.concatenate([train_pos[:, 1], neg_v])
        labels = np.concatenate([np.ones(len(train_pos)), np.zeros(len(neg_u))])
        loss, grads, _ = loss_and_gradients(adj, x, weights, u_idx, v_idx, labels)
        if not math.isfinite(loss):
            raise TrainingDivergedError(epoch)
        for w, g in zip(weights, grads):
            w -= config.learning_rate * g
        z = forward(adj, x, weights)
        if val_neg is not None:
            val_auc = _auc_from_scores(
                _pair_scores(z, val_pos[:, 0], val_pos[:, 1]),
                _pair_scores(z, val_neg[0], val_neg[1]),
            )
        else:
            val_auc = float("nan")
        log.rows.append((epoch, loss, val_auc))

    z = forward(adj, x, weights)
    return EmbeddingMatrix(values=z, ids=list(graph.ids)), log


def _pair_scores(z, u_idx, v_idx):
    return np.einsum("ij,ij->i", z[u_idx], z[v_idx])


# -- scoring ---------------------------------------------------------------


def score_pair(embedding: EmbeddingMatrix, u: str, v: str) -> LinkScore:
    """Link probability between two nodes: sigmoid of the dot product."""
    zu = embedding.vector(u)
    zv = embedding.vector(v)
    return LinkScore(u, v, float(expit(zu @ zv)))


def score_all(
    embedding: EmbeddingMatrix, source: str, candidates: list[str] | None = None
) -> list[LinkScore]:
    """Score the source against candidates (default: every other node).

    Descending probability, ties broken by ascending destination id.
    """
    src_row = embedding.row_of(source)
    if candidates is None:
        rows = np.array(
            [i for i in range(len(embedding.ids)) if i != src_row], dtype=np.int64
        )
        ids = [embedding.ids[i] for i in rows]
    else:
        rows = np.array([embedding.row_of(c) for c in candidates], dtype=np.int64)
        ids = list(candidates)
    if len(rows) == 0:
        return []
    probs = expit(embedding.values[rows] @ embedding.values[src_row])
    order = np.lexsort((np.array(ids), -probs))
    return [LinkScore(source, ids[i], float(probs[i])) for i in order]


def evaluate_auc(embedding: EmbeddingMatrix, positive_edges, negative_pairs) -> float:
    """ROC AUC of decoder scores via the rank statistic, ties counted 0.5."""
    if not len(positive_edges) or not len(negative_pairs):
        raise ValueError("need at least one positive and one negative pair")
    pos = np.array(
        [embedding.vector(u) @ embedding.vector(v) for u, v in positive_edges]
    )
    neg = np.array(
        [embedding.vector(u) @ embedding.vector(v) for u, v in negative_pairs]
    )
    return _auc_from_scores(pos, neg)


def _auc_from_scores(pos_scores: np.ndarray, neg_scores: np.ndarray) -> float:
    if len(pos_scores) == 0 or len(neg_scores) == 0:
        return float("nan")
    ranks = rankdata(np.concatenate([pos_scores, neg_scores]))
    p = len(pos_scores)
    rank_sum = ranks[:p].sum()
    return float((rank_sum - p * (p + 1) / 2) / (p * len(neg_scores)))


# -- serialization ---------------------------------------------------------


def save_embedding(path, embedding: EmbeddingMatrix) -> None:
    """Binary layout: magic, u32 version, u64 N, u64 M, row-major float64
    values, then N u32-length-prefixed UTF-8 node ids (all little-endian)."""
    n, m = embedding.shape
    with open(path, "wb") as f:
        f.write(EMBEDDING_MAGIC)
        f.write(struct.pack("<I", EMBEDDING_VERSION))
        f.write(struct.pack("<QQ", n, m))
        f.write(np.ascontiguousarray(embedding.values, dtype="<f8").tobytes())
        for nid in embedding.ids:
            raw = nid.encode("utf-8")
            f.write(struct.pack("<I", len(raw)))
            f.write(raw)


def load_embedding(path) -> EmbeddingMatrix:
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != EMBEDDING_MAGIC:
            raise IngestError(f"bad embedding magic {magic!r}")
        (version,) = struct.unpack("<I", f.read(4))
        if version != EMBEDDING_VERSION:
            raise IngestError(f"unsupported embedding version {version}")
        n, m = struct.unpack("<QQ", f.read(16))
        values = np.frombuffer(f.read(8 * n * m), dtype="<f8").reshape(n, m).copy()
        ids = []
        for _ in range(n):
            (length,) = struct.unpack("<I", f.read(4))
            ids.append(f.read(length).decode("utf-8"))
    return EmbeddingMatrix(values=values, ids=ids)
