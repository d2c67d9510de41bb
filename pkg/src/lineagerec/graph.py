"""Typed lineage graph: ingestion, validation, and lookup.

Nodes are analytic assets (and users) with a categorical asset type;
edges are lineage/ownership/usage relations. The graph is treated as
undirected for every derived computation; the ``relation`` label is kept
for display only. Instances are immutable after ingestion and safe to
share across threads.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import IngestError, NotFoundError

logger = logging.getLogger(__name__)

DEFAULT_ASSET_TYPE_NAMES = (
    "user",
    "database",
    "table",
    "workflow",
    "workbook",
    "curated-source",
)

NODES_HEADER = ["id", "asset_type", "label", "meta_json"]
EDGES_HEADER = ["src", "dst", "relation"]


@dataclass(frozen=True)
class AssetType:
    name: str
    ordinal: int


class AssetTypes:
    """Ordered, validated configuration of asset type names.

    Ordinals are assigned 0..K-1 in declaration order.
    """

    def __init__(self, names=DEFAULT_ASSET_TYPE_NAMES):
        names = tuple(names)
        if not names:
            raise ValueError("asset type set must be non-empty")
        if len(set(names)) != len(names):
            raise ValueError("asset type names must be unique")
        self.types = tuple(AssetType(n, i) for i, n in enumerate(names))
        self._by_name = {t.name: t for t in self.types}

    @property
    def names(self):
        return tuple(t.name for t in self.types)

    def __len__(self):
        return len(self.types)

    def __iter__(self):
        return iter(self.types)

    def __contains__(self, name):
        return name in self._by_name

    def get(self, name: str) -> AssetType:
        try:
            return self._by_name[name]
        except KeyError:
            raise NotFoundError(f"unknown asset type {name!r}") from None


@dataclass
class NodeRecord:
    id: str
    asset_type: AssetType
    label: str
    meta: dict = field(default_factory=dict)


@dataclass
class EdgeRecord:
    src: str
    dst: str
    relation: str


class LineageGraph:
    """Immutable undirected multigraph view over typed catalog assets.

    Construction happens in :func:`ingest_graph`; afterwards the node and
    edge collections, the sorted id order, and the CSR adjacency never
    change. Duplicate undirected edges have already been merged.
    """

    def __init__(self, nodes, edges, asset_types, duplicate_edge_count=0):
        self.nodes: dict[str, NodeRecord] = nodes
        self.edges: list[EdgeRecord] = edges
        self.asset_types = asset_types
        self.duplicate_edge_count = duplicate_edge_count

        self.ids: list[str] = sorted(nodes)
        self._row_of = {nid: i for i, nid in enumerate(self.ids)}

        n = len(self.ids)
        e = len(edges)
        src = np.empty(e, dtype=np.int64)
        dst = np.empty(e, dtype=np.int64)
        for k, rec in enumerate(edges):
            src[k] = self._row_of[rec.src]
            dst[k] = self._row_of[rec.dst]
        # edge_index holds each undirected edge once, endpoints as row indices
        self.edge_index = np.stack([src, dst], axis=1) if e else np.empty((0, 2), dtype=np.int64)

        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        self._edge_keys = set((lo * max(n, 1) + hi).tolist())

        # symmetric CSR adjacency, neighbor indices ascending within each row
        both_src = np.concatenate([src, dst])
        both_dst = np.concatenate([dst, src])
        order = np.lexsort((both_dst, both_src))
        self._adj_indices = both_dst[order].astype(np.int64)
        counts = np.bincount(both_src, minlength=n) if e else np.zeros(n, dtype=np.int64)
        self._adj_indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

    # -- size -----------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.ids)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    # -- lookup ---------------------------------------------------------

    def row_of(self, node_id: str) -> int:
        """Row index of a node in sorted-id order."""
        try:
            return self._row_of[node_id]
        except KeyError:
            raise NotFoundError(f"unknown node id {node_id!r}") from None

    def get_node(self, node_id: str) -> NodeRecord:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise NotFoundError(f"unknown node id {node_id!r}") from None

    def neighbor_rows(self, row: int) -> np.ndarray:
        return self._adj_indices[self._adj_indptr[row]:self._adj_indptr[row + 1]]

    def neighbors(self, node_id: str) -> list[str]:
        """Undirected neighbor ids, ascending (stable across runs)."""
        row = self.row_of(node_id)
        return [self.ids[j] for j in self.neighbor_rows(row)]

    def has_edge(self, u: str, v: str) -> bool:
        i, j = self.row_of(u), self.row_of(v)
        return self.has_edge_rows(i, j)

    def has_edge_rows(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return i * max(self.node_count, 1) + j in self._edge_keys

    def degrees(self) -> np.ndarray:
        """Degree per node in sorted-id row order."""
        return np.diff(self._adj_indptr)

    @property
    def adjacency(self):
        """CSR arrays ``(indptr, indices)`` over sorted-id row order."""
        return self._adj_indptr, self._adj_indices


def get_node(graph: LineageGraph, node_id: str) -> NodeRecord:
    return graph.get_node(node_id)


def neighbors(graph: LineageGraph, node_id: str) -> list[str]:
    return graph.neighbors(node_id)


def _reader(source):
    if isinstance(source, (str, bytes)):
        source = io.StringIO(source if isinstance(source, str) else source.decode("utf-8"))
    return csv.reader(source)


def ingest_graph(nodes_source, edges_source, asset_types: AssetTypes | None = None) -> LineageGraph:
    """Parse and validate node/edge CSV streams into a LineageGraph.

    ``nodes_source`` rows: ``id,asset_type,label,meta_json`` where
    ``meta_json`` is a JSON object with string values (``{}`` allowed).
    ``edges_source`` rows: ``src,dst,relation``.

    Duplicate undirected edges are merged (first relation wins) and
    counted on ``graph.duplicate_edge_count``. Rejected inputs (unknown
    asset type, unknown endpoint, self-loop, malformed row) raise
    :class:`IngestError` carrying the offending line number.
    """
    types = asset_types or AssetTypes()

    nodes: dict[str, NodeRecord] = {}
    for lineno, row in enumerate(_reader(nodes_source), start=1):
        if lineno == 1:
            if row != NODES_HEADER:
                raise IngestError(f"expected nodes header {NODES_HEADER}, got {row}", line=1)
            continue
        if not row:
            continue
        if len(row) != 4:
            raise IngestError(f"expected 4 fields, got {len(row)}", line=lineno)
        nid, type_name, label, meta_json = row
        if not nid:
            raise IngestError("empty node id", line=lineno)
        if nid in nodes:
            raise IngestError(f"duplicate node id {nid!r}", line=lineno)
        if type_name not in types:
            raise IngestError(f"unknown asset type {type_name!r}", line=lineno)
        meta = _parse_meta(meta_json, lineno)
        nodes[nid] = NodeRecord(nid, types.get(type_name), label, meta)

    edges: list[EdgeRecord] = []
    seen: set[tuple[str, str]] = set()
    duplicates = 0
    for lineno, row in enumerate(_reader(edges_source), start=1):
        if lineno == 1:
            if row != EDGES_HEADER:
                raise IngestError(f"expected edges header {EDGES_HEADER}, got {row}", line=1)
            continue
        if not row:
            continue
        if len(row) != 3:
            raise IngestError(f"expected 3 fields, got {len(row)}", line=lineno)
        src, dst, relation = row
        if src == dst:
            raise IngestError(f"self-loop on node {src!r}", line=lineno)
        for endpoint in (src, dst):
            if endpoint not in nodes:
                raise IngestError(f"edge references unknown node id {endpoint!r}", line=lineno)
        key = (src, dst) if src <= dst else (dst, src)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(EdgeRecord(src, dst, relation))

    if duplicates:
        logger.warning("merged %d duplicate undirected edge(s)", duplicates)
    graph = LineageGraph(nodes, edges, types, duplicate_edge_count=duplicates)
    logger.info("ingested graph: %d nodes, %d edges", graph.node_count, graph.edge_count)
    return graph


def _parse_meta(meta_json, lineno):
    if not meta_json.strip():
        return {}
    try:
        meta = json.loads(meta_json)
    except json.JSONDecodeError as exc:
        raise IngestError(f"invalid meta_json: {exc}", line=lineno) from None
    if not isinstance(meta, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in meta.items()
    ):
        raise IngestError("meta_json must be a JSON object with string values", line=lineno)
    return meta


def load_graph_dir(path, asset_types: AssetTypes | None = None) -> LineageGraph:
    """Load ``nodes.csv`` and ``edges.csv`` from a directory."""
    import os

    nodes_path = os.path.join(path, "nodes.csv")
    edges_path = os.path.join(path, "edges.csv")
    for p in (nodes_path, edges_path):
        if not os.path.exists(p):
            raise NotFoundError(f"missing graph file: {p}")
    with open(nodes_path, newline="", encoding="utf-8") as nf, open(
        edges_path, newline="", encoding="utf-8"
    ) as ef:
        return ingest_graph(nf, ef, asset_types)


def write_graph_dir(path, nodes_rows, edges_rows):
    """Write ``nodes.csv``/``edges.csv`` (used by the synthetic generator)."""
    import os

    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, "nodes.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(NODES_HEADER)
        w.writerows(nodes_rows)
    with open(os.path.join(path, "edges.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(EDGES_HEADER)
        w.writerows(edges_rows)
