"""Synthetic typed lineage graphs for desk-scale and load testing.

Edges follow the catalog schema (database/curated-source feed tables,
tables feed workflows, workflows feed workbooks; users own or view
workbooks and tables). Destination parents are drawn with preferential
attachment so degree and centrality end up skewed the way real catalogs
are: a handful of popular assets collect most of the lineage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_COUNTS = {
    "user": 400,
    "database": 100,
    "table": 600,
    "workflow": 300,
    "workbook": 500,
    "curated-source": 100,
}

# (src_type, dst_type) -> mean lineage parents drawn per destination node
DEFAULT_LINEAGE_FANOUT = {
    ("database", "table"): 1.0,
    ("curated-source", "table"): 0.3,
    ("table", "workflow"): 3.0,
    ("workflow", "workbook"): 1.0,
}

#: Allowed (src_type, dst_type, relation) combinations in generated output.
EDGE_SCHEMA = frozenset(
    [
        ("database", "table", "lineage"),
        ("curated-source", "table", "lineage"),
        ("table", "workflow", "lineage"),
        ("workflow", "workbook", "lineage"),
        ("user", "workbook", "views"),
        ("user", "workbook", "owns"),
        ("user", "table", "views"),
        ("user", "table", "owns"),
    ]
)

_WORKBOOK_TARGET_SHARE = 0.7
_OWNS_SHARE = 0.15


@dataclass
class SynthConfig:
    counts: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_COUNTS))
    lineage_fanout: dict[tuple[str, str], float] = field(
        default_factory=lambda: dict(DEFAULT_LINEAGE_FANOUT)
    )
    views_per_user: float = 6.0
    seed: int = 0

    def __post_init__(self):
        for name, count in self.counts.items():
            if count < 0:
                raise ValueError(f"count for {name!r} must be non-negative")
        for pair, fanout in self.lineage_fanout.items():
            if fanout < 0:
                raise ValueError(f"fan-out for {pair} must be non-negative")
        if self.views_per_user < 0:
            raise ValueError("views_per_user must be non-negative")

    def scaled(self, factor: float) -> "SynthConfig":
        return SynthConfig(
            counts={k: int(round(v * factor)) for k, v in self.counts.items()},
            lineage_fanout=dict(self.lineage_fanout),
            views_per_user=self.views_per_user,
            seed=self.seed,
        )


def _node_id(type_name: str, i: int) -> str:
    return f"{type_name}-{i:07d}"


class _PrefPool:
    """Preferential-attachment sampler over 0..n-1 (degree + 1 weighting)."""

    def __init__(self, n: int):
        self.pool = list(range(n))

    def pick(self, rng: np.random.Generator) -> int:
        choice = self.pool[int(rng.integers(0, len(self.pool)))]
        self.pool.append(choice)
        return choice


def generate_graph(config: SynthConfig):
    """Return ``(node_rows, edge_rows)`` ready for CSV writing.

    Deterministic given ``config.seed``: the same config always yields
    byte-identical files.
    """
    total = sum(config.counts.values())
    if total == 0:
        raise ValueError("refusing to generate a graph with zero nodes")
    rng = np.random.default_rng(config.seed)

    node_rows = []
    for type_name in DEFAULT_COUNTS:  # fixed emission order
        for i in range(config.counts.get(type_name, 0)):
            label = f"{type_name.replace('-', ' ').title()} {i}"
            node_rows.append((_node_id(type_name, i), type_name, label, "{}"))

    edge_rows = []
    for (src_type, dst_type), fanout in sorted(config.lineage_fanout.items()):
        n_src = config.counts.get(src_type, 0)
        n_dst = config.counts.get(dst_type, 0)
        if n_src == 0 or n_dst == 0 or fanout == 0:
            continue
        pool = _PrefPool(n_src)
        for j in range(n_dst):
            parents = int(rng.poisson(fanout))
            seen: set[int] = set()
            for _ in range(parents):
                pick = pool.pick(rng)
                if pick in seen:
                    continue
                seen.add(pick)
                edge_rows.append((_node_id(src_type, pick), _node_id(dst_type, j), "lineage"))

    n_users = config.counts.get("user", 0)
    n_workbooks = config.counts.get("workbook", 0)
    n_tables = config.counts.get("table", 0)
    if n_users and (n_workbooks or n_tables) and config.views_per_user > 0:
        wb_pool = _PrefPool(n_workbooks) if n_workbooks else None
        tb_pool = _PrefPool(n_tables) if n_tables else None
        for u in range(n_users):
            k = int(rng.poisson(config.views_per_user))
            seen_targets: set[str] = set()
            for _ in range(k):
                want_workbook = rng.random() < _WORKBOOK_TARGET_SHARE
                if want_workbook and wb_pool is None:
                    want_workbook = False
                if not want_workbook and tb_pool is None:
                    want_workbook = True
                pool, dst_type = (wb_pool, "workbook") if want_workbook else (tb_pool, "table")
                dst = _node_id(dst_type, pool.pick(rng))
                if dst in seen_targets:
                    continue
                seen_targets.add(dst)
                relation = "owns" if rng.random() < _OWNS_SHARE else "views"
                edge_rows.append((_node_id("user", u), dst, relation))

    return node_rows, edge_rows


def summarize(node_rows, edge_rows) -> str:
    """Human-readable per-type node counts and per-relation edge counts."""
    type_counts: dict[str, int] = {}
    for _, type_name, _, _ in node_rows:
        type_counts[type_name] = type_counts.get(type_name, 0) + 1
    rel_counts: dict[str, int] = {}
    for _, _, relation in edge_rows:
        rel_counts[relation] = rel_counts.get(relation, 0) + 1
    lines = [f"nodes: {len(node_rows)}"]
    for name in DEFAULT_COUNTS:
        if name in type_counts:
            lines.append(f"  {name}: {type_counts[name]}")
    lines.append(f"edges: {len(edge_rows)}")
    for name in sorted(rel_counts):
        lines.append(f"  {name}: {rel_counts[name]}")
    return "\n".join(lines)
