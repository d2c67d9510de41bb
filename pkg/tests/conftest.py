import io

import pytest

from lineagerec import ingest_graph


def csv_text(header, rows):
    import csv

    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def make_graph(node_specs, edge_specs):
    """node_specs: (id, asset_type) pairs; edge_specs: (src, dst[, relation])."""
    nodes = csv_text(
        ["id", "asset_type", "label", "meta_json"],
        [(nid, t, nid.upper(), "{}") for nid, t in node_specs],
    )
    edges = csv_text(
        ["src", "dst", "relation"],
        [(e[0], e[1], e[2] if len(e) > 2 else "lineage") for e in edge_specs],
    )
    return ingest_graph(nodes, edges)


@pytest.fixture
def path_graph():
    """a - b - c path: user, workbook, table."""
    return make_graph(
        [("a", "user"), ("b", "workbook"), ("c", "table")],
        [("a", "b", "views"), ("b", "c", "lineage")],
    )


@pytest.fixture
def two_triangle_graph():
    """Two triangles {a,b,c} and {d,e,f} joined by the bridge c-d."""
    return make_graph(
        [(n, "table") for n in "abcdef"],
        [("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")],
    )


@pytest.fixture
def two_clique_graph():
    """Two disjoint 5-cliques with distinct asset types (separable by features)."""
    nodes = [(f"u{i}", "user") for i in range(5)] + [(f"t{i}", "table") for i in range(5)]
    edges = []
    for p in ("u", "t"):
        for i in range(5):
            for j in range(i + 1, 5):
                edges.append((f"{p}{i}", f"{p}{j}"))
    return make_graph(nodes, edges)
