import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lineagerec import AssetTypes, IngestError, NotFoundError, get_node, ingest_graph, neighbors
from tests.conftest import csv_text, make_graph

NODES_HEADER = ["id", "asset_type", "label", "meta_json"]
EDGES_HEADER = ["src", "dst", "relation"]


def test_empty_graph():
    g = ingest_graph("id,asset_type,label,meta_json\n", "src,dst,relation\n")
    assert g.node_count == 0
    assert g.edge_count == 0


def test_three_node_ingest_degrees(path_graph):
    # degree oracle: count endpoint occurrences in the edge list
    edge_list = [("a", "b"), ("b", "c")]
    expected = {n: sum(n in e for e in edge_list) for n in "abc"}
    assert path_graph.node_count == 3
    assert path_graph.edge_count == 2
    degrees = dict(zip(path_graph.ids, path_graph.degrees().tolist()))
    assert degrees == expected
    assert degrees["b"] == 2


def test_duplicate_edges_merged():
    g = make_graph([("a", "user"), ("b", "table")], [("a", "b"), ("a", "b")])
    assert g.edge_count == 1
    assert g.duplicate_edge_count == 1


def test_reversed_duplicate_also_merged():
    g = make_graph([("a", "user"), ("b", "table")], [("a", "b"), ("b", "a")])
    assert g.edge_count == 1
    assert g.duplicate_edge_count == 1


def test_edge_with_unknown_node_reports_line():
    nodes = csv_text(NODES_HEADER, [("a", "user", "A", "{}")])
    edges = csv_text(EDGES_HEADER, [("a", "zzz", "views")])
    with pytest.raises(IngestError) as err:
        ingest_graph(nodes, edges)
    assert "zzz" in str(err.value)
    assert err.value.line == 2


def test_unknown_asset_type_rejected():
    nodes = csv_text(NODES_HEADER, [("a", "spaceship", "A", "{}")])
    with pytest.raises(IngestError) as err:
        ingest_graph(nodes, "src,dst,relation\n")
    assert "spaceship" in str(err.value)


def test_self_loop_rejected():
    nodes = csv_text(NODES_HEADER, [("a", "user", "A", "{}")])
    edges = csv_text(EDGES_HEADER, [("a", "a", "views")])
    with pytest.raises(IngestError) as err:
        ingest_graph(nodes, edges)
    assert err.value.line == 2


def test_bad_headers_rejected():
    with pytest.raises(IngestError):
        ingest_graph("id,type\n", "src,dst,relation\n")
    with pytest.raises(IngestError):
        ingest_graph("id,asset_type,label,meta_json\n", "from,to\n")


def test_duplicate_node_id_rejected():
    nodes = csv_text(NODES_HEADER, [("a", "user", "A", "{}"), ("a", "table", "A2", "{}")])
    with pytest.raises(IngestError) as err:
        ingest_graph(nodes, "src,dst,relation\n")
    assert err.value.line == 3


def test_neighbors_isolated_and_path(path_graph):
    g = make_graph([("x", "user")], [])
    assert neighbors(g, "x") == []
    assert neighbors(path_graph, "b") == ["a", "c"]


def test_neighbors_star_sorted():
    leaves = [f"leaf{i}" for i in range(5)]
    g = make_graph(
        [("hub", "table")] + [(l, "workbook") for l in leaves],
        [("hub", l) for l in leaves],
    )
    # oracle: enumerate edges incident to the hub
    expected = sorted(dst for src, dst in ((("hub", l)) for l in leaves))
    assert neighbors(g, "hub") == expected


def test_neighbors_unknown_id(path_graph):
    with pytest.raises(NotFoundError):
        neighbors(path_graph, "zzz")


def test_get_node_roundtrip():
    meta = '{"owner": "alice", "created": "2024-01-01"}'
    nodes = csv_text(NODES_HEADER, [("wb-17", "workbook", "Quarterly Sales", meta)])
    g = ingest_graph(nodes, "src,dst,relation\n")
    rec = get_node(g, "wb-17")
    assert rec.asset_type.name == "workbook"
    assert rec.label == "Quarterly Sales"
    assert rec.meta == {"owner": "alice", "created": "2024-01-01"}


def test_get_node_unknown(path_graph):
    with pytest.raises(NotFoundError):
        get_node(path_graph, "zzz")


def test_degree_sum_equals_twice_edges(two_triangle_graph):
    g = two_triangle_graph
    assert int(g.degrees().sum()) == 2 * g.edge_count


def test_ingest_is_reproducible(path_graph):
    other = make_graph(
        [("a", "user"), ("b", "workbook"), ("c", "table")],
        [("a", "b", "views"), ("b", "c", "lineage")],
    )
    assert other.ids == path_graph.ids
    assert [(e.src, e.dst, e.relation) for e in other.edges] == [
        (e.src, e.dst, e.relation) for e in path_graph.edges
    ]


def test_asset_types_config():
    types = AssetTypes(["alpha", "beta"])
    assert [t.ordinal for t in types] == [0, 1]
    with pytest.raises(ValueError):
        AssetTypes([])
    with pytest.raises(ValueError):
        AssetTypes(["dup", "dup"])
    nodes = csv_text(NODES_HEADER, [("a", "alpha", "A", "{}")])
    g = ingest_graph(nodes, "src,dst,relation\n", asset_types=types)
    assert g.get_node("a").asset_type.ordinal == 0


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=8))
    ids = [f"n{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return make_graph([(nid, "table") for nid in ids], [(ids[i], ids[j]) for i, j in chosen])


@given(small_graphs())
@settings(max_examples=50, deadline=None)
def test_neighbors_symmetric(g):
    for u in g.ids:
        for v in neighbors(g, u):
            assert u in neighbors(g, v)
    assert int(g.degrees().sum()) == 2 * g.edge_count
