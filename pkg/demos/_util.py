"""Shared helpers for the demo scripts."""

import csv
import io


def rows_to_streams(node_rows, edge_rows):
    """Turn generator output into the CSV streams ingest_graph expects."""
    nodes = io.StringIO()
    w = csv.writer(nodes)
    w.writerow(["id", "asset_type", "label", "meta_json"])
    w.writerows(node_rows)
    nodes.seek(0)

    edges = io.StringIO()
    w = csv.writer(edges)
    w.writerow(["src", "dst", "relation"])
    w.writerows(edge_rows)
    edges.seek(0)
    return nodes, edges
