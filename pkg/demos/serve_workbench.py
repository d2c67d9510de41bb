#!/usr/bin/env python3
"""Stand up the HTTP API against freshly built artifacts and query it.

Writes the five serving artifacts to a temp directory, boots the app on a
local port in a background thread, and walks the endpoints the web UI
calls: metadata, node detail, a sampled recommendation table, and an
annotation write. ``lineagerec serve --artifacts-dir ...`` runs the same
app as a foreground process.
"""

import json
import socket
import tempfile
import threading
import time
import urllib.request

import uvicorn

import lineagerec as lr
from lineagerec.graph import ingest_graph
from lineagerec.service import create_app, load_artifacts

from _util import rows_to_streams

workdir = tempfile.mkdtemp(prefix="workbench-demo-")
node_rows, edge_rows = lr.generate_graph(lr.SynthConfig().scaled(0.1))
graph = ingest_graph(*rows_to_streams(node_rows, edge_rows))
features = lr.compute_features(graph)
matrix, _ = lr.build_feature_matrix(graph, features)
embedding, _ = lr.train(graph, matrix, lr.TrainConfig(epochs=200, seed=0))

lr.write_graph_dir(workdir, node_rows, edge_rows)
lr.write_features_csv(f"{workdir}/features.csv", graph, features)
lr.save_embedding(f"{workdir}/embedding.bin", embedding)
lr.write_projection_csv(f"{workdir}/projection.csv", lr.project(embedding))
print(f"artifacts in {workdir}")

ctx = load_artifacts(workdir)
app = create_app(ctx)

with socket.socket() as s:
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=port, log_level="warning"))
threading.Thread(target=server.run, daemon=True).start()
while not server.started:
    time.sleep(0.05)
base = f"http://127.0.0.1:{port}"
print(f"serving on {base}")
print()


def get(path):
    with urllib.request.urlopen(base + path) as resp:
        return json.loads(resp.read())


meta = get("/api/meta")
print(f"GET /api/meta -> {meta['node_count']} nodes, model {meta['model_version']}")

source = next(nid for nid in graph.ids if nid.startswith("user-"))
node = get(f"/api/nodes/{source}")
print(f"GET /api/nodes/{source} -> {node['asset_type']} {node['label']!r}")

recs = get(f"/api/nodes/{source}/recommendations?bins=10&per_bin=2&seed=7")
first = recs["rows"][0]
print(
    f"GET .../recommendations -> {len(recs['rows'])} sampled rows, top:"
    f" {first['destination']} p={first['probability']:.3f}"
)

body = json.dumps(
    {"source": source, "destination": first["destination"], "stars": 4, "note": "spot on"}
).encode()
req = urllib.request.Request(
    base + "/api/annotations", data=body, headers={"Content-Type": "application/json"}
)
with urllib.request.urlopen(req) as resp:
    saved = json.loads(resp.read())
print(f"POST /api/annotations -> stored at {saved['updated_at']}")

export = urllib.request.urlopen(base + "/api/annotations/export").read().decode()
print("GET /api/annotations/export ->")
print(export)

server.should_exit = True
