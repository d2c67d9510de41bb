#!/usr/bin/env python3
"""Project trained embeddings to 2D and sketch the layout in the terminal.

The scatter view in the web UI uses exactly these coordinates; here we
bin them into a character grid, one letter per asset type, to show the
type structure the encoder picks up.
"""

import numpy as np

import lineagerec as lr
from lineagerec.graph import ingest_graph

from _util import rows_to_streams

node_rows, edge_rows = lr.generate_graph(lr.SynthConfig().scaled(0.2))
graph = ingest_graph(*rows_to_streams(node_rows, edge_rows))
features = lr.compute_features(graph)
matrix, _ = lr.build_feature_matrix(graph, features)
embedding, _ = lr.train(graph, matrix, lr.TrainConfig(epochs=600, seed=0))

proj = lr.project(embedding)
ev1, ev2 = proj.explained_variance
print(f"projected {len(proj.ids)} embeddings ({embedding.values.shape[1]} dims -> 2)")
print(f"explained variance: axis 1 {ev1:.1%}, axis 2 {ev2:.1%}")
print()

# 56x18 character grid; later writes win within a cell, which is fine
# for a sketch
width, height = 56, 18
xs, ys = proj.xy[:, 0], proj.xy[:, 1]
cx = np.clip(((xs - xs.min()) / (np.ptp(xs) or 1) * (width - 1)).astype(int), 0, width - 1)
cy = np.clip(((ys - ys.min()) / (np.ptp(ys) or 1) * (height - 1)).astype(int), 0, height - 1)
grid = [[" "] * width for _ in range(height)]
for nid, gx, gy in zip(proj.ids, cx, cy):
    grid[height - 1 - gy][gx] = nid[0].upper()

print("+" + "-" * width + "+")
for line in grid:
    print("|" + "".join(line) + "|")
print("+" + "-" * width + "+")
print("U=user D=database T=table W=workflow/workbook C=curated-source")
