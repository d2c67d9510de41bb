#!/usr/bin/env python3
"""Train the link predictor end to end on a quarter-scale catalog.

Shows the full modeling path: derived features -> feature matrix ->
gradient-descent training with held-out validation edges -> ranking AUC,
plus a degree-product heuristic scored the same way for context.
"""

import numpy as np
from scipy.stats import rankdata

import lineagerec as lr
from lineagerec.gnn import sample_negatives
from lineagerec.graph import ingest_graph

from _util import rows_to_streams

config = lr.SynthConfig().scaled(0.25)
node_rows, edge_rows = lr.generate_graph(config)
graph = ingest_graph(*rows_to_streams(node_rows, edge_rows))
print(lr.summarize(node_rows, edge_rows))

features = lr.compute_features(graph)
matrix, _ = lr.build_feature_matrix(graph, features)
print(f"feature matrix: {matrix.shape[0]} nodes x {matrix.shape[1]} columns")
print()

# 800 epochs is enough for a clear signal at this scale; the full catalog
# wants more (see the training criteria in the test suite).
train_config = lr.TrainConfig(epochs=800, seed=0)
embedding, log = lr.train(graph, matrix, train_config)

print("epoch    loss     val AUC")
for epoch, loss, auc in log.rows[:: len(log.rows) // 8] + [log.rows[-1]]:
    print(f"{epoch:>5}  {loss:7.4f}  {auc:7.4f}")
print()
print(f"final validation AUC: {log.final_val_auc:.4f}")

# how would "popular nodes attract edges" do? score a fresh sample of real
# edges vs uniform non-edges by degree product, same rank statistic.
rng = np.random.default_rng(99)
pos = graph.edge_index[rng.choice(len(graph.edge_index), 150, replace=False)]
neg_u, neg_v = sample_negatives(graph, rng, 750)
deg = features.degree.astype(float)
scores = np.concatenate([deg[pos[:, 0]] * deg[pos[:, 1]], deg[neg_u] * deg[neg_v]])
ranks = rankdata(scores)
auc = (ranks[:150].sum() - 150 * 151 / 2) / (150 * 750)
print(f"degree-product heuristic AUC:  {auc:.4f}")
