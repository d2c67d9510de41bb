"""Operator command line: generate, derive, train, serve.

Exit codes: 0 success, 1 usage error, 2 data/environment error.
"""

from __future__ import annotations

import argparse
import os
import socket
import sys

from .errors import LineageRecError
from .graph import DEFAULT_ASSET_TYPE_NAMES, load_graph_dir, write_graph_dir
from .synth import SynthConfig, generate_graph, summarize

DEFAULT_PORT = 8080


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this tool reserves 2
    # for data errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_counts(values):
    counts = dict(SynthConfig().counts)
    for item in values or []:
        name, _, raw = item.partition("=")
        if name not in DEFAULT_ASSET_TYPE_NAMES or not raw:
            raise ValueError(
                f"expected TYPE=N with TYPE in {DEFAULT_ASSET_TYPE_NAMES}, got {item!r}"
            )
        counts[name] = int(raw)
    return counts


def _parse_fanouts(values):
    fanout = dict(SynthConfig().lineage_fanout)
    for item in values or []:
        pair, _, raw = item.partition("=")
        src, _, dst = pair.partition(":")
        key = (src, dst)
        if key not in fanout or not raw:
            known = ", ".join(f"{s}:{d}" for s, d in sorted(fanout))
            raise ValueError(f"expected SRC:DST=F with SRC:DST in [{known}]")
        fanout[key] = float(raw)
    return fanout


def cmd_generate(args) -> int:
    config = SynthConfig(
        counts=_parse_counts(args.count),
        lineage_fanout=_parse_fanouts(args.fanout),
        views_per_user=args.views_per_user,
        seed=args.seed,
    )
    if args.scale != 1.0:
        config = config.scaled(args.scale)
    node_rows, edge_rows = generate_graph(config)
    write_graph_dir(args.out_dir, node_rows, edge_rows)
    print(summarize(node_rows, edge_rows))
    print(f"wrote {os.path.join(args.out_dir, 'nodes.csv')} and edges.csv")
    return 0


def cmd_derive(args) -> int:
    from .features import compute_features, write_features_csv

    graph = load_graph_dir(args.graph_dir)
    features = compute_features(graph, seed=args.seed)
    out_dir = args.out_dir or args.graph_dir
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, "features.csv")
    write_features_csv(out_path, graph, features)
    print(
        f"derived features for {graph.node_count} nodes "
        f"({features.community_count} communities) -> {out_path}"
    )
    return 0


def cmd_train(args) -> int:
    from .features import build_feature_matrix, read_features_csv
    from .gnn import TrainConfig, save_embedding, train
    from .projection import project, write_projection_csv

    graph = load_graph_dir(args.graph_dir)
    features_path = args.features or os.path.join(args.graph_dir, "features.csv")
    features = read_features_csv(features_path, graph)
    matrix, _ = build_feature_matrix(graph, features)
    config = TrainConfig(
        layers=args.layers,
        hidden_dim=args.hidden_dim,
        embed_dim=args.embed_dim,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        negatives_per_positive=args.negatives_per_positive,
        validation_fraction=args.validation_fraction,
        seed=args.seed,
    )
    embedding, log = train(graph, matrix, config)

    out_dir = args.out_dir or args.graph_dir
    os.makedirs(out_dir, exist_ok=True)
    save_embedding(os.path.join(out_dir, "embedding.bin"), embedding)
    log.write_csv(os.path.join(out_dir, "training_log.csv"))
    proj = project(embedding) if embedding.shape[0] >= 2 else None
    if proj is not None:
        write_projection_csv(os.path.join(out_dir, "projection.csv"), proj)
    print(f"trained {config.epochs} epochs; final validation AUC: {log.final_val_auc}")
    print(f"wrote embedding.bin, training_log.csv, projection.csv -> {out_dir}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app, load_artifacts

    ctx = load_artifacts(args.artifacts_dir)
    static_dir = args.static_dir or os.environ.get("REKOM_STATIC_DIR")
    if static_dir and not os.path.isdir(static_dir):
        raise LineageRecError(f"static dir does not exist: {static_dir}")
    app = create_app(ctx, static_dir=static_dir)

    # fail fast with a readable message when the port is taken
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        raise LineageRecError(f"cannot bind {args.host}:{args.port}: {exc}") from None
    finally:
        probe.close()

    print(f"serving {args.artifacts_dir} on http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lineagerec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[], help="synthesize a typed lineage graph")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0, help="multiply all default counts")
    p.add_argument("--count", action="append", metavar="TYPE=N")
    p.add_argument("--fanout", action="append", metavar="SRC:DST=F")
    p.add_argument("--views-per-user", type=float, default=SynthConfig().views_per_user)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("derive", help="compute node features from a graph dir")
    p.add_argument("--graph-dir", required=True)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("train", help="train the link predictor and project it")
    p.add_argument("--graph-dir", required=True)
    p.add_argument("--features", default=None, help="features.csv (default: graph dir)")
    p.add_argument("--out-dir", default=None)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--hidden-dim", type=int, default=64)
    p.add_argument("--embed-dim", type=int, default=32)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--negatives-per-positive", type=int, default=5)
    p.add_argument("--validation-fraction", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("serve", help="serve the HTTP API over trained artifacts")
    p.add_argument("--artifacts-dir", required=True)
    p.add_argument("--port", type=int, default=int(os.environ.get("REKOM_PORT", DEFAULT_PORT)))
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static-dir", default=None, help="browser UI assets to mount at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LineageRecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
