"""HTTP/JSON API over the trained artifacts.

Read paths (metadata, node lookup, sampled recommendations, projection)
serve immutable in-memory artifacts and are safe under concurrency;
annotation writes funnel through the journal-backed store. The optional
static directory serves the browser workbench at ``/``.
"""

from __future__ import annotations

import hashlib
import os
import random
import threading
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .annotations import (
    Annotation,
    AnnotationStore,
    export_annotations_csv,
    import_annotations_csv,
)
from .errors import ConsistencyError, IngestError, NotFoundError
from .features import FeatureTable, read_features_csv
from .gnn import EmbeddingMatrix, load_embedding
from .graph import LineageGraph, load_graph_dir
from .projection import read_projection_csv
from .recommend import RecommendationRow, SampleSpec, build_recommendations, stratified_sample

REQUIRED_ARTIFACTS = ("nodes.csv", "edges.csv", "features.csv", "embedding.bin", "projection.csv")

#: x-axis candidates exposed to the views.
FEATURE_NAMES = ("degree", "centrality", "community", "hop_distance")

_REC_CACHE_SIZE = 8


@dataclass
class ServingContext:
    graph: LineageGraph
    features: FeatureTable
    embedding: EmbeddingMatrix
    projection_ids: list[str]
    projection_xy: np.ndarray
    store: AnnotationStore
    model_version: str
    _rec_cache: OrderedDict = field(default_factory=OrderedDict)
    _cache_lock: threading.Lock = field(default_factory=threading.Lock)

    def recommendations_for(self, source: str) -> list[RecommendationRow]:
        with self._cache_lock:
            if source in self._rec_cache:
                self._rec_cache.move_to_end(source)
                return self._rec_cache[source]
        rows = build_recommendations(self.graph, self.features, self.embedding, source)
        with self._cache_lock:
            self._rec_cache[source] = rows
            while len(self._rec_cache) > _REC_CACHE_SIZE:
                self._rec_cache.popitem(last=False)
        return rows


def load_artifacts(artifacts_dir: str) -> ServingContext:
    """Load and cross-check all serving artifacts from one directory."""
    for name in REQUIRED_ARTIFACTS:
        path = os.path.join(artifacts_dir, name)
        if not os.path.exists(path):
            raise NotFoundError(f"missing artifact: {name} (looked in {artifacts_dir})")

    graph = load_graph_dir(artifacts_dir)
    features = read_features_csv(os.path.join(artifacts_dir, "features.csv"), graph)
    embedding = load_embedding(os.path.join(artifacts_dir, "embedding.bin"))
    if embedding.ids != graph.ids:
        raise ConsistencyError("embedding.bin ids do not match the graph node set")
    proj_ids, proj_xy = read_projection_csv(os.path.join(artifacts_dir, "projection.csv"))
    if sorted(proj_ids) != graph.ids:
        raise ConsistencyError("projection.csv ids do not match the graph node set")

    with open(os.path.join(artifacts_dir, "embedding.bin"), "rb") as f:
        model_version = hashlib.sha256(f.read()).hexdigest()[:12]
    store = AnnotationStore(os.path.join(artifacts_dir, "annotations.jsonl"))
    return ServingContext(
        graph=graph,
        features=features,
        embedding=embedding,
        projection_ids=proj_ids,
        projection_xy=proj_xy,
        store=store,
        model_version=model_version,
    )


class AnnotationIn(BaseModel):
    source: str = Field(min_length=1)
    destination: str = Field(min_length=1)
    stars: int = Field(ge=1, le=5)
    note: str = ""
    model_version: str | None = None
    updated_at: str | None = None


def _annotation_json(ann: Annotation) -> dict:
    return {
        "source": ann.source,
        "destination": ann.destination,
        "stars": ann.stars,
        "note": ann.note,
        "model_version": ann.model_version,
        "updated_at": ann.updated_at,
    }


def create_app(ctx: ServingContext, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="lineagerec", version="0.1.0")

    @app.exception_handler(NotFoundError)
    async def _not_found(request, exc):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(IngestError)
    async def _bad_input(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/meta")
    def meta():
        n, m = ctx.embedding.shape
        return {
            "asset_types": list(ctx.graph.asset_types.names),
            "feature_names": list(FEATURE_NAMES),
            "model_version": ctx.model_version,
            "node_count": n,
            "embedding_dim": m,
        }

    @app.get("/api/nodes/{node_id}")
    def get_node(node_id: str):
        rec = ctx.graph.get_node(node_id)
        return {
            "id": rec.id,
            "asset_type": rec.asset_type.name,
            "label": rec.label,
            "meta": rec.meta,
        }

    @app.get("/api/nodes/{node_id}/recommendations")
    def recommendations(
        node_id: str,
        bins: int = Query(default=10, ge=1),
        per_bin: int = Query(default=50, ge=1),
        seed: int | None = Query(default=None),
    ):
        sample_seed = seed if seed is not None else random.getrandbits(31)
        rows = ctx.recommendations_for(node_id)
        sample = stratified_sample(rows, SampleSpec(bins=bins, per_bin=per_bin, seed=sample_seed))
        return {
            "source": node_id,
            "sample_seed": sample_seed,
            "rows": [r._asdict() for r in sample],
        }

    @app.get("/api/projection")
    def projection(ids: str | None = Query(default=None)):
        if ids is None:
            wanted = range(len(ctx.projection_ids))
        else:
            index = {nid: i for i, nid in enumerate(ctx.projection_ids)}
            wanted = []
            for nid in ids.split(","):
                nid = nid.strip()
                if not nid:
                    continue
                if nid not in index:
                    raise NotFoundError(f"unknown node id {nid!r}")
                wanted.append(index[nid])
        out = []
        for i in wanted:
            nid = ctx.projection_ids[i]
            out.append(
                {
                    "id": nid,
                    "x": float(ctx.projection_xy[i, 0]),
                    "y": float(ctx.projection_xy[i, 1]),
                    "asset_type": ctx.graph.get_node(nid).asset_type.name,
                }
            )
        return out

    @app.post("/api/annotations")
    def post_annotation(body: AnnotationIn):
        ann = Annotation(
            source=body.source,
            destination=body.destination,
            stars=body.stars,
            note=body.note,
            model_version=body.model_version if body.model_version is not None else ctx.model_version,
            updated_at=body.updated_at or "",
        )
        # reject references to nodes the graph does not know
        ctx.graph.get_node(ann.source)
        ctx.graph.get_node(ann.destination)
        return _annotation_json(ctx.store.upsert(ann))

    @app.get("/api/annotations")
    def list_annotations(
        source: str | None = Query(default=None),
        destination: str | None = Query(default=None),
    ):
        return [_annotation_json(a) for a in ctx.store.list(source=source, destination=destination)]

    @app.get("/api/annotations/export")
    def export_annotations():
        csv_text = export_annotations_csv(ctx.store)
        return Response(
            content=csv_text,
            media_type="text/csv",
            headers={"Content-Disposition": 'attachment; filename="annotations.csv"'},
        )

    @app.post("/api/annotations/import")
    async def import_annotations(request: Request):
        body = await request.body()
        result = import_annotations_csv(ctx.store, body.decode("utf-8"))
        return {
            "imported": result.imported,
            "rejected": [{"line": line, "reason": reason} for line, reason in result.rejected],
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    else:

        @app.get("/")
        def index():
            return {
                "service": "lineagerec",
                "endpoints": [
                    "/api/meta",
                    "/api/nodes/{id}",
                    "/api/nodes/{id}/recommendations",
                    "/api/projection",
                    "/api/annotations",
                    "/api/annotations/export",
                    "/api/annotations/import",
                ],
            }

    return app
