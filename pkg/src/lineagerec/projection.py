"""2D projection of the node embedding for the map-style view.

Default method is PCA computed by power iteration with deflation, which
is deterministic (fixed start vector, fixed sign convention) and cheap at
catalog scale. The method name is an extension point; alternatives can
register alongside "pca".
"""

from __future__ import annotations

import csv
import functools
from dataclasses import dataclass

import numpy as np

from .errors import IngestError
from .gnn import EmbeddingMatrix

PROJECTION_HEADER = ["id", "x", "y"]

_POWER_TOL = 1e-9
_POWER_MAX_ITER = 1000


@dataclass
class Projection2D:
    ids: list[str]
    xy: np.ndarray
    method: str
    explained_variance: tuple[float, float]

    def __post_init__(self):
        if self.xy.shape != (len(self.ids), 2):
            raise ValueError("coordinate shape does not match id count")
        if not np.isfinite(self.xy).all():
            raise ValueError("projection contains non-finite coordinates")

    @functools.cached_property
    def coords(self) -> dict[str, tuple[float, float]]:
        return {nid: (float(x), float(y)) for nid, (x, y) in zip(self.ids, self.xy)}


def _power_iteration(cov: np.ndarray, start: np.ndarray) -> tuple[np.ndarray, float]:
    """Dominant eigenpair of a PSD matrix; deterministic given ``start``."""
    v = start / np.linalg.norm(start)
    for _ in range(_POWER_MAX_ITER):
        av = cov @ v
        norm = np.linalg.norm(av)
        if norm < 1e-15:
            return v, 0.0
        v_new = av / norm
        if np.linalg.norm(v_new - v) < _POWER_TOL:
            v = v_new
            break
        v = v_new
    return v, float(v @ cov @ v)


def _orthogonal_unit(v: np.ndarray) -> np.ndarray:
    # deterministic unit vector orthogonal to v (used when data is rank-1)
    basis = np.zeros_like(v)
    basis[int(np.argmin(np.abs(v)))] = 1.0
    w = basis - (basis @ v) * v
    return w / np.linalg.norm(w)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    return -v if v[int(np.argmax(np.abs(v)))] < 0 else v


def _project_pca(values: np.ndarray) -> tuple[np.ndarray, tuple[float, float]]:
    n = values.shape[0]
    centered = values - values.mean(axis=0)
    cov = (centered.T @ centered) / (n - 1)
    total = float(np.trace(cov))

    # deterministic start: coordinate axis with the largest variance
    start = np.zeros(cov.shape[0])
    start[int(np.argmax(np.diag(cov)))] = 1.0
    v1, lam1 = _power_iteration(cov, start)
    if lam1 <= 0.0:
        # all points coincide: nothing to spread out
        return np.zeros((n, 2)), (0.0, 0.0)
    v1 = _fix_sign(v1)

    deflated = cov - lam1 * np.outer(v1, v1)
    start2 = np.zeros(cov.shape[0])
    start2[int(np.argmax(np.diag(deflated)))] = 1.0
    v2, lam2 = _power_iteration(deflated, start2)
    if lam2 <= _POWER_TOL * lam1:
        v2, lam2 = _orthogonal_unit(v1), 0.0
    else:
        # re-orthogonalize against v1 to shed deflation round-off
        v2 = v2 - (v2 @ v1) * v1
        v2 = v2 / np.linalg.norm(v2)
    v2 = _fix_sign(v2)

    coords = centered @ np.stack([v1, v2], axis=1)
    return coords, (lam1 / total, max(lam2, 0.0) / total)


_METHODS = {"pca": _project_pca}


def project(embedding: EmbeddingMatrix, method: str = "pca") -> Projection2D:
    """Map the N x M embedding to 2D coordinates.

    Requires N >= 2 and M >= 2. Deterministic: identical input gives
    identical output bits.
    """
    if method not in _METHODS:
        available = ", ".join(sorted(_METHODS))
        raise ValueError(f"unknown projection method {method!r}; available: {available}")
    n, m = embedding.shape
    if n < 2:
        raise ValueError("projection needs at least 2 nodes")
    if m < 2:
        raise ValueError("projection needs an embedding with at least 2 dimensions")
    xy, explained = _project_pca(embedding.values)
    return Projection2D(
        ids=list(embedding.ids),
        xy=xy,
        method=method,
        explained_variance=(float(explained[0]), float(explained[1])),
    )


def write_projection_csv(path, projection: Projection2D) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(PROJECTION_HEADER)
        for nid, (x, y) in zip(projection.ids, projection.xy):
            w.writerow([nid, repr(float(x)), repr(float(y))])


def read_projection_csv(path) -> tuple[list[str], np.ndarray]:
    """Load ``id,x,y`` rows; returns ids and an N x 2 coordinate array."""
    ids: list[str] = []
    coords: list[tuple[float, float]] = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != PROJECTION_HEADER:
            raise IngestError(f"expected projection header {PROJECTION_HEADER}, got {header}", line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise IngestError(f"expected 3 fields, got {len(row)}", line=lineno)
            ids.append(row[0])
            coords.append((float(row[1]), float(row[2])))
    xy = np.array(coords) if coords else np.empty((0, 2))
    return ids, xy
