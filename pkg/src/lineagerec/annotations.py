"""Expert quality judgments on recommendations, stored durably.

One annotation per (source, destination, model_version), last write
wins. Writes append to a JSONL journal that is compacted on startup;
export/import is a lossless CSV round trip so judgments can move in and
out of notebook environments.
"""

from __future__ import annotations

import csv
import io
import json
import os
import threading
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from .errors import IngestError

ANNOTATIONS_HEADER = ["source", "destination", "stars", "note", "model_version", "updated_at"]

STARS_MIN = 1
STARS_MAX = 5


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class Annotation:
    source: str
    destination: str
    stars: int
    note: str = ""
    model_version: str = ""
    updated_at: str = ""

    def __post_init__(self):
        if not isinstance(self.stars, int) or not STARS_MIN <= self.stars <= STARS_MAX:
            raise ValueError(f"stars must be an integer in {STARS_MIN}..{STARS_MAX}")
        if not self.source or not self.destination:
            raise ValueError("source and destination are required")
        if not self.updated_at:
            self.updated_at = _now()

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.source, self.destination, self.model_version)


@dataclass
class ImportResult:
    imported: int
    rejected: list[tuple[int, str]]


class AnnotationStore:
    """Journal-backed key-value store with last-write-wins upserts."""

    def __init__(self, path):
        self.path = path
        self._lock = threading.Lock()
        self._records: dict[tuple[str, str, str], Annotation] = {}
        self._load_and_compact()

    def _load_and_compact(self):
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as f:
                for line in f:
                    line = line.strip()
                    if not line:
                        continue
                    data = json.loads(line)
                    ann = Annotation(**data)
                    self._records[ann.key] = ann
        self._rewrite()

    def _rewrite(self):
        tmp = f"{self.path}.tmp"
        with open(tmp, "w", encoding="utf-8") as f:
            for key in sorted(self._records):
                f.write(json.dumps(asdict(self._records[key]), sort_keys=True) + "\n")
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, self.path)

    def upsert(self, annotation: Annotation) -> Annotation:
        """Persist to the journal before acknowledging the write."""
        with self._lock:
            self._records[annotation.key] = annotation
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(json.dumps(asdict(annotation), sort_keys=True) + "\n")
                f.flush()
                os.fsync(f.fileno())
        return annotation

    def get(self, source: str, destination: str, model_version: str = "") -> Annotation | None:
        return self._records.get((source, destination, model_version))

    def list(self, source: str | None = None, destination: str | None = None) -> list[Annotation]:
        out = [
            ann
            for key, ann in sorted(self._records.items())
            if (source is None or ann.source == source)
            and (destination is None or ann.destination == destination)
        ]
        return out

    def __len__(self):
        return len(self._records)


def annotate(store: AnnotationStore, annotation: Annotation) -> Annotation:
    return store.upsert(annotation)


def export_annotations_csv(store: AnnotationStore) -> str:
    """CSV text with RFC-4180 quoting, rows sorted by (source, destination)."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(ANNOTATIONS_HEADER)
    for ann in store.list():
        w.writerow(
            [ann.source, ann.destination, ann.stars, ann.note, ann.model_version, ann.updated_at]
        )
    return buf.getvalue()


def import_annotations_csv(store: AnnotationStore, stream) -> ImportResult:
    """Upsert rows from a CSV export; malformed rows are skipped, not fatal.

    Returns the accepted count plus (line, reason) pairs for rejects.
    The header must match the export format exactly.
    """
    if isinstance(stream, (str, bytes)):
        stream = io.StringIO(stream if isinstance(stream, str) else stream.decode("utf-8"))
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != ANNOTATIONS_HEADER:
        raise IngestError(f"expected header {ANNOTATIONS_HEADER}, got {header}", line=1)

    imported = 0
    rejected: list[tuple[int, str]] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(ANNOTATIONS_HEADER):
            rejected.append((lineno, f"expected {len(ANNOTATIONS_HEADER)} fields, got {len(row)}"))
            continue
        source, destination, stars_raw, note, model_version, updated_at = row
        try:
            stars = int(stars_raw)
        except ValueError:
            rejected.append((lineno, f"stars is not an integer: {stars_raw!r}"))
            continue
        try:
            ann = Annotation(source, destination, stars, note, model_version, updated_at)
        except ValueError as exc:
            rejected.append((lineno, str(exc)))
            continue
        store.upsert(ann)
        imported += 1
    return ImportResult(imported=imported, rejected=rejected)
