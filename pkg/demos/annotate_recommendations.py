#!/usr/bin/env python3
"""Record review verdicts against recommendations and round-trip them.

Annotations live in an append-only journal keyed by (source, destination,
model version); re-rating a pair overwrites the earlier verdict. The CSV
export is the interchange format the web UI downloads and re-uploads.
"""

import io
import os
import tempfile

import lineagerec as lr

workdir = tempfile.mkdtemp(prefix="annotations-demo-")
journal = os.path.join(workdir, "annotations.jsonl")

store = lr.AnnotationStore(journal)
lr.annotate(store, lr.Annotation("user-07", "table-19", stars=5, note="exactly right"))
lr.annotate(store, lr.Annotation("user-07", "table-02", stars=1, note="wrong team"))
lr.annotate(store, lr.Annotation("user-12", "workbook-03", stars=4, model_version="a1b2c3d4e5f6"))

# second thoughts about table-19: same key, so this replaces the 5-star row
lr.annotate(store, lr.Annotation("user-07", "table-19", stars=3, note="useful, not perfect"))

print(f"{len(store)} annotations after 4 writes (one was an overwrite)")
for ann in store.list():
    print(f"  {ann.source} -> {ann.destination}: {ann.stars} stars  {ann.note!r}")
print()

csv_text = lr.export_annotations_csv(store)
print("export:")
print(csv_text)

# a fresh store on a new journal imports the same rows
other = lr.AnnotationStore(os.path.join(workdir, "copy.jsonl"))
result = lr.import_annotations_csv(other, io.StringIO(csv_text))
print(f"imported {result.imported} rows, {len(result.rejected)} rejected")
print("re-export identical:", lr.export_annotations_csv(other) == csv_text)
print()

# bad rows are rejected line by line, good rows still land
broken = csv_text + "user-99,table-01,eleven,,,2026-01-01T00:00:00+00:00\n"
third = lr.AnnotationStore(os.path.join(workdir, "third.jsonl"))
result = lr.import_annotations_csv(third, io.StringIO(broken))
print(f"with one bad row appended: imported {result.imported}, rejected {result.rejected}")

# the journal survives process restarts: reopen from disk
reopened = lr.AnnotationStore(journal)
print(f"reopened journal has {len(reopened)} annotations")
