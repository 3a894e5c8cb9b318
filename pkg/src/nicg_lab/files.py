"""Witness and checkpoint file formats.

Vector strings are human-oriented: character p (0-based, left to right) is
component p+1, so the string reads like a matrix column printed top to
bottom.  Witness JSON comes in three accepted shapes: a single witness
record, a list of records, or a run container with a ``witnesses`` list;
the loader normalizes all of them.  Checkpoints are written via a temp file
and an atomic rename so a killed run never leaves a readable torn file.
"""

from __future__ import annotations

import json
import os
from typing import Any, Sequence

from .core import VecSet, sum_set
from .errors import InvalidInputError


def mask_to_string(mask: int, d: int) -> str:
    return "".join("1" if (mask >> p) & 1 else "0" for p in range(d))


def mask_from_string(s: str) -> int:
    if not s or any(ch not in "01" for ch in s):
        raise InvalidInputError(f"vector string {s!r} must be nonempty over '0'/'1'")
    mask = 0
    for p, ch in enumerate(s):
        if ch == "1":
            mask |= 1 << p
    return mask


def vecset_to_strings(x: VecSet) -> list[str]:
    return [mask_to_string(m, x.dim) for m in x.masks]


def vecset_from_strings(d: int, vectors: Sequence[str]) -> VecSet:
    masks = []
    for i, s in enumerate(vectors):
        if len(s) != d:
            raise InvalidInputError(
                f"vector {i}: string {s!r} has length {len(s)}, expected {d}"
            )
        m = mask_from_string(s)
        if m == 0:
            raise InvalidInputError(f"vector {i}: zero vector not allowed")
        masks.append(m)
    if len(set(masks)) != len(masks):
        raise InvalidInputError("duplicate vector strings")
    return VecSet.from_masks(d, masks)


def witness_payload(x: VecSet, meta: dict[str, Any] | None = None) -> dict[str, Any]:
    return {
        "dim": x.dim,
        "cardinality": len(x),
        "vectors": vecset_to_strings(x),
        "sum": list(sum_set(x)),
        "meta": dict(meta or {}),
    }


def parse_witness_record(rec: dict[str, Any]) -> VecSet:
    for field in ("dim", "vectors"):
        if field not in rec:
            raise InvalidInputError(f"witness record missing field {field!r}")
    d = rec["dim"]
    if not isinstance(d, int):
        raise InvalidInputError(f"dim must be an int, got {d!r}")
    x = vecset_from_strings(d, rec["vectors"])
    if "cardinality" in rec and rec["cardinality"] != len(x):
        raise InvalidInputError(
            f"cardinality field {rec['cardinality']} != {len(x)} vectors"
        )
    if "sum" in rec and list(rec["sum"]) != list(sum_set(x)):
        raise InvalidInputError(
            f"sum field {rec['sum']} does not match recomputed {list(sum_set(x))}"
        )
    return x


def _iter_records(doc: Any) -> list[dict[str, Any]]:
    if isinstance(doc, dict) and "witnesses" in doc:
        recs = doc["witnesses"]
    elif isinstance(doc, dict):
        recs = [doc]
    elif isinstance(doc, list):
        recs = doc
    else:
        raise InvalidInputError("expected a witness record, list, or run container")
    if not isinstance(recs, list) or not all(isinstance(r, dict) for r in recs):
        raise InvalidInputError("witnesses must be a list of records")
    return recs


def load_solution_file(path: str) -> list[VecSet]:
    """All witness sets contained in the file, in file order."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: malformed JSON: {exc}") from exc
    return [parse_witness_record(rec) for rec in _iter_records(doc)]


def load_run_container(path: str) -> dict[str, Any]:
    """Raw run container (dict) for commands that need more than witnesses."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise InvalidInputError(f"{path}: expected a JSON object")
    return doc


def dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def save_json(payload: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(payload))


def save_atomic(payload: Any, path: str) -> None:
    """Temp-file-then-rename write; readers never observe a torn file."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(dump_json(payload))
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_checkpoint(path: str) -> dict[str, Any]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    for field in ("config", "frontier", "nodes_visited"):
        if field not in doc:
            raise InvalidInputError(f"checkpoint missing field {field!r}")
    return doc
