"""Serialization and the on-disk run cache used by the CLI.

JSON is written by a small emitter that prints every float with 17
significant digits (``Infinity`` / ``NaN`` for non-finite values, which
``json.loads`` reads back), so parse-then-emit is byte-identical.  CSV
uses the same float format.

The cache is a single append-only ``runs.jsonl`` in ``BANACH_DATA_DIR``
(default ``./.banach-cache``), guarded by an advisory file lock.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import math
import os
import time
from dataclasses import dataclass
from pathlib import Path

from filelock import FileLock

from .search import SearchConfig
from .spaces import NormedSpace, PolyhedralSpace

CSV_COLUMNS = ("kappa", "tau", "eps", "value", "error_bound", "wx1", "wy1", "wx2", "wy2")
DEFAULT_DATA_DIR = ".banach-cache"


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.17g}"


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    pad = " " * (indent * (_level + 1)) if indent else ""
    end = " " * (indent * _level) if indent else ""
    nl = "\n" if indent else ""
    sep = "," + nl if indent else ", "
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + nl + sep.join(items) + nl + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[" + nl + sep.join(items) + nl + end + "]"
    if hasattr(obj, "tolist"):
        return dumps(obj.tolist(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str):
    return json.loads(text)


def _cell(x) -> str:
    if x is None:
        return ""
    return format_float(float(x))


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def csv_to_rows(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [{k: (float(v) if v != "" else None) for k, v in row.items()} for row in reader]


def config_digest(cfg: SearchConfig) -> str:
    payload = json.dumps(dataclasses.asdict(cfg), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def space_key(space: NormedSpace) -> str:
    """Space id, plus a content hash for polyhedral spaces read from files."""
    if isinstance(space, PolyhedralSpace):
        h = hashlib.sha256(repr(space.extreme_points).encode()).hexdigest()[:16]
        return f"{space.id}#{h}"
    return space.id


@dataclass
class RunRecord:
    timestamp: float
    space_id: str
    kind: str  # "constant" or "theorem"
    name: str
    params: dict
    result: dict
    config_digest: str

    def key(self) -> tuple:
        return (self.space_id, self.kind, self.name, dumps(self.params, indent=0), self.config_digest)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def data_dir() -> Path:
    return Path(os.environ.get("BANACH_DATA_DIR", DEFAULT_DATA_DIR))


class RunCache:
    """Append-only cache of run records keyed by space, operation, params and config."""

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else data_dir()
        self.path = self.root / "runs.jsonl"
        self.lock = FileLock(str(self.root / "runs.jsonl.lock"))

    def lookup(self, key: tuple) -> RunRecord | None:
        if not self.path.exists():
            return None
        found = None
        with self.lock:
            with self.path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = RunRecord(**loads(line))
                    except (ValueError, TypeError):
                        continue  # a torn or foreign line; skip it
                    if rec.key() == key:
                        found = rec
        return found

    def append(self, rec: RunRecord) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        line = dumps(rec.to_dict(), indent=0)
        with self.lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")


def new_record(space: NormedSpace, kind: str, name: str, params: dict, result: dict,
               cfg: SearchConfig) -> RunRecord:
    return RunRecord(timestamp=time.time(), space_id=space_key(space), kind=kind, name=name,
                     params=params, result=result, config_digest=config_digest(cfg))
