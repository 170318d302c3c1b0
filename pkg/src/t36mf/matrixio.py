"""Matrix JSON files: ``{"rows", "cols", "entries", "lambda"}`` plus optional keys.

Entries are polynomial strings in the grammar of :mod:`t36mf.poly`.  The
writer puts each matrix row on its own line so golden files diff cleanly.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Optional, Tuple

from .poly import PolyMatrix, PolyParseError, parse

__all__ = ["MatrixFormatError", "dumps_matrix", "loads_matrix"]


class MatrixFormatError(ValueError):
    pass


def dumps_matrix(m: PolyMatrix, lam: str = "symbolic", **extra: Any) -> str:
    head: Dict[str, Any] = {"rows": m.rows, "cols": m.cols, "lambda": lam}
    head.update(extra)
    lines = ["{"]
    for k, v in head.items():
        lines.append(f" {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)},")
    rows = [" [" + ", ".join(json.dumps(str(e)) for e in m.row(i)) + "]" for i in range(m.rows)]
    lines.append(' "entries": [')
    lines.append(",\n".join(" " + r for r in rows))
    lines.append(" ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_matrix(text: str) -> Tuple[PolyMatrix, str, Dict[str, Any]]:
    """Parse a matrix file; returns (matrix, lambda string, all other keys)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "entries" not in data:
        raise MatrixFormatError('matrix JSON needs an "entries" array')
    entries = data["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise MatrixFormatError('"entries" must be an array of rows')
    rows = int(data.get("rows", len(entries)))
    cols = int(data.get("cols", len(entries[0]) if entries else 0))
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise MatrixFormatError(f"entries do not form a {rows}x{cols} matrix")
    try:
        flat = [parse(str(e)) for r in entries for e in r]
    except PolyParseError as exc:
        raise MatrixFormatError(str(exc)) from exc
    lam = str(data.get("lambda", "symbolic"))
    meta = {k: v for k, v in data.items() if k not in ("rows", "cols", "entries", "lambda")}
    return PolyMatrix(rows, cols, flat), lam, meta


def read_matrix(path: str) -> Tuple[PolyMatrix, str, Dict[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        return loads_matrix(fh.read())


def write_matrix(path: str, m: PolyMatrix, lam: str = "symbolic", **extra: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_matrix(m, lam, **extra))


def fixture_path(name: str) -> Optional[str]:
    from importlib import resources
    p = resources.files("t36mf") / "fixtures" / name
    return str(p) if p.is_file() else None
