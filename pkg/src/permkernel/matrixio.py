"""Square-matrix file formats shared with the CLI.

Two formats are accepted:
  * JSON: an object {"n": int, "entries": [[row], ...]}
  * CSV: headerless, n rows of n comma-separated numbers
Parsers reject non-square data.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch
from .matcore import as_matrix


def matrix_from_json(text: str) -> np.ndarray:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "entries" not in doc:
        raise DimensionMismatch('JSON matrix must be an object with an "entries" field')
    a = as_matrix(doc["entries"])
    if "n" in doc and int(doc["n"]) != a.shape[0]:
        raise DimensionMismatch(
            f'declared n = {doc["n"]} does not match {a.shape[0]} rows'
        )
    return a


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [row for row in csv.reader(text.splitlines()) if row]
    try:
        entries = [[float(cell) for cell in row] for row in rows]
    except ValueError as exc:
        raise DimensionMismatch(f"CSV cell is not a number: {exc}") from exc
    widths = {len(row) for row in entries}
    if not entries or widths != {len(entries)}:
        raise DimensionMismatch(
            f"CSV data is not square: {len(entries)} rows, widths {sorted(widths)}"
        )
    return as_matrix(entries)


def matrix_to_json(a) -> str:
    a = as_matrix(a)
    return json.dumps({"n": a.shape[0], "entries": a.tolist()})


def load_matrix(path) -> np.ndarray:
    """Read a square matrix from a .json or .csv file (sniffed otherwise)."""
    p = Path(path)
    text = p.read_text()
    suffix = p.suffix.lower()
    if suffix == ".json":
        return matrix_from_json(text)
    if suffix == ".csv":
        return matrix_from_csv(text)
    # no recognised extension: sniff on the leading character
    if text.lstrip()[:1] == "{":
        return matrix_from_json(text)
    return matrix_from_csv(text)
