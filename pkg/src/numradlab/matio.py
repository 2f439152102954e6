"""Matrix exchange format: a JSON document with an integer ``dim`` and
``rows``, a dim x dim nesting of [re, im] pairs."""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import MatrixFormatError


def matrix_to_dict(A) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    rows = [[[float(z.real), float(z.imag)] for z in row] for row in A]
    return {"dim": int(A.shape[0]), "rows": rows}


def dumps_matrix(A) -> str:
    return json.dumps(matrix_to_dict(A), indent=1) + "\n"


def matrix_from_dict(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "dim" not in doc or "rows" not in doc:
        raise MatrixFormatError("document must carry 'dim' and 'rows' fields")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise MatrixFormatError(f"'dim' must be a positive integer, got {dim!r}")
    rows = doc["rows"]
    if not isinstance(rows, list) or len(rows) != dim:
        raise MatrixFormatError(f"'rows' must list {dim} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixFormatError(f"row {i} must list {dim} entries")
        for j, entry in enumerate(row):
            if not (isinstance(entry, list) and len(entry) == 2):
                raise MatrixFormatError(f"entry ({i},{j}) must be a [re, im] pair")
            re, im = entry
            if not all(isinstance(x, (int, float)) and math.isfinite(x) for x in (re, im)):
                raise MatrixFormatError(f"entry ({i},{j}) must hold finite numbers")
            out[i, j] = complex(re, im)
    return out


def loads_matrix(text) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return matrix_from_dict(doc)


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_matrix(fh.read())


def save_matrix(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_matrix(A))
