"""Text and JSON matrix file formats.

Text: first line ``n``, then ``n`` lines of ``n`` whitespace-separated numbers.
JSON: ``{"n": n, "rows": [[...], ...]}``.  Blank lines and ``#`` comments are
ignored in the text format.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .errors import PerronOrdersError
from .matrix_core import DEFAULT_RECIPROCITY_TOL, ReciprocalMatrix, validate_approx

__all__ = [
    "MatrixParseError",
    "parse_text",
    "parse_json",
    "loads_matrix",
    "load_matrix",
    "dumps_text",
    "dumps_json",
    "dumps_matrix",
]


class MatrixParseError(PerronOrdersError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def parse_text(text: str) -> np.ndarray:
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            rows.append((lineno, line))
    if not rows:
        raise MatrixParseError("empty matrix file")

    lineno, first = rows[0]
    try:
        n = int(first.strip())
    except ValueError:
        raise MatrixParseError(f"expected the dimension n, got {first.strip()!r}", lineno, 1) from None
    if n < 2:
        raise MatrixParseError(f"dimension must be at least 2, got {n}", lineno, 1)
    body = rows[1:]
    if len(body) != n:
        at = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else lineno + 1)
        raise MatrixParseError(f"expected {n} rows, found {len(body)}", at)

    M = np.empty((n, n))
    for i, (lineno, line) in enumerate(body):
        tokens = list(re.finditer(r"\S+", line))
        for count, m in enumerate(tokens):
            if count >= n:
                raise MatrixParseError(f"too many entries (expected {n})", lineno, m.start() + 1)
            try:
                M[i, count] = float(m.group())
            except ValueError:
                raise MatrixParseError(f"not a number: {m.group()!r}", lineno, m.start() + 1) from None
        if len(tokens) != n:
            raise MatrixParseError(f"expected {n} entries, found {len(tokens)}", lineno)
    return M


def parse_json(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or "rows" not in data:
        raise MatrixParseError('JSON matrix must be an object with a "rows" field')
    rows = data["rows"]
    n = data.get("n", len(rows) if isinstance(rows, list) else None)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MatrixParseError('"rows" must be a list of lists')
    if not isinstance(n, int) or len(rows) != n or any(len(r) != n for r in rows):
        raise MatrixParseError(f'"rows" is not a {n}x{n} array')
    try:
        return np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise MatrixParseError('"rows" contains non-numeric entries') from None


def loads_matrix(text: str, tol: float = DEFAULT_RECIPROCITY_TOL) -> ReciprocalMatrix:
    """Parse either format (JSON if the text starts with ``{``) and validate."""
    M = parse_json(text) if text.lstrip().startswith("{") else parse_text(text)
    return validate_approx(M, tol)


def load_matrix(path, tol: float = DEFAULT_RECIPROCITY_TOL) -> ReciprocalMatrix:
    return loads_matrix(Path(path).read_text(), tol)


def dumps_text(A: ReciprocalMatrix) -> str:
    lines = [str(A.n)]
    lines += [" ".join(repr(float(x)) for x in row) for row in A.dense]
    return "\n".join(lines) + "\n"


def dumps_json(A: ReciprocalMatrix) -> str:
    return json.dumps({"n": A.n, "rows": A.dense.tolist()}) + "\n"


def dumps_matrix(A: ReciprocalMatrix, fmt: str = "text") -> str:
    if fmt == "json":
        return dumps_json(A)
    if fmt == "text":
        return dumps_text(A)
    raise ValueError(f"unknown matrix format {fmt!r}")
