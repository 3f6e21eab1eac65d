"""File formats and JSON report plumbing.

Matrix files:      "SHF-MATRIX v1 N n m" header, then N lines of n symbols.
Hypergraph files:  "HYPERGRAPH v1 n N" header, then N edge lines; blank
                   lines and '#' comments are ignored. Headerless block
                   files (one edge per line, as published by covering-design
                   repositories) are also accepted: n is inferred from the
                   largest index, and indices are shifted down when the file
                   is detected to be 1-based (no 0 appears anywhere).

All files are 0-based except for that auto-detected legacy case, which is
logged whenever it fires.
"""
from __future__ import annotations

import json
import logging
import re
from pathlib import Path

from .core import Hypergraph, Matrix, ShfType

logger = logging.getLogger("shfkit")

SCHEMA = "shfkit-report/1"


class FileFormatError(ValueError):
    """Malformed matrix or hypergraph file; carries a line number."""

    def __init__(self, message: str, source: str = "<string>", line: int | None = None):
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


def render_matrix(a: Matrix) -> str:
    lines = [f"SHF-MATRIX v1 {a.num_rows} {a.num_cols} {a.m}"]
    lines.extend(" ".join(str(e) for e in row) for row in a.entries)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, source: str = "<string>") -> Matrix:
    lines = text.splitlines()
    if not lines:
        raise FileFormatError("empty file", source)
    header = lines[0].split()
    if len(header) != 5 or header[0] != "SHF-MATRIX" or header[1] != "v1":
        raise FileFormatError("expected header 'SHF-MATRIX v1 N n m'", source, 1)
    try:
        num_rows, n, m = (int(x) for x in header[2:])
    except ValueError:
        raise FileFormatError("non-integer header counts", source, 1) from None
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FileFormatError("non-integer entry", source, lineno) from None
        if len(row) != n:
            raise FileFormatError(f"expected {n} entries, got {len(row)}", source, lineno)
        for col, e in enumerate(row):
            if not 0 <= e < m:
                raise FileFormatError(
                    f"entry {e} in column {col} outside [0,{m})", source, lineno
                )
        rows.append(row)
    if len(rows) != num_rows:
        raise FileFormatError(f"expected {num_rows} rows, got {len(rows)}", source)
    return Matrix(tuple(rows), m)


def read_matrix(path) -> Matrix:
    p = Path(path)
    return parse_matrix(p.read_text(), source=str(p))


def write_matrix(path, a: Matrix) -> None:
    Path(path).write_text(render_matrix(a))


def render_hypergraph(h: Hypergraph) -> str:
    lines = [f"HYPERGRAPH v1 {h.n} {h.num_edges}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str, source: str = "<string>") -> Hypergraph:
    raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            raw.append((lineno, stripped))
    if not raw:
        raise FileFormatError("no content", source)
    first = raw[0][1].split()
    if first[0] == "HYPERGRAPH":
        if len(first) != 4 or first[1] != "v1":
            raise FileFormatError("expected header 'HYPERGRAPH v1 n N'", source, raw[0][0])
        try:
            n, num_edges = int(first[2]), int(first[3])
        except ValueError:
            raise FileFormatError("non-integer header counts", source, raw[0][0]) from None
        body = raw[1:]
        edges = _parse_edges(body, source)
        if len(edges) != num_edges:
            raise FileFormatError(
                f"expected {num_edges} edges, got {len(edges)}", source
            )
        return Hypergraph(n, tuple(edges))
    # headerless block file
    edges = _parse_edges(raw, source)
    flat = [v for e in edges for v in e]
    top = max(flat)
    if min(flat) > 0:
        # 1-based legacy file: no 0 appears and the largest index equals n
        logger.info(
            "%s: headerless block file with no index 0; treating as 1-based "
            "with n = %d and shifting indices down",
            source, top,
        )
        edges = [tuple(v - 1 for v in e) for e in edges]
        n = top
    else:
        n = top + 1
    return Hypergraph(n, tuple(edges))


def _parse_edges(numbered_lines, source: str):
    edges = []
    for lineno, line in numbered_lines:
        try:
            edge = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FileFormatError("non-integer vertex", source, lineno) from None
        if len(set(edge)) != len(edge):
            raise FileFormatError("repeated vertex in edge", source, lineno)
        edges.append(edge)
    return edges


def read_hypergraph(path) -> Hypergraph:
    p = Path(path)
    return parse_hypergraph(p.read_text(), source=str(p))


def write_hypergraph(path, h: Hypergraph) -> None:
    Path(path).write_text(render_hypergraph(h))


_TERM_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_type_string(s: str) -> ShfType:
    """Parse "{w1^q1, w2, ...}" into a type; weights are sorted on entry."""
    compact = s.replace(" ", "")
    if not (compact.startswith("{") and compact.endswith("}")):
        raise ValueError(f"type string must be brace-delimited, got {s!r}")
    weights: list[int] = []
    body = compact[1:-1]
    if not body:
        raise ValueError("empty type string")
    for term in body.split(","):
        match = _TERM_RE.match(term)
        if not match:
            raise ValueError(f"bad term {term!r} in type string {s!r}")
        w = int(match.group(1))
        q = int(match.group(2)) if match.group(2) else 1
        if q < 1:
            raise ValueError(f"multiplicity must be positive in {term!r}")
        weights.extend([w] * q)
    return ShfType(tuple(weights))


def report(invocation: dict, **payload) -> str:
    """One line of JSON carrying the schema version and the invocation."""
    doc = {"schema": SCHEMA, "invocation": invocation}
    doc.update(payload)
    return json.dumps(doc, separators=(", ", ": "), sort_keys=False)
