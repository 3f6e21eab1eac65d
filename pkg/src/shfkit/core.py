"""Core domain types and elementary per-row statistics.

All types are immutable (frozen dataclasses over tuples) and hashable, so
they can be shared freely across worker processes. Symbols are 0-based
integers in [0, m); rows and columns are 0-indexed everywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class ShfType:
    """Multiset of part sizes to separate, e.g. {2,2} or {1,1,5}.

    Weights are stored sorted ascending; two types are equal iff their
    weight multisets are equal.
    """

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        w = tuple(sorted(int(x) for x in self.weights))
        if len(w) < 2:
            raise ValueError(f"type needs at least two parts, got {w}")
        if w[0] < 1:
            raise ValueError(f"weights must be positive, got {w}")
        object.__setattr__(self, "weights", w)

    @property
    def t(self) -> int:
        """Number of parts."""
        return len(self.weights)

    @property
    def u(self) -> int:
        """Total number of columns a family occupies."""
        return sum(self.weights)

    def __str__(self) -> str:
        groups = []
        for w, run in itertools.groupby(self.weights):
            q = len(list(run))
            groups.append(f"{w}^{q}" if q > 1 else f"{w}")
        return "{" + ",".join(groups) + "}"


@dataclass(frozen=True)
class Matrix:
    """An N x n representation matrix over the alphabet {0, ..., m-1}.

    Row i gives the values of the i-th hash function on the n points.
    """

    entries: tuple[tuple[int, ...], ...]
    m: int

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(e) for e in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise ValueError("ragged rows")
        if self.m < 1:
            raise ValueError("alphabet size must be >= 1")
        for i, row in enumerate(rows):
            for j, e in enumerate(row):
                if not 0 <= e < self.m:
                    raise ValueError(f"entry {e} at ({i},{j}) outside [0,{self.m})")
        object.__setattr__(self, "entries", rows)

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    @property
    def num_cols(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.num_cols)]

    @classmethod
    def from_columns(cls, cols, m: int) -> "Matrix":
        rows = tuple(zip(*cols))
        return cls(rows, m)

    def drop_column(self, j: int) -> "Matrix":
        rows = tuple(row[:j] + row[j + 1:] for row in self.entries)
        return Matrix(rows, self.m)


@dataclass(frozen=True)
class Hypergraph:
    """n vertices plus edges stored as ordered sequences of distinct vertices.

    Edge order matters for matrix construction (it fixes the symbol assigned
    to each vertex); coverage queries treat edges as sets.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("vertex count must be positive")
        edges = tuple(tuple(int(v) for v in e) for e in self.edges)
        for e in edges:
            if not e:
                raise ValueError("empty edge")
            if len(set(e)) != len(e):
                raise ValueError(f"edge {e} repeats a vertex")
            if min(e) < 0 or max(e) >= self.n:
                raise ValueError(f"edge {e} has a vertex outside [0,{self.n})")
        object.__setattr__(self, "edges", edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def max_edge_size(self) -> int:
        return max(len(e) for e in self.edges) if self.edges else 0


@dataclass(frozen=True)
class Witness:
    """A family of pairwise-disjoint column sets that no row separates."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        parts = tuple(tuple(sorted(int(c) for c in p)) for p in self.parts)
        seen: set[int] = set()
        for p in parts:
            if not p:
                raise ValueError("empty part")
            if seen & set(p):
                raise ValueError("parts are not pairwise disjoint")
            seen |= set(p)
        object.__setattr__(self, "parts", parts)

    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(p) for p in self.parts))

    def matches(self, ty: ShfType) -> bool:
        return self.sizes() == ty.weights


def lambda_stat(a: Matrix, i: int, x: int) -> int:
    """Number of columns j with a[i][j] == x."""
    if not 0 <= i < a.num_rows:
        raise ValueError(f"row index {i} out of range")
    if not 0 <= x < a.m:
        raise ValueError(f"symbol {x} outside alphabet [0,{a.m})")
    return sum(1 for e in a.entries[i] if e == x)


def d_stat(a: Matrix, i: int, j: int, x: int, y: int) -> int:
    """Number of columns carrying x in row i and y in row j."""
    if i == j:
        raise ValueError("d_stat needs two distinct rows")
    if not (0 <= i < a.num_rows and 0 <= j < a.num_rows):
        raise ValueError("row index out of range")
    if not (0 <= x < a.m and 0 <= y < a.m):
        raise ValueError("symbol outside alphabet")
    ri, rj = a.entries[i], a.entries[j]
    return sum(1 for k in range(a.num_cols) if ri[k] == x and rj[k] == y)


def lambda_max(a: Matrix) -> int:
    """Maximum symbol multiplicity over all rows."""
    best = 0
    for row in a.entries:
        counts: dict[int, int] = {}
        for e in row:
            counts[e] = counts.get(e, 0) + 1
        best = max(best, max(counts.values()))
    return best
