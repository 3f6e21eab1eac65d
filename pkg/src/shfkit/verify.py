"""Ground-truth verifier: decide whether a matrix represents an SHF of a type.

The verifier enumerates every family of pairwise-disjoint column sets whose
sizes match the type and checks that some row separates it. Enumeration
order is part of the contract: columns are chosen in lexicographic order
within each part, and parts of equal size are ordered by their smallest
element so each unordered family is visited exactly once. The first failing
family in that order is returned as the witness.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .core import Matrix, ShfType, Witness


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification run plus enumeration diagnostics."""

    ok: bool
    witness: Witness | None
    families_checked: int
    rows_probed: int


def row_separates(a: Matrix, r: int, family: Witness | Sequence[Iterable[int]]) -> bool:
    """True iff the symbol sets row r assigns to the parts are pairwise disjoint."""
    if not 0 <= r < a.num_rows:
        raise ValueError(f"row index {r} out of range")
    parts = family.parts if isinstance(family, Witness) else [tuple(p) for p in family]
    seen: set[int] = set()
    for p in parts:
        for c in p:
            if not 0 <= c < a.num_cols:
                raise ValueError(f"column index {c} out of range")
        if seen & set(p):
            raise ValueError("parts are not pairwise disjoint")
        seen |= set(p)
    row = a.entries[r]
    acc: set[int] = set()
    for p in parts:
        symbols = {row[c] for c in p}
        if acc & symbols:
            return False
        acc |= symbols
    return True


def iter_families(
    n: int, sizes: Sequence[int], containing: int | None = None
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield families of disjoint column subsets of [0,n) with the given sizes.

    Sizes must be ascending. Equal-size parts appear with increasing smallest
    element. With `containing` set, only families whose union includes that
    column are produced, in the same relative order.
    """
    sizes = tuple(sizes)

    def rec(avail: tuple[int, ...], k: int, prev_min: int, placed: bool):
        if k == len(sizes):
            if placed:
                yield ()
            return
        size = sizes[k]
        same_as_prev = k > 0 and sizes[k - 1] == size
        for part in itertools.combinations(avail, size):
            if same_as_prev and part[0] < prev_min:
                continue
            has_target = containing is not None and containing in part
            if containing is not None and not placed and not has_target and k + 1 == len(sizes):
                continue
            rest = tuple(c for c in avail if c not in part)
            for tail in rec(rest, k + 1, part[0], placed or has_target or containing is None):
                yield (part,) + tail

    cols = tuple(range(n))
    yield from rec(cols, 0, -1, containing is None)


def _neq_masks(a: Matrix) -> list[list[int]]:
    """masks[i][j] = bitmask over rows r where column i and column j differ."""
    cols = a.columns()
    n = a.num_cols
    masks = [[0] * n for _ in range(n)]
    for i in range(n):
        ci = cols[i]
        for j in range(i + 1, n):
            cj = cols[j]
            m = 0
            for r, (x, y) in enumerate(zip(ci, cj)):
                if x != y:
                    m |= 1 << r
            masks[i][j] = m
            masks[j][i] = m
    return masks


def _separating_rows(masks: list[list[int]], parts: Sequence[Sequence[int]], full: int) -> int:
    """Bitmask of rows separating the family: rows where every cross-part
    column pair differs."""
    acc = full
    for pi in range(len(parts)):
        for pj in range(pi + 1, len(parts)):
            for x in parts[pi]:
                row_x = masks[x]
                for y in parts[pj]:
                    acc &= row_x[y]
                    if not acc:
                        return 0
    return acc


def _run(a: Matrix, ty: ShfType, containing: int | None) -> Verdict:
    n = a.num_cols
    if ty.u > n:
        raise ValueError(
            f"not enough columns to form a family: type {ty} needs {ty.u}, matrix has {n}"
        )
    masks = _neq_masks(a)
    full = (1 << a.num_rows) - 1
    families = 0
    probes = 0
    for parts in iter_families(n, ty.weights, containing):
        families += 1
        rows = _separating_rows(masks, parts, full)
        if rows == 0:
            probes += a.num_rows
            return Verdict(False, Witness(parts), families, probes)
        probes += (rows & -rows).bit_length()  # rows scanned until the first separating one
    return Verdict(True, None, families, probes)


def is_shf(a: Matrix, ty: ShfType) -> Verdict:
    """Decide whether `a` represents an SHF of type `ty`.

    Returns a failing family as witness when the answer is no.
    """
    return _run(a, ty, None)


def incremental_check(a: Matrix, ty: ShfType, new_col: int) -> Verdict:
    """Like is_shf but only enumerates families containing `new_col`.

    Equivalent to the full check when the matrix without `new_col` is
    already known to be an SHF of the type, since any new failure must
    involve the new column.
    """
    if not 0 <= new_col < a.num_cols:
        raise ValueError(f"column index {new_col} out of range")
    return _run(a, ty, new_col)
