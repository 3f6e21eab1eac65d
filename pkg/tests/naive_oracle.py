"""Brute-force reference implementations, kept deliberately independent of
the package internals: families are materialized with itertools and checked
with plain set arithmetic, and the existence search below uses no canonical
forms or bitmask tricks."""
from __future__ import annotations

import itertools

from shfkit import Matrix


def naive_row_separates(a: Matrix, r: int, parts) -> bool:
    sets = [{a.entries[r][c] for c in p} for p in parts]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j]:
                return False
    return True


def naive_families(n: int, sizes):
    """Every family of disjoint parts with the given sizes, as a set of
    frozensets of frozensets (order-free)."""
    seen = set()
    cols = range(n)

    def rec(avail, k, acc):
        if k == len(sizes):
            seen.add(frozenset(acc))
            return
        for part in itertools.combinations(avail, sizes[k]):
            rest = [c for c in avail if c not in part]
            rec(rest, k + 1, acc + [frozenset(part)])

    rec(list(cols), 0, [])
    return seen


def naive_is_shf(a: Matrix, sizes) -> bool:
    for family in naive_families(a.num_cols, tuple(sizes)):
        parts = [tuple(p) for p in family]
        if not any(naive_row_separates(a, r, parts) for r in range(a.num_rows)):
            return False
    return True


def naive_failing_families(a: Matrix, sizes, containing: int | None = None):
    out = []
    for family in naive_families(a.num_cols, tuple(sizes)):
        if containing is not None and not any(containing in p for p in family):
            continue
        parts = [tuple(p) for p in family]
        if not any(naive_row_separates(a, r, parts) for r in range(a.num_rows)):
            out.append(family)
    return out


def naive_exists_shf(num_rows: int, n: int, m: int, sizes) -> bool:
    """Backtracking existence search over nondecreasing column sequences
    starting with the all-zero column (every class has such a member), with
    plain full re-verification at each depth and no isomorph rejection."""
    all_cols = list(itertools.product(range(m), repeat=num_rows))

    def consistent(cols) -> bool:
        matrix = Matrix.from_columns(cols, m)
        if matrix.num_cols < sum(sizes):
            return True
        return naive_is_shf(matrix, sizes)

    def extend(cols) -> bool:
        if len(cols) == n:
            return True
        for c in all_cols:
            if c < cols[-1]:
                continue
            if consistent(cols + [c]):
                if extend(cols + [c]):
                    return True
        return False

    return extend([tuple([0] * num_rows)])
