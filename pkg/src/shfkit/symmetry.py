"""Matrix isomorphism, canonical forms, and forbidden-configuration detection.

Two representation matrices are isomorphic when one maps to the other by
permuting rows, permuting columns, and renaming symbols independently within
each row. Separation is decided row-locally by equality patterns, so the
whole group preserves the SHF property.

The canonical form is the lexicographically least matrix (row-major entry
order) in the isomorphism class. It is computed by choosing output rows one
at a time, branching only over choices that keep the emitted prefix minimal;
remaining column-order freedom is tracked as an ordered partition of columns
that each emitted row refines. Within a fixed arrangement the optimal symbol
renaming is first-occurrence order, so no search over renamings is needed.
Intended for desk-scale matrices (fewer than 10 rows, under ~60 columns).
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .core import Matrix, ShfType, d_stat
from .verify import is_shf

# Forbidden 4x4 grids: letters are per-row equality classes, '*' is a wildcard.
FORBIDDEN_PATTERNS: dict[str, tuple[tuple[str, ...], ...]] = {
    "F1": (("a", "a", "*", "*"),
           ("b", "b", "*", "*"),
           ("*", "*", "c", "c"),
           ("*", "*", "d", "d")),
    "F2": (("a", "a", "*", "*"),
           ("b", "b", "*", "*"),
           ("x", "*", "x", "*"),
           ("*", "v", "*", "v")),
    "F3": (("a", "a", "*", "*"),
           ("*", "b", "b", "*"),
           ("x", "*", "*", "x"),
           ("*", "*", "v", "v")),
}


def _pattern_pairs(grid: tuple[tuple[str, ...], ...]) -> list[tuple[int, int, int]]:
    """Equality constraints (pattern row, col position, col position) of a grid."""
    pairs = []
    for i, row in enumerate(grid):
        by_class: dict[str, list[int]] = {}
        for j, cell in enumerate(row):
            if cell != "*":
                by_class.setdefault(cell, []).append(j)
        for positions in by_class.values():
            for a, b in zip(positions, positions[1:]):
                pairs.append((i, a, b))
    return pairs


_PATTERN_PAIRS = {name: _pattern_pairs(grid) for name, grid in FORBIDDEN_PATTERNS.items()}


@dataclass(frozen=True)
class ForbiddenHit:
    """Location of a forbidden configuration: which grid, at which rows/columns."""

    config: str
    rows: tuple[int, int, int, int]
    cols: tuple[int, int, int, int]


def apply_isomorphism(a: Matrix, row_perm, col_perm, symbol_perms) -> Matrix:
    """Apply a group element: output row i is input row row_perm[i], output
    column j is input column col_perm[j], and row i's symbols are renamed by
    symbol_perms[i] (indexed by the output row)."""
    rows = []
    for i in range(a.num_rows):
        src = a.entries[row_perm[i]]
        perm = symbol_perms[i]
        rows.append(tuple(perm[src[col_perm[j]]] for j in range(a.num_cols)))
    return Matrix(tuple(rows), a.m)


def _emit_row(vals, cells, last_row: bool):
    """Minimal relabeled string of one row subject to an ordered column
    partition. Returns (string, branches) where each branch is a refined
    partition realizing the string; branches differ only in how ties between
    equal-size groups of fresh symbols were broken."""
    states = [({}, 0, [], [])]  # (symbol->label, next label, string parts, refined cells)
    for ci, cell in enumerate(cells):
        later = set()
        if last_row:
            for other in cells[ci + 1:]:
                later.update(vals[c] for c in other)
        new_states = []
        for maps, nxt, parts, refined in states:
            groups: dict[int, list[int]] = {}
            for c in cell:
                groups.setdefault(vals[c], []).append(c)
            known = sorted((maps[s], s) for s in groups if s in maps)
            fresh = [s for s in groups if s not in maps]
            # fresh groups sorted by size descending gives the least string;
            # equal sizes are genuine ties worth branching on, except on the
            # last row where only symbols resurfacing in a later cell can
            # still influence the string
            by_size: dict[int, list[int]] = {}
            for s in fresh:
                by_size.setdefault(len(groups[s]), []).append(s)
            tie_orders = []
            for size in sorted(by_size, reverse=True):
                syms = sorted(by_size[size])
                if len(syms) == 1 or (last_row and not any(s in later for s in syms)):
                    tie_orders.append([tuple(syms)])
                else:
                    tie_orders.append(list(itertools.permutations(syms)))
            for combo in itertools.product(*tie_orders):
                m2 = dict(maps)
                nx2 = nxt
                p2 = list(parts)
                r2 = list(refined)
                for label, s in known:
                    p2.extend([label] * len(groups[s]))
                    r2.append(sorted(groups[s]))
                for syms in combo:
                    for s in syms:
                        m2[s] = nx2
                        p2.extend([nx2] * len(groups[s]))
                        r2.append(sorted(groups[s]))
                        nx2 += 1
                new_states.append((m2, nx2, p2, r2))
        # a tie broken in an earlier cell can resurface here with a different
        # label, so prefixes may now differ; keep only the least
        lo = min(st[2] for st in new_states)
        states = [st for st in new_states if st[2] == lo]
    string = tuple(states[0][2])
    branches = [st[3] for st in states]
    return string, branches


def canonical_form(a: Matrix) -> Matrix:
    """Lexicographically least matrix in the isomorphism class of `a`."""
    n_rows, n_cols = a.num_rows, a.num_cols
    rows_vals = a.entries
    best: list[tuple[int, ...]] | None = None

    def rec(used: int, cells, emitted: list[tuple[int, ...]]) -> None:
        nonlocal best
        level = len(emitted)
        if level == n_rows:
            if best is None or emitted < best:
                best = list(emitted)
            return
        last = level == n_rows - 1
        min_string = None
        chosen: list[tuple[int, list]] = []
        for r in range(n_rows):
            if used & (1 << r):
                continue
            string, branches = _emit_row(rows_vals[r], cells, last)
            if min_string is None or string < min_string:
                min_string = string
                chosen = [(r, branches)]
            elif string == min_string:
                chosen.append((r, branches))
        if best is not None:
            prefix = emitted + [min_string]
            if prefix > best[: level + 1]:
                return
        for r, branches in chosen:
            if len(branches) > 1:
                # collapse branches indistinguishable by the remaining rows
                seen = set()
                kept = []
                rest = [rr for rr in range(n_rows) if not (used | (1 << r)) & (1 << rr)]
                for refined in branches:
                    sig = tuple(
                        tuple(sorted(tuple(rows_vals[rr][c] for rr in rest) for c in cell))
                        for cell in refined
                    )
                    if sig not in seen:
                        seen.add(sig)
                        kept.append(refined)
                branches = kept
            for refined in branches:
                rec(used | (1 << r), refined, emitted + [min_string])

    rec(0, [list(range(n_cols))], [])
    assert best is not None
    return Matrix(tuple(best), a.m)


def are_isomorphic(a: Matrix, b: Matrix) -> bool:
    """True iff the matrices differ only by row/column permutation and
    per-row symbol renaming. Shape or alphabet mismatch gives False."""
    if (a.num_rows, a.num_cols, a.m) != (b.num_rows, b.num_cols, b.m):
        return False
    return canonical_form(a).entries == canonical_form(b).entries


def find_forbidden(a: Matrix) -> ForbiddenHit | None:
    """First 4x4 submatrix (in scan order) matching a forbidden grid.

    Rows are scanned as ordered 4-tuples, columns by backtracking in
    lexicographic order; all three grids are tested against each column
    assignment, pruning as soon as every grid has a violated constraint.
    """
    n_rows, n_cols = a.num_rows, a.num_cols
    if n_rows < 4 or n_cols < 4:
        return None
    entries = a.entries
    names = ("F1", "F2", "F3")
    # constraints indexed by the column position that completes them
    due: dict[str, list[list[tuple[int, int]]]] = {
        name: [[], [], [], []] for name in names
    }
    for name in names:
        for (pat_row, ca, cb) in _PATTERN_PAIRS[name]:
            due[name][max(ca, cb)].append((pat_row, min(ca, cb)))

    for rows in itertools.permutations(range(n_rows), 4):
        def descend(cols: list[int], alive: tuple[str, ...]):
            depth = len(cols)
            if depth == 4:
                return alive[0], tuple(cols)
            for c in range(n_cols):
                if c in cols:
                    continue
                cols.append(c)
                still = []
                for name in alive:
                    ok = True
                    for pat_row, other in due[name][depth]:
                        if entries[rows[pat_row]][cols[other]] != entries[rows[pat_row]][c]:
                            ok = False
                            break
                    if ok:
                        still.append(name)
                if still:
                    hit = descend(cols, tuple(still))
                    if hit:
                        return hit
                cols.pop()
            return None

        found = descend([], names)
        if found:
            name, cols = found
            return ForbiddenHit(name, rows, cols)
    return None


def sanity_lemma_3_3(a: Matrix) -> bool:
    """Regression predicate for four-row {2,2} hash families with m >= 3:
    if some symbol pair repeats across a row pair (d >= 2), the column count
    must not exceed (m-1)^2 + 1."""
    if a.num_rows != 4 or a.m < 3:
        raise ValueError("needs a 4-row matrix over an alphabet of size >= 3")
    if not is_shf(a, ShfType((2, 2))).ok:
        raise ValueError("matrix is not a certified {2,2} hash family")
    has_repeat = False
    for i in range(4):
        for j in range(i + 1, 4):
            pairs = Counter(zip(a.entries[i], a.entries[j]))
            if max(pairs.values()) >= 2:
                has_repeat = True
                break
        if has_repeat:
            break
    return (not has_repeat) or a.num_cols <= (a.m - 1) ** 2 + 1


def d_max(a: Matrix) -> int:
    """Largest d value over all row pairs and symbol pairs."""
    best = 0
    for i in range(a.num_rows):
        for j in range(i + 1, a.num_rows):
            pairs = Counter(zip(a.entries[i], a.entries[j]))
            best = max(best, max(pairs.values()))
    return best


__all__ = [
    "FORBIDDEN_PATTERNS",
    "ForbiddenHit",
    "apply_isomorphism",
    "canonical_form",
    "are_isomorphic",
    "find_forbidden",
    "sanity_lemma_3_3",
    "d_max",
]
