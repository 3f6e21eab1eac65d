"""Exhaustive, isomorph-pruned existence search for SHF(N; n, m, type).

Matrices are built column by column as nondecreasing column sequences whose
first column is all zeros (every isomorphism class contains such a
representative). A partial matrix is extended only when it is *canonical*:
the least column sequence in its class under row permutation and per-row
symbol renaming. That ordering has the prefix property (deleting the last
column of a canonical sequence leaves a canonical sequence), so extending
canonical states by columns not below the last one visits every class of
consistent partial matrices exactly once, with no seen-set bookkeeping and
no cross-subtree coordination. Subtrees rooted at the depth-2 frontier are
therefore independent, which is what the parallel mode exploits.

Certified mode prunes only by (i) separation failure among the current
columns, (ii) the canonicity test, (iii) the column-order symmetry breaking
above. Heuristic mode may prune harder but its exhaustions are downgraded
to "inconclusive" rather than reported as certificates.
"""
from __future__ import annotations

import functools
import itertools
import os
import time
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import Matrix, ShfType
from .verify import is_shf, iter_families

NODE_BUDGET_ENV = "SHFKIT_NODE_BUDGET"


class SearchInconclusive(RuntimeError):
    """A resource cap was hit (or a heuristic run exhausted) before a
    certificate could be issued; distinct from a certified Exhausted."""

    def __init__(self, message: str, stats: "SearchStats | None" = None,
                 largest_n: int | None = None, witness: Matrix | None = None):
        super().__init__(message)
        self.stats = stats
        self.largest_n = largest_n
        self.witness = witness


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    children_examined: int = 0
    canonical_rejections: int = 0
    separation_rejections: int = 0
    max_depth: int = 0
    wall_time: float = 0.0

    @property
    def work_units(self) -> int:
        """Partial matrices touched: expanded nodes plus examined children.
        This is what a node budget caps, so one budget unit bounds one
        canonicity test."""
        return self.nodes_expanded + self.children_examined

    def merge(self, other: "SearchStats") -> None:
        self.nodes_expanded += other.nodes_expanded
        self.children_examined += other.children_examined
        self.canonical_rejections += other.canonical_rejections
        self.separation_rejections += other.separation_rejections
        self.max_depth = max(self.max_depth, other.max_depth)


@dataclass(frozen=True)
class SearchOutcome:
    matrix: Matrix | None
    stats: SearchStats
    mode: str

    @property
    def found(self) -> bool:
        return self.matrix is not None

    @property
    def exhausted(self) -> bool:
        return self.matrix is None


@dataclass(frozen=True)
class MaxNResult:
    n_star: int
    witness: Matrix
    exhaustion_stats: SearchStats


@functools.lru_cache(maxsize=None)
def _all_columns(num_rows: int, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(range(m), repeat=num_rows))


@functools.lru_cache(maxsize=None)
def _row_perms(num_rows: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(num_rows)))


def _is_canonical(cols: tuple[tuple[int, ...], ...], num_rows: int, m: int) -> bool:
    """True iff `cols` is the least sorted column sequence in its class."""
    k = len(cols)
    for sigma in _row_perms(num_rows):
        maps = [[-1] * m for _ in range(num_rows)]
        nxt = [0] * num_rows
        used = [False] * k
        if _smaller_arrangement(cols, sigma, maps, nxt, used, 0, k, num_rows):
            return False
    return True


def _smaller_arrangement(cols, sigma, maps, nxt, used, pos, k, num_rows) -> bool:
    """Greedy tie-exploring check: can the remaining columns, under `sigma`
    and first-occurrence relabeling, continue a sequence below cols[pos:]?"""
    best_img = None
    cand: list[int] = []
    seen_vals = set()
    for idx in range(k):
        if used[idx]:
            continue
        c = cols[idx]
        if c in seen_vals:
            continue
        seen_vals.add(c)
        img = []
        for r in range(num_rows):
            v = maps[r][c[sigma[r]]]
            img.append(nxt[r] if v < 0 else v)
        img = tuple(img)
        if best_img is None or img < best_img:
            best_img = img
            cand = [idx]
        elif img == best_img:
            cand.append(idx)
    target = cols[pos]
    if best_img < target:
        return True
    if best_img > target:
        return False
    for idx in cand:
        c = cols[idx]
        used[idx] = True
        touched = []
        for r in range(num_rows):
            s = c[sigma[r]]
            if maps[r][s] < 0:
                maps[r][s] = nxt[r]
                nxt[r] += 1
                touched.append((r, s))
        smaller = pos + 1 < k and _smaller_arrangement(
            cols, sigma, maps, nxt, used, pos + 1, k, num_rows
        )
        for r, s in touched:
            maps[r][s] = -1
            nxt[r] -= 1
        used[idx] = False
        if smaller:
            return True
    return False


def _family_separated(neq, parts, full: int) -> bool:
    """Some row bit survives the AND of neq masks over all cross-part pairs."""
    acc = full
    for pi in range(len(parts)):
        ppi = parts[pi]
        for pj in range(pi + 1, len(parts)):
            for x in ppi:
                for y in parts[pj]:
                    acc &= neq[x][y] if x > y else neq[y][x]
                    if not acc:
                        return False
    return True


class _Searcher:
    def __init__(self, num_rows, n_target, m, sizes, mode, node_budget,
                 canonical_rejection=True):
        self.num_rows = num_rows
        self.n_target = n_target
        self.m = m
        self.sizes = tuple(sizes)
        self.u = sum(sizes)
        self.mode = mode
        self.node_budget = node_budget
        self.canonical_rejection = canonical_rejection
        self.all_cols = _all_columns(num_rows, m)
        self.full_mask = (1 << num_rows) - 1
        self.stats = SearchStats()
        # a repeated symbol pair across a row pair is fatal when the target
        # is past the (m-1)^2 + 1 ceiling for four-row {2,2} families
        self.prune_repeats = (
            mode == "heuristic"
            and num_rows == 4
            and self.sizes == (2, 2)
            and m >= 3
            and n_target > (m - 1) ** 2 + 1
        )

    def run(self, start_cols=None):
        """DFS from `start_cols` (default: the all-zero first column).
        Returns the first complete column sequence, or None if exhausted."""
        if start_cols is None:
            start_cols = [tuple([0] * self.num_rows)]
        cols = list(start_cols)
        neq: list[list[int]] = []
        seen_max = [0] * self.num_rows
        for j, c in enumerate(cols):
            neq.append([self._neq_mask(cols[i], c) for i in range(j)])
            for r in range(self.num_rows):
                seen_max[r] = max(seen_max[r], c[r])
        return self._dfs(cols, neq, seen_max)

    def _neq_mask(self, a, b) -> int:
        mask = 0
        for r in range(self.num_rows):
            if a[r] != b[r]:
                mask |= 1 << r
        return mask

    def _dfs(self, cols, neq, seen_max):
        self.stats.nodes_expanded += 1
        k = len(cols)
        self.stats.max_depth = max(self.stats.max_depth, k)
        if self.node_budget is not None and self.stats.nodes_expanded > self.node_budget:
            raise SearchInconclusive(
                f"node budget {self.node_budget} exceeded", stats=self.stats
            )
        if k == self.n_target:
            return tuple(cols)
        start = bisect_left(self.all_cols, cols[-1])
        num_rows = self.num_rows
        for c in self.all_cols[start:]:
            ok = True
            for r in range(num_rows):
                if c[r] > seen_max[r] + 1:  # fresh symbols must appear in order
                    ok = False
                    break
            if not ok:
                continue
            new_masks = [self._neq_mask(cols[i], c) for i in range(k)]
            if self.prune_repeats and any(
                (self.full_mask ^ m_).bit_count() >= 2 for m_ in new_masks
            ):
                continue
            if k + 1 >= self.u and not self._extension_consistent(neq, new_masks, k):
                self.stats.separation_rejections += 1
                continue
            cols.append(c)
            neq.append(new_masks)
            if self.canonical_rejection and not _is_canonical(
                tuple(cols), num_rows, self.m
            ):
                self.stats.canonical_rejections += 1
                cols.pop()
                neq.pop()
                continue
            old_seen = seen_max
            seen_max = [max(old_seen[r], c[r]) for r in range(num_rows)]
            result = self._dfs(cols, neq, seen_max)
            seen_max = old_seen
            cols.pop()
            neq.pop()
            if result is not None:
                return result
        return None

    def _extension_consistent(self, neq, new_masks, k) -> bool:
        """Every family that uses the new column (index k) is separated."""
        neq_ext = neq + [new_masks]

        def pair(x, y):
            return neq_ext[x][y] if x > y else neq_ext[y][x]

        for parts in iter_families(k + 1, self.sizes, containing=k):
            acc = self.full_mask
            dead = False
            for pi in range(len(parts)):
                for pj in range(pi + 1, len(parts)):
                    for x in parts[pi]:
                        for y in parts[pj]:
                            acc &= pair(x, y)
                            if not acc:
                                dead = True
                                break
                        if dead:
                            break
                    if dead:
                        break
                if dead:
                    break
            if dead:
                return False
        return True

    def frontier(self):
        """Canonical depth-2 states (used to split work across processes)."""
        zero = tuple([0] * self.num_rows)
        out = []
        for c in self.all_cols:
            if any(c[r] > 1 for r in range(self.num_rows)):
                continue
            if 2 >= self.u:
                masks = [self._neq_mask(zero, c)]
                if not self._extension_consistent([[]], masks, 1):
                    self.stats.separation_rejections += 1
                    continue
            if self.canonical_rejection and not _is_canonical(
                (zero, c), self.num_rows, self.m
            ):
                self.stats.canonical_rejections += 1
                continue
            out.append((zero, c))
        return out


def _subtree_worker(args):
    (start_cols, num_rows, n_target, m, sizes, mode, budget, canonical) = args
    searcher = _Searcher(num_rows, n_target, m, sizes, mode, budget, canonical)
    try:
        found = searcher.run(start_cols=list(start_cols))
    except SearchInconclusive:
        return ("inconclusive", None, searcher.stats)
    return ("done", found, searcher.stats)


def _resolve_budget(node_budget: int | None) -> int | None:
    if node_budget is not None:
        return node_budget
    env = os.environ.get(NODE_BUDGET_ENV)
    return int(env) if env else None


def search_shf(num_rows: int, n: int, m: int, ty: ShfType, mode: str = "certified",
               threads: int = 1, node_budget: int | None = None,
               canonical_rejection: bool = True) -> SearchOutcome:
    """Find a representation matrix of an SHF(num_rows; n, m, ty) or certify
    that none exists.

    Certified exhaustion is complete; a found matrix is re-verified before
    being returned. Heuristic exhaustion raises SearchInconclusive.
    """
    if mode not in ("certified", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    if num_rows < 1 or n < 1 or m < 1:
        raise ValueError("all of N, n, m must be >= 1")
    if ty.u > n:
        raise ValueError(f"type {ty} needs {ty.u} columns but n = {n}")
    budget = _resolve_budget(node_budget)
    t0 = time.perf_counter()
    stats = SearchStats()
    found = None
    if threads <= 1:
        searcher = _Searcher(num_rows, n, m, ty.weights, mode, budget,
                             canonical_rejection)
        try:
            found = searcher.run()
        finally:
            stats = searcher.stats
            stats.wall_time = time.perf_counter() - t0
    else:
        driver = _Searcher(num_rows, n, m, ty.weights, mode, budget,
                           canonical_rejection)
        frontier = driver.frontier()
        stats.merge(driver.stats)
        stats.nodes_expanded += 1  # the root
        if n == 2:
            found = frontier[0] if frontier else None
        else:
            jobs = [
                (fc, num_rows, n, m, ty.weights, mode, budget, canonical_rejection)
                for fc in frontier
            ]
            with ProcessPoolExecutor(max_workers=threads) as ex:
                results = list(ex.map(_subtree_worker, jobs))
            hit_cap = False
            for status, sub_found, sub_stats in results:
                stats.merge(sub_stats)
                if status == "inconclusive":
                    hit_cap = True
                elif sub_found is not None and found is None:
                    found = sub_found
            stats.wall_time = time.perf_counter() - t0
            if hit_cap and found is None:
                raise SearchInconclusive("node budget exceeded in a worker", stats=stats)
        stats.wall_time = time.perf_counter() - t0

    if found is not None:
        matrix = Matrix.from_columns(found, m)
        verdict = is_shf(matrix, ty)
        if not verdict.ok:
            raise AssertionError("internal error: found matrix failed re-verification")
        return SearchOutcome(matrix, stats, mode)
    if mode == "heuristic":
        raise SearchInconclusive(
            "heuristic exhaustion is not a certificate", stats=stats
        )
    return SearchOutcome(None, stats, mode)


def max_n(num_rows: int, m: int, ty: ShfType, mode: str = "certified",
          start_n: int | None = None, threads: int = 1,
          node_budget: int | None = None) -> MaxNResult:
    """Largest n admitting an SHF(num_rows; n, m, ty): increment n from the
    type's minimum until a certified exhaustion, returning the last witness
    and the exhaustion statistics."""
    n = max(ty.u, start_n or 0)
    best: tuple[int, Matrix] | None = None
    while True:
        try:
            outcome = search_shf(num_rows, n, m, ty, mode=mode, threads=threads,
                                 node_budget=node_budget)
        except SearchInconclusive as exc:
            raise SearchInconclusive(
                f"inconclusive at n = {n}; largest verified n = "
                f"{best[0] if best else 'none'}",
                stats=exc.stats,
                largest_n=best[0] if best else None,
                witness=best[1] if best else None,
            ) from exc
        if outcome.found:
            best = (n, outcome.matrix)
            n += 1
        else:
            if best is None:
                raise SearchInconclusive(
                    f"no SHF exists even at the minimum size n = {n}",
                    stats=outcome.stats,
                )
            return MaxNResult(best[0], best[1], outcome.stats)
