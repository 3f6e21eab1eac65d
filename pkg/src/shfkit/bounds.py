"""Closed-form bounds on SHF parameters, with theorem provenance.

Everything here is exact integer arithmetic (math.comb and ceilings); no
floating point. Strict bounds ("n < v") are reported with their original
strict value and normalized to a maximum column count via value - 1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

from .core import ShfType


class BoundKind(enum.Enum):
    LOWER_ON_N = "lower-on-N"
    UPPER_ON_N_STRICT = "upper-on-n-strict"
    UPPER_ON_N_INCLUSIVE = "upper-on-n-inclusive"


@dataclass(frozen=True)
class BoundReport:
    """A single evaluated bound: its value, sense, and where it came from."""

    value: int
    kind: BoundKind
    source: str
    applicable: bool = True
    reason: str | None = None

    @property
    def max_n(self) -> int:
        """Largest admissible n implied by an upper bound."""
        if self.kind is BoundKind.UPPER_ON_N_STRICT:
            return self.value - 1
        if self.kind is BoundKind.UPPER_ON_N_INCLUSIVE:
            return self.value
        raise ValueError("max_n is only defined for upper bounds")


@dataclass(frozen=True)
class CombinedUpperBound:
    """Best (smallest) max-n over all applicable upper-bound rules."""

    max_n: int
    sources: tuple[str, ...]
    reports: tuple[BoundReport, ...]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def lower_bound_rows(w1: int, w2: int, m: int) -> BoundReport:
    """Minimum row count of a strong SHF on exactly w1 + w2 columns.

    For w1 + w2 <= m a single row suffices, so the bound is 1. Otherwise at
    most m - 1 symbols can occur exactly once per row, so each row separates
    at most C(m-1, w1) of the C(w1+w2, w1) singleton choices.
    """
    if w1 < 1 or w2 < 1:
        raise ValueError("w1 and w2 must be positive")
    if m < 2:
        raise ValueError("alphabet size must be >= 2")
    if w1 > m - 1:
        return BoundReport(
            value=0,
            kind=BoundKind.LOWER_ON_N,
            source="Thm2.5",
            applicable=False,
            reason=f"w1 = {w1} > m - 1 = {m - 1}: no row can separate any family",
        )
    if w1 + w2 <= m:
        return BoundReport(1, BoundKind.LOWER_ON_N, "trivial (w1+w2 <= m)")
    value = _ceil_div(comb(w1 + w2, w1), comb(m - 1, w1))
    source = "Thm2.5"
    if m - 1 == w1:
        source = "Thm2.5 (coincides with the Guo-Stinson bound at m-1 = w1)"
    return BoundReport(value, BoundKind.LOWER_ON_N, source)


def covering_lower_bound(n: int, k: int, l: int) -> BoundReport:
    """Minimum edge count of a k-uniform hypergraph covering every l-subset
    at least once: ceil(C(n,l) / C(k,l))."""
    if not 1 <= l <= k <= n:
        raise ValueError(f"need 1 <= l <= k <= n, got l={l}, k={k}, n={n}")
    value = _ceil_div(comb(n, l), comb(k, l))
    return BoundReport(value, BoundKind.LOWER_ON_N, "Thm2.9")


def schonheim_size(n: int, k: int, l: int) -> int:
    """Nested-ceiling covering size with l levels:
    ceil(n/k * ceil((n-1)/(k-1) * ceil(...)))."""
    if not 1 <= l <= k <= n:
        raise ValueError(f"need 1 <= l <= k <= n, got l={l}, k={k}, n={n}")
    value = 1
    for i in reversed(range(l)):
        value = _ceil_div((n - i) * value, k - i)
    return value


def _rule_equal_parts(num_rows: int, m: int, ty: ShfType) -> BoundReport:
    """{w,w} with N = 2w and m >= 2w >= 4: n <= (m-1)^2 + 1."""
    w = ty.weights[0]
    applicable = (
        ty.t == 2
        and ty.weights[0] == ty.weights[1]
        and num_rows == 2 * w
        and m >= 2 * w >= 4
    )
    source = "Thm3.10" if w == 2 else "Thm3.11"
    if not applicable:
        return BoundReport(0, BoundKind.UPPER_ON_N_INCLUSIVE, source, False,
                           "needs type {w,w}, N = 2w, m >= 2w >= 4")
    return BoundReport((m - 1) ** 2 + 1, BoundKind.UPPER_ON_N_INCLUSIVE, source)


def _rule_two_parts(num_rows: int, m: int, ty: ShfType) -> BoundReport:
    """{w1,w2} with 2 <= w1 < w2, N = w1 + w2 and m >= w1 + w2: n < m^2 - m."""
    applicable = (
        ty.t == 2
        and 2 <= ty.weights[0] < ty.weights[1]
        and num_rows == ty.u
        and m >= ty.u
    )
    if not applicable:
        return BoundReport(0, BoundKind.UPPER_ON_N_STRICT, "Thm4.3", False,
                           "needs type {w1,w2} with 2 <= w1 < w2, N = u, m >= u")
    return BoundReport(m * m - m, BoundKind.UPPER_ON_N_STRICT, "Thm4.3")


def _rule_general_type(num_rows: int, m: int, ty: ShfType) -> BoundReport:
    """Any type other than {1,1,1} and {1,w}, with N = u and m >= u:
    n < m^2 - m."""
    excluded = ty.weights == (1, 1, 1) or (ty.t == 2 and ty.weights[0] == 1)
    applicable = num_rows == ty.u and m >= ty.u and not excluded
    if not applicable:
        return BoundReport(0, BoundKind.UPPER_ON_N_STRICT, "Thm4.4", False,
                           "needs N = u, m >= u, type not in {{1,1,1},{1,w}}")
    return BoundReport(m * m - m, BoundKind.UPPER_ON_N_STRICT, "Thm4.4")


def _rule_johnson(num_rows: int, m: int, ty: ShfType) -> BoundReport:
    """Johnson-type bound, any N: with r = N mod (u-1) shifted into
    [1, u-1], n <= r*m^ceil(N/(u-1)) + (u-r)*m^floor(N/(u-1))."""
    u = ty.u
    r = (num_rows - 1) % (u - 1) + 1
    hi = _ceil_div(num_rows, u - 1)
    lo = num_rows // (u - 1)
    value = r * m ** hi + (u - r) * m ** lo
    return BoundReport(value, BoundKind.UPPER_ON_N_INCLUSIVE, "Johnson")


def upper_bound_cols(num_rows: int, m: int, ty: ShfType) -> CombinedUpperBound:
    """Evaluate every applicable upper-bound rule for SHF(N; n, m, ty) and
    return the smallest maximum column count, listing the rules that attain
    it."""
    if num_rows < 1:
        raise ValueError("N must be >= 1")
    if m < 2:
        raise ValueError("alphabet size must be >= 2")
    if ty.u - 1 == 0:
        raise ValueError("type must have at least two parts")
    reports = (
        _rule_equal_parts(num_rows, m, ty),
        _rule_two_parts(num_rows, m, ty),
        _rule_general_type(num_rows, m, ty),
        _rule_johnson(num_rows, m, ty),
    )
    candidates = [r for r in reports if r.applicable]
    best = min(r.max_n for r in candidates)
    sources = tuple(r.source for r in candidates if r.max_n == best)
    return CombinedUpperBound(best, sources, reports)
