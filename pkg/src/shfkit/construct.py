"""Build strong separating hash families from covering hypergraphs.

A hypergraph on n vertices whose every l-subset of vertices lies in at least
one edge yields an SHF(N; n, m+1, {1^w1, w2}) for all w1 <= l and
w1 + w2 <= n, where N is the edge count and m the maximum edge size: row i
assigns to each vertex of edge i its 1-based position within the edge and 0
to every other vertex.

Built-in design families cover the cyclic difference constructions and
Steiner triple systems; larger designs (quadruple systems and beyond) are
ingested from block files and validated before use.
"""
from __future__ import annotations

import enum
import itertools
import re
from importlib import resources

from .core import Hypergraph, Matrix, ShfType
from .verify import is_shf


class Coverage(enum.Enum):
    EXACTLY_ONE = "exactly-one"
    AT_LEAST_ONE = "at-least-one"


def coverage_failure(h: Hypergraph, l: int, mode: Coverage):
    """First l-subset violating the coverage mode, as (subset, edge count),
    or None if the hypergraph covers everything as required."""
    if not 1 <= l <= h.n:
        raise ValueError(f"coverage strength l={l} outside [1, {h.n}]")
    edge_sets = [frozenset(e) for e in h.edges]
    for subset in itertools.combinations(range(h.n), l):
        s = set(subset)
        count = sum(1 for e in edge_sets if s <= e)
        if count == 0 or (mode is Coverage.EXACTLY_ONE and count != 1):
            return subset, count
    return None


def covers_all(h: Hypergraph, l: int, mode: Coverage) -> bool:
    """True iff every l-subset of vertices lies in exactly one
    (resp. at least one) edge."""
    return coverage_failure(h, l, mode) is None


def hypergraph_to_shf(h: Hypergraph, alphabet_hint: int | None = None) -> Matrix:
    """The edge/vertex incidence matrix with positional symbols.

    Row i holds b at column v when v is the b-th vertex of edge i (1-based,
    following the edge's stored order) and 0 elsewhere. The alphabet is
    (max edge size) + 1 unless a larger hint is given.
    """
    if not h.edges:
        raise ValueError("hypergraph has no edges")
    m_out = h.max_edge_size + 1
    if alphabet_hint is not None:
        if alphabet_hint < m_out:
            raise ValueError(
                f"alphabet hint {alphabet_hint} below required {m_out}"
            )
        m_out = alphabet_hint
    rows = []
    for edge in h.edges:
        row = [0] * h.n
        for b, v in enumerate(edge, start=1):
            row[v] = b
        rows.append(tuple(row))
    return Matrix(tuple(rows), m_out)


def construct_strong_shf(h: Hypergraph, l: int, w1: int, w2: int,
                         check: bool = False) -> Matrix:
    """Checked construction of an SHF(N; n, m+1, {1^w1, w2}).

    Validates the coverage precondition (at-least-one suffices) and the
    parameter ranges; with check=True the result is additionally re-verified
    column-set by column-set.
    """
    if w1 < 1 or w2 < 1:
        raise ValueError("w1 and w2 must be positive")
    if w1 > l:
        raise ValueError(f"w1 = {w1} exceeds coverage strength l = {l}")
    if w1 + w2 > h.n:
        raise ValueError(f"w1 + w2 = {w1 + w2} exceeds vertex count {h.n}")
    failure = coverage_failure(h, l, Coverage.AT_LEAST_ONE)
    if failure is not None:
        subset, _ = failure
        raise ValueError(f"{l}-subset {subset} is not covered by any edge")
    matrix = hypergraph_to_shf(h)
    if check:
        ty = ShfType((1,) * w1 + (w2,))
        verdict = is_shf(matrix, ty)
        if not verdict.ok:
            raise AssertionError(
                f"construction failed verification for type {ty}: "
                f"witness {verdict.witness}"
            )
    return matrix


def cyclic_difference_design(n: int, base_block) -> Hypergraph:
    """n edges: the base block shifted by every residue mod n, order kept."""
    base = [int(b) % n for b in base_block]
    if len(set(base)) != len(base):
        raise ValueError(f"base block {tuple(base_block)} has repeated residues mod {n}")
    edges = tuple(tuple((b + i) % n for b in base) for i in range(n))
    return Hypergraph(n, edges)


def steiner_triple_system(n: int) -> Hypergraph:
    """A Steiner triple system on n points: n(n-1)/6 triples covering every
    pair exactly once. Exists for n = 1, 3 (mod 6); built by the classical
    quasigroup constructions (n = 3 mod 6 via an idempotent commutative
    quasigroup of odd order, n = 1 mod 6 via a half-idempotent one plus a
    fixed point)."""
    if n < 7 or n % 6 not in (1, 3):
        raise ValueError(f"no triple system on {n} points (need n = 1 or 3 mod 6, n >= 7)")
    triples: list[tuple[int, int, int]] = []
    if n % 6 == 3:
        q = n // 3  # odd
        half = (q + 1) // 2

        def pt(x: int, lvl: int) -> int:
            return lvl * q + x

        for x in range(q):
            triples.append((pt(x, 0), pt(x, 1), pt(x, 2)))
        for lvl in range(3):
            for x in range(q):
                for y in range(x + 1, q):
                    z = ((x + y) * half) % q
                    triples.append((pt(x, lvl), pt(y, lvl), pt(z, (lvl + 1) % 3)))
    else:
        t = n // 6
        q = 2 * t

        def pt(x: int, lvl: int) -> int:
            return lvl * q + x

        inf = 3 * q

        def half_idem(x: int, y: int) -> int:
            s = (x + y) % q
            return s // 2 if s % 2 == 0 else t + (s - 1) // 2

        for x in range(t):
            triples.append((pt(x, 0), pt(x, 1), pt(x, 2)))
        for x in range(t):
            triples.append((inf, pt(t + x, 0), pt(x, 1)))
            triples.append((inf, pt(t + x, 1), pt(x, 2)))
            triples.append((inf, pt(t + x, 2), pt(x, 0)))
        for lvl in range(3):
            for x in range(q):
                for y in range(x + 1, q):
                    z = half_idem(x, y)
                    triples.append((pt(x, lvl), pt(y, lvl), pt(z, (lvl + 1) % 3)))
    return Hypergraph(n, tuple(triples))


_CYCLIC_RE = re.compile(r"^cyclic\((\d+);([\d,]+)\)$")
_STS_RE = re.compile(r"^sts\((\d+)\)$")


def design_from_name(spec: str) -> Hypergraph:
    """Resolve a registry name: "fano", "sts(n)", or "cyclic(n;b1,b2,...)"."""
    s = spec.strip().lower().replace(" ", "")
    if s == "fano":
        return steiner_triple_system(7)
    match = _STS_RE.match(s)
    if match:
        return steiner_triple_system(int(match.group(1)))
    match = _CYCLIC_RE.match(s)
    if match:
        n = int(match.group(1))
        base = tuple(int(x) for x in match.group(2).split(","))
        return cyclic_difference_design(n, base)
    raise ValueError(f"unknown design name {spec!r}")


PACKAGED_DESIGNS = {
    "sqs8": ("sqs8.blocks", 3),        # S(3,4,8): 14 blocks, triples exactly once
    "s_4_5_11": ("s_4_5_11.blocks", 4),  # S(4,5,11): 66 blocks, quadruples exactly once
}


def packaged_design(name: str) -> Hypergraph:
    """Load one of the ingested block designs shipped with the package,
    validated for its exactly-one coverage strength."""
    from .io import parse_hypergraph

    try:
        filename, strength = PACKAGED_DESIGNS[name]
    except KeyError:
        raise ValueError(
            f"unknown packaged design {name!r}; have {sorted(PACKAGED_DESIGNS)}"
        ) from None
    text = resources.files("shfkit").joinpath("data", filename).read_text()
    h = parse_hypergraph(text, source=filename)
    failure = coverage_failure(h, strength, Coverage.EXACTLY_ONE)
    if failure is not None:
        raise AssertionError(f"packaged design {name} failed validation: {failure}")
    return h
