"""Materialized flag complexes: clique enumeration, face tables, excess degrees.

Arrows of V_n are indexed 0..n(n+1)-1 in (tail, head) lexicographic order
and faces are bitsets over that index, so the compatibility graph is a
precomputed adjacency bitmatrix and clique extension is a single AND.
Enumeration is depth-first over increasing arrow index; the resulting
stream order (lexicographic on sorted arrow lists, empty face first) is
part of the contract.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping

from .rules import CROSS, NEST, Arrow, RuleSet, arrows_of, is_edge, pair_relation

DEFAULT_MAX_N = 10
_ENV_CAP = "ROOTFLAGS_MAX_N"


class ResourceLimitError(RuntimeError):
    """Raised when an enumeration exceeds the configured ambient-size cap."""


def resource_cap() -> int:
    raw = os.environ.get(_ENV_CAP)
    if raw is None:
        return DEFAULT_MAX_N
    return int(raw)


def check_resource_cap(n: int, force: bool = False) -> None:
    if n < 0:
        raise ValueError(f"ambient size must be >= 0, got {n}")
    cap = resource_cap()
    if n > cap and not force:
        raise ResourceLimitError(
            f"n={n} exceeds the resource cap {cap}; pass force=True "
            f"(CLI: --force) or raise {_ENV_CAP}"
        )


@lru_cache(maxsize=1024)
def _adjacency(code: int, n: int) -> tuple[tuple[Arrow, ...], tuple[int, ...]]:
    """Arrow list and per-arrow neighbour bitmasks for (rule set, n)."""
    rs = RuleSet.from_code(code)
    arrows = tuple(arrows_of(n))
    m = len(arrows)
    masks = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if is_edge(rs, arrows[i], arrows[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return arrows, tuple(masks)


def adjacency(rs: RuleSet, n: int) -> tuple[tuple[Arrow, ...], tuple[int, ...]]:
    return _adjacency(rs.code, n)


def _iter_cliques(
    arrows: tuple[Arrow, ...],
    masks: tuple[int, ...],
    n: int,
    max_arrows: int | None = None,
) -> Iterator[tuple[tuple[int, ...], int, int, bool]]:
    """Yield (arrow indices, forward count, node cover mask, is_forest).

    DFS over increasing arrow index with candidate-set pruning; the forest
    flag is maintained by an incremental union-find with rollback, counting
    cycle-closing arrows instead of merging them.
    """
    m = len(arrows)
    parent = list(range(n + 2))
    size = [1] * (n + 2)

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    prefix: list[int] = []
    # frames: (candidate mask, forward count, cover mask, cycle count)
    def rec(cand: int, fwd: int, cover: int, cycles: int) -> Iterator[
        tuple[tuple[int, ...], int, int, bool]
    ]:
        yield tuple(prefix), fwd, cover, cycles == 0
        if max_arrows is not None and len(prefix) >= max_arrows:
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            tail, head = arrows[v]
            ra, rb = find(tail), find(head)
            merged = None
            extra_cycle = 0
            if ra == rb:
                extra_cycle = 1
            else:
                if size[ra] < size[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                size[ra] += size[rb]
                merged = (ra, rb)
            prefix.append(v)
            yield from rec(
                cand & masks[v],
                fwd + (tail < head),
                cover | (1 << tail) | (1 << head),
                cycles + extra_cycle,
            )
            prefix.pop()
            if merged is not None:
                ra, rb = merged
                parent[rb] = rb
                size[ra] -= size[rb]

    full = (1 << m) - 1
    yield from rec(full, 0, 0, 0)


@dataclass(frozen=True)
class Face:
    """A face of the flag complex: pairwise compatible arrows, as a sorted
    tuple, with its ambient size and a forest flag."""

    arrows: tuple[Arrow, ...]
    n: int
    is_forest: bool

    @property
    def forward(self) -> int:
        return sum(1 for a in self.arrows if a.forward)

    @property
    def backward(self) -> int:
        return len(self.arrows) - self.forward

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(sorted({x for a in self.arrows for x in a}))

    @property
    def saturated(self) -> bool:
        # at n = 0 the empty face is saturated by convention
        return self.n == 0 or self.nodes == tuple(range(1, self.n + 2))

    @property
    def is_matching(self) -> bool:
        return len(self.nodes) == 2 * len(self.arrows)


def enumerate_faces(
    rs: RuleSet,
    n: int,
    max_arrows: int | None = None,
    force: bool = False,
) -> Iterator[Face]:
    """Stream every face (clique) of the complex, empty face first,
    in lexicographic order on sorted arrow-index lists."""
    check_resource_cap(n, force)
    arrows, masks = adjacency(rs, n)
    for indices, _fwd, _cover, forest in _iter_cliques(arrows, masks, n, max_arrows):
        yield Face(tuple(arrows[i] for i in indices), n, forest)


@dataclass(frozen=True)
class FaceTable:
    """Counts of faces by (forward, backward) arrow numbers."""

    n: int
    selector: str
    counts: Mapping[tuple[int, int], int] = field(hash=False)

    def cells(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in sorted(self.counts.items())]

    def total(self) -> int:
        return sum(self.counts.values())

    def by_dimension(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, j), c in self.counts.items():
            out[i + j] = out.get(i + j, 0) + c
        return out

    def transpose(self) -> "FaceTable":
        return FaceTable(
            self.n, self.selector, {(j, i): c for (i, j), c in self.counts.items()}
        )

    def coefficient(self, i: int, j: int) -> int:
        return self.counts.get((i, j), 0)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "selector": self.selector,
            "counts": [[i, j, c] for i, j, c in self.cells()],
        }

    def to_csv_rows(self) -> list[tuple[int, int, int]]:
        return self.cells()


SELECTORS = ("all", "saturated", "facets")


@lru_cache(maxsize=1024)
def _face_tables(code: int, n: int) -> dict[str, dict[tuple[int, int], int]]:
    rs = RuleSet.from_code(code)
    arrows, masks = adjacency(rs, n)
    full_cover = ((1 << (n + 2)) - 1) & ~1  # nodes 1..n+1
    tables: dict[str, dict[tuple[int, int], int]] = {s: {} for s in SELECTORS}

    def bump(table: dict, key: tuple[int, int]) -> None:
        table[key] = table.get(key, 0) + 1

    for indices, fwd, cover, _forest in _iter_cliques(arrows, masks, n):
        key = (fwd, len(indices) - fwd)
        bump(tables["all"], key)
        if cover == full_cover or n == 0:
            bump(tables["saturated"], key)
        if len(indices) == n:
            bump(tables["facets"], key)
    return tables


def face_table(rs: RuleSet, n: int, selector: str = "all", force: bool = False) -> FaceTable:
    """Count faces by (forward, backward) arrows; selector picks all faces,
    saturated faces (arrows cover every node), or facets (n-arrow faces)."""
    if selector not in SELECTORS:
        raise ValueError(f"selector must be one of {SELECTORS}, got {selector!r}")
    check_resource_cap(n, force)
    return FaceTable(n, selector, dict(_face_tables(rs.code, n)[selector]))


def dimension_face_count(n: int, k: int) -> int:
    """Number of k-arrow faces shared by every valid code: C(n+k,k)*C(n,k)."""
    return comb(n + k, k) * comb(n, k)


def excess_degree(rs: RuleSet, n: int, arrow: Arrow) -> int:
    """Number of neighbours of the arrow on four distinct nodes, by brute
    force over V_n."""
    arrow = Arrow(*arrow)
    count = 0
    for other in arrows_of(n):
        if other == arrow:
            continue
        rel = pair_relation(arrow, other)
        if rel.kind == "disjoint" and rel.placement == rs.placement(rel.word):
            count += 1
    return count


def excess_degree_formula(rs: RuleSet, n: int, arrow: Arrow) -> int:
    """Closed form for the excess degree in terms of p = i-1, q = j-i-1,
    r = n+1-j for the underlying node pair i < j."""
    arrow = Arrow(*arrow)
    i, j = arrow.span()
    p, q, r = i - 1, j - i - 1, n + 1 - j

    def c2(x: int) -> int:
        return x * (x - 1) // 2

    if arrow.forward:
        total = c2(q) if rs.thth == NEST else c2(p) + c2(r)
        total += p * r if rs.htht == NEST else 0
        total += q * r if rs.thht == CROSS else c2(r)
        total += p * q if rs.htth == CROSS else c2(p)
        total += p * r + c2(q) if rs.tthh == NEST else p * q + q * r
    else:
        total = p * r if rs.thth == NEST else 0
        total += c2(q) if rs.htht == NEST else c2(p) + c2(r)
        total += p * q if rs.thht == CROSS else c2(p)
        total += q * r if rs.htth == CROSS else c2(r)
        total += p * r + c2(q) if rs.hhtt == NEST else p * q + q * r
    return total


@dataclass(frozen=True)
class ExcessSignature:
    """Sorted multiset of the excess degrees of all n(n+1) arrows."""

    n: int
    degrees: tuple[int, ...]

    def runs(self) -> str:
        """Run-length form, e.g. "1^6 2^4 3^2 4^4 6^4"."""
        pieces = []
        k = 0
        while k < len(self.degrees):
            value = self.degrees[k]
            run = 1
            while k + run < len(self.degrees) and self.degrees[k + run] == value:
                run += 1
            pieces.append(f"{value}^{run}")
            k += run
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.runs()


def excess_signature(rs: RuleSet, n: int) -> ExcessSignature:
    degrees = sorted(excess_degree(rs, n, a) for a in arrows_of(n))
    return ExcessSignature(n, tuple(degrees))
