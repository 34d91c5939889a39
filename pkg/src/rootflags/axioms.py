"""Exhaustive verification that a rule set triangulates the polytope boundary.

A permissible uniform flag complex triangulates the boundary exactly when
its family of matching faces satisfies the support axiom (for every pair
of disjoint equal-size node sets I, J there is a unique matching face from
I onto J) and the linkage axiom (a matching face can absorb any outside
node by relinking one arrow endpoint).  Both are decided here by brute
force, together with the underlying matching-ensemble axioms on complete
bipartite graphs and the spanning-tree correspondence.

Bipartite objects live on K_{a,b} with left part 1..a and right part 1..b;
edges are plain (left, right) pairs and matchings/forests are frozensets
of edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .complexes import enumerate_faces
from .rules import Arrow, RuleSet, arrows_of, is_edge, pair_relation, parse_nodes

Matching = frozenset[Arrow]
BipartiteEdge = tuple[int, int]
EdgeSet = frozenset[BipartiteEdge]


class MultiplicityError(Exception):
    """Support-axiom violation: the number of matchings from I to J is not 1."""

    def __init__(self, tails, heads, matchings: Sequence[Matching]):
        self.tails = tuple(tails)
        self.heads = tuple(heads)
        self.matchings = tuple(matchings)
        self.count = len(matchings)
        super().__init__(
            f"expected a unique matching from {self.tails} to {self.heads}, "
            f"found {self.count}"
        )


@dataclass(frozen=True)
class Violation:
    axiom: str
    detail: dict = field(hash=False)

    def to_json_dict(self) -> dict:
        out = {"axiom": self.axiom}
        out.update(self.detail)
        return out


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    passed: bool
    witnesses: tuple[Violation, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "verdict": "pass" if self.passed else "fail",
            "witnesses": [w.to_json_dict() for w in self.witnesses],
        }


def _arrow_json(arrows: Iterable[Arrow]) -> list[list[int]]:
    return [[a.tail, a.head] for a in sorted(arrows)]


def _is_face(rs: RuleSet, arrows: Sequence[Arrow]) -> bool:
    return all(
        is_edge(rs, a, b) for a, b in itertools.combinations(arrows, 2)
    )


def all_support_matchings(
    rs: RuleSet, tails: Sequence[int], heads: Sequence[int]
) -> list[Matching]:
    """All matchings of I onto J whose arrows are pairwise edges."""
    tails = parse_nodes(tails)
    heads = parse_nodes(heads)
    if set(tails) & set(heads):
        raise ValueError("tail and head sets must be disjoint")
    if len(tails) != len(heads):
        raise ValueError("tail and head sets must have equal size")

    found: list[Matching] = []
    chosen: list[Arrow] = []

    def assign(k: int, free_heads: tuple[int, ...]) -> None:
        if k == len(tails):
            found.append(frozenset(chosen))
            return
        for idx, h in enumerate(free_heads):
            arrow = Arrow(tails[k], h)
            if all(is_edge(rs, arrow, prev) for prev in chosen):
                chosen.append(arrow)
                assign(k + 1, free_heads[:idx] + free_heads[idx + 1:])
                chosen.pop()

    assign(0, heads)
    return found


def support_matching(
    rs: RuleSet, tails: Sequence[int], heads: Sequence[int]
) -> Matching:
    """The unique matching face from I onto J; raises MultiplicityError
    carrying all matchings found when the count differs from one."""
    found = all_support_matchings(rs, tails, heads)
    if len(found) != 1:
        raise MultiplicityError(parse_nodes(tails), parse_nodes(heads), found)
    return found[0]


def _disjoint_pairs(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ordered pairs of disjoint nonempty equal-size subsets of 1..n+1,
    in (|I|, I, J) order."""
    nodes = range(1, n + 2)
    for k in range(1, (n + 1) // 2 + 1):
        for tails in itertools.combinations(nodes, k):
            rest = [x for x in nodes if x not in tails]
            for heads in itertools.combinations(rest, k):
                yield tails, heads


def check_support_axiom(
    rs: RuleSet, n: int, all_witnesses: bool = False
) -> AxiomReport:
    witnesses = []
    for tails, heads in _disjoint_pairs(n):
        matchings = all_support_matchings(rs, tails, heads)
        if len(matchings) != 1:
            witnesses.append(
                Violation(
                    "support",
                    {
                        "I": list(tails),
                        "J": list(heads),
                        "count": len(matchings),
                        "matchings": [_arrow_json(m) for m in matchings],
                    },
                )
            )
            if not all_witnesses:
                break
    return AxiomReport("support", not witnesses, tuple(witnesses))


def matching_faces(rs: RuleSet, n: int) -> Iterator[Matching]:
    """All faces that are matchings (pairwise node-disjoint arrows)."""
    for face in enumerate_faces(rs, n):
        if face.arrows and face.is_matching:
            yield frozenset(face.arrows)


def check_linkage_axiom(
    rs: RuleSet, n: int, all_witnesses: bool = False
) -> AxiomReport:
    """For every nonempty matching face and every node k outside it, demand
    a relink that absorbs k as a tail and one that absorbs k as a head."""
    witnesses = []
    for sigma in matching_faces(rs, n):
        covered = {x for a in sigma for x in a}
        others = list(sigma)
        for k in range(1, n + 2):
            if k in covered:
                continue
            for side in ("tail", "head"):
                ok = False
                for arrow in sigma:
                    new = Arrow(k, arrow.head) if side == "tail" else Arrow(arrow.tail, k)
                    rest = [a for a in others if a != arrow]
                    if all(is_edge(rs, new, a) for a in rest):
                        ok = True
                        break
                if not ok:
                    witnesses.append(
                        Violation(
                            "linkage",
                            {
                                "matching": _arrow_json(sigma),
                                "I": sorted(a.tail for a in sigma),
                                "J": sorted(a.head for a in sigma),
                                "k": k,
                                "side": side,
                            },
                        )
                    )
                    if not all_witnesses:
                        return AxiomReport("linkage", False, tuple(witnesses))
    return AxiomReport("linkage", not witnesses, tuple(witnesses))


def check_permissible(rs: RuleSet, n: int, all_witnesses: bool = False) -> AxiomReport:
    """Check the square-face and forest conditions.

    (a) every shared-tail and shared-head pair is an edge, (b) exactly one
    diagonal of each square face is an edge, (c) every clique is an
    admissible forest.  (a) and (b) hold for all 64 codes by construction
    of the edge predicate; (c) can genuinely fail for invalid codes and is
    decided by exhaustive clique scanning.
    """
    witnesses = []
    arrows = arrows_of(n)
    for a, b in itertools.combinations(arrows, 2):
        rel = pair_relation(a, b)
        if rel.kind == "shared" and not is_edge(rs, a, b):
            witnesses.append(
                Violation("permissible", {"pair": _arrow_json([a, b]), "reason": "shared pair not an edge"})
            )
        if rel.kind == "disjoint":
            other = (Arrow(a.tail, b.head), Arrow(b.tail, a.head))
            if is_edge(rs, a, b) == is_edge(rs, *other):
                witnesses.append(
                    Violation(
                        "permissible",
                        {"pair": _arrow_json([a, b]), "reason": "square has zero or two diagonals"},
                    )
                )
        if witnesses and not all_witnesses:
            return AxiomReport("permissible", False, tuple(witnesses))
    for face in enumerate_faces(rs, n):
        heads = {a.head for a in face.arrows}
        tails = {a.tail for a in face.arrows}
        if heads & tails:
            witnesses.append(
                Violation("permissible", {"face": _arrow_json(face.arrows), "reason": "not admissible"})
            )
        elif not face.is_forest:
            witnesses.append(
                Violation("permissible", {"face": _arrow_json(face.arrows), "reason": "contains a circuit"})
            )
        if witnesses and not all_witnesses:
            break
    return AxiomReport("permissible", not witnesses, tuple(witnesses))


def verify(rs: RuleSet, n: int, all_witnesses: bool = False) -> list[AxiomReport]:
    """Permissibility, support and linkage reports for one (rule set, n)."""
    return [
        check_permissible(rs, n, all_witnesses),
        check_support_axiom(rs, n, all_witnesses),
        check_linkage_axiom(rs, n, all_witnesses),
    ]


# ---------------------------------------------------------------------------
# Matching ensembles on K_{a,b}


@dataclass(frozen=True)
class BipartiteEnsemble:
    """A family of matchings of K_{a,b}."""

    a: int
    b: int
    matchings: frozenset[EdgeSet]

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise ValueError("both parts must be nonempty")
        for m in self.matchings:
            lefts = [e[0] for e in m]
            rights = [e[1] for e in m]
            if len(set(lefts)) != len(m) or len(set(rights)) != len(m):
                raise ValueError(f"{sorted(m)} is not a matching")
            if any(not (1 <= l <= self.a and 1 <= r <= self.b) for l, r in m):
                raise ValueError(f"edge out of range in {sorted(m)}")


def me_axioms(ensemble: BipartiteEnsemble, all_witnesses: bool = False) -> AxiomReport:
    """Check the support, closure and linkage axioms for a matching family."""
    witnesses = []
    matchings = ensemble.matchings

    def bail() -> bool:
        return bool(witnesses) and not all_witnesses

    for m in matchings:
        for e in m:
            if m - {e} not in matchings:
                witnesses.append(
                    Violation("closure", {"matching": sorted(m), "missing": sorted(m - {e})})
                )
                if bail():
                    return AxiomReport("ensemble", False, tuple(witnesses))

    for k in range(1, min(ensemble.a, ensemble.b) + 1):
        for lefts in itertools.combinations(range(1, ensemble.a + 1), k):
            for rights in itertools.combinations(range(1, ensemble.b + 1), k):
                hits = [
                    m
                    for m in matchings
                    if len(m) == k
                    and {e[0] for e in m} == set(lefts)
                    and {e[1] for e in m} == set(rights)
                ]
                if len(hits) != 1:
                    witnesses.append(
                        Violation(
                            "support",
                            {
                                "I": list(lefts),
                                "J": list(rights),
                                "count": len(hits),
                                "matchings": [sorted(m) for m in hits],
                            },
                        )
                    )
                    if bail():
                        return AxiomReport("ensemble", False, tuple(witnesses))

    for m in matchings:
        if not m:
            continue
        used_left = {e[0] for e in m}
        used_right = {e[1] for e in m}
        free = [("L", v) for v in range(1, ensemble.a + 1) if v not in used_left]
        free += [("R", v) for v in range(1, ensemble.b + 1) if v not in used_right]
        for side, v in free:
            ok = False
            for e in m:
                rest = m - {e}
                rest_left = {x[0] for x in rest}
                rest_right = {x[1] for x in rest}
                if side == "L":
                    candidates = [
                        (v, r)
                        for r in range(1, ensemble.b + 1)
                        if r not in rest_right
                    ]
                else:
                    candidates = [
                        (l, v)
                        for l in range(1, ensemble.a + 1)
                        if l not in rest_left
                    ]
                for new in candidates:
                    if new not in m and rest | {new} in matchings:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                witnesses.append(
                    Violation("linkage", {"matching": sorted(m), "vertex": [side, v]})
                )
                if bail():
                    return AxiomReport("ensemble", False, tuple(witnesses))

    return AxiomReport("ensemble", not witnesses, tuple(witnesses))


def _matchings_within(edges: Iterable[BipartiteEdge]) -> set[EdgeSet]:
    """All matchings contained in an edge set."""
    edges = sorted(edges)
    out: set[EdgeSet] = set()

    def rec(start: int, chosen: list[BipartiteEdge]) -> None:
        out.add(frozenset(chosen))
        for idx in range(start, len(edges)):
            e = edges[idx]
            if all(e[0] != f[0] and e[1] != f[1] for f in chosen):
                chosen.append(e)
                rec(idx + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def phi(trees: Iterable[EdgeSet], a: int, b: int) -> BipartiteEnsemble:
    """Union over the trees of all matchings contained in each tree."""
    matchings: set[EdgeSet] = set()
    for tree in trees:
        matchings |= _matchings_within(tree)
    return BipartiteEnsemble(a, b, frozenset(matchings))


def spanning_trees(a: int, b: int) -> list[EdgeSet]:
    """All spanning trees of K_{a,b}."""
    edges = [(l, r) for l in range(1, a + 1) for r in range(1, b + 1)]
    out = []
    want = a + b - 1
    for combo in itertools.combinations(edges, want):
        parent = list(range(a + b))

        def find(x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x

        acyclic = True
        for l, r in combo:
            ra, rb = find(l - 1), find(a + r - 1)
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if acyclic:
            out.append(frozenset(combo))
    return out


def _has_alternating_cycle(first: EdgeSet, second: EdgeSet) -> bool:
    """A simple cycle of length >= 4 whose edges alternate between the two
    edge sets.  Vertices are ("L", i) / ("R", j)."""

    def endpoints(e: BipartiteEdge) -> tuple[tuple[str, int], tuple[str, int]]:
        return ("L", e[0]), ("R", e[1])

    def incident(role: EdgeSet, v: tuple[str, int]) -> list[BipartiteEdge]:
        side, value = v
        k = 0 if side == "L" else 1
        return [e for e in role if e[k] == value]

    def walk(current, start, need_second, visited, used, length) -> bool:
        role = second if need_second else first
        for e in incident(role, current):
            if e in used:
                continue
            u, w = endpoints(e)
            nxt = w if u == current else u
            if nxt == start:
                if length + 1 >= 4 and need_second:
                    return True
                continue
            if nxt in visited:
                continue
            if walk(nxt, start, not need_second, visited | {nxt}, used | {e}, length + 1):
                return True
        return False

    for e in first:
        u, w = endpoints(e)
        if walk(w, u, True, {u, w}, {e}, 1):
            return True
    return False


def postnikov_compatible(first: EdgeSet, second: EdgeSet) -> bool:
    """Two bipartite forests span simplices meeting in a common face exactly
    when their union has no alternating cycle of length >= 4."""
    return not _has_alternating_cycle(frozenset(first), frozenset(second))


def phi_inverse(ensemble: BipartiteEnsemble) -> frozenset[EdgeSet]:
    """The spanning trees compatible with every matching of the ensemble.

    Refuses ensembles that fail the matching-ensemble axioms.
    """
    report = me_axioms(ensemble)
    if not report.passed:
        raise ValueError(f"not a matching ensemble: {report.to_json_dict()}")
    nonempty = [m for m in ensemble.matchings if m]
    out = []
    for tree in spanning_trees(ensemble.a, ensemble.b):
        if all(postnikov_compatible(tree, m) for m in nonempty):
            out.append(tree)
    return frozenset(out)


@lru_cache(maxsize=100000)
def _restriction_by_pattern(code: int, pattern: tuple[str, ...]) -> frozenset[EdgeSet]:
    """Relabeled matchings of a rule set within I x J, keyed by the tail/head
    pattern of sorted(I + J); uniformity makes the node labels irrelevant."""
    rs = RuleSet.from_code(code)
    positions = range(1, len(pattern) + 1)
    tails = [p for p, letter in zip(positions, pattern) if letter == "T"]
    heads = [p for p, letter in zip(positions, pattern) if letter == "H"]
    left = {node: k + 1 for k, node in enumerate(tails)}
    right = {node: k + 1 for k, node in enumerate(heads)}
    pairs = [Arrow(t, h) for t in tails for h in heads]
    out: set[EdgeSet] = set()

    def rec(start: int, chosen: list[Arrow]) -> None:
        out.add(frozenset((left[a.tail], right[a.head]) for a in chosen))
        for idx in range(start, len(pairs)):
            arrow = pairs[idx]
            if any(arrow.tail == c.tail or arrow.head == c.head for c in chosen):
                continue
            if all(is_edge(rs, arrow, c) for c in chosen):
                chosen.append(arrow)
                rec(idx + 1, chosen)
                chosen.pop()

    rec(0, [])
    return frozenset(out)


def restriction_ensemble(
    rs: RuleSet, tails: Sequence[int], heads: Sequence[int]
) -> BipartiteEnsemble:
    """Matchings of the complex inside I x J, relabeled to K_{|I|,|J|}
    (sorted I maps to the left part, sorted J to the right part)."""
    tails = parse_nodes(tails)
    heads = parse_nodes(heads)
    if set(tails) & set(heads):
        raise ValueError("tail and head sets must be disjoint")
    tail_set = set(tails)
    pattern = tuple(
        "T" if node in tail_set else "H" for node in sorted(tails + heads)
    )
    matchings = _restriction_by_pattern(rs.code, pattern)
    return BipartiteEnsemble(len(tails), len(heads), matchings)
