"""Hyperforest test for 3-uniform hypergraphs, with Hall-type witnesses.

A multiset of hyperedges is a hyperforest when every k of its edges touch at
least k+1 vertices.  Equivalently (by Hall's theorem): for every vertex v,
the bipartite graph matching each edge to its vertices other than v admits a
matching saturating all edges.  This module runs that matching test and, on
failure, extracts a deficient edge family as a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence


@dataclass(frozen=True)
class ForestReport:
    ok: bool
    # On failure: vertex set S with more than |S| - 1 edges inside it,
    # and the indices of those edges.
    witness_vertices: frozenset = frozenset()
    witness_edges: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _max_matching(adjacency: Sequence[list[Hashable]]):
    """Left-to-right maximum bipartite matching (augmenting paths).

    Returns (match_of_left, match_of_right) where unmatched left nodes map
    to None.
    """
    match_left: list = [None] * len(adjacency)
    match_right: dict = {}

    def try_augment(i, seen) -> bool:
        for v in adjacency[i]:
            if v in seen:
                continue
            seen.add(v)
            j = match_right.get(v)
            if j is None or try_augment(j, seen):
                match_left[i] = v
                match_right[v] = i
                return True
        return False

    for i in range(len(adjacency)):
        try_augment(i, set())
    return match_left, match_right


def _deficient_family(adjacency, match_left, match_right, start: int):
    """Edges reachable from an unmatched edge by alternating paths.

    By Hall's theorem their neighborhood is smaller than the family, which
    is exactly the certificate of non-sparsity we need.
    """
    family = {start}
    frontier = [start]
    neighborhood: set = set()
    while frontier:
        i = frontier.pop()
        for v in adjacency[i]:
            if v in neighborhood:
                continue
            neighborhood.add(v)
            j = match_right.get(v)
            if j is not None and j not in family:
                family.add(j)
                frontier.append(j)
    return family, neighborhood


def hyperforest_report(edges: Sequence[Iterable[Hashable]]) -> ForestReport:
    """Check that every k edges (with multiplicity) touch >= k+1 vertices."""
    edge_sets = [frozenset(e) for e in edges]
    vertices = sorted(set().union(*edge_sets)) if edge_sets else []
    for v in vertices:
        adjacency = [sorted(e - {v}) for e in edge_sets]
        match_left, match_right = _max_matching(adjacency)
        for i, mate in enumerate(match_left):
            if mate is None:
                family, neighborhood = _deficient_family(
                    adjacency, match_left, match_right, i)
                witness = frozenset(neighborhood) | {v}
                return ForestReport(False, witness, tuple(sorted(family)))
    return ForestReport(True)
