"""Exact point-line incidence checks and the hypergraph pruning reduction.

Points are exact integer or rational vectors; there is no floating point
anywhere in this module.  Linear-mode configurations (nonzero points,
pairwise spanning distinct lines through the origin) support the pruning
reduction; projectivization turns coplanarity through the origin into
collinearity on an affine hyperplane.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import SgHypothesisError
from .hyperforest import hyperforest_report
from .intlinalg import plane_key, rank_of_rows
from .simplicial import CheckReport


@dataclass(frozen=True)
class PointConfig:
    dimension: int
    points: tuple[tuple, ...]

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.dimension:
                raise ValueError(f"point {p} does not have dimension {self.dimension}")


def config(points, dimension: int | None = None) -> PointConfig:
    pts = tuple(tuple(x if isinstance(x, Fraction) else int(x) for x in p)
                for p in points)
    if dimension is None:
        if not pts:
            raise ValueError("dimension required for an empty configuration")
        dimension = len(pts[0])
    return PointConfig(dimension, pts)


def _is_parallel(u, v) -> bool:
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def linear_mode_report(cfg: PointConfig) -> CheckReport:
    """Nonzero integer points, pairwise distinct lines through the origin."""
    violations = []
    for i, p in enumerate(cfg.points):
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in p):
            violations.append(f"point {i} is not integral")
        if not any(p):
            violations.append(f"point {i} is zero")
    for i in range(len(cfg.points)):
        for j in range(i + 1, len(cfg.points)):
            u, v = cfg.points[i], cfg.points[j]
            if any(u) and any(v) and _is_parallel(u, v):
                violations.append(
                    f"points {i} and {j} share a 1-dimensional subspace")
    return CheckReport(not violations, tuple(violations))


def _normal_candidates(dimension: int, max_norm: int):
    # Per coordinate the values run 0, 1, .., m, -1, .., -m so that small
    # non-negative normals come first; only vectors of max-norm exactly m
    # are yielded at level m.
    for m in range(1, max_norm + 1):
        order = list(range(m + 1)) + [-v for v in range(1, m + 1)]
        for cand in product(order, repeat=dimension):
            if max(abs(x) for x in cand) == m:
                yield cand


def projectivize(cfg: PointConfig) -> tuple[PointConfig, tuple[int, ...]]:
    """Scale each point onto the affine hyperplane {x : x . normal = 1}.

    The normal is the first integer vector, in increasing max-norm and a
    fixed coordinate order, orthogonal to none of the points; the search is
    capped at max-norm 2|V| + 1.  Three points lie in a plane through the
    origin exactly when their images are collinear, and distinct lines
    through the origin give distinct images.
    """
    report = linear_mode_report(cfg)
    if not report:
        raise ValueError("; ".join(report.violations))
    cap = 2 * len(cfg.points) + 1
    normal = None
    for cand in _normal_candidates(cfg.dimension, cap):
        if all(sum(x * y for x, y in zip(cand, p)) != 0 for p in cfg.points):
            normal = cand
            break
    if normal is None:
        raise ValueError(f"no valid normal vector with max-norm <= {cap}")
    points = []
    for p in cfg.points:
        dot = sum(x * y for x, y in zip(normal, p))
        points.append(tuple(Fraction(x, dot) for x in p))
    return PointConfig(cfg.dimension, tuple(points)), normal


def affine_dimension(cfg: PointConfig) -> int:
    """Rank of the differences to the first point, in exact arithmetic."""
    if not cfg.points:
        raise ValueError("affine dimension needs at least one point")
    base = cfg.points[0]
    rows = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)]
            for p in cfg.points[1:]]
    return rank_of_rows(rows) if rows else 0


def _primitive_direction(delta) -> tuple[int, ...]:
    denom = 1
    for x in delta:
        f = Fraction(x)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(Fraction(x) * denom) for x in delta]
    content = 0
    for x in ints:
        content = gcd(content, x)
    ints = [x // content for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _line_key(p, q):
    direction = _primitive_direction([Fraction(b) - Fraction(a)
                                      for a, b in zip(p, q)])
    k = next(i for i, x in enumerate(direction) if x)
    t = Fraction(p[k], direction[k])
    anchor = tuple(Fraction(x) - t * d for x, d in zip(p, direction))
    return anchor, direction


def special_lines(cfg: PointConfig) -> dict:
    """Lines through at least three points, as {canonical line: point indices}."""
    lines: dict = {}
    n = len(cfg.points)
    for i in range(n):
        for j in range(i + 1, n):
            if cfg.points[i] == cfg.points[j]:
                raise ValueError(f"points {i} and {j} coincide")
            key = _line_key(cfg.points[i], cfg.points[j])
            lines.setdefault(key, set()).update((i, j))
    return {k: v for k, v in lines.items() if len(v) >= 3}


@dataclass(frozen=True)
class DeltaSgReport:
    ok: bool
    tallies: tuple[int, ...]
    required: Fraction

    def __bool__(self) -> bool:
        return self.ok


def is_delta_sg(cfg: PointConfig, delta) -> DeltaSgReport:
    """Does every point see delta * (n-1) others on lines through >= 3 points?

    The comparison is exact rational; the per-point tallies count the other
    points lying on special lines through the point (two special lines
    through a point meet only there, so the counts add up line by line).
    """
    delta = Fraction(delta)
    if not 0 <= delta <= 1:
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    n = len(cfg.points)
    lines = special_lines(cfg)
    tallies = [0] * n
    for members in lines.values():
        for i in members:
            tallies[i] += len(members) - 1
    required = delta * (n - 1)
    ok = all(t >= required for t in tallies)
    return DeltaSgReport(ok, tuple(tallies), required)


# ---------------------------------------------------------------------------
# 3-uniform hypergraphs over point configurations

@dataclass(frozen=True)
class Hypergraph3:
    """Vertices are point indices; edges form a multiset of 3-element sets."""

    vertices: tuple[int, ...]
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        vset = set(self.vertices)
        for e in self.edges:
            if len(e) != 3:
                raise ValueError(f"edge {sorted(e)} does not have 3 distinct members")
            if not e <= vset:
                raise ValueError(f"edge {sorted(e)} uses unknown vertices")

    def degrees(self) -> dict[int, int]:
        out = {v: 0 for v in self.vertices}
        for e in self.edges:
            for v in e:
                out[v] += 1
        return out


def hypergraph(edges, num_vertices: int | None = None) -> Hypergraph3:
    edge_sets = tuple(frozenset(int(v) for v in e) for e in edges)
    if num_vertices is None:
        num_vertices = max((max(e) for e in edge_sets), default=-1) + 1
    return Hypergraph3(tuple(range(num_vertices)), edge_sets)


def prune_min_degree(graph: Hypergraph3, threshold) -> Hypergraph3:
    """Largest sub-hypergraph of minimum degree >= threshold.

    Vertices of lower degree are removed (with their edges) until none
    remain; the fixpoint is unique, so removal order does not matter.
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    alive = set(graph.vertices)
    edges = list(graph.edges)
    while True:
        degrees: dict[int, int] = {v: 0 for v in alive}
        for e in edges:
            for v in e:
                degrees[v] += 1
        doomed = {v for v in alive if degrees[v] < threshold}
        if not doomed:
            break
        alive -= doomed
        edges = [e for e in edges if not (e & doomed)]
    return Hypergraph3(tuple(sorted(alive)), tuple(edges))


@dataclass(frozen=True)
class SgReduction:
    kept: tuple[int, ...]
    edges: tuple[frozenset[int], ...]
    dim_span: int
    bound: Fraction
    removed_edges: int
    removal_budget: Fraction

    @property
    def dim_within_bound(self) -> bool:
        return self.dim_span <= self.bound

    @property
    def removal_within_budget(self) -> bool:
        return self.removed_edges < self.removal_budget


def sg_reduce(cfg: PointConfig, graph: Hypergraph3, threshold) -> SgReduction:
    """Prune low-degree vertices and report the span of the survivors.

    Inputs must be in linear mode, every edge's three points must span a
    plane, and within each plane the edges must form a hyperforest (any k
    edges touch at least k+1 vertices); a violating vertex subset raises
    SgHypothesisError.  The pruning removes fewer than threshold * |V|
    edges, and the span of the surviving points is checked against the
    12 * |V| / threshold bound; an excess is reported, not silenced.
    """
    threshold = Fraction(threshold)
    report = linear_mode_report(cfg)
    if not report:
        raise ValueError("; ".join(report.violations))
    if set(graph.vertices) - set(range(len(cfg.points))):
        raise ValueError("hypergraph vertices must index the points")
    by_plane: dict[tuple, list[frozenset[int]]] = {}
    for e in graph.edges:
        rows = [[int(x) for x in cfg.points[v]] for v in sorted(e)]
        if rank_of_rows(rows) != 2:
            raise ValueError(
                f"edge {sorted(e)} does not span a 2-dimensional subspace")
        by_plane.setdefault(plane_key(rows), []).append(e)
    for key in sorted(by_plane):
        forest = hyperforest_report(by_plane[key])
        if not forest:
            raise SgHypothesisError(forest.witness_vertices)
    pruned = prune_min_degree(graph, threshold)
    removed = len(graph.edges) - len(pruned.edges)
    dim_span = rank_of_rows([cfg.points[v] for v in pruned.vertices]) \
        if pruned.vertices else 0
    bound = 12 * Fraction(len(graph.vertices)) / threshold
    return SgReduction(
        kept=pruned.vertices,
        edges=pruned.edges,
        dim_span=dim_span,
        bound=bound,
        removed_edges=removed,
        removal_budget=threshold * len(graph.vertices),
    )


# ---------------------------------------------------------------------------
# JSON forms

def points_to_json(cfg: PointConfig) -> dict:
    return {"dimension": cfg.dimension,
            "points": [[int(x) for x in p] for p in cfg.points]}


def points_from_json(data: dict) -> PointConfig:
    return config(data["points"], dimension=int(data["dimension"]))


def read_points(path) -> PointConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return points_from_json(json.load(fh))


def write_points(cfg: PointConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(points_to_json(cfg), fh, indent=1, sort_keys=True)
        fh.write("\n")


def hypergraph_to_json(graph: Hypergraph3) -> dict:
    return {"edges": [sorted(e) for e in graph.edges]}


def hypergraph_from_json(data: dict, num_vertices: int | None = None) -> Hypergraph3:
    return hypergraph(data["edges"], num_vertices)


def read_hypergraph(path, num_vertices: int | None = None) -> Hypergraph3:
    with open(path, "r", encoding="utf-8") as fh:
        return hypergraph_from_json(json.load(fh), num_vertices)
