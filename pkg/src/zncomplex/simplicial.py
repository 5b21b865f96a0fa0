"""Simplicial complexes on integer vertex ids, spur collapses, homology.

A complex stores every face explicitly (the complexes here are 2-dimensional
and small) as strictly increasing vertex tuples.  All operations are pure;
nothing mutates a complex in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import InvalidComplexError, ScxFormatError, SpurError
from .intlinalg import smith_normal_form

Face = tuple[int, ...]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a predicate: ok, or a list of human-readable violations."""

    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


OK = CheckReport(True)


def _report(violations: list[str]) -> CheckReport:
    return CheckReport(not violations, tuple(violations))


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed face set over vertices 0..vertex_count-1."""

    faces: frozenset[Face]
    vertex_count: int

    def faces_of_dim(self, k: int) -> list[Face]:
        return sorted(f for f in self.faces if len(f) == k + 1)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    def face_counts(self) -> list[int]:
        counts = [0] * (self.dim + 1 if self.faces else 0)
        for f in self.faces:
            counts[len(f) - 1] += 1
        return counts

    def has_edge(self, a: int, b: int) -> bool:
        return tuple(sorted((a, b))) in self.faces

    def neighbors(self, v: int) -> frozenset[int]:
        return _adjacency(self).get(v, frozenset())


@lru_cache(maxsize=256)
def _adjacency(complex_: SimplicialComplex) -> dict[int, frozenset[int]]:
    out: dict[int, set[int]] = {}
    for f in complex_.faces:
        if len(f) == 2:
            a, b = f
            out.setdefault(a, set()).add(b)
            out.setdefault(b, set()).add(a)
    return {v: frozenset(s) for v, s in out.items()}


def closure_of(faces: Iterable[Iterable[int]]) -> frozenset[Face]:
    """All nonempty subsets of the given faces, as sorted tuples."""
    out: set[Face] = set()
    for face in faces:
        vs = tuple(sorted(set(face)))
        if not vs:
            continue
        for k in range(1, len(vs) + 1):
            out.update(combinations(vs, k))
    return frozenset(out)


def from_maximal_faces(maximal: Iterable[Iterable[int]],
                       vertex_count: int | None = None) -> SimplicialComplex:
    faces = closure_of(maximal)
    if vertex_count is None:
        vertex_count = max((f[-1] for f in faces), default=-1) + 1
    return SimplicialComplex(faces=faces, vertex_count=vertex_count)


def maximal_faces(complex_: SimplicialComplex) -> list[Face]:
    """Faces not strictly contained in another face, in lexicographic order."""
    by_size = sorted(complex_.faces, key=len, reverse=True)
    maximal: list[Face] = []
    seen: set[Face] = set()
    for f in by_size:
        fs = set(f)
        if any(fs < set(g) for g in maximal if len(g) > len(f)):
            continue
        if f not in seen:
            maximal.append(f)
            seen.add(f)
    return sorted(maximal)


def validate(complex_: SimplicialComplex) -> CheckReport:
    """Check the downward-closure, labeling and coverage invariants."""
    violations: list[str] = []
    covered = set()
    for f in sorted(complex_.faces):
        if len(f) == 0:
            violations.append("empty face stored")
            continue
        if any(f[i] >= f[i + 1] for i in range(len(f) - 1)):
            violations.append(f"face {f} is not strictly increasing")
            continue
        if f[0] < 0 or f[-1] >= complex_.vertex_count:
            violations.append(
                f"face {f} uses a vertex outside 0..{complex_.vertex_count - 1}")
        covered.update(f)
        if len(f) > 1:
            for sub in combinations(f, len(f) - 1):
                if sub not in complex_.faces:
                    violations.append(f"missing subset {sub} of face {f}")
    for v in range(complex_.vertex_count):
        if v not in covered:
            violations.append(f"vertex {v} appears in no face")
    return _report(violations)


def require_valid(complex_: SimplicialComplex) -> None:
    report = validate(complex_)
    if not report:
        raise InvalidComplexError(report)


def euler_characteristic(complex_: SimplicialComplex) -> int:
    require_valid(complex_)
    return sum((-1) ** k * c for k, c in enumerate(complex_.face_counts()))


def boundary_matrix(complex_: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map from k-chains to (k-1)-chains.

    Rows are indexed by the sorted (k-1)-faces, columns by the sorted
    k-faces, with the usual alternating signs on sorted vertex tuples.
    For k = 0 the map is zero (a 0 x n matrix).
    """
    if k <= 0:
        return []
    lower = {f: i for i, f in enumerate(complex_.faces_of_dim(k - 1))}
    upper = complex_.faces_of_dim(k)
    matrix = [[0] * len(upper) for _ in range(len(lower))]
    for j, f in enumerate(upper):
        for drop in range(len(f)):
            sub = f[:drop] + f[drop + 1:]
            matrix[lower[sub]][j] = (-1) ** drop
    return matrix


@dataclass(frozen=True)
class Homology:
    betti: int
    torsion: tuple[int, ...] = ()


def homology(complex_: SimplicialComplex, k: int) -> Homology:
    """H_k with integer coefficients, as (betti, torsion coefficients)."""
    if k < 0:
        raise ValueError("homology degree must be non-negative")
    require_valid(complex_)
    return _homology_unchecked(complex_, k)


def _homology_unchecked(complex_: SimplicialComplex, k: int) -> Homology:
    n_k = len(complex_.faces_of_dim(k))
    if n_k == 0:
        return Homology(0)
    rank_k = smith_normal_form(boundary_matrix(complex_, k)).rank if k > 0 else 0
    snf_up = smith_normal_form(boundary_matrix(complex_, k + 1))
    betti = n_k - rank_k - snf_up.rank
    return Homology(betti, snf_up.torsion)


def homology_through(complex_: SimplicialComplex, top: int) -> list[Homology]:
    require_valid(complex_)
    return [_homology_unchecked(complex_, k) for k in range(top + 1)]


def is_spur(complex_: SimplicialComplex, u: int,
            members: Iterable[int]) -> CheckReport:
    """Spur test for a set of vertices at the base vertex u.

    The members must all be adjacent to u, pairwise non-adjacent, and must
    share no common neighbor other than u.  The empty set passes vacuously
    (it collapses to a fresh pendant vertex, see collapse_spur).
    """
    members = sorted(set(members))
    known = range(complex_.vertex_count)
    if u not in known:
        raise ValueError(f"unknown vertex {u}")
    for v in members:
        if v not in known:
            raise ValueError(f"unknown vertex {v}")
    if u in members:
        return _report([f"base vertex {u} is in the set"])
    violations = []
    for v in members:
        if not complex_.has_edge(u, v):
            violations.append(f"member {v} is not adjacent to base {u}")
    for v, w in combinations(members, 2):
        if complex_.has_edge(v, w):
            violations.append(f"members {v}, {w} are adjacent")
        shared = (complex_.neighbors(v) & complex_.neighbors(w)) - {u}
        if shared:
            violations.append(
                f"members {v}, {w} share neighbor {min(shared)} besides {u}")
    return _report(violations)


def are_compatible(complex_: SimplicialComplex, u: int, first: Iterable[int],
                   second: Iterable[int]) -> bool:
    """Disjointness plus at-most-one cross edge, for two spurs at u."""
    first = set(first)
    second = set(second)
    for label, s in (("first", first), ("second", second)):
        report = is_spur(complex_, u, s)
        if not report:
            raise SpurError(report)
    if first & second:
        return False
    cross = sum(1 for v in first for w in second if complex_.has_edge(v, w))
    return cross <= 1


def collapse_spur(complex_: SimplicialComplex, u: int,
                  members: Iterable[int]) -> tuple[SimplicialComplex, dict[int, int]]:
    """Identify a spur to one vertex; returns the quotient and the vertex map.

    The identified vertex keeps the smallest id in the set, and ids are
    compacted afterwards; the returned map sends every old vertex to its new
    id.  Collapsing the empty set degenerates to attaching a fresh pendant
    vertex at u (the identification still introduces its one new vertex and
    the edge to u), which keeps the vertex accounting of spur partitions
    uniform and does not change the homotopy type.
    """
    members = sorted(set(members))
    report = is_spur(complex_, u, members)
    if not report:
        raise SpurError(report)
    if not members:
        w = complex_.vertex_count
        faces = set(complex_.faces)
        faces.add((w,))
        faces.add(tuple(sorted((u, w))))
        out = SimplicialComplex(frozenset(faces), complex_.vertex_count + 1)
        return out, {v: v for v in range(complex_.vertex_count)}
    target = members[0]
    fold = {v: target for v in members}
    survivors = sorted(set(range(complex_.vertex_count)) - set(members[1:]))
    compact = {v: i for i, v in enumerate(survivors)}
    mapping = {v: compact[fold.get(v, v)] for v in range(complex_.vertex_count)}
    faces = frozenset(tuple(sorted({mapping[v] for v in f}))
                      for f in complex_.faces)
    return SimplicialComplex(faces, len(survivors)), mapping


SCX_HEADER = "scx 1"


def dumps_scx(complex_: SimplicialComplex) -> str:
    """Text form: header, vertex count, one maximal face per line."""
    lines = [SCX_HEADER, f"v {complex_.vertex_count}"]
    lines.extend(" ".join(str(v) for v in f) for f in maximal_faces(complex_))
    return "\n".join(lines) + "\n"


def loads_scx(text: str) -> SimplicialComplex:
    lines = text.splitlines()
    if not lines or lines[0].strip() != SCX_HEADER:
        raise ScxFormatError("missing 'scx 1' header")
    if len(lines) < 2 or not lines[1].startswith("v "):
        raise ScxFormatError("missing vertex count line")
    try:
        vertex_count = int(lines[1][2:])
    except ValueError as exc:
        raise ScxFormatError(f"bad vertex count: {lines[1]!r}") from exc
    maximal = []
    for line in lines[2:]:
        line = line.strip()
        if not line:
            continue
        try:
            face = tuple(int(tok) for tok in line.split())
        except ValueError as exc:
            raise ScxFormatError(f"bad face line: {line!r}") from exc
        if list(face) != sorted(set(face)):
            raise ScxFormatError(f"face not sorted and duplicate-free: {line!r}")
        maximal.append(face)
    return from_maximal_faces(maximal, vertex_count)


def write_scx(complex_: SimplicialComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_scx(complex_))


def read_scx(path) -> SimplicialComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_scx(fh.read())
