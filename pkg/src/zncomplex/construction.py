"""Builders for the small complexes with free-abelian first homology.

build_w(n) assembles the complex on n^2 + n + 1 vertices from one 7-vertex
torus block per index pair; build_spurs partitions its two-index vertices
into pairwise compatible spurs using an orthogonal pair of 1-factorizations;
build_x collapses those spurs one by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import UnsupportedSizeError
from .factorization import OrthogonalPair, orthogonal_pair
from .simplicial import SimplicialComplex, from_maximal_faces
from .simplicial import collapse_spur as _collapse

# Triangles of the 7-vertex torus block, read off its planar diagram as
# index patterns over (u, vi1, vi2, vj1, vj2, w1, w2).  Together with the
# boundary identifications these triangulate a torus: 21 edges (all pairs),
# every vertex in six triangles, every vertex link a hexagon.
_BLOCK_PATTERNS = (
    (0, 1, 5), (0, 3, 5), (1, 2, 5), (3, 5, 6), (3, 4, 1), (4, 0, 1),
    (3, 1, 6), (1, 2, 6), (2, 0, 6), (6, 4, 0), (5, 2, 4), (5, 6, 4),
    (2, 0, 3), (2, 3, 4),
)


def torus_block(u: int, vi1: int, vi2: int, vj1: int, vj2: int,
                w1: int, w2: int) -> list[tuple[int, int, int]]:
    """The 14 triangles of one torus block on the seven given labels."""
    labels = (u, vi1, vi2, vj1, vj2, w1, w2)
    if len(set(labels)) != 7:
        raise ValueError(f"labels must be distinct, got {labels}")
    return [tuple(sorted(labels[i] for i in pattern))
            for pattern in _BLOCK_PATTERNS]


@dataclass(frozen=True)
class WnLabeling:
    """Vertex ids: u first, then v(i,k) in (i,k) order, then w(i,j,k)."""

    n: int
    u: int
    v: dict[tuple[int, int], int]
    w: dict[tuple[int, int, int], int]

    def names(self) -> list[tuple[str, int]]:
        out = [("u", self.u)]
        out.extend((f"v_{i}_{k}", vid) for (i, k), vid in sorted(self.v.items()))
        out.extend((f"w_{i}_{j}_{k}", wid)
                   for (i, j, k), wid in sorted(self.w.items()))
        return out


def dumps_labeling(labeling: WnLabeling) -> str:
    return "\n".join(f"{name} {vid}" for name, vid in labeling.names()) + "\n"


@dataclass(frozen=True)
class SpurSet:
    """A spur: base vertex u plus the member vertices collapsed onto one id.

    Members are normally nonempty; the single degenerate exception is the
    one-index odd case, where the deletion step empties both spurs and the
    collapse just contributes its fresh vertex.
    """

    base: int
    members: frozenset[int] = field(default_factory=frozenset)


def build_w(n: int) -> tuple[SimplicialComplex, WnLabeling]:
    """Complex on n^2 + n + 1 vertices with first homology Z^n.

    Vertex ids are assigned deterministically: u = 0, then the 2n rim
    vertices, then the paired block vertices in lexicographic index order.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    v = {}
    next_id = 1
    for i in range(1, n + 1):
        for k in (1, 2):
            v[(i, k)] = next_id
            next_id += 1
    w = {}
    for i, j in combinations(range(1, n + 1), 2):
        for k in (1, 2):
            w[(i, j, k)] = next_id
            next_id += 1
    maximal: list[tuple[int, ...]] = []
    for i in range(1, n + 1):
        maximal.extend(((0, v[(i, 1)]), tuple(sorted((v[(i, 1)], v[(i, 2)]))),
                        (0, v[(i, 2)])))
    for i, j in combinations(range(1, n + 1), 2):
        maximal.extend(torus_block(0, v[(i, 1)], v[(i, 2)], v[(j, 1)],
                                   v[(j, 2)], w[(i, j, 1)], w[(i, j, 2)]))
    complex_ = from_maximal_faces(maximal, vertex_count=next_id)
    return complex_, WnLabeling(n=n, u=0, v=v, w=w)


def build_spurs(n: int, parity: str, pair: OrthogonalPair,
                labeling: WnLabeling) -> list[SpurSet]:
    """The 4n - 2 compatible spurs induced by an orthogonal pair on [2n].

    Matching M in factorization k yields the spur {w(i,j,k) : {i,j} in M}.
    For the odd case the labeling comes from the complex one index smaller,
    and members naming the deleted index are dropped.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    size = 2 * n
    if pair.first.size != size:
        raise ValueError(
            f"pair has size {pair.first.size}, expected {size}")
    expected_n = size if parity == "even" else size - 1
    if labeling.n != expected_n:
        raise ValueError(
            f"labeling is for n={labeling.n}, expected {expected_n}")
    spurs = []
    for k, fact in ((1, pair.first), (2, pair.second)):
        for matching in fact.matchings:
            members = []
            for a, b in sorted(matching):
                key = (a, b, k)
                if key in labeling.w:
                    members.append(labeling.w[key])
            spurs.append(SpurSet(base=labeling.u, members=frozenset(members)))
    return spurs


def _split_m(m: int) -> tuple[int, str]:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if m in (3, 4, 5, 6):
        raise UnsupportedSizeError(
            f"m = {m} needs an orthogonal pair of size 4 or 6, which does not exist")
    if m % 2 == 0:
        return m // 2, "even"
    return (m + 1) // 2, "odd"


@dataclass(frozen=True)
class CollapseTrace:
    """Everything produced on the way from the block complex to the quotient."""

    m: int
    n: int
    parity: str
    start: SimplicialComplex
    labeling: WnLabeling
    pair: OrthogonalPair
    spurs: list[SpurSet]
    result: SimplicialComplex
    vertex_map: dict[int, int]


def build_x_trace(m: int, seed: int = 0) -> CollapseTrace:
    """Collapse every spur of the orthogonal-pair partition, in order."""
    n, parity = _split_m(m)
    complex_, labeling = build_w(m)
    pair = orthogonal_pair(2 * n, seed=seed)
    spurs = build_spurs(n, parity, pair, labeling)
    current = complex_
    total = {v: v for v in range(complex_.vertex_count)}
    pending = [set(s.members) for s in spurs]
    base = labeling.u
    for idx, members in enumerate(pending):
        current, step = _collapse(current, base, members)
        base = step[base]
        for later in pending[idx + 1:]:
            remapped = {step[v] for v in later}
            later.clear()
            later.update(remapped)
        total = {v: step[img] for v, img in total.items()}
    return CollapseTrace(m=m, n=n, parity=parity, start=complex_,
                         labeling=labeling, pair=pair, spurs=spurs,
                         result=current, vertex_map=total)


def build_x(m: int, seed: int = 0) -> SimplicialComplex:
    """The collapsed complex: 8n - 1 vertices for m = 2n, 8n - 3 for m = 2n - 1."""
    return build_x_trace(m, seed=seed).result
