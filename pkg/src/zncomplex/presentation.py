"""Group presentations whose relations use at most three generator powers.

Words are tuples of (generator, exponent) syllables.  The module provides
normal forms, presentation extraction from a complex via a spanning tree,
the abelianization map realized through the Smith form of the relation
matrix, sparsity analysis of relation sets over 2-dimensional planes, and
the generator-eliminating rewrites used by the reduction pipeline.  All of
it is pure-value code over exact integers.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from math import comb, gcd

from .errors import NotFreeAbelianError, SparsityError, TooLongError
from .hyperforest import hyperforest_report
from .intlinalg import (
    invert_unimodular,
    plane_key,
    rank_of_rows,
    saturation_completion,
    smith_normal_form,
    solve_integer,
    transpose,
)
from .simplicial import CheckReport, SimplicialComplex, require_valid

Word = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Word, ...]

    def __post_init__(self):
        declared = set(self.generators)
        if len(declared) != len(self.generators):
            raise ValueError("duplicate generator names")
        for word in self.relations:
            for g, e in word:
                if g not in declared:
                    raise ValueError(f"relation uses undeclared generator {g!r}")
                if not isinstance(e, int) or e == 0:
                    raise ValueError(f"exponent must be a nonzero integer, got {e!r}")


def word(*syllables) -> Word:
    return tuple((g, e) for g, e in syllables)


def _clean_word(syllables) -> Word:
    """Drop zero exponents and merge equal adjacent generators (not cyclic)."""
    out: list[list] = []
    for g, e in syllables:
        if not e:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class NormalForm:
    """At most three syllables with distinct generators and nonzero exponents."""

    word: Word

    @property
    def support(self) -> frozenset[str]:
        return frozenset(g for g, _ in self.word)

    @property
    def canonical(self) -> Word:
        """Lexicographically least cyclic rotation; inverses are not identified."""
        if not self.word:
            return ()
        rotations = [self.word[i:] + self.word[:i] for i in range(len(self.word))]
        return min(rotations)


def normalize(syllables) -> NormalForm:
    """Rewrite a word to its conjugacy normal form.

    Zero exponents vanish, equal adjacent generators merge, and a word whose
    first and last syllables share a generator is rotated so they merge too.
    The exponent-sum vector is preserved and the result is independent of
    the order the rules fire.  Raises TooLongError if the fixpoint keeps
    more than three syllables.
    """
    syl = [(g, e) for g, e in syllables if e]
    changed = True
    while changed:
        changed = False
        merged: list[list] = []
        for g, e in syl:
            if merged and merged[-1][0] == g:
                merged[-1][1] += e
                changed = True
                if merged[-1][1] == 0:
                    merged.pop()
            else:
                merged.append([g, e])
        syl = [(g, e) for g, e in merged]
        if changed:
            continue
        if len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            g, first = syl[0]
            wrapped = first + syl[-1][1]
            middle = syl[1:-1]
            syl = ([(g, wrapped)] if wrapped else []) + middle
            changed = True
    if len(syl) > 3:
        raise TooLongError(tuple(syl))
    assert len({g for g, _ in syl}) == len(syl)
    return NormalForm(tuple(syl))


def is_3_presentation(pres: Presentation) -> bool:
    try:
        for rel in pres.relations:
            normalize(rel)
    except TooLongError:
        return False
    return True


def relation_supports(pres: Presentation) -> list[frozenset[str]]:
    return [normalize(rel).support for rel in pres.relations]


# ---------------------------------------------------------------------------
# Extraction from a complex

def extract_presentation(complex_: SimplicialComplex, basepoint: int) -> Presentation:
    """Presentation of the edge-loop group read off a spanning tree.

    Restricted to the component of the basepoint.  Generators are the
    non-tree edges, oriented from smaller to larger vertex id; each triangle
    contributes one relation, reading its three directed edges in increasing
    vertex order with tree edges omitted.  Every relation therefore has at
    most three syllables with exponents +-1.
    """
    require_valid(complex_)
    if not 0 <= basepoint < complex_.vertex_count:
        raise ValueError(f"unknown basepoint {basepoint}")
    adjacency: dict[int, list[int]] = {}
    for a, b in complex_.faces_of_dim(1):
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    component = {basepoint}
    tree: set[tuple[int, int]] = set()
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for w in sorted(adjacency.get(v, ())):
            if w not in component:
                component.add(w)
                tree.add(tuple(sorted((v, w))))
                queue.append(w)

    def gen_name(edge):
        return f"e{edge[0]}_{edge[1]}"

    generators = tuple(gen_name(e) for e in complex_.faces_of_dim(1)
                       if set(e) <= component and e not in tree)
    relations = []
    for a, b, c in complex_.faces_of_dim(2):
        if not {a, b, c} <= component:
            continue
        syllables = []
        for edge, sign in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            if edge not in tree:
                syllables.append((gen_name(edge), sign))
        relations.append(tuple(syllables))
    return Presentation(generators, tuple(relations))


# ---------------------------------------------------------------------------
# Abelianization

@dataclass(frozen=True)
class AbelianMap:
    """Images of the generators in the free abelianization Z^rank."""

    rank: int
    images: dict[str, tuple[int, ...]]

    def vector(self, g: str) -> tuple[int, ...]:
        if g not in self.images:
            raise ValueError(f"unknown generator {g!r}")
        return self.images[g]


def exponent_matrix(pres: Presentation) -> list[list[int]]:
    """|S| x |R| matrix of exponent sums (rows: generators, cols: relations)."""
    index = {g: i for i, g in enumerate(pres.generators)}
    matrix = [[0] * len(pres.relations) for _ in pres.generators]
    for j, rel in enumerate(pres.relations):
        for g, e in rel:
            matrix[index[g]][j] += e
    return matrix


def abelian_images(pres: Presentation) -> AbelianMap:
    """The map onto the free abelianization, from the Smith form.

    With U A V = D for the exponent matrix A, the quotient of Z^{|S|} by the
    relation lattice is read off the bottom rows of U; those rows give each
    generator an image in Z^n, every relation maps to zero, and the images
    generate Z^n.  Raises NotFreeAbelianError when an invariant factor
    exceeds one.
    """
    matrix = exponent_matrix(pres)
    k = len(pres.generators)
    snf = smith_normal_form(matrix, want_left=True)
    if snf.torsion:
        raise NotFreeAbelianError(snf.torsion)
    rank = k - snf.rank
    images = {
        g: tuple(snf.left[i][idx] for i in range(snf.rank, k))
        for idx, g in enumerate(pres.generators)
    }
    return AbelianMap(rank=rank, images=images)


def subset_dimension(phi: AbelianMap, generators) -> int:
    """Rational rank of the images of the given generators."""
    rows = [phi.vector(g) for g in generators]
    if not rows:
        return 0
    return rank_of_rows(rows)


def relation_dimension(pres: Presentation, phi: AbelianMap, index: int) -> int:
    return subset_dimension(phi, normalize(pres.relations[index]).support)


def relations_on(pres: Presentation, rel_indices, generators) -> tuple[int, ...]:
    """Indices of the relations whose normal form uses only these generators."""
    allowed = set(generators)
    return tuple(i for i in rel_indices
                 if normalize(pres.relations[i]).support <= allowed)


# ---------------------------------------------------------------------------
# Generator-eliminating rewrites

def _fresh_names(generators, count: int) -> list[str]:
    taken = set(generators)
    next_k = 0
    for name in generators:
        m = re.fullmatch(r"t(\d+)", name)
        if m:
            next_k = max(next_k, int(m.group(1)) + 1)
    names = []
    while len(names) < count:
        candidate = f"t{next_k}"
        next_k += 1
        if candidate not in taken:
            names.append(candidate)
            taken.add(candidate)
    return names


def replace1(pres: Presentation, phi: AbelianMap,
             g: str) -> tuple[Presentation, AbelianMap]:
    """Drop a generator whose image is zero, deleting it from every relation."""
    image = phi.vector(g)
    if any(image):
        raise ValueError(f"image of {g!r} is not zero: {image}")
    if g not in pres.generators:
        raise ValueError(f"unknown generator {g!r}")
    generators = tuple(x for x in pres.generators if x != g)
    relations = tuple(tuple((h, e) for h, e in rel if h != g)
                      for rel in pres.relations)
    images = {h: v for h, v in phi.images.items() if h != g}
    return Presentation(generators, relations), AbelianMap(phi.rank, images)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, x, y) with a*x + b*y = g
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def replace2(pres: Presentation, phi: AbelianMap, g: str, h: str,
             a: int, b: int) -> tuple[Presentation, AbelianMap]:
    """Fuse two generators with a*phi(g) + b*phi(h) = 0, gcd(a, b) = 1.

    A fresh generator i replaces them: g becomes i^b and h becomes i^-a in
    every relation.  With Bezout coefficients a*c + b*d = 1 the new image is
    phi(i) = d*phi(g) - c*phi(h), which restores phi(g) and phi(h) under the
    substitution.
    """
    if g == h:
        raise ValueError("generators must be distinct")
    if a == 0 or b == 0:
        raise ValueError("coefficients must be nonzero")
    divisor, c, d = _xgcd(a, b)
    if abs(divisor) != 1:
        raise ValueError(f"gcd({a}, {b}) = {abs(divisor)}, expected 1")
    c, d = c * divisor, d * divisor  # normalize to a*c + b*d = 1
    vg, vh = phi.vector(g), phi.vector(h)
    if any(a * x + b * y for x, y in zip(vg, vh)):
        raise ValueError(f"{a}*phi({g}) + {b}*phi({h}) != 0")
    fresh = _fresh_names(pres.generators, 1)[0]
    generators = tuple(x for x in pres.generators if x not in (g, h)) + (fresh,)
    relations = []
    for rel in pres.relations:
        syllables = []
        for x, e in rel:
            if x == g:
                syllables.append((fresh, b * e))
            elif x == h:
                syllables.append((fresh, -a * e))
            else:
                syllables.append((x, e))
        relations.append(_clean_word(syllables))
    images = {x: v for x, v in phi.images.items() if x not in (g, h)}
    images[fresh] = tuple(d * x - c * y for x, y in zip(vg, vh))
    return Presentation(generators, tuple(relations)), AbelianMap(phi.rank, images)


def _is_parallel(u, v) -> bool:
    if not any(u) or not any(v):
        return False
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def _coprime_dependency(u, v) -> tuple[int, int]:
    """Coprime (a, b) with a*u + b*v = 0 for parallel nonzero integer vectors."""
    content = 0
    for x in u:
        content = gcd(content, x)
    direction = [x // content for x in u]  # u = content * direction, content > 0
    k = next(i for i, x in enumerate(direction) if x)
    beta = v[k] // direction[k]
    divisor = gcd(content, beta)
    return beta // divisor, -content // divisor


def strip_trivial_relations(pres: Presentation) -> Presentation:
    """Remove relations whose normal form is the empty word."""
    kept = tuple(rel for rel in pres.relations if normalize(rel).word)
    return Presentation(pres.generators, kept)


def minimize(pres: Presentation) -> tuple[Presentation, AbelianMap]:
    """Eliminate zero generators and collinear pairs until none remain.

    Empty relations are stripped; a generator with zero image is removed
    outright, and any two generators whose images share a line are fused
    (their coprime dependency always exists because the abelianization is
    torsion-free; a two-syllable relation g^a h^b supplies exactly such a
    pair).  At the fixpoint every relation has a three-syllable normal form
    whose image span has dimension two.  Requires a presentation of some
    Z^n; torsion raises NotFreeAbelianError.
    """
    phi = abelian_images(pres)
    pres = strip_trivial_relations(pres)
    while True:
        zero = next((g for g in pres.generators if not any(phi.vector(g))), None)
        if zero is not None:
            pres, phi = replace1(pres, phi, zero)
            pres = strip_trivial_relations(pres)
            continue
        pair = None
        for i, g in enumerate(pres.generators):
            for h in pres.generators[i + 1:]:
                if _is_parallel(phi.vector(g), phi.vector(h)):
                    pair = (g, h)
                    break
            if pair:
                break
        if pair is None:
            break
        a, b = _coprime_dependency(phi.vector(pair[0]), phi.vector(pair[1]))
        pres, phi = replace2(pres, phi, pair[0], pair[1], a, b)
        pres = strip_trivial_relations(pres)
    for idx in range(len(pres.relations)):
        nf = normalize(pres.relations[idx])
        assert len(nf.word) == 3, (idx, nf.word)
        assert subset_dimension(phi, nf.support) == 2
    return pres, phi


# ---------------------------------------------------------------------------
# Sparsity over planes

@dataclass(frozen=True)
class SparsityReport:
    ok: bool
    witness_generators: frozenset[str] = frozenset()
    witness_relations: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _in_plane(vector, key) -> bool:
    if not any(vector):
        return True
    return rank_of_rows([list(r) for r in key] + [list(vector)]) == len(key)


def relation_planes(pres: Presentation, phi: AbelianMap, rel_indices):
    """Group relation indices by the plane their images span.

    Every relation must have a three-syllable normal form of dimension
    exactly two; anything else is a precondition violation.
    """
    planes: dict[tuple, list[int]] = {}
    for idx in rel_indices:
        support = sorted(normalize(pres.relations[idx]).support)
        rows = [phi.vector(g) for g in support]
        dim = rank_of_rows(rows) if rows else 0
        if dim != 2:
            raise SparsityError(
                f"relation {idx} has dimension {dim}; the plane analysis "
                f"needs dimension exactly 2", witness=idx)
        planes.setdefault(plane_key(rows), []).append(idx)
    return planes


def _plane_members(pres: Presentation, phi: AbelianMap, key) -> list[str]:
    return [g for g in pres.generators if _in_plane(phi.vector(g), key)]


def is_sparse(pres: Presentation, phi: AbelianMap, rel_indices) -> SparsityReport:
    """Is |R'[S']| <= |S'| - 1 for every generator set S' of dimension two?

    Decomposes by plane: the relations inside a plane must form a
    hyperforest on the generators whose images lie in that plane (every k
    edges touching at least k+1 vertices), which is tested by a Hall-type
    matching for each deleted vertex.  On failure the violating generator
    set and relations are returned.
    """
    planes = relation_planes(pres, phi, rel_indices)
    for key in sorted(planes):
        idxs = planes[key]
        supports = [normalize(pres.relations[i]).support for i in idxs]
        forest = hyperforest_report(supports)
        if not forest:
            return SparsityReport(
                False,
                frozenset(forest.witness_vertices),
                tuple(idxs[i] for i in forest.witness_edges))
    return SparsityReport(True)


def maximal_sparse_subset(pres: Presentation, phi: AbelianMap) -> tuple[int, ...]:
    """Greedy inclusion-wise maximal sparse relation subset, in input order."""
    by_plane: dict[tuple, list[frozenset[str]]] = {}
    chosen = []
    for idx in range(len(pres.relations)):
        planes = relation_planes(pres, phi, [idx])
        (key, _), = planes.items()
        support = normalize(pres.relations[idx]).support
        trial = by_plane.get(key, []) + [support]
        if hyperforest_report(trial):
            by_plane[key] = trial
            chosen.append(idx)
    return tuple(chosen)


def _full_inside(supports, member: frozenset) -> frozenset[int]:
    return frozenset(i for i, s in enumerate(supports) if s <= member)


def critical_collection(pres: Presentation, phi: AbelianMap,
                        rel_indices) -> list[frozenset[str]]:
    """Merged collection of the critical sets of a sparse relation subset.

    Critical sets (dimension-two generator sets with exactly |S'| - 1 of the
    given relations inside) are enumerated per plane by brute force over the
    plane's generators, then sets whose full-relation sets intersect are
    repeatedly united; the union of two intersecting criticals is critical
    again.  The result covers every critical set and has pairwise disjoint
    relation sets.
    """
    report = is_sparse(pres, phi, rel_indices)
    if not report:
        raise SparsityError(
            f"relation set is not sparse on {sorted(report.witness_generators)}",
            witness=report.witness_generators)
    supports = relation_supports(pres)
    if any(not s for s in supports):
        raise SparsityError("empty-normal-form relations must be stripped first")
    collection: list[frozenset[str]] = []
    planes = relation_planes(pres, phi, rel_indices)
    for key in sorted(planes):
        idxs = planes[key]
        members = _plane_members(pres, phi, key)
        if len(members) > 22:
            raise SparsityError(
                f"plane has {len(members)} generators; brute-force "
                f"enumeration of critical sets is capped at 22")
        direction: dict[str, tuple] = {}
        for g in members:
            vec = phi.vector(g)
            c = 0
            for x in vec:
                c = gcd(c, x)
            prim = tuple(x // c for x in vec) if c else vec
            lead = next((x for x in prim if x), 1)
            direction[g] = prim if lead > 0 else tuple(-x for x in prim)
        edge_masks = []
        for i in idxs:
            mask = 0
            for g in normalize(pres.relations[i]).support:
                mask |= 1 << members.index(g)
            edge_masks.append(mask)
        criticals = []
        for mask in range(1, 1 << len(members)):
            size = mask.bit_count()
            if size < 3:
                continue
            inside = sum(1 for em in edge_masks if em & ~mask == 0)
            if inside != size - 1:
                continue
            subset = [members[i] for i in range(len(members)) if mask >> i & 1]
            if len({direction[g] for g in subset}) < 2:
                continue
            criticals.append(frozenset(subset))
        # Merge criticals whose full relation sets intersect.
        while True:
            merged = None
            for i in range(len(criticals)):
                for j in range(i + 1, len(criticals)):
                    if _full_inside(supports, criticals[i]) & \
                            _full_inside(supports, criticals[j]):
                        merged = (i, j)
                        break
                if merged:
                    break
            if merged is None:
                break
            i, j = merged
            union = criticals[i] | criticals[j]
            criticals = [s for k, s in enumerate(criticals) if k not in (i, j)]
            if union not in criticals:
                criticals.append(union)
        for s in criticals:
            inside = sum(1 for i in idxs if supports[i] <= s)
            assert inside == len(s) - 1, "merged set lost criticality"
        collection.extend(criticals)
    return sorted(collection, key=lambda s: tuple(sorted(s)))


@dataclass(frozen=True)
class SparsityPartition:
    """Relation indices split into sparse / extra / other classes."""

    sparse: tuple[int, ...]
    extra: tuple[int, ...]
    other: tuple[int, ...]

    def check_covers(self, total: int) -> None:
        parts = [self.sparse, self.extra, self.other]
        combined = [i for part in parts for i in part]
        if sorted(combined) != list(range(total)) or len(set(combined)) != len(combined):
            raise ValueError("partition must split the relation indices exactly")


@dataclass(frozen=True)
class ReplaceSparseResult:
    presentation: Presentation
    phi: AbelianMap
    relation_map: tuple[int | None, ...]  # old index -> new index, None if removed
    collection: tuple[frozenset[str], ...]


def replace_sparse(pres: Presentation, phi: AbelianMap,
                   partition: SparsityPartition) -> ReplaceSparseResult:
    """Rebase every critical set of the sparse class on a lattice basis.

    For each merged critical set S'' the integer span of its images is a
    rank-two lattice with basis {x1, x2}; three generators h1, h2, h* enter
    with the relations g^-1 h1^b1 h2^b2 (one per g in S''), h*^-1 h1 h2 and
    h*^-1 h2 h1, and every relation supported inside S'' leaves.  The
    bookkeeping identity |R_new| - |S_new| = |R_sparse| + |R_other| - |S|
    holds exactly; extra-class relations must sit inside some critical set
    and other-class relations must sit inside none.
    """
    partition.check_covers(len(pres.relations))
    supports = relation_supports(pres)
    if any(not s for s in supports):
        raise SparsityError("empty-normal-form relations must be stripped first")
    collection = critical_collection(pres, phi, partition.sparse)
    for idx in partition.extra:
        if not any(supports[idx] <= member for member in collection):
            raise SparsityError(
                f"extra relation {idx} lies in no critical set of the sparse class",
                witness=idx)
    for idx in partition.other:
        if any(supports[idx] <= member for member in collection):
            raise SparsityError(
                f"other-class relation {idx} lies inside a critical set, "
                f"which the accounting forbids", witness=idx)
    generators = list(pres.generators)
    images = dict(phi.images)
    removed: set[int] = set()
    added_relations: list[Word] = []
    for member in collection:
        member_gens = [g for g in pres.generators if g in member]
        rows = [list(images[g]) for g in member_gens]
        snf = smith_normal_form(rows, want_left=True, want_right=True)
        assert snf.rank == 2, "critical set must span a rank-two lattice"
        vinv = invert_unimodular([list(r) for r in snf.right])
        basis = [[snf.diagonal[j] * x for x in vinv[j]] for j in range(2)]
        h1, h2, hstar = _fresh_names(generators, 3)
        generators.extend((h1, h2, hstar))
        images[h1] = tuple(basis[0])
        images[h2] = tuple(basis[1])
        images[hstar] = tuple(x + y for x, y in zip(basis[0], basis[1]))
        columns = transpose(basis)
        for g in member_gens:
            coeffs = solve_integer(columns, list(images[g]))
            assert coeffs is not None, "member image must lie in the lattice"
            b1, b2 = coeffs
            added_relations.append(_clean_word(
                ((g, -1), (h1, b1), (h2, b2))))
        added_relations.append(word((hstar, -1), (h1, 1), (h2, 1)))
        added_relations.append(word((hstar, -1), (h2, 1), (h1, 1)))
        removed.update(i for i, s in enumerate(supports) if s <= member)
    relations = []
    relation_map: list[int | None] = []
    for idx, rel in enumerate(pres.relations):
        if idx in removed:
            relation_map.append(None)
        else:
            relation_map.append(len(relations))
            relations.append(rel)
    relations.extend(added_relations)
    out = Presentation(tuple(generators), tuple(relations))
    out_phi = AbelianMap(phi.rank, images)
    assert len(out.relations) - len(out.generators) == \
        len(partition.sparse) + len(partition.other) - len(pres.generators), \
        "size identity violated"
    return ReplaceSparseResult(out, out_phi, tuple(relation_map),
                               tuple(collection))


@dataclass(frozen=True)
class ReplaceSubspaceResult:
    presentation: Presentation
    phi: AbelianMap
    added_relations: tuple[int, ...]  # indices of the d new relations


def replace_subspace(pres: Presentation, phi: AbelianMap,
                     generators) -> ReplaceSubspaceResult:
    """Kill a generator subset, dropping the rank by the subset's dimension.

    A basis x1..xd of span(images) intersected with Z^n is extended to a
    basis of Z^n; words w_i with image x_i (solved over all generators)
    enter as relations, the images are projected to the last n-d basis
    coordinates, and the subset's generators are deleted from every
    relation.  The result presents Z^(n-d).
    """
    subset = [g for g in pres.generators if g in set(generators)]
    for g in generators:
        if g not in pres.generators:
            raise ValueError(f"unknown generator {g!r}")
    n = phi.rank
    if n == 0 or not subset:
        dim = 0
        basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    else:
        rows = [list(phi.vector(g)) for g in subset]
        dim, basis = saturation_completion(rows)
    new_words: list[Word] = []
    if dim:
        all_columns = transpose([list(phi.vector(g)) for g in pres.generators])
        for i in range(dim):
            coeffs = solve_integer(all_columns, basis[i])
            assert coeffs is not None, "images generate Z^n, so x_i is reachable"
            new_words.append(tuple(
                (g, c) for g, c in zip(pres.generators, coeffs) if c))
    binv = invert_unimodular(basis) if n else []
    images = {}
    dropped = set(subset)
    for g in pres.generators:
        vec = phi.vector(g)
        coords = [sum(vec[k] * binv[k][t] for k in range(n)) for t in range(n)]
        if g in dropped:
            assert not any(coords[dim:]), "subset images must project to zero"
        else:
            images[g] = tuple(coords[dim:])
    added = tuple(range(len(pres.relations), len(pres.relations) + dim))
    relations = tuple(
        _clean_word((g, e) for g, e in rel if g not in dropped)
        for rel in tuple(pres.relations) + tuple(new_words))
    out = Presentation(tuple(g for g in pres.generators if g not in dropped),
                       relations)
    return ReplaceSubspaceResult(out, AbelianMap(n - dim, images), added)


# ---------------------------------------------------------------------------
# Stock presentations and size bounds

def standard_zn(n: int, style: str) -> Presentation:
    """Standard presentations of Z^n.

    'commutator': n generators and the C(n,2) commutator relations (four
    syllables each, so not a 3-presentation).  'intro3': the three-syllable
    variant with helper generators h_{i,j} and relations g_i g_j h_{i,j},
    g_j g_i h_{i,j}.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gens = [f"g{i}" for i in range(1, n + 1)]
    if style == "commutator":
        relations = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                relations.append(word((f"g{i}", 1), (f"g{j}", 1),
                                      (f"g{i}", -1), (f"g{j}", -1)))
        return Presentation(tuple(gens), tuple(relations))
    if style == "intro3":
        helpers = []
        relations = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                h = f"h{i}_{j}"
                helpers.append(h)
                relations.append(word((f"g{i}", 1), (f"g{j}", 1), (h, 1)))
                relations.append(word((f"g{j}", 1), (f"g{i}", 1), (h, 1)))
        return Presentation(tuple(gens + helpers), tuple(relations))
    raise ValueError(f"unknown style {style!r}")


def deficiency_bounds(pres: Presentation, n: int) -> CheckReport:
    """Size constraints every presentation of Z^n satisfies.

    |S| >= n, |R| - |S| >= C(n,2) - n, and their sum |R| >= C(n,2); the
    commutator presentation attains equality in all three.
    """
    s, r = len(pres.generators), len(pres.relations)
    violations = []
    if s < n:
        violations.append(f"|S| = {s} < n = {n}")
    if r - s < comb(n, 2) - n:
        violations.append(f"|R| - |S| = {r - s} < C(n,2) - n = {comb(n, 2) - n}")
    if r < comb(n, 2):
        violations.append(f"|R| = {r} < C(n,2) = {comb(n, 2)}")
    return CheckReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# JSON form

def to_json_dict(pres: Presentation) -> dict:
    return {
        "generators": sorted(pres.generators),
        "relations": [[[g, e] for g, e in rel] for rel in pres.relations],
    }


def from_json_dict(data: dict) -> Presentation:
    generators = tuple(str(g) for g in data["generators"])
    relations = tuple(
        tuple((str(g), int(e)) for g, e in rel) for rel in data["relations"])
    return Presentation(generators, relations)


def dumps_presentation(pres: Presentation) -> str:
    return json.dumps(to_json_dict(pres), indent=1, sort_keys=True) + "\n"


def loads_presentation(text: str) -> Presentation:
    return from_json_dict(json.loads(text))


def write_presentation(pres: Presentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_presentation(pres))


def read_presentation(path) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_presentation(fh.read())
