"""Perfect matchings, 1-factorizations of K_2n, and orthogonal pairs.

Points are labeled 1..2n.  A 1-factorization partitions the edge set of the
complete graph into 2n-1 perfect matchings; two factorizations are orthogonal
when no two edges share a matching in both.  Orthogonal pairs exist for all
sizes 2n except 4 and 6.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import UnsupportedSizeError
from .simplicial import CheckReport

Edge = tuple[int, int]
Matching = frozenset[Edge]


@dataclass(frozen=True)
class OneFactorization:
    size: int
    matchings: tuple[Matching, ...]


@dataclass(frozen=True)
class OrthogonalPair:
    first: OneFactorization
    second: OneFactorization


@dataclass(frozen=True)
class OrthogonalityReport:
    """ok, or a witness (edge, edge', first index, second index)."""

    ok: bool
    witness: tuple[Edge, Edge, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def all_edges(size: int) -> list[Edge]:
    return [(a, b) for a in range(1, size + 1) for b in range(a + 1, size + 1)]


def validate_factorization(fact: OneFactorization) -> CheckReport:
    """Exact partition check: disjoint perfect matchings covering K_size."""
    violations = []
    size = fact.size
    if size < 2 or size % 2:
        violations.append(f"size {size} is not an even integer >= 2")
        return CheckReport(False, tuple(violations))
    if len(fact.matchings) != size - 1:
        violations.append(
            f"expected {size - 1} matchings, found {len(fact.matchings)}")
    seen: dict[Edge, int] = {}
    for idx, matching in enumerate(fact.matchings):
        covered: set[int] = set()
        for edge in matching:
            a, b = edge
            if not (1 <= a < b <= size):
                violations.append(f"matching {idx}: bad edge {edge}")
                continue
            if a in covered or b in covered:
                violations.append(f"matching {idx}: edges overlap at {edge}")
            covered.update(edge)
            if edge in seen:
                violations.append(
                    f"edge {edge} repeated in matchings {seen[edge]} and {idx}")
            seen[edge] = idx
        if covered != set(range(1, size + 1)):
            violations.append(f"matching {idx} is not perfect")
    missing = set(all_edges(size)) - set(seen)
    if missing:
        violations.append(f"edges never covered: {sorted(missing)[:4]}")
    return CheckReport(not violations, tuple(violations))


def round_robin_factorization(size: int) -> OneFactorization:
    """Circle-method factorization: point `size` fixed, the rest rotating.

    Round r pairs the fixed point with the rotation center r and pairs r-s
    with r+s around the circle on 1..size-1 (residue 0 is labeled size-1).
    """
    if size < 2 or size % 2:
        raise ValueError(f"size must be an even integer >= 2, got {size}")
    m = size - 1
    rounds = []
    for r in range(m):
        edges = [_edge(size, r % m or m)]
        for s in range(1, size // 2):
            a = (r - s) % m or m
            b = (r + s) % m or m
            edges.append(_edge(a, b))
        rounds.append(frozenset(edges))
    return OneFactorization(size, tuple(rounds))


def verify_orthogonal_pair(pair: OrthogonalPair) -> OrthogonalityReport:
    """No two edges may share a matching in both factorizations."""
    if pair.first.size != pair.second.size:
        raise ValueError("factorizations have different sizes")
    second_index: dict[Edge, int] = {}
    for idx, matching in enumerate(pair.second.matchings):
        for edge in matching:
            second_index[edge] = idx
    for idx, matching in enumerate(pair.first.matchings):
        edges = sorted(matching)
        for i, e in enumerate(edges):
            for e2 in edges[i + 1:]:
                shared = second_index.get(e)
                if shared is not None and shared == second_index.get(e2):
                    return OrthogonalityReport(False, (e, e2, idx, shared))
    return OrthogonalityReport(True)


def _is_odd_prime(m: int) -> bool:
    if m < 3 or m % 2 == 0:
        return False
    return all(m % d for d in range(3, int(m ** 0.5) + 1, 2))


def _starter_factorization(pairs: list[tuple[int, int]], size: int) -> OneFactorization:
    """Translates of a starter in Z_{size-1}, residue 0 labeled size-1.

    Round t holds the edge {size, t} plus the starter pairs shifted by t.
    """
    m = size - 1

    def label(r: int) -> int:
        return r % m or m

    rounds = []
    for t in range(m):
        edges = [_edge(size, label(t))]
        for x, y in pairs:
            edges.append(_edge(label(x + t), label(y + t)))
        rounds.append(frozenset(edges))
    return OneFactorization(size, tuple(rounds))


def _patterned_starter(m: int) -> list[tuple[int, int]]:
    return [((-s) % m, s) for s in range(1, (m - 1) // 2 + 1)]


def _strong_starter(m: int, seed: int) -> list[tuple[int, int]] | None:
    """Starter in Z_m whose pair sums are distinct and nonzero.

    Such a starter generates a factorization orthogonal to the patterned one:
    two translated pairs land on {x, -x}-type pairs of a common translate
    exactly when their sums collide, and a sum of zero collides with the
    untranslated patterned matching itself.  Depth-first search over the
    difference classes 1..(m-1)/2; the seed only shuffles candidate order.
    """
    rng = random.Random(seed)
    used: set[int] = set()
    sums: set[int] = set()
    pairs: list[tuple[int, int]] = []

    def place(d: int) -> bool:
        if d > (m - 1) // 2:
            return True
        candidates = list(range(1, m))
        rng.shuffle(candidates)
        for x in candidates:
            y = (x + d) % m
            s = (x + y) % m
            if y == 0 or x in used or y in used or s == 0 or s in sums:
                continue
            used.update((x, y))
            sums.add(s)
            pairs.append((x, y))
            if place(d + 1):
                return True
            pairs.pop()
            used.difference_update((x, y))
            sums.discard(s)
        return False

    return pairs if place(1) else None


def _backtracking_mate(first: OneFactorization, seed: int) -> OneFactorization | None:
    """Search for a factorization orthogonal to `first`.

    Matchings are built one at a time; each new matching is anchored at the
    smallest edge not yet used (killing the symmetry of reordering color
    classes) and extended from the smallest uncovered point.  Within a
    matching no two edges may come from the same matching of `first`.
    """
    size = first.size
    first_class: dict[Edge, int] = {}
    for idx, matching in enumerate(first.matchings):
        for edge in matching:
            first_class[edge] = idx
    edges = all_edges(size)
    rng = random.Random(seed)
    used: set[Edge] = set()
    result: list[Matching] = []

    def complete(current: list[Edge], covered: set[int], classes: set[int]) -> bool:
        if len(covered) == size:
            matching = frozenset(current)
            for e in matching:
                used.add(e)
            result.append(matching)
            if extend():
                return True
            result.pop()
            for e in matching:
                used.discard(e)
            return False
        v = min(p for p in range(1, size + 1) if p not in covered)
        partners = [w for w in range(1, size + 1) if w != v and w not in covered]
        rng.shuffle(partners)
        for w in partners:
            e = _edge(v, w)
            cls = first_class[e]
            if e in used or cls in classes:
                continue
            current.append(e)
            covered.update(e)
            classes.add(cls)
            if complete(current, covered, classes):
                return True
            current.pop()
            covered.difference_update(e)
            classes.discard(cls)
        return False

    def extend() -> bool:
        if len(result) == size - 1:
            return True
        anchor = next(e for e in edges if e not in used)
        return complete([anchor], set(anchor), {first_class[anchor]})

    if extend():
        return OneFactorization(size, tuple(result))
    return None


def orthogonal_pair(size: int, seed: int = 0) -> OrthogonalPair:
    """Deterministic orthogonal pair of 1-factorizations of K_size.

    Sizes 4 and 6 are the genuinely impossible cases and raise
    UnsupportedSizeError.  When size-1 is an odd prime the pair comes from
    the patterned starter and a strong starter; otherwise the second
    factorization is found by backtracking against the round-robin one.
    The seed only controls search value ordering.
    """
    if size < 2 or size % 2:
        raise ValueError(f"size must be an even integer >= 2, got {size}")
    if size in (4, 6):
        raise UnsupportedSizeError(
            f"no orthogonal pair of 1-factorizations of K_{size} exists")
    if size == 2:
        fact = round_robin_factorization(2)
        return OrthogonalPair(fact, fact)
    m = size - 1
    if _is_odd_prime(m):
        strong = _strong_starter(m, seed)
        if strong is not None:
            pair = OrthogonalPair(
                _starter_factorization(_patterned_starter(m), size),
                _starter_factorization(strong, size))
            if verify_orthogonal_pair(pair):
                return pair
    first = round_robin_factorization(size)
    second = _backtracking_mate(first, seed)
    if second is None:
        raise UnsupportedSizeError(
            f"search exhausted without an orthogonal mate for size {size}")
    pair = OrthogonalPair(first, second)
    report = verify_orthogonal_pair(pair)
    assert report, f"search returned a non-orthogonal pair: {report.witness}"
    return pair


def _matching_line(matching: Matching) -> str:
    return " ".join(f"{a}-{b}" for a, b in sorted(matching))


def dumps_factorization(fact: OneFactorization) -> str:
    return "\n".join(_matching_line(m) for m in fact.matchings) + "\n"


def loads_factorization(text: str, size: int | None = None) -> OneFactorization:
    matchings = []
    points = 0
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        edges = []
        for token in line.split():
            a, _, b = token.partition("-")
            edges.append(_edge(int(a), int(b)))
            points = max(points, int(a), int(b))
        matchings.append(frozenset(edges))
    return OneFactorization(size if size is not None else points, tuple(matchings))


def dumps_pair(pair: OrthogonalPair) -> str:
    return (dumps_factorization(pair.first) + "%\n"
            + dumps_factorization(pair.second))


def loads_pair(text: str) -> OrthogonalPair:
    head, _, tail = text.partition("\n%\n")
    first = loads_factorization(head)
    second = loads_factorization(tail, size=first.size)
    return OrthogonalPair(first, second)


def write_pair(pair: OrthogonalPair, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_pair(pair))


def read_pair(path) -> OrthogonalPair:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_pair(fh.read())
