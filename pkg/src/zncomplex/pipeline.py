"""End-to-end drivers: build-and-verify collapses, presentation reduction.

run_upper builds a block complex and its collapsed form and re-checks every
construction invariant.  run_lower takes a presentation of Z^n through the
whole reduction: minimize, maximal sparse subset, degree pruning over the
image points, the sparse and subspace replacements, and the final size
accounting with its exact rational bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .construction import CollapseTrace, build_x_trace
from .errors import (
    NotFreeAbelianError,
    PipelineStageError,
    SgHypothesisError,
    SparsityError,
    TooLongError,
)
from .presentation import (
    AbelianMap,
    Presentation,
    SparsityPartition,
    abelian_images,
    maximal_sparse_subset,
    minimize,
    normalize,
    relations_on,
    replace_sparse,
    replace_subspace,
    subset_dimension,
)
from .sg import Hypergraph3, config, sg_reduce
from .simplicial import homology_through, is_spur, are_compatible


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class UpperReport:
    trace: CollapseTrace
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def render(self) -> str:
        t = self.trace
        lines = [
            f"m = {t.m} ({t.parity}), factorization size {2 * t.n}",
            f"block complex: {t.start.vertex_count} vertices, "
            f"{len(t.start.faces)} faces",
            f"collapsed complex: {t.result.vertex_count} vertices, "
            f"{len(t.result.faces)} faces",
        ]
        for c in self.checks:
            status = "pass" if c.ok else "FAIL"
            lines.append(f"[{status}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines) + "\n"


def run_upper(m: int, seed: int = 0) -> UpperReport:
    """Build the collapsed complex for m and re-verify every claimed property."""
    trace = build_x_trace(m, seed=seed)
    checks = []
    expected = 8 * trace.n - (1 if trace.parity == "even" else 3)
    checks.append(Check(
        "vertex count",
        trace.result.vertex_count == expected,
        f"{trace.result.vertex_count} (expected {expected})"))
    spur_ok = all(is_spur(trace.start, s.base, s.members) for s in trace.spurs)
    checks.append(Check("every set is a spur", spur_ok,
                        f"{len(trace.spurs)} spurs"))
    compat_ok = all(
        are_compatible(trace.start, trace.spurs[i].base,
                       trace.spurs[i].members, trace.spurs[j].members)
        for i in range(len(trace.spurs))
        for j in range(i + 1, len(trace.spurs)))
    checks.append(Check("spurs pairwise compatible", compat_ok))
    hw = homology_through(trace.start, 2)
    hx = homology_through(trace.result, 2)
    checks.append(Check(
        "homology preserved by the collapses", hw == hx,
        f"betti {[h.betti for h in hx]}, torsion {[h.torsion for h in hx]}"))
    checks.append(Check(
        "first homology is Z^m",
        hx[1].betti == m and not hx[1].torsion,
        f"H1 = Z^{hx[1].betti}, torsion {list(hx[1].torsion)}"))
    checks.append(Check(
        "second homology is torsion-free of rank C(m,2)",
        hx[2].betti == comb(m, 2) and not hx[2].torsion,
        f"H2 = Z^{hx[2].betti}"))
    return UpperReport(trace, tuple(checks))


@dataclass(frozen=True)
class StageRecord:
    name: str
    generators: int
    relations: int
    rank: int
    detail: str = ""
    ok: bool = True


@dataclass
class PipelineReport:
    c: Fraction
    stages: list[StageRecord] = field(default_factory=list)
    final_difference: int = 0
    final_bound: Fraction = Fraction(0)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.stages)

    def render(self) -> str:
        lines = [f"reduction pipeline, c = {self.c}"]
        for s in self.stages:
            status = "pass" if s.ok else "FAIL"
            lines.append(
                f"[{status}] {s.name}: |S| = {s.generators}, |R| = {s.relations}, "
                f"rank = {s.rank}" + (f"  ({s.detail})" if s.detail else ""))
        lines.append(
            f"final |R| - |S| = {self.final_difference} <= {self.final_bound} "
            f"= c k^2 / n + d: {'pass' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _verified_rank(pres: Presentation, stage: str, expected: int) -> None:
    try:
        phi = abelian_images(pres)
    except NotFreeAbelianError as exc:
        raise PipelineStageError(stage, f"torsion appeared: {exc.torsion}",
                                 witness=exc.torsion) from exc
    if phi.rank != expected:
        raise PipelineStageError(
            stage, f"free rank {phi.rank}, expected {expected}")


def run_lower(pres: Presentation, c=Fraction(24)) -> PipelineReport:
    """Run the full reduction on a 3-presentation of Z^n.

    Stage order: abelianize, minimize, pick a maximal sparse subset, prune
    the image hypergraph at threshold c*k/n, grow the surviving generator
    set until it is span-closed, split the relations into sparse / extra /
    other, rebase the critical sets, kill the surviving subspace, and strip
    the trivialized other-class relations.  Each stage re-verifies the
    abelianization by a fresh Smith form; precondition failures raise
    PipelineStageError with the stage name and a witness.
    """
    c = Fraction(c)
    report = PipelineReport(c=c)
    stage = "abelianize"
    try:
        phi = abelian_images(pres)
    except NotFreeAbelianError as exc:
        raise PipelineStageError(stage, str(exc), witness=exc.torsion) from exc
    n = phi.rank
    if n == 0:
        raise PipelineStageError(stage, "rank 0: the threshold c*k/n needs n >= 1")
    report.stages.append(StageRecord(
        stage, len(pres.generators), len(pres.relations), n))

    stage = "minimize"
    try:
        p1, phi1 = minimize(pres)
    except TooLongError as exc:
        raise PipelineStageError(stage, str(exc), witness=exc.word) from exc
    _verified_rank(p1, stage, n)
    k = len(p1.generators)
    report.stages.append(StageRecord(stage, k, len(p1.relations), n))

    stage = "maximal-sparse"
    try:
        sparse_idx = maximal_sparse_subset(p1, phi1)
    except SparsityError as exc:
        raise PipelineStageError(stage, str(exc), witness=exc.witness) from exc
    report.stages.append(StageRecord(
        stage, k, len(p1.relations), n, detail=f"|R'| = {len(sparse_idx)}"))

    stage = "sg-reduce"
    threshold = c * k / n
    points = [phi1.vector(g) for g in p1.generators]
    gen_index = {g: i for i, g in enumerate(p1.generators)}
    edges = tuple(
        frozenset(gen_index[g] for g in normalize(p1.relations[i]).support)
        for i in sparse_idx)
    graph = Hypergraph3(tuple(range(k)), edges)
    try:
        reduction = sg_reduce(config(points, dimension=n), graph, threshold)
    except SgHypothesisError as exc:
        raise PipelineStageError(stage, str(exc), witness=exc.witness) from exc
    sg_ok = reduction.dim_within_bound and reduction.removal_within_budget
    report.stages.append(StageRecord(
        stage, k, len(p1.relations), n,
        detail=(f"threshold {threshold}, kept {len(reduction.kept)} points, "
                f"span {reduction.dim_span} <= {reduction.bound}, "
                f"removed {reduction.removed_edges} < {reduction.removal_budget}"),
        ok=sg_ok))

    stage = "augment"
    chosen = set(p1.generators[i] for i in reduction.kept)
    s_prime = [g for g in p1.generators if g in chosen]
    current_dim = subset_dimension(phi1, s_prime)
    changed = True
    while changed:
        changed = False
        for g in p1.generators:
            if g in chosen:
                continue
            if subset_dimension(phi1, s_prime + [g]) == current_dim:
                chosen.add(g)
                s_prime = [x for x in p1.generators if x in chosen]
                changed = True
    d = current_dim
    report.stages.append(StageRecord(
        stage, k, len(p1.relations), n,
        detail=f"|S'| = {len(s_prime)}, d = {d}"))

    stage = "partition"
    on_sprime = set(relations_on(p1, range(len(p1.relations)), s_prime))
    sparse_set = set(sparse_idx)
    r_s = tuple(i for i in sparse_idx if i not in on_sprime)
    r_e = tuple(i for i in range(len(p1.relations))
                if i not in sparse_set and i not in on_sprime)
    r_o = tuple(sorted(on_sprime))
    partition = SparsityPartition(r_s, r_e, r_o)
    report.stages.append(StageRecord(
        stage, k, len(p1.relations), n,
        detail=f"|R_s| = {len(r_s)}, |R_e| = {len(r_e)}, |R_o| = {len(r_o)}"))

    stage = "replace-sparse"
    try:
        sparse_result = replace_sparse(p1, phi1, partition)
    except SparsityError as exc:
        raise PipelineStageError(stage, str(exc), witness=exc.witness) from exc
    p2, phi2 = sparse_result.presentation, sparse_result.phi
    _verified_rank(p2, stage, n)
    identity_ok = (len(p2.relations) - len(p2.generators)
                   == len(r_s) + len(r_o) - k)
    report.stages.append(StageRecord(
        stage, len(p2.generators), len(p2.relations), n,
        detail=(f"|R|-|S| = {len(p2.relations) - len(p2.generators)} "
                f"= |R_s|+|R_o|-|S| = {len(r_s) + len(r_o) - k}"),
        ok=identity_ok))

    stage = "replace-subspace"
    subspace_result = replace_subspace(p2, phi2, s_prime)
    p3, phi3 = subspace_result.presentation, subspace_result.phi
    _verified_rank(p3, stage, n - d)
    report.stages.append(StageRecord(
        stage, len(p3.generators), len(p3.relations), n - d,
        detail=f"rank dropped by d = {d}"))

    stage = "strip-other"
    other_new = []
    for i in r_o:
        j = sparse_result.relation_map[i]
        if j is None:
            raise PipelineStageError(
                stage, f"other-class relation {i} was consumed early", witness=i)
        other_new.append(j)
    for j in other_new:
        if p3.relations[j]:
            raise PipelineStageError(
                stage, f"relation {j} should have trivialized", witness=j)
    keep = [rel for j, rel in enumerate(p3.relations) if j not in set(other_new)]
    p4 = Presentation(p3.generators, tuple(keep))
    _verified_rank(p4, stage, n - d)
    report.stages.append(StageRecord(
        stage, len(p4.generators), len(p4.relations), n - d,
        detail=f"stripped {len(other_new)} trivial relations"))

    difference = len(p4.relations) - len(p4.generators)
    expected_difference = len(r_s) + d - (k - len(s_prime))
    bound = c * k * k / n + d
    report.final_difference = difference
    report.final_bound = bound
    report.stages.append(StageRecord(
        "final", len(p4.generators), len(p4.relations), n - d,
        detail=(f"|R|-|S| = {difference}, chain value {expected_difference}, "
                f"bound {bound}"),
        ok=(difference == expected_difference and difference <= bound)))
    return report


def smallest_k(predicate) -> int:
    k = 1
    while not predicate(k):
        k += 1
    return k


def report_bounds(n: int) -> str:
    """Exact constraint table for vertex counts at a given rank n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    target = comb(n, 2)
    k_gens = smallest_k(lambda k: comb(k, 2) >= n)
    k_rels = smallest_k(lambda k: comb(k, 3) >= target)
    k_pairs = smallest_k(lambda k: comb(k, 2) >= target)
    lines = [
        f"n = {n}, C(n,2) = {target}",
        f"smallest k with C(k,2) >= n      : {k_gens} (C({k_gens},2) = {comb(k_gens, 2)})",
        f"smallest k with C(k,3) >= C(n,2) : {k_rels} (C({k_rels},3) = {comb(k_rels, 3)})",
        f"smallest k with C(k,2) >= C(n,2) : {k_pairs} (C({k_pairs},2) = {comb(k_pairs, 2)})",
    ]
    return "\n".join(lines) + "\n"
