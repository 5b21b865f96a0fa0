"""Exact integer linear algebra: Smith normal form, ranks, lattice bases.

Everything here works with arbitrary-precision Python integers; there is no
floating point.  Matrices are plain lists of lists (rows).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def transpose(matrix) -> list[list[int]]:
    if not matrix:
        return []
    return [list(col) for col in zip(*matrix)]


def mat_mul(a, b) -> list[list[int]]:
    if a and b:
        assert len(a[0]) == len(b), "inner dimensions must agree"
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


@dataclass(frozen=True)
class SnfResult:
    """Diagonalization left * input * right = diag(diagonal).

    diagonal has length min(m, n), entries are non-negative, each divides the
    next, and zeros sit at the tail.  rank is the number of nonzero entries.
    left (m x m) and right (n x n) are unimodular; they are None unless
    requested.
    """

    diagonal: tuple[int, ...]
    rank: int
    left: tuple[tuple[int, ...], ...] | None = None
    right: tuple[tuple[int, ...], ...] | None = None

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(matrix, want_left: bool = False,
                      want_right: bool = False) -> SnfResult:
    """Smith normal form over Z.

    Pivots are chosen with minimal absolute value (ties broken by least
    expected fill-in) to limit coefficient growth; the divisibility sweep
    guarantees d_i | d_{i+1} directly.  The matrix is held sparsely, so
    boundary matrices of desk-scale complexes diagonalize quickly.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    for row in matrix:
        if len(row) != n:
            raise ValueError("ragged matrix")

    rows: list[dict[int, int]] = []
    cols: list[set[int]] = [set() for _ in range(n)]
    for i, row in enumerate(matrix):
        entries = {j: int(v) for j, v in enumerate(row) if v}
        rows.append(entries)
        for j in entries:
            cols[j].add(i)

    left = identity(m) if want_left else None
    # right_t holds V transposed: row j of right_t is column j of V.
    right_t = identity(n) if want_right else None

    def set_entry(i, j, v):
        row = rows[i]
        if v:
            if j not in row:
                cols[j].add(i)
            row[j] = v
        elif j in row:
            del row[j]
            cols[j].discard(i)

    def add_row(dst, src, q):
        # row dst += q * row src
        for j, v in list(rows[src].items()):
            set_entry(dst, j, rows[dst].get(j, 0) + q * v)
        if left is not None:
            lsrc, ldst = left[src], left[dst]
            for t in range(m):
                ldst[t] += q * lsrc[t]

    def add_col(dst, src, q):
        # col dst += q * col src
        for i in list(cols[src]):
            set_entry(i, dst, rows[i].get(dst, 0) + q * rows[i][src])
        if right_t is not None:
            rsrc, rdst = right_t[src], right_t[dst]
            for t in range(n):
                rdst[t] += q * rsrc[t]

    def swap_rows(i, j):
        if i == j:
            return
        touched = set(rows[i]) | set(rows[j])
        rows[i], rows[j] = rows[j], rows[i]
        for c in touched:
            if c in rows[i]:
                cols[c].add(i)
            else:
                cols[c].discard(i)
            if c in rows[j]:
                cols[c].add(j)
            else:
                cols[c].discard(j)
        if left is not None:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in list(cols[i] | cols[j]):
            vi = rows[r].get(i, 0)
            vj = rows[r].get(j, 0)
            set_entry(r, i, vj)
            set_entry(r, j, vi)
        if right_t is not None:
            right_t[i], right_t[j] = right_t[j], right_t[i]

    def negate_row(i):
        for j in list(rows[i]):
            rows[i][j] = -rows[i][j]
        if left is not None:
            left[i] = [-v for v in left[i]]

    def select_pivot(k):
        best_key = None
        best = None
        for i in range(k, m):
            nr = len(rows[i])
            for j, v in rows[i].items():
                if j < k:
                    continue
                key = (abs(v), (nr - 1) * (len(cols[j]) - 1))
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
                    if key == (1, 0):
                        return best
        return best

    k = 0
    limit = min(m, n)
    while k < limit:
        pivot = select_pivot(k)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        if rows[k][k] < 0:
            negate_row(k)

        while True:
            p = rows[k][k]
            # Clear column k with row operations.
            dirty = False
            for i in sorted(cols[k]):
                if i == k:
                    continue
                v = rows[i][k]
                q = v // p
                if q:
                    add_row(i, k, -q)
                if rows[i].get(k):
                    # Remainder in (0, p) becomes the new, smaller pivot.
                    swap_rows(k, i)
                    dirty = True
                    break
            if dirty:
                continue
            # Column k is now e_k; clearing row k only touches row k.
            for j in sorted(rows[k]):
                if j == k:
                    continue
                v = rows[k][j]
                q = v // p
                if q:
                    add_col(j, k, -q)
                if rows[k].get(j):
                    swap_cols(k, j)
                    dirty = True
                    break
            if dirty:
                continue
            # Pivot must divide everything that remains.
            if p != 1:
                bad = None
                for i in range(k + 1, m):
                    for j, v in rows[i].items():
                        if v % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    add_row(k, bad, 1)
                    continue
            break
        k += 1

    diagonal = tuple(rows[i].get(i, 0) for i in range(limit))
    assert all(d >= 0 for d in diagonal)
    return SnfResult(
        diagonal=diagonal,
        rank=k,
        left=tuple(tuple(r) for r in left) if left is not None else None,
        right=tuple(tuple(r) for r in transpose(right_t))
        if right_t is not None else None,
    )


def rank_of_rows(rows) -> int:
    """Rank over Q of a matrix given by rows of ints or Fractions.

    Rows are scaled to integers (scaling does not change rank) and reduced by
    fraction-free Bareiss elimination.
    """
    cleaned = []
    for row in rows:
        row = list(row)
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
        cleaned.append([int(x * denom) for x in row])
    a = cleaned
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        pivot_row = None
        for i in range(rank, m):
            if a[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


def solve_integer(matrix, target) -> list[int] | None:
    """Solve matrix * x = target over the integers; None if unsolvable.

    matrix is m x n, target has length m.  Uses the Smith form: with
    U A V = D the system becomes D y = U t, x = V y.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if len(target) != m:
        raise ValueError("dimension mismatch")
    if n == 0:
        return [] if all(v == 0 for v in target) else None
    snf = smith_normal_form(matrix, want_left=True, want_right=True)
    ut = mat_vec(snf.left, list(target))
    y = [0] * n
    for i in range(m):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d:
            if ut[i] % d:
                return None
            y[i] = ut[i] // d
        elif ut[i]:
            return None
    return mat_vec(snf.right, y)


def invert_unimodular(matrix) -> list[list[int]]:
    """Inverse of a unimodular integer matrix (via U B V = I => B^-1 = V U)."""
    size = len(matrix)
    if size == 0:
        return []
    if any(len(row) != size for row in matrix):
        raise ValueError("matrix must be square")
    snf = smith_normal_form(matrix, want_left=True, want_right=True)
    if any(d != 1 for d in snf.diagonal):
        raise ValueError("matrix is not unimodular")
    return mat_mul([list(r) for r in snf.right], [list(r) for r in snf.left])


def row_lattice_basis(matrix) -> list[list[int]]:
    """Basis of the lattice spanned over Z by the rows of matrix.

    With U A V = D the row lattice is spanned by d_i * (row i of V^-1) for
    the nonzero d_i.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if m == 0 or n == 0:
        return []
    snf = smith_normal_form(matrix, want_right=True)
    vinv = invert_unimodular([list(r) for r in snf.right])
    return [[snf.diagonal[i] * x for x in vinv[i]] for i in range(snf.rank)]


def saturation_completion(matrix) -> tuple[int, list[list[int]]]:
    """Basis of Z^n adapted to the rational row span of matrix.

    Returns (d, basis) where basis is a unimodular n x n matrix whose first
    d rows span span_Q(rows) intersected with Z^n and whose remaining rows
    complete them to a basis of Z^n.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if n == 0:
        raise ValueError("ambient dimension must be positive")
    if m == 0:
        return 0, identity(n)
    snf = smith_normal_form(matrix, want_right=True)
    vinv = invert_unimodular([list(r) for r in snf.right])
    return snf.rank, vinv


def plane_key(rows) -> tuple[tuple[int, ...], ...]:
    """Canonical key of the rational span of integer vectors.

    The Hermite form of the saturated lattice span_Q(rows) intersected with
    Z^n; equal spans give equal keys.
    """
    rank, basis = saturation_completion([list(r) for r in rows])
    return hnf_rows(basis[:rank])


def hnf_rows(matrix) -> tuple[tuple[int, ...], ...]:
    """Unique row Hermite normal form of the lattice spanned by the rows.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into [0, pivot).  Two row sets spanning the same lattice give
    the same result, so this serves as a canonical key.
    """
    a = [[int(v) for v in row] for row in matrix if any(row)]
    if not a:
        return ()
    n = len(a[0])
    r = 0
    for col in range(n):
        # Gcd-reduce column entries in rows >= r down to a single one.
        while True:
            live = [i for i in range(r, len(a)) if a[i][col]]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(a[i][col]))
            i0 = live[0]
            for i in live[1:]:
                q = a[i][col] // a[i0][col]
                a[i] = [x - q * y for x, y in zip(a[i], a[i0])]
        live = [i for i in range(r, len(a)) if a[i][col]]
        if not live:
            continue
        a[r], a[live[0]] = a[live[0]], a[r]
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][col] // a[r][col]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return tuple(tuple(row) for row in a[:r])
