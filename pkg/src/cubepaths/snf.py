"""Smith normal form over the integers, exact.

Two routes are provided.  :func:`smith_normal_form` works on a dense copy and
tracks the unimodular transforms.  :func:`invariant_factors` only computes the
diagonal and is tuned for the sparse, mostly unimodular boundary matrices of
nerves: unit pivots are eliminated sparsely and whatever is left goes through
the dense routine.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class SNF:
    D: list[list[int]]
    U: list[list[int]] | None
    V: list[list[int]] | None
    rank: int
    divisors: list[int]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _nearest(a: int, b: int) -> int:
    """Quotient rounded to nearest, so remainders are at most ``|b| / 2``."""
    q, r = divmod(a, b)
    return q + 1 if 2 * abs(r) > abs(b) else q


def smith_normal_form(M, transforms: bool = True) -> SNF:
    """Return ``D, U, V`` with ``U M V = D`` diagonal and ``d_1 | d_2 | ...``."""
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _eye(m) if transforms else None
    V = _eye(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        a, b = A[dst], A[src]
        for k in range(n):
            if b[k]:
                a[k] -= q * b[k]
        if U is not None:
            a, b = U[dst], U[src]
            for k in range(m):
                if b[k]:
                    a[k] -= q * b[k]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, _nearest(A[i][t], p))
                    if A[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, _nearest(A[t][j], p))
                    if A[t][j]:
                        moved = True
            if moved:
                # bring the smallest remainder in row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    divisors = [A[k][k] for k in range(min(m, n)) if A[k][k]]
    return SNF(A, U, V, len(divisors), divisors)


def invariant_factors(rows: list[dict[int, int]], ncols: int) -> list[int]:
    """Nonzero invariant factors of a sparse matrix given as row dicts."""
    rows = [dict(r) for r in rows if r]
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    divisors = []
    while True:
        pivot = None
        for i in sorted(alive, key=lambda i: len(rows[i])):
            r = rows[i]
            j = next((j for j, v in r.items() if abs(v) == 1), None)
            if j is not None:
                pivot = (i, j)
                break
        if pivot is None:
            break
        i, j = pivot
        prow = rows[i]
        pv = prow[j]
        for k in list(cols[j]):
            if k == i:
                continue
            r = rows[k]
            q = r[j] * pv  # pv is a unit, so r[j] / pv == r[j] * pv
            for c, v in prow.items():
                nv = r.get(c, 0) - q * v
                if nv:
                    if c not in r:
                        cols.setdefault(c, set()).add(k)
                    r[c] = nv
                else:
                    r.pop(c, None)
                    cols[c].discard(k)
            if not r:
                alive.discard(k)
        for c in prow:
            cols[c].discard(i)
        alive.discard(i)
        rows[i] = {}
        divisors.append(1)
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    if rest:
        used = sorted({c for r in rest for c in r})
        pos = {c: k for k, c in enumerate(used)}
        dense = [[0] * len(used) for _ in rest]
        for a, r in enumerate(rest):
            for c, v in r.items():
                dense[a][pos[c]] = v
        divisors += smith_normal_form(dense, transforms=False).divisors
    return sorted(divisors)
