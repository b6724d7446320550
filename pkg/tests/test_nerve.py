import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubepaths.chains import build_category
from cubepaths.nerve import boundary_squares_vanish, homology, nerve, pi0
from cubepaths.pcs import amalgam, boundary_cube, chain_cube, loop, standard_cube
from cubepaths.snf import invariant_factors, smith_normal_form


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


P = 2_147_483_647


def rank_mod_p(rows, ncols, p=P):
    """Rank by Gaussian elimination modulo a large prime.

    Agrees with the rank over Q unless ``p`` divides a torsion coefficient.
    """
    M = [{j: v % p for j, v in r.items() if v % p} for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((r for r in M if c in r), None)
        if piv is None:
            continue
        M.remove(piv)
        inv = pow(piv[c], -1, p)
        for r in M:
            if c in r:
                q = r[c] * inv % p
                for j, v in piv.items():
                    nv = (r.get(j, 0) - q * v) % p
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
        rank += 1
    return rank


def betti_mod_p(N):
    """Betti numbers from ranks of the boundary matrices over a prime field."""
    top = len(N.simplices) - 1
    ranks = [0]
    for k in range(1, top + 1):
        rows = {}
        for j, col in enumerate(N.boundaries[k]):
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
        ranks.append(rank_mod_p(list(rows.values()), len(N.simplices[k])))
    ranks.append(0)
    return [len(N.simplices[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)]


def is_snf(D, divisors):
    m, n = len(D), len(D[0]) if D else 0
    for i in range(m):
        for j in range(n):
            if i != j and D[i][j]:
                return False
    diag = [D[k][k] for k in range(min(m, n))]
    nz = [d for d in diag if d]
    if diag[: len(nz)] != nz or any(d < 0 for d in nz):
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:])) and nz == divisors


def test_snf_examples():
    r = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert r.divisors == [2, 6, 12]
    assert matmul(matmul(r.U, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]), r.V) == r.D
    assert smith_normal_form([[2, 0], [0, 3]]).divisors == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([]).divisors == []
    assert smith_normal_form([[4]]).divisors == [4]


def test_sparse_route_matches_dense():
    rng = random.Random(7)
    for _ in range(60):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        M = [[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(n)] for _ in range(m)]
        rows = [{j: v for j, v in enumerate(row) if v} for row in M]
        assert invariant_factors(rows, n) == sorted(smith_normal_form(M).divisors)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=1, max_size=6))
def test_snf_properties(M):
    r = smith_normal_form(M)
    assert matmul(matmul(r.U, M), r.V) == r.D
    assert is_snf(r.D, r.divisors)
    rows = [{j: v for j, v in enumerate(row) if v} for row in M]
    assert r.rank == rank_mod_p(rows, 4)


@pytest.mark.parametrize(
    "K,a,b,g,betti",
    [
        (standard_cube(2), "00", "11", 2, [1, 0]),
        (boundary_cube(2), "00", "11", 2, [2]),
        (boundary_cube(3), "000", "111", 3, [1, 1]),
        (amalgam(3, boundary_cube(3))[0], "000", "111", 3, [1, 0, 1]),
        (standard_cube(4), "0000", "1111", 4, [1, 0, 0, 0]),
        (amalgam(4, boundary_cube(4))[0], "0000", "1111", 4, [1, 0, 0, 1]),
    ],
)
def test_homology_examples(K, a, b, g, betti):
    N = nerve(build_category(K, a, b, g))
    assert boundary_squares_vanish(N)
    h = homology(N)
    assert h.betti == betti
    assert betti_mod_p(N) == betti
    assert all(not t for t in h.torsion)
    assert sum((-1) ** k * x for k, x in enumerate(h.betti)) == h.euler_characteristic


def test_nerve_counts_square():
    N = nerve(build_category(standard_cube(2), "00", "11", 2))
    assert N.counts() == [3, 2]
    assert N.boundaries[1] == [{0: 1, 1: -1}, {0: 1, 2: -1}]


def test_terminal_object_gives_point():
    for n in range(1, 5):
        cat = build_category(standard_cube(n), "0" * n, "1" * n, n)
        h = homology(nerve(cat))
        assert h.betti == [1] + [0] * (len(h.betti) - 1)
        assert h.euler_characteristic == 1


def test_homology_lines():
    h = homology(nerve(build_category(boundary_cube(3), "000", "111", 3)))
    assert h.lines() == ["H_0 = Z^1", "H_1 = Z^1", "chi = 0"]


def test_pi0_examples():
    assert pi0(build_category(standard_cube(2), "00", "11", 2)) == [[0, 1, 2]]
    assert len(pi0(build_category(boundary_cube(2), "00", "11", 2))) == 2
    assert len(pi0(build_category(boundary_cube(3), "000", "111", 3))) == 1
    cat = build_category(chain_cube([2, 2]), "0:00", "1:11", 4)
    assert len(pi0(cat)) == 1


def test_pi0_agrees_with_h0():
    for K, a, b, g in [
        (boundary_cube(2), "00", "11", 2),
        (amalgam(2, ["00", "11"])[0], "00", "11", 2),
        (chain_cube([1, 2, 1]), "0:0", "2:1", 4),
    ]:
        cat = build_category(K, a, b, g)
        assert len(pi0(cat)) == homology(nerve(cat)).betti[0]


def test_loop_nerve_is_discrete():
    cat = build_category(loop(), "v", "v", 3)
    N = nerve(cat)
    assert N.counts() == [1]
    assert homology(N).betti == [1]


def test_snf_more_examples():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).divisors == [1, 1, 1]
    assert smith_normal_form([[2, 4], [6, 8]]).divisors == [2, 4]
    assert smith_normal_form([[0] * 3] * 2).rank == 0


def test_snf_large_sparse():
    rng = random.Random(200)
    M = [[rng.choice([1, -1]) if rng.random() < 0.02 else 0 for _ in range(200)] for _ in range(200)]
    r = smith_normal_form(M)
    assert matmul(matmul(r.U, M), r.V) == r.D
    assert is_snf(r.D, r.divisors)
    rows = [{j: v for j, v in enumerate(row) if v} for row in M]
    assert sorted(r.divisors) == invariant_factors(rows, 200)


def test_snf_on_nerve_boundary():
    N = nerve(build_category(standard_cube(4), "0000", "1111", 4))
    cols = N.boundaries[2]
    M = [[col.get(i, 0) for col in cols] for i in range(len(N.simplices[1]))]
    r = smith_normal_form(M)
    assert matmul(matmul(r.U, M), r.V) == r.D
    assert set(r.divisors) == {1}


def test_discrete_and_empty_categories():
    cat = build_category(boundary_cube(2), "00", "11", 2)
    N = nerve(cat)
    assert N.counts() == [2]
    assert homology(N).betti == [2]
    empty = build_category(standard_cube(2), "11", "00", 2)
    assert empty.objects == [] and pi0(empty) == []
