"""Nerves of finite categories and their integral homology."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .chains import ChainCategory
from .snf import invariant_factors

MAX_NERVE_DIM = 8


@dataclass
class NerveComplex:
    """Normalized nerve.

    ``simplices[0]`` holds ``(object,)``; for ``k >= 1``, ``simplices[k]``
    holds strings of ``k`` composable non-identity morphism indices.
    """

    simplices: list[list[tuple[int, ...]]]
    boundaries: list[list[dict[int, int]]] = field(default_factory=list)

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts()))


def longest_composable(cat: ChainCategory) -> int:
    out = cat.out_morphisms()
    memo: dict[int, int] = {}

    def depth(obj):
        if obj not in memo:
            memo[obj] = 0
            memo[obj] = max((1 + depth(cat.morphisms[m][1]) for m in out[obj]), default=0)
        return memo[obj]

    return max((depth(o) for o in range(len(cat.objects))), default=0)


def nerve(cat: ChainCategory, max_dim: int | None = None) -> NerveComplex:
    """Nondegenerate simplices up to ``max_dim`` with signed boundary columns.

    ``boundaries[k][j]`` is the boundary of the ``j``-th ``k``-simplex as a
    sparse map from ``(k-1)``-simplex indices to coefficients.
    """
    if max_dim is None:
        max_dim = longest_composable(cat)
        if cat.endomorphisms or max_dim > MAX_NERVE_DIM:
            warnings.warn(f"nerve dimension capped at {MAX_NERVE_DIM}", stacklevel=2)
            max_dim = min(max_dim, MAX_NERVE_DIM)
    out = cat.out_morphisms()
    simplices: list[list[tuple[int, ...]]] = [
        [(o,) for o in range(len(cat.objects))]
    ]
    if max_dim >= 1:
        simplices.append([(m,) for m in range(len(cat.morphisms))])
    for k in range(2, max_dim + 1):
        nxt = []
        for s in simplices[-1]:
            for m in out[cat.morphisms[s[-1]][1]]:
                nxt.append(s + (m,))
        if not nxt:
            break
        simplices.append(nxt)

    comp = cat.composition
    boundaries: list[list[dict[int, int]]] = [[{} for _ in simplices[0]]]
    for k in range(1, len(simplices)):
        index = {s: i for i, s in enumerate(simplices[k - 1])}
        cols = []
        for s in simplices[k]:
            col: dict[int, int] = {}
            faces = []
            if k == 1:
                src, dst, _ = cat.morphisms[s[0]]
                faces = [(0, (dst,)), (1, (src,))]
            else:
                faces.append((0, s[1:]))
                for i in range(1, k):
                    h = comp[(s[i - 1], s[i])]
                    if h is not None:  # composite identity: degenerate face
                        faces.append((i, s[: i - 1] + (h,) + s[i + 1 :]))
                faces.append((k, s[:-1]))
            for i, f in faces:
                r = index[f]
                v = col.get(r, 0) + (-1) ** i
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)
            cols.append(col)
        boundaries.append(cols)
    return NerveComplex(simplices, boundaries)


def boundary_squares_vanish(N: NerveComplex) -> bool:
    for k in range(2, len(N.boundaries)):
        for col in N.boundaries[k]:
            acc: dict[int, int] = {}
            for r, v in col.items():
                for r2, w in N.boundaries[k - 1][r].items():
                    acc[r2] = acc.get(r2, 0) + v * w
            if any(acc.values()):
                return False
    return True


@dataclass
class HomologySummary:
    betti: list[int]
    torsion: list[list[int]]
    euler_characteristic: int

    def lines(self) -> list[str]:
        out = []
        for k, b in enumerate(self.betti):
            terms = ([f"Z^{b}"] if b else []) + [f"Z/{d}" for d in self.torsion[k]]
            out.append(f"H_{k} = " + (" + ".join(terms) if terms else "0"))
        out.append(f"chi = {self.euler_characteristic}")
        return out


def _transpose(cols: list[dict[int, int]]) -> list[dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return list(rows.values())


def homology(N: NerveComplex, up_to: int | None = None) -> HomologySummary:
    """Integral homology in degrees ``0..up_to`` from the boundary matrices.

    Degrees at or above the top computed dimension are only exact when the
    nerve was built to its full dimension.
    """
    top = len(N.simplices) - 1
    if up_to is None:
        up_to = top
    ranks, divs = [], []
    for k in range(len(N.simplices) + 1):
        if 1 <= k <= top:
            d = invariant_factors(_transpose(N.boundaries[k]), len(N.simplices[k]))
        else:
            d = []
        ranks.append(len(d))
        divs.append(d)
    betti, torsion = [], []
    for k in range(up_to + 1):
        n_k = len(N.simplices[k]) if k <= top else 0
        rk_out = ranks[k] if k <= top else 0
        rk_in = ranks[k + 1] if k + 1 <= top else 0
        betti.append(n_k - rk_out - rk_in)
        torsion.append([d for d in (divs[k + 1] if k + 1 <= top else []) if d > 1])
    return HomologySummary(betti, torsion, N.euler_characteristic)


def pi0(cat: ChainCategory) -> list[list[int]]:
    """Connected components (object indices), in canonical order."""
    parent = list(range(len(cat.objects)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t, _ in cat.morphisms:
        a, b = find(s), find(t)
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for o in range(len(cat.objects)):
        comps.setdefault(find(o), []).append(o)
    return sorted(comps.values())
