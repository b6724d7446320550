"""Properness and spatiality of precubical sets.

Spatiality fails exactly when two distinct ``n``-cubes (``n >= 3``) agree on
a subcomplex of the boundary of ``[]^n`` that carries a d-path from ``0_n``
to ``1_n`` avoiding every other vertex of the cube.  Such subcomplexes are
recognized by reachability on a regular grid of mesh ``1/N``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import dpath
from .dpath import PLDPath, Segment
from .pcs import PrecubicalSet, boundary_cube, closure, restrict, standard_cube

MAX_SPATIAL_DIM = 6
DEFAULT_GRIDS = (3, 4)


@dataclass
class ProperVerdict:
    proper: bool
    witness: tuple[str, str] | None = None

    def report(self) -> str:
        lines = [f"proper: {'yes' if self.proper else 'no'}"]
        if self.witness:
            lines.append(f"collision {self.witness[0]} {self.witness[1]}")
        return "\n".join(lines) + "\n"


def is_proper(K: PrecubicalSet) -> ProperVerdict:
    seen: dict[tuple[str, str], str] = {}
    for c in K.cells():
        key = K.extremes(c)
        if key in seen:
            return ProperVerdict(False, (seen[key], c))
        seen[key] = c
    return ProperVerdict(True)


def agreement(K: PrecubicalSet, c1: str, c2: str) -> PrecubicalSet:
    """Subcomplex of the boundary of ``[]^n`` where ``c1`` and ``c2`` agree."""
    n = K.dim_of(c1)
    if K.dim_of(c2) != n:
        raise ValueError("cubes of different dimensions")
    bd = boundary_cube(n)
    words = [w for w in bd.cells() if K.face_at(c1, w) == K.face_at(c2, w)]
    return restrict(bd, words)


@dataclass
class BnCertificate:
    """Either a vertex-avoiding natural path or the grids that were exhausted."""

    n: int
    path: PLDPath | None = None
    grids: tuple[int, ...] = ()

    @property
    def positive(self) -> bool:
        return self.path is not None


def _word(point, N) -> str:
    return "".join("0" if x == 0 else "1" if x == N else "*" for x in point)


def vertex_avoiding_reach(A, n: int, N: int = 3) -> tuple[bool, BnCertificate]:
    """Grid search for a d-path from ``0_n`` to ``1_n`` in ``|A|`` that meets
    no other vertex of ``[]^n``.

    ``A`` is a face-closed set of cell words of the boundary of ``[]^n`` (or a
    complex whose ids are those words).
    """
    if N < 2:
        raise ValueError("grid parameter must be at least 2")
    cells = set(A.dims) if isinstance(A, PrecubicalSet) else set(A)
    start, goal = (0,) * n, (N,) * n
    if "0" * n not in cells or "1" * n not in cells:
        return False, BnCertificate(n, None, (N,))
    prev = {start: None}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        if p == goal:
            break
        for i in range(n):
            if p[i] == N:
                continue
            q = p[:i] + (p[i] + 1,) + p[i + 1 :]
            if q in prev:
                continue
            # the open step lies in the cell of its midpoint
            mid = _word(p, N)
            mid = mid[:i] + "*" + mid[i + 1 :]
            if mid not in cells:
                continue
            w = _word(q, N)
            if w not in cells or ("*" not in w and q != goal):
                continue
            prev[q] = p
            queue.append(q)
    if goal not in prev:
        return False, BnCertificate(n, None, (N,))
    route = [goal]
    while prev[route[-1]] is not None:
        route.append(prev[route[-1]])
    route.reverse()
    pts = tuple(
        (Fraction(k), tuple(Fraction(x, N) for x in p)) for k, p in enumerate(route)
    )
    raw = PLDPath((Segment("*" * n, pts),))
    cube = standard_cube(n)
    path = dpath.naturalize(cube, raw)
    return True, BnCertificate(n, path, (N,))


def certificate_ok(A, n: int, cert: BnCertificate) -> bool:
    """Independent re-check of a positive certificate."""
    cells = set(A.dims) if isinstance(A, PrecubicalSet) else set(A)
    cube = standard_cube(n)
    p = cert.path
    if p is None or not dpath.is_tame_dpath(cube, p) or not dpath.is_natural(cube, p):
        return False
    if dpath.hits_intermediate_vertex(p, n):
        return False
    if p.source(cube) != "0" * n or p.target(cube) != "1" * n:
        return False
    for seg in p.segments:
        for (_, a), (_, b) in zip(seg.points, seg.points[1:]):
            mid = tuple((x + y) / 2 for x, y in zip(a, b))
            for pt in (a, mid):
                if dpath.canonicalize(cube, dpath.Point(seg.cell, pt)).cell not in cells:
                    return False
    return True


def in_Bn(A, n: int, grids=DEFAULT_GRIDS) -> tuple[bool, BnCertificate]:
    if n <= 2:
        return False, BnCertificate(n)
    tried = []
    for N in grids:
        ok, cert = vertex_avoiding_reach(A, n, N)
        tried.append(N)
        if ok:
            return True, cert
    return False, BnCertificate(n, None, tuple(tried))


@dataclass
class SpatialDefect:
    n: int
    cube1: str
    cube2: str
    certificate: BnCertificate


@dataclass
class SpatialVerdict:
    spatial: bool | None
    defects: list[SpatialDefect] = field(default_factory=list)
    undecided_dims: list[int] = field(default_factory=list)

    def report(self) -> str:
        word = {True: "yes", False: "no", None: "undecided"}[self.spatial]
        lines = [f"spatial: {word}"]
        if self.undecided_dims:
            lines.append(
                "dimension cap exceeded for n = " + " ".join(map(str, self.undecided_dims))
            )
        for d in self.defects:
            lines.append(f"defect n={d.n} {d.cube1} {d.cube2}")
            lines.extend("  " + x for x in dpath.dumps(d.certificate.path).splitlines())
        return "\n".join(lines) + "\n"


def is_spatial(K: PrecubicalSet, grids=DEFAULT_GRIDS, max_dim=MAX_SPATIAL_DIM) -> SpatialVerdict:
    defects, undecided = [], []
    for n in range(3, K.dim + 1):
        by_extremes: dict[tuple[str, str], list[str]] = {}
        for c in K.cells(n):
            by_extremes.setdefault(K.extremes(c), []).append(c)
        groups = [g for g in by_extremes.values() if len(g) > 1]
        if not groups:
            continue
        if n > max_dim:
            undecided.append(n)
            continue
        for group in groups:
            for c1, c2 in itertools.combinations(group, 2):
                ok, cert = in_Bn(agreement(K, c1, c2), n, grids)
                if ok:
                    defects.append(SpatialDefect(n, c1, c2, cert))
    if defects:
        return SpatialVerdict(False, defects, undecided)
    return SpatialVerdict(None if undecided else True, [], undecided)


def spatial_defects(K: PrecubicalSet, grids=DEFAULT_GRIDS) -> list[SpatialDefect]:
    return is_spatial(K, grids).defects


def face_closed_subsets(n: int, required=()) -> list[frozenset[str]]:
    """All face-closed subsets of the boundary of ``[]^n`` containing
    ``required``.  Exponential; meant for ``n <= 3``."""
    bd = boundary_cube(n)
    order = sorted(bd.cells(), key=lambda w: (-w.count("*"), w))
    out = []

    def rec(i, chosen, forced):
        if i == len(order):
            out.append(frozenset(chosen))
            return
        w = order[i]
        if w in forced:
            rec(i + 1, chosen | {w}, forced)
            return
        rec(i + 1, chosen | {w}, forced | closure(bd, [w]))
        rec(i + 1, chosen, forced)

    rec(0, frozenset(), frozenset(closure(bd, required)))
    return out
