"""Cube chains and the refinement category between two vertices.

An object is a sequence of cubes ``(c_1, ..., c_p)`` of dimension >= 1 whose
extreme vertices line up.  A morphism from a fine chain to a coarse chain is
stored as a witness: for every coarse cube an ordered partition of its axes.
Block ``r`` of the partition of a coarse cube ``c`` is sent to the face of
``c`` that is free on that block, 1 on all earlier blocks and 0 on all later
ones; those faces must be exactly the consecutive fine cubes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .pcs import PcsError, PrecubicalSet

MAX_PARTITION_DIM = 12

Block = tuple[int, ...]
Witness = tuple[tuple[Block, ...], ...]


class ResourceCapError(RuntimeError):
    """A hard size cap of the library was exceeded."""


@dataclass(frozen=True, order=True)
class CubeChain:
    cells: tuple[str, ...]
    dims: tuple[int, ...]
    source: str
    target: str

    @property
    def grade(self) -> int:
        return sum(self.dims)

    def __len__(self) -> int:
        return len(self.cells)

    def sort_key(self):
        return (len(self.cells), self.cells)

    def __str__(self) -> str:
        return ",".join(self.cells)


def make_chain(K: PrecubicalSet, cells) -> CubeChain:
    cells = tuple(cells)
    if not cells:
        raise PcsError("a cube chain needs at least one cube")
    dims = tuple(K.dim_of(c) for c in cells)
    if min(dims) < 1:
        raise PcsError("cube chains use cubes of dimension >= 1")
    for a, b in zip(cells, cells[1:]):
        if K.final_vertex(a) != K.initial_vertex(b):
            raise PcsError(f"cubes {a!r} and {b!r} do not line up")
    return CubeChain(cells, dims, K.initial_vertex(cells[0]), K.final_vertex(cells[-1]))


def iterated_face(K: PrecubicalSet, cell: str, indices, eps: int) -> str:
    return K.iterated_face(cell, indices, eps)


def block_word(m: int, blocks: tuple[Block, ...], r: int) -> str:
    """Cell word of the face assigned to block ``r`` of an ordered partition."""
    w = ["0"] * m
    for s, blk in enumerate(blocks):
        ch = "1" if s < r else "*" if s == r else "0"
        for a in blk:
            w[a - 1] = ch
    return "".join(w)


def ordered_partitions(m: int, sizes: tuple[int, ...]) -> Iterator[tuple[Block, ...]]:
    """Ordered partitions of ``{1..m}`` with the given block sizes."""
    if m > MAX_PARTITION_DIM:
        raise ResourceCapError(
            f"ordered partitions of a {m}-cube exceed the cap {MAX_PARTITION_DIM}"
        )

    def rec(rest: tuple[int, ...], sizes):
        if not sizes:
            yield ()
            return
        for blk in itertools.combinations(rest, sizes[0]):
            left = tuple(a for a in rest if a not in blk)
            for tail in rec(left, sizes[1:]):
                yield (blk,) + tail

    yield from rec(tuple(range(1, m + 1)), sizes)


# -- enumeration ----------------------------------------------------------------


def _out_cubes(K: PrecubicalSet) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {v: [] for v in K.vertices}
    for k in range(1, K.dim + 1):
        for c in K.cells(k):
            out[K.initial_vertex(c)].append(c)
    return out


def is_acyclic(K: PrecubicalSet) -> bool:
    """Whether no sequence of cubes returns to its starting vertex."""
    out = _out_cubes(K)
    state = {}

    def visit(v):
        state[v] = 1
        for c in out[v]:
            w = K.final_vertex(c)
            s = state.get(w)
            if s == 1 or (s is None and not visit(w)):
                return False
        state[v] = 2
        return True

    return all(state.get(v) == 2 or visit(v) for v in K.vertices)


def longest_grade(K: PrecubicalSet) -> int:
    """Largest total dimension of a cube chain in an acyclic complex."""
    out = _out_cubes(K)
    memo: dict[str, int] = {}

    def best(v):
        if v not in memo:
            memo[v] = max((K.dim_of(c) + best(K.final_vertex(c)) for c in out[v]), default=0)
        return memo[v]

    return max((best(v) for v in K.vertices), default=0)


def grade_bound(K: PrecubicalSet, n_max: int | None) -> int:
    if is_acyclic(K):
        return longest_grade(K)
    if n_max is None:
        raise ValueError("complex has directed cycles: a maximal grade is required")
    return n_max


def enumerate_chains(
    K: PrecubicalSet, source: str, target: str, n_max: int | None = None
) -> dict[int, list[CubeChain]]:
    """All cube chains from ``source`` to ``target`` by grade.

    For complexes without directed cycles every grade is enumerated and
    ``n_max`` is ignored.
    """
    for v in (source, target):
        if K.dims.get(v) != 0:
            raise PcsError(f"{v!r} is not a vertex")
    bound = grade_bound(K, n_max)
    out = _out_cubes(K)
    found: dict[int, list[CubeChain]] = {g: [] for g in range(1, bound + 1)}

    def extend(v, cells, dims, total):
        if cells and v == target:
            found[total].append(CubeChain(tuple(cells), tuple(dims), source, target))
        for c in out[v]:
            k = K.dims[c]
            if total + k <= bound:
                cells.append(c)
                dims.append(k)
                extend(K.final_vertex(c), cells, dims, total + k)
                cells.pop()
                dims.pop()

    extend(source, [], [], 0)
    for g in found:
        found[g].sort(key=CubeChain.sort_key)
    return found


# -- morphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    source: CubeChain
    target: CubeChain
    witness: Witness

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and all(len(p) == 1 for p in self.witness)


def identity(a: CubeChain) -> Morphism:
    return Morphism(a, a, tuple((tuple(range(1, k + 1)),) for k in a.dims))


def format_witness(w: Witness) -> str:
    return ";".join(
        "".join("(" + ",".join(map(str, blk)) + ")" for blk in part) for part in w
    )


def _segment_refinements(K, coarse: str, fine_cells, fine_dims):
    m = K.dims[coarse]
    for part in ordered_partitions(m, tuple(fine_dims)):
        if all(
            K.face_at(coarse, block_word(m, part, r)) == fine_cells[r]
            for r in range(len(part))
        ):
            yield part


def _groupings(dims: tuple[int, ...], sizes: tuple[int, ...]):
    """Ways to cut ``dims`` into consecutive runs whose sums are ``sizes``."""
    cuts = []
    pos = 0
    for s in sizes:
        acc = 0
        start = pos
        while pos < len(dims) and acc < s:
            acc += dims[pos]
            pos += 1
        if acc != s:
            return None
        cuts.append((start, pos))
    return cuts if pos == len(dims) else None


def hom(K: PrecubicalSet, a: CubeChain, b: CubeChain) -> list[Morphism]:
    """Every refinement morphism from ``a`` (fine) to ``b`` (coarse)."""
    if a.grade != b.grade or (a.source, a.target) != (b.source, b.target):
        return []
    cuts = _groupings(a.dims, b.dims)
    if cuts is None:
        return []
    per_cube = []
    for (lo, hi), coarse in zip(cuts, b.cells):
        fine_cells = a.cells[lo:hi]
        if K.initial_vertex(fine_cells[0]) != K.initial_vertex(coarse):
            return []
        if K.final_vertex(fine_cells[-1]) != K.final_vertex(coarse):
            return []
        opts = list(_segment_refinements(K, coarse, fine_cells, a.dims[lo:hi]))
        if not opts:
            return []
        per_cube.append(opts)
    return [Morphism(a, b, tuple(w)) for w in itertools.product(*per_cube)]


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``g`` after ``f`` for ``f: a -> b`` and ``g: b -> c``."""
    if f.target != g.source:
        raise ValueError("morphisms are not composable")
    parts = []
    pos = 0
    for part in g.witness:
        merged = []
        for blk in part:
            inner = f.witness[pos]
            pos += 1
            axes = sorted(blk)
            for sub in inner:
                merged.append(tuple(sorted(axes[i - 1] for i in sub)))
        parts.append(tuple(merged))
    return Morphism(f.source, g.target, tuple(parts))


# -- the category ----------------------------------------------------------------


@dataclass
class ChainCategory:
    grade: int
    objects: list[CubeChain]
    morphisms: list[tuple[int, int, Witness]]
    composition: dict[tuple[int, int], int | None] = field(default_factory=dict)
    endomorphisms: list[int] = field(default_factory=list)

    def __post_init__(self):
        self._index = {o: i for i, o in enumerate(self.objects)}

    def index(self, obj: CubeChain) -> int:
        return self._index[obj]

    def out_morphisms(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.objects))}
        for m, (s, _, _) in enumerate(self.morphisms):
            out[s].append(m)
        return out

    def morphism(self, m: int) -> Morphism:
        s, t, w = self.morphisms[m]
        return Morphism(self.objects[s], self.objects[t], w)

    def is_thin(self) -> bool:
        pairs = [(s, t) for s, t, _ in self.morphisms]
        return not self.endomorphisms and len(pairs) == len(set(pairs))


def build_category(
    K: PrecubicalSet, source: str, target: str, grade: int, objects=None
) -> ChainCategory:
    """The category of cube chains of one grade, with all non-identity morphisms."""
    if objects is None:
        objects = enumerate_chains(K, source, target, grade).get(grade, [])
    morphisms: list[tuple[int, int, Witness]] = []
    endos = []
    by_len: dict[int, list[int]] = {}
    for i, o in enumerate(objects):
        by_len.setdefault(len(o), []).append(i)
    for i, a in enumerate(objects):
        for p, js in by_len.items():
            if p > len(a):
                continue
            for j in js:
                for f in hom(K, a, objects[j]):
                    if f.is_identity:
                        continue
                    if i == j:
                        endos.append(len(morphisms))
                    morphisms.append((i, j, f.witness))
    index = {(s, t, w): m for m, (s, t, w) in enumerate(morphisms)}
    cat = ChainCategory(grade, list(objects), morphisms, {}, endos)
    out = cat.out_morphisms()
    for m1, (s, t, _) in enumerate(morphisms):
        for m2 in out[t]:
            h = compose(cat.morphism(m1), cat.morphism(m2))
            key = (s, morphisms[m2][1], h.witness)
            if h.is_identity:
                cat.composition[(m1, m2)] = None
            elif key in index:
                cat.composition[(m1, m2)] = index[key]
            else:
                raise AssertionError("composite of refinements is missing from the category")
    return cat


def check_associative(cat: ChainCategory) -> bool:
    out = cat.out_morphisms()
    comp = cat.composition
    for f, (_, t, _) in enumerate(cat.morphisms):
        for g in out[t]:
            fg = comp[(f, g)]
            if fg is None:
                continue
            for h in out[cat.morphisms[g][1]]:
                gh = comp[(g, h)]
                if gh is None:
                    continue
                if comp.get((fg, h)) != comp.get((f, gh)):
                    return False
    return True


def has_terminal(cat: ChainCategory) -> CubeChain | None:
    n = len(cat.objects)
    for t in range(n):
        counts = [0] * n
        counts[t] = 1
        for s, dst, _ in cat.morphisms:
            if dst == t:
                counts[s] += 1
        if t in {cat.morphisms[m][0] for m in cat.endomorphisms}:
            continue
        if all(c == 1 for c in counts):
            return cat.objects[t]
    return None


def concat(a: CubeChain, b: CubeChain) -> CubeChain:
    if a.target != b.source:
        raise ValueError(f"cannot concatenate: {a.target!r} is not {b.source!r}")
    return CubeChain(a.cells + b.cells, a.dims + b.dims, a.source, b.target)


def concat_morphisms(f: Morphism, g: Morphism) -> Morphism:
    return Morphism(
        concat(f.source, g.source), concat(f.target, g.target), f.witness + g.witness
    )


def dumps(categories: dict[int, ChainCategory]) -> str:
    lines = ["chains v1"]
    for g in sorted(categories):
        cat = categories[g]
        if not cat.objects:
            continue
        lines.append(f"grade {g}")
        for i, o in enumerate(cat.objects):
            lines.append(f"object {i} : {o}")
        for s, t, w in sorted(cat.morphisms):
            lines.append(f"mor {s} -> {t} : {format_witness(w)}")
    return "\n".join(lines) + "\n"
