"""Finite precubical sets.

A precubical set is stored as two flat tables: the dimension of every cell and
the face map ``(cell, i, eps) -> cell``.  Cell identifiers are strings and must
be unique across the whole complex.  Indices ``i`` are 1-based as usual.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping


class PcsError(ValueError):
    """Raised when an operation receives an ill-formed complex or cell."""


class PcsFormatError(PcsError):
    """Raised by the ``pcs v1`` reader."""


@dataclass(frozen=True)
class PrecubicalSet:
    dims: Mapping[str, int]
    faces: Mapping[tuple[str, int, int], str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", dict(self.dims))
        object.__setattr__(self, "faces", dict(self.faces))
        by_dim: dict[int, list[str]] = {}
        for c, k in self.dims.items():
            by_dim.setdefault(k, []).append(c)
        object.__setattr__(
            self, "_by_dim", {k: tuple(sorted(v)) for k, v in by_dim.items()}
        )

    def __hash__(self):
        return hash((frozenset(self.dims.items()), frozenset(self.faces.items())))

    def __eq__(self, other):
        if not isinstance(other, PrecubicalSet):
            return NotImplemented
        return self.dims == other.dims and self.faces == other.faces

    def __contains__(self, cell) -> bool:
        return cell in self.dims

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        """Largest cell dimension, or -1 for the empty complex."""
        return max(self._by_dim, default=-1)

    def cells(self, k: int | None = None) -> tuple[str, ...]:
        """Cells of dimension ``k`` (or all cells) in canonical order."""
        if k is not None:
            return self._by_dim.get(k, ())
        return tuple(c for d in sorted(self._by_dim) for c in self._by_dim[d])

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.cells(0)

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.cells(k)) for k in range(self.dim + 1))

    def dim_of(self, cell: str) -> int:
        try:
            return self.dims[cell]
        except KeyError:
            raise PcsError(f"unknown cell {cell!r}") from None

    def face(self, cell: str, i: int, eps: int) -> str:
        k = self.dim_of(cell)
        if not 1 <= i <= k or eps not in (0, 1):
            raise PcsError(f"face index ({i}, {eps}) out of range for {cell!r} of dim {k}")
        try:
            return self.faces[(cell, i, eps)]
        except KeyError:
            raise PcsError(f"missing face ({cell!r}, {i}, {eps})") from None

    def iterated_face(self, cell: str, indices: Iterable[int], eps: int) -> str:
        """Apply ``face(., a, eps)`` for every ``a`` in ``indices``.

        The indices refer to coordinates of ``cell`` itself; they are applied
        in decreasing order so that earlier removals do not shift them.
        """
        idx = sorted(set(indices), reverse=True)
        k = self.dim_of(cell)
        if idx and (idx[-1] < 1 or idx[0] > k):
            raise PcsError(f"index set {sorted(idx)} out of range for {cell!r} of dim {k}")
        for a in idx:
            cell = self.face(cell, a, eps)
        return cell

    def face_at(self, cell: str, word: str) -> str:
        """Evaluate a cell word of ``[]^dim(cell)`` on ``cell``.

        ``word`` is over ``{0,1,*}``; every non-``*`` position is a face taken
        in that coordinate.
        """
        if len(word) != self.dim_of(cell):
            raise PcsError(f"word {word!r} has wrong length for {cell!r}")
        for pos in range(len(word) - 1, -1, -1):
            ch = word[pos]
            if ch != "*":
                cell = self.face(cell, pos + 1, int(ch))
        return cell

    def initial_vertex(self, cell: str) -> str:
        return self.face_at(cell, "0" * self.dim_of(cell))

    def final_vertex(self, cell: str) -> str:
        return self.face_at(cell, "1" * self.dim_of(cell))

    def extremes(self, cell: str) -> tuple[str, str]:
        return self.initial_vertex(cell), self.final_vertex(cell)


# -- cell words ---------------------------------------------------------------


def word_face(word: str, i: int, eps: int) -> str:
    """Replace the ``i``-th ``*`` of ``word`` by ``eps``."""
    seen = 0
    for pos, ch in enumerate(word):
        if ch == "*":
            seen += 1
            if seen == i:
                return word[:pos] + str(eps) + word[pos + 1 :]
    raise PcsError(f"word {word!r} has no free coordinate {i}")


def word_dim(word: str) -> int:
    return word.count("*")


def compose_words(outer: str, inner: str) -> str:
    """Substitute ``inner`` into the free coordinates of ``outer``.

    If ``outer`` names a cell ``c`` of ``[]^n`` and ``inner`` a cell of
    ``[]^dim(c)``, the result names the corresponding cell of ``[]^n``.
    """
    it = iter(inner)
    out = "".join(next(it) if ch == "*" else ch for ch in outer)
    return out


def _words(n: int, max_free: int) -> list[str]:
    return [
        "".join(w)
        for w in itertools.product("01*", repeat=n)
        if w.count("*") <= max_free
    ]


def _from_words(words: Iterable[str], rename=None) -> PrecubicalSet:
    rename = rename or (lambda w: w)
    dims, faces = {}, {}
    for w in words:
        k = word_dim(w)
        dims[rename(w)] = k
        for i in range(1, k + 1):
            for eps in (0, 1):
                faces[(rename(w), i, eps)] = rename(word_face(w, i, eps))
    return PrecubicalSet(dims, faces)


# -- constructions ------------------------------------------------------------


def standard_cube(n: int) -> PrecubicalSet:
    if n < 0:
        raise PcsError("n must be nonnegative")
    return _from_words(_words(n, n))


def boundary_cube(n: int) -> PrecubicalSet:
    if n < 0:
        raise PcsError("n must be nonnegative")
    if n == 0:
        return PrecubicalSet({})
    return _from_words(_words(n, n - 1))


def cube_counts(n: int) -> tuple[int, ...]:
    return tuple(comb(n, k) * 2 ** (n - k) for k in range(n + 1))


def loop() -> PrecubicalSet:
    """One vertex ``v`` and one edge ``e`` from ``v`` to ``v``."""
    return PrecubicalSet({"v": 0, "e": 1}, {("e", 1, 0): "v", ("e", 1, 1): "v"})


def closure(K: PrecubicalSet, cells: Iterable[str]) -> set[str]:
    out: set[str] = set()
    stack = list(cells)
    while stack:
        c = stack.pop()
        if c in out:
            continue
        K.dim_of(c)
        out.add(c)
        for i in range(1, K.dims[c] + 1):
            for eps in (0, 1):
                f = K.faces.get((c, i, eps))
                if f is not None and f not in out:
                    stack.append(f)
    return out


def restrict(K: PrecubicalSet, cells: Iterable[str]) -> PrecubicalSet:
    """Subcomplex on ``cells``; the set is closed under faces first.

    A warning is emitted when the given set was not already closed.
    """
    cells = set(cells)
    closed = closure(K, cells)
    if closed != cells:
        warnings.warn(
            f"subcomplex not closed under faces; added {len(closed - cells)} cells",
            stacklevel=2,
        )
    dims = {c: K.dims[c] for c in closed}
    faces = {key: v for key, v in K.faces.items() if key[0] in closed}
    return PrecubicalSet(dims, faces)


def skeleton(K: PrecubicalSet, n: int) -> PrecubicalSet:
    if n < 0:
        raise PcsError("n must be nonnegative")
    return restrict(K, [c for c, k in K.dims.items() if k <= n])


def chain_cube(sizes: Iterable[int]) -> PrecubicalSet:
    """Cubes ``[]^{n_1}, ..., []^{n_p}`` glued final vertex to initial vertex.

    Cells are named ``"<block>:<word>"``; a glued vertex keeps the name it has
    in the earlier block.
    """
    sizes = list(sizes)
    if any(s < 1 for s in sizes):
        raise PcsError("chain_cube sizes must be positive")
    dims, faces = {}, {}
    for b, n in enumerate(sizes):

        def name(w, b=b, n=n):
            if b > 0 and w == "0" * n:
                return f"{b - 1}:" + "1" * sizes[b - 1]
            return f"{b}:{w}"

        part = _from_words(_words(n, n), name)
        dims.update(part.dims)
        faces.update(part.faces)
    return PrecubicalSet(dims, faces)


@dataclass(frozen=True)
class PcsMap:
    source: PrecubicalSet
    target: PrecubicalSet
    mapping: Mapping[str, str]

    def __call__(self, cell: str) -> str:
        return self.mapping[cell]

    def check(self) -> list[str]:
        """Problems with this map; empty iff it is a map of precubical sets."""
        errs = []
        for c, k in self.source.dims.items():
            if c not in self.mapping:
                errs.append(f"{c} has no image")
                continue
            img = self.mapping[c]
            if self.target.dims.get(img) != k:
                errs.append(f"{c} -> {img} does not preserve dimension")
                continue
            for i in range(1, k + 1):
                for eps in (0, 1):
                    a = self.mapping.get(self.source.faces.get((c, i, eps)))
                    b = self.target.faces.get((img, i, eps))
                    if a != b:
                        errs.append(f"face ({c}, {i}, {eps}) not preserved")
        return errs


def amalgam(n: int, A: Iterable[str] | PrecubicalSet):
    """Two copies of ``[]^n`` glued along a subcomplex ``A`` of its boundary.

    ``A`` is a set of cell words (or a complex whose ids are cell words).
    Cells of ``A`` keep their word as identifier; the others are prefixed
    ``L:`` or ``R:``.  Returns ``(K, left_inclusion, right_inclusion)``.
    """
    if n < 1:
        raise PcsError("amalgam needs n >= 1")
    words = set(A.dims) if isinstance(A, PrecubicalSet) else set(A)
    bad = [w for w in words if len(w) != n or set(w) - set("01*") or word_dim(w) == n]
    if bad:
        raise PcsError(f"not cells of the boundary of []^{n}: {sorted(bad)}")
    cube = standard_cube(n)
    shared = closure(cube, words)
    if shared != words:
        warnings.warn(
            f"glueing set not closed under faces; added {len(shared - words)} cells",
            stacklevel=2,
        )
    left = _from_words(cube.dims, lambda w: w if w in shared else "L:" + w)
    right = _from_words(cube.dims, lambda w: w if w in shared else "R:" + w)
    K = PrecubicalSet({**left.dims, **right.dims}, {**left.faces, **right.faces})
    il = PcsMap(cube, K, {w: (w if w in shared else "L:" + w) for w in cube.dims})
    ir = PcsMap(cube, K, {w: (w if w in shared else "R:" + w) for w in cube.dims})
    return K, il, ir


def cube_map(K: PrecubicalSet, cell: str) -> PcsMap:
    """The map ``[]^n -> K`` sending the top cell to ``cell``."""
    n = K.dim_of(cell)
    cube = standard_cube(n)
    return PcsMap(cube, K, {w: K.face_at(cell, w) for w in cube.dims})


def cube_maps_into(K: PrecubicalSet, n: int) -> list[PcsMap]:
    return [cube_map(K, c) for c in K.cells(n)]


def tensor(K: PrecubicalSet, L: PrecubicalSet) -> PrecubicalSet:
    """Tensor product; the cell ``(c, d)`` is named ``"c|d"``."""
    dims, faces = {}, {}
    for c, p in K.dims.items():
        for d, q in L.dims.items():
            name = f"{c}|{d}"
            if name in dims:
                raise PcsError(f"tensor cell name collision: {name!r}")
            dims[name] = p + q
            for eps in (0, 1):
                for i in range(1, p + 1):
                    faces[(name, i, eps)] = f"{K.faces[(c, i, eps)]}|{d}"
                for j in range(1, q + 1):
                    faces[(name, p + j, eps)] = f"{c}|{L.faces[(d, j, eps)]}"
    return PrecubicalSet(dims, faces)


# -- validation ----------------------------------------------------------------


def validate(K: PrecubicalSet) -> list[str]:
    """Every violated axiom of ``K``, in canonical order; empty iff valid."""
    report = []
    for c in K.cells():
        k = K.dims[c]
        if k < 0:
            report.append(f"cell {c}: negative dimension {k}")
            continue
        for i in range(1, k + 1):
            for eps in (0, 1):
                f = K.faces.get((c, i, eps))
                if f is None:
                    report.append(f"missing face {c} {i} {eps}")
                elif f not in K.dims:
                    report.append(f"dangling face {c} {i} {eps} -> {f}")
                elif K.dims[f] != k - 1:
                    report.append(f"face {c} {i} {eps} -> {f} has dim {K.dims[f]}, expected {k - 1}")
    for (c, i, eps), f in sorted(K.faces.items()):
        k = K.dims.get(c)
        if k is None:
            report.append(f"face entry for unknown cell {c}")
        elif not 1 <= i <= k or eps not in (0, 1):
            report.append(f"face entry {c} {i} {eps} out of range")
    if report:
        return report
    for c in K.cells():
        k = K.dims[c]
        for j in range(2, k + 1):
            for i in range(1, j):
                for eps, eta in itertools.product((0, 1), repeat=2):
                    lhs = K.faces[(K.faces[(c, j, eta)], i, eps)]
                    rhs = K.faces[(K.faces[(c, i, eps)], j - 1, eta)]
                    if lhs != rhs:
                        report.append(
                            f"cubical relation fails on {c}: "
                            f"d({i},{eps})d({j},{eta}) = {lhs} but d({j - 1},{eta})d({i},{eps}) = {rhs}"
                        )
    return report


# -- pcs v1 text format --------------------------------------------------------


def dumps(K: PrecubicalSet) -> str:
    lines = ["pcs v1"]
    for c in K.cells():
        lines.append(f"cell {c} dim {K.dims[c]}")
    for c in K.cells():
        for i in range(1, K.dims[c] + 1):
            for eps in (0, 1):
                f = K.faces.get((c, i, eps))
                if f is not None:
                    lines.append(f"face {c} {i} {eps} {f}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> PrecubicalSet:
    """Parse ``pcs v1``.  Structural problems are left for :func:`validate`."""
    dims: dict[str, int] = {}
    faces: dict[tuple[str, int, int], str] = {}
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not header:
            if parts != ["pcs", "v1"]:
                raise PcsFormatError(f"line {lineno}: expected header 'pcs v1'")
            header = True
            continue
        try:
            if parts[0] == "cell" and len(parts) == 4 and parts[2] == "dim":
                if parts[1] in dims:
                    raise PcsFormatError(f"line {lineno}: duplicate cell {parts[1]!r}")
                dims[parts[1]] = int(parts[3])
            elif parts[0] == "face" and len(parts) == 5:
                key = (parts[1], int(parts[2]), int(parts[3]))
                if key in faces:
                    raise PcsFormatError(f"line {lineno}: duplicate face entry")
                faces[key] = parts[4]
            else:
                raise PcsFormatError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, PcsFormatError):
                raise
            raise PcsFormatError(f"line {lineno}: bad integer in {raw.strip()!r}") from None
    if not header:
        raise PcsFormatError("empty input: expected header 'pcs v1'")
    return PrecubicalSet(dims, faces)
