"""Piecewise-linear tame d-paths with exact rational coordinates.

A path is a sequence of segments.  Each segment lives in one cell of a
precubical set and is given by breakpoints ``(t, x)`` joined linearly, where
``t`` is global time and ``x`` the coordinates inside the cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .pcs import PcsError, PrecubicalSet


class DPathError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Point:
    cell: str
    coords: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_q(x) for x in self.coords))


def canonicalize(K: PrecubicalSet, p: Point) -> Point:
    """The unique presentation of ``p`` with all coordinates interior."""
    k = K.dim_of(p.cell)
    if len(p.coords) != k:
        raise DPathError(f"point in {p.cell!r} needs {k} coordinates")
    if any(not 0 <= x <= 1 for x in p.coords):
        raise DPathError("coordinates must lie in [0, 1]")
    word = "".join("0" if x == 0 else "1" if x == 1 else "*" for x in p.coords)
    return Point(K.face_at(p.cell, word), tuple(x for x in p.coords if 0 < x < 1))


@dataclass(frozen=True)
class Segment:
    cell: str
    points: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    def __post_init__(self):
        pts = tuple((_q(t), tuple(_q(x) for x in xs)) for t, xs in self.points)
        object.__setattr__(self, "points", pts)

    @property
    def start(self) -> Fraction:
        return self.points[0][0]

    @property
    def end(self) -> Fraction:
        return self.points[-1][0]


@dataclass(frozen=True)
class PLDPath:
    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def length(self) -> Fraction:
        return self.segments[-1].end - self.segments[0].start

    def source(self, K: PrecubicalSet) -> str:
        s = self.segments[0]
        return canonicalize(K, Point(s.cell, s.points[0][1])).cell

    def target(self, K: PrecubicalSet) -> str:
        s = self.segments[-1]
        return canonicalize(K, Point(s.cell, s.points[-1][1])).cell


def check_structure(K: PrecubicalSet, path: PLDPath) -> None:
    """Raise :class:`DPathError` unless ``path`` is well formed in ``K``."""
    if not path.segments:
        raise DPathError("path has no segments")
    if path.segments[0].start != 0:
        raise DPathError("path must start at time 0")
    for n, seg in enumerate(path.segments):
        try:
            k = K.dim_of(seg.cell)
        except PcsError as exc:
            raise DPathError(str(exc)) from None
        if len(seg.points) < 2:
            raise DPathError(f"segment {n} needs at least two breakpoints")
        for t, xs in seg.points:
            if len(xs) != k:
                raise DPathError(f"segment {n}: expected {k} coordinates")
            if any(not 0 <= x <= 1 for x in xs):
                raise DPathError(f"segment {n}: coordinates outside [0, 1]")
        times = [t for t, _ in seg.points]
        if any(a >= b for a, b in zip(times, times[1:])):
            raise DPathError(f"segment {n}: times must increase strictly")
        if n and seg.start != path.segments[n - 1].end:
            raise DPathError(f"segment {n} does not start when segment {n - 1} ends")


def _is_vertex_word(xs) -> bool:
    return all(x in (0, 1) for x in xs)


def is_tame_dpath(K: PrecubicalSet, path: PLDPath) -> bool:
    try:
        check_structure(K, path)
    except DPathError:
        return False
    for n, seg in enumerate(path.segments):
        pts = [xs for _, xs in seg.points]
        if not (_is_vertex_word(pts[0]) and _is_vertex_word(pts[-1])):
            return False
        if pts[0] == pts[-1]:
            return False
        for a, b in zip(pts, pts[1:]):
            if any(x > y for x, y in zip(a, b)):
                return False
        if n:
            prev = path.segments[n - 1]
            if canonicalize(K, Point(prev.cell, prev.points[-1][1])) != canonicalize(
                K, Point(seg.cell, pts[0])
            ):
                return False
    return True


def _free_axes(seg: Segment) -> list[int]:
    first, last = seg.points[0][1], seg.points[-1][1]
    return [i for i in range(len(first)) if first[i] != last[i]]


def segment_carrier(K: PrecubicalSet, seg: Segment) -> tuple[str, int]:
    """Smallest cell containing every breakpoint of a tame segment."""
    first, last = seg.points[0][1], seg.points[-1][1]
    word = "".join(
        "*" if a != b else ("0" if a == 0 else "1") for a, b in zip(first, last)
    )
    return K.face_at(seg.cell, word), word.count("*")


def is_natural(K: PrecubicalSet, path: PLDPath) -> bool:
    """Whether elapsed time equals L1 length on every (minimal) segment."""
    for seg in path.segments:
        axes = _free_axes(seg)
        t0 = seg.start
        for t, xs in seg.points:
            if sum(xs[i] for i in axes) != t - t0:
                return False
        if seg.end - t0 != len(axes):
            return False
    return True


def naturalize(K: PrecubicalSet, path: PLDPath) -> PLDPath:
    """Reparametrize by L1 arc length; image and cells are unchanged."""
    if not is_tame_dpath(K, path):
        raise DPathError("naturalize needs a tame d-path")
    out = []
    clock = Fraction(0)
    for n, seg in enumerate(path.segments):
        pts = []
        prev = None
        for _, xs in seg.points:
            if prev is not None:
                step = sum(b - a for a, b in zip(prev, xs))
                if step == 0:
                    raise DPathError(f"segment {n} stalls (constant sub-path)")
                clock += step
            pts.append((clock, xs))
            prev = xs
        out.append(Segment(seg.cell, tuple(pts)))
    return PLDPath(tuple(out))


def moore_compose(K: PrecubicalSet, first: PLDPath, second: PLDPath) -> PLDPath:
    if first.target(K) != second.source(K):
        raise DPathError(
            f"cannot compose: {first.target(K)!r} is not {second.source(K)!r}"
        )
    shift = first.segments[-1].end - second.segments[0].start
    moved = tuple(
        Segment(s.cell, tuple((t + shift, xs) for t, xs in s.points))
        for s in second.segments
    )
    return PLDPath(first.segments + moved)


def carrier_of(K: PrecubicalSet, path: PLDPath) -> list[tuple[str, int]]:
    return [segment_carrier(K, seg) for seg in path.segments]


def _ambient(word: str, xs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    it = iter(xs)
    return tuple(next(it) if ch == "*" else Fraction(int(ch)) for ch in word)


def evaluate(path: PLDPath, t) -> tuple[str, tuple[Fraction, ...]]:
    """The point at time ``t`` as ``(cell, coords)`` (not canonicalized)."""
    t = _q(t)
    for seg in path.segments:
        if seg.start <= t <= seg.end:
            for (t0, a), (t1, b) in zip(seg.points, seg.points[1:]):
                if t0 <= t <= t1:
                    u = (t - t0) / (t1 - t0)
                    return seg.cell, tuple(x + u * (y - x) for x, y in zip(a, b))
    raise DPathError(f"time {t} outside the domain of the path")


def hits_intermediate_vertex(path: PLDPath, n: int) -> bool:
    """Whether a natural path in ``[]^n`` meets a vertex other than ``0_n, 1_n``.

    Segment cells must be cell words of ``[]^n``.  A natural path can only sit
    at a vertex at an integer time, so only those times are inspected.
    """
    t = 1
    while t < path.length and t < n:
        cell, xs = evaluate(path, t)
        if len(cell) != n:
            raise DPathError(f"segment cell {cell!r} is not a word of length {n}")
        if all(x in (0, 1) for x in _ambient(cell, xs)):
            return True
        t += 1
    return False


# -- dpath v1 text format -------------------------------------------------------


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(path: PLDPath) -> str:
    lines = ["dpath v1"]
    for seg in path.segments:
        lines.append(f"segment {seg.cell}")
        for t, xs in seg.points:
            lines.append(" ".join(["pt", _fmt(t), *map(_fmt, xs)]))
    return "\n".join(lines) + "\n"


def loads(text: str) -> PLDPath:
    segments: list[tuple[str, list]] = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not header:
            if parts != ["dpath", "v1"]:
                raise DPathError(f"line {lineno}: expected header 'dpath v1'")
            header = True
        elif parts[0] == "segment" and len(parts) == 2:
            segments.append((parts[1], []))
        elif parts[0] == "pt" and len(parts) >= 2 and segments:
            try:
                vals = [Fraction(p) for p in parts[1:]]
            except (ValueError, ZeroDivisionError):
                raise DPathError(f"line {lineno}: bad rational") from None
            segments[-1][1].append((vals[0], tuple(vals[1:])))
        else:
            raise DPathError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if not header:
        raise DPathError("expected header 'dpath v1'")
    return PLDPath(tuple(Segment(c, tuple(p)) for c, p in segments))
