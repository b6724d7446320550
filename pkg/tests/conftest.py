import random
from fractions import Fraction

import pytest

from cubepaths import pcs
from cubepaths.dpath import PLDPath, Segment
from cubepaths.pv import compile_pv, parse_pv

SWISS_FLAG = """\
pv v1
sem a 1
sem b 1
proc X: Pa Pb Vb Va
proc Y: Pb Pa Va Vb
"""


def corpus():
    """Named complexes used across the suite."""
    return {
        "cube1": pcs.standard_cube(1),
        "cube2": pcs.standard_cube(2),
        "cube3": pcs.standard_cube(3),
        "boundary2": pcs.boundary_cube(2),
        "boundary3": pcs.boundary_cube(3),
        "chain21": pcs.chain_cube([2, 1]),
        "chain11": pcs.chain_cube([1, 1]),
        "amalgam3": pcs.amalgam(3, pcs.boundary_cube(3))[0],
        "amalgam2v": pcs.amalgam(2, ["00", "11"])[0],
        "loop": pcs.loop(),
        "swiss": compile_pv(parse_pv(SWISS_FLAG)),
        "tensor12": pcs.tensor(pcs.standard_cube(1), pcs.standard_cube(2)),
    }


@pytest.fixture(scope="session")
def complexes():
    return corpus()


def _monotone_points(rng, start, end):
    """Random rational breakpoints from ``start`` to ``end`` with strictly
    increasing coordinate sum."""
    k = len(start)
    pts = [tuple(Fraction(x) for x in start)]
    for _ in range(rng.randint(0, 3)):
        prev = pts[-1]
        cand = tuple(
            prev[i] + (Fraction(rng.randint(0, 4), 8) * (Fraction(end[i]) - prev[i]))
            for i in range(k)
        )
        if sum(cand) > sum(prev) and sum(cand) < sum(end):
            pts.append(cand)
    pts.append(tuple(Fraction(x) for x in end))
    return pts


def random_segment(rng, K, vertex, t0):
    """A random tame segment leaving ``vertex``, or None if stuck."""
    options = []
    for k in range(1, K.dim + 1):
        for c in K.cells(k):
            for bits in range(2**k):
                s = tuple((bits >> i) & 1 for i in range(k))
                if K.face_at(c, "".join(map(str, s))) == vertex:
                    options.append((c, s))
    if not options:
        return None
    c, s = rng.choice(options)
    k = len(s)
    ups = [i for i in range(k) if s[i] == 0]
    chosen = set(rng.sample(ups, rng.randint(1, len(ups)))) if ups else set()
    if not chosen:
        return None
    e = tuple(1 if i in chosen else s[i] for i in range(k))
    pts = _monotone_points(rng, s, e)
    t = t0
    timed = []
    for i, p in enumerate(pts):
        if i:
            t += Fraction(rng.randint(1, 9), rng.randint(1, 4))
        timed.append((t, p))
    return Segment(c, tuple(timed)), K.face_at(c, "".join(map(str, e)))


def random_path(rng, K, start=None, max_segments=3):
    """A random nonconstant tame d-path and its final vertex (or None)."""
    vertex = start if start is not None else rng.choice(K.vertices)
    segs = []
    t = Fraction(0)
    for _ in range(rng.randint(1, max_segments)):
        got = random_segment(rng, K, vertex, t)
        if got is None:
            break
        seg, vertex = got
        segs.append(seg)
        t = seg.end
    if not segs:
        return None, None
    return PLDPath(tuple(segs)), vertex


@pytest.fixture
def rng():
    return random.Random(20261018)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                lines.append(f"{'PASS' if rep.passed else 'FAIL'}  {name}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
