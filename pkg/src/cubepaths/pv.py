"""PV programs: processes doing P (acquire) and V (release) on semaphores.

A process with ``k`` actions is the chain of ``k`` edges ``0 -> 1 -> ... -> k``;
position ``i`` is the state after the first ``i`` actions.  The program's state
space is the tensor product of those chains with the forbidden cells removed.
A cell is forbidden when, for some semaphore, the number of processes that can
hold it somewhere on the closed cell exceeds its capacity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .chains import ResourceCapError
from .pcs import PrecubicalSet

MAX_PROCESSES = 4
MAX_ACTIONS = 12

_ACTION = re.compile(r"([PV])(\w+)$")


class PvError(ValueError):
    pass


@dataclass(frozen=True)
class Process:
    name: str
    actions: tuple[tuple[str, str], ...]

    def holds(self, position: int) -> dict[str, int]:
        count: dict[str, int] = {}
        for op, sem in self.actions[:position]:
            count[sem] = count.get(sem, 0) + (1 if op == "P" else -1)
        return {s: c for s, c in count.items() if c}


@dataclass(frozen=True)
class PvProgram:
    semaphores: dict[str, int] = field(default_factory=dict)
    processes: tuple[Process, ...] = ()


def parse_pv(text: str) -> PvProgram:
    sems: dict[str, int] = {}
    procs: list[Process] = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header:
            if line.split() != ["pv", "v1"]:
                raise PvError(f"line {lineno}: expected header 'pv v1'")
            header = True
            continue
        parts = line.split()
        if parts[0] == "sem" and len(parts) == 3:
            try:
                cap = int(parts[2])
            except ValueError:
                raise PvError(f"line {lineno}: capacity must be an integer") from None
            if cap < 1:
                raise PvError(f"line {lineno}: capacity must be positive")
            if parts[1] in sems:
                raise PvError(f"line {lineno}: semaphore {parts[1]!r} declared twice")
            sems[parts[1]] = cap
        elif parts[0] == "proc" and len(parts) >= 2 and parts[1].endswith(":"):
            name = parts[1][:-1]
            actions = []
            held: dict[str, int] = {}
            for tok in parts[2:]:
                m = _ACTION.match(tok)
                if not m:
                    raise PvError(f"line {lineno}: bad action {tok!r}")
                op, sem = m.groups()
                if sem not in sems:
                    raise PvError(f"line {lineno}: unknown semaphore {sem!r}")
                if op == "V" and not held.get(sem):
                    raise PvError(f"line {lineno}: V{sem} without a matching P{sem}")
                held[sem] = held.get(sem, 0) + (1 if op == "P" else -1)
                actions.append((op, sem))
            if not actions:
                raise PvError(f"line {lineno}: process {name!r} has no actions")
            procs.append(Process(name, tuple(actions)))
        else:
            raise PvError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if not header:
        raise PvError("expected header 'pv v1'")
    return PvProgram(sems, tuple(procs))


def _coord_name(pos: int, edge: bool) -> str:
    return f"{pos}+" if edge else str(pos)


def compile_pv(prog: PvProgram, capacities: dict[str, float] | None = None) -> PrecubicalSet:
    """State space of ``prog``; cells are named ``"x|y|..."`` with ``i`` for
    position ``i`` and ``i+`` for the action from ``i`` to ``i+1``.

    ``capacities`` overrides the declared capacities (use ``math.inf`` to drop
    a constraint).
    """
    procs = prog.processes
    if len(procs) > MAX_PROCESSES:
        raise ResourceCapError(f"at most {MAX_PROCESSES} processes are supported")
    if any(len(p.actions) > MAX_ACTIONS for p in procs):
        raise ResourceCapError(f"at most {MAX_ACTIONS} actions per process are supported")
    caps = dict(prog.semaphores, **(capacities or {}))
    if not procs:
        return PrecubicalSet({})
    holds = [[p.holds(i) for i in range(len(p.actions) + 1)] for p in procs]

    def allowed(vertex) -> bool:
        total: dict[str, int] = {}
        for h, pos in zip(holds, vertex):
            for s, c in h[pos].items():
                total[s] = total.get(s, 0) + c
        return all(c <= caps[s] for s, c in total.items())

    ranges = [range(len(p.actions) + 1) for p in procs]
    ok = {v for v in itertools.product(*ranges) if allowed(v)}

    dims, faces = {}, {}
    # a cell is (position, is_edge) per process; kept iff all its vertices are
    for cell in itertools.product(
        *[[(i, e) for i in r for e in (False, True) if not (e and i == r[-1])] for r in ranges]
    ):
        free = [k for k, (_, e) in enumerate(cell) if e]
        corners = itertools.product(*[(i, i + 1) if e else (i,) for i, e in cell])
        if not all(v in ok for v in corners):
            continue
        name = "|".join(_coord_name(i, e) for i, e in cell)
        dims[name] = len(free)
        for j, k in enumerate(free, 1):
            for eps in (0, 1):
                sub = list(cell)
                sub[k] = (cell[k][0] + eps, False)
                faces[(name, j, eps)] = "|".join(_coord_name(i, e) for i, e in sub)
    return PrecubicalSet(dims, faces)


def initial_state(prog: PvProgram) -> str:
    return "|".join("0" for _ in prog.processes)


def final_state(prog: PvProgram) -> str:
    return "|".join(str(len(p.actions)) for p in prog.processes)


def reachable(K: PrecubicalSet, start: str) -> set[str]:
    out: dict[str, list[str]] = {}
    for e in K.cells(1):
        out.setdefault(K.face(e, 1, 0), []).append(K.face(e, 1, 1))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in out.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def deadlocks(K: PrecubicalSet, start: str, final: str) -> list[str]:
    """Reachable states other than ``final`` with no outgoing action."""
    has_out = {K.face(e, 1, 0) for e in K.cells(1)}
    return sorted(v for v in reachable(K, start) if v != final and v not in has_out)
