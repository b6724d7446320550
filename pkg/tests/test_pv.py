import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubepaths.chains import ResourceCapError
from cubepaths.flow import path_space_model
from cubepaths.pcs import validate
from cubepaths.pv import (
    MAX_PROCESSES,
    PvError,
    compile_pv,
    deadlocks,
    final_state,
    initial_state,
    parse_pv,
    reachable,
)
from cubepaths.spatial import is_proper

from .conftest import SWISS_FLAG


def simulate(prog):
    """Explore interleavings with explicit semaphore counters.

    Returns (reachable states, deadlocked states) as position tuples.
    """
    procs = prog.processes
    start = (0,) * len(procs)
    end = tuple(len(p.actions) for p in procs)

    def counters(state):
        c = dict.fromkeys(prog.semaphores, 0)
        for p, pos in zip(procs, state):
            for op, s in p.actions[:pos]:
                c[s] += 1 if op == "P" else -1
        return c

    seen, todo, dead = {start}, [start], set()
    while todo:
        s = todo.pop()
        c = counters(s)
        moved = False
        for i, p in enumerate(procs):
            if s[i] == len(p.actions):
                continue
            op, sem = p.actions[s[i]]
            if op == "P" and c[sem] + 1 > prog.semaphores[sem]:
                continue
            moved = True
            t = s[:i] + (s[i] + 1,) + s[i + 1 :]
            if t not in seen:
                seen.add(t)
                todo.append(t)
        if not moved and s != end:
            dead.add(s)
    return seen, dead


def name(state):
    return "|".join(map(str, state))


def test_parse_swiss_flag():
    prog = parse_pv(SWISS_FLAG)
    assert prog.semaphores == {"a": 1, "b": 1}
    assert [p.name for p in prog.processes] == ["X", "Y"]
    assert prog.processes[0].actions == (("P", "a"), ("P", "b"), ("V", "b"), ("V", "a"))
    assert prog.processes[0].holds(2) == {"a": 1, "b": 1}
    assert prog.processes[0].holds(4) == {}


@pytest.mark.parametrize(
    "text",
    [
        "",
        "pv v2\n",
        "pv v1\nsem a x\n",
        "pv v1\nsem a 0\n",
        "pv v1\nsem a 1\nsem a 1\n",
        "pv v1\nsem a 1\nproc X: Pb\n",
        "pv v1\nsem a 1\nproc X: Va\n",
        "pv v1\nsem a 1\nproc X: Qa\n",
        "pv v1\nsem a 1\nproc X:\n",
        "pv v1\nwhat\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(PvError):
        parse_pv(text)


def test_empty_program():
    prog = parse_pv("pv v1\n# nothing\n")
    assert prog.processes == ()
    assert compile_pv(prog).counts() == ()


def test_swiss_flag_compiles():
    prog = parse_pv(SWISS_FLAG)
    K = compile_pv(prog)
    assert validate(K) == []
    assert K.counts() == (20, 24, 4)
    assert is_proper(K).proper
    start, end = initial_state(prog), final_state(prog)
    assert (start, end) == ("0|0", "4|4")
    assert deadlocks(K, start, end) == ["1|1"]
    assert path_space_model(K, start, end).pi0 == 2
    assert "2|2" not in K.dims  # both hold a and b


def test_infinite_capacity_is_full_grid():
    prog = parse_pv(SWISS_FLAG)
    K = compile_pv(prog, {"a": math.inf, "b": math.inf})
    assert K.counts() == (25, 40, 16)
    assert deadlocks(K, "0|0", "4|4") == []
    assert path_space_model(K, "0|0", "4|4").pi0 == 1


def test_three_process_counts():
    prog = parse_pv("pv v1\nsem a 2\nproc X: Pa Va\nproc Y: Pa Va\nproc Z: Pa Va\n")
    K = compile_pv(prog)
    # the full grid (27, 54, 36, 8) loses the centre vertex with its
    # 6 edges, 12 squares and all 8 cubes
    assert K.counts() == (26, 48, 24)
    assert "1|1|1" not in K.dims
    assert is_proper(K).proper


def test_caps():
    procs = "".join(f"proc P{i}: Pa Va\n" for i in range(MAX_PROCESSES + 1))
    with pytest.raises(ResourceCapError):
        compile_pv(parse_pv("pv v1\nsem a 1\n" + procs))
    with pytest.raises(ResourceCapError):
        compile_pv(parse_pv("pv v1\nsem a 1\nproc X:" + " Pa Va" * 7 + "\n"))


def test_reachable_matches_simulation():
    prog = parse_pv(SWISS_FLAG)
    K = compile_pv(prog)
    seen, dead = simulate(prog)
    assert reachable(K, "0|0") == {name(s) for s in seen}
    assert {name(s) for s in dead} == {"1|1"}


@st.composite
def programs(draw):
    sems = draw(st.dictionaries(st.sampled_from("abc"), st.integers(1, 2), min_size=1))
    procs = []
    for i in range(draw(st.integers(1, 3))):
        actions, held = [], {}
        for _ in range(draw(st.integers(1, 4))):
            s = draw(st.sampled_from(sorted(sems)))
            if held.get(s) and draw(st.booleans()):
                actions.append(f"V{s}")
                held[s] -= 1
            else:
                actions.append(f"P{s}")
                held[s] = held.get(s, 0) + 1
        for s, c in held.items():
            actions += [f"V{s}"] * c
        procs.append(f"proc X{i}: " + " ".join(actions))
    text = "pv v1\n" + "".join(f"sem {s} {c}\n" for s, c in sems.items()) + "\n".join(procs) + "\n"
    return parse_pv(text)


@settings(max_examples=60, deadline=None)
@given(programs())
def test_random_programs(prog):
    K = compile_pv(prog)
    assert validate(K) == []
    assert is_proper(K).proper
    seen, dead = simulate(prog)
    start, end = initial_state(prog), final_state(prog)
    assert reachable(K, start) == {name(s) for s in seen}
    assert deadlocks(K, start, end) == sorted(name(s) for s in dead)
