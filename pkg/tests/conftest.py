import random
from functools import lru_cache

import pytest

from gamemonoid.core import InputWord, reachable_states, run
from gamemonoid.games import pacman as pm
from gamemonoid.games import tictactoe as ttt
from gamemonoid.games.maze import MazeSpec
from gamemonoid.profiler import simulate
from gamemonoid.registry import agent


def blank_rows():
    return ["#" * 20 for _ in range(20)]


def corridor_maze(row1: str, ghost_row: str = "#1#2#3#4") -> MazeSpec:
    """Walls everywhere except row 1 (Pac-Man's corridor) and isolated ghost pens on row 3.

    ``row1`` is padded with walls to 20 columns.
    """
    rows = blank_rows()
    rows[1] = (row1 + "#" * 20)[:19] + "#"
    rows[3] = (ghost_row + "#" * 20)[:20]
    return MazeSpec.parse("\n".join(rows) + "\n", name="corridor")


def scripted(moves):
    """Ghost driver: ``moves(new_pac, ghosts, powered) -> ghosts``; rng untouched."""

    def drive(grid, new_pac, ghosts, powered, rng):
        return tuple(moves(new_pac, ghosts, powered)), rng

    return drive


def stay(new_pac, ghosts, powered):
    return ghosts


def play(model, word):
    t = run(model, model.initial, InputWord.of(word))
    assert t, f"word undefined: {t}"
    return t


@lru_cache(maxsize=None)
def pm_model():
    return pm.pacman_model()


@lru_cache(maxsize=None)
def pm_traces(agent_id: str, start: int, count: int, ticks: int = 400):
    m = pm_model()
    a = agent(agent_id)
    return tuple(simulate(m, a, s, ticks) for s in range(start, start + count))


@lru_cache(maxsize=None)
def ttt_states():
    return tuple(reachable_states(ttt.ttt_model()))


def random_ttt_trace(rng: random.Random):
    m = ttt.ttt_model()
    s = m.initial
    word = []
    while s.mode == ttt.PLAY:
        psi = rng.choice(s.empties())
        word.append(ttt.sym(psi))
        s = ttt.place(s, psi)
    return run(m, m.initial, InputWord(tuple(word)))


@pytest.fixture(scope="session")
def pacman_model():
    return pm_model()


@pytest.fixture(scope="session")
def tictactoe_model():
    return ttt.ttt_model()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
