"""Scripted players used to generate traces with a known archetype."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable

from .core import InputSymbol
from .games import pacman as pm
from .games import tictactoe as ttt


@dataclass(frozen=True, eq=False)
class AgentSpec:
    id: str
    policy: Callable[[Any, random.Random], InputSymbol]
    archetype_label: str
    model_id: str


# --- Pac-Man -----------------------------------------------------------------

_DIR_SYMS = {d: InputSymbol(d) for d in pm.DIRECTIONS}


def _moves(s: pm.PMState) -> list[tuple[str, tuple]]:
    out = []
    for d, (dx, dy) in pm.DIRECTIONS.items():
        nxt = (s.pac[0] + dx, s.pac[1] + dy)
        if s.is_open(nxt):
            out.append((d, nxt))
    return out


@lru_cache(maxsize=8)
def _distances(walls: bytes) -> dict:
    """All-pairs shortest path lengths over open cells (BFS from every cell)."""
    size = pm.SIZE
    open_cells = [(i % size, i // size) for i, c in enumerate(walls) if c != 35]
    open_set = set(open_cells)
    table = {}
    for src in open_cells:
        dist = {src: 0}
        q = deque([src])
        while q:
            x, y = q.popleft()
            for dx, dy in pm.DIRECTIONS.values():
                n = (x + dx, y + dy)
                if n in open_set and n not in dist:
                    dist[n] = dist[(x, y)] + 1
                    q.append(n)
        table[src] = dist
    return table


_WALLS_ONLY = bytes(35 if c == 35 else 32 for c in range(256))


def _walls(s: pm.PMState) -> bytes:
    return s.grid.translate(_WALLS_ONLY)


def maze_distances(s: pm.PMState) -> dict:
    return _distances(_walls(s))


def _choose(rng: random.Random, scored: list[tuple[float, str]], best=min) -> InputSymbol:
    target = best(score for score, _ in scored)
    options = sorted(d for score, d in scored if score == target)
    return _DIR_SYMS[rng.choice(options)]


def pm_random(s: pm.PMState, rng: random.Random) -> InputSymbol:
    return _DIR_SYMS[rng.choice(sorted(d for d, _ in _moves(s)))]


def _cells_with(s: pm.PMState, code: int) -> list[tuple]:
    size = pm.SIZE
    return [(i % size, i // size) for i, c in enumerate(s.grid) if c == code]


def pm_hunter(s: pm.PMState, rng: random.Random) -> InputSymbol:
    """Powered: chase the nearest ghost, breaking ties toward the ghost house.
    Normal: head for a powerpill, else a pill."""
    dist = maze_distances(s)
    moves = _moves(s)
    if s.powered:
        targets = list(s.ghosts)
    else:
        targets = _cells_with(s, 111) or _cells_with(s, 46) or list(s.ghost_homes)
    if s.powered:
        # tie-break toward the ghost house
        scored = [((min(dist[nxt].get(t, 10**6) for t in targets),
                    min(dist[nxt].get(h, 10**6) for h in s.ghost_homes)), d) for d, nxt in moves]
    else:
        scored = [(min(dist[nxt].get(t, 10**6) for t in targets), d) for d, nxt in moves]
    return _choose(rng, scored, min)


def pm_evader(s: pm.PMState, rng: random.Random) -> InputSymbol:
    """Always maximise maze distance to the nearest ghost."""
    dist = maze_distances(s)
    scored = [(min(dist[nxt].get(g, 10**6) for g in s.ghosts), d) for d, nxt in _moves(s)]
    return _choose(rng, scored, max)


# --- Noughts & Crosses -------------------------------------------------------

def _score(winner: str | None) -> int:
    return {ttt.X: 1, ttt.O: -1}.get(winner, 0)


@lru_cache(maxsize=None)
def minimax_value(cells: tuple, to_move: str) -> int:
    """Game value with perfect play: +1 x wins, -1 o wins, 0 draw."""
    w = ttt.winner_of(cells)
    if w is not None or ttt.EMPTY not in cells:
        return _score(w)
    vals = []
    for i, c in enumerate(cells):
        if c == ttt.EMPTY:
            nxt = cells[:i] + (to_move,) + cells[i + 1 :]
            vals.append(minimax_value(nxt, ttt.other(to_move)))
    return max(vals) if to_move == ttt.X else min(vals)


def optimal_moves(s: ttt.TTTState) -> list[int]:
    vals = {}
    for psi in s.empties():
        nxt = ttt.place(s, psi)
        vals[psi] = minimax_value(nxt.cells, nxt.to_move)
    best = max(vals.values()) if s.to_move == ttt.X else min(vals.values())
    return [psi for psi, v in vals.items() if v == best]


def ttt_random(s: ttt.TTTState, rng: random.Random) -> InputSymbol:
    return ttt.sym(rng.choice(s.empties()))


def ttt_minimax(s: ttt.TTTState, rng: random.Random) -> InputSymbol:
    return ttt.sym(rng.choice(optimal_moves(s)))


def fork_moves(s: ttt.TTTState) -> list[int]:
    me = s.to_move
    before = ttt.threats(s.cells, me)
    out = []
    for psi in s.empties():
        nxt = ttt.place(s, psi)
        if nxt.mode == ttt.PLAY and len(ttt.threats(nxt.cells, me) - before) >= 2:
            out.append(psi)
    return out


def ttt_tactical(s: ttt.TTTState, rng: random.Random) -> InputSymbol:
    """Win, then block, then fork, then centre, else any cell."""
    me = s.to_move
    for choices in (
        sorted(ttt.threats(s.cells, me)),
        sorted(ttt.threats(s.cells, ttt.other(me))),
        fork_moves(s),
        [5] if s.at(5) == ttt.EMPTY else [],
        s.empties(),
    ):
        if choices:
            return ttt.sym(rng.choice(choices))
    raise ValueError("no empty cell on a live board")


def versus(x_agent: AgentSpec, o_agent: AgentSpec) -> AgentSpec:
    """One agent per side; the combined agent drives a whole game."""

    def policy(s, rng):
        return (x_agent if s.to_move == ttt.X else o_agent).policy(s, rng)

    return AgentSpec(f"{x_agent.id}:{o_agent.id.split('/')[-1]}", policy,
                     f"{x_agent.archetype_label} vs {o_agent.archetype_label}", "ttt")


def builtin_agents() -> list[AgentSpec]:
    return [
        AgentSpec("pacman/random", pm_random, "random", "pacman"),
        AgentSpec("pacman/hunter", pm_hunter, "hunter", "pacman"),
        AgentSpec("pacman/evader", pm_evader, "evader", "pacman"),
        AgentSpec("ttt/random", ttt_random, "random", "ttt"),
        AgentSpec("ttt/tactical", ttt_tactical, "tactic-ordered", "ttt"),
        AgentSpec("ttt/minimax", ttt_minimax, "perfect", "ttt"),
    ]


def agent_by_id(agent_id: str) -> AgentSpec:
    """Look up ``game/name`` or, for Noughts & Crosses, ``ttt/x_name:o_name``."""
    table = {a.id: a for a in builtin_agents()}
    if agent_id in table:
        return table[agent_id]
    game, _, rest = agent_id.partition("/")
    if game == "ttt" and ":" in rest:
        xs, os_ = rest.split(":", 1)
        if f"ttt/{xs}" in table and f"ttt/{os_}" in table:
            return versus(table[f"ttt/{xs}"], table[f"ttt/{os_}"])
    raise KeyError(agent_id)
