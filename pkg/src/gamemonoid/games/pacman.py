"""State-based Pac-Man: a single level on a 20x20 grid.

The basis rule map in normal mode covers pills (+5), powerpills (+10 and a
switch to powered mode for ``power_ticks`` ticks) and losing a life on ghost
contact.  In powered mode ghost contact instead scores 50 times the
consecutive-ghost index and sends that ghost home.

Each tick: Pac-Man moves one cell and consumes it, every ghost moves one cell,
then collisions resolve (same cell, or Pac-Man and a ghost swapping cells),
then the power timer runs down.  Ghost randomness is carried in the state as a
64-bit generator word, so a step is a function of (state, input) alone.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .. import kernels
from ..behavlets import Behavlet, Quantifier
from ..core import GameModel, GameState, InputSymbol, Rule
from .maze import SIZE, MazeSpec, default_maze

NORMAL = "normal"
POWERED = "powered"

DIRECTIONS = {"L": (-1, 0), "U": (0, -1), "D": (0, 1), "R": (1, 0)}
ALPHABET = frozenset(InputSymbol(t) for t in DIRECTIONS)

DEFAULT_POWER_TICKS = 40
DEFAULT_GHOST_WEIGHT = 0.75
DEFAULT_LIVES = 3
NEAR_HOME = 3

GhostDriver = Callable[[bytes, tuple, tuple, bool, int], tuple]


@dataclass(frozen=True)
class PMState(GameState):
    grid: bytes
    pac: tuple
    ghosts: tuple
    mode: str
    timer: int
    points: int
    lives: int
    eat_index: int
    tick: int
    rng: int
    pac_home: tuple
    ghost_homes: tuple
    power_ticks: int

    def to_json(self):
        rows = [self.grid[i : i + SIZE].decode("ascii") for i in range(0, SIZE * SIZE, SIZE)]
        return {
            "grid": rows,
            "pac": list(self.pac),
            "ghosts": [list(g) for g in self.ghosts],
            "mode": self.mode,
            "timer": self.timer,
            "points": self.points,
            "lives": self.lives,
            "eat_index": self.eat_index,
            "tick": self.tick,
            "rng": self.rng,
            "pac_home": list(self.pac_home),
            "ghost_homes": [list(g) for g in self.ghost_homes],
            "power_ticks": self.power_ticks,
        }

    def cell(self, xy) -> int:
        return self.grid[xy[1] * SIZE + xy[0]]

    def is_open(self, xy) -> bool:
        x, y = xy
        return 0 <= x < SIZE and 0 <= y < SIZE and self.grid[y * SIZE + x] != kernels._purepy.WALL

    @property
    def pills_left(self) -> int:
        return self.grid.count(b".") + self.grid.count(b"o")

    @property
    def powered(self) -> bool:
        return self.mode == POWERED


def manhattan(a, b) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def initial_state(maze: MazeSpec, *, power_ticks: int = DEFAULT_POWER_TICKS, lives: int = DEFAULT_LIVES,
                  seed: int = 0) -> PMState:
    return PMState(
        grid=maze.grid_bytes(),
        pac=maze.pac_start,
        ghosts=maze.ghost_starts,
        mode=NORMAL,
        timer=0,
        points=0,
        lives=lives,
        eat_index=0,
        tick=0,
        rng=seed & kernels._purepy.MASK64,
        pac_home=maze.pac_start,
        ghost_homes=maze.ghost_starts,
        power_ticks=power_ticks,
    )


def ghost_policy(s: PMState, rng_state: int, weight: float = DEFAULT_GHOST_WEIGHT) -> tuple:
    """Next ghost positions and generator word for the ghosts of ``s``."""
    return kernels.ghost_policy(s.grid, SIZE, SIZE, s.pac, s.ghosts, s.powered, weight, rng_state)


def is_live(s: PMState) -> bool:
    return s.lives > 0 and s.pills_left > 0


def can_move(s: PMState, d: str) -> bool:
    dx, dy = DIRECTIONS[d]
    return s.is_open((s.pac[0] + dx, s.pac[1] + dy))


def advance(s: PMState, d: str, *, weight: float = DEFAULT_GHOST_WEIGHT, driver: GhostDriver | None = None,
            impl=None) -> PMState | None:
    impl = impl or kernels
    dx, dy = DIRECTIONS[d]
    out = impl.tick(s.grid, SIZE, SIZE, s.pac, s.ghosts, s.pac_home, s.ghost_homes, s.powered, s.timer,
                    s.points, s.lives, s.eat_index, dx, dy, s.power_ticks, weight, s.rng, driver)
    if out is None:
        return None
    grid, pac, ghosts, powered, timer, points, lives, eat_index, rng = out
    return replace(s, grid=grid, pac=pac, ghosts=ghosts, mode=POWERED if powered else NORMAL, timer=timer,
                   points=points, lives=lives, eat_index=eat_index, rng=rng, tick=s.tick + 1)


def invariant(s) -> bool:
    if not isinstance(s, PMState) or len(s.grid) != SIZE * SIZE:
        return False
    if s.mode not in (NORMAL, POWERED):
        return False
    if not s.is_open(s.pac) or len(s.ghosts) != 4 or not all(s.is_open(g) for g in s.ghosts):
        return False
    if (s.timer > 0) != (s.mode == POWERED) or s.timer > s.power_ticks:
        return False
    if not 0 <= s.eat_index <= 4 or (s.mode == NORMAL and s.eat_index != 0):
        return False
    return s.lives >= 0 and s.points >= 0 and s.tick >= 0


def possibility_measure(s: PMState) -> int:
    return s.pills_left


def pacman_model(maze: MazeSpec | None = None, *, power_ticks: int = DEFAULT_POWER_TICKS,
                 ghost_weight: float = DEFAULT_GHOST_WEIGHT, lives: int = DEFAULT_LIVES,
                 ghost_driver: GhostDriver | None = None) -> GameModel:
    """Pac-Man basis model. ``ghost_driver`` replaces the weighted ghost walk (scripted tests)."""
    maze = maze or default_maze()
    if not 0.0 <= ghost_weight <= 1.0:
        raise ValueError("ghost_weight must lie in [0, 1]")
    if power_ticks < 1:
        raise ValueError("power_ticks must be positive")

    def guard_for(mode):
        def guard(s, sym):
            return s.mode == mode and is_live(s) and can_move(s, sym.tag)

        return guard

    def effect(s, sym):
        return advance(s, sym.tag, weight=ghost_weight, driver=ghost_driver)

    rules = (
        Rule("phi: pill / powerpill / lose life", guard_for(NORMAL), effect),
        Rule("phi': pill / powerpill / eat ghost", guard_for(POWERED), effect),
    )
    init = initial_state(maze, power_ticks=power_ticks, lives=lives)
    return GameModel(
        id="pacman",
        modes=frozenset({NORMAL, POWERED}),
        alphabet=ALPHABET,
        rules=rules,
        invariant=invariant,
        initial=init,
        possibility_measure=possibility_measure,
        terminal=lambda s: not is_live(s),
        seeded=lambda seed: replace(init, rng=seed & kernels._purepy.MASK64),
        params={"maze": maze.name, "power_ticks": power_ticks, "ghost_weight": ghost_weight, "lives": lives},
    )


def all_ghosts_near_home(s: PMState) -> bool:
    return all(manhattan(g, h) <= NEAR_HOME for g, h in zip(s.ghosts, s.ghost_homes))


def behavlet_a1() -> Behavlet:
    """A1, hunt close to the ghost house, observed over each powerpill window."""
    return Behavlet(
        id="A1",
        trait_label="cautious",
        start_condition=lambda s: s.mode == POWERED and s.timer == s.power_ticks,
        window=lambda s: s.mode == POWERED,
        segment_predicate=all_ghosts_near_home,
        quantifier=Quantifier.INSTANCE_COUNT,
        models=frozenset({"pacman"}),
        description="every ghost within manhattan distance 3 of its start cell while powered",
    )
