"""Noughts & Crosses over the order-3 magic square.

Cells are numbered 1..9 row-major and each carries its magic-square value, so
"three in a row" becomes "three of your cells sum to 15".
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..behavlets import Behavlet, Quantifier, never
from ..core import GameModel, GameState, InputSymbol, Rule

MAGIC = (2, 7, 6, 9, 5, 1, 4, 3, 8)
CELL_OF_VALUE = {v: i + 1 for i, v in enumerate(MAGIC)}

EMPTY = "."
X = "x"
O = "o"
PLAY = "play"
OVER = "over"

ALPHABET = frozenset(InputSymbol("place", (psi,)) for psi in range(1, 10))


def other(player: str) -> str:
    return O if player == X else X


@dataclass(frozen=True)
class TTTState(GameState):
    cells: tuple = (EMPTY,) * 9
    to_move: str = X
    mode: str = PLAY
    last: int | None = None

    def at(self, psi: int) -> str:
        return self.cells[psi - 1]

    def empties(self) -> list[int]:
        return [i + 1 for i, c in enumerate(self.cells) if c == EMPTY]

    def values(self, player: str) -> list[int]:
        return [MAGIC[i] for i, c in enumerate(self.cells) if c == player]

    def previous_cells(self) -> tuple | None:
        """Board before the last placement, or ``None`` on an empty board."""
        if self.last is None:
            return None
        cells = list(self.cells)
        cells[self.last - 1] = EMPTY
        return tuple(cells)

    def render(self) -> str:
        return "\n".join("".join(self.cells[r * 3 : r * 3 + 3]) for r in range(3))


def has_fifteen(values) -> bool:
    return any(a + b + c == 15 for a, b, c in combinations(values, 3))


def winner_of(cells: tuple) -> str | None:
    xs = [MAGIC[i] for i, c in enumerate(cells) if c == X]
    os_ = [MAGIC[i] for i, c in enumerate(cells) if c == O]
    if has_fifteen(xs):
        return X
    if has_fifteen(os_):
        return O
    return None


def ttt_winner(s: TTTState) -> str:
    """``"x"``, ``"o"``, ``"draw"`` (full board, no winner) or ``"none"``."""
    w = winner_of(s.cells)
    if w is not None:
        return w
    return "draw" if EMPTY not in s.cells else "none"


def threats(cells: tuple, player: str) -> set[int]:
    """Empty cells that would complete a 15 for ``player``."""
    vals = [MAGIC[i] for i, c in enumerate(cells) if c == player]
    out = set()
    for a, b in combinations(vals, 2):
        need = 15 - a - b
        if 1 <= need <= 9 and need != a and need != b:
            psi = CELL_OF_VALUE[need]
            if cells[psi - 1] == EMPTY:
                out.add(psi)
    return out


def place(s: TTTState, psi: int) -> TTTState:
    cells = list(s.cells)
    cells[psi - 1] = s.to_move
    cells = tuple(cells)
    done = winner_of(cells) is not None or EMPTY not in cells
    return TTTState(cells, other(s.to_move), OVER if done else PLAY, psi)


def _turn_guard(player):
    def guard(s, sym):
        return s.mode == PLAY and s.to_move == player and s.cells[sym.args[0] - 1] == EMPTY

    return guard


def _place_effect(s, sym):
    return place(s, sym.args[0])


def invariant(s) -> bool:
    if not isinstance(s, TTTState) or len(s.cells) != 9 or any(c not in (EMPTY, X, O) for c in s.cells):
        return False
    nx, no = s.cells.count(X), s.cells.count(O)
    if nx - no not in (0, 1):
        return False
    if s.to_move != (X if nx == no else O):
        return False
    xw = has_fifteen(s.values(X))
    ow = has_fifteen(s.values(O))
    if xw and ow:
        return False
    if (xw and nx != no + 1) or (ow and nx != no):
        return False
    if s.mode != (OVER if (xw or ow or EMPTY not in s.cells) else PLAY):
        return False
    if s.last is None:
        return nx + no == 0
    return 1 <= s.last <= 9 and s.cells[s.last - 1] == other(s.to_move)


def empty_cells(s: TTTState) -> int:
    return s.cells.count(EMPTY)


def ttt_model() -> GameModel:
    rules = (
        # paired turns drawn without replacement; disjointness is the empty-cell test
        Rule("x turn", _turn_guard(X), _place_effect),
        Rule("o turn", _turn_guard(O), _place_effect),
    )
    return GameModel(
        id="ttt",
        modes=frozenset({PLAY, OVER}),
        alphabet=ALPHABET,
        rules=rules,
        invariant=invariant,
        initial=TTTState(),
        possibility_measure=empty_cells,
        terminal=lambda s: s.mode == OVER,
    )


def sym(psi: int) -> InputSymbol:
    return InputSymbol("place", (psi,))


def _mover(s: TTTState) -> str:
    return s.cells[s.last - 1]


def is_play_center(s: TTTState) -> bool:
    return s.last == 5


def is_block(s: TTTState) -> bool:
    prev = s.previous_cells()
    if prev is None:
        return False
    return threats(prev, other(_mover(s))) == {s.last}


def is_fork(s: TTTState) -> bool:
    prev = s.previous_cells()
    if prev is None or s.mode != PLAY:
        return False
    me = _mover(s)
    created = threats(s.cells, me) - threats(prev, me)
    return len(created) >= 2


def ttt_tactics(player: str | None = None) -> list[Behavlet]:
    """PlayCenter, Block and Fork, each judged on the move just made."""

    def by(pred):
        if player is None:
            return pred
        return lambda s: _mover(s) == player and pred(s)

    started = lambda s: s.last is not None  # noqa: E731
    suffix = "" if player is None else f"/{player}"
    models = frozenset({"ttt"})
    return [
        Behavlet("PlayCenter" + suffix, "positional", started, never, by(is_play_center), Quantifier.INSTANCE_COUNT,
                 models, "mover takes the centre cell (magic value 5)"),
        Behavlet("Block" + suffix, "defensive", started, never, by(is_block), Quantifier.INSTANCE_COUNT, models,
                 "mover fills the opponent's only immediate 15-completion"),
        Behavlet("Fork" + suffix, "offensive", started, never, by(is_fork), Quantifier.INSTANCE_COUNT, models,
                 "mover creates two or more new 15-completions"),
    ]
