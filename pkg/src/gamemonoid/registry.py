"""Lookup tables for models, Behavlets, agents and abstraction maps by id."""
from __future__ import annotations

from .abstraction import AbstractionMap, identity_map
from .agents import agent_by_id, builtin_agents
from .behavlets import Behavlet
from .composition import ComposedModel, PatternMonoid, compose_restricted
from .core import GameModel
from .games import pacman as pm
from .games import tictactoe as ttt
from .games.maze import resolve_maze


class UnknownId(KeyError):
    def __init__(self, kind: str, name: str, known):
        self.kind = kind
        self.name = name
        self.known = sorted(known)
        super().__init__(f"unknown {kind} {name!r}; known: {', '.join(self.known)}")

    def __str__(self) -> str:
        return self.args[0]


MODEL_IDS = ("pacman", "ttt")


def build_model(model_id: str, params: dict | None = None) -> GameModel:
    params = dict(params or {})
    if model_id == "ttt":
        return ttt.ttt_model()
    if model_id == "pacman":
        maze = resolve_maze(params.pop("maze", None))
        kwargs = {k: params[k] for k in ("power_ticks", "ghost_weight", "lives") if k in params}
        return pm.pacman_model(maze, **kwargs)
    raise UnknownId("model", model_id, MODEL_IDS)


def all_behavlets() -> dict[str, Behavlet]:
    table = {b.id: b for b in [pm.behavlet_a1(), *ttt.ttt_tactics()]}
    for player in (ttt.X, ttt.O):
        table.update({b.id: b for b in ttt.ttt_tactics(player)})
    return table


def behavlet_by_id(bid: str) -> Behavlet:
    table = all_behavlets()
    if bid not in table:
        raise UnknownId("behavlet", bid, table)
    return table[bid]


def agent(agent_id: str):
    try:
        return agent_by_id(agent_id)
    except KeyError:
        known = [a.id for a in builtin_agents()] + ["ttt/<x>:<o>"]
        raise UnknownId("agent", agent_id, known) from None


def _pm_state_map(s):
    return (s.mode, pm.all_ghosts_near_home(s))


def abstraction_maps() -> dict[str, AbstractionMap]:
    return {
        "identity": identity_map(),
        # mode and all-ghosts-near-home flag; direction is irrelevant for comparison
        "pm-mode-home": AbstractionMap("pm-mode-home", _pm_state_map, lambda a: "move"),
        "pm-mode-home-dir": AbstractionMap("pm-mode-home-dir", _pm_state_map, lambda a: a.tag),
        "ttt-piece-count": AbstractionMap("ttt-piece-count", lambda s: 9 - s.cells.count(ttt.EMPTY),
                                          lambda a: a.tag),
    }


def abstraction_by_id(name: str) -> AbstractionMap:
    table = abstraction_maps()
    if name not in table:
        raise UnknownId("abstraction map", name, table)
    return table[name]


def composed_by_spec(spec: str, params: dict | None = None) -> ComposedModel:
    """``model:behavlet[,behavlet...]``, e.g. ``pacman:A1`` or ``ttt:PlayCenter,Block``."""
    model_id, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise UnknownId("composed model", spec, ["pacman:A1", "ttt:PlayCenter,Block,Fork", "<model>:<ids>"])
    base = build_model(model_id, params)
    patterns = []
    seen: dict[str, int] = {}
    for b in (x for x in rest.split(",") if x):
        seen[b] = seen.get(b, 0) + 1
        patterns.append(PatternMonoid(behavlet_by_id(b), id=b if seen[b] == 1 else f"{b}#{seen[b]}"))
    return compose_restricted(base, patterns)
