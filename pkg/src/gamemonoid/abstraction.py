"""Abstraction maps and empirically built simulations.

An :class:`AbstractionMap` sends concrete states and inputs to abstract ones.
:func:`build_abstract_model` takes the union of the images of observed
concrete transitions, :func:`verify_simulation` checks that every concrete
step of a (fresh) sample lands inside that relation, and :func:`check_square`
checks that abstracting the composed concrete game stays inside the
restricted composition of the abstracted parts.

Square direction: image(composed concrete) must be contained in
compose(abstract base, abstract pattern).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .composition import ComposedModel
from .core import GameModel, InputSymbol, InputWord, Trace


@dataclass(frozen=True, eq=False)
class AbstractionMap:
    name: str
    state_map: Callable[[Any], Any]
    input_map: Callable[[InputSymbol], Any]

    def lift(self, word: InputWord | Sequence[InputSymbol]) -> tuple:
        return tuple(self.input_map(s) for s in word)


def identity_map() -> AbstractionMap:
    return AbstractionMap("identity", lambda s: s, lambda a: a)


@dataclass(frozen=True, eq=False)
class AbstractTrace:
    states: tuple
    symbols: tuple

    def transitions(self) -> Iterable[tuple]:
        for i, a in enumerate(self.symbols):
            yield (self.states[i], a, self.states[i + 1])


def abstract_trace(t: Trace, f: AbstractionMap) -> AbstractTrace:
    return AbstractTrace(tuple(f.state_map(s) for s in t.states), f.lift(t.word))


@dataclass(frozen=True)
class AbstractModel:
    states: frozenset
    alphabet: frozenset
    transitions: frozenset
    initial: frozenset

    def __contains__(self, transition) -> bool:
        return transition in self.transitions

    def without(self, transition) -> "AbstractModel":
        return AbstractModel(self.states, self.alphabet, self.transitions - {transition}, self.initial)

    def is_prefix_closed(self) -> bool:
        """Every transition source is reachable from a declared initial state."""
        reach = set(self.initial)
        frontier = list(self.initial)
        succ: dict = {}
        for u, _, v in self.transitions:
            succ.setdefault(u, []).append(v)
        while frontier:
            u = frontier.pop()
            for v in succ.get(u, ()):
                if v not in reach:
                    reach.add(v)
                    frontier.append(v)
        return all(u in reach for u, _, _ in self.transitions)

    def to_json(self) -> dict:
        return {
            "states": sorted(repr(s) for s in self.states),
            "alphabet": sorted(repr(a) for a in self.alphabet),
            "initial": sorted(repr(s) for s in self.initial),
            "transitions": sorted([repr(u), repr(a), repr(v)] for u, a, v in self.transitions),
        }


def _from_transitions(transitions, initial) -> AbstractModel:
    transitions = frozenset(transitions)
    states = {u for u, _, _ in transitions} | {v for _, _, v in transitions} | set(initial)
    return AbstractModel(frozenset(states), frozenset(a for _, a, _ in transitions), transitions,
                         frozenset(initial))


def build_abstract_model(m: GameModel | None, f: AbstractionMap, traces: Iterable[Trace],
                         extra: Iterable[tuple] = ()) -> AbstractModel:
    """Union of the abstract images of every observed concrete step."""
    transitions = set(extra)
    initial = set()
    n = 0
    for t in traces:
        n += 1
        at = abstract_trace(t, f)
        initial.add(at.states[0])
        transitions.update(at.transitions())
    if n == 0:
        warnings.warn("empty trace sample: abstract relation is empty", RuntimeWarning, stacklevel=2)
    return _from_transitions(transitions, initial)


@dataclass
class SimulationReport:
    passed: bool
    steps_checked: int
    traces_checked: int
    counterexamples: list = field(default_factory=list)
    coverage: float = 0.0

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "steps_checked": self.steps_checked,
            "traces_checked": self.traces_checked,
            "coverage": self.coverage,
            "counterexamples": self.counterexamples,
        }


def verify_simulation(m: GameModel | None, am: AbstractModel, f: AbstractionMap, traces: Iterable[Trace],
                      max_counterexamples: int = 20) -> SimulationReport:
    """PASS iff every concrete step's image is an abstract transition.

    Coverage is the fraction of abstract transitions exercised by the sample.
    """
    bad = []
    seen = set()
    steps = 0
    n = 0
    failed = False
    for idx, t in enumerate(traces):
        n += 1
        for tick, tr in enumerate(abstract_trace(t, f).transitions()):
            steps += 1
            if tr in am.transitions:
                seen.add(tr)
                continue
            failed = True
            if len(bad) < max_counterexamples:
                bad.append({"trace": str(t.meta.get("id", idx)), "tick": tick + 1,
                            "from": repr(tr[0]), "input": repr(tr[1]), "to": repr(tr[2])})
    coverage = len(seen) / len(am.transitions) if am.transitions else 1.0
    return SimulationReport(not failed, steps, n, bad, coverage)


def pattern_abstract_model(cm: ComposedModel, pattern_id: str, f: AbstractionMap,
                           traces: Iterable[Trace]) -> AbstractModel:
    """Abstraction of one pattern: image of the steps inside its orbit instances."""
    pattern = next(p for p in cm.patterns if p.id == pattern_id)
    transitions = set()
    initial = set()
    for t in traces:
        at = abstract_trace(t, f)
        for d in pattern.instances(t):
            initial.add(at.states[d.start_tick])
            for k in range(d.start_tick, d.end_tick):
                transitions.add((at.states[k], at.symbols[k], at.states[k + 1]))
    return _from_transitions(transitions, initial)


def _orbit_flags(cm: ComposedModel, t: Trace) -> list[tuple]:
    flags = [[False] * len(cm.patterns) for _ in t.states]
    for j, p in enumerate(cm.patterns):
        for d in p.instances(t):
            for k in range(d.start_tick, d.end_tick + 1):
                flags[k][j] = True
    return [tuple(row) for row in flags]


def composed_abstract_model(cm: ComposedModel, f: AbstractionMap, traces: Iterable[Trace]) -> AbstractModel:
    """Abstraction of the composed game: base image paired with in-orbit flags."""
    transitions = set()
    initial = set()
    for t in traces:
        at = abstract_trace(t, f)
        flags = _orbit_flags(cm, t)
        initial.add((at.states[0], flags[0]))
        for k, a in enumerate(at.symbols):
            transitions.add(((at.states[k], flags[k]), a, (at.states[k + 1], flags[k + 1])))
    return _from_transitions(transitions, initial)


@dataclass
class SquareReport:
    passed: bool
    checked: int
    counterexamples: list = field(default_factory=list)
    direction: str = "image(composed concrete) <= compose(abstract base, abstract patterns)"

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "direction": self.direction,
                "counterexamples": self.counterexamples}


def restricted_allows(base_abs: AbstractModel, pattern_abs: Sequence[AbstractModel], transition) -> bool:
    """Membership in the restricted composition of the abstract parts.

    A composed abstract step is allowed when its base part is a base
    transition and, for every pattern whose orbit spans the step, it is also
    a transition of that pattern's abstraction.
    """
    (u, fu), a, (v, fv) = transition
    if (u, a, v) not in base_abs.transitions:
        return False
    for j, pabs in enumerate(pattern_abs):
        if fu[j] and fv[j] and (u, a, v) not in pabs.transitions:
            return False
    return True


def check_square(base_abs: AbstractModel, pattern_abs: AbstractModel | Sequence[AbstractModel],
                 composed_abs: AbstractModel, f: AbstractionMap | None = None,
                 max_counterexamples: int = 20) -> SquareReport:
    """Does abstracting after composing stay inside composing after abstracting?

    ``f`` is kept for reporting; all four corners must already be built with it.
    """
    parts = [pattern_abs] if isinstance(pattern_abs, AbstractModel) else list(pattern_abs)
    bad = []
    checked = 0
    for tr in sorted(composed_abs.transitions, key=repr):
        checked += 1
        if not restricted_allows(base_abs, parts, tr):
            if len(bad) < max_counterexamples:
                bad.append({"from": repr(tr[0]), "input": repr(tr[1]), "to": repr(tr[2])})
            else:
                break
    report = SquareReport(not bad, checked, bad)
    if f is not None:
        report.direction += f" under {f.name}"
    return report
