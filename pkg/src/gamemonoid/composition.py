"""Free composition of game models and composition with restriction.

Free composition runs two models side by side with no interaction.
Composition with restriction attaches pattern monoids (Behavlet-backed) to a
base model; a trace of the composed game must then satisfy three operators:

R1  the possibility measure never grows from one tick to the next;
R2  orbit instances of successive patterns start in non-decreasing tick order;
R3  overlapping orbit instances are never isomorphic (same input subword and
    same state sequence).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .behavlets import Behavlet, Detection, detect
from .core import (
    UNDEFINED,
    GameModel,
    GameState,
    InputSymbol,
    Rule,
    SimpleState,
    Trace,
    find_reachable,
    step,
)


class CompositionError(ValueError):
    pass


class AlphabetCollision(CompositionError):
    pass


@dataclass(frozen=True)
class ProductState(GameState):
    left: Any
    right: Any

    @property
    def mode(self):
        return (self.left.mode, self.right.mode)


def empty_model(model_id: str = "unit") -> GameModel:
    """One state, no inputs: the identity for free composition."""
    s = SimpleState("idle")
    return GameModel(model_id, frozenset({"idle"}), frozenset(), (), lambda st: st == s, s)


def _prefixed(sym: InputSymbol, prefix: str | None) -> InputSymbol:
    return sym if prefix is None else InputSymbol(f"{prefix}.{sym.tag}", sym.args)


def _lift(rule: Rule, side: str, table: dict) -> Rule:
    if side == "left":
        def guard(s, sym):
            inner = table.get(sym)
            return inner is not None and rule.guard(s.left, inner)

        def effect(s, sym):
            return ProductState(rule.effect(s.left, table[sym]), s.right)
    else:
        def guard(s, sym):
            inner = table.get(sym)
            return inner is not None and rule.guard(s.right, inner)

        def effect(s, sym):
            return ProductState(s.left, rule.effect(s.right, table[sym]))
    return Rule(f"{side}:{rule.label}", guard, effect)


def compose_free(a: GameModel, b: GameModel, rename: tuple[str, str] | None = None) -> GameModel:
    """Product model in which every input acts on its own component only.

    ``rename`` gives tag prefixes for the two alphabets; without it the
    alphabets must already be disjoint.
    """
    pa, pb = rename if rename is not None else (None, None)
    left = {_prefixed(s, pa): s for s in a.alphabet}
    right = {_prefixed(s, pb): s for s in b.alphabet}
    clash = set(left) & set(right)
    if clash:
        names = ", ".join(sorted(str(s) for s in clash)[:5])
        raise AlphabetCollision(f"alphabets of {a.id} and {b.id} overlap ({names}); pass rename=")
    rules = tuple(_lift(r, "left", left) for r in a.rules) + tuple(_lift(r, "right", right) for r in b.rules)
    init = ProductState(a.initial, b.initial)
    seeded = None
    if a.seeded is not None or b.seeded is not None:
        seeded = lambda seed: ProductState(a.initial_for(seed), b.initial_for(seed))  # noqa: E731
    return GameModel(
        id=f"({a.id}*{b.id})",
        modes=frozenset((p, q) for p in a.modes for q in b.modes),
        alphabet=frozenset(left) | frozenset(right),
        rules=rules,
        invariant=lambda s: isinstance(s, ProductState) and a.invariant(s.left) and b.invariant(s.right),
        initial=init,
        possibility_measure=lambda s: a.possibility_measure(s.left) + b.possibility_measure(s.right),
        seeded=seeded,
    )


def project(trace: Trace, side: str) -> list:
    return [getattr(s, side) for s in trace.states]


@dataclass(frozen=True, eq=False)
class PatternMonoid:
    """A play pattern composed onto a base game.

    The pattern's orbit instances are the detections of its Behavlet; its
    start condition is the Behavlet's.  ``alphabet`` is the input subset the
    pattern evolves under (the base alphabet when omitted).
    """

    behavlet: Behavlet
    alphabet: frozenset | None = None
    id: str = ""

    def __post_init__(self):
        if not self.id:
            object.__setattr__(self, "id", self.behavlet.id)

    @property
    def start_condition(self) -> Callable[[Any], bool]:
        return self.behavlet.start_condition

    def instances(self, trace: Trace) -> list[Detection]:
        return [Detection(d.start_tick, d.end_tick, self.id, d.trace_id) for d in detect(self.behavlet, trace)]


def isomorphic_orbits(trace: Trace, a: Detection, b: Detection) -> bool:
    """Exact-equality isomorphism: identical input subwords and state sequences."""
    if a.length != b.length:
        return False
    wa = trace.word.symbols[a.start_tick : a.end_tick]
    wb = trace.word.symbols[b.start_tick : b.end_tick]
    if wa != wb:
        return False
    sa = [s.canonical() for s in trace.states[a.start_tick : a.end_tick + 1]]
    sb = [s.canonical() for s in trace.states[b.start_tick : b.end_tick + 1]]
    return sa == sb


@dataclass(frozen=True)
class RestrictionSpec:
    r1: bool = True
    r2: bool = True
    r3: bool = True
    r3_iso_check: Callable[[Trace, Detection, Detection], bool] = isomorphic_orbits


@dataclass(frozen=True, eq=False)
class ComposedModel:
    base: GameModel
    patterns: tuple[PatternMonoid, ...]
    spec: RestrictionSpec = field(default_factory=RestrictionSpec)

    @property
    def id(self) -> str:
        return self.base.id + ":" + ",".join(p.id for p in self.patterns)

    def instances(self, trace: Trace) -> dict[str, list[Detection]]:
        return {p.id: p.instances(trace) for p in self.patterns}


def _continuations(model: GameModel, state, alphabet) -> set:
    out = set()
    for sym in alphabet:
        nxt = step(model, state, sym)
        if nxt is not UNDEFINED:
            out.add(nxt)
    return out


def compose_restricted(base: GameModel, pattern: PatternMonoid | Sequence[PatternMonoid],
                       spec: RestrictionSpec | None = None, *, search_limit: int = 20000,
                       sample: int = 64) -> ComposedModel:
    """Attach one or more patterns to ``base`` under the restriction operators.

    Rejects a pattern whose alphabet is not a subset of the base alphabet,
    whose start condition is never met within ``search_limit`` reachable
    states, or which forces a single continuation where the base game offers
    a choice (an initial/terminal object).
    """
    patterns = (pattern,) if isinstance(pattern, PatternMonoid) else tuple(pattern)
    if not patterns:
        raise CompositionError("at least one pattern is required")
    for p in patterns:
        if not p.behavlet.accepts(base.id):
            raise CompositionError(f"pattern {p.id} does not apply to model {base.id}")
        alpha = base.alphabet if p.alphabet is None else p.alphabet
        extra = alpha - base.alphabet
        if extra:
            raise CompositionError(f"pattern {p.id} uses inputs outside {base.id}: {sorted(map(str, extra))[:5]}")
        starts = find_reachable(base, p.start_condition, limit=search_limit, want=sample)
        if not starts:
            raise CompositionError(f"start condition of {p.id} is unsatisfiable within {search_limit} states")
        for s in starts:
            mine = _continuations(base, s, sorted(alpha))
            theirs = _continuations(base, s, base.sorted_alphabet())
            if len(mine) < min(2, len(theirs)):
                raise CompositionError(
                    f"pattern {p.id} forces a single continuation from a start state; games must stay uncertain"
                )
    return ComposedModel(base, patterns, spec or RestrictionSpec())


@dataclass
class RestrictionReport:
    r1: bool
    r2: bool
    r3: bool
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.r1 and self.r2 and self.r3

    def to_json(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "r3": self.r3, "passed": self.passed, "details": self.details}


def validate_restrictions(cm: ComposedModel, trace: Trace) -> RestrictionReport:
    details: dict = {"r1_granularity": "per-tick"}
    r1 = r2 = r3 = True
    measure = cm.base.possibility_measure

    if cm.spec.r1:
        values = [measure(s) for s in trace.states]
        bad = [t for t in range(1, len(values)) if values[t] > values[t - 1]]
        r1 = not bad
        if bad:
            details["r1_violations"] = [{"tick": t, "before": values[t - 1], "after": values[t]} for t in bad]

    found = cm.instances(trace)
    details["instances"] = {pid: [[d.start_tick, d.end_tick] for d in ds] for pid, ds in found.items()}

    if cm.spec.r2:
        firsts = [(p.id, found[p.id][0].start_tick if found[p.id] else None) for p in cm.patterns]
        viol = []
        for (prev_id, prev_t), (cur_id, cur_t) in zip(firsts, firsts[1:]):
            if prev_t is not None and cur_t is not None and cur_t < prev_t:
                viol.append({"earlier": prev_id, "earlier_tick": prev_t, "later": cur_id, "later_tick": cur_t})
        r2 = not viol
        if viol:
            details["r2_violations"] = viol

    if cm.spec.r3:
        every = [d for ds in found.values() for d in ds]
        viol = []
        for i, a in enumerate(every):
            for b in every[i + 1 :]:
                if a.overlaps(b) and cm.spec.r3_iso_check(trace, a, b):
                    viol.append({"a": a.behavlet_id, "b": b.behavlet_id, "ticks": [a.start_tick, a.end_tick]})
        r3 = not viol
        if viol:
            details["r3_violations"] = viol

    return RestrictionReport(r1, r2, r3, details)
