"""Games as partial monoid actions on discrete state spaces.

A :class:`GameModel` bundles the state space (modes plus an invariant per
mode), the input alphabet whose finite words form the monoid, and an ordered
list of guarded rules that make up the partial action.  :func:`step` applies a
single input symbol, :func:`run` iterates it over a word, and :func:`orbit_of`
/ :func:`check_admissible` inspect the resulting evolution.
"""
from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence


class ModelFault(Exception):
    """A model broke its own contract (overlapping guards, invariant violation)."""


class NondeterminismError(ModelFault):
    pass


class InvariantViolation(ModelFault):
    pass


class UnknownSymbol(ValueError):
    pass


class _Undefined:
    """Outcome of applying an input the partial action does not cover."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __bool__(self) -> bool:
        return False

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


def to_jsonable(obj: Any) -> Any:
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (tuple, list)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted((to_jsonable(v) for v in obj), key=_sort_key)
    if isinstance(obj, bytes):
        return obj.decode("ascii")
    if isinstance(obj, enum.Enum):
        return obj.value
    if obj is None or isinstance(obj, (str, int, float, bool)):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _sort_key(v: Any) -> str:
    return json.dumps(v, sort_keys=True, separators=(",", ":"))


def canonical_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


class GameState:
    """Mixin for hashable, frozen state dataclasses.

    Subclasses must be frozen dataclasses exposing a ``mode`` attribute drawn
    from the model's mode set.
    """

    mode: Any

    def to_json(self) -> Any:
        return to_jsonable(self)

    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def content_hash(self) -> str:
        return hashlib.blake2b(self.canonical().encode(), digest_size=8).hexdigest()


@dataclass(frozen=True)
class SimpleState(GameState):
    mode: Any
    payload: Any = None


@dataclass(frozen=True, order=True)
class InputSymbol:
    tag: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.tag
        return self.tag + "@" + ",".join(str(a) for a in self.args)

    @classmethod
    def parse(cls, text: str) -> "InputSymbol":
        tag, sep, rest = text.partition("@")
        if not tag:
            raise ValueError(f"empty symbol tag in {text!r}")
        if not sep:
            return cls(tag)
        args = tuple(int(a) if a.lstrip("-").isdigit() else a for a in rest.split(","))
        return cls(tag, args)


@dataclass(frozen=True)
class InputWord:
    """A finite word over input symbols; concatenation with ``+``."""

    symbols: tuple[InputSymbol, ...] = ()

    def __add__(self, other: "InputWord") -> "InputWord":
        if not isinstance(other, InputWord):
            return NotImplemented
        return InputWord(self.symbols + other.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[InputSymbol]:
        return iter(self.symbols)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return InputWord(self.symbols[idx])
        return self.symbols[idx]

    def prefixes(self) -> Iterator["InputWord"]:
        for k in range(len(self.symbols) + 1):
            yield InputWord(self.symbols[:k])

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.symbols) or "ε"

    @classmethod
    def of(cls, symbols: Iterable[InputSymbol | str]) -> "InputWord":
        return cls(tuple(s if isinstance(s, InputSymbol) else InputSymbol.parse(s) for s in symbols))


EMPTY_WORD = InputWord()


def concat(a: InputWord, b: InputWord) -> InputWord:
    return a + b


@dataclass(frozen=True)
class Rule:
    label: str
    guard: Callable[[Any, InputSymbol], bool]
    effect: Callable[[Any, InputSymbol], Any]


def _zero_measure(state: Any) -> int:
    return 0


@dataclass(frozen=True, eq=False)
class GameModel:
    """The game triple: states (modes + invariant), input alphabet, rules."""

    id: str
    modes: frozenset
    alphabet: frozenset
    rules: tuple[Rule, ...]
    invariant: Callable[[Any], bool]
    initial: Any
    possibility_measure: Callable[[Any], int] = _zero_measure
    # seed -> initial state; games with in-state randomness override it
    seeded: Callable[[int], Any] | None = None
    # cheap "no input applies" test; defaults to trying every symbol
    terminal: Callable[[Any], bool] | None = None
    params: Mapping[str, Any] = field(default_factory=dict)

    def initial_for(self, seed: int | None = None) -> Any:
        if seed is None or self.seeded is None:
            return self.initial
        return self.seeded(seed)

    def sorted_alphabet(self) -> list[InputSymbol]:
        return sorted(self.alphabet)


def matching_rules(model: GameModel, state: Any, sym: InputSymbol) -> list[Rule]:
    return [r for r in model.rules if r.guard(state, sym)]


def step(model: GameModel, state: Any, sym: InputSymbol):
    """Apply one input symbol. Returns the successor state or ``UNDEFINED``."""
    if sym not in model.alphabet:
        raise UnknownSymbol(f"{sym} is not in the alphabet of {model.id}")
    chosen = None
    for rule in model.rules:
        if rule.guard(state, sym):
            if chosen is not None:
                raise NondeterminismError(
                    f"rules {chosen.label!r} and {rule.label!r} both admit {sym} in {model.id}"
                )
            chosen = rule
    if chosen is None:
        return UNDEFINED
    nxt = chosen.effect(state, sym)
    if not model.invariant(nxt):
        raise InvariantViolation(f"rule {chosen.label!r} produced a state outside Inv({nxt.mode!r})")
    return nxt


def legal_symbols(model: GameModel, state: Any) -> list[InputSymbol]:
    return [s for s in model.sorted_alphabet() if step(model, state, s) is not UNDEFINED]


def is_terminal(model: GameModel, state: Any) -> bool:
    if model.terminal is not None:
        return model.terminal(state)
    return not any(step(model, state, s) is not UNDEFINED for s in model.sorted_alphabet())


def check_invariant(model: GameModel, state: Any) -> bool:
    try:
        return bool(model.invariant(state))
    except (AttributeError, TypeError, ValueError, IndexError):
        return False


@dataclass(frozen=True, eq=False)
class Trace:
    model_id: str
    initial: Any
    word: InputWord
    states: tuple
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.states) != len(self.word) + 1:
            raise ValueError("a trace needs exactly one more state than inputs")
        if self.states[0] != self.initial:
            raise ValueError("states[0] must be the initial state")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def ticks(self) -> range:
        return range(len(self.states))

    def __eq__(self, other):
        if not isinstance(other, Trace):
            return NotImplemented
        return (self.model_id, self.word, self.states) == (other.model_id, other.word, other.states)

    def __hash__(self):
        return hash((self.model_id, self.word, self.states))

    def prefix(self, n_inputs: int) -> "Trace":
        return Trace(self.model_id, self.initial, self.word[:n_inputs], self.states[: n_inputs + 1], self.meta)

    def segment(self, start: int, end: int) -> "Trace":
        """Sub-trace over ticks ``start..end`` inclusive."""
        return Trace(self.model_id, self.states[start], self.word[start:end], self.states[start : end + 1], self.meta)


@dataclass(frozen=True, eq=False)
class PartialTrace:
    """A run that hit an undefined input: the valid prefix and what broke it."""

    prefix: Trace
    failed_index: int
    symbol: InputSymbol

    def __bool__(self) -> bool:
        return False


def run(model: GameModel, init: Any, word: InputWord | Sequence[InputSymbol], meta=None) -> Trace | PartialTrace:
    if not isinstance(word, InputWord):
        word = InputWord(tuple(word))
    states = [init]
    cur = init
    for i, sym in enumerate(word):
        nxt = step(model, cur, sym)
        if nxt is UNDEFINED:
            prefix = Trace(model.id, init, word[:i], tuple(states), meta or {})
            return PartialTrace(prefix, i, sym)
        states.append(nxt)
        cur = nxt
    return Trace(model.id, init, word, tuple(states), meta or {})


@dataclass(frozen=True)
class OrbitSet:
    visited: frozenset

    def __len__(self) -> int:
        return len(self.visited)

    def __contains__(self, state) -> bool:
        return state in self.visited


def orbit_of(trace: Trace) -> OrbitSet:
    return OrbitSet(frozenset(trace.states))


class Admissibility(enum.Enum):
    ADMISSIBLE = "admissible"
    CYCLE = "cycle"
    STABLE_ONLY = "stable-only"


def check_admissible(trace: Trace) -> Admissibility:
    states = trace.states
    first = states[0]
    if all(s == first for s in states):
        return Admissibility.STABLE_ONLY
    if len(set(states)) < len(states):
        return Admissibility.CYCLE
    return Admissibility.ADMISSIBLE


def reachable_states(model: GameModel, start=None, limit: int | None = None) -> list:
    """Breadth-first enumeration of states reachable from ``start``."""
    start = model.initial if start is None else start
    seen = {start: None}
    order = [start]
    queue = deque([start])
    alphabet = model.sorted_alphabet()
    while queue:
        cur = queue.popleft()
        for sym in alphabet:
            nxt = step(model, cur, sym)
            if nxt is UNDEFINED or nxt in seen:
                continue
            seen[nxt] = None
            order.append(nxt)
            if limit is not None and len(order) >= limit:
                return order
            queue.append(nxt)
    return order


def state_graph(model: GameModel, start=None, limit: int | None = None) -> dict:
    """Reachable transition graph as ``{state: [(symbol, successor), ...]}``."""
    graph = {}
    for s in reachable_states(model, start, limit):
        edges = []
        for sym in model.sorted_alphabet():
            nxt = step(model, s, sym)
            if nxt is not UNDEFINED:
                edges.append((sym, nxt))
        graph[s] = edges
    return graph


def find_reachable(model: GameModel, predicate: Callable[[Any], bool], limit: int = 20000, want: int = 1,
                   start=None) -> list:
    """Up to ``want`` reachable states satisfying ``predicate`` within a search budget."""
    found = []
    for s in reachable_states(model, start, limit):
        if predicate(s):
            found.append(s)
            if len(found) >= want:
                break
    return found
