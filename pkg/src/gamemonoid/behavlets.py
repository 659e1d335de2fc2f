"""Behavlets: detectable play patterns tied to a temperament trait.

A Behavlet's start condition plays the role of the constraint harness: it
opens an evaluation window on the tick where it holds.  The window then stays
open while ``window`` holds (or until the start condition fires again, which
restarts it).  Inside each window every maximal run of ticks on which the
segment predicate holds is one detection.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import kernels
from .core import Admissibility, Trace, check_admissible


class Quantifier(enum.Enum):
    INSTANCE_COUNT = "instance-count"
    TICK_FRACTION = "tick-fraction"


class IncompatibleModel(TypeError):
    pass


StatePredicate = Callable[[Any], bool]


@dataclass(frozen=True, eq=False)
class Behavlet:
    id: str
    trait_label: str
    start_condition: StatePredicate
    window: StatePredicate
    segment_predicate: StatePredicate
    quantifier: Quantifier = Quantifier.INSTANCE_COUNT
    models: frozenset | None = None
    description: str = ""

    def accepts(self, model_id: str) -> bool:
        return self.models is None or model_id in self.models

    def __repr__(self) -> str:
        return f"Behavlet({self.id!r}, trait={self.trait_label!r})"


@dataclass(frozen=True, order=True)
class Detection:
    start_tick: int
    end_tick: int
    behavlet_id: str
    trace_id: str = ""

    def __post_init__(self):
        if self.start_tick > self.end_tick:
            raise ValueError("detection must satisfy start_tick <= end_tick")

    @property
    def length(self) -> int:
        return self.end_tick - self.start_tick + 1

    def overlaps(self, other: "Detection") -> bool:
        return self.start_tick <= other.end_tick and other.start_tick <= self.end_tick


def _check_model(b: Behavlet, trace: Trace) -> None:
    if not b.accepts(trace.model_id):
        raise IncompatibleModel(f"behavlet {b.id} does not apply to model {trace.model_id!r}")


def scan(b: Behavlet, trace: Trace) -> tuple[list, list]:
    """Window spans and raw predicate runs, both as inclusive tick pairs."""
    _check_model(b, trace)
    states = trace.states
    starts = [bool(b.start_condition(s)) for s in states]
    wins = [bool(b.window(s)) for s in states]
    # the predicate only matters where a window can be open
    preds = [bool(b.segment_predicate(s)) if (st or w) else False for s, st, w in zip(states, starts, wins)]
    return kernels.segment_runs(starts, wins, preds)


def detect(b: Behavlet, trace: Trace, trace_id: str | None = None) -> list[Detection]:
    if trace_id is None:
        trace_id = str(trace.meta.get("id", ""))
    _, runs = scan(b, trace)
    out = []
    for a, z in runs:
        # a run that revisits a state is a cycle, which cannot be an orbit instance
        if z > a and check_admissible(trace.segment(a, z)) is Admissibility.CYCLE:
            continue
        out.append(Detection(a, z, b.id, trace_id))
    return out


def quantify(b: Behavlet, ds: list[Detection], trace: Trace) -> Fraction:
    if b.quantifier is Quantifier.INSTANCE_COUNT:
        return Fraction(len(ds))
    spans, _ = scan(b, trace)
    total = sum(z - a + 1 for a, z in spans)
    if total == 0:
        return Fraction(0)
    return Fraction(sum(d.length for d in ds), total)


def always(state) -> bool:
    return True


def never(state) -> bool:
    return False
