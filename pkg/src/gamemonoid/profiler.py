"""Trait profiles from Behavlet detections, and seeded simulation of agents."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .agents import AgentSpec
from .behavlets import Behavlet, detect, quantify
from .core import UNDEFINED, GameModel, InputWord, Trace, UnknownSymbol, is_terminal, step


class EmptyBatchError(ValueError):
    pass


def simulate(m: GameModel, a: AgentSpec, seed: int, max_ticks: int) -> Trace:
    """Play ``a`` on ``m`` until a terminal state or ``max_ticks`` inputs.

    The model's in-state randomness and the agent's own generator are both
    derived from ``seed``.  An illegal move ends the trace early and sets
    ``meta["forfeit"]``.
    """
    if max_ticks < 1:
        raise ValueError("max_ticks must be at least 1")
    if a.model_id != m.id:
        raise ValueError(f"agent {a.id} plays {a.model_id}, not {m.id}")
    rng = random.Random(f"agent:{seed}")
    cur = m.initial_for(seed)
    states = [cur]
    word = []
    forfeit = None
    for _ in range(max_ticks):
        if is_terminal(m, cur):
            break
        sym = a.policy(cur, rng)
        try:
            nxt = step(m, cur, sym)
        except UnknownSymbol:
            nxt = UNDEFINED
        if nxt is UNDEFINED:
            forfeit = {"tick": len(states), "input": str(sym)}
            break
        word.append(sym)
        states.append(nxt)
        cur = nxt
    meta = {"id": f"{a.id}#{seed}", "seed": seed, "agent": a.id, "model": m.id, "params": dict(m.params),
            "truncated": forfeit is not None}
    if forfeit:
        meta["forfeit"] = forfeit
    return Trace(m.id, states[0], InputWord(tuple(word)), tuple(states), meta)


@dataclass
class TraitProfile:
    trait_scores: dict
    evidence: dict
    trace_count: int
    per_trace: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "trace_count": self.trace_count,
            "trait_scores": self.trait_scores,
            "evidence": {k: {"total": v} for k, v in self.evidence.items()},
            "per_trace": self.per_trace,
        }


def _minmax(values: Sequence[Fraction], lo: Fraction, hi: Fraction) -> list[Fraction]:
    if hi == lo:
        # degenerate batch: any positive quantity normalises to 1
        return [Fraction(1) if v > 0 else Fraction(0) for v in values]
    return [(v - lo) / (hi - lo) for v in values]


def trace_quantities(traces: Sequence[Trace], behavlets: Sequence[Behavlet]) -> dict[str, list[Fraction]]:
    """Raw ``quantify`` output per Behavlet, one entry per trace in input order."""
    out = {}
    for b in behavlets:
        out[b.id] = [quantify(b, detect(b, t), t) for t in traces]
    return out


def _trait_values(traces, behavlets, raw) -> dict[str, list[Fraction]]:
    traits: dict[str, list[Fraction]] = {}
    for b in behavlets:
        col = traits.setdefault(b.trait_label, [Fraction(0)] * len(traces))
        for i, v in enumerate(raw[b.id]):
            col[i] += v
    return traits


def profile(traces: Iterable[Trace], behavlets: Sequence[Behavlet]) -> TraitProfile:
    """Per trait: mean over traces of the min-max normalised per-trace quantity.

    Behavlets sharing a trait label are summed per trace before normalising.
    Raw evidence totals are exact rationals, so the result does not depend on
    trace order.
    """
    traces = list(traces)
    if not traces:
        raise EmptyBatchError("profile needs at least one trace")
    raw = trace_quantities(traces, behavlets)
    traits = _trait_values(traces, behavlets, raw)
    scores = {}
    for label, vals in traits.items():
        normed = _minmax(vals, min(vals), max(vals))
        scores[label] = sum(normed, Fraction(0)) / len(normed)
    evidence = {bid: sum(vals, Fraction(0)) for bid, vals in raw.items()}
    per_trace = {bid: {str(t.meta.get("id", i)): v for i, (t, v) in enumerate(zip(traces, vals))}
                 for bid, vals in raw.items()}
    return TraitProfile(scores, evidence, len(traces), per_trace)


def profile_groups(groups: Mapping[str, Sequence[Trace]], behavlets: Sequence[Behavlet]) -> dict[str, TraitProfile]:
    """Profile several batches on one shared min-max scale (the pooled batch)."""
    if not groups or not any(groups.values()):
        raise EmptyBatchError("profile needs at least one trace")
    pooled = [t for ts in groups.values() for t in ts]
    raw_all = trace_quantities(pooled, behavlets)
    traits_all = _trait_values(pooled, behavlets, raw_all)
    bounds = {k: (min(v), max(v)) for k, v in traits_all.items()}
    out = {}
    offset = 0
    for name, ts in groups.items():
        n = len(ts)
        raw = {bid: vals[offset : offset + n] for bid, vals in raw_all.items()}
        traits = {k: v[offset : offset + n] for k, v in traits_all.items()}
        scores = {}
        for label, vals in traits.items():
            normed = _minmax(vals, *bounds[label])
            scores[label] = sum(normed, Fraction(0)) / n if n else Fraction(0)
        evidence = {bid: sum(v, Fraction(0)) for bid, v in raw.items()}
        per_trace = {bid: {str(t.meta.get("id", i)): v for i, (t, v) in enumerate(zip(ts, vals))}
                     for bid, vals in raw.items()}
        out[name] = TraitProfile(scores, evidence, n, per_trace)
        offset += n
    return out
