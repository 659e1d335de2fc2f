"""Acceptance criteria, each run at its stated scale and tolerance.

Every test records one ``ACCEPTANCE <n> PASS|FAIL`` line; the lines are
printed together at the end of the pytest run (see ``conftest.py``) and when
this file is executed directly.
"""
import os
import random
import subprocess
import sys
from pathlib import Path

import pytest

from gamemonoid.abstraction import (
    build_abstract_model,
    check_square,
    composed_abstract_model,
    pattern_abstract_model,
    verify_simulation,
)
from gamemonoid.agents import minimax_value
from gamemonoid.behavlets import detect
from gamemonoid.core import (
    EMPTY_WORD,
    UNDEFINED,
    Admissibility,
    InputWord,
    PartialTrace,
    Trace,
    check_admissible,
    concat,
    reachable_states,
    run,
    state_graph,
    step,
)
from gamemonoid.composition import validate_restrictions
from gamemonoid.games import pacman as pm
from gamemonoid.games import tictactoe as ttt
from gamemonoid.profiler import simulate
from gamemonoid.registry import abstraction_by_id, agent, composed_by_spec
from gamemonoid.traceio import write_report

from conftest import corridor_maze, play, pm_traces, scripted, stay
from oracles import brute_force_detections
from test_core import counter_model
from test_pacman import eat_in_corridor, walk
from test_tictactoe import line_winner

RESULTS: list[str] = []


def record(n: int, title: str, ok: bool, detail: str) -> None:
    RESULTS.append(f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    assert ok, detail


def mixed_pm_traces(start: int, count: int):
    """``count`` seeded traces cycling through the three Pac-Man archetypes."""
    ids = ("pacman/random", "pacman/hunter", "pacman/evader")
    m = pm.pacman_model()
    return [simulate(m, agent(ids[s % 3]), s, 400) for s in range(start, start + count)]


# --- 1 ----------------------------------------------------------------------

def _random_word(model, state, rng, n):
    """Mostly legal moves from ``state`` with occasional arbitrary symbols."""
    alphabet = model.sorted_alphabet()
    out = []
    for _ in range(n):
        legal = [a for a in alphabet if step(model, state, a) is not UNDEFINED]
        a = rng.choice(legal) if legal and rng.random() < 0.9 else rng.choice(alphabet)
        out.append(a)
        nxt = step(model, state, a)
        if nxt is not UNDEFINED:
            state = nxt
    return InputWord(tuple(out))


def _outcome(r):
    if isinstance(r, PartialTrace):
        return ("partial", r.failed_index, r.prefix.states)
    return ("total", r.states)


def _chain(model, init, parts):
    """Run word parts one after another, splicing traces together."""
    states = (init,)
    offset = 0
    for w in parts:
        r = run(model, states[-1], w)
        if isinstance(r, PartialTrace):
            return ("partial", offset + r.failed_index, states + r.prefix.states[1:])
        states = states + r.states[1:]
        offset += len(w)
    return ("total", states)


def test_1_monoid_and_action_laws():
    rng = random.Random(1)
    failures = 0
    checked = 0
    for model, seeded in ((ttt.ttt_model(), False), (pm.pacman_model(), True)):
        for i in range(1000):
            init = model.initial_for(rng.randrange(2**32)) if seeded else model.initial
            maxlen = 4 if not seeded else 20
            u = _random_word(model, init, rng, rng.randint(0, maxlen))
            mid = run(model, init, u)
            s1 = mid.states[-1] if isinstance(mid, Trace) else init
            v = _random_word(model, s1, rng, rng.randint(0, maxlen))
            w = _random_word(model, s1, rng, rng.randint(0, maxlen))
            ok = concat(concat(u, v), w) == concat(u, concat(v, w))
            ok &= EMPTY_WORD + u == u == u + EMPTY_WORD
            ok &= _outcome(run(model, init, EMPTY_WORD)) == ("total", (init,))
            ok &= _outcome(run(model, init, u + v + w)) == _chain(model, init, [u, v, w]) == _chain(model, init, [u + v, w])
            checked += 1
            failures += not ok
    record(1, "monoid/action laws", failures == 0, f"{checked} word triples over ttt and pacman, {failures} failures")


# --- 2 ----------------------------------------------------------------------

def test_2_magic_square_equivalence():
    boards = {s.cells: s for s in reachable_states(ttt.ttt_model())}
    bad = sum(ttt.ttt_winner(s) != line_winner(c) for c, s in boards.items())
    record(2, "magic-square winner", len(boards) == 5478 and bad == 0,
           f"{len(boards)} reachable boards, {bad} disagreements with the 8-line checker")


# --- 3 ----------------------------------------------------------------------

def _all_game_traces():
    out = []

    def rec(s, states, word):
        if s.mode == ttt.OVER:
            out.append(Trace("ttt", states[0], InputWord(tuple(word)), tuple(states)))
            return
        for psi in s.empties():
            nxt = ttt.place(s, psi)
            rec(nxt, states + [nxt], word + [ttt.sym(psi)])

    rec(ttt.TTTState(), [ttt.TTTState()], [])
    return out


def test_3_orbit_admissibility():
    games = _all_game_traces()
    bad = sum(check_admissible(t) is not Admissibility.ADMISSIBLE for t in games)
    # every prefix of an admissible trace is admissible, so complete games cover all traces
    m = counter_model(4)
    cyc = check_admissible(run(m, m.initial, InputWord.of(["inc"] * 5)))
    record(3, "orbit admissibility", bad == 0 and len(games) == 255168 and cyc is Admissibility.CYCLE,
           f"{len(games)} complete games, {bad} not admissible; cyclic toy flagged {cyc.value}")


# --- 4 ----------------------------------------------------------------------

def test_4_restriction_operators():
    pm_cm = composed_by_spec("pacman:A1")
    traces = mixed_pm_traces(0, 1000)
    pm_bad = sum(not validate_restrictions(pm_cm, t).r1 for t in traces)
    # Noughts & Crosses: every edge of the full state graph removes one empty cell
    g = state_graph(ttt.ttt_model())
    edges = [(s, t) for s, es in g.items() for _, t in es]
    ttt_bad = sum(ttt.empty_cells(t) >= ttt.empty_cells(s) for s, t in edges)

    base = ttt.ttt_model()
    t = play(base, ["place@5", "place@1", "place@9", "place@2", "place@3"])
    r2 = validate_restrictions(composed_by_spec("ttt:Block,PlayCenter"), t)
    r3 = validate_restrictions(composed_by_spec("ttt:PlayCenter,PlayCenter"), play(base, ["place@5"]))
    r2_named = (not r2.r2) and r2.r1 and r2.r3 and "r2_violations" in r2.details
    r3_named = (not r3.r3) and r3.r1 and r3.r2 and "r3_violations" in r3.details
    ok = pm_bad == 0 and ttt_bad == 0 and r2_named and r3_named
    record(4, "restriction operators", ok,
           f"R1 held on {len(traces) - pm_bad}/{len(traces)} pacman traces and {len(edges) - ttt_bad}/{len(edges)} "
           f"ttt transitions; constructed R2 flagged={r2_named}, R3 flagged={r3_named}")


# --- 5 ----------------------------------------------------------------------

def test_5_a1_oracle_equivalence():
    b = pm.behavlet_a1()
    traces = pm_traces("pacman/hunter", 0, 100) + pm_traces("pacman/random", 0, 100)
    mismatches = 0
    found = 0
    for t in traces:
        got = [(d.start_tick, d.end_tick) for d in detect(b, t)]
        found += len(got)
        mismatches += got != brute_force_detections(b, t)
    record(5, "A1 detection vs brute force", mismatches == 0 and found > 0,
           f"{len(traces)} traces, {found} detections, {mismatches} mismatching traces")


# --- 6 ----------------------------------------------------------------------

def test_6_pacman_scoring():
    m = pm.pacman_model(corridor_maze("#P..."), ghost_driver=scripted(stay))
    pills = [b.points - a.points for a, b in zip(*(lambda s: (s, s[1:]))(walk(m, 3)))]
    m = pm.pacman_model(corridor_maze("#Po      ."), ghost_driver=scripted(eat_in_corridor))
    powered = [b.points - a.points for a, b in zip(*(lambda s: (s, s[1:]))(walk(m, 5)))]
    ok = pills == [5, 5, 5] and powered == [10, 50, 100, 150, 200]
    record(6, "pac-man scoring", ok, f"pill gains {pills}; powerpill then four ghosts {powered}")


# --- 7 ----------------------------------------------------------------------

def test_7_simulation_square(tmp_path):
    f = abstraction_by_id("pm-mode-home")
    build = mixed_pm_traces(0, 500)
    fresh = mixed_pm_traces(10_000, 500)
    base_abs = build_abstract_model(None, f, build)
    sim = verify_simulation(None, base_abs, f, fresh)

    cm = composed_by_spec("pacman:A1")
    pabs = pattern_abstract_model(cm, "A1", f, build)
    composed = composed_abstract_model(cm, f, build)
    square = check_square(base_abs, [pabs], composed, f)

    # deleting any transition must be caught, with a counterexample
    sim_missed = [tr for tr in base_abs.transitions
                  if verify_simulation(None, base_abs.without(tr), f, fresh).counterexamples == []]
    sq_missed = [tr for tr in pabs.transitions
                 if check_square(base_abs, [pabs.without(tr)], composed, f).counterexamples == []]
    write_report({"simulation": sim, "square": square, "abstract_model": base_abs.to_json()},
                 tmp_path / "square.json")
    ok = sim.passed and square.passed and not sim_missed and not sq_missed
    unseen = "; unseen on build: " + ", ".join(
        f"{c['from']} -> {c['to']} ({c['trace']} tick {c['tick']})" for c in sim.counterexamples) if not sim.passed else ""
    record(7, "simulation square", ok,
           f"verify={'PASS' if sim.passed else 'FAIL'} (coverage {sim.coverage:.3f} of {len(base_abs.transitions)} "
           f"transitions), square={'PASS' if square.passed else 'FAIL'} ({square.checked} composed steps); "
           f"undetected deletions: base {len(sim_missed)}, pattern {len(sq_missed)}{unseen}")


# --- 8 ----------------------------------------------------------------------

def test_8_profiler_separation(tmp_path):
    from gamemonoid.profiler import profile_groups

    b = pm.behavlet_a1()
    hunters = pm_traces("pacman/hunter", 0, 100)
    evaders = pm_traces("pacman/evader", 0, 100)
    h = [len(detect(b, t)) for t in hunters]
    e = [len(detect(b, t)) for t in evaders]
    wins = sum(x > y for x, y in zip(h, e))
    groups = profile_groups({"hunter": list(hunters), "evader": list(evaders)}, [b])
    write_report({"paired_wins": wins, "hunter_counts": h, "evader_counts": e,
                  "profiles": groups}, tmp_path / "separation.json")
    record(8, "profiler separation", wins >= 95,
           f"hunter > evader on {wins}/100 paired seeds; mean A1 {sum(h) / 100:.2f} vs {sum(e) / 100:.2f}; "
           f"cautious score {float(groups['hunter'].trait_scores['cautious']):.3f} vs "
           f"{float(groups['evader'].trait_scores['cautious']):.3f}")


# --- 9 ----------------------------------------------------------------------

def test_9_perfect_play():
    m = ttt.ttt_model()
    losses = 0
    for seed in range(1000):
        mm_x = seed % 2 == 0
        t = simulate(m, agent("ttt/minimax:random" if mm_x else "ttt/random:minimax"), seed, 9)
        losses += ttt.ttt_winner(t.states[-1]) == (ttt.O if mm_x else ttt.X)
    tactic_losses = 0
    for seed in range(100):
        mm_x = seed % 2 == 0
        t = simulate(m, agent("ttt/minimax:tactical" if mm_x else "ttt/tactical:minimax"), seed, 9)
        tactic_losses += ttt.ttt_winner(t.states[-1]) == (ttt.O if mm_x else ttt.X)
    draws = sum(ttt.ttt_winner(simulate(m, agent("ttt/minimax:minimax"), s, 9).states[-1]) == "draw"
                for s in range(100))
    ok = losses == 0 and tactic_losses == 0 and draws == 100 and minimax_value(ttt.TTTState().cells, ttt.X) == 0
    record(9, "perfect play", ok,
           f"losses vs random {losses}/1000, vs tactic-ordered {tactic_losses}/100, self-play draws {draws}/100")


# --- 10 ---------------------------------------------------------------------

def _cli(args, cwd, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "gamemonoid", *args], cwd=cwd, env=env,
                          capture_output=True, text=True)


def test_10_determinism(tmp_path):
    steps = [
        ["simulate", "--model", "pacman", "--agent", "pacman/hunter", "--seed", "11", "--ticks", "400",
         "--count", "3", "--out", "pm"],
        ["simulate", "--model", "pacman", "--agent", "pacman/evader", "--seed", "5", "--hash-states",
         "--out", "hashed.trace"],
        ["simulate", "--model", "ttt", "--agent", "ttt/tactical:random", "--seed", "3", "--count", "5",
         "--out", "ttt"],
        ["detect", "--behavlet", "A1", "--traces", "pm", "hashed.trace", "--out", "detect.json"],
        ["profile", "--traces", "pm", "--behavlets", "A1", "--out", "profile.json"],
        ["validate", "--composed", "ttt:PlayCenter,Block,Fork", "--traces", "ttt", "--out", "validate.json"],
        ["abstract", "--model", "pacman", "--map", "pm-mode-home", "--traces", "pm", "--verify", "hashed.trace",
         "--pattern", "A1", "--out", "abstract.json"],
    ]
    outputs = {}
    for k, hashseed in enumerate((1, 2)):
        d = tmp_path / f"run{k}"
        d.mkdir()
        for args in steps:
            r = _cli(args, d, hashseed)
            assert r.returncode in (0, 1), r.stderr
        outputs[k] = {p.relative_to(d): p.read_bytes() for p in sorted(d.rglob("*")) if p.is_file()}
    same = outputs[0] == outputs[1]
    record(10, "determinism", same and len(outputs[0]) == 13,
           f"{len(outputs[0])} trace/report files, byte-identical across two runs with different hash seeds: {same}")


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
