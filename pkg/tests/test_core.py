import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamemonoid.core import (
    EMPTY_WORD,
    UNDEFINED,
    Admissibility,
    GameModel,
    InputSymbol,
    InputWord,
    InvariantViolation,
    NondeterminismError,
    PartialTrace,
    Rule,
    SimpleState,
    Trace,
    UnknownSymbol,
    check_admissible,
    check_invariant,
    concat,
    find_reachable,
    orbit_of,
    run,
    step,
)
from gamemonoid.games import pacman as pm
from gamemonoid.games import tictactoe as ttt

from conftest import play, random_ttt_trace, ttt_states

TTT_SYMS = sorted(ttt.ALPHABET)
PM_SYMS = sorted(pm.ALPHABET)


def counter_model(modulus=4, cap=None):
    """Toy model: ``inc`` adds one mod ``modulus``; ``noop`` leaves the state alone."""
    alphabet = frozenset({InputSymbol("inc"), InputSymbol("noop")})

    def inc_guard(s, a):
        return a.tag == "inc" and (cap is None or s.payload < cap)

    return GameModel(
        id="counter",
        modes=frozenset({"on"}),
        alphabet=alphabet,
        rules=(
            Rule("inc", inc_guard, lambda s, a: SimpleState("on", (s.payload + 1) % modulus)),
            Rule("noop", lambda s, a: a.tag == "noop", lambda s, a: s),
        ),
        invariant=lambda s: 0 <= s.payload < modulus,
        initial=SimpleState("on", 0),
    )


def words(symbols, max_size=12):
    return st.lists(st.sampled_from(symbols), max_size=max_size).map(lambda xs: InputWord(tuple(xs)))


def final(result):
    """Comparable outcome of a run: the whole trace, or (prefix, failed index)."""
    if isinstance(result, PartialTrace):
        return ("partial", result.prefix, result.failed_index, result.symbol)
    return ("total", result)


# --- monoid laws -------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(words(TTT_SYMS), words(TTT_SYMS), words(TTT_SYMS))
def test_concat_associative(u, v, w):
    assert concat(concat(u, v), w) == concat(u, concat(v, w))


@settings(max_examples=100, deadline=None)
@given(words(PM_SYMS))
def test_empty_word_is_identity(u):
    assert EMPTY_WORD + u == u == u + EMPTY_WORD


def _compatible(model, init, u, v):
    whole = run(model, init, u + v)
    first = run(model, init, u)
    if isinstance(first, PartialTrace):
        # once undefined, always undefined at the same place
        assert isinstance(whole, PartialTrace)
        assert whole.failed_index == first.failed_index
        return
    second = run(model, first.states[-1], v)
    if isinstance(second, PartialTrace):
        assert isinstance(whole, PartialTrace)
        assert whole.failed_index == len(u) + second.failed_index
        assert whole.prefix.states == first.states + second.prefix.states[1:]
    else:
        assert whole.states == first.states + second.states[1:]


@settings(max_examples=200, deadline=None)
@given(words(TTT_SYMS, 6), words(TTT_SYMS, 6))
def test_run_respects_concatenation_ttt(u, v):
    m = ttt.ttt_model()
    _compatible(m, m.initial, u, v)


@settings(max_examples=100, deadline=None)
@given(words(PM_SYMS, 15), words(PM_SYMS, 15), st.integers(0, 2**32))
def test_run_respects_concatenation_pacman(u, v, seed):
    m = pm.pacman_model()
    _compatible(m, m.initial_for(seed), u, v)


# --- step / run --------------------------------------------------------------

def test_centre_move_on_empty_board():
    m = ttt.ttt_model()
    s = step(m, m.initial, ttt.sym(5))
    assert s.at(5) == ttt.X and s.to_move == ttt.O
    assert s.cells.count(ttt.EMPTY) == 8


def test_occupied_cell_is_undefined():
    m = ttt.ttt_model()
    s = step(m, m.initial, ttt.sym(5))
    assert step(m, s, ttt.sym(5)) is UNDEFINED


def test_wall_move_is_undefined(pacman_model):
    s = pacman_model.initial
    blocked = [d for d in "LUDR" if not pm.can_move(s, d)]
    assert blocked
    assert step(pacman_model, s, InputSymbol(blocked[0])) is UNDEFINED


def test_unknown_symbol_rejected(tictactoe_model):
    with pytest.raises(UnknownSymbol):
        step(tictactoe_model, tictactoe_model.initial, InputSymbol("place", (10,)))


def test_empty_word_gives_singleton_trace(tictactoe_model, pacman_model):
    for m in (tictactoe_model, pacman_model):
        t = run(m, m.initial, EMPTY_WORD)
        assert isinstance(t, Trace) and t.states == (m.initial,)


def test_three_move_replay(tictactoe_model):
    t = play(tictactoe_model, ["place@5", "place@1", "place@3"])
    assert len(t.states) == 4
    assert ttt.ttt_winner(t.states[-1]) == "none"
    assert t.states[-1].render() == "o.x\n.x.\n..."


def test_repeated_cell_gives_partial_trace(tictactoe_model):
    r = run(tictactoe_model, tictactoe_model.initial, InputWord.of(["place@5", "place@1", "place@5", "place@2"]))
    assert isinstance(r, PartialTrace)
    assert r.failed_index == 2 and str(r.symbol) == "place@5"
    assert len(r.prefix.states) == 3


def test_symbol_text_round_trip():
    for s in TTT_SYMS + PM_SYMS:
        assert InputSymbol.parse(str(s)) == s


def test_overlapping_guards_raise():
    m = counter_model()
    bad = GameModel(m.id, m.modes, m.alphabet, m.rules + (Rule("dup", lambda s, a: a.tag == "inc", m.rules[0].effect),),
                    m.invariant, m.initial)
    with pytest.raises(NondeterminismError):
        step(bad, bad.initial, InputSymbol("inc"))


def test_invariant_break_raises():
    m = counter_model()
    broken = GameModel(m.id, m.modes, m.alphabet,
                       (Rule("jump", lambda s, a: a.tag == "inc", lambda s, a: SimpleState("on", 99)),),
                       m.invariant, m.initial)
    with pytest.raises(InvariantViolation):
        step(broken, broken.initial, InputSymbol("inc"))


def test_ttt_rules_never_overlap(tictactoe_model):
    # exhaustive: every reachable state and symbol admits at most one rule
    for s in ttt_states():
        for a in TTT_SYMS:
            assert sum(r.guard(s, a) for r in tictactoe_model.rules) <= 1


def test_terminal_ttt_state_is_stuck(tictactoe_model):
    t = play(tictactoe_model, ["place@1", "place@4", "place@2", "place@5", "place@3"])
    assert t.states[-1].mode == ttt.OVER
    assert all(step(tictactoe_model, t.states[-1], a) is UNDEFINED for a in TTT_SYMS)


# --- orbits and admissibility -----------------------------------------------

def test_orbit_sizes(tictactoe_model):
    assert len(orbit_of(run(tictactoe_model, tictactoe_model.initial, EMPTY_WORD))) == 1
    t = play(tictactoe_model, ["place@5", "place@1", "place@3", "place@7"])
    assert len(orbit_of(t)) == 5


@settings(max_examples=50, deadline=None)
@given(words(PM_SYMS, 30))
def test_orbit_bounded_by_trace(u):
    m = pm.pacman_model()
    r = run(m, m.initial, u)
    t = r.prefix if isinstance(r, PartialTrace) else r
    assert len(orbit_of(t)) <= len(t.states)


def test_cycle_detected():
    m = counter_model(modulus=4)
    t = run(m, m.initial, InputWord.of(["inc"] * 4))
    assert t.states[0] == t.states[4]
    assert check_admissible(t) is Admissibility.CYCLE


def test_stable_only():
    m = counter_model()
    t = run(m, m.initial, InputWord.of(["noop"] * 5))
    assert check_admissible(t) is Admissibility.STABLE_ONLY


def test_ttt_traces_admissible():
    import random

    rng = random.Random(7)
    for _ in range(300):
        assert check_admissible(random_ttt_trace(rng)) is Admissibility.ADMISSIBLE


def test_invariant_examples(pacman_model, tictactoe_model):
    s = pacman_model.initial
    assert check_invariant(pacman_model, s)
    wall = next((x, y) for y in range(20) for x in range(20) if not s.is_open((x, y)))
    from dataclasses import replace

    assert not check_invariant(pacman_model, replace(s, pac=wall))
    cells = tuple("xxxxxoo..")
    assert not check_invariant(tictactoe_model, ttt.TTTState(cells, ttt.O, ttt.PLAY, 1))


def test_find_reachable_respects_budget(tictactoe_model):
    assert find_reachable(tictactoe_model, lambda s: s.cells.count(ttt.X) == 3, limit=50) == []
    found = find_reachable(tictactoe_model, lambda s: s.at(5) == ttt.O, want=3)
    assert len(found) == 3 and all(s.at(5) == ttt.O for s in found)


def test_trace_rejects_wrong_length():
    m = counter_model()
    with pytest.raises(ValueError):
        Trace("counter", m.initial, InputWord.of(["inc"]), (m.initial,))
