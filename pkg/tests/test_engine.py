import itertools
import random

import pytest

from permwordle import engine, perms, strategies
from permwordle.engine import LOOPED, SubgameMemo

CS4 = strategies.cyclic_shift(4)
CS5 = strategies.cyclic_shift(5)
# The involution component that loops: swapping pairs twice returns to start.
SWAP_TOP = strategies.from_components([[1], [2, 1], [2, 3, 1], [2, 1, 4, 3]])


def test_feedback_examples():
    assert engine.feedback((4, 1, 2, 3), (2, 1, 4, 3)) == frozenset({2, 4})
    assert engine.feedback((2, 1, 4, 3), (3, 4, 1, 2)) == frozenset()
    p = (3, 1, 4, 2)
    assert engine.feedback(p, p) == frozenset({1, 2, 3, 4})
    with pytest.raises(ValueError):
        engine.feedback((1, 2), (1, 2, 3))


def test_feedback_never_misses_exactly_one():
    for guess in itertools.permutations(range(1, 5)):
        for secret in itertools.permutations(range(1, 5)):
            assert len(engine.feedback(guess, secret)) != 3


def test_next_guess_worked_example():
    # length 5, position 2 already correct: right shift gives 52134
    out = engine.next_guess((1, 2, 3, 4, 5), {2}, CS5)
    assert out == (5, 2, 1, 3, 4)


def test_next_guess_from_identity_is_component_inverse():
    assert engine.next_guess((1, 2, 3, 4), set(), CS4) == (4, 1, 2, 3)
    assert engine.next_guess((1, 2, 3, 4), set(), SWAP_TOP) == (2, 1, 4, 3)
    for s in strategies.enumerate_strategies(5, "deranged"):
        assert engine.next_guess((1, 2, 3, 4, 5), set(), s) == perms.invert(s.top)


def test_next_guess_rejects_degenerate_states():
    with pytest.raises(ValueError):
        engine.next_guess((1, 2, 3), {1, 2, 3}, strategies.cyclic_shift(3))
    with pytest.raises(ValueError):
        engine.next_guess((1, 2, 3), {1, 2}, strategies.cyclic_shift(3))


def test_play_identity_solves_immediately():
    for s in strategies.enumerate_strategies(4, "deranged"):
        trace = engine.play((1, 2, 3, 4), s)
        assert trace.solved and trace.rounds == 1


def test_play_known_traces():
    trace = engine.play((4, 1, 2, 3), CS4)
    assert trace.solved and trace.rounds == 2
    assert trace.correct_sets[-1] == frozenset({1, 2, 3, 4})

    trace = engine.play((3, 4, 1, 2), CS4)
    assert trace.solved and trace.rounds == 3
    assert trace.guesses == ((1, 2, 3, 4), (4, 1, 2, 3), (3, 4, 1, 2))
    assert trace.correct_sets[1] == frozenset()


def test_play_loop_returns_to_identity():
    trace = engine.play((3, 4, 1, 2), SWAP_TOP)
    assert trace.status == "looped"
    assert trace.rounds is None
    assert trace.guesses == ((1, 2, 3, 4), (2, 1, 4, 3), (1, 2, 3, 4))
    assert all(not s for s in trace.correct_sets)


def test_play_length_mismatch():
    with pytest.raises(ValueError):
        engine.play((1, 2, 3), CS4)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_trace_invariants(n):
    strats = list(strategies.enumerate_strategies(n, "deranged"))
    for s in strats:
        for secret in perms.enumerate_perms(n):
            trace = engine.play(secret, s)
            assert trace.guesses[0] == perms.identity(n)
            for guess, hits in zip(trace.guesses, trace.correct_sets):
                assert hits == engine.feedback(guess, secret)
                assert len(hits) != n - 1
            if trace.solved:
                assert trace.correct_sets[-1] == frozenset(range(1, n + 1))
                assert all(
                    len(h) < n for h in trace.correct_sets[:-1]
                )
            assert engine.solve_rounds(secret, s) == (
                trace.rounds if trace.solved else LOOPED
            )


def test_rho_examples():
    assert engine.rho((1, 2, 3, 4), CS4) == 1
    assert engine.rho((2, 1, 4, 3), CS4) == 2
    assert engine.rho((3, 4, 1, 2), CS4) == 3
    # looped with every recorded correct set empty: no rho
    assert engine.rho((3, 4, 1, 2), SWAP_TOP) is None


def test_rho_on_looped_game_with_a_hit():
    # Secret fixes position 5; the length-4 remainder loops under the swap
    # component, so the game loops while the trace still records a hit.
    s = strategies.from_components(
        [[1], [2, 1], [2, 3, 1], [2, 1, 4, 3], [2, 3, 4, 5, 1]]
    )
    trace = engine.play((3, 4, 1, 2, 5), s)
    assert trace.status == "looped"
    assert trace.first_hit == 1
    assert engine.rho((3, 4, 1, 2, 5), s) == 1


def test_relative_derangement():
    assert engine.relative_derangement((1, 2, 3, 4)) == ()
    assert engine.relative_derangement((2, 1, 4, 3)) == (2, 1, 4, 3)
    # fixed point at 1; remainder 3,4,2 on positions 2,3,4 ranks to (2,3,1)
    assert engine.relative_derangement((1, 3, 4, 2)) == (2, 3, 1)
    for p in itertools.permutations(range(1, 6)):
        rel = engine.relative_derangement(p)
        if rel:
            assert perms.is_derangement(rel)
        else:
            assert p == perms.identity(5)


def test_subgame_examples():
    assert engine.subgame_guesses((2, 1), CS4) == 1
    assert engine.subgame_guesses((4, 1, 2, 3), CS4) == 1
    assert engine.subgame_guesses((2, 1, 4, 3), CS4) == 2
    assert engine.subgame_guesses((3, 4, 1, 2), SWAP_TOP) == LOOPED


def test_subgame_rejects_non_derangements():
    with pytest.raises(ValueError):
        engine.subgame_guesses((1, 2), CS4)
    with pytest.raises(ValueError):
        engine.subgame_guesses((2, 1, 4, 3), strategies.cyclic_shift(3))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_playback_equals_one_plus_subgame_value(n):
    """Oracle equivalence: full-game rounds = 1 + T(relative derangement)."""
    fams = list(strategies.enumerate_strategies(n, "deranged"))
    for s in fams:
        memo = SubgameMemo()
        for secret in perms.enumerate_perms(n):
            direct = engine.solve_rounds(secret, s)
            rel = engine.relative_derangement(secret)
            if not rel:
                assert direct == 1
                continue
            t = engine.subgame_guesses(rel, s, memo)
            assert direct == (LOOPED if t == LOOPED else 1 + t)


@pytest.mark.parametrize("n", range(1, 7))
def test_cs_round_count_is_excedances_plus_one(n):
    cs = strategies.cyclic_shift(n)
    for secret in perms.enumerate_perms(n):
        assert engine.solve_rounds(secret, cs) == perms.excedance_count(secret) + 1


def test_memo_shared_across_matching_prefixes():
    memo = SubgameMemo()
    a = strategies.inductive((2, 3, 4, 5, 1))
    b = strategies.inductive((5, 1, 2, 3, 4))
    engine.subgame_guesses((2, 1, 4, 3), a, memo)
    assert memo.table(a, 4) is memo.table(b, 4)
    assert memo.table(a, 5) is not memo.table(b, 5)


def test_random_games_match_trace_and_fast_path():
    rng = random.Random(52134)
    for _ in range(200):
        n = rng.randint(2, 6)
        secret = tuple(rng.sample(range(1, n + 1), n))
        pool = [list(perms.enumerate_perms(i, "derangements")) for i in range(3, n + 1)]
        comps = [[1]] + ([[2, 1]] if n >= 2 else []) + [list(rng.choice(ps)) for ps in pool]
        s = strategies.from_components(comps)
        trace = engine.play(secret, s)
        fast = engine.solve_rounds(secret, s)
        assert fast == (trace.rounds if trace.solved else LOOPED)
