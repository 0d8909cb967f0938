import random

import pytest

from paritymu.algebra import bind_variable, dual, join_of, meet_of, variable_game
from paritymu.corpus import meet_join_corpus
from paritymu.lattice import eval_env, sampling_set
from paritymu.preorder import (MEDIATOR, OPPONENTS, MediatorGame, compose_strategies, copycat,
                               decide_leq, equiv, leq, project_strategy, solitaire_traps,
                               verify_mediator_strategy, verify_three_board_strategy)

X, Y = variable_game("x"), variable_game("y")
AND, OR = meet_of(["x", "y"]), join_of(["x", "y"])


def test_variables():
    assert leq(X, X) and not leq(X, Y) and not leq(Y, X)


def test_meet_below_join_with_witness():
    res = decide_leq(AND, OR)
    assert res.holds
    assert verify_mediator_strategy(AND, OR, res.strategy).ok
    assert not leq(OR, AND)


def test_projections():
    assert leq(AND, X) and leq(X, OR)
    assert not leq(X, AND) and not leq(OR, X)


def test_copycat_wins_on_corpus(corpus):
    for g in corpus:
        assert verify_mediator_strategy(g, g, copycat(g)).ok, g.name


def test_unpointed_games_rejected():
    with pytest.raises(ValueError):
        decide_leq(AND.with_start(None), OR)


def test_clauses():
    mg = MediatorGame(AND, OR)
    assert mg.clause(("p0", "p0")) == "A x ED" and mg.owner(("p0", "p0")) == MEDIATOR
    assert mg.clause(("d0", "p0")) == "AD x E"
    assert mg.clause(("d0", "d0")) == "L(O)" and mg.owner(("d0", "d0")) == OPPONENTS
    # Mediator is stuck on draws with different labels
    assert mg.clause(("d0", "d1")) == "L(M)" and not mg.moves(("d0", "d1"))
    assert MediatorGame(OR, AND).clause(("p0", "p0")) == "E x *"


def test_copycat_fails_to_show_non_reflexive_game():
    # an Eva-only even cycle: Opponents loop forever on one board
    g = bind_variable("nu", "x", join_of(["x", "y"]), owner="eva")
    assert solitaire_traps(g)
    assert not leq(g, g)


def test_meet_join_corpus_composites_verify():
    games = meet_join_corpus()
    composites = 0
    for a in games:
        for b in games:
            if not leq(a, b):
                continue
            for c in games:
                if not leq(b, c):
                    continue
                S, S2 = decide_leq(a, b).strategy, decide_leq(b, c).strategy
                T = compose_strategies(S, S2, a, b, c)
                assert verify_three_board_strategy(a, b, c, T).ok
                assert verify_mediator_strategy(a, c, project_strategy(T, a, b, c)).ok
                assert leq(a, c)
                composites += 1
    assert composites > 50


def test_duality_on_corpus_sample(corpus):
    rng = random.Random(4)
    for _ in range(300):
        g, h = rng.choice(corpus), rng.choice(corpus)
        assert leq(g, h) == leq(dual(h), dual(g))


def test_soundness_sample(corpus):
    lat = sampling_set()[3]
    rng = random.Random(5)
    for _ in range(200):
        g, h = rng.choice(corpus), rng.choice(corpus)
        if leq(g, h):
            env = {x: rng.choice(lat.names) for x in "xyz"}
            assert lat.le[eval_env(g, lat, env)][eval_env(h, lat, env)]


def test_equiv_is_symmetric(small_corpus):
    for g in small_corpus:
        for h in small_corpus:
            assert equiv(g, h) == equiv(h, g)
