import itertools
import random

import pytest

from paritymu.arena import BudgetExceeded
from paritymu.entanglement import (PRE, CanonicalCops, Digraph, EntGame, LiteralCops, TreeError,
                                   TreeWithBackEdges, canonical_cops_strategy, check_simple_path_lemma,
                                   cop_sets_along_tree_paths, cyclic_core, ent_game_winner,
                                   ent_variant_winner, entanglement, is_cover, random_simple_path,
                                   random_tree_with_back_edges, solve_ent, unravel,
                                   verify_cops_strategy)


def cycle(n):
    return Digraph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])


def clique(n):
    return Digraph.from_edges(range(n), [(i, j) for i in range(n) for j in range(n) if i != j])


def random_digraph(rng, n, p=0.35, loops=True):
    edges = [(a, b) for a in range(n) for b in range(n) if (a != b or loops) and rng.random() < p]
    return Digraph.from_edges(range(n), edges)


@pytest.mark.parametrize("dg, want", [
    (Digraph.from_edges(range(3), [(0, 1), (1, 2)]), 0),
    (Digraph.from_edges([0], [(0, 0)]), 1),
    (cycle(5), 1),
    (clique(3), 2),
    (clique(4), 3),
])
def test_known_entanglement(dg, want):
    assert entanglement(dg) == want
    assert entanglement(dg, retire=True) == want


def test_cyclic_core_drops_acyclic_parts():
    dg = Digraph.from_edges(range(4), [(0, 1), (1, 0), (1, 2), (3, 0)])
    assert set(cyclic_core(dg).vertices) == {0, 1, 3}  # 2 is a dead end


def test_solvers_agree_and_are_monotone():
    rng = random.Random(7)
    for _ in range(80):
        dg = random_digraph(rng, rng.randint(1, 5))
        wins = []
        for k in range(4):
            a = solve_ent(dg, k, method="vector").cops_win
            b = solve_ent(dg, k, method="bfs").cops_win
            c = ent_variant_winner(dg, k)
            assert a == b == c
            wins.append(a)
        assert wins == sorted(wins)  # Cops winning at k implies winning at k + 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        solve_ent(clique(6), 3, budget=10)


def test_ent_game_moves():
    g = EntGame(cycle(3), 1, retire=False)
    starts = [m[0] for m in g.moves(PRE)]
    assert len(starts) == 3
    v = starts[0]
    options = [m[0][1] for m in g.moves(v)]
    assert frozenset() in options and frozenset({v[0]}) in options


# trees with back edges --------------------------------------------------------


def test_tree_validation():
    with pytest.raises(TreeError):
        TreeWithBackEdges(0, {0: None, 1: 0, 2: 0}, frozenset({(1, 2)}))
    with pytest.raises(TreeError):
        TreeWithBackEdges(0, {0: 1, 1: 0})


# golden feedback values
GOLDEN_TREES = [
    ({0: None, 1: 0, 2: 1}, set(), set(), 0),
    ({0: None, 1: 0, 2: 1}, {(2, 0)}, {0}, 1),
    ({0: None, 1: 0, 2: 0}, {(1, 0), (2, 0)}, {0}, 1),
    ({0: None, 1: 0, 2: 1, 3: 2}, {(1, 1), (2, 0), (3, 2)}, {0, 1, 2}, 2),
    ({0: None, 1: 0, 2: 1, 3: 2}, {(3, 0), (3, 1), (3, 2)}, {0, 1, 2}, 3),
    ({0: None, 1: 0, 2: 1, 3: 0, 4: 3}, {(2, 1), (4, 3)}, {1, 3}, 1),
]


@pytest.mark.parametrize("parent, back, returns, feedback", GOLDEN_TREES)
def test_feedback_golden(parent, back, returns, feedback):
    t = TreeWithBackEdges(0, parent, frozenset(back))
    assert t.returns() == returns
    assert t.feedback() == feedback
    assert entanglement(t.digraph()) <= feedback


def test_guarded_returns_by_hand():
    t = TreeWithBackEdges(0, {0: None, 1: 0, 2: 1, 3: 2}, frozenset({(1, 1), (2, 0), (3, 2)}))
    assert t.guarded_returns(2) == {0, 2}
    assert t.guarded_returns(3) == {2}
    assert t.guarded_returns(1) == {0, 1}


def test_simple_path_lemma():
    rng = random.Random(11)
    for _ in range(300):
        t = random_tree_with_back_edges(rng, rng.randint(1, 12), 0.3)
        assert check_simple_path_lemma(t, random_simple_path(rng, t))


@pytest.mark.parametrize("retire", [False, True])
def test_canonical_strategy_wins(retire):
    rng = random.Random(13)
    for _ in range(60):
        t = random_tree_with_back_edges(rng, rng.randint(2, 9), 0.35)
        strat = canonical_cops_strategy(t, retire=retire)
        assert verify_cops_strategy(t.digraph(), t.feedback(), strat, retire=retire).ok


def test_canonical_cop_sets_are_guarded_returns():
    rng = random.Random(17)
    for _ in range(60):
        t = random_tree_with_back_edges(rng, rng.randint(2, 10), 0.35)
        sets = cop_sets_along_tree_paths(t, canonical_cops_strategy(t, retire=True))
        assert all(sets[v] == t.guarded_returns(v) for v in sets)


def test_canonical_strategy_needs_feedback():
    t = TreeWithBackEdges(0, {0: None, 1: 0}, frozenset({(1, 0), (1, 1)}))
    with pytest.raises(ValueError):
        CanonicalCops(t, 1)


def test_literal_closed_form_loses_here():
    # the literal "at most k returns" reading drops the cop on 0 at vertex 2
    t = TreeWithBackEdges(0, {0: None, 1: 0, 2: 1, 3: 2}, frozenset({(1, 1), (2, 0), (3, 2)}))
    k = t.feedback()
    assert t.literal_cop_set(2, k) == {1, 2} != t.guarded_returns(2)
    for retire in (False, True):
        assert not verify_cops_strategy(t.digraph(), k, LiteralCops(t, k, retire), retire=retire).ok
        assert verify_cops_strategy(t.digraph(), k, CanonicalCops(t, k, retire), retire=retire).ok


# unravellings -----------------------------------------------------------------


@pytest.mark.parametrize("policy", ["eager", "root-not-return", "repeat"])
def test_unravel_is_cover(policy):
    rng = random.Random(19)
    for _ in range(40):
        dg = random_digraph(rng, rng.randint(1, 5))
        root = dg.vertices[0]
        un = unravel(dg, root, policy=policy)
        assert is_cover(un.tree.digraph(), dg, un.image, 0, root)
        if policy == "root-not-return":
            assert not un.tree.has_predecessor(0)
        seen = set(un.image.values())
        assert entanglement(dg.induced(seen)) <= un.tree.feedback()


def test_unravel_rejects_policy():
    with pytest.raises(ValueError):
        unravel(cycle(2), 0, policy="lazy")
