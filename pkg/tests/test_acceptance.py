"""Acceptance criteria, one test per criterion."""

import itertools
import random

import pytest

from paritymu.algebra import dual
from paritymu.entanglement import (Digraph, TreeWithBackEdges, canonical_cops_strategy,
                                   check_simple_path_lemma, cop_sets_along_tree_paths,
                                   ent_game_winner, ent_variant_winner, entanglement,
                                   random_simple_path, random_tree_with_back_edges,
                                   verify_cops_strategy)
from paritymu.game import game_girth, is_bipartite
from paritymu.lattice import chain, eval_closed_in_two, eval_env, sampling_set, value_at
from paritymu.preorder import (compose_strategies, copycat, decide_leq, leq, project_strategy,
                               verify_mediator_strategy)
from paritymu.synchronizing import (check_copycat_uniqueness, check_gn_lemmas, check_meeting_paths,
                                    extract_simulation, generate_gn, h_candidates,
                                    hierarchy_evidence, is_strongly_synchronizing)
from paritymu.corpus import VARIABLES


@pytest.fixture(scope="module")
def leq_table(corpus):
    return {(i, j): leq(a, b) for i, a in enumerate(corpus) for j, b in enumerate(corpus)}


def test_ac01_entanglement_of_gn():
    for n in (1, 2, 3):
        assert entanglement(generate_gn(n).game) == n


def test_ac02_gn_girth_and_bipartite():
    for n in (1, 2, 3, 4):
        G = generate_gn(n).game
        assert is_bipartite(G)
        assert game_girth(G).girth == 6


def test_ac03_gn_strongly_synchronizing():
    for n in (1, 2):
        assert is_strongly_synchronizing(generate_gn(n).game).ok
        rep = check_gn_lemmas(n)
        assert rep.exact, (rep.lemma_violations[:5], rep.unpredicted_gaps[:5])


def test_ac04_preorder_laws(corpus, leq_table):
    assert len(corpus) >= 200
    # reflexivity, with copycat as the witness
    for g in corpus:
        assert decide_leq(g, g).holds
        assert verify_mediator_strategy(g, g, copycat(g)).ok
    # duality on every ordered pair
    for (i, j), v in leq_table.items():
        assert v == leq(dual(corpus[j]), dual(corpus[i]))
    # every positive answer comes with a verifying witness
    for (i, j), v in leq_table.items():
        if v:
            res = decide_leq(corpus[i], corpus[j])
            assert verify_mediator_strategy(corpus[i], corpus[j], res.strategy).ok
    # transitivity on sampled composable triples, with composed witnesses
    rng = random.Random(0)
    ups = {i: [j for j in range(len(corpus)) if leq_table[i, j] and j != i] for i in range(len(corpus))}
    triples = 0
    while triples < 400:
        i = rng.randrange(len(corpus))
        if not ups[i]:
            continue
        j = rng.choice(ups[i])
        if not ups[j]:
            continue
        k = rng.choice(ups[j])
        a, b, c = corpus[i], corpus[j], corpus[k]
        assert leq_table[i, k]
        T = compose_strategies(decide_leq(a, b).strategy, decide_leq(b, c).strategy, a, b, c)
        assert verify_mediator_strategy(a, c, project_strategy(T, a, b, c)).ok
        triples += 1


def test_ac05_soundness_against_lattices(corpus, leq_table):
    pairs = [p for p, v in leq_table.items() if v]
    for lat in sampling_set(seed=0, randoms=2):
        rng = random.Random(len(lat))
        for _ in range(100):
            env = {x: rng.choice(lat.names) for x in VARIABLES}
            vals = [eval_env(g, lat, env) for g in corpus]
            bad = [(i, j) for i, j in pairs if not lat.le[vals[i]][vals[j]]]
            assert not bad, (lat.name, env, bad[:3])


def test_ac06_eval_matches_closed_evaluation(corpus):
    two = chain(2)
    checked = 0
    for g in corpus:
        draws = sorted(g.draw)
        assert len(draws) <= 10
        for bits in itertools.product((0, 1), repeat=len(draws)):
            v = dict(zip(draws, bits))
            assert value_at(g, two, v) == eval_closed_in_two(g, v)
            checked += 1
    assert checked > len(corpus)


def test_ac07_variant_matches_entanglement_game():
    rng = random.Random(0)
    for _ in range(500):
        n = rng.randint(1, 5)
        p = rng.choice((0.2, 0.35, 0.5))
        dg = Digraph.from_edges(range(n), [(a, b) for a in range(n) for b in range(n) if rng.random() < p])
        for k in range(4):
            assert ent_game_winner(dg, k) == ent_variant_winner(dg, k)


@pytest.mark.parametrize("n", [1, 2])
def test_ac08_extraction_pipeline(n):
    G = generate_gn(n).game
    cands = h_candidates(G)
    assert len(cands) >= 5
    rep = hierarchy_evidence(n, cands)
    assert rep.sync.ok
    for row in rep.rows:
        assert row.equivalent, row.name
        assert row.ok, (row.name, row.note)
        assert row.ent_g <= row.ent_h + 2
        assert row.invariant_checks > 0
    meeting = check_meeting_paths(G, [extract_simulation(G, H) for _, H in cands])
    assert meeting.ok


def test_ac09_copycat_uniqueness():
    for n in (1, 2):
        ok, checked, bad = check_copycat_uniqueness(generate_gn(n).game)
        assert ok and checked > 0, bad[:3]


def test_ac10_trees_with_back_edges():
    rng = random.Random(0)
    paths = 0
    while paths < 1000:
        t = random_tree_with_back_edges(rng, rng.randint(1, 14), 0.3)
        for _ in range(5):
            assert check_simple_path_lemma(t, random_simple_path(rng, t))
            paths += 1
    golden = [
        ({0: None, 1: 0, 2: 1}, {(2, 0)}, 1),
        ({0: None, 1: 0, 2: 1, 3: 2}, {(1, 1), (2, 0), (3, 2)}, 2),
        ({0: None, 1: 0, 2: 1, 3: 2}, {(3, 0), (3, 1), (3, 2)}, 3),
    ]
    for parent, back, fb in golden:
        t = TreeWithBackEdges(0, parent, frozenset(back))
        assert t.feedback() == fb and t.returns() == {r for _, r in back}
    for _ in range(120):
        t = random_tree_with_back_edges(rng, rng.randint(2, 10), 0.35)
        k = t.feedback()
        for retire in (False, True):
            strat = canonical_cops_strategy(t, retire=retire)
            assert verify_cops_strategy(t.digraph(), k, strat, retire=retire).ok
        sets = cop_sets_along_tree_paths(t, canonical_cops_strategy(t, retire=True))
        assert all(sets[v] == t.guarded_returns(v) for v in sets)
