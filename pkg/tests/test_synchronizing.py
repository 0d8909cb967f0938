import pytest

from paritymu.algebra import join_of, meet_of, pad_initial
from paritymu.entanglement import Digraph
from paritymu.game import game_girth, is_bipartite, validate
from paritymu.preorder import equiv
from paritymu.simulation import check_star_property, check_weak_simulation
from paritymu.synchronizing import (ExtractionError, check_copycat_uniqueness, check_gn_lemmas,
                                    check_meeting_paths, duplicate_and_merge, extract_simulation,
                                    generate_gn, h_candidates, hierarchy_evidence,
                                    is_strongly_synchronizing, run_chain, tree_game)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gn_shape(n):
    G = generate_gn(n).game
    assert not validate(G)
    assert len(G.ranked) == n + 5 * n * n
    assert len(G.draw) == len(G.ranked)
    assert set(G.rank.values()) == {1}
    assert is_bipartite(G) and game_girth(G).girth == 6


def test_gn_rejects_zero():
    with pytest.raises(ValueError):
        generate_gn(0)


def test_non_synchronizing_game():
    g = meet_of(["x", "x"])  # two draws with the same label are equivalent
    rep = is_strongly_synchronizing(g)
    assert not rep.ok and rep.condition1_violations


@pytest.mark.parametrize("n", [1, 2])
def test_lemma_sweep_is_exact(n):
    rep = check_gn_lemmas(n)
    assert rep.exact, (rep.lemma_violations[:5], rep.unpredicted_gaps[:5])


def test_copycat_uniqueness(g1):
    ok, checked, bad = check_copycat_uniqueness(g1)
    assert ok and checked > 0 and not bad


def test_extraction_on_itself(g2):
    ex = extract_simulation(g2, g2)
    Gd = Digraph.from_game(g2)
    assert not ex.padded
    assert ex.sim.rel == {(g, g) for g in g2.positions}
    assert check_weak_simulation(Gd, Gd, ex.sim).ok
    assert check_star_property(Gd, Gd, ex.sim).ok


def test_extraction_pads_when_kinds_differ(g1):
    H = pad_initial(g1, kind="eva")
    ex = extract_simulation(g1, H)
    assert ex.padded and ex.H.kind(ex.H.start) == "adam"


def test_extraction_needs_equivalence(g1):
    with pytest.raises(ExtractionError):
        extract_simulation(g1, meet_of(["x_0_0_0"]))


def test_meeting_paths(g1):
    rep = check_meeting_paths(g1, [extract_simulation(g1, g1)])
    assert rep.ok and rep.item1_checked > 0


def test_candidates_are_equivalent(g1):
    for name, H in h_candidates(g1):
        assert not validate(H), name
        assert equiv(g1, H), name


def test_tree_game_and_duplicate(g1):
    t = tree_game(g1)
    assert len(t.positions) == len(g1.positions)
    d = duplicate_and_merge(g1)
    assert len(d.positions) == len(g1.positions) + 1


def test_chain_rejects_inequivalent(g1):
    row = run_chain(g1, join_of(["x"]), "bad")
    assert not row.equivalent and not row.ok


def test_evidence_g1():
    rep = hierarchy_evidence(1)
    assert rep.ok
    assert len(rep.rows) >= 5
