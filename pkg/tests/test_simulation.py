import random

import pytest

from paritymu.entanglement import Digraph, unravel
from paritymu.simulation import (StarShapeError, WeakSimulation, check_star_property,
                                 check_weak_simulation, cops_strategy_from_simulation,
                                 identity_simulation, lift_through_cover, parse_simulation,
                                 serialize_simulation, star_data, subdivision,
                                 verify_entanglement_bound, verify_simulation_strategy)

SQUARE = Digraph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
BOWTIE = Digraph.from_edges(range(7), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)])


def test_identity_is_star_weak():
    for G in (SQUARE, BOWTIE):
        sim = identity_simulation(G)
        assert check_weak_simulation(G, G, sim).ok
        assert check_star_property(G, G, sim).ok


def test_subdivision_is_star_weak():
    H, sim = subdivision(BOWTIE)
    assert check_weak_simulation(BOWTIE, H, sim).ok
    assert check_star_property(BOWTIE, H, sim).ok
    data = star_data(BOWTIE, H, sim)
    # the middle vertex of a subdivided edge sees exactly that edge
    assert data.C["0~1"] == {(0, 1)}
    assert data.f["0~1"] == 1
    assert data.center[0] == 0


def test_weak_simulation_problems_are_reported():
    bad = WeakSimulation(frozenset({("a", "a")}), {("a", "b", "a"): ("a", "c")})
    rep = check_weak_simulation(SQUARE, SQUARE, bad)
    assert not rep.ok and rep.problems


def test_shared_hub_is_not_star():
    # a->b and c->d are both simulated through the hub z
    H = Digraph.from_edges("abcdz", [("a", "z"), ("z", "b"), ("c", "z"), ("z", "d"),
                                     ("b", "c"), ("d", "a")])
    sim = WeakSimulation(frozenset((g, g) for g in "abcd"),
                         {("a", "b", "a"): ("a", "z", "b"), ("c", "d", "c"): ("c", "z", "d"),
                          ("b", "c", "b"): ("b", "c"), ("d", "a", "d"): ("d", "a")})
    assert check_weak_simulation(SQUARE, H, sim).ok
    assert not check_star_property(SQUARE, H, sim).ok
    with pytest.raises(StarShapeError):
        star_data(SQUARE, H, sim)


def test_text_roundtrip():
    H, sim = subdivision(BOWTIE)
    text = serialize_simulation(WeakSimulation(
        frozenset((str(g), str(h)) for g, h in sim.rel),
        {tuple(map(str, k)): tuple(map(str, v)) for k, v in sim.sigma.items()}))
    back = parse_simulation(text)
    assert serialize_simulation(back) == text
    with pytest.raises(ValueError):
        parse_simulation("path a b c d\n")


def test_lift_keeps_star_property():
    H, sim = subdivision(BOWTIE)
    un = unravel(H, 0, policy="root-not-return")
    K = un.tree.digraph()
    lifted = lift_through_cover(BOWTIE, sim, K, un.image)
    assert check_weak_simulation(BOWTIE, K, lifted).ok
    assert check_star_property(BOWTIE, K, lifted).ok


@pytest.mark.parametrize("G", [SQUARE, BOWTIE], ids=["square", "bowtie"])
def test_cops_strategy_from_simulation(G):
    for H, sim in ((G, identity_simulation(G)), subdivision(G)):
        cops = cops_strategy_from_simulation(G, H, sim)
        res = verify_simulation_strategy(cops)
        assert res.ok, res.reason
        assert cops.checked > 0


def test_entanglement_bound_reports():
    H, _ = subdivision(BOWTIE)
    rep = verify_entanglement_bound(BOWTIE, H)
    assert rep.holds and rep.ent_g == 1 and rep.ent_h == 1
