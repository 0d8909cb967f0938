import random

import pytest

from paritymu.algebra import (BOTTOM, TOP, bind_variable, compose, dual, fixpoint, fixpoint_rank,
                              game_sum, join_of, meet_of, pad_initial, substitute, variable_game,
                              FixpointSystem)
from paritymu.game import GameError, is_isomorphic, validate
from paritymu.lattice import boolean, chain, diamond, eval_env
from paritymu.preorder import equiv, leq


def _random_map(rng, sources, targets):
    return {d: rng.choice(sorted(targets)) for d in sorted(sources)}


def test_compose_is_associative_up_to_renaming(corpus):
    rng = random.Random(3)
    checked = 0
    while checked < 60:
        F, G, H = (rng.choice(corpus) for _ in range(3))
        phi = _random_map(rng, F.draw, G.positions)
        psi = _random_map(rng, G.draw, H.positions)
        left = compose(F, {d: _inner_of(G, psi, p) for d, p in phi.items()}, compose(G, psi, H))
        right = compose(compose(F, phi, G), {"1." + d: p for d, p in psi.items()}, H)
        assert not validate(left) and not validate(right)
        assert is_isomorphic(left, right)
        checked += 1


def _inner_of(G, psi, p):
    # position of compose(G, psi, H) standing for p
    return "1." + psi[p] if p in G.draw else "0." + p


def test_compose_rejects_partial_maps():
    with pytest.raises(GameError):
        compose(meet_of(["x", "y"]), {"d0": "x"}, variable_game("x"))


def test_sum_has_no_start():
    s = game_sum([meet_of(["x"]), join_of(["y"])])
    assert s.start is None and len(s.positions) == 4


def test_fixpoint_rank_parity():
    assert fixpoint_rank("mu", -1) == 1 and fixpoint_rank("nu", -1) == 0
    assert fixpoint_rank("mu", 2) == 3 and fixpoint_rank("mu", 3) == 3
    assert fixpoint_rank("nu", 3) == 4 and fixpoint_rank("nu", 4) == 4
    with pytest.raises(ValueError):
        fixpoint_rank("lambda", 0)


def test_fixpoint_checks_system():
    g = meet_of(["x", "y"])
    with pytest.raises(GameError):
        fixpoint("mu", FixpointSystem.build(eva=["p0"]), g)


@pytest.mark.parametrize("lat", [chain(3), boolean(2), diamond()], ids=lambda l: l.name)
def test_textbook_fixpoints(lat):
    body_and = meet_of(["x", "y"])
    body_or = join_of(["x", "y"])
    for y in lat.names:
        env = {"y": y}
        assert lat.names[eval_env(bind_variable("nu", "x", body_and), lat, env)] == y
        assert lat.names[eval_env(bind_variable("mu", "x", body_or), lat, env)] == y
        assert eval_env(bind_variable("mu", "x", body_and), lat, env) == lat.bottom
        assert eval_env(bind_variable("nu", "x", body_or), lat, env) == lat.top


def test_substitute_matches_evaluation():
    lat = boolean(2)
    outer = meet_of(["x", "y"])
    g = substitute(outer, {"x": join_of(["y", "z"])})
    for y in lat.names:
        for z in lat.names:
            env = {"y": y, "z": z}
            want = lat.meet[lat.join[lat.index[y]][lat.index[z]]][lat.index[y]]
            assert eval_env(g, lat, env) == want


def test_constants():
    assert leq(BOTTOM, variable_game("x")) and leq(variable_game("x"), TOP)
    assert not leq(TOP, BOTTOM)


def test_dual_swaps_owners_and_shifts_ranks(corpus):
    for g in corpus[:50]:
        d = dual(g)
        assert d.eva == g.adam and d.adam == g.eva
        assert all(d.rank[p] == g.rank[p] + 1 for p in g.ranked)
        assert equiv(dual(d), g)


def test_pad_keeps_equivalence(corpus):
    for g in corpus[:50]:
        if g.start in g.draw:
            continue
        p = pad_initial(g)
        assert p.kind(p.start) == g.kind(g.start)
        assert equiv(p, g)
