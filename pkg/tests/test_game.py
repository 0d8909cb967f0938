import math

import pytest

from paritymu.game import (Game, ParseError, game_girth, girth_undirected, is_bipartite,
                           is_isomorphic, parse, parse_games, predecessor, rename, serialize,
                           to_dot, top_positions, validate, max_priority)

SAMPLE = """
game sample
start a
eva a 2
adam b 1
draw d x
move a b
move b a
move b d
end
"""


def test_parse_and_serialize_roundtrip(corpus):
    for g in corpus:
        back = parse(serialize(g))
        assert back == g
        assert back.name == g.name


def test_parse_sample():
    g = parse(SAMPLE)
    assert g.start == "a"
    assert g.kind("a") == "eva" and g.kind("d") == "draw"
    assert g.succ["b"] == ["a", "d"]
    assert validate(g) == []


@pytest.mark.parametrize("text, fragment", [
    ("eva a 1\nend\n", "expected 'game'"),
    ("game g\neva a x\nend\n", "not an integer"),
    ("game g\neva a -1\nend\n", "negative"),
    ("game g\neva a 1\neva a 2\nend\n", "duplicate"),
    ("game g\nfoo a\nend\n", "unknown record"),
    ("game g\neva a 1\n", "missing 'end'"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse(text)


def test_parse_many_blocks():
    assert len(parse_games(SAMPLE + SAMPLE)) == 2


def test_validate_reports_each_problem():
    g = Game.build(eva=["a"], draw=["d"], moves=[("d", "a"), ("a", "zz")], start="q")
    problems = validate(g)
    joined = "\n".join(problems)
    for piece in ("move from draw", "dangling move target", "missing rank", "missing label", "dangling start"):
        assert piece in joined


def test_predecessor_drops_top_priority():
    g = parse(SAMPLE)
    assert max_priority(g) == 2
    assert top_positions(g) == {"a"}
    p = predecessor(g)
    assert "a" in p.params and max_priority(p) == 1


def test_girth_and_bipartite():
    square = Game.build(eva=["a", "c"], adam=["b", "d"], rank=dict.fromkeys("abcd", 0),
                        moves=[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert is_bipartite(square)
    assert game_girth(square).girth == 4
    assert not game_girth(square).at_least(5)
    tri = girth_undirected("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    assert tri.girth == 3
    assert girth_undirected("ab", [("a", "b")]).girth == math.inf


def test_girth_flags_loops_and_two_cycles():
    g = girth_undirected("ab", [("a", "a"), ("a", "b"), ("b", "a")])
    assert g.has_loops and g.has_two_cycles
    assert not g.at_least(3)


def test_rename_is_isomorphic(corpus):
    for g in corpus[:30]:
        assert is_isomorphic(g, rename(g, lambda p: "r" + p))


def test_dot_labels():
    dot = to_dot(parse(SAMPLE))
    assert 'shape=diamond, label="a:2", penwidth=2' in dot
    assert '"d" [shape=circle, label="x"]' in dot
