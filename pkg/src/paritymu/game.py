"""Labeled parity games with draws.

A game has Eva, Adam and draw positions, a set of moves, a rank on the
Eva/Adam positions, a variable label on every draw position and an
optional start.  Games are immutable values; every operation here is a
pure function returning a new game or a report.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping

EVA = "eva"
ADAM = "adam"
DRAW = "draw"

_VARIABLE = re.compile(r"^[A-Za-z0-9_]+$")


class GameError(ValueError):
    """Raised by operations whose precondition on a game does not hold."""


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def is_variable_name(token: str) -> bool:
    return bool(_VARIABLE.match(token))


@dataclass(frozen=True, eq=False)
class Game:
    """A labeled parity game with draws.

    ``params`` holds draw positions that carry no label: they are the
    fixpoint parameters introduced by :func:`predecessor` and get their
    value by position id during evaluation.
    """

    eva: frozenset = frozenset()
    adam: frozenset = frozenset()
    draw: frozenset = frozenset()
    moves: frozenset = frozenset()
    rank: Mapping = field(default_factory=dict)
    label: Mapping = field(default_factory=dict)
    start: str | None = None
    params: frozenset = frozenset()
    name: str = "G"

    @classmethod
    def build(cls, eva=(), adam=(), draw=(), moves=(), rank=None, label=None,
              start=None, params=(), name="G") -> "Game":
        return cls(frozenset(eva), frozenset(adam), frozenset(draw),
                   frozenset((s, t) for s, t in moves), dict(rank or {}),
                   dict(label or {}), start, frozenset(params), name)

    # structural views -------------------------------------------------

    @cached_property
    def positions(self) -> frozenset:
        return self.eva | self.adam | self.draw

    @cached_property
    def ranked(self) -> frozenset:
        return self.eva | self.adam

    @cached_property
    def succ(self) -> dict:
        out = {p: [] for p in self.positions}
        for s, t in sorted(self.moves):
            out.setdefault(s, []).append(t)
        return out

    @cached_property
    def pred(self) -> dict:
        out = {p: [] for p in self.positions}
        for s, t in sorted(self.moves):
            out.setdefault(t, []).append(s)
        return out

    def kind(self, p) -> str:
        if p in self.eva:
            return EVA
        if p in self.adam:
            return ADAM
        if p in self.draw:
            return DRAW
        raise KeyError(p)

    def with_start(self, start) -> "Game":
        return replace(self, start=start)

    def with_name(self, name: str) -> "Game":
        return replace(self, name=name)

    def variables(self) -> set:
        return set(self.label.values())

    # equality is structural; the name is presentation only
    def key(self):
        return self._key

    @cached_property
    def _key(self):
        return (self.eva, self.adam, self.draw, self.moves,
                frozenset(self.rank.items()), frozenset(self.label.items()),
                self.start, self.params)

    def __eq__(self, other):
        return isinstance(other, Game) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"Game({self.name!r}, |E|={len(self.eva)}, |A|={len(self.adam)}, "
                f"|D|={len(self.draw)}, |M|={len(self.moves)}, start={self.start!r})")


def validate(game: Game) -> list[str]:
    """Return every violated well-formedness condition; empty means valid."""
    problems = []
    if game.eva & game.adam:
        problems.append("overlapping position sets: eva/adam " + _few(game.eva & game.adam))
    if game.eva & game.draw:
        problems.append("overlapping position sets: eva/draw " + _few(game.eva & game.draw))
    if game.adam & game.draw:
        problems.append("overlapping position sets: adam/draw " + _few(game.adam & game.draw))
    for s, t in sorted(game.moves):
        if s in game.draw:
            problems.append(f"move from draw position {s} -> {t}")
        elif s not in game.ranked:
            problems.append(f"dangling move source {s} -> {t}")
        if t not in game.positions:
            problems.append(f"dangling move target {s} -> {t}")
    for p in sorted(game.ranked):
        r = game.rank.get(p)
        if r is None:
            problems.append(f"missing rank for {p}")
        elif not isinstance(r, int) or isinstance(r, bool) or r < 0:
            problems.append(f"rank of {p} is not a nonnegative integer: {r!r}")
    for p in sorted(set(game.rank) - game.ranked):
        problems.append(f"rank on unranked position {p}")
    if not game.params <= game.draw:
        problems.append("parameter positions outside draw set " + _few(game.params - game.draw))
    for p in sorted(game.draw - game.params):
        x = game.label.get(p)
        if x is None:
            problems.append(f"missing label for draw position {p}")
        elif not isinstance(x, str) or not is_variable_name(x):
            problems.append(f"bad variable name on {p}: {x!r}")
    for p in sorted(set(game.label) - (game.draw - game.params)):
        problems.append(f"label on non-draw position {p}")
    if game.start is not None and game.start not in game.positions:
        problems.append(f"dangling start {game.start}")
    return problems


def _few(items) -> str:
    items = sorted(items)
    return ", ".join(map(str, items[:5])) + (" ..." if len(items) > 5 else "")


def require_valid(game: Game) -> Game:
    problems = validate(game)
    if problems:
        raise GameError("; ".join(problems))
    return game


def max_priority(game: Game) -> int:
    return max((game.rank[p] for p in game.ranked), default=-1)


def top_positions(game: Game) -> frozenset:
    m = max_priority(game)
    if m < 0:
        raise GameError("game has no Eva or Adam positions")
    return frozenset(p for p in game.ranked if game.rank[p] == m)


def predecessor(game: Game) -> Game:
    """The game with its top-rank positions turned into parameter draws."""
    top = top_positions(game)
    return Game(
        eva=game.eva - top,
        adam=game.adam - top,
        draw=game.draw | top,
        moves=frozenset(m for m in game.moves if m[0] not in top),
        rank={p: r for p, r in game.rank.items() if p not in top},
        label=dict(game.label),
        start=game.start,
        params=game.params | top,
        name=game.name + "-",
    )


def is_bipartite(game: Game) -> bool:
    for s, t in game.moves:
        if t in game.draw:
            continue
        if (s in game.eva) == (t in game.eva):
            return False
    return True


@dataclass(frozen=True)
class GirthReport:
    girth: float  # math.inf when the undirected support is acyclic
    has_loops: bool
    has_two_cycles: bool

    def at_least(self, k: int) -> bool:
        return self.girth >= k and not self.has_loops and not self.has_two_cycles


def girth_undirected(vertices: Iterable, edges: Iterable) -> GirthReport:
    """Shortest cycle of the undirected support, loops and 2-cycles flagged apart."""
    vertices = list(vertices)
    edges = set(edges)
    loops = any(s == t for s, t in edges)
    two = any(s != t and (t, s) in edges for s, t in edges)
    adj = {v: set() for v in vertices}
    for s, t in edges:
        if s != t:
            adj.setdefault(s, set()).add(t)
            adj.setdefault(t, set()).add(s)
    best = math.inf
    for root in adj:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return GirthReport(best, loops, two)


def game_girth(game: Game) -> GirthReport:
    return girth_undirected(game.positions, game.moves)


def reachable(game: Game, start=None) -> set:
    start = game.start if start is None else start
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in game.succ.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def restrict_to_reachable(game: Game) -> Game:
    keep = reachable(game)
    return Game(
        eva=game.eva & keep, adam=game.adam & keep, draw=game.draw & keep,
        moves=frozenset(m for m in game.moves if m[0] in keep),
        rank={p: r for p, r in game.rank.items() if p in keep},
        label={p: x for p, x in game.label.items() if p in keep},
        start=game.start, params=game.params & keep, name=game.name,
    )


def rename(game: Game, mapping) -> Game:
    """Rename positions through ``mapping`` (a callable or a dict)."""
    f = mapping if callable(mapping) else mapping.__getitem__
    return Game(
        eva=frozenset(map(f, game.eva)),
        adam=frozenset(map(f, game.adam)),
        draw=frozenset(map(f, game.draw)),
        moves=frozenset((f(s), f(t)) for s, t in game.moves),
        rank={f(p): r for p, r in game.rank.items()},
        label={f(p): x for p, x in game.label.items()},
        start=None if game.start is None else f(game.start),
        params=frozenset(map(f, game.params)),
        name=game.name,
    )


def is_isomorphic(g: Game, h: Game) -> bool:
    """Bijection respecting kind, rank, moves, labels and start."""
    import networkx as nx

    def as_graph(game):
        dg = nx.DiGraph()
        for p in game.positions:
            tag = (game.kind(p), game.rank.get(p), game.label.get(p),
                   p in game.params, p == game.start)
            dg.add_node(p, tag=tag)
        dg.add_edges_from(game.moves)
        return dg

    if (len(g.positions), len(g.moves)) != (len(h.positions), len(h.moves)):
        return False
    return nx.is_isomorphic(as_graph(g), as_graph(h),
                            node_match=lambda a, b: a["tag"] == b["tag"])


# text format ----------------------------------------------------------


def serialize(game: Game) -> str:
    lines = [f"game {game.name}"]
    if game.start is not None:
        lines.append(f"start {game.start}")
    for p in sorted(game.eva):
        lines.append(f"eva {p} {game.rank[p]}")
    for p in sorted(game.adam):
        lines.append(f"adam {p} {game.rank[p]}")
    for p in sorted(game.draw):
        if p in game.params:
            lines.append(f"param {p}")
        else:
            lines.append(f"draw {p} {game.label[p]}")
    for s, t in sorted(game.moves):
        lines.append(f"move {s} {t}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_games(text: str) -> list[Game]:
    """Parse one or more ``game ... end`` blocks."""
    games = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if cur is None:
            if head != "game":
                raise ParseError(lineno, f"expected 'game', got {head!r}")
            cur = {"name": args[0] if args else "G", "start": None, "eva": [], "adam": [],
                   "draw": [], "params": [], "moves": [], "rank": {}, "label": {},
                   "seen": set()}
            continue
        if head == "end":
            games.append(Game.build(eva=cur["eva"], adam=cur["adam"],
                                    draw=cur["draw"] + cur["params"], moves=cur["moves"],
                                    rank=cur["rank"], label=cur["label"], start=cur["start"],
                                    params=cur["params"], name=cur["name"]))
            cur = None
            continue
        arity = {"start": 1, "eva": 2, "adam": 2, "draw": 2, "param": 1, "move": 2}
        if head not in arity:
            raise ParseError(lineno, f"unknown record {head!r}")
        if len(args) != arity[head]:
            raise ParseError(lineno, f"{head} expects {arity[head]} fields, got {len(args)}")
        if head == "start":
            cur["start"] = args[0]
        elif head == "move":
            cur["moves"].append((args[0], args[1]))
        else:
            pid = args[0]
            if pid in cur["seen"]:
                raise ParseError(lineno, f"duplicate id {pid}")
            cur["seen"].add(pid)
            if head in ("eva", "adam"):
                try:
                    r = int(args[1])
                except ValueError:
                    raise ParseError(lineno, f"rank field is not an integer: {args[1]!r}") from None
                if r < 0:
                    raise ParseError(lineno, f"rank field is negative: {r}")
                cur[head].append(pid)
                cur["rank"][pid] = r
            elif head == "draw":
                if not is_variable_name(args[1]):
                    raise ParseError(lineno, f"variable field is not a name: {args[1]!r}")
                cur["draw"].append(pid)
                cur["label"][pid] = args[1]
            else:
                cur["params"].append(pid)
    if cur is not None:
        raise ParseError(len(text.splitlines()), "missing 'end'")
    return games


def parse(text: str) -> Game:
    games = parse_games(text)
    if len(games) != 1:
        raise ParseError(1, f"expected exactly one game, found {len(games)}")
    return games[0]


def to_dot(game: Game) -> str:
    lines = [f'digraph "{game.name}" {{']
    for p in sorted(game.positions):
        if p in game.eva:
            attrs = f'shape=diamond, label="{p}:{game.rank[p]}"'
        elif p in game.adam:
            attrs = f'shape=box, label="{p}:{game.rank[p]}"'
        else:
            attrs = f'shape=circle, label="{game.label.get(p, "?")}"'
        if p == game.start:
            attrs += ", penwidth=2"
        lines.append(f'  "{p}" [{attrs}];')
    for s, t in sorted(game.moves):
        lines.append(f'  "{s}" -> "{t}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
