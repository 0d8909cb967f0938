"""Operations of the games mu-calculus: meets, joins, variables,
composition, sums and fixed points.

Binary and n-ary operations keep operand positions apart by prefixing
ids with the operand index ("0.", "1.", ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .game import ADAM, DRAW, EVA, Game, GameError, max_priority, rename


def meet_of(labels, name: str = "meet") -> Game:
    """One Adam position of rank 0 with a move to a draw for each label."""
    return _junction(labels, adam=True, name=name)


def join_of(labels, name: str = "join") -> Game:
    return _junction(labels, adam=False, name=name)


def _junction(labels, adam: bool, name: str) -> Game:
    labels = list(labels)
    draws = [f"d{i}" for i in range(len(labels))]
    owner = {"adam": ["p0"]} if adam else {"eva": ["p0"]}
    return Game.build(
        **owner,
        draw=draws,
        moves=[("p0", d) for d in draws],
        rank={"p0": 0},
        label=dict(zip(draws, labels)),
        start="p0",
        name=name,
    )


def variable_game(x: str) -> Game:
    return Game.build(draw=["x"], label={"x": x}, start="x", name=x)


TOP = meet_of([], name="top")
BOTTOM = join_of([], name="bottom")


def compose(outer: Game, psi, inner: Game, name: str | None = None) -> Game:
    """Substitute ``inner`` into the draw positions of ``outer`` along ``psi``.

    ``psi`` maps every draw position of ``outer`` to a position of
    ``inner`` (unprefixed ids).  Ranks are kept; the draws of ``outer``
    disappear and moves into them are rerouted.
    """
    psi = dict(psi)
    missing = outer.draw - set(psi)
    if missing:
        raise GameError(f"substitution not total: missing {sorted(missing)}")
    bad = [v for v in psi.values() if v not in inner.positions]
    if bad:
        raise GameError(f"substitution targets outside inner game: {sorted(bad)}")
    a, b = "0.", "1."
    moves = set()
    for s, t in outer.moves:
        if t in outer.draw:
            moves.add((a + s, b + psi[t]))
        else:
            moves.add((a + s, a + t))
    moves |= {(b + s, b + t) for s, t in inner.moves}
    if outer.start is None:
        start = None
    elif outer.start in outer.draw:
        start = b + psi[outer.start]
    else:
        start = a + outer.start
    rank = {a + p: r for p, r in outer.rank.items()}
    rank.update({b + p: r for p, r in inner.rank.items()})
    return Game(
        eva=frozenset(a + p for p in outer.eva) | frozenset(b + p for p in inner.eva),
        adam=frozenset(a + p for p in outer.adam) | frozenset(b + p for p in inner.adam),
        draw=frozenset(b + p for p in inner.draw),
        moves=frozenset(moves),
        rank=rank,
        label={b + p: x for p, x in inner.label.items()},
        start=start,
        params=frozenset(b + p for p in inner.params),
        name=name or f"{outer.name}[{inner.name}]",
    )


def substitute(outer: Game, games: dict, name: str | None = None) -> Game:
    """Replace each variable ``x`` of ``outer`` by the game ``games[x]``.

    Variables not in ``games`` stay free.  This is compose with the sum
    of the substituted games (plus one variable game per kept variable).
    """
    parts = []
    where = {}
    for x in sorted(outer.variables()):
        g = games.get(x, variable_game(x))
        where[x] = len(parts)
        parts.append(g)
    inner = game_sum(parts)
    psi = {}
    for d in outer.draw:
        x = outer.label[d]
        i = where[x]
        psi[d] = f"{i}.{parts[i].start}"
    return compose(outer, psi, inner, name=name)


def game_sum(games, name: str = "sum") -> Game:
    """Disjoint union; the result has no start."""
    games = list(games)
    if not games:
        return Game(name=name)
    parts = [rename(g, lambda p, i=i: f"{i}.{p}") for i, g in enumerate(games)]
    return Game(
        eva=frozenset().union(*(g.eva for g in parts)),
        adam=frozenset().union(*(g.adam for g in parts)),
        draw=frozenset().union(*(g.draw for g in parts)),
        moves=frozenset().union(*(g.moves for g in parts)),
        rank={p: r for g in parts for p, r in g.rank.items()},
        label={p: x for g in parts for p, x in g.label.items()},
        start=None,
        params=frozenset().union(*(g.params for g in parts)),
        name=name,
    )


@dataclass(frozen=True)
class FixpointSystem:
    eva: frozenset = frozenset()
    adam: frozenset = frozenset()
    moves: frozenset = field(default_factory=frozenset)

    @classmethod
    def build(cls, eva=(), adam=(), moves=()):
        return cls(frozenset(eva), frozenset(adam), frozenset(moves))


def fixpoint_rank(theta: str, m: int) -> int:
    if theta not in ("mu", "nu"):
        raise ValueError(f"theta must be 'mu' or 'nu', got {theta!r}")
    if m < 0:
        return 1 if theta == "mu" else 0
    want = 1 if theta == "mu" else 0
    return m if m % 2 == want else m + 1


def fixpoint(theta: str, system: FixpointSystem, game: Game, name: str | None = None) -> Game:
    new = system.eva | system.adam
    if system.eva & system.adam:
        raise GameError("system sets E and A overlap")
    if not new <= (game.draw - game.params):
        raise GameError(f"system positions not labelled draws: {sorted(new - game.draw)}")
    for s, t in system.moves:
        if s not in new:
            raise GameError(f"system move source {s} not in E or A")
        if t not in game.positions:
            raise GameError(f"system move target {t} not a position")
    r = fixpoint_rank(theta, max_priority(game))
    rank = dict(game.rank)
    rank.update({p: r for p in new})
    return Game(
        eva=game.eva | system.eva,
        adam=game.adam | system.adam,
        draw=game.draw - new,
        moves=game.moves | system.moves,
        rank=rank,
        label={p: x for p, x in game.label.items() if p not in new},
        start=game.start,
        params=game.params,
        name=name or f"{theta}.{game.name}",
    )


def bind_variable(theta: str, x: str, game: Game, owner: str = EVA) -> Game:
    """The usual ``theta x. game``: every draw labelled ``x`` loops to the start."""
    draws = sorted(d for d in game.draw if game.label.get(d) == x)
    if game.start in draws:
        raise GameError("start is a bound variable; the fixed point is degenerate")
    system = FixpointSystem.build(
        eva=draws if owner == EVA else (),
        adam=draws if owner == ADAM else (),
        moves=[(d, game.start) for d in draws],
    )
    return fixpoint(theta, system, game, name=f"{theta}{x}.{game.name}")


def dual(game: Game) -> Game:
    """Swap Eva and Adam and shift every rank by one."""
    return Game(
        eva=game.adam,
        adam=game.eva,
        draw=game.draw,
        moves=game.moves,
        rank={p: r + 1 for p, r in game.rank.items()},
        label=dict(game.label),
        start=game.start,
        params=game.params,
        name=f"dual({game.name})",
    )


def pad_initial(game: Game, kind: str | None = None, pad_id: str = "pad") -> Game:
    """Prepend a relay position with a single move to the old start.

    The relay has the start's kind (or ``kind`` when given) and the
    start's rank; a draw start gets an Eva relay of rank 0.
    """
    if game.start is None:
        raise GameError("pad_initial needs a start")
    while pad_id in game.positions:
        pad_id += "'"
    s = game.start
    if kind is None:
        kind = game.kind(s) if s in game.ranked else EVA
    if kind == DRAW:
        raise GameError("a relay cannot be a draw position")
    r = game.rank.get(s, 0)
    rank = dict(game.rank)
    rank[pad_id] = r
    return Game(
        eva=game.eva | ({pad_id} if kind == EVA else set()),
        adam=game.adam | ({pad_id} if kind == ADAM else set()),
        draw=game.draw,
        moves=game.moves | {(pad_id, s)},
        rank=rank,
        label=dict(game.label),
        start=pad_id,
        params=game.params,
        name=f"pad({game.name})",
    )
