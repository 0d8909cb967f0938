"""The Mediator games <G,H> and <G,H,K>, the preorder they decide,
copycat, and composition and projection of Mediator strategies.

Mediator is player 0 and Opponents player 1.  An infinite play is a
Mediator win iff its left projection is infinite and won by Adam, or its
right projection is infinite and won by Eva.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .arena import (NEUTRAL, P0, P1, Arena, LarStrategy, LeftRank, ProjectionDisjunction,
                    ProjectionSolution, RightRank, Strategy, VerifyResult,
                    solve_projection_disjunction, strongly_connected_components, verify_strategy)
from .game import ADAM, DRAW, EVA, Game

MEDIATOR, OPPONENTS = P0, P1


class NotWinningError(RuntimeError):
    """A strategy handed to a construction turned out not to be winning."""


def _label(game: Game, p):
    # parameter draws have no variable; they only match themselves
    return game.label.get(p, ("param", p))


def _lcolor(game: Game, p):
    return LeftRank(game.rank[p]) if p in game.ranked else NEUTRAL


def _rcolor(game: Game, p):
    return RightRank(game.rank[p]) if p in game.ranked else NEUTRAL


class MediatorGame:
    """The two-board game <G,H> as owner and move functions on pairs."""

    def __init__(self, G: Game, H: Game):
        self.G, self.H = G, H

    def clause(self, pos) -> str:
        g, h = pos
        kg, kh = self.G.kind(g), self.H.kind(h)
        if kg == DRAW and kh == DRAW:
            return "L(O)" if _label(self.G, g) == _label(self.H, h) else "L(M)"
        if kg == ADAM and kh in (EVA, DRAW):
            return "A x ED"
        if kg in (ADAM, DRAW) and kh == EVA:
            return "AD x E"
        if kg == EVA:
            return "E x *"
        return "* x A"

    def owner(self, pos) -> int:
        return MEDIATOR if self.clause(pos) in ("A x ED", "AD x E", "L(M)") else OPPONENTS

    def moves(self, pos) -> list:
        g, h = pos
        G, H = self.G, self.H
        kg, kh = G.kind(g), H.kind(h)
        if self.owner(pos) == MEDIATOR:
            left, right = kg == ADAM, kh == EVA
        else:
            left, right = kg == EVA, kh == ADAM
        out = []
        if left:
            out += [((t, h), _lcolor(G, t)) for t in G.succ[g]]
        if right:
            out += [((g, t), _rcolor(H, t)) for t in H.succ[h]]
        return out

    def start(self):
        return (self.G.start, self.H.start)

    def all_positions(self):
        return [(g, h) for g in sorted(self.G.positions) for h in sorted(self.H.positions)]

    def arena(self) -> Arena:
        return Arena.explore(self.all_positions(), self.owner, self.moves)


def build_mediator_arena(G: Game, H: Game) -> Arena:
    return MediatorGame(G, H).arena()


class ThreeBoardGame:
    """The glued game <G,H,K>; central moves belong to Mediator and are Neutral."""

    def __init__(self, G: Game, H: Game, K: Game):
        self.G, self.H, self.K = G, H, K

    def owner(self, pos) -> int:
        g, h, k = pos
        kg, kh, kk = self.G.kind(g), self.H.kind(h), self.K.kind(k)
        if kg == DRAW and kk == DRAW:
            if kh != DRAW:
                return MEDIATOR
            same = _label(self.G, g) == _label(self.H, h) == _label(self.K, k)
            return OPPONENTS if same else MEDIATOR
        if kg == ADAM and kk in (EVA, DRAW):
            return MEDIATOR
        if kg in (ADAM, DRAW) and kk == EVA:
            return MEDIATOR
        return OPPONENTS

    def moves(self, pos) -> list:
        g, h, k = pos
        G, H, K = self.G, self.H, self.K
        kg, kk = G.kind(g), K.kind(k)
        out = []
        if self.owner(pos) == MEDIATOR:
            if kg == ADAM:
                out += [((t, h, k), _lcolor(G, t)) for t in G.succ[g]]
            out += [((g, t, k), NEUTRAL) for t in H.succ[h]]
            if kk == EVA:
                out += [((g, h, t), _rcolor(K, t)) for t in K.succ[k]]
        else:
            if kg == EVA:
                out += [((t, h, k), _lcolor(G, t)) for t in G.succ[g]]
            if kk == ADAM:
                out += [((g, h, t), _rcolor(K, t)) for t in K.succ[k]]
        return out

    def start(self):
        return (self.G.start, self.H.start, self.K.start)


# deciding the preorder --------------------------------------------------------


@dataclass
class MediatorSolution:
    game: MediatorGame
    arena: Arena
    solution: ProjectionSolution

    def leq(self, g, h) -> bool:
        return self.solution.wins((g, h)) == MEDIATOR

    def strategy(self) -> LarStrategy:
        return self.solution.strategy(MEDIATOR)

    def winning_region(self) -> set:
        return {self.arena.key(i) for i in range(self.arena.n) if self.solution.winner[i] == MEDIATOR}


def _unpointed(game: Game) -> Game:
    return replace(game, start=None, name="")


@lru_cache(maxsize=512)
def _solve_cached(G: Game, H: Game) -> MediatorSolution:
    mg = MediatorGame(G, H)
    arena = mg.arena()
    return MediatorSolution(mg, arena, solve_projection_disjunction(arena))


def solve_mediator(G: Game, H: Game) -> MediatorSolution:
    """Solve <G,H> from every position at once; starts are irrelevant here."""
    sol = _solve_cached(_unpointed(G), _unpointed(H))
    return sol


@dataclass
class LeqResult:
    holds: bool
    strategy: Strategy | None
    solution: MediatorSolution

    def __bool__(self):
        return self.holds


def decide_leq(G: Game, H: Game) -> LeqResult:
    if G.start is None or H.start is None:
        raise ValueError("decide_leq needs pointed games")
    sol = solve_mediator(G, H)
    ok = sol.leq(G.start, H.start)
    return LeqResult(ok, sol.strategy() if ok else None, sol)


def leq(G: Game, H: Game) -> bool:
    return decide_leq(G, H).holds


def equiv(G: Game, H: Game) -> bool:
    return leq(G, H) and leq(H, G)


def verify_mediator_strategy(G: Game, H: Game, strategy: Strategy, start=None) -> VerifyResult:
    mg = MediatorGame(G, H)
    return verify_strategy(mg.owner, mg.moves, start or mg.start(), ProjectionDisjunction(),
                           strategy, MEDIATOR)


def verify_three_board_strategy(G: Game, H: Game, K: Game, strategy: Strategy) -> VerifyResult:
    tg = ThreeBoardGame(G, H, K)
    return verify_strategy(tg.owner, tg.moves, tg.start(), ProjectionDisjunction(), strategy, MEDIATOR)


# copycat -----------------------------------------------------------------------


def _which_board(src, dst, color) -> int:
    """Index of the board a move acted on (0 left, 1 right, 2 central for triples)."""
    changed = [i for i, (a, b) in enumerate(zip(src, dst)) if a != b]
    if changed:
        return changed[0]
    if color is not None:
        return 0 if color.side == "L" else len(src) - 1
    return 1  # a Neutral self-loop can only be central


class Copycat(Strategy):
    """Mediator mirrors the Opponents' moves on the lagging board.

    Memory is ``None`` on the diagonal, else ``(side, path)`` where
    ``path`` runs from the lagging position to the leading one.  A
    revisit on the leading board cuts the path back, so the lagging
    board only follows a simple path.
    """

    player = MEDIATOR

    def __init__(self, G: Game):
        self.G = G
        self.max_queue = 0

    def initial(self, start):
        g, h = start
        if g != h:
            raise ValueError("copycat starts on the diagonal")
        return None

    def choose(self, pos, mem):
        if mem is None:
            return None
        side, path = mem
        nxt = path[1]
        g, h = pos
        if side == "L":
            return (g, nxt), _rcolor(self.G, nxt)
        return (nxt, h), _lcolor(self.G, nxt)

    def update(self, mem, src, move):
        dst, color = move
        board = _which_board(src, dst, color)
        moved_to = dst[board]
        if mem is None:
            side = "L" if board == 0 else "R"
            out = (side, (src[board], moved_to))
        else:
            side, path = mem
            leading = 0 if side == "L" else 1
            if board == leading:
                if moved_to in path:
                    path = path[: path.index(moved_to) + 1]
                else:
                    path = path + (moved_to,)
            else:
                if path[1] != moved_to:
                    return ("X", (moved_to,))  # not a copycat move; memory leaves the scheme
                path = path[1:]
            out = (side, path)
        if len(out[1]) == 1:
            return None
        self.max_queue = max(self.max_queue, len(out[1]) - 1)
        return out


def copycat(G: Game) -> Copycat:
    return Copycat(G)


# composition and projection ---------------------------------------------------


class ComposedStrategy(Strategy):
    """S on <G,H> glued with S2 on <H,K>, a strategy on <G,H,K>.

    The owner of the middle position decides who acts: S when it is an
    Eva position (S moves Eva on its right board), S2 when it is an Adam
    position.  On a middle draw the external boards are driven directly.
    """

    player = MEDIATOR

    def __init__(self, S: Strategy, S2: Strategy, G: Game, H: Game, K: Game):
        self.S, self.S2 = S, S2
        self.G, self.H, self.K = G, H, K

    def initial(self, start):
        g, h, k = start
        return (self.S.initial((g, h)), self.S2.initial((h, k)))

    def choose(self, pos, mem):
        g, h, k = pos
        ms, ms2 = mem
        kh = self.H.kind(h)
        if kh == EVA or (kh == DRAW and self.G.kind(g) == ADAM):
            mv = self.S.choose((g, h), ms)
            if mv is None:
                return None
            (g2, h2), c = mv
            if _which_board((g, h), (g2, h2), c) == 0:
                return (g2, h, k), c
            return (g, h2, k), NEUTRAL
        if kh == ADAM or (kh == DRAW and self.K.kind(k) == EVA):
            mv = self.S2.choose((h, k), ms2)
            if mv is None:
                return None
            (h2, k2), c = mv
            if _which_board((h, k), (h2, k2), c) == 0:
                return (g, h2, k), NEUTRAL
            return (g, h, k2), c
        return None

    def update(self, mem, src, move):
        g, h, k = src
        (g2, h2, k2), c = move
        ms, ms2 = mem
        board = _which_board(src, move[0], c)
        if board == 0:
            ms = self.S.update(ms, (g, h), ((g2, h), c))
        elif board == 2:
            ms2 = self.S2.update(ms2, (h, k), ((h, k2), c))
        else:
            ms = self.S.update(ms, (g, h), ((g, h2), _rcolor(self.H, h2)))
            ms2 = self.S2.update(ms2, (h, k), ((h2, k), _lcolor(self.H, h2)))
        return (ms, ms2)


def compose_strategies(S: Strategy, S2: Strategy, G: Game, H: Game, K: Game) -> ComposedStrategy:
    return ComposedStrategy(S, S2, G, H, K)


class ProjectedStrategy(Strategy):
    """T on <G,H,K> with the middle board hidden; a strategy on <G,K>.

    Memory is ``(triple, T-memory)``.  Central moves proposed by T are
    played silently until T proposes an outer move; a repeated silent
    state means T was not winning.
    """

    player = MEDIATOR

    def __init__(self, T: Strategy, G: Game, H: Game, K: Game):
        self.T = T
        self.G, self.H, self.K = G, H, K
        self.three = ThreeBoardGame(G, H, K)
        self.two = MediatorGame(G, K)

    def initial(self, start):
        g, k = start
        triple = (g, self.H.start, k)
        return (triple, self.T.initial(triple))

    def _silent(self, mem):
        triple, m = mem
        seen = set()
        while True:
            if self.three.owner(triple) != MEDIATOR:
                return triple, m, None
            mv = self.T.choose(triple, m)
            if mv is None:
                return triple, m, None
            if _which_board(triple, mv[0], mv[1]) != 1:
                return triple, m, mv
            key = (triple, m)
            if key in seen:
                raise NotWinningError("input strategy not winning: silent central loop")
            seen.add(key)
            m = self.T.update(m, triple, mv)
            triple = mv[0]

    def choose(self, pos, mem):
        triple, m, mv = self._silent(mem)
        if mv is None:
            return None
        g, h, k = mv[0]
        return (g, k), mv[1]

    def update(self, mem, src, move):
        (g2, k2), c = move
        if self.two.owner(src) == MEDIATOR:
            triple, m, mv = self._silent(mem)
            if mv is None or (mv[0][0], mv[0][2]) != (g2, k2):
                raise NotWinningError("projected move disagrees with the input strategy")
            return (mv[0], self.T.update(m, triple, mv))
        triple, m = mem
        g, h, k = triple
        nxt = (g2, h, k2)
        return (nxt, self.T.update(m, triple, ((nxt), c)))


def project_strategy(T: Strategy, G: Game, H: Game, K: Game) -> ProjectedStrategy:
    return ProjectedStrategy(T, G, H, K)


# corpus hygiene -----------------------------------------------------------------


def solitaire_traps(G: Game) -> list:
    """Cycles that one player runs alone and wins.

    An Eva-only cycle with even maximum or an Adam-only cycle with odd
    maximum lets Opponents play forever on one board of <G,G>, leaving
    the other projection finite; such games are not reflexive under the
    finite-projection convention.
    """
    out = []
    for owner_set, parity, who in ((G.eva, 0, "eva"), (G.adam, 1, "adam")):
        nodes = sorted(owner_set)
        for d in sorted({G.rank[v] for v in nodes if G.rank[v] % 2 == parity}):
            sub = [v for v in nodes if G.rank[v] <= d]
            idx = {v: i for i, v in enumerate(sub)}
            succ = [[idx[t] for t in G.succ[v] if t in idx] for v in sub]
            comp = strongly_connected_components(len(sub), succ)
            for v in sub:
                if G.rank[v] != d:
                    continue
                c = comp[idx[v]]
                if any(comp[w] == c for w in succ[idx[v]]):
                    out.append((who, v, d))
    return out


def strategy_table(owner_fn, moves_fn, start, strategy: Strategy, limit: int = 10000) -> list:
    """Transducer view of a strategy: reachable (position, memory) -> move."""
    mem0 = strategy.initial(start)
    seen = {(start, mem0)}
    order = [(start, mem0)]
    rows = []
    head = 0
    while head < len(order) and head < limit:
        pos, mem = order[head]
        head += 1
        if owner_fn(pos) == strategy.player:
            mv = strategy.choose(pos, mem)
            rows.append((pos, mem, mv))
            nexts = [mv] if mv is not None else []
        else:
            nexts = moves_fn(pos)
        for mv in nexts:
            nxt = (mv[0], strategy.update(mem, pos, mv))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    return rows
