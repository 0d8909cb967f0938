"""Generic finite two-player games.

Player 0 and player 1 move on a finite graph whose edges may carry a
color.  Three winning conditions are supported:

* reachability (normal play): a stuck player loses, infinite plays are
  won by a configurable side;
* parity on positions, max convention, player 0 wins on even;
* projection disjunction on edge colors: player 0 wins an infinite play
  iff left colors occur infinitely often with odd maximum, or right
  colors occur infinitely often with even maximum.

Every condition also applies the normal-play rule.  Moves are pairs
``(dst, color)`` so that parallel moves with different colors stay
distinct.
"""

from __future__ import annotations

import itertools
import sys
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, NamedTuple

import numpy as np

P0, P1 = 0, 1


class Color(NamedTuple):
    side: str  # "L" or "R"
    rank: int


def LeftRank(a: int) -> Color:
    return Color("L", a)


def RightRank(b: int) -> Color:
    return Color("R", b)


NEUTRAL = None


class Arena:
    """Explicit arena in compressed sparse row form.

    ``keys`` maps indices to position objects; ``keys=None`` means the
    positions are the integers ``0..n-1``.
    """

    def __init__(self, owner, indptr, targets, colors=None, keys=None, start=None):
        self.owner = np.asarray(owner, dtype=np.int8)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.targets = np.asarray(targets, dtype=np.int64)
        self.colors = colors  # list parallel to targets, or None
        self.keys = keys
        self.n = len(self.owner)
        self._index = None
        self._rev = None
        self.start = start

    @classmethod
    def explore(cls, starts, owner_fn: Callable, moves_fn: Callable, limit: int | None = None):
        """Build the arena reachable from ``starts`` by breadth-first search."""
        index = {}
        keys = []
        owner = []
        indptr = [0]
        targets = []
        colors = []
        queue = deque()
        for s in starts:
            if s not in index:
                index[s] = len(keys)
                keys.append(s)
                queue.append(s)
        head = 0
        while head < len(keys):
            key = keys[head]
            head += 1
            owner.append(owner_fn(key))
            for dst, color in moves_fn(key):
                j = index.get(dst)
                if j is None:
                    j = index[dst] = len(keys)
                    keys.append(dst)
                    if limit is not None and len(keys) > limit:
                        raise BudgetExceeded(f"arena exceeds {limit} positions")
                targets.append(j)
                colors.append(color)
            indptr.append(len(targets))
        arena = cls(owner, indptr, targets, colors, keys)
        arena._index = index
        if starts:
            arena.start = index[next(iter(starts))]
        return arena

    # key/index plumbing --------------------------------------------

    def index(self, key) -> int:
        if self.keys is None:
            return key
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.keys)}
        return self._index[key]

    def has(self, key) -> bool:
        if self.keys is None:
            return isinstance(key, (int, np.integer)) and 0 <= key < self.n
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.keys)}
        return key in self._index

    def key(self, i: int):
        return i if self.keys is None else self.keys[i]

    def owner_of(self, key) -> int:
        return int(self.owner[self.index(key)])

    def edge_range(self, i: int) -> range:
        return range(self.indptr[i], self.indptr[i + 1])

    def moves(self, key) -> list:
        i = self.index(key)
        return [(self.key(int(self.targets[e])), self.colors[e] if self.colors else None)
                for e in self.edge_range(i)]

    def sources(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    def reverse(self):
        """Reverse CSR: for each target, the indices of edges entering it."""
        if self._rev is None:
            order = np.argsort(self.targets, kind="stable")
            counts = np.bincount(self.targets, minlength=self.n)
            rptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(counts, out=rptr[1:])
            self._rev = (rptr, order)
        return self._rev

    def __repr__(self):
        return f"Arena(n={self.n}, edges={len(self.targets)})"


class BudgetExceeded(RuntimeError):
    pass


# reachability --------------------------------------------------------


@dataclass
class ReachabilitySolution:
    arena: Arena
    winner: np.ndarray  # winner per position
    choice: np.ndarray  # chosen edge index per position for its owner, -1 when none
    rank: np.ndarray  # attractor layer for the finite-play player, -1 outside

    def wins(self, key) -> int:
        return int(self.winner[self.arena.index(key)])

    def strategy(self, player: int) -> "PositionalStrategy":
        return PositionalStrategy(self.arena, self.choice, player)


def solve_reachability(arena: Arena, infinite_winner: int = P1) -> ReachabilitySolution:
    """Normal-play game; infinite plays go to ``infinite_winner``.

    The other player wins exactly on its attractor to the positions where
    ``infinite_winner`` is stuck.  Layers are processed frontier by
    frontier through the reverse adjacency, so each edge is touched once.
    """
    p = 1 - infinite_winner
    n = arena.n
    owner = arena.owner
    outdeg = np.diff(arena.indptr)
    src = arena.sources()
    rptr, redges = arena.reverse()
    remaining = outdeg.copy()
    in_attr = np.zeros(n, dtype=bool)
    layer = np.full(n, -1, dtype=np.int64)
    choice = np.full(n, -1, dtype=np.int64)
    frontier = np.flatnonzero((owner == infinite_winner) & (outdeg == 0))
    depth = 0
    while frontier.size:
        in_attr[frontier] = True
        layer[frontier] = depth
        depth += 1
        starts = rptr[frontier]
        lens = rptr[frontier + 1] - starts
        if lens.sum() == 0:
            break
        offs = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(lens.sum())
        edges = redges[offs]
        esrc = src[edges]
        keep = ~in_attr[esrc]
        edges, esrc = edges[keep], esrc[keep]
        mine = owner[esrc] == p
        # player p: first edge into the attractor wins
        pe, ps = edges[mine], esrc[mine]
        uniq, first = np.unique(ps, return_index=True)
        choice[uniq] = pe[first]
        # opponent: all edges must enter
        oe = esrc[~mine]
        dec = np.bincount(oe, minlength=n)
        remaining -= dec
        newo = np.flatnonzero((dec > 0) & (remaining == 0))
        frontier = np.union1d(uniq, newo)
    winner = np.where(in_attr, p, infinite_winner).astype(np.int8)
    # infinite_winner keeps out of the attractor
    tgt = arena.targets
    for i in np.flatnonzero((~in_attr) & (owner == infinite_winner)):
        for e in range(arena.indptr[i], arena.indptr[i + 1]):
            if not in_attr[tgt[e]]:
                choice[i] = e
                break
    # losers pick any edge so strategies are total
    fill = (choice < 0) & (outdeg > 0)
    choice[fill] = arena.indptr[:-1][fill]
    return ReachabilitySolution(arena, winner, choice, layer)


# parity --------------------------------------------------------------


@dataclass
class ParitySolution:
    winner: list
    choice: list  # successor index chosen by the owner, -1 when stuck

    def wins(self, i: int) -> int:
        return self.winner[i]


def _attractor(player, target, alive, succ, pred, owner, choice):
    """Attractor of ``target`` for ``player`` inside the set ``alive``."""
    attr = set(target)
    count = {}
    queue = deque(attr)
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u not in alive or u in attr:
                continue
            if owner[u] == player:
                attr.add(u)
                choice[u] = v
                queue.append(u)
            else:
                c = count.get(u)
                if c is None:
                    c = sum(1 for w in succ[u] if w in alive)
                c -= 1
                count[u] = c
                if c == 0:
                    attr.add(u)
                    queue.append(u)
    return attr


def _zielonka(alive: set, succ, pred, owner, prio, choice):
    if not alive:
        return set(), set()
    d = max(prio[v] for v in alive)
    p = d % 2
    top = {v for v in alive if prio[v] == d}
    local = {}
    a = _attractor(p, top, alive, succ, pred, owner, local)
    w = _zielonka(alive - a, succ, pred, owner, prio, choice)
    if not w[1 - p]:
        for v in a:
            if owner[v] == p:
                if v in local:
                    choice[v] = local[v]
                else:
                    choice[v] = next(u for u in succ[v] if u in alive)
        win = [set(), set()]
        win[p] = set(alive)
        return win[0], win[1]
    local = {}
    b = _attractor(1 - p, w[1 - p], alive, succ, pred, owner, local)
    for v, u in local.items():
        choice[v] = u
    w2 = _zielonka(alive - b, succ, pred, owner, prio, choice)
    win = [set(w2[0]), set(w2[1])]
    win[1 - p] |= b
    return win[0], win[1]


def solve_parity_graph(succ: list, owner: list, prio: list) -> ParitySolution:
    """Max-parity game on an index graph; stuck owners lose."""
    n = len(succ)
    win0, lose0 = n, n + 1  # absorbing sinks won by player 0 and player 1
    full = []
    for v, s in enumerate(succ):
        if s:
            full.append(list(s))
        else:
            full.append([lose0 if owner[v] == P0 else win0])
    full += [[win0], [lose0]]
    owner = list(owner) + [P0, P0]
    prio = list(prio) + [0, 1]
    pred = [[] for _ in range(n + 2)]
    for v, s in enumerate(full):
        for u in s:
            pred[u].append(v)
    choice = [-1] * (n + 2)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        w0, _ = _zielonka(set(range(n + 2)), full, pred, owner, prio, choice)
    finally:
        sys.setrecursionlimit(old)
    winner = [P0 if v in w0 else P1 for v in range(n)]
    out = [c if (succ[v] and 0 <= c < n) else -1 for v, c in enumerate(choice[:n])]
    return ParitySolution(winner, out)


def solve_parity(arena: Arena, priority) -> ParitySolution:
    """Parity condition with ``priority[i]`` on position index ``i``."""
    succ = [[int(t) for t in arena.targets[arena.indptr[i]:arena.indptr[i + 1]]]
            for i in range(arena.n)]
    return solve_parity_graph(succ, arena.owner.tolist(), list(priority))


# projection disjunction --------------------------------------------------


def projection_wins(colors) -> bool:
    """Player 0 wins when these colors are exactly the infinitely frequent ones."""
    left = [c.rank for c in colors if c is not None and c.side == "L"]
    right = [c.rank for c in colors if c is not None and c.side == "R"]
    return bool((left and max(left) % 2 == 1) or (right and max(right) % 2 == 0))


def _compress(ranks):
    """Order- and parity-preserving compression of a rank set."""
    out = {}
    cur = None
    for r in sorted(ranks):
        if cur is None:
            cur = r % 2
        elif r % 2 != cur % 2:
            cur += 1
        out[r] = cur
    return out


def strongly_connected_components(n: int, succ) -> list:
    """Iterative Tarjan; returns a component id per vertex."""
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    comp = [-1] * n
    stack = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, i = work[-1]
            s = succ[v]
            if i < len(s):
                work[-1] = (v, i + 1)
                w = s[i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, 0))
                elif onstack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


@dataclass
class ProjectionSolution:
    arena: Arena
    winner: np.ndarray
    product_index: dict  # (pos, record, prio) -> product node
    product_choice: list
    product_keys: list
    scc: list
    scc_colors: list  # per arena SCC, ordered tuple of compressed colors
    compress: list  # per arena SCC, map Color -> compressed color

    def wins(self, key) -> int:
        return int(self.winner[self.arena.index(key)])

    def strategy(self, player: int, start=None) -> "LarStrategy":
        return LarStrategy(self, player)


def _lar_step(record, c):
    i = record.index(c)
    hit = record[: i + 1]
    return (c,) + record[:i] + record[i + 1:], hit


def solve_projection_disjunction(arena: Arena) -> ProjectionSolution:
    """Latest-appearance-record reduction to a parity game.

    Only colors on edges inside a strongly connected component can recur
    infinitely often, so each component gets its own record over its
    compressed intra-component colors; the record restarts whenever a
    play changes component.
    """
    n = arena.n
    succ = [[int(t) for t in arena.targets[arena.indptr[i]:arena.indptr[i + 1]]]
            for i in range(n)]
    scc = strongly_connected_components(n, succ)
    nscc = max(scc, default=-1) + 1
    ranks = [({}, {}) for _ in range(nscc)]
    for i in range(n):
        for e in arena.edge_range(i):
            t = int(arena.targets[e])
            c = arena.colors[e] if arena.colors else None
            if c is not None and scc[t] == scc[i]:
                ranks[scc[i]][0 if c.side == "L" else 1][c.rank] = True
    compress = []
    scc_colors = []
    for lr, rr in ranks:
        cl, cr = _compress(lr), _compress(rr)
        m = {Color("L", a): Color("L", v) for a, v in cl.items()}
        m.update({Color("R", b): Color("R", v) for b, v in cr.items()})
        compress.append(m)
        scc_colors.append(tuple(sorted(set(m.values()))))

    def initial(comp):
        return scc_colors[comp]

    index = {}
    keys = []
    psucc = []
    powner = []
    pprio = []
    queue = deque()

    def node(v, rec, pr):
        k = (v, rec, pr)
        j = index.get(k)
        if j is None:
            j = index[k] = len(keys)
            keys.append(k)
            queue.append(j)
        return j

    for v in range(n):
        node(v, initial(scc[v]), 1)
    while queue:
        j = queue.popleft()
        v, rec, _ = keys[j]
        out = []
        for e in arena.edge_range(v):
            t = int(arena.targets[e])
            c = arena.colors[e] if arena.colors else None
            if scc[t] != scc[v]:
                out.append(node(t, initial(scc[t]), 1))
                continue
            cc = compress[scc[v]].get(c) if c is not None else None
            if cc is None:
                out.append(node(t, rec, 1))
                continue
            newrec, hit = _lar_step(rec, cc)
            pr = 2 * len(hit) + (2 if projection_wins(hit) else 1)
            out.append(node(t, newrec, pr))
        while len(psucc) <= j:
            psucc.append(None)
            powner.append(None)
            pprio.append(None)
        psucc[j] = out
        powner[j] = int(arena.owner[v])
        pprio[j] = keys[j][2]
    sol = solve_parity_graph(psucc, powner, pprio)
    winner = np.array([sol.winner[index[(v, initial(scc[v]), 1)]] for v in range(n)], dtype=np.int8)
    return ProjectionSolution(arena, winner, index, sol.choice, keys, scc, scc_colors, compress)


# strategies ------------------------------------------------------------


class Strategy:
    """Finite-memory strategy: ``choose`` returns a move ``(dst, color)``."""

    player = P0

    def initial(self, start):
        return None

    def choose(self, pos, mem):
        raise NotImplementedError

    def update(self, mem, src, move):
        return mem


class PositionalStrategy(Strategy):
    def __init__(self, arena: Arena, choice, player: int):
        self.arena = arena
        self.choice = choice
        self.player = player

    def choose(self, pos, mem):
        i = self.arena.index(pos)
        e = int(self.choice[i])
        if e < 0:
            return None
        c = self.arena.colors[e] if self.arena.colors else None
        return self.arena.key(int(self.arena.targets[e])), c


class LarStrategy(Strategy):
    """Strategy read off the parity product; memory is (record, priority)."""

    def __init__(self, sol: ProjectionSolution, player: int):
        self.sol = sol
        self.player = player

    def initial(self, start):
        v = self.sol.arena.index(start)
        return (self.sol.scc_colors[self.sol.scc[v]], 1)

    def _step(self, v, mem, t, c):
        sol = self.sol
        rec, _ = mem
        if sol.scc[t] != sol.scc[v]:
            return (sol.scc_colors[sol.scc[t]], 1)
        cc = sol.compress[sol.scc[v]].get(c) if c is not None else None
        if cc is None:
            return (rec, 1)
        newrec, hit = _lar_step(rec, cc)
        return (newrec, 2 * len(hit) + (2 if projection_wins(hit) else 1))

    def choose(self, pos, mem):
        sol = self.sol
        v = sol.arena.index(pos)
        j = sol.product_index[(v, mem[0], mem[1])]
        target = sol.product_choice[j]
        if target is None or target < 0:
            return None
        tv, trec, tpr = sol.product_keys[target]
        # recover the arena edge leading to that product node
        for e in sol.arena.edge_range(v):
            t = int(sol.arena.targets[e])
            c = sol.arena.colors[e] if sol.arena.colors else None
            if t == tv and self._step(v, mem, t, c) == (trec, tpr):
                return sol.arena.key(t), c
        raise AssertionError("product choice without matching edge")

    def update(self, mem, src, move):
        sol = self.sol
        dst, c = move
        return self._step(sol.arena.index(src), mem, sol.arena.index(dst), c)


# verification ------------------------------------------------------------


class Reachability:
    """Normal play; every infinite play is won by ``infinite_winner``."""

    def __init__(self, infinite_winner: int = P1):
        self.infinite_winner = infinite_winner

    def edge_label(self, src, move):
        return None

    def wins(self, labels, player) -> bool:
        return player == self.infinite_winner

    def branches(self, labels, player):
        return []  # no proper subset changes the outcome


class Parity:
    """Max-parity on positions; ``priority`` maps a position key to its priority."""

    def __init__(self, priority: Callable):
        self.priority = priority

    def edge_label(self, src, move):
        return self.priority(move[0])

    def wins(self, labels, player) -> bool:
        return (max(labels) % 2) == player

    def branches(self, labels, player):
        # a cycle good for the other player must avoid the top priority
        return [{max(labels)}]


class ProjectionDisjunction:
    def edge_label(self, src, move):
        return move[1]

    def wins(self, labels, player) -> bool:
        w = projection_wins(labels)
        return w if player == P0 else not w

    def branches(self, labels, player):
        left = [c.rank for c in labels if c is not None and c.side == "L"]
        right = [c.rank for c in labels if c is not None and c.side == "R"]
        ml = max(left) if left else None
        mr = max(right) if right else None
        drop_l = {c for c in labels if c is not None and c.side == "L" and c.rank == ml}
        drop_r = {c for c in labels if c is not None and c.side == "R" and c.rank == mr}
        if player == P0:
            # labels good for P0; a P1-good subset must kill each winning side
            out = set()
            if ml is not None and ml % 2 == 1:
                out |= drop_l
            if mr is not None and mr % 2 == 0:
                out |= drop_r
            return [out]
        # labels good for P1; a P0-good subset must drop an even left top or odd right top
        opts = []
        if ml is not None and ml % 2 == 0:
            opts.append(drop_l)
        if mr is not None and mr % 2 == 1:
            opts.append(drop_r)
        return opts


@dataclass
class VerifyResult:
    ok: bool
    reason: str = ""
    states: int = 0

    def __bool__(self):
        return self.ok


def _bad_cycle(nodes, edges, cond, player) -> bool:
    """Is there a cycle among ``edges`` whose label set loses for ``player``?"""
    nodes = list(nodes)
    local = {v: i for i, v in enumerate(nodes)}
    succ = [[] for _ in nodes]
    for (u, w, lab) in edges:
        succ[local[u]].append(local[w])
    comp = strongly_connected_components(len(nodes), succ)
    groups = {}
    for (u, w, lab) in edges:
        if comp[local[u]] == comp[local[w]]:
            groups.setdefault(comp[local[u]], []).append((u, w, lab))
    for group in groups.values():
        labels = {lab for _, _, lab in group}
        if not cond.wins(labels, player):
            return True
        for drop in cond.branches(labels, player):
            if not drop:
                continue
            sub = [e for e in group if e[2] not in drop]
            if sub and _bad_cycle({x for e in sub for x in e[:2]}, sub, cond, player):
                return True
    return False


def verify_strategy(owner_fn, moves_fn, start, condition, strategy: Strategy,
                    player: int = P0, limit: int = 5_000_000) -> VerifyResult:
    """Check that ``strategy`` wins from ``start`` for ``player``.

    Explores the product of positions and memory states, with ``player``
    restricted to the strategy's moves and the opponent unrestricted.
    """
    mem0 = strategy.initial(start)
    s0 = (start, mem0)
    seen = {s0: 0}
    order = [s0]
    edges = []
    head = 0
    while head < len(order):
        pos, mem = order[head]
        u = head
        head += 1
        legal = moves_fn(pos)
        if owner_fn(pos) == player:
            if not legal:
                return VerifyResult(False, f"stuck at {pos!r}", len(order))
            move = strategy.choose(pos, mem)
            if move is None or tuple(move) not in {tuple(m) for m in legal}:
                return VerifyResult(False, f"illegal move {move!r} at {pos!r}", len(order))
            chosen = [tuple(move)]
        else:
            chosen = legal
        for move in chosen:
            nxt = (move[0], strategy.update(mem, pos, move))
            j = seen.get(nxt)
            if j is None:
                j = seen[nxt] = len(order)
                order.append(nxt)
                if len(order) > limit:
                    return VerifyResult(False, "verification budget exceeded", len(order))
            edges.append((u, j, condition.edge_label(pos, move)))
    if _bad_cycle(range(len(order)), edges, condition, player):
        return VerifyResult(False, "a losing cycle is reachable", len(order))
    return VerifyResult(True, "", len(order))


def verify_on_arena(arena: Arena, condition, strategy: Strategy, player: int, start) -> VerifyResult:
    return verify_strategy(arena.owner_of, arena.moves, start, condition, strategy, player)


# independent oracles -------------------------------------------------------


def solve_buchi(arena: Arena, accepting_edge: Callable) -> np.ndarray:
    """Player 0 wins iff accepting edges are taken infinitely often.

    Classical nested attractor iteration on the edge-subdivided graph;
    used only to cross-check the general solvers.
    """
    n = arena.n
    owner = arena.owner.tolist()
    succ = [[] for _ in range(n)]
    acc = [False] * n
    for i in range(n):
        for e in arena.edge_range(i):
            t = int(arena.targets[e])
            c = arena.colors[e] if arena.colors else None
            if accepting_edge(i, t, c):
                succ.append([t])
                owner.append(P0)
                acc.append(True)
                succ[i].append(len(succ) - 1)
            else:
                succ[i].append(t)
    good, bad = len(succ), len(succ) + 1
    for v in range(len(succ)):
        if not succ[v]:
            succ[v] = [bad if owner[v] == P0 else good]
    succ += [[good], [bad]]
    owner += [P0, P0]
    acc += [True, False]
    pred = [[] for _ in succ]
    for v, s in enumerate(succ):
        for u in s:
            pred[u].append(v)
    alive = set(range(len(succ)))
    while True:
        reach = _attractor(P0, {v for v in alive if acc[v]}, alive, succ, pred, owner, {})
        avoid = alive - reach
        if not avoid:
            break
        alive -= _attractor(P1, avoid, alive, succ, pred, owner, {})
    return np.array([P0 if v in alive else P1 for v in range(n)], dtype=np.int8)


def brute_force_parity(succ, owner, prio) -> list:
    """Winner per vertex by enumerating positional strategies of player 0
    against a one-player check for player 1.  Exponential; tiny graphs only.
    """
    n = len(succ)
    choices0 = [succ[v] if (owner[v] == P0 and succ[v]) else [None] for v in range(n)]
    result = [P1] * n
    for pick in itertools.product(*choices0):
        # restricted graph: player 0 fixed, player 1 free
        g = [[pick[v]] if owner[v] == P0 and succ[v] else list(succ[v]) for v in range(n)]
        for v in range(n):
            if result[v] == P0:
                continue
            if _one_player_p1_fails(v, g, owner, prio):
                result[v] = P0
    return result


def _one_player_p1_fails(start, g, owner, prio) -> bool:
    """In the graph ``g`` (player 0 fixed) can player 1 not win from start?"""
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        if not g[v]:
            if owner[v] == P0:
                return False  # player 0 stuck
            continue
        for w in g[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    # player 1 wins on an odd-max cycle within the reachable part
    nodes = sorted(seen)
    for d in sorted({prio[v] for v in nodes}):
        if d % 2 == 0:
            continue
        sub = [v for v in nodes if prio[v] <= d]
        subset = set(sub)
        idx = {v: i for i, v in enumerate(sub)}
        succ = [[idx[w] for w in g[v] if w in subset] for v in sub]
        comp = strongly_connected_components(len(sub), succ)
        for v in sub:
            if prio[v] != d:
                continue
            c = comp[idx[v]]
            if any(comp[idx[w]] == c for w in g[v] if w in subset):
                return False
            if any(comp[i] == c and i != idx[v] for i in range(len(sub))):
                return False
    return True
