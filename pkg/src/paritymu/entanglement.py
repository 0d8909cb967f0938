"""Entanglement: the Cops-and-Thief games Ent(G,k) and ET(G,k), trees
with back edges, feedback, unravellings and the canonical Cops strategy.

Cops are player 0, Thief player 1; every infinite play is a Thief win.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .arena import (P0, P1, Arena, BudgetExceeded, Reachability, Strategy, VerifyResult,
                    solve_reachability, strongly_connected_components, verify_strategy)
from .game import Game

COPS, THIEF = P0, P1
PRE = ("pre",)
DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    edges: frozenset

    @classmethod
    def from_edges(cls, vertices, edges) -> "Digraph":
        vertices = tuple(vertices)
        edges = frozenset((s, t) for s, t in edges)
        known = set(vertices)
        for s, t in edges:
            if s not in known or t not in known:
                raise ValueError(f"edge {s}->{t} leaves the vertex set")
        return cls(vertices, edges)

    @classmethod
    def from_game(cls, game: Game) -> "Digraph":
        return cls(tuple(sorted(game.positions)), frozenset(game.moves))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def succ(self) -> dict:
        out = {v: [] for v in self.vertices}
        for s, t in self.edges:
            out[s].append(t)
        for v in out:
            out[v].sort(key=self.index.__getitem__)
        return out

    @cached_property
    def pred(self) -> dict:
        out = {v: [] for v in self.vertices}
        for s, t in self.edges:
            out[t].append(s)
        return out

    def induced(self, keep) -> "Digraph":
        keep = set(keep)
        return Digraph(tuple(v for v in self.vertices if v in keep),
                       frozenset((s, t) for s, t in self.edges if s in keep and t in keep))

    def __len__(self):
        return len(self.vertices)


def cyclic_core(dg: Digraph) -> Digraph:
    """Restrict to vertices from which a cycle is reachable.

    From any other vertex every play is finite, so the Thief loses there;
    dropping those vertices does not change who wins Ent(G,k).
    """
    n = len(dg)
    idx = dg.index
    succ = [[idx[t] for t in dg.succ[v]] for v in dg.vertices]
    comp = strongly_connected_components(n, succ)
    size = {}
    for c in comp:
        size[c] = size.get(c, 0) + 1
    cyclic = {dg.vertices[i] for i in range(n) if size[comp[i]] > 1 or i in succ[i]}
    keep = set(cyclic)
    queue = deque(cyclic)
    while queue:
        v = queue.popleft()
        for u in dg.pred[v]:
            if u not in keep:
                keep.add(u)
                queue.append(u)
    return dg.induced(keep)


# lazily explored games ---------------------------------------------------------


class EntGame:
    """Ent(G,k), or ET(G,k) with ``retire=True``.

    Positions are ``PRE`` (Thief picks the first vertex), ``(v, C, "cops")``
    and ``(v, C, "thief")`` with ``C`` a frozenset of at most ``k`` vertices.
    """

    def __init__(self, dg: Digraph, k: int, retire: bool = False):
        self.dg = dg
        self.k = k
        self.retire = retire

    def owner(self, pos) -> int:
        return COPS if pos[-1] == "cops" else THIEF

    def _order(self, c):
        return sorted(c, key=self.dg.index.__getitem__)

    def cops_options(self, v, c) -> list:
        k = self.k
        out = []
        if self.retire:
            items = self._order(c)
            for r in range(len(items) + 1):
                for sub in itertools.combinations(items, r):
                    s = frozenset(sub)
                    out.append(s)
                    if len(s | {v}) <= k:
                        out.append(s | {v})
        else:
            out.append(c)
            if v not in c and len(c) < k:
                out.append(c | {v})
            for x in self._order(c):
                if x != v:
                    out.append((c - {x}) | {v})
        seen = set()
        uniq = []
        for s in out:
            if s not in seen and len(s) <= k:
                seen.add(s)
                uniq.append(s)
        return uniq

    def moves(self, pos) -> list:
        if pos == PRE:
            return [((v, frozenset(), "cops"), None) for v in self.dg.vertices]
        v, c, turn = pos
        if turn == "cops":
            return [((v, s, "thief"), None) for s in self.cops_options(v, c)]
        return [((w, c, "cops"), None) for w in self.dg.succ[v] if w not in c]

    def arena(self, limit: int | None = DEFAULT_BUDGET) -> Arena:
        return Arena.explore([PRE], self.owner, self.moves, limit=limit)


# vectorized arena for the standard game ---------------------------------------------


def _subset_masks(n: int, k: int) -> np.ndarray:
    masks = [sum(1 << i for i in comb) for r in range(k + 1)
             for comb in itertools.combinations(range(n), r)]
    return np.array(sorted(masks), dtype=np.int64)


def ent_state_count(n: int, k: int) -> int:
    s = sum(_comb(n, r) for r in range(min(k, n) + 1))
    return 2 * n * s + 1


def _comb(n, r):
    from math import comb
    return comb(n, r)


def ent_arena_vectorized(dg: Digraph, k: int) -> Arena:
    """The whole arena of Ent(G,k) with cop sets as bitmasks.

    Index layout: Cops positions ``v*S+s``, Thief positions ``n*S+v*S+s``,
    and the Thief pre-position last; ``s`` indexes the sorted subset table.
    """
    n = len(dg)
    if n > 62:
        raise ValueError("vectorized builder handles at most 62 vertices")
    k = min(k, n)
    masks = _subset_masks(n, k)
    S = len(masks)
    N = n * S
    pre = 2 * N
    vv = np.repeat(np.arange(n, dtype=np.int64), S)
    ss = np.tile(np.arange(S, dtype=np.int64), n)
    mm = masks[ss]
    cnt = np.bitwise_count(mm).astype(np.int64)
    vbit = np.left_shift(np.int64(1), vv)
    has_v = (mm & vbit) != 0
    cops = vv * S + ss
    srcs, dsts = [cops], [N + cops]  # skip
    sel = (~has_v) & (cnt < k)
    srcs.append(cops[sel])
    dsts.append(N + vv[sel] * S + np.searchsorted(masks, mm[sel] | vbit[sel]))
    for x in range(n):
        xb = np.int64(1) << np.int64(x)
        sel = ((mm & xb) != 0) & (vv != x)
        new = (mm[sel] & ~xb) | vbit[sel]
        srcs.append(cops[sel])
        dsts.append(N + vv[sel] * S + np.searchsorted(masks, new))
    idx = dg.index
    for s, t in sorted(dg.edges, key=lambda e: (idx[e[0]], idx[e[1]])):
        a, b = idx[s], idx[t]
        free = np.flatnonzero((masks & (np.int64(1) << np.int64(b))) == 0)
        srcs.append(N + a * S + free)
        dsts.append(b * S + free)
    srcs.append(np.full(n, pre, dtype=np.int64))
    dsts.append(np.arange(n, dtype=np.int64) * S + np.searchsorted(masks, 0))
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(2 * N + 2, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=2 * N + 1), out=indptr[1:])
    owner = np.concatenate([np.full(N, COPS), np.full(N + 1, THIEF)]).astype(np.int8)
    arena = Arena(owner, indptr, dst[order], None, None, start=pre)
    arena.masks = masks
    return arena


@dataclass
class EntResult:
    cops_win: bool
    states: int
    method: str


def ent_game_winner(dg: Digraph | Game, k: int, retire: bool = False, method: str = "auto",
                    budget: int = DEFAULT_BUDGET) -> bool:
    return solve_ent(dg, k, retire, method, budget).cops_win


def solve_ent(dg: Digraph | Game, k: int, retire: bool = False, method: str = "auto",
              budget: int = DEFAULT_BUDGET) -> EntResult:
    if isinstance(dg, Game):
        dg = Digraph.from_game(dg)
    core = cyclic_core(dg)
    if len(core) == 0:
        return EntResult(True, 1, "trivial")
    if method == "auto":
        method = "bfs" if retire or len(core) > 62 else "vector"
    if method == "vector":
        if retire:
            raise ValueError("the vectorized builder covers the standard game only")
        need = ent_state_count(len(core), k)
        if need > budget:
            raise BudgetExceeded(f"Ent arena needs {need} states, budget {budget}")
        arena = ent_arena_vectorized(core, k)
    else:
        arena = EntGame(core, k, retire).arena(limit=budget)
    sol = solve_reachability(arena, infinite_winner=THIEF)
    return EntResult(bool(sol.winner[arena.start] == COPS), arena.n, method)


def entanglement(dg: Digraph | Game, retire: bool = False, budget: int = DEFAULT_BUDGET,
                 kmax: int | None = None) -> int:
    """Least k for which Cops win; ascending search."""
    if isinstance(dg, Game):
        dg = Digraph.from_game(dg)
    core = cyclic_core(dg)
    top = len(core) if kmax is None else min(kmax, len(core))
    for k in range(top + 1):
        if ent_game_winner(core, k, retire=retire, budget=budget):
            return k
    raise BudgetExceeded(f"no k <= {top} lets Cops win")


def ent_variant_winner(dg: Digraph | Game, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    return ent_game_winner(dg, k, retire=True, budget=budget)


# trees with back edges -------------------------------------------------------------


class TreeError(ValueError):
    pass


@dataclass
class TreeWithBackEdges:
    """A rooted tree plus back edges, each pointing to an ancestor of its source."""

    root: object
    parent: dict  # vertex -> parent, root -> None
    back: frozenset = frozenset()
    children: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.parent.get(self.root, "missing") is not None:
            raise TreeError("root must have parent None")
        kids = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                if p not in kids:
                    raise TreeError(f"parent {p} of {v} is not a vertex")
                kids[p].append(v)
        self.children = kids
        self.back = frozenset(self.back)
        # Euler intervals for ancestor tests
        self.tin, self.tout, self.depth = {}, {}, {self.root: 0}
        clock = 0
        stack = [(self.root, iter(kids[self.root]))]
        self.tin[self.root] = clock
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                clock += 1
                self.tout[v] = clock
            else:
                clock += 1
                self.tin[w] = clock
                self.depth[w] = self.depth[v] + 1
                stack.append((w, iter(kids[w])))
        if len(self.tin) != len(self.parent):
            raise TreeError("parent map is not a tree on its vertices (cycle or disconnection)")
        for x, r in self.back:
            if x not in self.parent or r not in self.parent:
                raise TreeError(f"back edge {x}->{r} leaves the vertex set")
            if not self.is_ancestor(r, x):
                raise TreeError(f"back edge {x}->{r} does not point to an ancestor")

    @property
    def vertices(self) -> list:
        return list(self.parent)

    def is_ancestor(self, a, b) -> bool:
        """Reflexive ancestor test."""
        return self.tin[a] <= self.tin[b] and self.tout[b] <= self.tout[a]

    def in_subtree(self, v, top) -> bool:
        return self.is_ancestor(top, v)

    def root_path(self, v) -> list:
        out = []
        while v is not None:
            out.append(v)
            v = self.parent[v]
        return out[::-1]

    def tree_path(self, a, b) -> list:
        if not self.is_ancestor(a, b):
            raise TreeError(f"{b} is not in the subtree of {a}")
        out = []
        v = b
        while v != a:
            out.append(v)
            v = self.parent[v]
        out.append(a)
        return out[::-1]

    def is_tree_edge(self, a, b) -> bool:
        return self.parent.get(b) == a and b != self.root

    def is_edge(self, a, b) -> bool:
        return self.is_tree_edge(a, b) or (a, b) in self.back

    def returns(self) -> set:
        return {r for _, r in self.back}

    @cached_property
    def _guards(self) -> dict:
        g = {v: set() for v in self.parent}
        for x, r in self.back:
            v = x
            while True:
                g[v].add(r)
                if v == r:
                    break
                v = self.parent[v]
        return g

    def guarded_returns(self, v) -> frozenset:
        """Returns on the root path to ``v`` with a back edge from a descendant of ``v``."""
        return frozenset(self._guards[v])

    def feedback_of(self, v) -> int:
        return len(self._guards[v])

    def feedback(self) -> int:
        return max((len(s) for s in self._guards.values()), default=0)

    def succ(self, v) -> list:
        return list(self.children[v]) + sorted((r for x, r in self.back if x == v), key=str)

    def digraph(self) -> Digraph:
        edges = {(p, v) for v, p in self.parent.items() if p is not None} | set(self.back)
        return Digraph.from_edges(self.vertices, edges)

    def has_predecessor(self, v) -> bool:
        return self.parent[v] is not None or any(r == v for _, r in self.back)

    def literal_cop_set(self, v, k: int) -> frozenset:
        """The literal closed form: returns r on the root path whose tree path to ``v``
        holds at most ``k`` returns.  Kept for comparison only."""
        rets = self.returns()
        path = self.root_path(v)
        out = set()
        for i, r in enumerate(path):
            if r in rets and sum(1 for u in path[i:] if u in rets) <= k:
                out.add(r)
        return frozenset(out)


def random_tree_with_back_edges(rng: random.Random, n: int, p_back: float = 0.3) -> TreeWithBackEdges:
    parent = {0: None}
    for v in range(1, n):
        parent[v] = rng.randrange(v)
    back = set()
    for x in range(n):
        if rng.random() < p_back:
            anc = []
            v = x
            while v is not None:
                anc.append(v)
                v = parent[v]
            back.add((x, rng.choice(anc)))
    return TreeWithBackEdges(0, parent, frozenset(back))


def check_simple_path_lemma(t: TreeWithBackEdges, path) -> bool:
    """The last return of a simple path is its highest vertex; a simple path
    inside the subtree of its source uses tree edges only."""
    path = list(path)
    if not path:
        raise TreeError("empty path")
    if len(set(path)) != len(path):
        raise TreeError("path is not simple")
    for a, b in zip(path, path[1:]):
        if not t.is_edge(a, b):
            raise TreeError(f"{a}->{b} is not an edge")
    last = path[0]
    for a, b in zip(path, path[1:]):
        if not t.is_tree_edge(a, b):
            last = b
    if not all(t.is_ancestor(last, v) for v in path):
        return False
    if all(t.in_subtree(v, path[0]) for v in path):
        return all(t.is_tree_edge(a, b) for a, b in zip(path, path[1:]))
    return True


def random_simple_path(rng: random.Random, t: TreeWithBackEdges, max_len: int = 30) -> list:
    v = rng.choice(t.vertices)
    path = [v]
    seen = {v}
    for _ in range(max_len):
        options = [w for w in t.succ(v) if w not in seen]
        if not options:
            break
        v = rng.choice(options)
        path.append(v)
        seen.add(v)
    return path


# covers and unravellings --------------------------------------------------------


@dataclass
class Unravelling:
    tree: TreeWithBackEdges
    image: dict  # tree vertex -> graph vertex


def is_cover(source: Digraph, target: Digraph, rho: dict, source_root=None, target_root=None) -> bool:
    """Graph morphism, root preserving, and a bijection on each successor set."""
    if set(rho) != set(source.vertices):
        return False
    if any(rho[v] not in target.index for v in source.vertices):
        return False
    if source_root is not None and rho[source_root] != target_root:
        return False
    for v in source.vertices:
        imgs = [rho[w] for w in source.succ[v]]
        if len(set(imgs)) != len(imgs):
            return False
        if set(imgs) != set(target.succ[rho[v]]):
            return False
    return True


UNRAVEL_POLICIES = ("eager", "root-not-return", "repeat")


def unravel(dg: Digraph, root, policy: str = "eager", repeat: int = 1,
            budget: int = 100_000) -> Unravelling:
    """Depth-first unravelling of the graph from ``root`` into a tree with back edges.

    A successor whose image already sits on the current root path
    becomes a back edge to the nearest such copy, otherwise a fresh
    child copy is made.  ``root-not-return`` never points back edges at
    the root, so the root has no predecessor; ``repeat`` lets an image
    occur up to ``repeat + 1`` times on a root path before folding.
    """
    if policy not in UNRAVEL_POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    image = {0: root}
    parent = {0: None}
    back = set()
    counter = 1
    # stack entries: (node, root-path images as a tuple of (image, node))
    stack = [(0, ((root, 0),))]
    while stack:
        node, path = stack.pop()
        v = image[node]
        for w in reversed(dg.succ[v]):
            copies = [n for (img, n) in path if img == w]
            target = copies[-1] if copies else None
            if target == 0 and policy == "root-not-return":
                target = copies[-2] if len(copies) > 1 else None
            if policy == "repeat" and len(copies) <= repeat:
                target = None
            if target is not None:
                back.add((node, target))
                continue
            child = counter
            counter += 1
            if counter > budget:
                raise BudgetExceeded(f"unravelling exceeds {budget} vertices")
            image[child] = w
            parent[child] = node
            stack.append((child, path + ((w, child),)))
    tree = TreeWithBackEdges(0, parent, frozenset(back))
    out = Unravelling(tree, image)
    if not is_cover(tree.digraph(), dg, image, 0, root):
        raise AssertionError("unravelling is not a cover")
    return out


# the canonical Cops strategy --------------------------------------------------------


class CanonicalCops(Strategy):
    """Cops drop a cop on every guarded return they visit.

    In the standard game a full team gives up the cop closest to the root
    among those no longer guarding the current vertex; with ``retire``
    Cops keep exactly the guarding cops.
    """

    player = COPS

    def __init__(self, tree: TreeWithBackEdges, k: int, retire: bool = False):
        if k < tree.feedback():
            raise ValueError(f"k={k} is below the feedback {tree.feedback()}")
        self.tree = tree
        self.k = k
        self.retire = retire

    def target(self, v, c: frozenset) -> frozenset:
        t = self.tree
        guard = t.guarded_returns(v)
        if self.retire:
            return frozenset((c & guard) | ({v} & guard))
        if v not in guard or v in c:
            return c
        if len(c) < self.k:
            return c | {v}
        loose = [x for x in c if x not in guard]
        x = min(loose, key=lambda u: (t.depth[u], str(u)))
        return (c - {x}) | {v}

    def choose(self, pos, mem):
        if pos == PRE or pos[-1] != "cops":
            return None
        v, c, _ = pos
        return (v, self.target(v, c), "thief"), None


def canonical_cops_strategy(tree: TreeWithBackEdges, k: int | None = None,
                            retire: bool = False) -> CanonicalCops:
    return CanonicalCops(tree, tree.feedback() if k is None else k, retire)


def verify_cops_strategy(dg: Digraph, k: int, strategy: Strategy, retire: bool = False,
                         start=PRE, limit: int = DEFAULT_BUDGET) -> VerifyResult:
    game = EntGame(dg, k, retire)
    return verify_strategy(game.owner, game.moves, start, Reachability(THIEF), strategy, COPS,
                           limit=limit)


def cop_sets_along_tree_paths(tree: TreeWithBackEdges, strategy: CanonicalCops) -> dict:
    """Cop set at each Thief position reached from the root when Thief walks tree paths."""
    out = {}
    stack = [(tree.root, frozenset())]
    while stack:
        v, c = stack.pop()
        c = strategy.target(v, c)
        out[v] = c
        for w in tree.children[v]:
            if w not in c:
                stack.append((w, c))
    return out


class LiteralCops(CanonicalCops):
    """Cops following the closed form ``literal_cop_set``.

    Kept to exhibit trees on which that form loses; the guarded variant
    above is the one to use.
    """

    def target(self, v, c: frozenset) -> frozenset:
        want = self.tree.literal_cop_set(v, self.k)
        if self.retire:
            return frozenset(c & want | ({v} & want))
        if v not in want or v in c:
            return c
        if len(c) < self.k:
            return c | {v}
        loose = sorted((x for x in c if x not in want), key=lambda u: (self.tree.depth[u], str(u)))
        return (c - {loose[0]}) | {v} if loose else c
