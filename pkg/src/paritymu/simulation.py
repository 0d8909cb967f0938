"""Weak simulations, the star property, lifting through covers and the
Cops strategy that turns a star simulation into an entanglement bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .arena import BudgetExceeded, VerifyResult
from .entanglement import (COPS, DEFAULT_BUDGET, PRE, Digraph, EntGame, Strategy,
                           TreeWithBackEdges, Unravelling, ent_game_winner, entanglement,
                           unravel, verify_cops_strategy)
from .game import girth_undirected


@dataclass
class WeakSimulation:
    """Relation ``rel`` of pairs (g, h) and path map ``sigma[(g, g2, h)] -> tuple``."""

    rel: frozenset
    sigma: dict

    def related(self, g) -> list:
        return sorted((h for (x, h) in self.rel if x == g), key=str)

    def inverse(self) -> dict:
        out = {}
        for g, h in self.rel:
            out.setdefault(h, set()).add(g)
        return out


@dataclass
class SimReport:
    ok: bool
    problems: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_weak_simulation(G: Digraph, H: Digraph, sim: WeakSimulation) -> SimReport:
    problems = []
    hset = set(H.vertices)
    for g, h in sorted(sim.rel, key=str):
        if g not in G.index or h not in hset:
            problems.append(f"pair ({g}, {h}) leaves the vertex sets")
    covered = {g for g, _ in sim.rel}
    missing = [g for g in G.vertices if g not in covered]
    if missing:
        problems.append(f"not surjective: no partner for {missing[:5]}")
    for h, gs in sorted(sim.inverse().items(), key=str):
        if len(gs) > 1:
            problems.append(f"not functional: {sorted(gs, key=str)} all related to {h}")
    for g, h in sorted(sim.rel, key=str):
        if g not in G.index:
            continue
        for g2 in G.succ[g]:
            path = sim.sigma.get((g, g2, h))
            if path is None:
                problems.append(f"sigma({g},{g2},{h}) undefined")
                continue
            if len(path) < 2:
                problems.append(f"sigma({g},{g2},{h}) is an empty path")
                continue
            if path[0] != h:
                problems.append(f"sigma({g},{g2},{h}) does not start at {h}")
            if len(set(path)) != len(path):
                problems.append(f"sigma({g},{g2},{h}) is not simple")
            for a, b in zip(path, path[1:]):
                if (a, b) not in H.edges:
                    problems.append(f"sigma({g},{g2},{h}) uses a non-edge {a}->{b}")
                    break
            if (g2, path[-1]) not in sim.rel:
                problems.append(f"sigma({g},{g2},{h}) ends at {path[-1]}, not related to {g2}")
    return SimReport(not problems, problems)


def _edge_sets(G: Digraph, sim: WeakSimulation) -> dict:
    """C(h): the G-edges whose simulating paths visit h."""
    out = {}
    for (g, g2, h0), path in sim.sigma.items():
        if (g, g2) not in G.edges or (g, h0) not in sim.rel:
            continue
        for h in path:
            out.setdefault(h, set()).add((g, g2))
    return out


def check_star_property(G: Digraph, H: Digraph, sim: WeakSimulation) -> SimReport:
    problems = []
    gr = girth_undirected(G.vertices, G.edges)
    if not gr.at_least(4):
        problems.append(f"girth < 4 (girth {gr.girth}, loops {gr.has_loops}, "
                        f"2-cycles {gr.has_two_cycles})")
    for h, edges in sorted(_edge_sets(G, sim).items(), key=str):
        for e1, e2 in itertools.combinations(sorted(edges, key=str), 2):
            if len(set(e1) | set(e2)) != 3:
                problems.append(f"edges {e1} and {e2} share vertex {h} of H")
    return SimReport(not problems, problems)


class StarShapeError(AssertionError):
    pass


@dataclass
class StarData:
    C: dict
    center: dict
    f: dict


def star_data(G: Digraph, H: Digraph, sim: WeakSimulation) -> StarData:
    """C(h), the center c(h) where unique, and the map f."""
    C = _edge_sets(G, sim)
    center, f = {}, {}
    has_pred = {h: bool(H.pred[h]) for h in H.vertices}
    for h, edges in C.items():
        common = set.intersection(*(set(e) for e in edges))
        if not common:
            raise StarShapeError(f"C({h}) = {sorted(edges, key=str)} is not a star")
        if len(edges) >= 2:
            if len(common) != 1:
                raise StarShapeError(f"C({h}) has no unique center")
            center[h] = next(iter(common))
            f[h] = center[h]
        else:
            (g, g2), = edges
            f[h] = g2 if has_pred[h] else g
    return StarData(C, center, f)


def lift_path(K: Digraph, rho: dict, k0, path) -> tuple:
    """The unique path of K from ``k0`` whose image is ``path``."""
    if rho[k0] != path[0]:
        raise ValueError("start of lift does not lie over the path")
    out = [k0]
    for h in path[1:]:
        nxt = [k for k in K.succ[out[-1]] if rho[k] == h]
        if len(nxt) != 1:
            raise ValueError(f"no unique lift of step to {h}")
        out.append(nxt[0])
    return tuple(out)


def lift_through_cover(G: Digraph, sim: WeakSimulation, K: Digraph, rho: dict) -> WeakSimulation:
    rel_by_h = sim.inverse()
    rel = set()
    sigma = {}
    for k in K.vertices:
        for g in rel_by_h.get(rho[k], ()):
            rel.add((g, k))
            for g2 in G.succ[g]:
                path = sim.sigma.get((g, g2, rho[k]))
                if path is not None:
                    sigma[(g, g2, k)] = lift_path(K, rho, k, path)
    return WeakSimulation(frozenset(rel), sigma)


def identity_simulation(G: Digraph) -> WeakSimulation:
    return WeakSimulation(frozenset((g, g) for g in G.vertices),
                          {(g, g2, g): (g, g2) for g, g2 in G.edges})


def subdivision(G: Digraph) -> tuple:
    """H replaces every edge g->g2 by g -> (g,g2) -> g2; returns (H, simulation)."""
    mids = {e: f"{e[0]}~{e[1]}" for e in G.edges}
    edges = set()
    for (g, g2), m in mids.items():
        edges |= {(g, m), (m, g2)}
    H = Digraph.from_edges(tuple(G.vertices) + tuple(sorted(mids.values())), edges)
    sim = WeakSimulation(frozenset((g, g) for g in G.vertices),
                         {(g, g2, g): (g, m, g2) for (g, g2), m in mids.items()})
    return H, sim


# text format --------------------------------------------------------------------


def serialize_simulation(sim: WeakSimulation) -> str:
    lines = [f"rel {g} {h}" for g, h in sorted(sim.rel, key=str)]
    for (g, g2, h), path in sorted(sim.sigma.items(), key=str):
        lines.append(f"path {g} {g2} {h} : " + " ".join(map(str, path)))
    return "\n".join(lines) + "\n"


def parse_simulation(text: str) -> WeakSimulation:
    rel = set()
    sigma = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head == "rel" and len(args) == 2:
            rel.add((args[0], args[1]))
        elif head == "path" and len(args) >= 5 and args[3] == ":":
            sigma[(args[0], args[1], args[2])] = tuple(args[4:])
        else:
            raise ValueError(f"line {lineno}: bad simulation record {line!r}")
    return WeakSimulation(frozenset(rel), sigma)


# the Cops strategy built from a star simulation ---------------------------------------


class AbandonError(AssertionError):
    """The simulated path left the subtree of the current vertex."""


class InvariantError(AssertionError):
    pass


@dataclass
class _Board:
    """One unravelling of H used after a given first Thief vertex."""

    unravelling: Unravelling
    digraph: Digraph
    sim: WeakSimulation
    f: dict

    @property
    def tree(self) -> TreeWithBackEdges:
        return self.unravelling.tree


def _simple_reduction(path) -> list:
    """Cut cycles at the first revisit, scanning left to right."""
    out = []
    where = {}
    for v in path:
        if v in where:
            cut = where[v]
            for u in out[cut + 1:]:
                del where[u]
            del out[cut + 1:]
        else:
            where[v] = len(out)
            out.append(v)
    return out


class SimulationCops(Strategy):
    """Cops in ET(G, k+2) driven by a star simulation of G by H.

    For each first Thief vertex g the strategy unravels H from a partner
    of g, lifts the simulation to the tree, and plays the canonical
    strategy on the tree through the map f.  Memory is
    ``(g0, p, c, h)``; ``p`` is ``None`` before the first simulated move.
    Every round checks the four proof invariants and raises if one fails.
    """

    player = COPS

    def __init__(self, G: Digraph, H: Digraph, sim: WeakSimulation, budget: int = 100_000):
        self.G, self.H, self.sim = G, H, sim
        self.boards = {}
        for g in G.vertices:
            partners = sim.related(g)
            if not partners:
                raise ValueError(f"{g} has no partner in H")
            un = unravel(H, partners[0], policy="root-not-return", budget=budget)
            K = un.tree.digraph()
            lifted = lift_through_cover(G, sim, K, un.image)
            data = star_data(G, K, lifted)
            self.boards[g] = _Board(un, K, lifted, data.f)
        self.k = max(b.tree.feedback() for b in self.boards.values())
        self.cops = self.k + 2
        self.rounds = 0
        self.checked = 0
        self._cache = {}

    def initial(self, start):
        return None

    def _f(self, board, x):
        try:
            return board.f[x]
        except KeyError:
            raise InvariantError(f"f undefined at tree vertex {x}") from None

    def _round(self, mem, g2, cops):
        key = (mem, g2, cops)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        g0, p, c, h = mem
        board = self.boards[g0]
        t = board.tree
        f = lambda x: self._f(board, x)
        g = f(c)
        path = board.sim.sigma.get((g, g2, h))
        if path is None:
            raise InvariantError(f"no simulating path for {g}->{g2} from {h}")
        if any(not t.in_subtree(x, c) for x in path[1:]):
            raise AbandonError(f"simulation of {g}->{g2} leaves the subtree of {c}")
        pi = t.tree_path(c, h) + list(path[1:])
        sigma = _simple_reduction(pi)
        if not all(t.is_tree_edge(a, b) for a, b in zip(sigma, sigma[1:])):
            raise InvariantError("reduced path is not a tree path")
        c2 = next((x for x in sigma if f(x) == g2), None)
        if c2 is None:
            raise InvariantError(f"no vertex with image {g2} on the simulated path")
        new = frozenset(f(x) for x in t.guarded_returns(c2)) | {g, g2}
        if not (new - {g2}) <= cops or len(new) > self.cops:
            raise InvariantError(f"cop move {sorted(cops, key=str)} -> {sorted(new, key=str)} "
                                 "is not a generalized replace move")
        newmem = (g0, c, c2, path[-1])
        self._check(board, newmem, g2, new, h)
        out = (new, newmem)
        self._cache[key] = out
        self.rounds += 1
        return out

    def _check(self, board, mem, g, cops, h_prev=None):
        """COPS, TAIL, HEAD and HALT at the Thief position reached."""
        _, p, c, h = mem
        t = board.tree
        f = lambda x: self._f(board, x)
        fp = {f(p)} if p is not None else set()
        want = frozenset(f(x) for x in t.guarded_returns(c)) | fp | {g}
        if want != cops:
            raise InvariantError(f"COPS fails at {g}: {sorted(cops, key=str)} vs {sorted(want, key=str)}")
        if f(c) != g or not t.is_ancestor(c, h):
            raise InvariantError(f"TAIL fails at {g}: f(c)={f(c)}")
        if any(f(x) not in fp | {g} for x in t.tree_path(c, h)):
            raise InvariantError(f"TAIL fails at {g}: the path from c to h leaves f(p), g")
        if p is not None:
            q = f(p)
            path = board.sim.sigma.get((q, g, h_prev))
            if (q, g) not in self.G.edges or path is None or c not in path or path[-1] != h:
                raise InvariantError(f"HEAD fails at {g}")
            seg = t.tree_path(p, c)
            if [x for x in seg if f(x) == g] != [c]:
                raise InvariantError(f"HALT fails at {g}")
        self.checked += 1

    def choose(self, pos, mem):
        if pos == PRE or pos[-1] != "cops":
            return None
        g2, cops, _ = pos
        if mem is None:
            return (g2, frozenset({g2}), "thief"), None
        if not self.G.succ[g2]:
            return (g2, cops, "thief"), None
        new, _ = self._round(mem, g2, cops)
        return (g2, new, "thief"), None

    def update(self, mem, src, move):
        if src == PRE or src[-1] != "cops":
            return mem
        g2, cops, _ = src
        if mem is None:
            board = self.boards[g2]
            root = board.tree.root
            mem = (g2, None, root, root)
            if self.G.succ[g2]:  # a stuck Thief needs no bookkeeping
                self._check(board, mem, g2, frozenset({g2}))
            return mem
        if not self.G.succ[g2]:
            return mem
        return self._round(mem, g2, cops)[1]


def cops_strategy_from_simulation(G: Digraph, H: Digraph, sim: WeakSimulation,
                                  budget: int = 100_000) -> SimulationCops:
    return SimulationCops(G, H, sim, budget=budget)


def verify_simulation_strategy(strategy: SimulationCops, limit: int = DEFAULT_BUDGET) -> VerifyResult:
    """Play the strategy against every Thief in ET(G, k+2)."""
    return verify_cops_strategy(strategy.G, strategy.cops, strategy, retire=True, limit=limit)


@dataclass
class BoundReport:
    ent_g: int | None
    ent_h: int | None  # exact value when within budget
    h_lower: int  # certified lower bound on Ent(H)
    holds: bool | None  # None when skipped
    note: str = ""


def verify_entanglement_bound(G: Digraph, H: Digraph, budget: int = DEFAULT_BUDGET) -> BoundReport:
    """Check Ent(G) <= Ent(H) + 2 with exact solves inside the budget."""
    try:
        eg = entanglement(G, budget=budget)
    except BudgetExceeded as exc:
        return BoundReport(None, None, 0, None, f"skipped: {exc}")
    lower = 0
    exact = None
    k = 0
    while True:
        try:
            won = ent_game_winner(H, k, budget=budget)
        except BudgetExceeded as exc:
            note = f"Ent(H) >= {lower}; larger solves skipped: {exc}"
            break
        if won:
            exact = k
            lower = k
            note = ""
            break
        lower = k + 1
        k += 1
    if lower + 2 >= eg:
        return BoundReport(eg, exact, lower, True, note)
    if exact is not None:
        return BoundReport(eg, exact, lower, False, note)
    return BoundReport(eg, exact, lower, None, note)
