"""Strongly synchronizing games, the family G_n, extraction of star
simulations from equivalences, and the evidence pipeline tying them to
entanglement.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .algebra import pad_initial, variable_game
from .arena import BudgetExceeded
from .entanglement import DEFAULT_BUDGET, Digraph, unravel
from .game import ADAM, DRAW, EVA, Game, game_girth, is_bipartite
from .preorder import (MEDIATOR, ComposedStrategy, Copycat, MediatorGame, ThreeBoardGame,
                       _which_board, decide_leq, equiv, solve_mediator)
from .simulation import (InvariantError, SimReport, StarShapeError, WeakSimulation,
                         _simple_reduction, check_star_property, check_weak_simulation,
                         cops_strategy_from_simulation, star_data, verify_entanglement_bound,
                         verify_simulation_strategy)

GN_RANK = 1


# the family G_n --------------------------------------------------------------------


def gn_index(n: int) -> list:
    return [(i, j, k) for i in range(n) for j in range(n) for k in range(6) if k or j == 0]


def _v(t):
    return "v_%d_%d_%d" % t


def _w(t):
    return "w_%d_%d_%d" % t


@dataclass(frozen=True)
class GnGame:
    n: int
    game: Game
    index: tuple

    def v(self, i, j, k):
        return _v((i, j, k))

    def w(self, i, j, k):
        return _w((i, j, k))


def generate_gn(n: int) -> GnGame:
    """The game G_n: hubs v_i_0_0, spokes v_i_j_1..5 back to hub j, one draw per position."""
    if n < 1:
        raise ValueError("n must be at least 1")
    idx = gn_index(n)
    moves = []
    for t in idx:
        i, j, k = t
        moves.append((_v(t), _w(t)))
        if k == 0:
            moves += [(_v(t), _v((i, jj, 1))) for jj in range(n)]
        elif k < 5:
            moves.append((_v(t), _v((i, j, k + 1))))
        else:
            moves.append((_v(t), _v((j, 0, 0))))
    game = Game.build(
        eva=[_v(t) for t in idx if t[2] % 2 == 1],
        adam=[_v(t) for t in idx if t[2] % 2 == 0],
        draw=[_w(t) for t in idx],
        moves=moves,
        rank={_v(t): GN_RANK for t in idx},
        label={_w(t): "x_%d_%d_%d" % t for t in idx},
        start=_v((0, 0, 0)),
        name=f"G{n}",
    )
    return GnGame(n, game, tuple(idx))


# strong synchronization -----------------------------------------------------------


@dataclass
class SyncReport:
    bipartite: bool
    girth_ok: bool
    condition1_violations: list = field(default_factory=list)
    condition2_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.bipartite and self.girth_ok and not self.condition1_violations
                and not self.condition2_violations)


def comparability(G: Game) -> set:
    """All ordered pairs (g, k) with (G,g) <= (G,k), from one solve of <G,G>."""
    sol = solve_mediator(G, G)
    pos = sorted(G.positions)
    return {(a, b) for a in pos for b in pos if sol.leq(a, b)}


def is_strongly_synchronizing(G: Game) -> SyncReport:
    gr = game_girth(G)
    rep = SyncReport(is_bipartite(G), gr.at_least(5))
    le = comparability(G)
    for g, k in sorted(le):
        if g == k:
            continue
        if (k, g) in le:
            if g < k:
                rep.condition1_violations.append((g, k))
            continue
        ok = (k in G.eva and (k, g) in G.moves) or (g in G.adam and (g, k) in G.moves)
        if not ok:
            rep.condition2_violations.append((g, k))
    return rep


def check_copycat_uniqueness(G: Game) -> tuple:
    """Every non-copycat Mediator move seen along copycat plays must lose.

    Returns ``(ok, deviations_checked, offending)``; the plays start from
    every diagonal position of <G,G>.
    """
    sol = solve_mediator(G, G)
    mg = MediatorGame(G, G)
    cc = Copycat(G)
    seen = set()
    queue = deque()
    for g in sorted(G.positions):
        s = ((g, g), None)
        seen.add(s)
        queue.append(s)
    checked = 0
    bad = []
    while queue:
        pos, mem = queue.popleft()
        if mg.owner(pos) == MEDIATOR:
            mine = cc.choose(pos, mem)
            for mv in mg.moves(pos):
                if mine is not None and tuple(mv) == tuple(mine):
                    continue
                checked += 1
                if sol.leq(*mv[0]):
                    bad.append((pos, mv[0]))
            nexts = [mine] if mine is not None else []
        else:
            nexts = mg.moves(pos)
        for mv in nexts:
            nxt = (mv[0], cc.update(mem, pos, mv))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return (not bad, checked, bad)


# extraction of a star simulation ---------------------------------------------------


class ExtractionError(AssertionError):
    pass


@dataclass
class Extraction:
    G: Game
    H: Game  # possibly padded
    padded: bool
    sim: WeakSimulation
    central_steps: int


def _same_kind(G: Game, g, H: Game, h) -> bool:
    return G.kind(g) == H.kind(h)


def extract_simulation(G: Game, H: Game, S=None, S2=None, limit: int = 1_000_000) -> Extraction:
    """Star simulation of G by H read off T = S || S2 on <G,H,G>.

    R collects the pairs (g, h) met at diagonal positions (g, h, g) with
    g and h of the same kind; each Opponents' move on G is followed under
    T to the next such position and its central moves, cut down to a
    simple path, become the simulating path.
    """
    padded = False
    if G.start in G.draw:
        raise ExtractionError("the start of G must be an Eva or Adam position")
    if not _same_kind(G, G.start, H, H.start):
        H = pad_initial(H, kind=G.kind(G.start))
        padded = True
    if S is None or S2 is None or padded:
        r1, r2 = decide_leq(G, H), decide_leq(H, G)
        if not (r1.holds and r2.holds):
            raise ExtractionError("G and H are not equivalent")
        S, S2 = r1.strategy, r2.strategy
    T = ComposedStrategy(S, S2, G, H, G)
    three = ThreeBoardGame(G, H, G)
    start = (G.start, H.start, G.start)
    rel = {(G.start, H.start)}
    mems = {(G.start, H.start): T.initial(start)}
    queue = deque([(G.start, H.start)])
    sigma = {}
    steps = 0
    while queue:
        g, h = queue.popleft()
        mem = mems[(g, h)]
        if g in G.draw:
            continue
        for g2 in G.succ[g]:
            c = three.moves((g, h, g))
            if g in G.eva:
                mv = next(m for m in c if m[0] == (g2, h, g))
            else:
                mv = next(m for m in c if m[0] == (g, h, g2))
            m2 = T.update(mem, (g, h, g), mv)
            cur = mv[0]
            central = [h]
            visited = set()
            while not (cur[0] == cur[2] == g2 and _same_kind(G, g2, H, cur[1])):
                if three.owner(cur) != MEDIATOR:
                    raise ExtractionError(f"play after {g}->{g2} stopped at {cur}")
                key = (cur, m2)
                if key in visited:
                    raise ExtractionError(f"composite strategy loops after {g}->{g2}")
                visited.add(key)
                nxt = T.choose(cur, m2)
                if nxt is None:
                    raise ExtractionError(f"composite strategy has no move at {cur}")
                if _which_board(cur, nxt[0], nxt[1]) == 1:
                    central.append(nxt[0][1])
                    steps += 1
                m2 = T.update(m2, cur, nxt)
                cur = nxt[0]
                if len(visited) > limit:
                    raise BudgetExceeded("extraction budget exceeded")
            path = _simple_reduction(central)
            if len(path) < 2:
                raise ExtractionError(f"empty simulating path for {g}->{g2} from {h}")
            sigma[(g, g2, h)] = tuple(path)
            pair = (g2, cur[1])
            if pair not in rel:
                rel.add(pair)
                mems[pair] = m2
                queue.append(pair)
    owners = {}
    for g, h in rel:
        if owners.setdefault(h, g) != g:
            raise ExtractionError(f"relation not functional at {h}: {owners[h]} and {g}")
    return Extraction(G, H, padded, WeakSimulation(frozenset(rel), sigma), steps)


# Lemma checks --------------------------------------------------------------------


@dataclass
class MeetingReport:
    item1_checked: int = 0
    item1_violations: list = field(default_factory=list)
    instances: dict = field(default_factory=lambda: {2: 0, 3: 0})
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.item1_violations and not self.violations


def check_meeting_item1(G: Game, rep: MeetingReport | None = None) -> MeetingReport:
    """(G,g) ~ x-hat exactly for draws labelled x, swept over all g and x."""
    rep = rep or MeetingReport()
    for x in sorted(G.variables()) + ["fresh_var"]:
        xh = variable_game(x)
        up = solve_mediator(G, xh)
        down = solve_mediator(xh, G)
        for g in sorted(G.positions):
            eq = up.leq(g, "x") and down.leq("x", g)
            want = g in G.draw and G.label.get(g) == x
            rep.item1_checked += 1
            if eq != want:
                rep.item1_violations.append((g, x, eq))
    return rep


def check_meeting_paths(G: Game, extractions=(), rep: MeetingReport | None = None) -> MeetingReport:
    """Items 2 and 3 on every pair of G-edges whose simulating paths meet."""
    rep = check_meeting_item1(G, rep)
    for ex in extractions:
        H = ex.H
        up = solve_mediator(G, H)  # (G,a) <= (H,h)
        down = solve_mediator(H, G)  # (H,h) <= (G,a)
        Gd = Digraph.from_game(G)
        Hd = Digraph.from_game(H)
        from .simulation import _edge_sets
        for h, edges in sorted(_edge_sets(Gd, ex.sim).items(), key=str):
            for e1, e2 in itertools.combinations(sorted(edges), 2):
                _meeting_case(G, h, e1, e2, up, down, rep)
                _meeting_case(G, h, e2, e1, up, down, rep)
    return rep


def _meeting_case(G, h, e1, e2, up, down, rep):
    (g, g2), (t, t2) = e1, e2
    between = lambda lo, hi: up.leq(lo, h) and down.leq(h, hi)
    card = len({g, g2, t, t2})
    if g in G.eva and t in G.eva:
        if between(g2, g) and between(t2, t):
            rep.instances[2] += 1
            if not ((g == t or g2 == t2) and card == 3):
                rep.violations.append((2, h, e1, e2))
    elif g in G.adam and t in G.adam:
        if between(g, g2) and between(t, t2):
            rep.instances[2] += 1
            if not ((g == t or g2 == t2) and card == 3):
                rep.violations.append((2, h, e1, e2))
    elif g in G.eva and t in G.adam:
        if between(g2, g) and between(t, t2):
            rep.instances[3] += 1
            if not ((g == t2 or g2 == t) and card == 3):
                rep.violations.append((3, h, e1, e2))


def gn_predicted_leq(gn: GnGame, a, b) -> bool:
    """Predicted order between positions of G_n: draws sit next to their owner, moves order neighbours."""
    G = gn.game
    if a == b:
        return True
    if a in G.draw:
        return b in G.eva and b == "v" + a[1:]
    if b in G.draw:
        return a in G.adam and a == "v" + b[1:]
    return (a in G.adam and (a, b) in G.moves) or (b in G.eva and (b, a) in G.moves)


@dataclass
class GnLemmaReport:
    n: int
    pairs: int
    lemma_violations: list  # observed comparabilities the lemmas exclude
    unpredicted_gaps: list  # predicted comparabilities that do not hold

    @property
    def ok(self):
        return not self.lemma_violations

    @property
    def exact(self):
        return not self.lemma_violations and not self.unpredicted_gaps


def check_gn_lemmas(n: int) -> GnLemmaReport:
    gn = generate_gn(n)
    G = gn.game
    le = comparability(G)
    pos = sorted(G.positions)
    viol, gaps = [], []
    for a in pos:
        for b in pos:
            seen = (a, b) in le
            want = gn_predicted_leq(gn, a, b)
            if seen and not want:
                viol.append((a, b))
            elif want and not seen:
                gaps.append((a, b))
    return GnLemmaReport(n, len(pos) ** 2, viol, gaps)


# H-candidates ---------------------------------------------------------------------


def tree_game(G: Game, policy: str = "eager", repeat: int = 1, budget: int = 100_000) -> Game:
    """The unravelling of G from its start, read back as a game."""
    un = unravel(Digraph.from_game(G), G.start, policy=policy, repeat=repeat, budget=budget)
    img = un.image
    name = lambda x: f"t{x}"
    t = un.tree
    moves = [(name(p), name(v)) for v, p in t.parent.items() if p is not None]
    moves += [(name(a), name(b)) for a, b in t.back]
    return Game.build(
        eva=[name(x) for x in img if img[x] in G.eva],
        adam=[name(x) for x in img if img[x] in G.adam],
        draw=[name(x) for x in img if img[x] in G.draw],
        moves=moves,
        rank={name(x): G.rank[img[x]] for x in img if img[x] in G.ranked},
        label={name(x): G.label[img[x]] for x in img if img[x] in G.draw},
        start=name(t.root),
        name=f"unravel({G.name})",
    )


def duplicate_and_merge(G: Game, pos=None) -> Game:
    """Split one position in two copies sharing its moves; every other
    incoming move is redirected to the copy."""
    if pos is None:
        many = [p for p in sorted(G.ranked) if len(G.pred[p]) >= 2]
        pos = many[0] if many else next(p for p in sorted(G.ranked) if G.pred[p])
    twin = pos + "'"
    preds = [(s, pos) for s in sorted(G.pred[pos])]
    # with a single predecessor the copy takes it over
    moved = set(preds[1::2]) if len(preds) > 1 else set(preds)
    moves = {m for m in G.moves if m not in moved}
    moves |= {(s, twin) for s, _ in moved}
    moves |= {(twin, t) for t in G.succ[pos]}
    kind = G.kind(pos)
    return Game(
        eva=G.eva | ({twin} if kind == EVA else set()),
        adam=G.adam | ({twin} if kind == ADAM else set()),
        draw=G.draw, moves=frozenset(moves),
        rank={**G.rank, twin: G.rank[pos]}, label=dict(G.label), start=G.start,
        params=G.params, name=f"dup({G.name})",
    )


def h_candidates(G: Game) -> list:
    """Equivalent variants of G built by padding, unravelling and duplication."""
    tg = tree_game(G)
    return [
        ("identity", G),
        ("pad", pad_initial(G)),
        ("double-pad", pad_initial(pad_initial(G), pad_id="pad2")),
        ("unravel", tg),
        ("unravel-repeat", tree_game(G, policy="repeat", repeat=1)),
        ("pad+unravel", pad_initial(tg)),
        ("duplicate-merge", duplicate_and_merge(G)),
    ]


# the evidence pipeline ------------------------------------------------------------


@dataclass
class EvidenceRow:
    name: str
    size: int
    equivalent: bool
    extracted: bool = False
    weak_ok: bool = False
    star_ok: bool = False
    star_shape_ok: bool = False
    f_in_edge_ok: bool = False
    ent_g: int | None = None
    ent_h: int | None = None
    h_lower: int | None = None
    bound_ok: bool | None = None
    tree_feedback: int | None = None
    strategy_ok: bool | None = None
    invariant_checks: int = 0
    note: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.equivalent and self.extracted and self.weak_ok and self.star_ok
                    and self.star_shape_ok and self.f_in_edge_ok and self.bound_ok
                    and self.strategy_ok)


def f_within_edges(G: Digraph, sim: WeakSimulation, f: dict) -> bool:
    """h on sigma(g, g2, h0) forces f(h) in {g, g2}."""
    for (g, g2, h0), path in sim.sigma.items():
        if (g, h0) in sim.rel:
            if any(f.get(h) not in (g, g2) for h in path):
                return False
    return True


def run_chain(G: Game, H: Game, name: str = "H", budget: int = DEFAULT_BUDGET,
              strategy: bool = True) -> EvidenceRow:
    row = EvidenceRow(name, len(H.positions), equiv(G, H))
    if not row.equivalent:
        row.note = "rejected: not equivalent"
        return row
    try:
        ex = extract_simulation(G, H)
    except ExtractionError as exc:
        row.note = f"extraction failed: {exc}"
        return row
    row.extracted = True
    Gd, Hd = Digraph.from_game(G), Digraph.from_game(ex.H)
    row.weak_ok = check_weak_simulation(Gd, Hd, ex.sim).ok
    row.star_ok = check_star_property(Gd, Hd, ex.sim).ok
    try:
        data = star_data(Gd, Hd, ex.sim)
        row.star_shape_ok = True
        row.f_in_edge_ok = f_within_edges(Gd, ex.sim, data.f)
    except StarShapeError as exc:
        row.note = str(exc)
    bound = verify_entanglement_bound(Gd, Hd, budget=budget)
    row.ent_g, row.ent_h, row.h_lower, row.bound_ok = bound.ent_g, bound.ent_h, bound.h_lower, bound.holds
    if bound.note:
        row.note = bound.note
    if strategy and row.star_ok:
        try:
            cops = cops_strategy_from_simulation(Gd, Hd, ex.sim)
            row.tree_feedback = cops.k
            res = verify_simulation_strategy(cops, limit=budget)
            row.strategy_ok = res.ok
            row.invariant_checks = cops.checked
            if not res.ok:
                row.note = res.reason
        except (InvariantError, AssertionError) as exc:
            row.strategy_ok = False
            row.note = f"strategy: {exc}"
    return row


@dataclass
class EvidenceReport:
    n: int
    sync: SyncReport | None
    rows: list

    @property
    def ok(self):
        return (self.sync is None or self.sync.ok) and all(r.ok for r in self.rows if r.equivalent)


def hierarchy_evidence(n: int, candidates=None, budget: int = DEFAULT_BUDGET,
                       check_sync: bool = True, strategy: bool = True) -> EvidenceReport:
    G = generate_gn(n).game
    sync = is_strongly_synchronizing(G) if check_sync else None
    if candidates is None:
        candidates = h_candidates(G)
    rows = [run_chain(G, H, name, budget, strategy) for name, H in candidates]
    return EvidenceReport(n, sync, rows)
