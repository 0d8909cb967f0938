"""Finite lattices and the interpretation of games in them."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .arena import P0, solve_parity_graph
from .game import Game, max_priority, predecessor, top_positions


class LatticeError(ValueError):
    pass


class FiniteLattice:
    """A finite lattice given by its order; meets and joins are tabulated.

    Elements are addressed by index internally and by name externally.
    """

    def __init__(self, names, leq_pairs, name: str = "L"):
        self.name = name
        self.names = list(names)
        if len(set(self.names)) != len(self.names):
            raise LatticeError("duplicate element")
        if not self.names:
            raise LatticeError("empty lattice")
        n = len(self.names)
        pos = {x: i for i, x in enumerate(self.names)}
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in leq_pairs:
            le[pos[a]][pos[b]] = True
        for k in range(n):  # transitive closure
            for i in range(n):
                if le[i][k]:
                    row = le[k]
                    for j in range(n):
                        if row[j]:
                            le[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise LatticeError(f"not antisymmetric: {self.names[i]}, {self.names[j]}")
        self.le = le
        self.index = pos
        self.join = [[self._bound(i, j, upper=True) for j in range(n)] for i in range(n)]
        self.meet = [[self._bound(i, j, upper=False) for j in range(n)] for i in range(n)]
        self.bottom = self._extreme(upper=False)
        self.top = self._extreme(upper=True)

    def _bound(self, i, j, upper):
        n = len(self.names)
        if upper:
            cands = [k for k in range(n) if self.le[i][k] and self.le[j][k]]
            best = [k for k in cands if all(self.le[k][m] for m in cands)]
        else:
            cands = [k for k in range(n) if self.le[k][i] and self.le[k][j]]
            best = [k for k in cands if all(self.le[m][k] for m in cands)]
        if len(best) != 1:
            kind = "join" if upper else "meet"
            raise LatticeError(f"no {kind} for {self.names[i]}, {self.names[j]}")
        return best[0]

    def _extreme(self, upper):
        n = len(self.names)
        for k in range(n):
            if all((self.le[m][k] if upper else self.le[k][m]) for m in range(n)):
                return k
        raise LatticeError("no top or bottom")

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"FiniteLattice({self.name!r}, {len(self)} elements)"

    def leq(self, a: int, b: int) -> bool:
        return self.le[a][b]

    def join_all(self, items) -> int:
        out = self.bottom
        for x in items:
            out = self.join[out][x]
        return out

    def meet_all(self, items) -> int:
        out = self.top
        for x in items:
            out = self.meet[out][x]
        return out

    def height(self) -> int:
        """Number of elements on a longest chain minus one."""
        n = len(self.names)
        order = sorted(range(n), key=lambda i: sum(self.le[j][i] for j in range(n)))
        best = [0] * n
        for i in order:
            for j in range(n):
                if j != i and self.le[j][i]:
                    best[i] = max(best[i], best[j] + 1)
        return max(best)

    def is_distributive(self) -> bool:
        n = len(self)
        return all(self.meet[a][self.join[b][c]] == self.join[self.meet[a][b]][self.meet[a][c]]
                   for a in range(n) for b in range(n) for c in range(n))


# standard lattices -----------------------------------------------------------


def chain(n: int) -> FiniteLattice:
    names = [str(i) for i in range(n)]
    return FiniteLattice(names, [(names[i], names[i + 1]) for i in range(n - 1)], name=f"chain{n}")


def boolean(k: int) -> FiniteLattice:
    names = ["".join(b) for b in itertools.product("01", repeat=k)]
    pairs = [(a, b) for a in names for b in names if all(x <= y for x, y in zip(a, b))]
    return FiniteLattice(names, pairs, name=f"bool{k}")


def diamond() -> FiniteLattice:
    return FiniteLattice(["0", "a", "b", "c", "1"],
                         [("0", x) for x in "abc"] + [(x, "1") for x in "abc"], name="M3")


def pentagon() -> FiniteLattice:
    return FiniteLattice(["0", "a", "b", "c", "1"],
                         [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")], name="N5")


def random_closure_lattice(rng: random.Random, max_size: int = 12, ground: int = 4) -> FiniteLattice:
    """Lattice of a random intersection-closed family of subsets."""
    full = frozenset(range(ground))
    while True:
        family = {full}
        for _ in range(rng.randint(1, 6)):
            family.add(frozenset(x for x in range(ground) if rng.random() < 0.5))
        changed = True
        while changed:
            changed = False
            for a, b in list(itertools.combinations(family, 2)):
                c = a & b
                if c not in family:
                    family.add(c)
                    changed = True
        if len(family) <= max_size:
            break
    elems = sorted(family, key=lambda s: (len(s), sorted(s)))
    names = ["{" + ",".join(map(str, sorted(s))) + "}" for s in elems]
    pairs = [(names[i], names[j]) for i, a in enumerate(elems) for j, b in enumerate(elems) if a <= b]
    return FiniteLattice(names, pairs, name=f"closure{len(elems)}")


def sampling_set(seed: int = 0, randoms: int = 2) -> list:
    rng = random.Random(seed)
    out = [chain(2), chain(4), boolean(3), diamond(), pentagon()]
    out += [random_closure_lattice(rng) for _ in range(randoms)]
    return out


def parse_lattice(text: str) -> FiniteLattice:
    name = None
    names, pairs = [], []
    done = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        if head == "lattice" and name is None:
            name = args[0] if args else "L"
        elif head == "elem" and len(args) == 1:
            names.append(args[0])
        elif head == "leq" and len(args) == 2:
            pairs.append((args[0], args[1]))
        elif head == "end":
            done = True
        else:
            raise LatticeError(f"line {lineno}: bad record {line!r}")
    if name is None or not done:
        raise LatticeError("lattice block must start with 'lattice' and close with 'end'")
    known = set(names)
    for a, b in pairs:
        if a not in known or b not in known:
            raise LatticeError(f"leq mentions unknown element: {a} {b}")
    return FiniteLattice(names, pairs, name=name)


def serialize_lattice(lat: FiniteLattice) -> str:
    lines = [f"lattice {lat.name}"] + [f"elem {x}" for x in lat.names]
    n = len(lat)
    for i in range(n):
        for j in range(n):
            if i != j and lat.le[i][j]:
                # covering pairs are enough
                if not any(k not in (i, j) and lat.le[i][k] and lat.le[k][j] for k in range(n)):
                    lines.append(f"leq {lat.names[i]} {lat.names[j]}")
    lines.append("end")
    return "\n".join(lines) + "\n"


# evaluation ------------------------------------------------------------------


@dataclass
class EvalStats:
    rounds: int = 0  # Kleene steps that changed the outermost approximant
    calls: int = 0


@dataclass
class _Plan:
    """Predecessor chain of a game, computed once per game."""
    game: Game
    top: frozenset = frozenset()
    least: bool = True
    inner: "_Plan | None" = None
    succ: dict = field(default_factory=dict)


_PLANS: dict = {}


def _plan(game: Game) -> _Plan:
    plan = _PLANS.get(game)
    if plan is not None:
        return plan
    if not game.ranked:
        plan = _Plan(game)
    else:
        top = top_positions(game)
        plan = _Plan(game, top, max_priority(game) % 2 == 1, _plan(predecessor(game)),
                     {t: tuple(game.succ[t]) for t in top})
    if len(_PLANS) > 20000:
        _PLANS.clear()
    _PLANS[game] = plan
    return plan


def _eval(plan: _Plan, lat: FiniteLattice, val: dict, stats: EvalStats | None, outer: bool) -> dict:
    if stats is not None:
        stats.calls += 1
    if plan.inner is None:
        return {}
    init = lat.bottom if plan.least else lat.top
    x = {t: init for t in plan.top}
    game = plan.game
    eva = game.eva
    while True:
        env = dict(val)
        env.update(x)
        inner = _eval(plan.inner, lat, env, stats, False)
        env.update(inner)
        new = {}
        for t in plan.top:
            vals = [env[s] for s in plan.succ[t]]
            new[t] = lat.join_all(vals) if t in eva else lat.meet_all(vals)
        if new == x:
            out = dict(inner)
            out.update(x)
            return out
        if outer and stats is not None:
            stats.rounds += 1
        x = new


def valuation_from_env(game: Game, lat: FiniteLattice, env: dict) -> dict:
    """Valuation by draw position from a map variable -> element name."""
    return {d: lat.index[env[game.label[d]]] for d in game.draw if d in game.label}


def evaluate(game: Game, lat: FiniteLattice, valuation: dict, stats: EvalStats | None = None) -> dict:
    """The interpretation of ``game`` at ``valuation`` (draw position -> element index).

    Returns the value of every Eva/Adam position.
    """
    missing = game.draw - set(valuation)
    if missing:
        raise LatticeError(f"valuation misses draw positions {sorted(missing)}")
    return _eval(_plan(game), lat, dict(valuation), stats, True)


def value_at(game: Game, lat: FiniteLattice, valuation: dict, pos=None) -> int:
    pos = game.start if pos is None else pos
    if pos in game.draw:
        return valuation[pos]
    return evaluate(game, lat, valuation)[pos]


def eval_env(game: Game, lat: FiniteLattice, env: dict, pos=None) -> int:
    """Value at ``pos`` (default start) with variables named in ``env``."""
    return value_at(game, lat, valuation_from_env(game, lat, env), pos)


def eval_closed_in_two(game: Game, valuation: dict) -> int:
    """Value in the two-element chain through the parity solver.

    A draw valued 1 becomes a dead end for Adam, a draw valued 0 a dead
    end for Eva; Eva is player 0 and wins on even maxima.
    """
    if game.start in game.draw:
        return valuation[game.start]
    order = sorted(game.positions)
    idx = {p: i for i, p in enumerate(order)}
    succ = [[idx[t] for t in game.succ[p]] for p in order]
    owner = []
    for p in order:
        if p in game.eva:
            owner.append(0)
        elif p in game.adam:
            owner.append(1)
        else:
            owner.append(1 if valuation[p] == 1 else 0)
    prio = [game.rank.get(p, 0) for p in order]
    sol = solve_parity_graph(succ, owner, prio)
    return 1 if sol.winner[idx[game.start]] == P0 else 0


@dataclass
class MonotoneReport:
    samples: int
    violations: list

    @property
    def ok(self):
        return not self.violations


def check_monotone(game: Game, lat: FiniteLattice, samples: int = 100, seed: int = 0) -> MonotoneReport:
    """Sample pointwise-ordered valuation pairs and compare the results."""
    rng = random.Random(seed)
    draws = sorted(game.draw)
    n = len(lat)
    violations = []
    for _ in range(samples):
        v = {d: rng.randrange(n) for d in draws}
        w = {}
        for d in draws:
            ups = [j for j in range(n) if lat.le[v[d]][j]]
            w[d] = rng.choice(ups)
        a = evaluate(game, lat, v)
        b = evaluate(game, lat, w)
        for p in a:
            if not lat.le[a[p]][b[p]]:
                violations.append((v, w, p))
    return MonotoneReport(samples, violations)
