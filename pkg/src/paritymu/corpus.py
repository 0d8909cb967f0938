"""Random games built from the algebra generators, for property sweeps."""

from __future__ import annotations

import random

from .algebra import (BOTTOM, TOP, bind_variable, dual, join_of, meet_of, pad_initial,
                      substitute, variable_game)
from .game import Game, GameError, restrict_to_reachable, validate
from .preorder import solitaire_traps

VARIABLES = ("x", "y", "z")


def random_term(rng: random.Random, depth: int) -> Game:
    """A random closed-under-the-algebra game over x, y, z."""
    if depth <= 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.08:
            return TOP if rng.random() < 0.5 else BOTTOM
        if r < 0.3:
            return variable_game(rng.choice(VARIABLES))
        labels = rng.sample(VARIABLES, rng.randint(1, 3))
        return (meet_of if rng.random() < 0.5 else join_of)(labels)
    op = rng.random()
    if op < 0.45:
        outer = (meet_of if rng.random() < 0.5 else join_of)(rng.sample(VARIABLES, 2))
        a, b = outer.label["d0"], outer.label["d1"]
        return substitute(outer, {a: random_term(rng, depth - 1), b: random_term(rng, depth - 1)})
    if op < 0.8:
        body = random_term(rng, depth - 1)
        xs = sorted(body.variables())
        if not xs or body.start in body.draw:
            return body
        owner = rng.choice(("eva", "adam"))
        return bind_variable(rng.choice(("mu", "nu")), rng.choice(xs), body, owner=owner)
    if op < 0.92:
        return dual(random_term(rng, depth - 1))
    return pad_initial(random_term(rng, depth - 1))


def usable(game: Game, max_positions: int = 14, max_draws: int = 8) -> bool:
    return (game.start is not None and not validate(game)
            and len(game.positions) <= max_positions and len(game.draw) <= max_draws
            and not solitaire_traps(game))


def random_corpus(count: int = 200, seed: int = 0, depth: int = 3, max_positions: int = 14,
                  max_draws: int = 8) -> list:
    """``count`` distinct reachable games without solitaire traps."""
    rng = random.Random(seed)
    out, seen = [], set()
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count:
            raise RuntimeError("corpus generator stalled")
        try:
            g = restrict_to_reachable(random_term(rng, depth))
        except GameError:
            continue
        if not usable(g, max_positions, max_draws) or g in seen:
            continue
        seen.add(g)
        out.append(g.with_name(f"c{len(out)}"))
    return out


def meet_join_corpus() -> list:
    """Small hand-picked games around x and y, all comparable in known ways."""
    x, y = variable_game("x"), variable_game("y")
    return [
        meet_of(["x", "y"], name="x_and_y"), join_of(["x", "y"], name="x_or_y"), x, y,
        meet_of(["x"], name="x_and"), join_of(["x"], name="x_or"),
        TOP, BOTTOM,
        meet_of(["x", "y", "z"], name="xyz_and"), join_of(["x", "y", "z"], name="xyz_or"),
    ]
