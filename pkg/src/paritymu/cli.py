"""Command line front end.

Exit codes: 0 success or true, 1 false or negative result, 2 usage or
parse error.  Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .arena import BudgetExceeded
from .entanglement import DEFAULT_BUDGET, Digraph, entanglement, solve_ent
from .game import Game, GameError, ParseError, parse, parse_games, serialize, to_dot, validate
from .lattice import LatticeError, eval_env, parse_lattice
from .preorder import MediatorGame, decide_leq, equiv, strategy_table
from .simulation import check_star_property, check_weak_simulation, parse_simulation, serialize_simulation
from .synchronizing import (ExtractionError, generate_gn, h_candidates, is_strongly_synchronizing,
                            extract_simulation, run_chain)

OK, FALSE, USAGE = 0, 1, 2
SYNC_BUDGET = 5000  # pairs of positions solved by sync-check without --budget


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _game(path: str, check: bool = True) -> Game:
    try:
        g = parse(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if check:
        problems = validate(g)
        if problems:
            raise UsageError(f"{path}: invalid game: {problems[0]}")
    return g


def _pointed(path: str) -> Game:
    g = _game(path)
    if g.start is None:
        raise UsageError(f"{path}: game has no start")
    return g


# subcommands ---------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    try:
        games = parse_games(_read(args.file))
    except ParseError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    code = OK
    for g in games:
        problems = validate(g)
        if problems:
            code = FALSE
            for p in problems:
                print(f"{g.name}: {p}", file=out)
        else:
            print(f"{g.name}: ok", file=out)
    return code


def cmd_gen_gn(args, out) -> int:
    if args.n < 1:
        raise UsageError("N must be at least 1")
    out.write(serialize(generate_gn(args.n).game))
    return OK


def _pos_text(p) -> str:
    return ",".join(map(str, p)) if isinstance(p, tuple) else str(p)


def cmd_leq(args, out) -> int:
    a, b = _pointed(args.a), _pointed(args.b)
    res = decide_leq(a, b)
    print("true" if res.holds else "false", file=out)
    if res.holds and args.witness:
        mg = MediatorGame(a, b)
        rows = strategy_table(mg.owner, mg.moves, mg.start(), res.strategy, limit=args.budget)
        mems = {}
        for _, mem, _ in rows:
            mems.setdefault(mem, len(mems))
        print(f"# witness: {len(rows)} rows, {len(mems)} memory states", file=out)
        for pos, mem, mv in rows:
            dst = "-" if mv is None else _pos_text(mv[0])
            print(f"{_pos_text(pos)} m{mems[mem]} -> {dst}", file=out)
    return OK if res.holds else FALSE


def cmd_equiv(args, out) -> int:
    ok = equiv(_pointed(args.a), _pointed(args.b))
    print("true" if ok else "false", file=out)
    return OK if ok else FALSE


def cmd_eval(args, out) -> int:
    g = _pointed(args.game)
    try:
        lat = parse_lattice(_read(args.lattice))
    except LatticeError as exc:
        raise UsageError(f"{args.lattice}: {exc}") from None
    env = {}
    for item in args.env:
        if "=" not in item:
            raise UsageError(f"bad assignment {item!r}, expected var=element")
        x, e = item.split("=", 1)
        if e not in lat.index:
            raise UsageError(f"{e!r} is not an element of {lat.name}")
        env[x] = e
    missing = sorted(g.variables() - set(env))
    if missing:
        raise UsageError("no value for " + ", ".join(missing))
    at = args.at or g.start
    if at not in g.positions:
        raise UsageError(f"unknown position {at}")
    print(lat.names[eval_env(g, lat, env, at)], file=out)
    return OK


def cmd_ent(args, out) -> int:
    dg = Digraph.from_game(_game(args.file, check=False))
    try:
        if args.k is None:
            print(entanglement(dg, budget=args.budget), file=out)
            return OK
        win = solve_ent(dg, args.k, budget=args.budget).cops_win
    except BudgetExceeded as exc:
        raise UsageError(f"{exc}; raise --budget") from None
    print(f"k={args.k}: {'cops' if win else 'thief'}", file=out)
    return OK if win else FALSE


def cmd_sync_check(args, out) -> int:
    g = _game(args.file)
    budget = args.budget if args.budget is not None else SYNC_BUDGET
    if len(g.positions) ** 2 > budget:
        raise UsageError(f"<G,G> has {len(g.positions) ** 2} position pairs; pass --budget")
    rep = is_strongly_synchronizing(g)
    print(f"bipartite: {rep.bipartite}", file=out)
    print(f"girth>4: {rep.girth_ok}", file=out)
    print(f"condition1 violations: {len(rep.condition1_violations)}", file=out)
    for a, b in rep.condition1_violations[:10]:
        print(f"  {a} ~ {b}", file=out)
    print(f"condition2 violations: {len(rep.condition2_violations)}", file=out)
    for a, b in rep.condition2_violations[:10]:
        print(f"  {a} <= {b}", file=out)
    print("strongly synchronizing" if rep.ok else "not strongly synchronizing", file=out)
    return OK if rep.ok else FALSE


def cmd_simcheck(args, out) -> int:
    G, H = _game(args.g), _game(args.h)
    try:
        sim = parse_simulation(_read(args.sim))
    except ValueError as exc:
        raise UsageError(f"{args.sim}: {exc}") from None
    Gd, Hd = Digraph.from_game(G), Digraph.from_game(H)
    weak = check_weak_simulation(Gd, Hd, sim)
    star = check_star_property(Gd, Hd, sim)
    print(f"weak simulation: {'ok' if weak.ok else 'fails'}", file=out)
    for p in weak.problems[:10]:
        print(f"  {p}", file=out)
    print(f"star property: {'ok' if star.ok else 'fails'}", file=out)
    for p in star.problems[:10]:
        print(f"  {p}", file=out)
    return OK if weak.ok and star.ok else FALSE


def cmd_extract_sim(args, out) -> int:
    G, H = _pointed(args.g), _pointed(args.h)
    try:
        ex = extract_simulation(G, H)
    except ExtractionError as exc:
        print(f"extraction failed: {exc}", file=sys.stderr)
        return FALSE
    if ex.padded:
        print("# H was padded with a relay at its start", file=out)
        if args.padded_out:
            Path(args.padded_out).write_text(serialize(ex.H))
    out.write(serialize_simulation(ex.sim))
    return OK


def _row(job):
    G, name, H, budget, strategy = job
    return run_chain(G, H, name, budget, strategy)


def cmd_evidence(args, out) -> int:
    if args.n < 1:
        raise UsageError("N must be at least 1")
    G = generate_gn(args.n).game
    if args.h_files:
        cands = [(Path(p).stem, _pointed(p)) for p in args.h_files]
    else:
        cands = h_candidates(G)
    jobs = [(G, name, H, args.budget, not args.no_strategy) for name, H in cands]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(j) for j in jobs]
    print(f"G{args.n}: {len(G.positions)} positions", file=out)
    print("candidate\tsize\tequiv\tweak\tstar\tent(G)\tent(H)\tbound\tfeedback\tstrategy\tchecks", file=out)
    show = lambda v: "-" if v is None else str(v)
    for r in rows:
        print("\t".join([r.name, str(r.size), show(r.equivalent), show(r.weak_ok), show(r.star_ok),
                         show(r.ent_g), show(r.ent_h), show(r.bound_ok), show(r.tree_feedback),
                         show(r.strategy_ok), str(r.invariant_checks)]), file=out)
        if r.note:
            print(f"  note: {r.note}", file=out)
    good = all(r.ok for r in rows if r.equivalent)
    print("all chains hold" if good else "some chain fails", file=out)
    return OK if good else FALSE


def cmd_export_dot(args, out) -> int:
    out.write(to_dot(_game(args.file, check=False)))
    return OK


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paritymu", description="Parity games with draws.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("validate", help="check well-formedness")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("gen-gn", help="print the game G_N")
    s.add_argument("n", type=int)
    s.set_defaults(fn=cmd_gen_gn)

    for name, fn, helptext in (("leq", cmd_leq, "decide A <= B"), ("equiv", cmd_equiv, "decide A ~ B")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("a")
        s.add_argument("b")
        if name == "leq":
            s.add_argument("--witness", action="store_true", help="dump the transducer table")
            s.add_argument("--budget", type=int, default=10000, help="max table rows")
        s.set_defaults(fn=fn)

    s = sub.add_parser("eval", help="value in a finite lattice")
    s.add_argument("game")
    s.add_argument("lattice")
    s.add_argument("env", nargs="*", metavar="VAR=ELEM")
    s.add_argument("--at", help="position to evaluate (default: start)")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("ent", help="entanglement, or the winner for a given k")
    s.add_argument("file")
    s.add_argument("-k", type=int)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max arena states")
    s.set_defaults(fn=cmd_ent)

    s = sub.add_parser("sync-check", help="strong synchronization")
    s.add_argument("file")
    s.add_argument("--budget", type=int, help=f"max position pairs (default {SYNC_BUDGET})")
    s.set_defaults(fn=cmd_sync_check)

    s = sub.add_parser("simcheck", help="check a star weak simulation")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("sim")
    s.set_defaults(fn=cmd_simcheck)

    s = sub.add_parser("extract-sim", help="simulation read off an equivalence")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--padded-out", help="where to write H when it had to be padded")
    s.set_defaults(fn=cmd_extract_sim)

    s = sub.add_parser("evidence", help="run the extraction chain on G_N")
    s.add_argument("n", type=int)
    s.add_argument("h_files", nargs="*")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--no-strategy", action="store_true", help="skip the Cops strategy check")
    s.set_defaults(fn=cmd_evidence)

    s = sub.add_parser("export-dot", help="Graphviz rendering")
    s.add_argument("file")
    s.set_defaults(fn=cmd_export_dot)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args, out)
    except (UsageError, GameError) as exc:
        print(f"paritymu: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
