"""Umbrella command line: train, resume, eval, play-serve, equity, project."""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np


def _cmd_train(args) -> int:
    from .trainer import parse_config, run_training

    with open(args.config, encoding="utf-8") as fh:
        config = parse_config(fh.read())
    result = run_training(config, args.out)
    print(
        f"trained {result.episodes} episodes ({result.hands} hands) "
        f"in {result.wall_seconds:.0f}s"
    )
    print(f"checkpoint: {result.checkpoint_path}")
    print(f"metrics:    {result.metrics_path}")
    if result.gap_series:
        print(f"last gap:   {result.gap_series[-1]:.2f} mbb/h")
    return 0


def _cmd_resume(args) -> int:
    from .trainer import resume_training

    result = resume_training(args.checkpoint, args.out, extra_episodes=args.episodes)
    print(f"resumed for {result.episodes} episodes; checkpoint: {result.checkpoint_path}")
    return 0


def _build_eval_player(spec: str, seed: int):
    from . import arena

    if os.path.isfile(spec):
        return arena.checkpoint_player(spec, seed=seed)
    return arena.baseline_player(spec, seed=seed)


def _cmd_eval(args) -> int:
    from . import arena
    from .engine import GameConfig

    player_a = _build_eval_player(args.a, seed=args.seed + 1)
    player_b = _build_eval_player(args.b, seed=args.seed + 2)
    result = arena.play_match(
        player_a,
        player_b,
        n_games=args.games,
        config=GameConfig(seed=args.seed),
        seed=args.seed,
        duplicate=not args.no_duplicate,
    )
    print(f"A = {args.a}")
    print(f"B = {args.b}")
    print(result.summary())
    if args.csv:
        with open(args.csv, "w", encoding="ascii") as fh:
            fh.write("hand,delta_a\n")
            for i, d in enumerate(result.per_hand_deltas):
                fh.write(f"{i},{d}\n")
        print(f"per-hand deltas: {args.csv}")
    return 0


def _cmd_play_serve(args) -> int:
    from .serve import run_server

    checkpoint_dir = None
    static_dir = args.static if args.static else None
    if args.checkpoint:
        checkpoint_dir = os.path.dirname(os.path.abspath(args.checkpoint)) or "."
    if args.checkpoint_dir:
        checkpoint_dir = args.checkpoint_dir
    run_server(checkpoint_dir, static_dir, host=args.host, port=args.port)
    return 0


def _cmd_equity(args) -> int:
    from . import cards

    hole = [cards.Card.from_str(t) for t in args.hole.split()]
    board = [cards.Card.from_str(t) for t in args.board.split()] if args.board else []
    if args.exact:
        est = cards.equity_enumerate(hole, board)
        print(f"exact equity {est.win_rate:.6f} over {est.samples} completions")
    else:
        est = cards.equity_mc(hole, board, n_samples=args.samples, seed=args.seed)
        print(f"mc equity {est.win_rate:.4f} ({est.samples} samples, seed {args.seed})")
    if len(hole) == 2:
        print(f"preflop class {cards.canonical_hole_name(hole)} rank {cards.preflop_rank(hole)}/169")
    return 0


def _cmd_project(args) -> int:
    from .strategy import project_simplex

    x = np.array([float(t) for t in args.vector.split(",")])
    out = project_simplex(x)
    print(" ".join(f"{v:.6f}" for v in out))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="nfspgp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="run self-play training from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("resume", help="continue training from a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--episodes", type=int, default=None)
    p.set_defaults(func=_cmd_resume)

    p = sub.add_parser("eval", help="evaluate two players over a match")
    p.add_argument("--a", required=True, help="checkpoint path or baseline name")
    p.add_argument("--b", required=True)
    p.add_argument("--games", type=int, default=250)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-duplicate", action="store_true")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("play-serve", help="serve human-vs-agent games over HTTP")
    p.add_argument("--checkpoint", default=None, help="a checkpoint file (its directory is served)")
    p.add_argument("--checkpoint-dir", default=None)
    p.add_argument("--static", default=None, help="directory with the web UI build")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_play_serve)

    p = sub.add_parser("equity", help="hole[,board] equity from the heuristics")
    p.add_argument("hole", help="e.g. 'As Kd'")
    p.add_argument("board", nargs="?", default="", help="e.g. 'Qh 7s 2c'")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=_cmd_equity)

    p = sub.add_parser("project", help="project a comma-separated vector onto the simplex")
    p.add_argument("vector")
    p.set_defaults(func=_cmd_project)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
