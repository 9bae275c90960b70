"""Baseline players and the match-evaluation harness.

Matches aggregate mbb/h, average final stacks, win rate and a normal-
approximation confidence interval.  Duplicate pairing plays every deal
sequence twice with seats swapped so card luck cancels exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import cards as cards_mod
from . import encoding, engine, neural
from .engine import Action, ActionKind, GameConfig, PlayerView
from .strategy import average_pi, choose_policy_mode, greedy_beta, masked_softmax, MixtureConfig, PolicyMode


class Player:
    """Anything that can pick one of the legal actions from its view."""

    name = "player"

    def begin_game(self, game_seed: int) -> None:  # per-game RNG reset hook
        pass

    def act(self, view: PlayerView) -> Action:
        raise NotImplementedError


class CallPlayer(Player):
    name = "call"

    def act(self, view: PlayerView) -> Action:
        return next(a for a in view.legal if a.kind == ActionKind.CHECK_CALL)


class AlwaysFoldPlayer(Player):
    name = "always-fold"

    def act(self, view: PlayerView) -> Action:
        for a in view.legal:
            if a.kind == ActionKind.FOLD:
                return a
        return next(a for a in view.legal if a.kind == ActionKind.CHECK_CALL)


class RandomPlayer(Player):
    """Calls 3 times out of 5; the rest splits evenly between a random raise and a fold."""

    name = "random"

    def __init__(self, seed: int = 0):
        self._seed = seed
        self._rng = np.random.default_rng(seed)

    def begin_game(self, game_seed: int) -> None:
        self._rng = np.random.default_rng(
            int(np.random.SeedSequence([self._seed, game_seed]).generate_state(1)[0])
        )

    def act(self, view: PlayerView) -> Action:
        kinds = {a.kind: a for a in view.legal}
        u = self._rng.random()
        if u < 0.6:
            return kinds[ActionKind.CHECK_CALL]
        raises = [
            kinds[k]
            for k in (ActionKind.RAISE_HALF_POT, ActionKind.RAISE_POT, ActionKind.ALL_IN)
            if k in kinds
        ]
        want_raise = u < 0.8
        if want_raise and raises:
            return raises[self._rng.integers(len(raises))]
        if not want_raise and ActionKind.FOLD in kinds:
            return kinds[ActionKind.FOLD]
        # Requested branch unavailable: renormalize over what is legal.
        if raises and not want_raise:
            return raises[self._rng.integers(len(raises))]
        return kinds[ActionKind.CHECK_CALL]


class HeuristicMCPlayer:
    """Thresholds on Monte-Carlo equity: break-even fold, 0.7 pot raise, 0.9 shove."""

    name = "heuristic-mc"

    def __init__(self, n_samples: int = 500, seed: int = 0):
        self.n_samples = n_samples
        self._seed = seed
        self._rng = np.random.default_rng(seed)
        self._counter = 0

    def begin_game(self, game_seed: int) -> None:
        self._counter = int(
            np.random.SeedSequence([self._seed, game_seed]).generate_state(1)[0] % (1 << 30)
        )

    def act(self, view: PlayerView) -> Action:
        self._counter += 1
        eq = cards_mod.equity_mc(
            list(view.hole), list(view.board), self.n_samples, seed=self._counter
        ).win_rate
        kinds = {a.kind: a for a in view.legal}
        call_cost = kinds[ActionKind.CHECK_CALL].chips
        pot_after = view.pot_total + call_cost
        break_even = call_cost / pot_after if pot_after > 0 else 0.0
        if eq > 0.9 and ActionKind.ALL_IN in kinds:
            return kinds[ActionKind.ALL_IN]
        if eq > 0.7 and ActionKind.RAISE_POT in kinds:
            return kinds[ActionKind.RAISE_POT]
        if eq < break_even and ActionKind.FOLD in kinds:
            return kinds[ActionKind.FOLD]
        return kinds[ActionKind.CHECK_CALL]


class CheckpointPlayer:
    """Plays a trained average policy (optionally the full mode mixture)."""

    name = "checkpoint"

    def __init__(
        self,
        pi_net: neural.Network,
        q_net: Optional[neural.Network] = None,
        mc_samples: int = 200,
        seed: int = 0,
        use_mixture: bool = False,
        mixture: Optional[MixtureConfig] = None,
    ):
        self.pi = pi_net
        self.q = q_net
        self.mc_samples = mc_samples
        self._seed = seed
        self._rng = np.random.default_rng(seed)
        self.use_mixture = use_mixture
        self.mixture = mixture or MixtureConfig()
        self._mode = PolicyMode.AVERAGE
        self._prev_frame: Optional[encoding.CardFrame] = None
        self._frame_hand = -1
        self._counter = 0

    def begin_game(self, game_seed: int) -> None:
        self._rng = np.random.default_rng(
            int(np.random.SeedSequence([self._seed, game_seed]).generate_state(1)[0])
        )
        self._prev_frame = None
        self._frame_hand = -1
        self._counter = 0
        self._mode = PolicyMode.AVERAGE
        if self.use_mixture and self.q is not None:
            self._mode = choose_policy_mode(self.mixture, self._rng)

    def _observe(self, view: PlayerView) -> np.ndarray:
        if self._frame_hand != view.hand_index:
            self._prev_frame = None
        self._counter += 1
        scalars = encoding.build_scalars(
            view, n_samples=self.mc_samples, seed=int(self._rng.integers(1 << 62))
        )
        obs = encoding.encode(view, self._prev_frame, scalars)
        self._prev_frame = encoding.frame_of(view)
        self._frame_hand = view.hand_index
        return obs.tensor

    def act(self, view: PlayerView) -> Action:
        mask = np.zeros(engine.NUM_ACTIONS, dtype=bool)
        for a in view.legal:
            mask[a.kind.value] = True
        obs = self._observe(view)
        if self._mode is PolicyMode.BEST_RESPONSE and self.q is not None:
            idx = greedy_beta(self.q.forward(obs), mask, self.mixture.eps_end, self._rng)
        else:
            idx = average_pi(self.pi.forward(obs), mask, self._rng)
        kind = ActionKind(idx)
        return next(a for a in view.legal if a.kind == kind)


def baseline_player(kind: str, seed: int = 0) -> Player:
    table: dict[str, Callable[[], Player]] = {
        "call": CallPlayer,
        "random": lambda: RandomPlayer(seed=seed),
        "heuristic-mc": lambda: HeuristicMCPlayer(seed=seed),
        "always-fold": AlwaysFoldPlayer,
    }
    if kind not in table:
        raise ValueError(f"unknown baseline {kind!r}; choose from {sorted(table)}")
    return table[kind]()


def checkpoint_player(path: str, seat_prefix: str = "p0", **kwargs) -> CheckpointPlayer:
    ck = neural.load_checkpoint(path)
    pi = ck.nets[f"{seat_prefix}_pi"]
    q = ck.nets.get(f"{seat_prefix}_q")
    return CheckpointPlayer(pi, q, **kwargs)


@dataclass
class MatchResult:
    games: int
    hands: int
    mbb_per_hand: tuple[float, float]
    average_final_stack: tuple[float, float]
    win_rate: tuple[float, float]  # game wins (ties at 0.5)
    ci95_mbb: float
    per_hand_deltas: list[int]  # player A's chip delta per hand

    def summary(self) -> str:
        return (
            f"games={self.games} hands={self.hands}\n"
            f"mbb/h A={self.mbb_per_hand[0]:+.2f} B={self.mbb_per_hand[1]:+.2f} "
            f"(95% CI half-width {self.ci95_mbb:.2f})\n"
            f"avg final stack A={self.average_final_stack[0]:.2f} "
            f"B={self.average_final_stack[1]:.2f}\n"
            f"win rate A={self.win_rate[0]:.3f} B={self.win_rate[1]:.3f}"
        )


def confidence_interval(per_hand_deltas: Sequence[float], big_blind: int) -> float:
    """95% half-width on mbb/h from per-hand chip deltas (normal approximation)."""
    n = len(per_hand_deltas)
    if n < 2:
        raise ValueError("need at least 2 hands")
    arr = np.asarray(per_hand_deltas, dtype=np.float64)
    sem = arr.std(ddof=1) / math.sqrt(n)
    return float(1.96 * 1000.0 * sem / big_blind)


def play_game(
    player_a, player_b, config: GameConfig, a_seat: int
) -> tuple[list[int], tuple[int, int]]:
    """One game; returns per-hand deltas for player A and final stacks (A, B)."""
    players = {a_seat: player_a, 1 - a_seat: player_b}
    for p in players.values():
        p.begin_game(config.seed)
    state = engine.new_game(config)
    deltas: list[int] = []
    while not state.game_over:
        seat = state.to_act
        view = engine.player_view(state, seat)
        action = players[seat].act(view)
        state, result, _over = engine.apply_action(state, action)
        if result is not None:
            deltas.append(result.deltas[a_seat])
    return deltas, (state.stacks[a_seat], state.stacks[1 - a_seat])


def play_match(
    player_a,
    player_b,
    n_games: int,
    config: Optional[GameConfig] = None,
    seed: int = 0,
    duplicate: bool = True,
) -> MatchResult:
    """Evaluate A vs B over n_games; duplicate pairing mirrors seats per deal."""
    if n_games < 1:
        raise ValueError("n_games must be >= 1")
    base = config or GameConfig()
    per_hand: list[int] = []
    stacks_a: list[int] = []
    stacks_b: list[int] = []
    wins_a = 0.0
    for g in range(n_games):
        if duplicate:
            deal_seed = int(np.random.SeedSequence([seed, g // 2]).generate_state(1)[0])
            a_seat = g % 2
        else:
            deal_seed = int(np.random.SeedSequence([seed, g]).generate_state(1)[0])
            a_seat = g % 2
        game_cfg = GameConfig(
            starting_stack=base.starting_stack,
            small_blind=base.small_blind,
            max_hands_per_game=base.max_hands_per_game,
            seed=deal_seed,
        )
        deltas, (sa, sb) = play_game(player_a, player_b, game_cfg, a_seat)
        per_hand.extend(deltas)
        stacks_a.append(sa)
        stacks_b.append(sb)
        if sa > sb:
            wins_a += 1.0
        elif sa == sb:
            wins_a += 0.5
    hands = len(per_hand)
    total = sum(per_hand)
    bb = base.big_blind
    mbb_a = engine.mbb_per_hand(total, hands, bb)
    ci = confidence_interval(per_hand, bb) if hands >= 2 else 0.0
    return MatchResult(
        games=n_games,
        hands=hands,
        mbb_per_hand=(mbb_a, -mbb_a),
        average_final_stack=(float(np.mean(stacks_a)), float(np.mean(stacks_b))),
        win_rate=(wins_a / n_games, 1.0 - wins_a / n_games),
        ci95_mbb=ci,
        per_hand_deltas=per_hand,
    )
