"""Episode environments: uniform step interface over hold'em and Kuhn.

An episode is one game.  The trainer drives: observe the current player,
pick an action, step.  Rewards surface as per-player increments when hands
settle; hold'em rewards are chip deltas normalized by the starting stack,
Kuhn rewards are raw chips.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import encoding, engine, kuhn
from .engine import Action, ActionKind, GameConfig
from .strategy import MixtureConfig


@dataclass
class StepOutcome:
    rewards: tuple[float, float]  # increments credited now (zeros when none)
    hand_finished: bool
    episode_over: bool


def _mix_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


class HoldemEnv:
    """Self-play episode wrapper around the hold'em engine."""

    num_actions = engine.NUM_ACTIONS
    obs_shape = encoding.OBS_SHAPE

    def __init__(self, game_config: GameConfig, mc_samples: int = 200):
        self.base_config = game_config
        self.mc_samples = mc_samples
        self.state: Optional[engine.GameState] = None
        self._episode_seed = 0
        self._decision_counter = 0
        self._prev_frames: list[Optional[encoding.CardFrame]] = [None, None]
        self._frame_hand: list[int] = [0, 0]
        self._game_deltas = [0, 0]
        self._hands = 0

    def new_episode(self, episode_seed: int) -> None:
        cfg = GameConfig(
            starting_stack=self.base_config.starting_stack,
            small_blind=self.base_config.small_blind,
            max_hands_per_game=self.base_config.max_hands_per_game,
            seed=episode_seed,
        )
        self.state = engine.new_game(cfg)
        self._episode_seed = episode_seed
        self._decision_counter = 0
        self._prev_frames = [None, None]
        self._frame_hand = [0, 0]
        self._game_deltas = [0, 0]
        self._hands = 0

    @property
    def done(self) -> bool:
        return self.state is None or self.state.game_over

    def current_player(self) -> int:
        assert self.state is not None and self.state.to_act is not None
        return self.state.to_act

    def legal_mask(self) -> np.ndarray:
        mask = np.zeros(self.num_actions, dtype=bool)
        for act in engine.legal_actions(self.state):
            mask[act.kind.value] = True
        return mask

    def observe(self) -> np.ndarray:
        """Observation tensor for the player to act; deterministic per episode."""
        player = self.current_player()
        view = engine.player_view(self.state, player)
        if self._frame_hand[player] != self.state.hand_index:
            self._prev_frames[player] = None  # new hand: no previous frame
        self._decision_counter += 1
        seed = _mix_seed(self._episode_seed, self._decision_counter)
        scalars = encoding.build_scalars(view, n_samples=self.mc_samples, seed=seed)
        obs = encoding.encode(view, self._prev_frames[player], scalars)
        self._prev_frames[player] = encoding.frame_of(view)
        self._frame_hand[player] = self.state.hand_index
        return obs.tensor

    def step(self, action_index: int) -> StepOutcome:
        state, result, over = engine.apply_action(self.state, Action(ActionKind(action_index)))
        self.state = state
        rewards = (0.0, 0.0)
        finished = result is not None
        if result is not None:
            norm = self.base_config.starting_stack
            rewards = (result.deltas[0] / norm, result.deltas[1] / norm)
            self._game_deltas[0] += result.deltas[0]
            self._game_deltas[1] += result.deltas[1]
            self._hands += 1
        return StepOutcome(rewards=rewards, hand_finished=finished, episode_over=over)

    def game_mbb(self) -> tuple[float, float]:
        """Per-player mbb/h over the finished episode."""
        hands = max(1, self._hands)
        bb = self.base_config.big_blind
        return (
            engine.mbb_per_hand(self._game_deltas[0], hands, bb),
            engine.mbb_per_hand(self._game_deltas[1], hands, bb),
        )

    @property
    def hands_played(self) -> int:
        return self._hands


KUHN_OBS_DIM = kuhn.NUM_CARDS + len(kuhn.DECISION_HISTORIES)


def kuhn_observation(card: int, history: str) -> np.ndarray:
    """Flat card one-hot + decision-history one-hot."""
    obs = np.zeros(KUHN_OBS_DIM, dtype=np.float32)
    obs[card] = 1.0
    obs[kuhn.NUM_CARDS + kuhn.DECISION_HISTORIES.index(history)] = 1.0
    return obs


class KuhnEnv:
    """One Kuhn deal per episode."""

    num_actions = kuhn.NUM_ACTIONS
    obs_shape = (KUHN_OBS_DIM,)

    def __init__(self):
        self.state: Optional[kuhn.KuhnState] = None
        self._payoff0: float = 0.0
        self._terminal = True

    def new_episode(self, episode_seed: int) -> None:
        rng = np.random.default_rng(episode_seed)
        deal = kuhn.ALL_DEALS[rng.integers(len(kuhn.ALL_DEALS))]
        self.state = kuhn.KuhnState(cards=deal)
        self._payoff0 = 0.0
        self._terminal = False

    @property
    def done(self) -> bool:
        return self._terminal

    def current_player(self) -> int:
        assert self.state is not None
        return self.state.to_act

    def legal_mask(self) -> np.ndarray:
        return np.ones(self.num_actions, dtype=bool)

    def observe(self) -> np.ndarray:
        player = self.current_player()
        return kuhn_observation(self.state.cards[player], self.state.history)

    def step(self, action_index: int) -> StepOutcome:
        state, payoff = kuhn.kuhn_transition(self.state, action_index)
        self.state = state
        if payoff is None:
            return StepOutcome(rewards=(0.0, 0.0), hand_finished=False, episode_over=False)
        self._payoff0 = float(payoff)
        self._terminal = True
        return StepOutcome(
            rewards=(self._payoff0, -self._payoff0), hand_finished=True, episode_over=True
        )

    def game_mbb(self) -> tuple[float, float]:
        """Chips/hand stands in for mbb/h; Kuhn has no blinds."""
        return (self._payoff0, -self._payoff0)

    @property
    def hands_played(self) -> int:
        return 1


def kuhn_policy_table(pi_net) -> dict[tuple[int, str], np.ndarray]:
    """Extract the average behavioral policy over all 12 Kuhn infosets."""
    from .strategy import masked_softmax

    table = {}
    mask = np.ones(kuhn.NUM_ACTIONS, dtype=bool)
    for card, history in kuhn.ALL_INFOSETS:
        logits = pi_net.forward(kuhn_observation(card, history))
        table[(card, history)] = masked_softmax(logits, mask)
    return table
