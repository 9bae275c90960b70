"""Observation encoding: the 17x17x9 tensor and its scalar feature vector.

Card planes put a 1 at (row 2+3*suit, col 2+rank).  Channels:

  0 current hole cards        5 opponent-strength plane
  1 current board             6 pot plane
  2 previous-frame hole       7 own stack (rows 0-7) / opp stack (rows 9-16)
  3 previous-frame board      8 last opp action (rows 0-7) / street (rows 9-16)
  4 own-equity plane

The previous frame is the card layout at the viewer's previous decision
point (all zeros at the first decision), so the net can see what changed
since it last acted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import cards as cards_mod
from .cards import Card
from .engine import PlayerView, Street

OBS_SHAPE = (17, 17, 9)


@dataclass(frozen=True)
class ScalarFeatures:
    own_equity: float
    opponent_strength: float
    preflop_rank_norm: float
    pot_norm: float
    own_stack_norm: float
    opp_stack_norm: float
    to_call_norm: float
    last_opp_action: float
    street_norm: float

    def __post_init__(self) -> None:
        for name, value in self.__dict__.items():
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"scalar {name}={value} outside [0,1]")

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                self.own_equity,
                self.opponent_strength,
                self.preflop_rank_norm,
                self.pot_norm,
                self.own_stack_norm,
                self.opp_stack_norm,
                self.to_call_norm,
                self.last_opp_action,
                self.street_norm,
            ],
            dtype=np.float32,
        )


@dataclass(frozen=True)
class CardFrame:
    """The card layout visible to one player at one decision point."""

    hole: tuple[Card, ...]
    board: tuple[Card, ...]


@dataclass(frozen=True)
class Observation:
    tensor: np.ndarray  # (17, 17, 9) float32
    scalars: ScalarFeatures


def card_cell(card: Card) -> tuple[int, int]:
    return 2 + 3 * card.suit, 2 + card.rank


def _stamp(plane: np.ndarray, cs: Sequence[Card]) -> None:
    for c in cs:
        row, col = card_cell(c)
        plane[row, col] = 1.0


def encode(
    view: PlayerView, prev_frame: Optional[CardFrame], scalars: ScalarFeatures
) -> Observation:
    """Deterministic, pure tensor build from one player's view."""
    t = np.zeros(OBS_SHAPE, dtype=np.float32)
    _stamp(t[:, :, 0], view.hole)
    _stamp(t[:, :, 1], view.board)
    if prev_frame is not None:
        _stamp(t[:, :, 2], prev_frame.hole)
        _stamp(t[:, :, 3], prev_frame.board)
    t[:, :, 4] = scalars.own_equity
    t[:, :, 5] = scalars.opponent_strength
    t[:, :, 6] = scalars.pot_norm
    t[:8, :, 7] = scalars.own_stack_norm
    t[9:, :, 7] = scalars.opp_stack_norm
    t[:8, :, 8] = scalars.last_opp_action
    t[9:, :, 8] = scalars.street_norm
    return Observation(tensor=t, scalars=scalars)


def build_scalars(
    view: PlayerView,
    n_samples: int = 1000,
    seed: Optional[int] = None,
) -> ScalarFeatures:
    """Heuristic metrics for a decision point.

    Preflop the equity estimate runs on the empty board and the opponent
    strength defaults to the uninformative 0.5 (the strength heuristic
    needs a board); the hole's preflop rank is carried on every street.
    """
    hole = list(view.hole)
    board = list(view.board)
    own_equity = cards_mod.equity_mc(hole, board, n_samples, seed).win_rate
    if view.street == Street.PREFLOP:
        opp_strength = 0.5
    else:
        strength_seed = None if seed is None else seed + 1
        opp_strength = cards_mod.opponent_strength_mc(board, n_samples, strength_seed).win_rate
    pr = cards_mod.preflop_rank(hole)
    two_stacks = 2.0 * view.starting_stack
    last = 0.0 if view.last_opp_action is None else view.last_opp_action.value / 4.0
    return ScalarFeatures(
        own_equity=own_equity,
        opponent_strength=opp_strength,
        preflop_rank_norm=1.0 - (pr - 1) / 168.0,
        pot_norm=min(1.0, view.pot_total / two_stacks),
        own_stack_norm=min(1.0, view.stacks[0] / view.starting_stack),
        opp_stack_norm=min(1.0, view.stacks[1] / view.starting_stack),
        to_call_norm=min(1.0, view.to_call / two_stacks),
        last_opp_action=last,
        street_norm=view.street.value / 3.0,
    )


def frame_of(view: PlayerView) -> CardFrame:
    return CardFrame(hole=tuple(view.hole), board=tuple(view.board))
