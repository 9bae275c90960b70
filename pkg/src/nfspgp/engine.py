"""Heads-up no-limit hold'em state machine.

Discrete action abstraction of five kinds; transitions are pure (state in,
state out) and fully determined by the game seed.  Hands chain inside a
game: when a hand settles, the next one is dealt automatically (button
alternates) until a player can no longer post their full blind or the hand
cap is reached.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import IntEnum
from typing import Optional, Sequence

import numpy as np

from .cards import Card, HandClass, new_deck_shuffled, rank7


class Street(IntEnum):
    PREFLOP = 0
    FLOP = 1
    TURN = 2
    RIVER = 3


class ActionKind(IntEnum):
    FOLD = 0
    CHECK_CALL = 1
    RAISE_HALF_POT = 2
    RAISE_POT = 3
    ALL_IN = 4


NUM_ACTIONS = 5

_BOARD_SIZE = {Street.PREFLOP: 0, Street.FLOP: 3, Street.TURN: 4, Street.RIVER: 5}


@dataclass(frozen=True, slots=True)
class Action:
    """An abstract action with its chip cost resolved against a state."""

    kind: ActionKind
    chips: int = 0


@dataclass(frozen=True)
class GameConfig:
    starting_stack: int = 100
    small_blind: int = 5
    max_hands_per_game: int = 20
    seed: int = 0

    @property
    def big_blind(self) -> int:
        return 2 * self.small_blind

    def __post_init__(self) -> None:
        if self.small_blind < 1:
            raise ValueError("small_blind must be >= 1")
        if self.starting_stack < 2 * self.big_blind:
            raise ValueError("starting_stack must cover at least two big blinds")
        if self.max_hands_per_game < 1:
            raise ValueError("max_hands_per_game must be >= 1")


@dataclass(frozen=True)
class HandResult:
    deltas: tuple[int, int]
    showdown: bool
    winning_class: Optional[HandClass] = None

    def __post_init__(self) -> None:
        if sum(self.deltas) != 0:
            raise ValueError("hand deltas must sum to zero")


@dataclass
class GameState:
    config: GameConfig
    hand_index: int
    button: int  # posts the small blind, acts first preflop
    street: Street
    board: list[Card]
    holes: tuple[tuple[Card, Card], tuple[Card, Card]]
    stacks: list[int]  # chips behind
    street_bets: list[int]  # committed this street
    pot: int  # committed on earlier streets (both players)
    contributions: list[int]  # committed this hand per player
    to_act: Optional[int]
    last_raise_increment: int
    bb_option_open: bool
    acted_this_street: list[bool]
    hand_deck: list[Card]
    history: list[tuple[int, Street, int, Action]]  # hand, street, player, action
    log: list[str]
    game_over: bool = False
    hands_completed: int = 0

    @property
    def total_pot(self) -> int:
        return self.pot + self.street_bets[0] + self.street_bets[1]


def _hand_seed(config: GameConfig, hand_index: int) -> int:
    return int(np.random.SeedSequence([config.seed, hand_index]).generate_state(1)[0])


def _deal(state: GameState) -> None:
    deck = new_deck_shuffled(_hand_seed(state.config, state.hand_index))
    state.hand_deck = deck
    sb, bb = state.button, 1 - state.button
    holes = [None, None]
    holes[sb] = (deck[0], deck[1])
    holes[bb] = (deck[2], deck[3])
    state.holes = (holes[0], holes[1])
    state.board = []
    state.street = Street.PREFLOP
    state.pot = 0
    state.contributions = [0, 0]
    state.street_bets = [0, 0]
    state.acted_this_street = [False, False]
    state.bb_option_open = True
    state.last_raise_increment = state.config.big_blind
    _post(state, sb, min(state.config.small_blind, state.stacks[sb]))
    _post(state, bb, min(state.config.big_blind, state.stacks[bb]))
    state.to_act = sb


def _post(state: GameState, player: int, amount: int) -> None:
    state.stacks[player] -= amount
    state.street_bets[player] += amount
    state.contributions[player] += amount


def new_game(config: GameConfig) -> GameState:
    """Fresh game: both stacks at starting_stack, hand 1 dealt, blinds posted."""
    state = GameState(
        config=config,
        hand_index=1,
        button=0,
        street=Street.PREFLOP,
        board=[],
        holes=((Card(0, 0), Card(0, 1)), (Card(0, 2), Card(0, 3))),
        stacks=[config.starting_stack, config.starting_stack],
        street_bets=[0, 0],
        pot=0,
        contributions=[0, 0],
        to_act=0,
        last_raise_increment=config.big_blind,
        bb_option_open=True,
        acted_this_street=[False, False],
        hand_deck=[],
        history=[],
        log=[],
    )
    _deal(state)
    return state


def _clone(state: GameState) -> GameState:
    return replace(
        state,
        board=list(state.board),
        stacks=list(state.stacks),
        street_bets=list(state.street_bets),
        contributions=list(state.contributions),
        acted_this_street=list(state.acted_this_street),
        hand_deck=list(state.hand_deck),
        history=list(state.history),
        log=list(state.log),
    )


def _to_call(state: GameState, player: int) -> int:
    return state.street_bets[1 - player] - state.street_bets[player]


def _raise_cost(state: GameState, player: int, fraction: float) -> Optional[int]:
    """Total chips for a pot-fraction raise, or None when not available."""
    call = _to_call(state, player)
    stack = state.stacks[player]
    if stack <= call or state.stacks[1 - player] == 0:
        return None
    pot_after_call = state.total_pot + call
    raise_by = max(int(round(fraction * pot_after_call)), state.last_raise_increment)
    total = call + raise_by
    if total >= stack:
        return None  # collapses into ALL_IN
    return total


def legal_actions(state: GameState) -> list[Action]:
    """Legal actions with resolved chip costs, in ActionKind order."""
    if state.game_over:
        raise ValueError("game is over")
    player = state.to_act
    assert player is not None
    call = _to_call(state, player)
    stack = state.stacks[player]

    out: list[Action] = []
    # The big blind may surrender its option preflop even when the limp
    # leaves nothing to call; elsewhere a free check removes FOLD.
    if call > 0 or (state.street == Street.PREFLOP and state.bb_option_open
                    and player != state.button):
        out.append(Action(ActionKind.FOLD, 0))
    out.append(Action(ActionKind.CHECK_CALL, min(call, stack)))
    half = _raise_cost(state, player, 0.5)
    if half is not None:
        out.append(Action(ActionKind.RAISE_HALF_POT, half))
    full = _raise_cost(state, player, 1.0)
    if full is not None:
        out.append(Action(ActionKind.RAISE_POT, full))
    if stack > call and state.stacks[1 - player] > 0:
        out.append(Action(ActionKind.ALL_IN, stack))
    return out


def _advance_street(state: GameState) -> bool:
    """Collect bets and deal the next street.  True if the hand reached showdown."""
    state.pot += state.street_bets[0] + state.street_bets[1]
    state.street_bets = [0, 0]
    if state.street == Street.RIVER:
        return True
    state.street = Street(state.street + 1)
    state.board = state.hand_deck[4 : 4 + _BOARD_SIZE[state.street]]
    state.acted_this_street = [False, False]
    state.last_raise_increment = state.config.big_blind
    # Non-button (big blind) acts first postflop.
    state.to_act = 1 - state.button
    return False


def _run_out_board(state: GameState) -> None:
    state.board = state.hand_deck[4:9]
    state.street = Street.RIVER


def _settle(state: GameState, folder: Optional[int]) -> HandResult:
    c0, c1 = state.contributions
    if folder is None:
        _run_out_board(state)
        r0 = rank7(list(state.holes[0]) + state.board)
        r1 = rank7(list(state.holes[1]) + state.board)
        stake = min(c0, c1)
        if r0 < r1:
            deltas = (stake, -stake)
        elif r1 < r0:
            deltas = (-stake, stake)
        else:
            deltas = (0, 0)
        result = HandResult(deltas=deltas, showdown=True, winning_class=min(r0, r1))
    else:
        winner = 1 - folder
        amount = state.contributions[folder]
        deltas = (amount, -amount) if winner == 0 else (-amount, amount)
        result = HandResult(deltas=deltas, showdown=False)

    state.stacks[0] += state.contributions[0] + result.deltas[0]
    state.stacks[1] += state.contributions[1] + result.deltas[1]
    state.pot = 0
    state.street_bets = [0, 0]
    state.contributions = [0, 0]
    state.hands_completed += 1
    state.log.append(
        f"{state.hand_index},result,{result.deltas[0]},{result.deltas[1]},"
        f"{'showdown' if result.showdown else 'fold'}"
    )
    return result


def _can_start_next_hand(state: GameState) -> bool:
    if state.hand_index >= state.config.max_hands_per_game:
        return False
    next_button = 1 - state.button
    sb_ok = state.stacks[next_button] >= state.config.small_blind
    bb_ok = state.stacks[1 - next_button] >= state.config.big_blind
    return sb_ok and bb_ok


def _finish_hand(state: GameState, folder: Optional[int]) -> HandResult:
    result = _settle(state, folder)
    if _can_start_next_hand(state):
        state.hand_index += 1
        state.button = 1 - state.button
        _deal(state)
    else:
        state.game_over = True
        state.to_act = None
    return result


def apply_action(state: GameState, action: Action) -> tuple[GameState, Optional[HandResult], bool]:
    """Apply one action; returns (state', hand result if a hand ended, game over)."""
    legal = legal_actions(state)
    chosen = next((a for a in legal if a.kind == action.kind), None)
    if chosen is None:
        raise ValueError(f"illegal action {action.kind.name} in this state")

    state = _clone(state)
    player = state.to_act
    assert player is not None
    opp = 1 - player
    call = _to_call(state, player)

    state.history.append((state.hand_index, state.street, player, chosen))
    state.log.append(
        f"{state.hand_index},{state.street.name},{player},{chosen.kind.name},{chosen.chips}"
    )
    if state.street == Street.PREFLOP and player != state.button:
        state.bb_option_open = False
    state.acted_this_street[player] = True

    if chosen.kind == ActionKind.FOLD:
        result = _finish_hand(state, folder=player)
        return state, result, state.game_over

    if chosen.kind == ActionKind.CHECK_CALL:
        _post(state, player, chosen.chips)
        short_call = call > 0 and chosen.chips < call  # called all-in for less
        bets_equal = state.street_bets[0] == state.street_bets[1]
        both_acted = state.acted_this_street[0] and state.acted_this_street[1]
        option_pending = state.street == Street.PREFLOP and state.bb_option_open
        if short_call or (bets_equal and both_acted and not option_pending):
            someone_all_in = state.stacks[0] == 0 or state.stacks[1] == 0
            if short_call or someone_all_in:
                state.pot += state.street_bets[0] + state.street_bets[1]
                state.street_bets = [0, 0]
                _run_out_board(state)
                result = _finish_hand(state, folder=None)
                return state, result, state.game_over
            if _advance_street(state):
                result = _finish_hand(state, folder=None)
                return state, result, state.game_over
        else:
            state.to_act = opp
        return state, None, False

    # Raise family (RAISE_HALF_POT, RAISE_POT, ALL_IN); legality gating
    # guarantees these strictly increase the current bet.
    _post(state, player, chosen.chips)
    increment = state.street_bets[player] - state.street_bets[opp]
    state.last_raise_increment = max(state.last_raise_increment, increment)
    state.to_act = opp
    return state, None, False


def mbb_per_hand(total_chip_delta: float, hands: int, big_blind: int) -> float:
    """Milli big blinds per hand: 1000 * delta / (big_blind * hands)."""
    if hands < 1:
        raise ValueError("hands must be >= 1")
    return 1000.0 * total_chip_delta / (big_blind * hands)


# ---------------------------------------------------------------------------
# Player-facing view (hides the opponent's hole cards)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlayerView:
    """Everything a seated player may observe at their decision point."""

    player: int
    street: Street
    board: tuple[Card, ...]
    hole: tuple[Card, Card]
    stacks: tuple[int, int]  # (own, opponent)
    pot_total: int
    to_call: int
    button: int
    hand_index: int
    legal: tuple[Action, ...]
    last_opp_action: Optional[ActionKind]
    starting_stack: int
    big_blind: int


def player_view(state: GameState, player: int) -> PlayerView:
    if state.game_over:
        raise ValueError("game is over")
    opp = 1 - player
    last_opp: Optional[ActionKind] = None
    for hand, _street, who, act in reversed(state.history):
        if hand != state.hand_index:
            break
        if who == opp:
            last_opp = act.kind
            break
    return PlayerView(
        player=player,
        street=state.street,
        board=tuple(state.board),
        hole=state.holes[player],
        stacks=(state.stacks[player], state.stacks[opp]),
        pot_total=state.total_pot,
        to_call=max(0, _to_call(state, player)),
        button=state.button,
        hand_index=state.hand_index,
        legal=tuple(legal_actions(state)) if state.to_act == player else tuple(),
        last_opp_action=last_opp,
        starting_stack=state.config.starting_stack,
        big_blind=state.config.big_blind,
    )


def export_log(state: GameState) -> str:
    """Hand-history text: action lines and result lines, one per row."""
    return "\n".join(state.log)


def replay(config: GameConfig, kinds: Sequence[ActionKind]) -> GameState:
    """Re-apply a recorded action-kind sequence from a fresh game."""
    state = new_game(config)
    for kind in kinds:
        state, _result, over = apply_action(state, Action(kind))
        if over:
            break
    return state
