"""Kuhn poker plus an exact best-response oracle.

Three cards (J=0, Q=1, K=2), one ante each, one chip per bet, binary action
space: 0 = passive (check, or fold facing a bet), 1 = aggressive (bet, or
call facing a bet).  History strings record the contextual meaning with one
char per action: 'k' check, 'b' bet, 'c' call, 'f' fold.

The best-response value and exploitability are computed by full game-tree
traversal with opponent reach probabilities, so Nash convergence of the
learning stack can be verified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

CARDS = ("J", "Q", "K")
NUM_CARDS = 3
NUM_ACTIONS = 2
PASSIVE, AGGRESSIVE = 0, 1

# Histories where someone still acts, and who acts there.
DECISION_HISTORIES = ("", "k", "b", "kb")
TERMINAL_HISTORIES = ("kk", "bf", "bc", "kbf", "kbc")
ALL_DEALS = tuple((c0, c1) for c0 in range(3) for c1 in range(3) if c0 != c1)

# (card, history) pairs: 3 cards x 4 decision histories = 12 infosets.
ALL_INFOSETS = tuple(
    (card, h) for h in DECISION_HISTORIES for card in range(3)
)

PolicyTable = Mapping[tuple[int, str], np.ndarray]


@dataclass(frozen=True)
class KuhnState:
    cards: tuple[int, int]
    history: str = ""

    @property
    def terminal(self) -> bool:
        return self.history in TERMINAL_HISTORIES

    @property
    def to_act(self) -> int:
        return len(self.history) % 2

    @property
    def pot(self) -> int:
        return 2 + self.history.count("b") + self.history.count("c")


def _action_char(history: str, action: int) -> str:
    facing_bet = history.endswith("b")
    if action == PASSIVE:
        return "f" if facing_bet else "k"
    return "c" if facing_bet else "b"


def _terminal_payoff(cards: tuple[int, int], history: str) -> int:
    """Payoff to player 0 in chips."""
    if history.endswith("f"):
        folder = (len(history) - 1) % 2
        return -1 if folder == 0 else 1
    stake = 2 if history.endswith("c") else 1  # bet-call risks ante + bet
    if cards[0] > cards[1]:
        return stake
    return -stake


def kuhn_transition(state: KuhnState, action: int) -> tuple[KuhnState, int | None]:
    """Apply an action; returns (state', payoff to player 0 when terminal)."""
    if state.terminal:
        raise ValueError("state is terminal")
    if action not in (PASSIVE, AGGRESSIVE):
        raise ValueError(f"illegal action {action}")
    history = state.history + _action_char(state.history, action)
    nxt = KuhnState(cards=state.cards, history=history)
    if nxt.terminal:
        return nxt, _terminal_payoff(state.cards, history)
    return nxt, None


def uniform_policy() -> dict[tuple[int, str], np.ndarray]:
    return {key: np.array([0.5, 0.5]) for key in ALL_INFOSETS}


def nash_policy_seat0(alpha: float = 1.0 / 6.0) -> dict[tuple[int, str], np.ndarray]:
    """The one-parameter equilibrium family for the first seat, 0 <= alpha <= 1/3."""
    if not 0.0 <= alpha <= 1.0 / 3.0:
        raise ValueError("alpha must be in [0, 1/3]")
    p = uniform_policy()
    p[(0, "")] = np.array([1 - alpha, alpha])
    p[(1, "")] = np.array([1.0, 0.0])
    p[(2, "")] = np.array([1 - 3 * alpha, 3 * alpha])
    p[(0, "kb")] = np.array([1.0, 0.0])
    p[(1, "kb")] = np.array([2.0 / 3.0 - alpha, 1.0 / 3.0 + alpha])
    p[(2, "kb")] = np.array([0.0, 1.0])
    return p


def nash_policy_seat1() -> dict[tuple[int, str], np.ndarray]:
    """The unique equilibrium strategy for the second seat."""
    p = uniform_policy()
    p[(0, "k")] = np.array([2.0 / 3.0, 1.0 / 3.0])
    p[(1, "k")] = np.array([1.0, 0.0])
    p[(2, "k")] = np.array([0.0, 1.0])
    p[(0, "b")] = np.array([1.0, 0.0])
    p[(1, "b")] = np.array([2.0 / 3.0, 1.0 / 3.0])
    p[(2, "b")] = np.array([0.0, 1.0])
    return p


def _check_policy(policy: PolicyTable, seat: int) -> None:
    for h in DECISION_HISTORIES:
        if len(h) % 2 != seat:
            continue
        for card in range(3):
            row = np.asarray(policy[(card, h)], dtype=float)
            if row.shape != (2,) or (row < 0).any() or abs(row.sum() - 1.0) > 1e-9:
                raise ValueError(f"malformed distribution at infoset {(card, h)}")


def _opp_reach(policy: PolicyTable, opp_card: int, history: str, responder: int) -> float:
    reach = 1.0
    for i, ch in enumerate(history):
        prefix = history[:i]
        if len(prefix) % 2 != responder:
            action = AGGRESSIVE if ch in "bc" else PASSIVE
            reach *= float(policy[(opp_card, prefix)][action])
    return reach


def exact_best_response_value(policy: PolicyTable, responder: int) -> float:
    """Expected chips/hand of the exact best response against `policy`.

    The opponent occupies the other seat and plays `policy`; the responder's
    maximizing action is chosen per infoset from reach-weighted values.
    """
    if responder not in (0, 1):
        raise ValueError("responder must be 0 or 1")
    _check_policy(policy, 1 - responder)

    def subtree_value(cards: tuple[int, int], history: str, decided) -> float:
        """Value to the responder with BR actions `decided` at responder infosets."""
        if history in TERMINAL_HISTORIES:
            pay0 = _terminal_payoff(cards, history)
            return pay0 if responder == 0 else -pay0
        actor = len(history) % 2
        if actor == responder:
            action = decided[(cards[responder], history)]
            nxt = history + _action_char(history, action)
            return subtree_value(cards, nxt, decided)
        total = 0.0
        for action in (PASSIVE, AGGRESSIVE):
            prob = float(policy[(cards[1 - responder], history)][action])
            if prob > 0.0:
                nxt = history + _action_char(history, action)
                total += prob * subtree_value(cards, nxt, decided)
        return total

    # Decide deepest infosets first so shallower values can use them.
    decided: dict[tuple[int, str], int] = {}
    histories = [h for h in DECISION_HISTORIES if len(h) % 2 == responder]
    for history in sorted(histories, key=len, reverse=True):
        for card in range(3):
            best_action, best_value = PASSIVE, -np.inf
            for action in (PASSIVE, AGGRESSIVE):
                value = 0.0
                for cards in ALL_DEALS:
                    if cards[responder] != card:
                        continue
                    reach = _opp_reach(policy, cards[1 - responder], history, responder)
                    if reach == 0.0:
                        continue
                    nxt = history + _action_char(history, action)
                    value += reach * subtree_value(cards, nxt, {**decided, (card, history): action})
                if value > best_value:
                    best_action, best_value = action, value
            decided[(card, history)] = best_action

    total = 0.0
    for cards in ALL_DEALS:
        total += subtree_value(cards, "", decided)
    return total / len(ALL_DEALS)


def expected_value(policy0: PolicyTable, policy1: PolicyTable) -> float:
    """Expected chips/hand for seat 0 when both seats play fixed policies."""
    _check_policy(policy0, 0)
    _check_policy(policy1, 1)

    def walk(cards: tuple[int, int], history: str) -> float:
        if history in TERMINAL_HISTORIES:
            return float(_terminal_payoff(cards, history))
        actor = len(history) % 2
        policy = policy0 if actor == 0 else policy1
        total = 0.0
        for action in (PASSIVE, AGGRESSIVE):
            prob = float(policy[(cards[actor], history)][action])
            if prob > 0.0:
                total += prob * walk(cards, history + _action_char(history, action))
        return total

    return sum(walk(cards, "") for cards in ALL_DEALS) / len(ALL_DEALS)


def exploitability(policy0: PolicyTable, policy1: PolicyTable) -> float:
    """Sum of best-response gains; zero exactly at a Nash pair, else positive."""
    br0 = exact_best_response_value(policy1, responder=0)
    br1 = exact_best_response_value(policy0, responder=1)
    return br0 + br1
