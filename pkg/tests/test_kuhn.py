import itertools

import numpy as np
import pytest

from nfspgp import kuhn
from nfspgp.kuhn import KuhnState, kuhn_transition

# Frozen from the independent pure-strategy enumeration oracle below.
BR_VS_UNIFORM_SEAT0 = 0.5  # 18/36
BR_VS_UNIFORM_SEAT1 = 5.0 / 12.0  # 15/36


def oracle_walk(cards, history, pol0, pol1):
    """Independent tree walk; policies are (card, history) -> (p_pass, p_agg)."""
    if history in {"kk", "bf", "bc", "kbf", "kbc"}:
        if history.endswith("f"):
            return -1 if (len(history) - 1) % 2 == 0 else 1
        stake = 2 if history.endswith("c") else 1
        return stake if cards[0] > cards[1] else -stake
    actor = len(history) % 2
    pol = pol0 if actor == 0 else pol1
    total = 0.0
    for a in (0, 1):
        p = pol(cards[actor], history)[a]
        if p > 0:
            ch = ("f" if a == 0 else "c") if history.endswith("b") else ("k" if a == 0 else "b")
            total += p * oracle_walk(cards, history + ch, pol0, pol1)
    return total


def oracle_best_response(policy_fn, responder):
    """Max over all 2^6 responder pure strategies."""
    deals = [(a, b) for a in range(3) for b in range(3) if a != b]
    infosets = [
        (c, h) for h in ("", "k", "b", "kb") if len(h) % 2 == responder for c in range(3)
    ]
    best = -np.inf
    for bits in itertools.product((0, 1), repeat=len(infosets)):
        choice = dict(zip(infosets, bits))

        def pure(c, h):
            return (1.0, 0.0) if choice[(c, h)] == 0 else (0.0, 1.0)

        p0, p1 = (pure, policy_fn) if responder == 0 else (policy_fn, pure)
        v = sum(oracle_walk(d, "", p0, p1) for d in deals) / 6
        best = max(best, v if responder == 0 else -v)
    return best


def random_policy(rng):
    pol = {}
    for key in kuhn.ALL_INFOSETS:
        p = rng.random()
        pol[key] = np.array([p, 1 - p])
    return pol


class TestTransitions:
    def test_king_bet_call_wins_two(self):
        state = KuhnState(cards=(2, 0))  # K vs J
        state, pay = kuhn_transition(state, kuhn.AGGRESSIVE)  # bet
        assert pay is None
        state, pay = kuhn_transition(state, kuhn.AGGRESSIVE)  # call
        assert pay == 2
        assert state.history == "bc"
        assert state.pot == 4

    def test_bet_fold_wins_ante(self):
        for cards in kuhn.ALL_DEALS:
            state = KuhnState(cards=cards)
            state, pay = kuhn_transition(state, kuhn.AGGRESSIVE)
            state, pay = kuhn_transition(state, kuhn.PASSIVE)
            assert pay == 1  # bettor was player 0
            assert state.pot == 3

    def test_zero_sum_over_full_tree(self):
        # Payoff to seat 0 plus payoff to seat 1 is zero at every terminal.
        total = 0
        terminals = 0
        for cards in kuhn.ALL_DEALS:
            for h in kuhn.TERMINAL_HISTORIES:
                p0 = kuhn._terminal_payoff(cards, h)
                total += p0 + (-p0)
                terminals += 1
        assert total == 0
        assert terminals == len(kuhn.ALL_DEALS) * len(kuhn.TERMINAL_HISTORIES) == 30

    def test_tree_shape_constants(self):
        assert len(kuhn.ALL_INFOSETS) == 12
        assert len(kuhn.DECISION_HISTORIES) == 4
        assert len(kuhn.TERMINAL_HISTORIES) == 5
        assert set(KuhnState(cards=(0, 1), history=h).pot for h in kuhn.TERMINAL_HISTORIES) == {
            2,
            3,
            4,
        }

    def test_terminal_and_illegal_errors(self):
        state = KuhnState(cards=(0, 1), history="kk")
        with pytest.raises(ValueError):
            kuhn_transition(state, 0)
        with pytest.raises(ValueError):
            kuhn_transition(KuhnState(cards=(0, 1)), 5)


class TestBestResponse:
    def test_vs_uniform_matches_oracle(self):
        uni = kuhn.uniform_policy()
        assert kuhn.exact_best_response_value(uni, 0) == pytest.approx(
            BR_VS_UNIFORM_SEAT0, abs=1e-12
        )
        assert kuhn.exact_best_response_value(uni, 1) == pytest.approx(
            BR_VS_UNIFORM_SEAT1, abs=1e-12
        )

    def test_vs_nash_family_is_game_value(self):
        assert kuhn.exact_best_response_value(kuhn.nash_policy_seat1(), 0) == pytest.approx(
            -1.0 / 18.0, abs=1e-12
        )
        for alpha in (0.0, 1.0 / 6.0, 1.0 / 3.0):
            assert kuhn.exact_best_response_value(
                kuhn.nash_policy_seat0(alpha), 1
            ) == pytest.approx(1.0 / 18.0, abs=1e-12)

    def test_br_beats_every_pure_strategy(self, rng):
        for _ in range(5):
            pol = random_policy(rng)
            pol_fn = lambda c, h: pol[(c, h)]
            for responder in (0, 1):
                br = kuhn.exact_best_response_value(pol, responder)
                oracle = oracle_best_response(pol_fn, responder)
                assert br == pytest.approx(oracle, abs=1e-12)

    def test_malformed_policy_rejected(self):
        bad = kuhn.uniform_policy()
        bad[(0, "k")] = np.array([0.7, 0.7])
        with pytest.raises(ValueError):
            kuhn.exact_best_response_value(bad, 0)


class TestExploitability:
    def test_nash_pair_is_zero(self):
        expl = kuhn.exploitability(kuhn.nash_policy_seat0(1.0 / 6.0), kuhn.nash_policy_seat1())
        assert abs(expl) < 1e-12

    def test_uniform_pair_matches_oracle(self):
        expl = kuhn.exploitability(kuhn.uniform_policy(), kuhn.uniform_policy())
        assert expl == pytest.approx(BR_VS_UNIFORM_SEAT0 + BR_VS_UNIFORM_SEAT1, abs=1e-12)

    def test_nonnegative_for_random_pairs(self, rng):
        for _ in range(1000):
            expl = kuhn.exploitability(random_policy(rng), random_policy(rng))
            assert expl >= -1e-12

    def test_nash_ev_is_game_value(self):
        ev = kuhn.expected_value(kuhn.nash_policy_seat0(1.0 / 6.0), kuhn.nash_policy_seat1())
        assert ev == pytest.approx(-1.0 / 18.0, abs=1e-12)
