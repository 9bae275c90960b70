import itertools

import numpy as np
import pytest

from nfspgp import strategy
from nfspgp.strategy import (
    MixtureConfig,
    PolicyMode,
    average_pi,
    choose_policy_mode,
    gradient_play_probs,
    gradient_play_s,
    greedy_beta,
    masked_softmax,
    project_simplex,
    q_extended_product,
)


def simplex_projection_oracle(x):
    """Exact constrained minimizer by enumerating active sets.

    For every nonempty support S the candidate is x_S shifted to sum 1;
    feasible candidates are compared by squared distance.
    """
    n = len(x)
    best, best_d = None, np.inf
    for r in range(1, n + 1):
        for support in itertools.combinations(range(n), r):
            s = np.zeros(n)
            shift = (x[list(support)].sum() - 1.0) / r
            s[list(support)] = x[list(support)] - shift
            if (s >= -1e-12).all():
                d = np.sum((x - s) ** 2)
                if d < best_d:
                    best, best_d = np.maximum(s, 0), d
    return best


class TestProjectSimplex:
    def test_fixed_point_on_simplex(self):
        x = np.array([0.5, 0.5])
        assert np.allclose(project_simplex(x), x, atol=1e-15)

    def test_two_dim_hand_example(self):
        out = project_simplex(np.array([1.2, -0.2]))
        assert np.allclose(out, [1.0, 0.0], atol=1e-12)

    def test_symmetric_input(self):
        out = project_simplex(np.array([0.4, 0.4, 0.4]))
        assert np.allclose(out, [1 / 3, 1 / 3, 1 / 3], atol=1e-12)

    def test_matches_active_set_oracle(self, rng):
        for _ in range(300):
            n = int(rng.integers(2, 7))
            x = rng.normal(0, 2, size=n)
            got = project_simplex(x)
            want = simplex_projection_oracle(x)
            assert np.linalg.norm(got - want) < 1e-9
            assert got.min() >= 0 and abs(got.sum() - 1) < 1e-12

    def test_idempotent(self, rng):
        for _ in range(100):
            x = rng.normal(0, 2, size=5)
            once = project_simplex(x)
            assert np.allclose(project_simplex(once), once, atol=1e-12)

    def test_order_equivariant(self, rng):
        for _ in range(50):
            x = rng.normal(0, 2, size=5)
            perm = rng.permutation(5)
            assert np.allclose(project_simplex(x)[perm], project_simplex(x[perm]), atol=1e-12)

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            project_simplex(np.array([1.0, np.nan]))


class TestGreedyBeta:
    def test_pure_argmax(self, rng):
        q = np.array([1.0, 5.0, 3.0, 2.0, 0.0])
        mask = np.ones(5, bool)
        assert greedy_beta(q, mask, 0.0, rng) == 1

    def test_masking_moves_argmax(self, rng):
        q = np.array([1.0, 5.0, 3.0, 2.0, 0.0])
        mask = np.array([True, False, True, True, True])
        assert greedy_beta(q, mask, 0.0, rng) == 2

    def test_ties_take_lowest_index(self, rng):
        q = np.array([2.0, 2.0, 1.0])
        assert greedy_beta(q, np.ones(3, bool), 0.0, rng) == 0

    def test_full_explore_is_uniform(self):
        rng = np.random.default_rng(0)
        mask = np.array([True, True, False, True, True])
        counts = np.zeros(5)
        n = 100_000
        for _ in range(n):
            counts[greedy_beta(np.zeros(5), mask, 1.0, rng)] += 1
        assert counts[2] == 0
        expected = n / 4
        sigma = np.sqrt(n * 0.25 * 0.75)
        assert np.all(np.abs(counts[mask.astype(bool)] - expected) < 3.5 * sigma)

    def test_empty_legal_set_rejected(self, rng):
        with pytest.raises(ValueError):
            greedy_beta(np.zeros(3), np.zeros(3, bool), 0.0, rng)


class TestAveragePi:
    def test_single_legal_action(self, rng):
        mask = np.array([False, True, False])
        for _ in range(20):
            assert average_pi(rng.normal(size=3), mask, rng) == 1

    def test_uniform_logits_sample_uniformly(self):
        rng = np.random.default_rng(1)
        counts = np.zeros(4)
        n = 100_000
        for _ in range(n):
            counts[average_pi(np.zeros(4), np.ones(4, bool), rng)] += 1
        sigma = np.sqrt(n * 0.25 * 0.75)
        assert np.all(np.abs(counts - n / 4) < 3.5 * sigma)

    def test_masked_action_never_sampled(self):
        rng = np.random.default_rng(2)
        mask = np.array([True, True, True, False])
        for _ in range(5000):
            assert average_pi(np.array([0.0, 0.0, 0.0, 9.0]), mask, rng) != 3

    def test_masked_softmax_is_distribution(self, rng):
        for _ in range(200):
            logits = rng.normal(0, 5, size=5)
            mask = rng.random(5) < 0.7
            if not mask.any():
                mask[0] = True
            p = masked_softmax(logits, mask)
            assert abs(p.sum() - 1.0) < 1e-12
            assert (p[~mask] == 0).all()
            assert (p[mask] > 0).all()


class TestGradientPlay:
    def test_q_ext_identity(self, rng):
        for _ in range(200):
            m = int(rng.integers(2, 7))
            q = rng.normal(0, 3, size=m)
            pi = rng.dirichlet(np.ones(m))
            assert np.abs(q_extended_product(q, pi, "tiled") - q).max() < 1e-12

    def test_diag_mode(self, rng):
        q = np.array([1.0, 2.0, 3.0])
        pi = np.array([0.2, 0.3, 0.5])
        assert np.allclose(q_extended_product(q, pi, "diag"), q * pi)

    def test_zero_q_returns_pi(self, rng):
        pi = np.array([0.3, 0.2, 0.5])
        probs = gradient_play_probs(pi, np.zeros(3), pi, np.ones(3, bool))
        assert np.allclose(probs, pi, atol=1e-12)

    def test_two_action_shift_example(self):
        # pi uniform over 2 actions, normalized q = [+1,-1]:
        # project([0.5+1, 0.5-1]) = [1, 0].
        pi = np.array([0.5, 0.5])
        q = np.array([1.0, -1.0])
        probs = gradient_play_probs(pi, q, pi, np.ones(2, bool))
        assert np.allclose(probs, [1.0, 0.0], atol=1e-12)

    def test_simplex_and_mask_invariants(self, rng):
        for _ in range(10_000):
            m = int(rng.integers(2, 6))
            pi = rng.dirichlet(np.ones(m))
            q = rng.normal(0, 10, size=m)
            opp = rng.dirichlet(np.ones(m))
            mask = rng.random(m) < 0.75
            if not mask.any():
                mask[int(rng.integers(m))] = True
            probs = gradient_play_probs(pi, q, opp, mask)
            assert abs(probs.sum() - 1.0) < 1e-9
            assert probs.min() >= 0
            assert (probs[~mask] == 0).all()

    def test_sampling_respects_mask(self):
        rng = np.random.default_rng(3)
        mask = np.array([True, False, True])
        for _ in range(500):
            a = gradient_play_s(np.array([0.2, 0.5, 0.3]), np.zeros(3), np.ones(3) / 3, mask, rng)
            assert a in (0, 2)

    def test_all_illegal_rejected(self, rng):
        with pytest.raises(ValueError):
            gradient_play_probs(np.ones(3) / 3, np.zeros(3), np.ones(3) / 3, np.zeros(3, bool))


class TestChoosePolicyMode:
    def test_paper_parameter_arithmetic(self):
        cfg = MixtureConfig(eta=0.1, rho=0.92)
        assert cfg.gp_slack == pytest.approx(0.02)
        p_avg, p_br, p_gp = 1 - cfg.eta, cfg.eta * cfg.rho, cfg.eta * (1 - cfg.rho)
        assert (p_avg, p_br) == (0.9, pytest.approx(0.092))
        assert p_gp == pytest.approx(0.008)

    def test_eta_zero_always_average(self):
        cfg = MixtureConfig(eta=0.0, rho=1.0)
        rng = np.random.default_rng(0)
        assert all(choose_policy_mode(cfg, rng) is PolicyMode.AVERAGE for _ in range(1000))

    def test_empirical_frequencies(self):
        cfg = MixtureConfig(eta=0.1, rho=0.92)
        rng = np.random.default_rng(42)
        counts = {mode: 0 for mode in PolicyMode}
        n = 100_000
        for _ in range(n):
            counts[choose_policy_mode(cfg, rng)] += 1
        for mode, p in [
            (PolicyMode.AVERAGE, 0.9),
            (PolicyMode.BEST_RESPONSE, 0.092),
            (PolicyMode.GRADIENT_PLAY, 0.008),
        ]:
            sigma = np.sqrt(n * p * (1 - p))
            assert abs(counts[mode] - n * p) < 3.5 * sigma

    def test_rho_band_enforced(self):
        with pytest.raises(ValueError):
            MixtureConfig(eta=0.1, rho=0.95)
        with pytest.raises(ValueError):
            MixtureConfig(eta=0.1, rho=0.85)
        MixtureConfig(eta=0.1, rho=0.9)  # lower edge ok

    def test_epsilon_schedule(self):
        cfg = MixtureConfig()
        assert cfg.epsilon_at(0) == pytest.approx(0.9)
        assert cfg.epsilon_at(50_000) == pytest.approx((0.9 + 0.02) / 2)
        assert cfg.epsilon_at(100_000) == pytest.approx(0.02)
        assert cfg.epsilon_at(10**9) == pytest.approx(0.02)
