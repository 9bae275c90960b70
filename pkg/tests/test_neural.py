import numpy as np
import pytest

from nfspgp import neural
from nfspgp.neural import (
    AdamState,
    CheckpointError,
    Network,
    NetworkSpec,
    dense_spec,
    holdem_spec,
    load_checkpoint,
    policy_loss_batch,
    q_loss_batch,
    save_checkpoint,
    sgd_step,
    softmax,
    sync_target,
)

FD_STEP = 1e-5
REL_TOL = 1e-4


def rel_err(a, b):
    return np.abs(a - b) / (np.abs(a) + np.abs(b) + 1e-8)


def fd_grad_of_param(loss_fn, param):
    g = np.zeros_like(param, dtype=np.float64)
    it = np.nditer(param, flags=["multi_index"])
    for _ in it:
        i = it.multi_index
        orig = param[i]
        param[i] = orig + FD_STEP
        lp = loss_fn()
        param[i] = orig - FD_STEP
        lm = loss_fn()
        param[i] = orig
        g[i] = (lp - lm) / (2 * FD_STEP)
    return g


def check_layer_gradients(layer, x, rng):
    """Linear probe loss: weights every output element, checks dx and dparams."""
    out = layer.forward(x, train=True)
    coeffs = rng.normal(size=out.shape)

    def loss_fn():
        return float((layer.forward(x, train=True) * coeffs).sum())

    dx, dparams = layer.backward(coeffs)
    fd_dx = fd_grad_of_param(loss_fn, x)
    assert rel_err(dx, fd_dx).max() < REL_TOL
    for p, g in zip(layer.params, dparams):
        fd = fd_grad_of_param(loss_fn, p)
        assert rel_err(g, fd).max() < REL_TOL


class TestLayerGradients:
    def test_conv(self, rng):
        layer = neural._Conv(2, 3, 3, np.random.default_rng(0), np.float64)
        x = rng.normal(size=(2, 5, 5, 2))
        check_layer_gradients(layer, x, rng)

    def test_dense(self, rng):
        layer = neural._Dense(6, 4, np.random.default_rng(0), np.float64)
        x = rng.normal(size=(3, 6))
        check_layer_gradients(layer, x, rng)

    def test_relu(self, rng):
        layer = neural._ReLU()
        # keep activations away from the kink
        x = rng.normal(size=(3, 4, 4, 2))
        x[np.abs(x) < 0.05] = 0.1
        check_layer_gradients(layer, x, rng)

    def test_maxpool(self, rng):
        layer = neural._MaxPool(2)
        x = rng.normal(size=(2, 5, 6, 3))  # odd height exercises the crop
        check_layer_gradients(layer, x, rng)


def tiny_q_nets():
    spec = dense_spec(5, [8], 3)
    q = Network(spec, seed=1, dtype=np.float64)
    tgt = Network(spec, seed=2, dtype=np.float64)
    return q, tgt


class TestQLoss:
    def test_terminal_target_is_reward(self):
        q, tgt = tiny_q_nets()
        for p in q.layers[-1].params:
            p[...] = 0.0  # zero head: all Q values 0
        s = np.zeros((1, 5))
        loss, _ = q_loss_batch(
            q, tgt, s, np.array([1]), np.array([0.2]), s, np.array([True]), gamma=1.0
        )
        assert loss == pytest.approx(0.2**2, abs=1e-12)

    def test_zero_loss_zero_grads(self):
        q, tgt = tiny_q_nets()
        for p in q.layers[-1].params:
            p[...] = 0.0
        s = np.zeros((4, 5))
        loss, grads = q_loss_batch(
            q,
            tgt,
            s,
            np.array([0, 1, 2, 0]),
            np.zeros(4),
            s,
            np.array([True, True, True, True]),
        )
        assert loss == 0.0
        assert all(np.all(g == 0) for g in grads)

    def test_gradients_match_finite_differences(self, rng):
        q, tgt = tiny_q_nets()
        s = rng.normal(size=(4, 5))
        s_next = rng.normal(size=(4, 5))
        a = np.array([0, 2, 1, 0])
        r = rng.normal(size=4)
        term = np.array([False, True, False, True])

        def loss_fn():
            return q_loss_batch(q, tgt, s, a, r, s_next, term, gamma=0.97)[0]

        _, grads = q_loss_batch(q, tgt, s, a, r, s_next, term, gamma=0.97)
        for p, g in zip(q.params, grads):
            fd = fd_grad_of_param(loss_fn, p)
            assert rel_err(g, fd).max() < REL_TOL

    def test_double_q_selection_uses_online_argmax(self):
        q, tgt = tiny_q_nets()
        # Make the online net prefer action 0 at s' while the target net
        # prices action 0 at 5 and action 1 at 50; double-Q must pick 5.
        spec = dense_spec(2, [], 2)
        q = Network(spec, seed=0, dtype=np.float64)
        tgt = Network(spec, seed=0, dtype=np.float64)
        q.layers[0].w[...] = 0.0
        q.layers[0].b[...] = np.array([1.0, 0.0])  # online argmax -> 0
        tgt.layers[0].w[...] = 0.0
        tgt.layers[0].b[...] = np.array([5.0, 50.0])
        s = np.zeros((1, 2))
        loss, _ = q_loss_batch(
            q, tgt, s, np.array([0]), np.array([0.0]), s, np.array([False]), gamma=1.0
        )
        # pred = 1.0, y = 0 + 5.0 -> loss 16
        assert loss == pytest.approx(16.0, abs=1e-9)

    def test_empty_batch_rejected(self):
        q, tgt = tiny_q_nets()
        with pytest.raises(ValueError):
            q_loss_batch(q, tgt, np.zeros((0, 5)), np.zeros(0, int), np.zeros(0), np.zeros((0, 5)), np.zeros(0, bool))


class TestPolicyLoss:
    def test_uniform_logits_loss_is_log_m(self):
        net = Network(dense_spec(4, [], 5), seed=0, dtype=np.float64)
        net.layers[0].w[...] = 0.0
        net.layers[0].b[...] = 0.0
        s = np.zeros((6, 4))
        a = np.array([0, 1, 2, 3, 4, 0])
        loss, _ = policy_loss_batch(net, s, a)
        assert loss == pytest.approx(np.log(5), abs=1e-12)

    def test_peaked_logits_loss_vanishes(self):
        net = Network(dense_spec(4, [], 3), seed=0, dtype=np.float64)
        net.layers[0].w[...] = 0.0
        net.layers[0].b[...] = np.array([50.0, 0.0, 0.0])
        loss, _ = policy_loss_batch(net, np.zeros((2, 4)), np.array([0, 0]))
        assert loss < 1e-12

    def test_gradients_match_finite_differences(self, rng):
        net = Network(dense_spec(5, [7], 4), seed=3, dtype=np.float64)
        s = rng.normal(size=(6, 5))
        a = np.array([0, 3, 1, 2, 0, 1])

        def loss_fn():
            return policy_loss_batch(net, s, a)[0]

        _, grads = policy_loss_batch(net, s, a)
        for p, g in zip(net.params, grads):
            fd = fd_grad_of_param(loss_fn, p)
            assert rel_err(g, fd).max() < REL_TOL

    def test_bad_action_index_rejected(self):
        net = Network(dense_spec(4, [], 3), seed=0)
        with pytest.raises(ValueError):
            policy_loss_batch(net, np.zeros((1, 4)), np.array([3]))


class TestOptimizer:
    def test_zero_grads_fixed_point(self):
        net = Network(dense_spec(4, [6], 2), seed=5)
        before = [p.copy() for p in net.params]
        state = AdamState(net)
        sgd_step(net, [np.zeros_like(p) for p in net.params], 1e-3, state)
        for b, p in zip(before, net.params):
            assert np.array_equal(b, p)

    def test_quadratic_descent_monotone(self):
        net = Network(dense_spec(1, [], 1), seed=0, dtype=np.float64)
        net.layers[0].w[...] = 5.0
        net.layers[0].b[...] = 0.0
        state = AdamState(net)
        target = 3.0
        losses = []
        for _ in range(200):
            w = float(net.layers[0].w[0, 0])
            losses.append((w - target) ** 2)
            grads = [np.array([[2 * (w - target)]]), np.zeros(1)]
            sgd_step(net, grads, 0.05, state)
        assert losses[-1] < 1e-3
        assert all(b <= a + 1e-9 for a, b in zip(losses[:20], losses[1:21]))

    def test_deterministic_updates(self, rng):
        runs = []
        for _ in range(2):
            net = Network(dense_spec(4, [6], 2), seed=5)
            state = AdamState(net)
            g_rng = np.random.default_rng(77)
            for _ in range(10):
                grads = [g_rng.normal(size=p.shape).astype(p.dtype) for p in net.params]
                sgd_step(net, grads, 1e-3, state)
            runs.append([p.copy() for p in net.params])
        for a, b in zip(*runs):
            assert np.array_equal(a, b)


class TestSyncTarget:
    def test_copy_semantics(self, rng):
        spec = dense_spec(6, [8], 3)
        q = Network(spec, seed=1)
        tgt = Network(spec, seed=9)
        sync_target(q, tgt)
        for _ in range(20):
            x = rng.normal(size=6)
            assert np.array_equal(q.forward(x), tgt.forward(x))

    def test_idempotent(self):
        spec = dense_spec(6, [8], 3)
        q, tgt = Network(spec, seed=1), Network(spec, seed=9)
        sync_target(q, tgt)
        first = [p.copy() for p in tgt.params]
        sync_target(q, tgt)
        for a, b in zip(first, tgt.params):
            assert np.array_equal(a, b)

    def test_target_frozen_until_next_sync(self):
        spec = dense_spec(6, [8], 3)
        q, tgt = Network(spec, seed=1), Network(spec, seed=9)
        sync_target(q, tgt)
        snapshot = [p.copy() for p in tgt.params]
        state = AdamState(q)
        sgd_step(q, [np.ones_like(p) for p in q.params], 1e-2, state)
        for a, b in zip(snapshot, tgt.params):
            assert np.array_equal(a, b)

    def test_spec_mismatch_rejected(self):
        with pytest.raises(ValueError):
            sync_target(Network(dense_spec(6, [8], 3)), Network(dense_spec(6, [4], 3)))


class TestNetworkBasics:
    def test_deterministic_forward(self, rng):
        net = Network(holdem_spec(), seed=0)
        x = rng.random((17, 17, 9))
        assert np.array_equal(net.forward(x), net.forward(x))

    def test_shape_mismatch_rejected(self):
        net = Network(holdem_spec(), seed=0)
        with pytest.raises(ValueError):
            net.forward(np.zeros((16, 17, 9)))

    def test_zero_head_outputs_zero(self, rng):
        net = Network(holdem_spec(), seed=0)
        for p in net.layers[-1].params:
            p[...] = 0.0
        assert np.all(net.forward(rng.random((17, 17, 9))) == 0.0)

    def test_fuzz_finite_outputs(self):
        rng = np.random.default_rng(0)
        for i in range(1000):
            net = Network(dense_spec(7, [12], 4), seed=i)
            x = rng.normal(0, 3, size=7)
            out1 = net.forward(x)
            out2 = net.forward(2 * x)
            assert np.isfinite(out1).all() and np.isfinite(out2).all()

    def test_spec_text_roundtrip(self):
        for spec in (holdem_spec(), dense_spec(7, [64, 64], 2), neural.small_holdem_spec()):
            assert NetworkSpec.from_text(spec.to_text()) == spec

    def test_bad_chain_rejected(self):
        spec = NetworkSpec(input_shape=(8,), layers=(("conv", 4, 3),))
        with pytest.raises(ValueError):
            Network(spec)

    def test_softmax_is_distribution(self, rng):
        for _ in range(100):
            z = rng.normal(0, 20, size=6)
            p = softmax(z)
            assert abs(p.sum() - 1.0) < 1e-12
            assert (p > 0).all()


class TestCheckpoint:
    def _nets(self):
        spec = dense_spec(6, [8], 3)
        return {
            "q": Network(spec, seed=1),
            "q_target": Network(spec, seed=2),
            "pi": Network(spec, seed=3),
        }

    def test_roundtrip_outputs_identical(self, tmp_path, rng):
        nets = self._nets()
        counters = {"steps": 123, "updates": 7, "eps_step": 55}
        path = str(tmp_path / "ck.bin")
        save_checkpoint(nets, counters, path)
        loaded = load_checkpoint(path)
        assert loaded.counters == counters
        assert set(loaded.nets) == set(nets)
        for name in nets:
            for _ in range(100):
                x = rng.normal(size=6).astype(np.float32)
                assert np.array_equal(nets[name].forward(x), loaded.nets[name].forward(x))

    def test_roundtrip_params_bit_exact(self, tmp_path):
        nets = self._nets()
        path = str(tmp_path / "ck.bin")
        save_checkpoint(nets, {}, path)
        loaded = load_checkpoint(path)
        for name, net in nets.items():
            for a, b in zip(net.params, loaded.nets[name].params):
                assert np.array_equal(a, b)

    def test_truncated_rejected(self, tmp_path):
        path = str(tmp_path / "ck.bin")
        save_checkpoint(self._nets(), {}, path)
        blob = open(path, "rb").read()
        open(path, "wb").write(blob[: len(blob) // 2])
        with pytest.raises(CheckpointError):
            load_checkpoint(path)

    def test_foreign_magic_rejected(self, tmp_path):
        path = str(tmp_path / "ck.bin")
        save_checkpoint(self._nets(), {}, path)
        blob = bytearray(open(path, "rb").read())
        blob[:8] = b"WRONGMAG"
        open(path, "wb").write(bytes(blob))
        with pytest.raises(CheckpointError):
            load_checkpoint(path)

    def test_corrupt_body_rejected(self, tmp_path):
        path = str(tmp_path / "ck.bin")
        save_checkpoint(self._nets(), {}, path)
        blob = bytearray(open(path, "rb").read())
        blob[50] ^= 0xFF
        open(path, "wb").write(bytes(blob))
        with pytest.raises(CheckpointError):
            load_checkpoint(path)
