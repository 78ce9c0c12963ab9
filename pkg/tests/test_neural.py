import io

import numpy as np
import pytest

from cic.errors import ShapeError
from cic.neural import (
    AdamState,
    Mlp,
    adam_step,
    grad_check,
    load_mlp,
    save_mlp,
)


def rng():
    return np.random.default_rng(0)


class TestForward:
    def test_identity_layer(self):
        net = Mlp([np.eye(3)], [np.zeros(3)], ["identity"])
        x = rng().normal(size=(5, 3))
        assert np.array_equal(net.forward(x), x)

    def test_zero_weights_give_activated_bias(self):
        b = np.array([0.3, -1.2])
        net = Mlp([np.zeros((2, 3))], [b], ["tanh"])
        out = net.forward(rng().normal(size=(4, 3)))
        assert np.allclose(out, np.tanh(b))

    def test_two_layer_matches_hand_chain(self):
        r = rng()
        w1, b1 = r.normal(size=(4, 3)), r.normal(size=4)
        w2, b2 = r.normal(size=(2, 4)), r.normal(size=2)
        net = Mlp([w1, w2], [b1, b2], ["tanh", "identity"])
        x = r.normal(size=(6, 3))
        expected = np.tanh(x @ w1.T + b1) @ w2.T + b2
        assert np.max(np.abs(net.forward(x) - expected)) < 1e-12

    def test_batch_width_checked(self):
        net = Mlp([np.eye(3)], [np.zeros(3)], ["identity"])
        with pytest.raises(ShapeError):
            net.forward(np.zeros((2, 4)))

    def test_row_permutation_equivariance(self):
        net = Mlp.init([3, 8, 2], rng())
        x = rng().normal(size=(10, 3))
        perm = np.random.default_rng(1).permutation(10)
        assert np.allclose(net.forward(x)[perm], net.forward(x[perm]))


class TestBackward:
    def test_linear_layer_closed_form(self):
        r = rng()
        w = r.normal(size=(3, 4))
        net = Mlp([w], [np.zeros(3)], ["identity"])
        x = r.normal(size=(5, 4))
        g = r.normal(size=(5, 3))
        grads, gin = net.backward_from(x, g)
        assert np.allclose(grads[0], g.T @ x)
        assert np.allclose(grads[1], g.sum(axis=0))
        assert np.allclose(gin, g @ w)

    def test_tanh_scales_by_one_minus_square(self):
        net = Mlp([np.eye(2)], [np.zeros(2)], ["tanh"])
        x = np.array([[0.3, -0.7]])
        g = np.ones((1, 2))
        _, gin = net.backward_from(x, g)
        assert np.allclose(gin, 1.0 - np.tanh(x) ** 2)

    def test_two_layer_matches_finite_differences(self):
        r = rng()
        net = Mlp.init([4, 6, 3], r)
        x = r.normal(size=(5, 4))
        target = r.normal(size=(5, 3))

        def loss_fn():
            out, cache = net.forward_cached(x)
            diff = out - target
            grads, _ = net.backward(cache, 2.0 * diff)
            return float((diff**2).sum()), grads

        assert grad_check(loss_fn, net.parameters(), h=1e-5) < 1e-4

    def test_sum_of_rows_decomposes(self):
        r = rng()
        net = Mlp.init([3, 5, 2], r)
        x = r.normal(size=(4, 3))
        g = np.ones((4, 2))
        grads_batch, _ = net.backward_from(x, g)
        acc = [np.zeros_like(p) for p in net.parameters()]
        for i in range(4):
            grads_i, _ = net.backward_from(x[i : i + 1], g[i : i + 1])
            for a, gi in zip(acc, grads_i):
                a += gi
        for gb, a in zip(grads_batch, acc):
            assert np.allclose(gb, a, atol=1e-12)


class TestAdam:
    def test_zero_gradient_keeps_parameters(self):
        p = [np.array([1.0, 2.0])]
        state = AdamState(p, lr=0.1)
        adam_step(state, p, [np.zeros(2)])
        assert np.array_equal(p[0], [1.0, 2.0])

    def test_descends_against_constant_gradient(self):
        p = [np.array([0.0])]
        state = AdamState(p, lr=0.01)
        for _ in range(50):
            adam_step(state, p, [np.array([3.0])])
        assert p[0][0] < 0.0

    def test_first_step_magnitude_is_lr(self):
        # with bias correction the first update is lr * g / (|g| + eps)
        p = [np.array([5.0, -2.0])]
        state = AdamState(p, lr=0.05)
        adam_step(state, p, [np.array([10.0, -0.1])])
        assert np.allclose(p[0], [5.0 - 0.05, -2.0 + 0.05], atol=1e-6)

    def test_lr_zero_is_identity(self):
        r = rng()
        p = [r.normal(size=(3, 3))]
        before = p[0].copy()
        state = AdamState(p, lr=0.0)
        for _ in range(5):
            adam_step(state, p, [r.normal(size=(3, 3))])
        assert np.array_equal(p[0], before)

    def test_shape_mismatch(self):
        p = [np.zeros(2)]
        state = AdamState(p, lr=0.1)
        with pytest.raises(ShapeError):
            adam_step(state, p, [np.zeros(3)])


class TestGradCheck:
    def test_quadratic_is_near_exact(self):
        p = [np.array([1.0, -2.0, 0.5])]

        def loss_fn():
            return float((p[0] ** 2).sum()), [2.0 * p[0]]

        assert grad_check(loss_fn, p, h=1e-5) < 1e-8

    def test_detects_corrupted_gradient(self):
        p = [np.array([1.0, -2.0])]

        def loss_fn():
            return float((p[0] ** 2).sum()), [3.5 * p[0]]  # wrong scale

        assert grad_check(loss_fn, p, h=1e-5) > 1e-1


class TestBlob:
    def test_round_trip(self):
        net = Mlp.init([4, 7, 3], rng())
        buf = io.StringIO()
        save_mlp(net, buf)
        buf.seek(0)
        back = load_mlp(buf)
        assert back.dims == net.dims
        assert back.activations == net.activations
        for a, b in zip(net.parameters(), back.parameters()):
            assert np.array_equal(a, b)

    def test_init_is_seeded(self):
        a = Mlp.init([3, 5, 2], np.random.default_rng(9))
        b = Mlp.init([3, 5, 2], np.random.default_rng(9))
        for pa, pb in zip(a.parameters(), b.parameters()):
            assert np.array_equal(pa, pb)

    def test_file_round_trip(self, tmp_path):
        from cic.neural import load_mlp_file, save_mlp_file

        net = Mlp.init([2, 4, 3], rng())
        path = tmp_path / "net.txt"
        save_mlp_file(net, path)
        back = load_mlp_file(path)
        x = rng().normal(size=(5, 2))
        assert np.array_equal(net.forward(x), back.forward(x))
