import numpy as np
import pytest

from cic.benchmarks import (
    LogisticSystemSpec,
    simulate3,
    simulate_network,
    system_coupling,
    truth_from_coupling,
)
from cic.errors import ConfigError, UnstableError


class TestSimulate3:
    def test_hand_computed_first_step(self):
        # noise-free logistic step from x0 = 0.4: 0.4 * (3.7 - 3.7*0.4) = 0.888
        ts = simulate3(4, 0.0, 0.0, 3, seed=0, burn_in=0, init=(0.4, 0.5, 0.6))
        assert ts.values[0, 0] == pytest.approx(0.888, abs=1e-12)

    def test_strength_zero_system1_equals_system4(self):
        a = simulate3(1, 0.0, 0.002, 500, seed=9)
        b = simulate3(4, 0.0, 0.002, 500, seed=9)
        assert np.array_equal(a.values, b.values)

    def test_deterministic(self):
        a = simulate3(3, 0.35, 0.001, 400, seed=12)
        b = simulate3(3, 0.35, 0.001, 400, seed=12)
        assert np.array_equal(a.values, b.values)

    def test_values_stay_in_unit_interval(self):
        for system in (1, 2, 3, 4):
            ts = simulate3(system, 0.35, 0.01, 2000, seed=system)
            assert ts.values.min() > 0.0
            assert ts.values.max() < 1.0

    def test_noise_free_matches_reference_iteration(self):
        # independent re-implementation of the update line, variable by variable
        ts = simulate3(3, 0.35, 0.0, 50, seed=3, burn_in=0, init=(0.3, 0.4, 0.5))
        gx, gy, gz = 3.7, 3.72, 3.78
        x, y, z = 0.3, 0.4, 0.5
        rows = []
        for _ in range(50):
            x, y, z = (
                x * (gx - gx * x - 0.35 * z),
                y * (gy - gy * y - 0.35 * z),
                z * (gz - gz * z),
            )
            rows.append((x, y, z))
        assert np.allclose(ts.values, rows, atol=1e-12)

    def test_z_ignores_xy_initialization(self):
        a = simulate3(3, 0.35, 0.0, 200, seed=0, init=(0.3, 0.4, 0.5))
        b = simulate3(3, 0.35, 0.0, 200, seed=0, init=(0.7, 0.2, 0.5))
        assert np.array_equal(a.column("z"), b.column("z"))

    def test_unstable_when_noise_is_huge(self):
        with pytest.raises(UnstableError):
            simulate3(4, 0.0, 5.0, 200, seed=0, init=(0.5, 0.5, 0.5))

    def test_burn_in_discarded(self):
        full = simulate3(4, 0.0, 0.0, 30, seed=4, burn_in=0, init=(0.3, 0.4, 0.5))
        cut = simulate3(4, 0.0, 0.0, 20, seed=4, burn_in=10, init=(0.3, 0.4, 0.5))
        assert np.allclose(full.values[10:], cut.values, atol=1e-12)

    def test_columns_named(self):
        assert simulate3(4, 0.0, 0.0, 5, seed=0).names == ("x", "y", "z")


class TestCoupling:
    def test_regimes(self):
        assert system_coupling(1, 0.35)[0, 1] == 0.35
        assert system_coupling(2, 0.35)[1, 0] == 0.35
        b3 = system_coupling(3, 0.35)
        assert b3[2, 0] == b3[2, 1] == 0.35
        assert not system_coupling(4, 0.35).any()

    def test_bad_system_id(self):
        with pytest.raises(ConfigError):
            system_coupling(5, 0.1)

    def test_truth_matrices_system3(self):
        causal, confounded = truth_from_coupling(system_coupling(3, 0.35))
        assert causal[2, 0] == 1 and causal[2, 1] == 1
        assert causal.sum() == 2
        assert confounded[0, 1] == 1 and confounded[1, 0] == 1
        assert confounded.sum() == 2

    def test_truth_matrices_chain(self):
        # 1 -> 2 -> 3: no confounded pair, two causal links
        adj = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        causal, confounded = truth_from_coupling(adj)
        assert causal[0, 1] == 1 and causal[1, 2] == 1
        assert causal.sum() == 2
        assert not confounded.any()

    def test_truth_matrices_fork(self):
        # 1 -> 2, 1 -> 3: pair (2, 3) is confounded
        adj = np.array([[0, 1, 1], [0, 0, 0], [0, 0, 0]])
        _, confounded = truth_from_coupling(adj)
        assert confounded[1, 2] == 1 and confounded[2, 1] == 1
        assert confounded.sum() == 2


class TestSimulateNetwork:
    def test_empty_adjacency_gives_independent_maps(self):
        ts = simulate_network(np.zeros((3, 3)), 0.3, 0.0, 100, seed=1)
        assert ts.values.shape == (100, 3)
        assert ts.values.min() > 0.0 and ts.values.max() < 1.0

    def test_deterministic(self):
        adj = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        a = simulate_network(adj, 0.3, 0.001, 300, seed=5)
        b = simulate_network(adj, 0.3, 0.001, 300, seed=5)
        assert np.array_equal(a.values, b.values)

    @pytest.mark.filterwarnings("ignore:total inbound coupling")
    def test_stability_sweep_over_seeds(self):
        rng = np.random.default_rng(0)
        adj = (rng.uniform(size=(10, 10)) < 0.2).astype(int)
        np.fill_diagonal(adj, 0)
        for seed in range(30):
            ts = simulate_network(adj, 0.3, 0.001, 200, seed=seed)
            assert ts.values.min() > 0.0
            assert ts.values.max() < 1.0

    def test_overload_warns(self):
        adj = np.ones((4, 4)) - np.eye(4)
        with pytest.warns(UserWarning, match="inbound coupling"):
            simulate_network(adj, 0.4, 0.0, 50, seed=0)

    def test_diagonal_rejected(self):
        with pytest.raises(ConfigError):
            simulate_network(np.eye(3), 0.3, 0.0, 50, seed=0)


class TestSpecValidation:
    def test_rejects_bad_gamma(self):
        with pytest.raises(ConfigError):
            LogisticSystemSpec(gamma=(4.5, 3.7, 3.7), beta=np.zeros((3, 3)))

    def test_rejects_nonzero_diagonal(self):
        beta = np.zeros((3, 3))
        beta[1, 1] = 0.2
        with pytest.raises(ConfigError):
            LogisticSystemSpec(gamma=(3.7, 3.7, 3.7), beta=beta)
