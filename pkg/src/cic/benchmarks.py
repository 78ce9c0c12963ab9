"""Coupled-logistic benchmark generators with known causal ground truth.

The three-variable family drives variables x, y and an always-autonomous z
through noisy logistic maps:

    x_{t+1} = x_t * (g_x - g_x x_t - b[1][0] y_t - b[2][0] z_t) + e_x
    y_{t+1} = y_t * (g_y - g_y y_t - b[0][1] x_t - b[2][1] z_t) + e_y
    z_{t+1} = z_t * (g_z - g_z z_t) + e_z

where ``b[i][j]`` is the strength of i's influence on j and the e terms are
i.i.d. Gaussian. Four canonical coupling regimes are provided: 1 = x drives
y, 2 = y drives x, 3 = z drives both (hidden confounder), 4 = no coupling.
A general n-node generator extends the same update to arbitrary adjacency.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, UnstableError
from .timeseries import TimeSeries

DEFAULT_GAMMA = (3.7, 3.72, 3.78)
MAX_NOISE_RETRIES = 100
MAX_RESTARTS = 20


@dataclass(frozen=True)
class LogisticSystemSpec:
    """Full parameterization of one coupled-logistic simulation."""

    gamma: tuple
    beta: np.ndarray
    noise_sd: float = 0.0
    length: int = 1000
    burn_in: int = 100
    seed: int = 0
    init: tuple | None = None

    def __post_init__(self):
        beta = np.asarray(self.beta, dtype=np.float64)
        n = len(self.gamma)
        if beta.shape != (n, n):
            raise ConfigError(f"beta must be {n}x{n}, got {beta.shape}")
        if np.diag(beta).any():
            raise ConfigError("beta diagonal must be zero")
        if any(not 0.0 < g <= 4.0 for g in self.gamma):
            raise ConfigError("growth rates must lie in (0, 4]")
        if self.noise_sd < 0:
            raise ConfigError("noise_sd must be >= 0")
        if self.length < 1 or self.burn_in < 0:
            raise ConfigError("length must be >= 1 and burn_in >= 0")
        if self.init is not None and (
            len(self.init) != n or any(not 0.0 < v < 1.0 for v in self.init)
        ):
            raise ConfigError("init values must lie in (0, 1)")
        beta = beta.copy()
        beta.setflags(write=False)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", tuple(float(g) for g in self.gamma))


def _iterate(spec: LogisticSystemSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    """Run one simulation with the escape policy.

    A step whose update leaves (0, 1) has its noise vector resampled up to
    100 times; if the step still escapes, the whole trajectory restarts from
    a fresh seeded initial condition (at most 20 restarts) before raising
    :class:`UnstableError`. All draws come from a single generator, so the
    emitted series is a deterministic function of the spec.
    """
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    gamma = np.array(spec.gamma)
    beta_t = spec.beta.T  # row i: inbound couplings of variable i
    n = gamma.size
    total = spec.burn_in + spec.length

    def fresh_init():
        return np.array(spec.init) if spec.init is not None else rng.uniform(0.1, 0.9, n)

    for _restart in range(MAX_RESTARTS + 1):
        state = fresh_init()
        out = np.empty((total, n))
        failed = False
        for t in range(total):
            drift = state * (gamma - gamma * state - beta_t @ state)
            for _attempt in range(MAX_NOISE_RETRIES):
                candidate = drift + rng.normal(0.0, spec.noise_sd, n)
                if ((candidate > 0.0) & (candidate < 1.0)).all():
                    break
            else:
                failed = True
                break
            out[t] = candidate
            state = candidate
        if not failed:
            return out[spec.burn_in :]
        if spec.init is not None:
            # fixed initial condition cannot be resampled; restarting is futile
            break
    raise UnstableError(
        f"trajectory escaped (0, 1) after {MAX_RESTARTS} restarts "
        f"(noise_sd={spec.noise_sd}, length={spec.length})"
    )


def system_coupling(system_id: int, strength: float) -> np.ndarray:
    """Coupling matrix of the four canonical three-variable regimes."""
    if system_id not in (1, 2, 3, 4):
        raise ConfigError(f"system_id must be 1..4, got {system_id}")
    if strength < 0:
        raise ConfigError("strength must be >= 0")
    beta = np.zeros((3, 3))
    if system_id == 1:
        beta[0, 1] = strength  # x -> y
    elif system_id == 2:
        beta[1, 0] = strength  # y -> x
    elif system_id == 3:
        beta[2, 0] = strength  # z -> x
        beta[2, 1] = strength  # z -> y
    return beta


def truth_from_coupling(beta: np.ndarray):
    """Ground-truth matrices implied by a coupling/adjacency matrix.

    Returns ``(causal, confounded)``: ``causal[i][j] = 1`` iff i directly
    drives j; ``confounded`` is symmetric and marks pairs that share a parent
    while having no direct link in either direction.
    """
    beta = np.asarray(beta)
    n = beta.shape[0]
    causal = (beta != 0).astype(int)
    np.fill_diagonal(causal, 0)
    confounded = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            if i == j or causal[i, j] or causal[j, i]:
                continue
            if ((causal[:, i] == 1) & (causal[:, j] == 1)).any():
                confounded[i, j] = 1
    return causal, confounded


def simulate3(
    system_id: int,
    strength: float,
    noise_sd: float,
    length: int,
    seed: int,
    gamma: tuple = DEFAULT_GAMMA,
    burn_in: int = 100,
    init: tuple | None = None,
) -> TimeSeries:
    """Simulate one three-variable regime; columns are x, y, z."""
    spec = LogisticSystemSpec(
        gamma=gamma,
        beta=system_coupling(system_id, strength),
        noise_sd=noise_sd,
        length=length,
        burn_in=burn_in,
        seed=seed,
        init=init,
    )
    return TimeSeries(names=("x", "y", "z"), values=_iterate(spec), segments=None)


def simulate_network(
    adjacency: np.ndarray,
    strength: float,
    noise_sd: float,
    length: int,
    seed: int,
    burn_in: int = 100,
) -> TimeSeries:
    """Simulate an n-node coupled-logistic network from a 0/1 adjacency matrix.

    Growth rates are drawn uniformly from (3.6, 3.8) with the same seed that
    drives the trajectory. Warns when the total inbound coupling of any node
    exceeds 0.5, the rough stability margin.
    """
    adjacency = np.asarray(adjacency, dtype=np.float64)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise ConfigError("adjacency must be a square matrix")
    if np.diag(adjacency).any():
        raise ConfigError("adjacency diagonal must be zero")
    if strength < 0:
        raise ConfigError("strength must be >= 0")
    n = adjacency.shape[0]
    max_in = float(adjacency.sum(axis=0).max())
    if strength * max_in > 0.5:
        warnings.warn(
            f"total inbound coupling {strength * max_in:.3f} exceeds 0.5; "
            "the map may frequently escape (0, 1)",
            stacklevel=2,
        )
    # one stream, consumed in order: growth rates, then the trajectory draws
    rng = np.random.default_rng(seed)
    gamma = tuple(rng.uniform(3.6, 3.8, n))
    spec = LogisticSystemSpec(
        gamma=gamma,
        beta=strength * adjacency,
        noise_sd=noise_sd,
        length=length,
        burn_in=burn_in,
        seed=seed,
    )
    names = tuple(f"v{i + 1}" for i in range(n))
    return TimeSeries(names=names, values=_iterate(spec, rng=rng), segments=None)
