"""Minimal dense-network engine: MLP forward/backward, Adam, gradient check.

Everything is double precision and deterministic. A network instance is
single-writer during training; independent instances may train concurrently.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError, FormatError, IoError, ShapeError

ACTIVATIONS = ("tanh", "identity")

MLP_BLOB_MAGIC = "MLPBLOB"
MLP_BLOB_VERSION = 1


def _apply_activation(tag: str, z: np.ndarray) -> np.ndarray:
    if tag == "tanh":
        return np.tanh(z)
    if tag == "identity":
        return z
    raise ConfigError(f"unknown activation {tag!r}")


class Mlp:
    """Fully connected network; weight matrices are (out, in)."""

    def __init__(self, weights, biases, activations):
        if not (len(weights) == len(biases) == len(activations)):
            raise ShapeError("layer lists must have equal length")
        if not weights:
            raise ShapeError("network needs at least one layer")
        for k, (w, b, act) in enumerate(zip(weights, biases, activations)):
            if act not in ACTIVATIONS:
                raise ConfigError(f"unknown activation {act!r} in layer {k}")
            if w.ndim != 2 or b.ndim != 1 or w.shape[0] != b.shape[0]:
                raise ShapeError(f"layer {k}: weight {w.shape} vs bias {b.shape}")
            if k > 0 and w.shape[1] != weights[k - 1].shape[0]:
                raise ShapeError(
                    f"layer {k} input width {w.shape[1]} != previous output "
                    f"{weights[k - 1].shape[0]}"
                )
            if not (np.isfinite(w).all() and np.isfinite(b).all()):
                raise ShapeError(f"layer {k} has non-finite parameters")
        self.weights = [np.asarray(w, dtype=np.float64) for w in weights]
        self.biases = [np.asarray(b, dtype=np.float64) for b in biases]
        self.activations = list(activations)

    @classmethod
    def init(cls, dims, rng, hidden_activation="tanh", output_activation="identity"):
        """Seeded fan-balanced init: weights ~ U(-a, a), a = sqrt(6/(in+out)); zero biases."""
        if len(dims) < 2:
            raise ShapeError("need at least input and output dimensions")
        weights, biases, acts = [], [], []
        for k in range(len(dims) - 1):
            n_in, n_out = dims[k], dims[k + 1]
            a = np.sqrt(6.0 / (n_in + n_out))
            weights.append(rng.uniform(-a, a, size=(n_out, n_in)))
            biases.append(np.zeros(n_out))
            acts.append(output_activation if k == len(dims) - 2 else hidden_activation)
        return cls(weights, biases, acts)

    @property
    def in_dim(self) -> int:
        return self.weights[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights[-1].shape[0]

    @property
    def dims(self) -> list[int]:
        return [self.in_dim] + [w.shape[0] for w in self.weights]

    def parameters(self) -> list[np.ndarray]:
        """References to all parameter arrays, layer by layer (weight, bias)."""
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    def _check_batch(self, batch: np.ndarray) -> np.ndarray:
        batch = np.asarray(batch, dtype=np.float64)
        if batch.ndim != 2 or batch.shape[1] != self.in_dim:
            raise ShapeError(
                f"batch shape {batch.shape} incompatible with input width {self.in_dim}"
            )
        return batch

    def forward(self, batch: np.ndarray) -> np.ndarray:
        batch = self._check_batch(batch)
        out = batch
        for w, b, act in zip(self.weights, self.biases, self.activations):
            out = _apply_activation(act, out @ w.T + b)
        return out

    def forward_cached(self, batch: np.ndarray):
        """Forward pass keeping per-layer outputs for a later backward pass."""
        batch = self._check_batch(batch)
        cache = [batch]
        for w, b, act in zip(self.weights, self.biases, self.activations):
            cache.append(_apply_activation(act, cache[-1] @ w.T + b))
        return cache[-1], cache

    def backward(self, cache, grad_out: np.ndarray):
        """Reverse-mode gradients given cached activations and upstream grad.

        Returns ``(param_grads, grad_input)`` with ``param_grads`` aligned
        with :meth:`parameters`.
        """
        grad = np.asarray(grad_out, dtype=np.float64)
        if grad.shape != cache[-1].shape:
            raise ShapeError(
                f"upstream grad shape {grad.shape} != output shape {cache[-1].shape}"
            )
        param_grads: list[np.ndarray] = [None] * (2 * len(self.weights))
        for k in range(len(self.weights) - 1, -1, -1):
            if self.activations[k] == "tanh":
                grad = grad * (1.0 - cache[k + 1] ** 2)
            param_grads[2 * k] = grad.T @ cache[k]
            param_grads[2 * k + 1] = grad.sum(axis=0)
            grad = grad @ self.weights[k]
        return param_grads, grad

    def backward_from(self, batch: np.ndarray, grad_out: np.ndarray):
        """Convenience: forward then backward in one call."""
        _, cache = self.forward_cached(batch)
        return self.backward(cache, grad_out)


class AdamState:
    """Adam accumulators for a fixed list of parameter arrays."""

    def __init__(self, params, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        if lr < 0:
            raise ConfigError("learning rate must be >= 0")
        self.lr = float(lr)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.eps = float(eps)
        self.step_count = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]


def adam_step(state: AdamState, params, grads):
    """One bias-corrected Adam update; mutates ``params`` in place."""
    if len(params) != len(state.m) or len(grads) != len(state.m):
        raise ShapeError("parameter/gradient list length mismatch")
    state.step_count += 1
    t = state.step_count
    lr_t = state.lr * np.sqrt(1.0 - state.beta2**t) / (1.0 - state.beta1**t)
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if p.shape != g.shape:
            raise ShapeError(f"gradient shape {g.shape} != parameter shape {p.shape}")
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * g * g
        p -= lr_t * m / (np.sqrt(v) + state.eps)
    return params


def grad_check(loss_fn, params, h: float = 1e-5) -> float:
    """Max relative error between analytic and central-difference gradients.

    ``loss_fn()`` must return ``(loss, grads)`` where ``grads`` aligns with
    ``params``; it is re-evaluated with each coordinate perturbed in place,
    so it has to read the same arrays.
    """
    if h <= 0:
        raise ConfigError("perturbation h must be positive")
    _, analytic = loss_fn()
    analytic = [np.array(g, dtype=np.float64, copy=True) for g in analytic]
    worst = 0.0
    for p, g in zip(params, analytic):
        flat = p.reshape(-1)
        gflat = g.reshape(-1)
        for i in range(flat.size):
            keep = flat[i]
            flat[i] = keep + h
            up, _ = loss_fn()
            flat[i] = keep - h
            down, _ = loss_fn()
            flat[i] = keep
            diff = (up - down) / (2.0 * h)
            denom = max(abs(gflat[i]), abs(diff), 1e-12)
            worst = max(worst, abs(gflat[i] - diff) / denom)
    return worst


def save_mlp(net: Mlp, fh) -> None:
    """Write one network to an open text file; versioned plain-text blob."""
    fh.write(f"{MLP_BLOB_MAGIC} {MLP_BLOB_VERSION}\n")
    fh.write("dims " + " ".join(str(d) for d in net.dims) + "\n")
    fh.write("activations " + " ".join(net.activations) + "\n")
    for k, (w, b) in enumerate(zip(net.weights, net.biases)):
        fh.write(f"W{k} " + " ".join(format(v, ".17g") for v in w.reshape(-1)) + "\n")
        fh.write(f"b{k} " + " ".join(format(v, ".17g") for v in b) + "\n")


def load_mlp(fh) -> Mlp:
    """Read one network written by :func:`save_mlp`."""
    header = fh.readline().split()
    if len(header) != 2 or header[0] != MLP_BLOB_MAGIC:
        raise FormatError("not an MLP blob")
    if int(header[1]) != MLP_BLOB_VERSION:
        raise FormatError(f"unsupported MLP blob version {header[1]}")
    dims_line = fh.readline().split()
    acts_line = fh.readline().split()
    if dims_line[:1] != ["dims"] or acts_line[:1] != ["activations"]:
        raise FormatError("malformed MLP blob header")
    dims = [int(d) for d in dims_line[1:]]
    activations = acts_line[1:]
    weights, biases = [], []
    for k in range(len(dims) - 1):
        wline = fh.readline().split()
        bline = fh.readline().split()
        if wline[:1] != [f"W{k}"] or bline[:1] != [f"b{k}"]:
            raise FormatError(f"malformed MLP blob at layer {k}")
        weights.append(
            np.array(wline[1:], dtype=np.float64).reshape(dims[k + 1], dims[k])
        )
        biases.append(np.array(bline[1:], dtype=np.float64))
    return Mlp(weights, biases, activations)


def save_mlp_file(net: Mlp, path) -> None:
    try:
        with open(path, "w", newline="\n") as fh:
            save_mlp(net, fh)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_mlp_file(path) -> Mlp:
    try:
        with open(path, "r") as fh:
            return load_mlp(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
