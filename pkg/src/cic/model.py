"""Dual-encoder/dual-decoder VAE that splits two delay-embedded views into
private and shared latent subspaces, and the causal index built on it.

A model instance is single-writer while :meth:`CicModel.fit` runs; separate
instances share no state and may train concurrently (pairwise scans
parallelize across models), with all randomness flowing from each
instance's seed.

Two encoders map cause rows and effect rows to Gaussian posteriors over a
private and a shared latent block; two decoders reconstruct each view from
the concatenation of its private and the shared block. Training minimizes
reconstruction + KL, a cosine-similarity orthogonality penalty between
latent blocks, and a soft equality constraint tying the two shared blocks
together. After training, the ratio of shared to (private + shared)
posterior-mean norms on the cause side scores the directional causality,
and the shared posterior means over time reconstruct a hidden common driver.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .embedding import EmbeddedPairDataset, EmbeddingConfig, embed_pair
from .errors import ConfigError, DegenerateError, DivergenceError, ShapeError
from .neural import AdamState, Mlp, adam_step, load_mlp, save_mlp
from .timeseries import TimeSeries

VERDICT_CAUSAL = "Causal"
VERDICT_CONFOUNDED = "Confounded"
VERDICT_NONCAUSAL = "NonCausal"
VERDICT_SELF = "Self"

_NORM_FLOOR = 1e-12

MODEL_BLOB_MAGIC = "CICMODEL"
MODEL_BLOB_VERSION = 1


@dataclass(frozen=True)
class GaussianPosterior:
    """Diagonal Gaussian posterior: ``sigma = exp(log_sigma)`` > 0 by construction."""

    mu: np.ndarray
    log_sigma: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=np.float64)
        ls = np.asarray(self.log_sigma, dtype=np.float64)
        if mu.shape != ls.shape or mu.ndim != 2:
            raise ShapeError(f"mu {mu.shape} and log_sigma {ls.shape} must be equal 2-D")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "log_sigma", ls)

    @property
    def sigma(self) -> np.ndarray:
        return np.exp(self.log_sigma)

    @property
    def batch_size(self) -> int:
        return self.mu.shape[0]

    @property
    def dim(self) -> int:
        return self.mu.shape[1]


@dataclass(frozen=True)
class LatentSplit:
    """Posteriors of both views: private blocks plus the two shared blocks."""

    cause_private: GaussianPosterior
    cause_shared: GaussianPosterior
    effect_private: GaussianPosterior
    effect_shared: GaussianPosterior


@dataclass
class CicReport:
    """Outcome of scoring one direction on one dataset.

    ``shared_series`` holds the shared-block posterior means of the cause
    encoder along time: the reconstructed confounder signal. ``diagnostics``
    carries mean squared reconstruction errors of the cause view from the
    full latent, from the shared block alone (private zeroed) and from the
    private block alone (shared zeroed).
    """

    score: float
    norm_private: float
    norm_shared: float
    verdict: str
    shared_series: np.ndarray
    loss_history: list[float] = field(default_factory=list)
    diagnostics: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready summary; the shared series is exported separately as CSV."""
        return {
            "score": self.score,
            "norm_private": self.norm_private,
            "norm_shared": self.norm_shared,
            "verdict": self.verdict,
            "diagnostics": dict(self.diagnostics),
            "loss_history": list(self.loss_history),
        }


@dataclass
class PairInference:
    """Both directional reports plus the pair-level confounder call."""

    report_xy: CicReport
    report_yx: CicReport
    confounder: bool


def cic_score(norm_private: float, norm_shared: float) -> float:
    """Causal index from the two cause-side norms: shared / (private + shared).

    Defined as 0 when both norms vanish (nothing was encoded at all).
    """
    if norm_private < 0 or norm_shared < 0:
        raise ConfigError("norms must be non-negative")
    if norm_private < _NORM_FLOOR and norm_shared < _NORM_FLOOR:
        return 0.0
    return norm_shared / (norm_private + norm_shared)


def verdict_of(score: float, m: float, M: float) -> str:
    """Map a score in [0, 1] to a verdict given the band thresholds."""
    if not 0.0 <= m < M <= 1.0:
        raise ConfigError(f"thresholds must satisfy 0 <= m < M <= 1, got {m}, {M}")
    if score <= m:
        return VERDICT_NONCAUSAL
    if score >= M:
        return VERDICT_CAUSAL
    return VERDICT_CONFOUNDED


def reparameterize(post: GaussianPosterior, rng: np.random.Generator) -> np.ndarray:
    """Draw ``z = mu + sigma * eps`` with ``eps ~ N(0, I)``; deterministic given rng state."""
    eps = rng.standard_normal(post.mu.shape)
    return post.mu + post.sigma * eps


def kl_to_standard_normal(post: GaussianPosterior) -> float:
    """Batch-mean KL divergence to the standard-normal prior; always >= 0."""
    mu, ls = post.mu, post.log_sigma
    sig2 = np.exp(2.0 * ls)
    return float(0.5 * (mu**2 + sig2 - 1.0 - 2.0 * ls).sum() / mu.shape[0])


def ortho(u: np.ndarray, v: np.ndarray) -> float:
    """Squared cosine similarity of two vectors: 0 iff orthogonal, 1 iff collinear."""
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if u.shape != v.shape:
        raise ShapeError(f"vector widths differ: {u.shape[0]} vs {v.shape[0]}")
    qu = float(u @ u)
    qv = float(v @ v)
    if qu < _NORM_FLOOR**2 or qv < _NORM_FLOOR**2:
        raise DegenerateError("ortho undefined for (near-)zero vectors")
    s = float(u @ v)
    return s * s / (qu * qv)


def _ortho_rows_value_grad(U: np.ndarray, V: np.ndarray):
    """Row-wise squared cosine, batch mean, with gradients.

    Rows where either vector norm falls below 1e-12 contribute 0 with zero
    gradient (degenerate rows are skipped rather than raised during training).
    """
    s = (U * V).sum(axis=1)
    qu = (U * U).sum(axis=1)
    qv = (V * V).sum(axis=1)
    ok = (qu >= _NORM_FLOOR**2) & (qv >= _NORM_FLOOR**2)
    vals = np.zeros_like(s)
    gU = np.zeros_like(U)
    gV = np.zeros_like(V)
    if ok.any():
        denom = qu[ok] * qv[ok]
        so = s[ok]
        vals[ok] = so * so / denom
        cu = (2.0 * so / denom)[:, None]
        gU[ok] = cu * V[ok] - (2.0 * so * so / (qu[ok] * denom))[:, None] * U[ok]
        gV[ok] = cu * U[ok] - (2.0 * so * so / (qv[ok] * denom))[:, None] * V[ok]
    B = U.shape[0]
    return float(vals.sum() / B), gU / B, gV / B


class CicModel(BaseEstimator):
    """Trainable dual-VAE causality scorer over a (cause, effect) view pair.

    Follows the scikit-learn estimator protocol: hyperparameters are stored
    verbatim at construction, all work happens in :meth:`fit`, and fitted
    state lives in trailing-underscore attributes. ``fit(X, Y)`` takes the
    cause-view and effect-view row matrices of an aligned embedded pair.

    Parameters
    ----------
    d_private, d_shared : int
        Widths of the private and shared latent blocks. Equal widths are
        required whenever ``beta1 > 0`` (the cosine penalty compares blocks).
    hidden : tuple of int
        Hidden-layer widths of every encoder/decoder MLP (tanh activations).
    alpha : float
        Weight of the reconstruction terms.
    beta1, beta2 : float
        Weights of the orthogonality penalty and of the shared-equality
        penalty (the expected MSE between shared-block samples, which also
        prices the shared posterior variances).
    lr, epochs, batch_size, seed
        Adam learning rate, epoch budget, minibatch size and the seed from
        which all randomness (init, shuffling, sampling noise) flows.
    m, M : float
        Verdict thresholds: score <= m is non-causal, score >= M is causal,
        anything between is attributed to a confounder.
    patience : int or None
        When set, stop early after this many epochs without loss improvement.
    """

    def __init__(
        self,
        d_private: int = 4,
        d_shared: int = 4,
        hidden: tuple = (64, 64),
        alpha: float = 1.3,
        beta1: float = 1.0,
        beta2: float = 10.0,
        lr: float = 1e-3,
        epochs: int = 800,
        batch_size: int = 64,
        seed: int = 0,
        m: float = 0.25,
        M: float = 0.75,
        patience=None,
    ):
        self.d_private = d_private
        self.d_shared = d_shared
        self.hidden = hidden
        self.alpha = alpha
        self.beta1 = beta1
        self.beta2 = beta2
        self.lr = lr
        self.epochs = epochs
        self.batch_size = batch_size
        self.seed = seed
        self.m = m
        self.M = M
        self.patience = patience

    # ------------------------------------------------------------------ setup

    def _validate_hyperparameters(self):
        if self.d_private < 1 or self.d_shared < 1:
            raise ConfigError("latent widths must be >= 1")
        if not self.hidden or any(int(h) < 1 for h in self.hidden):
            raise ConfigError("hidden widths must be >= 1")
        if self.lr <= 0:
            raise ConfigError("lr must be > 0")
        if self.epochs < 0 or self.batch_size < 1:
            raise ConfigError("epochs must be >= 0 and batch_size >= 1")
        if not 0.0 <= self.m < self.M <= 1.0:
            raise ConfigError(
                f"thresholds must satisfy 0 <= m < M <= 1, got {self.m}, {self.M}"
            )
        if self.beta1 > 0 and self.d_private != self.d_shared:
            raise ConfigError(
                "cosine orthogonality needs d_private == d_shared when beta1 > 0"
            )
        if self.patience is not None and int(self.patience) < 1:
            raise ConfigError("patience must be None or >= 1")

    @staticmethod
    def _check_views(X, Y):
        X = np.asarray(X, dtype=np.float64)
        Y = np.asarray(Y, dtype=np.float64)
        if X.ndim != 2 or Y.ndim != 2:
            raise ShapeError("views must be 2-D matrices")
        if X.shape[0] != Y.shape[0]:
            raise ShapeError(f"row counts differ: {X.shape[0]} vs {Y.shape[0]}")
        if X.shape[0] < 1:
            raise ShapeError("views are empty")
        if not (np.isfinite(X).all() and np.isfinite(Y).all()):
            raise ShapeError("views contain non-finite values")
        return X, Y

    @staticmethod
    def _unpack(data, Y=None):
        if isinstance(data, EmbeddedPairDataset):
            return data.cause_rows, data.effect_rows
        if Y is None:
            raise ShapeError("pass an EmbeddedPairDataset or both view matrices")
        return data, Y

    def _init_networks(self, in_cause: int, in_effect: int, rng):
        hidden = [int(h) for h in self.hidden]
        enc_out = 2 * (self.d_private + self.d_shared)
        dec_in = self.d_private + self.d_shared
        self.enc_cause_ = Mlp.init([in_cause, *hidden, enc_out], rng)
        self.enc_effect_ = Mlp.init([in_effect, *hidden, enc_out], rng)
        self.dec_cause_ = Mlp.init([dec_in, *hidden, in_cause], rng)
        self.dec_effect_ = Mlp.init([dec_in, *hidden, in_effect], rng)
        self.n_features_cause_ = in_cause
        self.n_features_effect_ = in_effect

    def _parameters(self) -> list[np.ndarray]:
        return (
            self.enc_cause_.parameters()
            + self.enc_effect_.parameters()
            + self.dec_cause_.parameters()
            + self.dec_effect_.parameters()
        )

    def _require_fitted(self):
        if not hasattr(self, "enc_cause_"):
            raise ShapeError("model is not fitted yet")

    # ------------------------------------------------------------- posteriors

    def _split_encoder_output(self, out: np.ndarray):
        # encoder output layout: [mu_private | mu_shared | log_sigma_private | log_sigma_shared]
        dp, ds = self.d_private, self.d_shared
        mu_p = out[:, :dp]
        mu_s = out[:, dp : dp + ds]
        ls_p = out[:, dp + ds : 2 * dp + ds]
        ls_s = out[:, 2 * dp + ds :]
        return mu_p, mu_s, ls_p, ls_s

    def encode_cause(self, X: np.ndarray):
        """Posteriors (private, shared) of the cause-view encoder."""
        self._require_fitted()
        out = self.enc_cause_.forward(np.asarray(X, dtype=np.float64))
        mu_p, mu_s, ls_p, ls_s = self._split_encoder_output(out)
        return GaussianPosterior(mu_p, ls_p), GaussianPosterior(mu_s, ls_s)

    def encode_effect(self, Y: np.ndarray):
        """Posteriors (private, shared) of the effect-view encoder."""
        self._require_fitted()
        out = self.enc_effect_.forward(np.asarray(Y, dtype=np.float64))
        mu_p, mu_s, ls_p, ls_s = self._split_encoder_output(out)
        return GaussianPosterior(mu_p, ls_p), GaussianPosterior(mu_s, ls_s)

    def encode(self, data, Y=None) -> LatentSplit:
        """Encode an embedded pair (or two matrices) into all four posteriors."""
        X, Y = self._check_views(*self._unpack(data, Y))
        cause_p, cause_s = self.encode_cause(X)
        effect_p, effect_s = self.encode_effect(Y)
        return LatentSplit(cause_p, cause_s, effect_p, effect_s)

    def decode_cause(self, z_private: np.ndarray, z_shared: np.ndarray) -> np.ndarray:
        """Reconstruct cause rows from latent blocks (identity output)."""
        self._require_fitted()
        z_private = np.asarray(z_private, dtype=np.float64)
        z_shared = np.asarray(z_shared, dtype=np.float64)
        if z_private.ndim != 2 or z_private.shape[1] != self.d_private:
            raise ShapeError(f"private block must be (B, {self.d_private})")
        if z_shared.ndim != 2 or z_shared.shape[1] != self.d_shared:
            raise ShapeError(f"shared block must be (B, {self.d_shared})")
        return self.dec_cause_.forward(np.hstack([z_private, z_shared]))

    def decode_effect(self, z_private: np.ndarray, z_shared: np.ndarray) -> np.ndarray:
        """Reconstruct effect rows from latent blocks (identity output)."""
        self._require_fitted()
        z_private = np.asarray(z_private, dtype=np.float64)
        z_shared = np.asarray(z_shared, dtype=np.float64)
        if z_private.ndim != 2 or z_private.shape[1] != self.d_private:
            raise ShapeError(f"private block must be (B, {self.d_private})")
        if z_shared.ndim != 2 or z_shared.shape[1] != self.d_shared:
            raise ShapeError(f"shared block must be (B, {self.d_shared})")
        return self.dec_effect_.forward(np.hstack([z_private, z_shared]))

    # ------------------------------------------------------------------- loss

    def draw_noise(self, batch_rows: int, rng: np.random.Generator):
        """Reparameterization noise for one batch, in the canonical block order."""
        dp, ds = self.d_private, self.d_shared
        return (
            rng.standard_normal((batch_rows, dp)),
            rng.standard_normal((batch_rows, ds)),
            rng.standard_normal((batch_rows, dp)),
            rng.standard_normal((batch_rows, ds)),
        )

    def loss_and_grads(self, X: np.ndarray, Y: np.ndarray, noise, beta2=None):
        """Loss terms and exact parameter gradients for one batch.

        ``noise`` is the tuple produced by :meth:`draw_noise`; holding it
        fixed makes the loss a deterministic, finite-differentiable function
        of the parameters. ``beta2`` overrides the configured equality weight
        (used by :meth:`fit` during warmup); the default is the configured
        value.
        """
        self._require_fitted()
        beta2 = self.beta2 if beta2 is None else beta2
        B = X.shape[0]
        eps_cp, eps_cs, eps_ep, eps_es = noise

        out_c, cache_ec = self.enc_cause_.forward_cached(X)
        out_e, cache_ee = self.enc_effect_.forward_cached(Y)
        mu_cp, mu_cs, ls_cp, ls_cs = self._split_encoder_output(out_c)
        mu_ep, mu_es, ls_ep, ls_es = self._split_encoder_output(out_e)
        sig_cp, sig_cs = np.exp(ls_cp), np.exp(ls_cs)
        sig_ep, sig_es = np.exp(ls_ep), np.exp(ls_es)

        z_cp = mu_cp + sig_cp * eps_cp
        z_cs = mu_cs + sig_cs * eps_cs
        z_ep = mu_ep + sig_ep * eps_ep
        z_es = mu_es + sig_es * eps_es

        xhat, cache_dc = self.dec_cause_.forward_cached(np.hstack([z_cp, z_cs]))
        yhat, cache_de = self.dec_effect_.forward_cached(np.hstack([z_ep, z_es]))

        # reconstruction: unit-variance Gaussian likelihood up to constants,
        # i.e. half the per-sample sum of squares, averaged over the batch
        rx = xhat - X
        ry = yhat - Y
        recon = 0.5 * (float((rx * rx).sum()) + float((ry * ry).sum())) / B

        def kl_parts(mu, ls, sig):
            val = 0.5 * float((mu * mu + sig * sig - 1.0 - 2.0 * ls).sum()) / B
            return val, mu / B, (sig * sig - 1.0) / B

        kl_cp, gmu_kl_cp, gls_kl_cp = kl_parts(mu_cp, ls_cp, sig_cp)
        kl_cs, gmu_kl_cs, gls_kl_cs = kl_parts(mu_cs, ls_cs, sig_cs)
        kl_ep, gmu_kl_ep, gls_kl_ep = kl_parts(mu_ep, ls_ep, sig_ep)
        kl_es, gmu_kl_es, gls_kl_es = kl_parts(mu_es, ls_es, sig_es)

        l_vae = self.alpha * recon + kl_cp + kl_cs + kl_ep + kl_es

        # orthogonality acts on posterior means
        if self.beta1 > 0:
            o1, g1_cp, g1_cs = _ortho_rows_value_grad(mu_cp, mu_cs)
            o2, g2_ep, g2_es = _ortho_rows_value_grad(mu_ep, mu_es)
            o3, g3_cp, g3_ep = _ortho_rows_value_grad(mu_cp, mu_ep)
            l_diff = o1 + o2 + o3
        else:
            l_diff = 0.0

        # equality is the exact expected MSE between shared-block samples:
        # E||z^c - z^e||^2 / d = (||mu_c - mu_e||^2 + sum sig_c^2 + sum sig_e^2) / d.
        # The variance part is what makes the shared channel a low-noise conduit
        # that mutually predictable content migrates into; without it the shared
        # block collapses and the index cannot separate the coupling regimes.
        d_equal = mu_cs - mu_es
        eq_size = d_equal.size
        l_equal = (
            float((d_equal * d_equal).sum())
            + float((sig_cs * sig_cs).sum())
            + float((sig_es * sig_es).sum())
        ) / eq_size

        total = l_vae + self.beta1 * l_diff + beta2 * l_equal

        # ----- backward -----
        g_xhat = self.alpha * rx / B
        g_yhat = self.alpha * ry / B
        grads_dc, g_zc = self.dec_cause_.backward(cache_dc, g_xhat)
        grads_de, g_ze = self.dec_effect_.backward(cache_de, g_yhat)
        dp = self.d_private

        gmu_cp = g_zc[:, :dp] + gmu_kl_cp
        gmu_cs = g_zc[:, dp:] + gmu_kl_cs
        gmu_ep = g_ze[:, :dp] + gmu_kl_ep
        gmu_es = g_ze[:, dp:] + gmu_kl_es
        gls_cp = g_zc[:, :dp] * sig_cp * eps_cp + gls_kl_cp
        gls_cs = g_zc[:, dp:] * sig_cs * eps_cs + gls_kl_cs
        gls_ep = g_ze[:, :dp] * sig_ep * eps_ep + gls_kl_ep
        gls_es = g_ze[:, dp:] * sig_es * eps_es + gls_kl_es

        if self.beta1 > 0:
            gmu_cp += self.beta1 * (g1_cp + g3_cp)
            gmu_cs += self.beta1 * g1_cs
            gmu_ep += self.beta1 * (g2_ep + g3_ep)
            gmu_es += self.beta1 * g2_es

        g_eq = (2.0 * beta2 / eq_size) * d_equal
        gmu_cs += g_eq
        gmu_es -= g_eq
        gls_cs += (2.0 * beta2 / eq_size) * sig_cs * sig_cs
        gls_es += (2.0 * beta2 / eq_size) * sig_es * sig_es

        up_c = np.hstack([gmu_cp, gmu_cs, gls_cp, gls_cs])
        up_e = np.hstack([gmu_ep, gmu_es, gls_ep, gls_es])
        grads_ec, _ = self.enc_cause_.backward(cache_ec, up_c)
        grads_ee, _ = self.enc_effect_.backward(cache_ee, up_e)

        terms = {
            "total": float(total),
            "l_vae": float(l_vae),
            "l_diff": float(l_diff),
            "l_equal": float(l_equal),
        }
        return terms, grads_ec + grads_ee + grads_dc + grads_de

    def loss_terms(self, data, Y=None, rng=None) -> dict:
        """Loss terms on one batch with sampling noise drawn from ``rng``."""
        X, Y = self._check_views(*self._unpack(data, Y))
        if rng is None:
            rng = np.random.default_rng(self.seed)
        terms, _ = self.loss_and_grads(X, Y, self.draw_noise(X.shape[0], rng))
        return terms

    # ------------------------------------------------------------------ train

    def fit(self, X, Y=None):
        """Train on an embedded pair with mini-batch Adam over shuffled epochs.

        Deterministic given (data, hyperparameters, seed). Raises
        :class:`DivergenceError` if the loss turns non-finite.
        """
        self._validate_hyperparameters()
        X, Y = self._check_views(*self._unpack(X, Y))
        n = X.shape[0]
        rng = np.random.default_rng(self.seed)
        self._init_networks(X.shape[1], Y.shape[1], rng)
        params = self._parameters()
        adam = AdamState(params, lr=self.lr)
        batch = min(self.batch_size, n)

        history: list[float] = []
        best = np.inf
        stale = 0
        for epoch in range(self.epochs):
            order = rng.permutation(n)
            epoch_loss = 0.0
            for lo in range(0, n, batch):
                idx = order[lo : lo + batch]
                noise = self.draw_noise(idx.size, rng)
                terms, grads = self.loss_and_grads(X[idx], Y[idx], noise)
                if not np.isfinite(terms["total"]):
                    raise DivergenceError(
                        f"loss became non-finite at epoch {epoch}", epoch=epoch
                    )
                adam_step(adam, params, grads)
                epoch_loss += terms["total"] * idx.size
            history.append(epoch_loss / n)
            if self.patience is not None:
                if history[-1] < best - 1e-9:
                    best = history[-1]
                    stale = 0
                else:
                    stale += 1
                    if stale >= int(self.patience):
                        break
        self.loss_history_ = history
        return self

    # ------------------------------------------------------------------ index

    def report(self, data, Y=None) -> CicReport:
        """Score one direction: causal index, verdict, confounder series, diagnostics.

        The index discounts the shared channel by the effect side's private
        "aliveness" ``min(1, |private_effect| / |shared_effect|)``. A trained
        pair where the effect view is fully explained by the mutual channel
        (dead effect-private) means the shared content is just the effect's
        own trajectory as seen through the cause, which is evidence for the
        opposite causal direction, not for this one and not for a confounder.
        Both the gate and the ungated ratio are exposed in ``diagnostics``.
        """
        X, Y = self._check_views(*self._unpack(data, Y))
        post_p, post_s = self.encode_cause(X)
        eff_p, eff_s = self.encode_effect(Y)
        norm_private = float(np.linalg.norm(post_p.mu, axis=1).mean())
        norm_shared = float(np.linalg.norm(post_s.mu, axis=1).mean())
        norm_private_effect = float(np.linalg.norm(eff_p.mu, axis=1).mean())
        norm_shared_effect = float(np.linalg.norm(eff_s.mu, axis=1).mean())
        if norm_shared_effect < _NORM_FLOOR:
            gate = 1.0
        else:
            gate = min(1.0, norm_private_effect / norm_shared_effect)
        score = cic_score(norm_private, norm_shared * gate)
        recon_full = self.decode_cause(post_p.mu, post_s.mu)
        recon_shared = self.decode_cause(np.zeros_like(post_p.mu), post_s.mu)
        recon_private = self.decode_cause(post_p.mu, np.zeros_like(post_s.mu))
        diagnostics = {
            "recon_full": float(((recon_full - X) ** 2).mean()),
            "recon_shared_only": float(((recon_shared - X) ** 2).mean()),
            "recon_private_only": float(((recon_private - X) ** 2).mean()),
            "norm_private_effect": norm_private_effect,
            "norm_shared_effect": norm_shared_effect,
            "direction_gate": gate,
            "score_ungated": cic_score(norm_private, norm_shared),
        }
        return CicReport(
            score=score,
            norm_private=norm_private,
            norm_shared=norm_shared,
            verdict=verdict_of(score, self.m, self.M),
            shared_series=post_s.mu,
            loss_history=list(getattr(self, "loss_history_", [])),
            diagnostics=diagnostics,
        )

    def score(self, X, Y=None) -> float:
        """Causal index in [0, 1] for the fitted direction on the given data."""
        return self.report(X, Y).score

    # -------------------------------------------------------------- save/load

    def save(self, path) -> None:
        """Write hyperparameters, loss history and all four networks as text."""
        self._require_fitted()
        buf = io.StringIO()
        buf.write(f"{MODEL_BLOB_MAGIC} {MODEL_BLOB_VERSION}\n")
        buf.write(json.dumps(self.get_params(), sort_keys=True, default=list) + "\n")
        history = getattr(self, "loss_history_", [])
        buf.write("loss_history " + " ".join(format(v, ".17g") for v in history) + "\n")
        for net in (self.enc_cause_, self.enc_effect_, self.dec_cause_, self.dec_effect_):
            save_mlp(net, buf)
        with open(path, "w", newline="\n") as fh:
            fh.write(buf.getvalue())

    @classmethod
    def load(cls, path) -> "CicModel":
        with open(path, "r") as fh:
            header = fh.readline().split()
            if header[:1] != [MODEL_BLOB_MAGIC]:
                raise ConfigError(f"{path} is not a model checkpoint")
            if int(header[1]) != MODEL_BLOB_VERSION:
                raise ConfigError(f"unsupported checkpoint version {header[1]}")
            params = json.loads(fh.readline())
            if isinstance(params.get("hidden"), list):
                params["hidden"] = tuple(params["hidden"])
            model = cls(**params)
            hist_line = fh.readline().split()
            if hist_line[:1] != ["loss_history"]:
                raise ConfigError("malformed checkpoint: missing loss history")
            model.loss_history_ = [float(v) for v in hist_line[1:]]
            model.enc_cause_ = load_mlp(fh)
            model.enc_effect_ = load_mlp(fh)
            model.dec_cause_ = load_mlp(fh)
            model.dec_effect_ = load_mlp(fh)
        model.n_features_cause_ = model.dec_cause_.out_dim
        model.n_features_effect_ = model.dec_effect_.out_dim
        return model


def train(dataset: EmbeddedPairDataset, **params) -> CicModel:
    """Fit a fresh :class:`CicModel` on an embedded pair dataset."""
    return CicModel(**params).fit(dataset)


def cic_index(model: CicModel, dataset: EmbeddedPairDataset) -> CicReport:
    """Score a trained model on a dataset (cause-side posterior-mean norms)."""
    return model.report(dataset)


def infer_pair(
    series: TimeSeries,
    x_col: str,
    y_col: str,
    embedding: EmbeddingConfig = EmbeddingConfig(),
    **model_params,
) -> PairInference:
    """Train both directions and combine their verdicts.

    Direction x->y trains on (cause=x, effect=y) with the configured seed;
    the reverse direction uses seed+1 so the two models start decorrelated.
    A confounder is flagged when both directional verdicts land in the
    confounded band.
    """
    if x_col == y_col:
        raise ConfigError("x and y must be different columns")
    ds_xy = embed_pair(series, x_col, y_col, embedding)
    ds_yx = embed_pair(series, y_col, x_col, embedding)
    params = dict(model_params)
    seed = int(params.pop("seed", 0))
    model_xy = CicModel(seed=seed, **params).fit(ds_xy)
    model_yx = CicModel(seed=seed + 1, **params).fit(ds_yx)
    report_xy = model_xy.report(ds_xy)
    report_yx = model_yx.report(ds_yx)
    confounder = (
        report_xy.verdict == VERDICT_CONFOUNDED
        and report_yx.verdict == VERDICT_CONFOUNDED
    )
    return PairInference(report_xy=report_xy, report_yx=report_yx, confounder=confounder)


def reconstruct_confounder(report: CicReport) -> np.ndarray:
    """Shared-block posterior means over time: the reconstructed hidden driver."""
    return report.shared_series
