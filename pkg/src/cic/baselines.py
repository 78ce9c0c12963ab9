"""Reference causality detectors: linear Granger causality and convergent
cross mapping, for side-by-side comparison with the VAE-based scorer.

Both are deterministic pure functions. Granger fits restricted/full
autoregressions by least squares and tests the added lags with an F
statistic whose p-value comes from a self-contained regularized
incomplete-beta implementation (documented accuracy 1e-10). CCM builds the
shadow manifold of the putative effect and cross-maps the putative cause
with exponentially weighted nearest neighbors over a growing library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ShortSeriesError, SingularError

GC_SCORE_CAP = 16.0


@dataclass(frozen=True)
class GrangerResult:
    """F-test outcome; ``score`` is -log10(p) capped at 16."""

    f_statistic: float
    p_value: float
    score: float

    @property
    def normalized_score(self) -> float:
        """Score mapped to [0, 1] for ROC comparison across methods."""
        return min(self.score / GC_SCORE_CAP, 1.0)


@dataclass(frozen=True)
class CcmResult:
    """Cross-map skill per library size for one direction."""

    library_sizes: tuple
    skills: tuple
    converged: bool

    @property
    def final_skill(self) -> float:
        return self.skills[-1]

    @property
    def normalized_score(self) -> float:
        """Final skill clipped to [0, 1] for ROC comparison across methods."""
        return min(max(self.final_skill, 0.0), 1.0)


# --------------------------------------------------------------------------
# regularized incomplete beta via Lentz continued fraction
# --------------------------------------------------------------------------

_CF_MAX_ITER = 300
_CF_EPS = 1e-15
_CF_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (Lentz's method)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    return h


def betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b); accurate to about 1e-10."""
    if a <= 0 or b <= 0:
        raise ConfigError("beta parameters must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_sf(f: float, df1: float, df2: float) -> float:
    """Survival function of the F distribution, P(F_{df1,df2} > f)."""
    if f <= 0.0:
        return 1.0
    return betainc_regularized(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f))


# --------------------------------------------------------------------------
# Granger causality
# --------------------------------------------------------------------------


def _lag_block(v: np.ndarray, order: int) -> np.ndarray:
    """Columns v_{t-1} .. v_{t-order} for t = order .. len(v)-1."""
    return np.column_stack([v[order - k : len(v) - k] for k in range(1, order + 1)])


def granger(x: np.ndarray, y: np.ndarray, order: int = 3) -> GrangerResult:
    """F-test of whether lags of x improve the autoregression of y.

    Fits y_t on its own ``order`` lags plus an intercept, then adds the
    corresponding lags of x, and compares residual sums of squares with an
    F statistic on (order, rows - 2*order - 1) degrees of freedom.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if x.shape != y.shape:
        raise ConfigError("x and y must have equal length")
    if order < 1:
        raise ConfigError("order must be >= 1")
    if len(y) <= 10 * order:
        raise ShortSeriesError(
            f"need more than {10 * order} samples for order {order}, got {len(y)}"
        )
    target = y[order:]
    rows = target.size
    ones = np.ones((rows, 1))
    restricted = np.hstack([ones, _lag_block(y, order)])
    full = np.hstack([restricted, _lag_block(x, order)])

    def rss(design: np.ndarray) -> float:
        coef, residual, rank, _ = np.linalg.lstsq(design, target, rcond=None)
        if rank < design.shape[1]:
            raise SingularError(
                f"design matrix is rank deficient ({rank} < {design.shape[1]})"
            )
        if residual.size:
            return float(residual[0])
        r = target - design @ coef
        return float(r @ r)

    rss_r = rss(restricted)
    rss_f = rss(full)
    df2 = rows - 2 * order - 1
    if df2 < 1:
        raise ShortSeriesError("too few rows for the F test")
    f_stat = max((rss_r - rss_f) / order, 0.0) / max(rss_f / df2, 1e-300)
    p = min(max(f_sf(f_stat, order, df2), 0.0), 1.0)
    score = GC_SCORE_CAP if p <= 0.0 else min(-math.log10(max(p, 1e-300)), GC_SCORE_CAP)
    return GrangerResult(f_statistic=f_stat, p_value=p, score=score)


# --------------------------------------------------------------------------
# convergent cross mapping
# --------------------------------------------------------------------------


def _shadow_manifold(v: np.ndarray, dim: int, lag: int) -> np.ndarray:
    rows = len(v) - (dim - 1) * lag
    if rows < dim + 2:
        raise ShortSeriesError(
            f"series of length {len(v)} too short for embedding dim {dim}, lag {lag}"
        )
    offsets = np.arange(dim) * lag
    anchors = np.arange((dim - 1) * lag, len(v))
    return v[anchors[:, None] - offsets[None, :]]


def cross_map_skill(
    cause: np.ndarray,
    effect: np.ndarray,
    embed_dim: int,
    lag: int = 1,
    library_sizes=None,
    converged_min_skill: float = 0.25,
) -> CcmResult:
    """Skill of estimating ``cause`` from the shadow manifold of ``effect``.

    For each library size the first L manifold points form the library;
    every manifold point is estimated from its ``embed_dim + 1`` nearest
    library neighbors (self-matches excluded, ties by lowest index) with
    weights exp(-d_i/d_min), and skill is the Pearson correlation between
    estimates and the true cause values. ``converged`` requires the skill
    profile to rise and to end above ``converged_min_skill``.
    """
    cause = np.asarray(cause, dtype=np.float64).reshape(-1)
    effect = np.asarray(effect, dtype=np.float64).reshape(-1)
    if cause.shape != effect.shape:
        raise ConfigError("cause and effect must have equal length")
    manifold = _shadow_manifold(effect, embed_dim, lag)
    n_points = manifold.shape[0]
    targets = cause[(embed_dim - 1) * lag :]
    k = embed_dim + 1
    if library_sizes is None:
        lo = max(k + 2, 10)
        library_sizes = np.unique(
            np.linspace(lo, n_points, num=5).round().astype(int)
        ).tolist()
    sizes = [int(s) for s in library_sizes]
    if any(s2 <= s1 for s1, s2 in zip(sizes, sizes[1:])):
        raise ConfigError("library_sizes must be strictly increasing")
    if sizes[-1] > n_points:
        raise ShortSeriesError(
            f"largest library {sizes[-1]} exceeds available points {n_points}"
        )
    if sizes[0] <= k:
        raise ConfigError(f"smallest library must exceed {k} neighbors")

    # pairwise distances to the largest library prefix, reused for all sizes;
    # GEMM expansion keeps memory at O(points * max_library)
    library = manifold[: sizes[-1]]
    sq_pts = (manifold * manifold).sum(axis=1)
    sq_lib = (library * library).sum(axis=1)
    sq = sq_pts[:, None] + sq_lib[None, :] - 2.0 * (manifold @ library.T)
    np.maximum(sq, 0.0, out=sq)
    dists = np.sqrt(sq)

    skills = []
    for size in sizes:
        block = dists[:, :size]
        estimates = np.empty(n_points)
        for i in range(n_points):
            row = block[i]
            if i < size:
                # exclude the self-match; argsort is stable so ties break by index
                order = np.argsort(row, kind="stable")
                order = order[order != i][:k]
            else:
                order = np.argsort(row, kind="stable")[:k]
            d = row[order]
            d_min = d[0]
            if d_min < 1e-12:
                w = (d < 1e-12).astype(np.float64)
            else:
                w = np.exp(-d / d_min)
            w /= w.sum()
            estimates[i] = w @ targets[order]
        s_est = estimates.std()
        s_true = targets.std()
        if s_est < 1e-15 or s_true < 1e-15:
            skills.append(0.0)
        else:
            skills.append(
                float(
                    ((estimates - estimates.mean()) * (targets - targets.mean())).mean()
                    / (s_est * s_true)
                )
            )
    converged = skills[-1] > skills[0] and skills[-1] >= converged_min_skill
    return CcmResult(
        library_sizes=tuple(sizes), skills=tuple(skills), converged=converged
    )


def ccm(
    x: np.ndarray,
    y: np.ndarray,
    embed_dim: int,
    lag: int = 1,
    library_sizes=None,
    converged_min_skill: float = 0.25,
):
    """Both cross-map directions: ``(x_to_y, y_to_x)``.

    ``x_to_y`` holds the skill of recovering x from y's manifold, which is
    the signature of x driving y.
    """
    return (
        cross_map_skill(x, y, embed_dim, lag, library_sizes, converged_min_skill),
        cross_map_skill(y, x, embed_dim, lag, library_sizes, converged_min_skill),
    )
