"""Scoring inferred networks against ground truth, and quantifying how well
a reconstructed confounder matches a candidate signal.

ROC/AUC uses the rank statistic with ties counted half. Thresholded
classification supports a literal threshold or a quantile token resolved
over the supplied scores. Confounder-reconstruction quality is reported
both as the plain sum of pairwise Pearson correlations over dimension pairs
(which can exceed 1 for multivariate blocks) and as the first canonical
correlation, which is the headline metric.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateError, OneClassError, RankError
from .model import VERDICT_SELF

CCA_RIDGE = 1e-8


@dataclass(frozen=True)
class ScoredNetwork:
    """Directional score and verdict matrices; ``score[i][j]`` is i -> j."""

    names: tuple
    scores: np.ndarray
    verdicts: tuple

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64)
        n = len(self.names)
        if scores.shape != (n, n):
            raise ConfigError(f"score matrix must be {n}x{n}, got {scores.shape}")
        verdicts = tuple(tuple(row) for row in self.verdicts)
        if len(verdicts) != n or any(len(row) != n for row in verdicts):
            raise ConfigError("verdict matrix shape mismatch")
        for i in range(n):
            if verdicts[i][i] != VERDICT_SELF:
                raise ConfigError("diagonal verdicts must be Self")
        scores = scores.copy()
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "verdicts", verdicts)
        object.__setattr__(self, "names", tuple(self.names))


@dataclass(frozen=True)
class EvalSummary:
    """Classification metrics at one resolved threshold."""

    auroc: float | None
    accuracy: float
    precision: float
    threshold: float
    tp: int
    fp: int
    tn: int
    fn: int
    no_positive_predictions: bool

    def to_dict(self) -> dict:
        return {
            "auroc": self.auroc,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "threshold": self.threshold,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "no_positive_predictions": self.no_positive_predictions,
        }


def _check_scores_labels(scores, labels):
    scores = np.asarray(scores, dtype=np.float64).reshape(-1)
    labels = np.asarray(labels).reshape(-1).astype(int)
    if scores.shape != labels.shape:
        raise ConfigError("scores and labels must have equal length")
    if not np.isfinite(scores).all():
        raise ConfigError("scores contain non-finite values")
    if set(np.unique(labels)) - {0, 1}:
        raise ConfigError("labels must be 0/1")
    return scores, labels


def roc_auc(scores, labels):
    """AUC via mid-rank Mann-Whitney statistic plus the full ROC point list.

    Returns ``(auc, points)`` where points are ``(fpr, tpr, threshold)`` at
    every distinct score threshold, anchored at (0, 0) and ending at (1, 1).
    Raises :class:`OneClassError` unless both classes are present.
    """
    scores, labels = _check_scores_labels(scores, labels)
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise OneClassError("both positive and negative labels are required")

    order = np.argsort(scores, kind="stable")
    sorted_scores = scores[order]
    ranks = np.empty(labels.size)
    i = 0
    while i < labels.size:
        j = i
        while j + 1 < labels.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0  # mid-rank, 1-based
        i = j + 1
    u = ranks[labels == 1].sum() - n_pos * (n_pos + 1) / 2.0
    auc = float(u / (n_pos * n_neg))

    points = [(0.0, 0.0, float("inf"))]
    thresholds = np.unique(scores)[::-1]
    for thr in thresholds:
        predicted = scores >= thr
        tp = int((predicted & (labels == 1)).sum())
        fp = int((predicted & (labels == 0)).sum())
        points.append((fp / n_neg, tp / n_pos, float(thr)))
    return auc, points


def resolve_threshold(threshold, scores) -> float:
    """Resolve a numeric threshold or a ``quantile:q`` token against scores."""
    if isinstance(threshold, str):
        text = threshold.strip()
        match = re.fullmatch(r"quantile[:(]([0-9.eE+-]+)\)?", text)
        if match:
            q = float(match.group(1))
            if not 0.0 <= q <= 1.0:
                raise ConfigError(f"quantile must lie in [0, 1], got {q}")
            return float(np.quantile(np.asarray(scores, dtype=np.float64), q))
        try:
            threshold = float(text)
        except ValueError:
            raise ConfigError(f"cannot parse threshold token {threshold!r}") from None
    value = float(threshold)
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"threshold must lie in [0, 1], got {value}")
    return value


def classify_at(scores, labels, threshold) -> EvalSummary:
    """Confusion-matrix metrics with prediction positive iff score >= threshold.

    ``threshold`` may be a float in [0, 1] or the token ``quantile:q``,
    resolved by linear interpolation over the supplied scores. Precision is
    defined as 0 (and flagged) when nothing is predicted positive. AUROC is
    included when both classes are present, else ``None``.
    """
    scores, labels = _check_scores_labels(scores, labels)
    thr = resolve_threshold(threshold, scores)
    predicted = scores >= thr
    tp = int((predicted & (labels == 1)).sum())
    fp = int((predicted & (labels == 0)).sum())
    fn = int((~predicted & (labels == 1)).sum())
    tn = int((~predicted & (labels == 0)).sum())
    no_pos = (tp + fp) == 0
    precision = 0.0 if no_pos else tp / (tp + fp)
    accuracy = (tp + tn) / labels.size
    if labels.min() == labels.max():
        auc = None
    else:
        auc, _ = roc_auc(scores, labels)
    return EvalSummary(
        auroc=auc,
        accuracy=float(accuracy),
        precision=float(precision),
        threshold=thr,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        no_positive_predictions=no_pos,
    )


def _check_blocks(a, b, min_rows):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim == 1:
        a = a[:, None]
    if b.ndim == 1:
        b = b[:, None]
    if a.shape[0] != b.shape[0]:
        raise ConfigError("blocks must have equal row counts")
    if a.shape[0] < min_rows:
        raise ConfigError(f"need at least {min_rows} rows")
    return a, b


def aggregate_corr(shared_series, candidate) -> float:
    """Sum of Pearson correlations over all dimension pairs of the two blocks.

    This is the literal aggregate formula; with more than one dimension per
    block the value is not bounded by 1. Prefer :func:`canonical_corr` for a
    normalized measure.
    """
    a, b = _check_blocks(shared_series, candidate, min_rows=3)
    total = 0.0
    for i in range(a.shape[1]):
        ai = a[:, i]
        sa = ai.std()
        if sa < 1e-15:
            raise DegenerateError(f"shared column {i} is constant")
        for j in range(b.shape[1]):
            bj = b[:, j]
            sb = bj.std()
            if sb < 1e-15:
                raise DegenerateError(f"candidate column {j} is constant")
            total += float(((ai - ai.mean()) * (bj - bj.mean())).mean() / (sa * sb))
    return total


def canonical_corr(shared_series, candidate) -> float:
    """First canonical correlation between two blocks, clamped to [0, 1].

    Largest singular value of the whitened cross-covariance, with a ridge of
    1e-8 on each covariance block. Invariant to invertible affine transforms
    of either block up to the ridge perturbation.
    """
    a, b = _check_blocks(shared_series, candidate, min_rows=2)
    n, da = a.shape
    db = b.shape[1]
    if n <= da + db:
        raise RankError(f"need more than {da + db} rows, got {n}")
    a = a - a.mean(axis=0)
    b = b - b.mean(axis=0)
    caa = (a.T @ a) / n + CCA_RIDGE * np.eye(da)
    cbb = (b.T @ b) / n + CCA_RIDGE * np.eye(db)
    cab = (a.T @ b) / n

    def inv_sqrt(mat, label):
        evals, evecs = np.linalg.eigh(mat)
        if evals.min() <= 0:
            raise RankError(f"{label} covariance nonpositive even after ridge")
        return evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T

    white = inv_sqrt(caa, "shared") @ cab @ inv_sqrt(cbb, "candidate")
    top = float(np.linalg.svd(white, compute_uv=False)[0])
    return min(max(top, 0.0), 1.0)


def confounder_band_score(score_xy: float, score_yx: float, m: float, M: float) -> float:
    """Pair-level confounder evidence from the two directional scores.

    Each directional score is mapped to 1 - 2*|s - (m+M)/2| / (M - m),
    clipped into [0, 1] (1 at the center of the confounded band, 0 at or
    beyond its edges); the pair score is the minimum of the two. This band
    transform is this artifact's own convention for ranking confounder
    candidates, not a published definition.
    """
    if not 0.0 <= m < M <= 1.0:
        raise ConfigError(f"thresholds must satisfy 0 <= m < M <= 1, got {m}, {M}")
    mid = 0.5 * (m + M)
    half = 0.5 * (M - m)

    def band(s: float) -> float:
        return min(max(1.0 - abs(s - mid) / half, 0.0), 1.0)

    return min(band(score_xy), band(score_yx))
