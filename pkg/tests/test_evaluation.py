import numpy as np
import pytest

from cic.errors import ConfigError, DegenerateError, OneClassError, RankError
from cic.evaluation import (
    ScoredNetwork,
    aggregate_corr,
    canonical_corr,
    classify_at,
    confounder_band_score,
    resolve_threshold,
    roc_auc,
)
from cic.model import VERDICT_CAUSAL, VERDICT_NONCAUSAL, VERDICT_SELF


class TestScoredNetwork:
    def test_valid_network(self):
        net = ScoredNetwork(
            names=("a", "b"),
            scores=np.array([[0.0, 0.9], [0.1, 0.0]]),
            verdicts=(
                (VERDICT_SELF, VERDICT_CAUSAL),
                (VERDICT_NONCAUSAL, VERDICT_SELF),
            ),
        )
        assert net.scores[0, 1] == 0.9

    def test_diagonal_must_be_self(self):
        with pytest.raises(ConfigError):
            ScoredNetwork(
                names=("a", "b"),
                scores=np.zeros((2, 2)),
                verdicts=(
                    (VERDICT_CAUSAL, VERDICT_CAUSAL),
                    (VERDICT_NONCAUSAL, VERDICT_SELF),
                ),
            )

    def test_shape_checked(self):
        with pytest.raises(ConfigError):
            ScoredNetwork(
                names=("a", "b"),
                scores=np.zeros((3, 3)),
                verdicts=((VERDICT_SELF,),),
            )


def brute_force_auc(scores, labels):
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    pos = scores[labels == 1]
    neg = scores[labels == 0]
    wins = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1.0
            elif p == q:
                wins += 0.5
    return wins / (len(pos) * len(neg))


class TestRocAuc:
    def test_perfect_separation(self):
        auc, _ = roc_auc([0.0, 0.0, 1.0, 1.0], [0, 0, 1, 1])
        assert auc == 1.0

    def test_total_ties(self):
        auc, _ = roc_auc([0.5] * 6, [0, 1, 0, 1, 0, 1])
        assert auc == 0.5

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(0)
        for trial in range(500):
            n = int(rng.integers(4, 30))
            scores = rng.choice([0.1, 0.25, 0.5, 0.7, 0.9], size=n)
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                continue
            auc, _ = roc_auc(scores, labels)
            assert abs(auc - brute_force_auc(scores, labels)) < 1e-12

    def test_one_class_raises(self):
        with pytest.raises(OneClassError):
            roc_auc([0.1, 0.9], [1, 1])

    def test_negation_symmetry(self):
        rng = np.random.default_rng(1)
        scores = rng.uniform(size=40)
        labels = rng.integers(0, 2, size=40)
        if labels.min() == labels.max():
            labels[0] = 1 - labels[0]
        a, _ = roc_auc(scores, labels)
        b, _ = roc_auc(-scores, labels)
        assert a + b == pytest.approx(1.0)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(2)
        scores = rng.uniform(size=30)
        labels = (rng.uniform(size=30) < 0.4).astype(int)
        labels[:2] = [0, 1]
        a, _ = roc_auc(scores, labels)
        b, _ = roc_auc(np.exp(3 * scores), labels)
        assert a == pytest.approx(b)

    def test_roc_points_anchor_and_end(self):
        _, points = roc_auc([0.2, 0.8, 0.5], [0, 1, 1])
        assert points[0][:2] == (0.0, 0.0)
        assert points[-1][:2] == (1.0, 1.0)


class TestClassifyAt:
    def test_threshold_zero_predicts_everything(self):
        summary = classify_at([0.2, 0.8, 0.5, 0.1], [0, 1, 1, 0], 0.0)
        assert summary.accuracy == 0.5  # base rate
        assert summary.tp + summary.fp == 4

    def test_perfect_scores_at_half(self):
        summary = classify_at([0.1, 0.9, 0.95, 0.05], [0, 1, 1, 0], 0.5)
        assert summary.accuracy == 1.0
        assert summary.precision == 1.0

    def test_quantile_matches_order_statistics_oracle(self):
        rng = np.random.default_rng(3)
        scores = rng.uniform(size=20)
        labels = rng.integers(0, 2, size=20)
        labels[:2] = [0, 1]
        summary = classify_at(scores, labels, "quantile:0.65")
        assert summary.threshold == pytest.approx(float(np.quantile(scores, 0.65)))

    def test_no_positive_predictions_flagged(self):
        summary = classify_at([0.1, 0.2], [1, 0], 0.9)
        assert summary.no_positive_predictions
        assert summary.precision == 0.0

    def test_counts_sum_and_precision_identity(self):
        rng = np.random.default_rng(4)
        scores = rng.uniform(size=50)
        labels = rng.integers(0, 2, size=50)
        labels[:2] = [0, 1]
        s = classify_at(scores, labels, 0.4)
        assert s.tp + s.fp + s.tn + s.fn == 50
        if not s.no_positive_predictions:
            assert s.precision * (s.tp + s.fp) == pytest.approx(s.tp)

    def test_bad_token(self):
        with pytest.raises(ConfigError):
            resolve_threshold("quartile:0.5", [0.1])


class TestAggregateCorr:
    def test_self_correlation_is_one(self):
        rng = np.random.default_rng(5)
        a = rng.normal(size=(100, 1))
        assert aggregate_corr(a, a) == pytest.approx(1.0)

    def test_negation_gives_minus_one(self):
        rng = np.random.default_rng(6)
        a = rng.normal(size=(100, 1))
        assert aggregate_corr(a, -a) == pytest.approx(-1.0)

    def test_null_is_small(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(5000, 1))
        b = rng.normal(size=(5000, 1))
        assert abs(aggregate_corr(a, b)) < 0.1

    def test_can_exceed_one_for_multivariate(self):
        rng = np.random.default_rng(8)
        a = rng.normal(size=(200, 1))
        stacked = np.hstack([a, a, a])
        assert aggregate_corr(stacked, a) == pytest.approx(3.0)

    def test_constant_column_raises(self):
        a = np.ones((50, 1))
        with pytest.raises(DegenerateError):
            aggregate_corr(a, np.random.default_rng(9).normal(size=(50, 1)))


class TestCanonicalCorr:
    def test_linear_transform_gives_one(self):
        rng = np.random.default_rng(10)
        a = rng.normal(size=(500, 3))
        transform = rng.normal(size=(3, 3)) + 3 * np.eye(3)
        assert canonical_corr(a, a @ transform) == pytest.approx(1.0, abs=1e-8)

    def test_affine_invariance(self):
        rng = np.random.default_rng(11)
        a = rng.normal(size=(400, 2))
        b = rng.normal(size=(400, 2)) + 0.5 * a
        base = canonical_corr(a, b)
        t1 = rng.normal(size=(2, 2)) + 2 * np.eye(2)
        shifted = canonical_corr(a @ t1 + 1.7, b)
        assert shifted == pytest.approx(base, abs=1e-8)

    def test_reduces_to_abs_pearson_in_1d(self):
        rng = np.random.default_rng(12)
        a = rng.normal(size=500)
        b = -0.6 * a + rng.normal(size=500)
        pearson = np.corrcoef(a, b)[0, 1]
        assert canonical_corr(a[:, None], b[:, None]) == pytest.approx(
            abs(pearson), abs=1e-6
        )

    def test_null_small_in_most_trials(self):
        rng = np.random.default_rng(13)
        small = 0
        for _ in range(200):
            a = rng.normal(size=(5000, 2))
            b = rng.normal(size=(5000, 2))
            if canonical_corr(a, b) < 0.1:
                small += 1
        assert small >= 190  # 95% of trials

    def test_needs_enough_rows(self):
        with pytest.raises(RankError):
            canonical_corr(np.zeros((4, 2)), np.zeros((4, 2)))

    def test_clamped_to_unit_interval(self):
        rng = np.random.default_rng(14)
        a = rng.normal(size=(50, 2))
        assert 0.0 <= canonical_corr(a, a) <= 1.0


class TestConfounderBandScore:
    def test_center_of_band_scores_one(self):
        assert confounder_band_score(0.5, 0.5, 0.25, 0.75) == pytest.approx(1.0)

    def test_edges_score_zero(self):
        assert confounder_band_score(0.25, 0.5, 0.25, 0.75) == pytest.approx(0.0)
        assert confounder_band_score(0.5, 0.9, 0.25, 0.75) == pytest.approx(0.0)

    def test_min_of_directions(self):
        one_sided = confounder_band_score(0.5, 0.375, 0.25, 0.75)
        assert one_sided == pytest.approx(0.5)
