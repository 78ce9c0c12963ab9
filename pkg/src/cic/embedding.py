"""Aligned delay-embedding vector pairs for a (cause, effect) column pair.

For embedding order ``p`` and coordinate lag ``tau``, each anchor time ``t``
yields the effect vector ``(y_t, y_{t-tau}, ..., y_{t-p*tau})`` and the
cause vector shifted one step into the past,
``(x_{t-1}, x_{t-1-tau}, ..., x_{t-1-p*tau})``. The one-step offset between
cause and effect is fixed: the effect's present is asked to reconstruct the
cause's immediate past. Rows never straddle a segment boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ShortSegmentError
from .timeseries import TimeSeries


@dataclass(frozen=True)
class EmbeddingConfig:
    """Delay-embedding geometry: ``order`` lags (dimension order+1), lag step."""

    order: int = 7
    lag: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ConfigError(f"embedding order must be >= 1, got {self.order}")
        if self.lag < 1:
            raise ConfigError(f"lag must be >= 1, got {self.lag}")

    @property
    def dim(self) -> int:
        return self.order + 1

    @property
    def span(self) -> int:
        """Number of raw samples covered by one embedded vector."""
        return self.order * self.lag + 1


@dataclass(frozen=True)
class EmbeddedPairDataset:
    """Row-aligned cause/effect embedding matrices plus anchor indices.

    ``cause_rows[t]`` and ``effect_rows[t]`` describe the same anchor time;
    ``sample_times`` holds the 0-based global row index of each anchor in the
    source series, for traceability.
    """

    cause_rows: np.ndarray
    effect_rows: np.ndarray
    sample_times: np.ndarray

    def __post_init__(self):
        cause = np.ascontiguousarray(self.cause_rows, dtype=np.float64)
        effect = np.ascontiguousarray(self.effect_rows, dtype=np.float64)
        times = np.asarray(self.sample_times, dtype=np.int64)
        if cause.ndim != 2 or effect.ndim != 2:
            raise ConfigError("embedding matrices must be 2-D")
        if cause.shape[0] != effect.shape[0] or cause.shape[0] != times.shape[0]:
            raise ConfigError("cause, effect and sample_times row counts differ")
        if cause.shape[0] < 1:
            raise ConfigError("embedded dataset is empty")
        for arr, name in ((cause, "cause_rows"), (effect, "effect_rows"), (times, "sample_times")):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_samples(self) -> int:
        return self.cause_rows.shape[0]

    @property
    def dim(self) -> int:
        return self.cause_rows.shape[1]


def _lag_matrix(x: np.ndarray, anchors: np.ndarray, order: int, lag: int) -> np.ndarray:
    # column k holds x[anchor - k*lag], k = 0..order
    offsets = np.arange(order + 1) * lag
    return x[anchors[:, None] - offsets[None, :]]


def embed_pair(
    series: TimeSeries,
    cause_col: str,
    effect_col: str,
    cfg: EmbeddingConfig = EmbeddingConfig(),
) -> EmbeddedPairDataset:
    """Build the aligned (cause, effect) delay-embedding dataset.

    Within each segment of length L the valid anchors are
    ``t = order*lag + 2 .. L`` (1-based), giving ``L - order*lag - 1`` rows
    per segment. Raises :class:`ShortSegmentError` when any segment is too
    short and :class:`UnknownColumnError` for a bad label.
    """
    x = series.column(cause_col)
    y = series.column(effect_col)
    span = cfg.span  # order*lag + 1 samples per embedded vector
    cause_blocks = []
    effect_blocks = []
    anchor_blocks = []
    for seg_index, (start, end) in enumerate(series.segments):
        seg_len = end - start
        if seg_len < span + 1:
            raise ShortSegmentError(
                f"segment {seg_index} has {seg_len} rows; "
                f"need at least {span + 1} for order={cfg.order}, lag={cfg.lag}"
            )
        # 0-based global anchors: cause vector reaches back to anchor-1-order*lag
        anchors = np.arange(start + span, end)
        effect_blocks.append(_lag_matrix(y, anchors, cfg.order, cfg.lag))
        cause_blocks.append(_lag_matrix(x, anchors - 1, cfg.order, cfg.lag))
        anchor_blocks.append(anchors)
    return EmbeddedPairDataset(
        cause_rows=np.vstack(cause_blocks),
        effect_rows=np.vstack(effect_blocks),
        sample_times=np.concatenate(anchor_blocks),
    )
