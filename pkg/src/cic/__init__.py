"""Dynamical causality inference under invisible confounders.

Pipeline: load or simulate a multivariate series, z-score it, build aligned
delay-embedding pairs for two chosen variables, train the dual-VAE scorer in
both directions, and read off the causal index, verdict and reconstructed
confounder. Granger causality and convergent cross mapping are included as
comparison baselines, plus ROC/accuracy/precision tooling for network-level
evaluation.
"""

from .embedding import EmbeddedPairDataset, EmbeddingConfig, embed_pair
from .errors import (
    CicError,
    ConfigError,
    DegenerateError,
    DivergenceError,
    EmptyError,
    FormatError,
    IoError,
    OneClassError,
    RankError,
    ShapeError,
    ShortSegmentError,
    ShortSeriesError,
    SingularError,
    UnknownColumnError,
    UnstableError,
)
from .model import (
    CicModel,
    CicReport,
    GaussianPosterior,
    LatentSplit,
    PairInference,
    cic_index,
    cic_score,
    infer_pair,
    kl_to_standard_normal,
    ortho,
    reconstruct_confounder,
    reparameterize,
    train,
    verdict_of,
    VERDICT_CAUSAL,
    VERDICT_CONFOUNDED,
    VERDICT_NONCAUSAL,
    VERDICT_SELF,
)
from .timeseries import TimeSeries, export_csv, load_csv, load_dream4, zscore

__all__ = [
    "CicError",
    "CicModel",
    "CicReport",
    "ConfigError",
    "DegenerateError",
    "DivergenceError",
    "EmbeddedPairDataset",
    "EmbeddingConfig",
    "EmptyError",
    "FormatError",
    "GaussianPosterior",
    "IoError",
    "LatentSplit",
    "OneClassError",
    "PairInference",
    "RankError",
    "ShapeError",
    "ShortSegmentError",
    "ShortSeriesError",
    "SingularError",
    "TimeSeries",
    "UnknownColumnError",
    "UnstableError",
    "VERDICT_CAUSAL",
    "VERDICT_CONFOUNDED",
    "VERDICT_NONCAUSAL",
    "VERDICT_SELF",
    "cic_index",
    "cic_score",
    "embed_pair",
    "export_csv",
    "infer_pair",
    "kl_to_standard_normal",
    "load_csv",
    "load_dream4",
    "ortho",
    "reconstruct_confounder",
    "reparameterize",
    "train",
    "verdict_of",
    "zscore",
]

__version__ = "0.1.0"
