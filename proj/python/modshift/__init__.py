"""Python bindings for the modshift embedding-change analysis library."""

from ._core import (
    ConfigError,
    DataError,
    EmbeddingSpace,
    NumericalError,
    RegressionResult,
    adjusted_r2,
    cosine_distance,
    format_cell,
    load_fasttext_text,
    load_tsv_embeddings,
    nearest_neighbors,
    ols_fit,
    rank_transform,
    ratio_ranks,
    run_pipeline,
)

__all__ = [
    "ConfigError",
    "DataError",
    "EmbeddingSpace",
    "NumericalError",
    "RegressionResult",
    "adjusted_r2",
    "cosine_distance",
    "format_cell",
    "load_fasttext_text",
    "load_tsv_embeddings",
    "nearest_neighbors",
    "ols_fit",
    "rank_transform",
    "ratio_ranks",
    "run_pipeline",
]
