"""Toy training on synthetic embeddings."""

from codet.training.metrics import EmbeddingMetrics, embedding_metrics
from codet.training.synthetic import SyntheticSpec, generate_synthetic
from codet.training.trainer import TraceRow, TrainConfig, TrainResult, init_weights, train

__all__ = [
    "EmbeddingMetrics",
    "SyntheticSpec",
    "TraceRow",
    "TrainConfig",
    "TrainResult",
    "embedding_metrics",
    "generate_synthetic",
    "init_weights",
    "train",
]
