"""Value types for codet."""

from codet.types.annotation import AnnotatedImage, Annotation, ClassIndex, ImageId
from codet.types.batch import ClassWeights, EmbeddingBatch, LossValueGrad, PairSets
from codet.types.box import BBox
from codet.types.detection import (
    ClassProbBox,
    Detection,
    Embedding,
    GroundTruthBox,
    HasBox,
    ScoredPair,
)

__all__ = [
    "AnnotatedImage",
    "Annotation",
    "BBox",
    "ClassIndex",
    "ClassProbBox",
    "ClassWeights",
    "Detection",
    "Embedding",
    "EmbeddingBatch",
    "GroundTruthBox",
    "HasBox",
    "ImageId",
    "LossValueGrad",
    "PairSets",
    "ScoredPair",
]
