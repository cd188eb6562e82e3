"""Metric-learning losses with analytic gradients."""

from codet.losses.base import LabelLayout, LossDefinition, LossProvider, LossSettings
from codet.losses.classwise import (
    ClasswiseParams,
    classwise_loss,
    focal_curriculum_loss,
    negative_breakdown,
)
from codet.losses.common import DenominatorMode, Distance, Modulation
from codet.losses.curriculum import CurriculumState, focal_gamma, update_t
from codet.losses.modulation import (
    NegativeKind,
    arcface_modulation,
    classify_negative,
    curriculum_modulation,
)
from codet.losses.pairwise import (
    PairwiseParams,
    build_pair_sets,
    curcon_update_t,
    mod_supcon_loss,
    npair_loss,
    pair_negative_breakdown,
    supcon_loss,
    triplet_loss,
)
from codet.losses.registry import get_loss, list_losses, list_losses_by_category

__all__ = [
    "ClasswiseParams",
    "CurriculumState",
    "DenominatorMode",
    "Distance",
    "LabelLayout",
    "LossDefinition",
    "LossProvider",
    "LossSettings",
    "Modulation",
    "NegativeKind",
    "PairwiseParams",
    "arcface_modulation",
    "build_pair_sets",
    "classify_negative",
    "classwise_loss",
    "curcon_update_t",
    "curriculum_modulation",
    "focal_curriculum_loss",
    "focal_gamma",
    "get_loss",
    "list_losses",
    "list_losses_by_category",
    "mod_supcon_loss",
    "negative_breakdown",
    "npair_loss",
    "pair_negative_breakdown",
    "supcon_loss",
    "triplet_loss",
    "update_t",
]
