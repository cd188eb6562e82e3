"""Pair-wise losses: triplet, N-pair, SupCon and the modulated contrastive family."""

import numpy as np

from codet.errors import ArgumentError
from codet.losses.base import LabelLayout, LossDefinition, LossProvider, LossSettings
from codet.losses.common import (
    DenominatorMode,
    Modulation,
    cosine_matrix,
    distance_from_cosine,
    normalize_rows,
)
from codet.losses.curriculum import CurriculumState
from codet.losses.pairwise import (
    PairwiseParams,
    build_pair_sets,
    curcon_update_t,
    mod_supcon_loss,
    npair_loss,
    supcon_loss,
    triplet_loss,
)
from codet.types.batch import ClassWeights, EmbeddingBatch, LossValueGrad

PAIRWISE_SCALE = 1.0
PAIRWISE_MARGIN = 0.5


def _advance_curcon(
    batch: EmbeddingBatch, result: LossValueGrad, state: CurriculumState
) -> CurriculumState:
    return curcon_update_t(batch, build_pair_sets(batch.labels), state)


def _curriculum_kink(
    batch: EmbeddingBatch, weights: ClassWeights | None, settings: LossSettings
) -> float:
    """Smallest |theta_ik - theta_ij - m| over (anchor, positive, negative)."""
    units, _ = normalize_rows(batch.points)
    angles = np.arccos(cosine_matrix(units, units))
    pairs = build_pair_sets(batch.labels)
    best = np.inf
    for i in range(batch.size):
        pos, neg = pairs.positives[i], pairs.negatives[i]
        if pos.size and neg.size:
            gaps = angles[i, neg][None, :] - angles[i, pos][:, None] - settings.margin
            best = min(best, float(np.min(np.abs(gaps))))
    return best


def _runner_up_gap(values: np.ndarray) -> float:
    """Gap between the two largest values; inf when there is only one."""
    if values.size < 2:
        return np.inf
    top = np.sort(values)[-2:]
    return float(top[1] - top[0])


def _triplet_kink(
    batch: EmbeddingBatch, weights: ClassWeights | None, settings: LossSettings
) -> float:
    """Distance to a hinge switch or to a change of the hardest pair."""
    units, _ = normalize_rows(batch.points)
    dist, _ = distance_from_cosine(cosine_matrix(units, units), settings.distance)
    pairs = build_pair_sets(batch.labels)
    best = np.inf
    for i in range(batch.size):
        pos, neg = pairs.positives[i], pairs.negatives[i]
        if pos.size == 0 or neg.size == 0:
            continue
        hinge = settings.margin + np.max(dist[i, pos]) - np.min(dist[i, neg])
        best = min(
            best,
            abs(float(hinge)),
            _runner_up_gap(dist[i, pos]),
            _runner_up_gap(-dist[i, neg]),
        )
    return best


class PairwiseLossProvider(LossProvider):
    """Provider for losses over in-batch positive and negative pairs."""

    @property
    def name(self) -> str:
        return "Pair-wise"

    def _register_losses(self) -> None:
        self.register(LossDefinition(
            identifier="triplet",
            friendly_name="Triplet (batch hard)",
            description="Hinge on hardest positive vs hardest negative distance",
            category="Pair-wise",
            evaluate=self._triplet,
            default_scale=PAIRWISE_SCALE,
            default_margin=PAIRWISE_MARGIN,
            layout=LabelLayout.GROUPED,
            kink_distance=_triplet_kink,
        ))

        self.register(LossDefinition(
            identifier="npair",
            friendly_name="Multi-class N-pair",
            description="Soft-plus over negatives against the single positive",
            category="Pair-wise",
            evaluate=self._npair,
            default_scale=PAIRWISE_SCALE,
            default_margin=PAIRWISE_MARGIN,
            layout=LabelLayout.PAIRS,
            aliases=["n_pair"],
        ))

        self.register(LossDefinition(
            identifier="supcon",
            friendly_name="Supervised Contrastive",
            description="Cosine softmax over all other samples, averaged over positives",
            category="Pair-wise",
            evaluate=self._supcon,
            default_scale=PAIRWISE_SCALE,
            default_margin=PAIRWISE_MARGIN,
            layout=LabelLayout.GROUPED,
        ))

        self.register(LossDefinition(
            identifier="arccon",
            friendly_name="Arc Contrastive",
            description="SupCon with an additive angular margin on positives (k != i)",
            category="Pair-wise",
            evaluate=self._arccon,
            default_scale=PAIRWISE_SCALE,
            default_margin=PAIRWISE_MARGIN,
            layout=LabelLayout.GROUPED,
        ))

        self.register(LossDefinition(
            identifier="arccon_neg",
            friendly_name="Arc Contrastive - Negative",
            description="Arc Contrastive with the denominator restricted to negatives",
            category="Pair-wise",
            evaluate=self._arccon_neg,
            default_scale=PAIRWISE_SCALE,
            default_margin=PAIRWISE_MARGIN,
            layout=LabelLayout.GROUPED,
        ))

        self.register(LossDefinition(
            identifier="curcon",
            friendly_name="Curriculum Contrastive",
            description="SupCon with margin positives and t-weighted hard negatives",
            category="Pair-wise",
            evaluate=self._curcon,
            default_scale=PAIRWISE_SCALE,
            default_margin=PAIRWISE_MARGIN,
            uses_curriculum=True,
            advance=_advance_curcon,
            layout=LabelLayout.GROUPED,
            kink_distance=_curriculum_kink,
        ))

    def _triplet(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        return triplet_loss(batch, settings.margin, settings.distance)

    def _npair(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        return npair_loss(batch, settings.distance, settings.scale)

    def _supcon(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        return supcon_loss(batch, settings.scale)

    def _modulated(
        self,
        batch: EmbeddingBatch,
        settings: LossSettings,
        mode: DenominatorMode,
        modulation: Modulation,
        state: CurriculumState | None,
    ) -> LossValueGrad:
        params = PairwiseParams(settings.scale, settings.margin, mode, modulation)
        return mod_supcon_loss(batch, params, state)

    def _arccon(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        return self._modulated(
            batch, settings, DenominatorMode.ALL_OTHERS, Modulation.ARCFACE, None
        )

    def _arccon_neg(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        return self._modulated(
            batch, settings, DenominatorMode.NEGATIVES_ONLY, Modulation.ARCFACE, None
        )

    def _curcon(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        if state is None:
            raise ArgumentError("curcon needs a CurriculumState")
        return self._modulated(
            batch, settings, DenominatorMode.ALL_OTHERS, Modulation.CURRICULUM, state
        )
