"""Class-wise losses: normalized softmax, ArcFace, curriculum, focal curriculum."""

import numpy as np

from codet.errors import ArgumentError
from codet.losses.base import LossDefinition, LossProvider, LossSettings
from codet.losses.classwise import ClasswiseParams, classwise_loss, focal_curriculum_loss
from codet.losses.common import Modulation, cosine_matrix, normalize_rows
from codet.losses.curriculum import CurriculumState, update_t
from codet.types.batch import ClassWeights, EmbeddingBatch, LossValueGrad

CLASSWISE_SCALE = 4.0
CLASSWISE_MARGIN = 0.5


def _require_weights(weights: ClassWeights | None) -> ClassWeights:
    if weights is None:
        raise ArgumentError("class-wise losses need class weights")
    return weights


def _require_state(state: CurriculumState | None) -> CurriculumState:
    if state is None:
        raise ArgumentError("curriculum losses need a CurriculumState")
    return state


def _advance_with_positive_cosines(
    batch: EmbeddingBatch, result: LossValueGrad, state: CurriculumState
) -> CurriculumState:
    assert result.positive_cosines is not None
    return update_t(result.positive_cosines, state)


def _curriculum_kink(
    batch: EmbeddingBatch, weights: ClassWeights | None, settings: LossSettings
) -> float:
    """Smallest |theta_neg - theta_pos - m| over (sample, other class)."""
    units, _ = normalize_rows(batch.points)
    centers, _ = normalize_rows(_require_weights(weights).columns.T)
    angles = np.arccos(cosine_matrix(units, centers))
    rows = np.arange(batch.size)
    gaps = np.abs(angles - angles[rows, batch.labels][:, None] - settings.margin)
    gaps[rows, batch.labels] = np.inf
    return float(np.min(gaps))


class ClasswiseLossProvider(LossProvider):
    """Provider for the softmax-over-class-centers family."""

    @property
    def name(self) -> str:
        return "Class-wise"

    def _register_losses(self) -> None:
        self.register(LossDefinition(
            identifier="softmax",
            friendly_name="Normalized Softmax",
            description="Scaled cosine softmax over normalized class centers",
            category="Class-wise",
            evaluate=self._softmax,
            default_scale=CLASSWISE_SCALE,
            default_margin=CLASSWISE_MARGIN,
            needs_weights=True,
            aliases=["plain", "normalized_softmax"],
        ))

        self.register(LossDefinition(
            identifier="arcface",
            friendly_name="ArcFace",
            description="Additive angular margin on the positive class",
            category="Class-wise",
            evaluate=self._arcface,
            default_scale=CLASSWISE_SCALE,
            default_margin=CLASSWISE_MARGIN,
            needs_weights=True,
        ))

        self.register(LossDefinition(
            identifier="curriculum",
            friendly_name="Curriculum",
            description="Angular margin plus t-weighted hard and semi-hard negatives",
            category="Class-wise",
            evaluate=self._curriculum,
            default_scale=CLASSWISE_SCALE,
            default_margin=CLASSWISE_MARGIN,
            needs_weights=True,
            uses_curriculum=True,
            advance=_advance_with_positive_cosines,
            kink_distance=_curriculum_kink,
            aliases=["curricularface"],
        ))

        self.register(LossDefinition(
            identifier="focalcur",
            friendly_name="Focal Curriculum",
            description="Curriculum softmax with focal exponent gamma(t) = -log(max(t, 1e-5))",
            category="Class-wise",
            evaluate=self._focal_curriculum,
            default_scale=CLASSWISE_SCALE,
            default_margin=CLASSWISE_MARGIN,
            needs_weights=True,
            uses_curriculum=True,
            advance=_advance_with_positive_cosines,
            kink_distance=_curriculum_kink,
            aliases=["focal_curriculum"],
        ))

    def _softmax(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        params = ClasswiseParams(settings.scale, settings.margin)
        return classwise_loss(batch, _require_weights(weights), params, Modulation.NONE)

    def _arcface(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        params = ClasswiseParams(settings.scale, settings.margin)
        return classwise_loss(batch, _require_weights(weights), params, Modulation.ARCFACE)

    def _curriculum(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        params = ClasswiseParams(settings.scale, settings.margin)
        return classwise_loss(
            batch, _require_weights(weights), params, Modulation.CURRICULUM, _require_state(state)
        )

    def _focal_curriculum(
        self,
        batch: EmbeddingBatch,
        weights: ClassWeights | None,
        state: CurriculumState | None,
        settings: LossSettings,
    ) -> LossValueGrad:
        params = ClasswiseParams(settings.scale, settings.margin)
        return focal_curriculum_loss(
            batch, _require_weights(weights), params, _require_state(state)
        )
