"""Base classes for loss definitions and providers."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Callable

from codet.losses.common import Distance
from codet.losses.curriculum import CurriculumState
from codet.types.batch import ClassWeights, EmbeddingBatch, LossValueGrad


class LabelLayout(StrEnum):
    """How labels must be laid out for a loss to be defined on a batch."""

    ANY = "any"
    GROUPED = "grouped"  # every class has at least two samples
    PAIRS = "pairs"  # every class has exactly two samples


@dataclass(frozen=True)
class LossSettings:
    """Hyperparameters common to every registered loss."""

    scale: float
    margin: float
    distance: Distance = Distance.COSINE


Evaluate = Callable[
    [EmbeddingBatch, ClassWeights | None, CurriculumState | None, LossSettings], LossValueGrad
]
Advance = Callable[[EmbeddingBatch, LossValueGrad, CurriculumState], CurriculumState]
KinkDistance = Callable[[EmbeddingBatch, ClassWeights | None, LossSettings], float]


@dataclass
class LossDefinition:
    """Definition of a selectable loss."""

    identifier: str
    friendly_name: str
    description: str
    category: str  # "Class-wise" or "Pair-wise"
    evaluate: Evaluate
    default_scale: float
    default_margin: float
    needs_weights: bool = False
    uses_curriculum: bool = False
    # advances the curriculum state after a step; None for losses without t
    advance: Advance | None = None
    layout: LabelLayout = LabelLayout.ANY
    # distance of an input to the nearest non-smooth point of the loss, used to
    # keep finite-difference samples away from branch switches
    kink_distance: KinkDistance | None = None
    aliases: list[str] = field(default_factory=list)

    def settings(
        self,
        scale: float | None = None,
        margin: float | None = None,
        distance: Distance = Distance.COSINE,
    ) -> LossSettings:
        return LossSettings(
            scale=self.default_scale if scale is None else scale,
            margin=self.default_margin if margin is None else margin,
            distance=Distance(distance),
        )


class LossProvider(ABC):
    """
    Base class for loss providers.

    Each provider groups related losses (class-wise, pair-wise).
    Providers register their losses in __init__.
    """

    def __init__(self) -> None:
        self._losses: dict[str, LossDefinition] = {}
        self._register_losses()

    @property
    @abstractmethod
    def name(self) -> str:
        """Provider name for identification."""
        pass

    @abstractmethod
    def _register_losses(self) -> None:
        """Register all losses this provider offers."""
        pass

    def register(self, loss: LossDefinition) -> None:
        self._losses[loss.identifier] = loss

    def get(self, identifier: str) -> LossDefinition | None:
        return self._losses.get(identifier)

    def list_losses(self) -> list[LossDefinition]:
        return list(self._losses.values())
