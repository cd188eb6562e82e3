"""Annotated images and the per-class image index."""

from dataclasses import dataclass, field

from codet.types.box import BBox

ImageId = str | int


@dataclass(frozen=True)
class Annotation:
    """One annotated object: its category and box."""

    category: int
    box: BBox


@dataclass(frozen=True)
class AnnotatedImage:
    """An image identifier with its object annotations."""

    image_id: ImageId
    annotations: tuple[Annotation, ...] = ()

    @property
    def categories(self) -> frozenset[int]:
        return frozenset(a.category for a in self.annotations)


@dataclass
class ClassIndex:
    """For each category, the image ids containing it, in dataset order."""

    images: dict[int, list[ImageId]] = field(default_factory=dict)

    def __getitem__(self, category: int) -> list[ImageId]:
        return self.images.get(category, [])

    def __contains__(self, category: object) -> bool:
        return category in self.images and bool(self.images[category])

    def __len__(self) -> int:
        return len(self.images)

    def categories(self) -> list[int]:
        return sorted(self.images)
