"""Axis-aligned bounding box in (x, y, w, h) form."""

from dataclasses import dataclass

from codet.errors import ArgumentError


@dataclass(frozen=True)
class BBox:
    """A box with its top-left corner at (x, y) and non-negative size."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self) -> None:
        if self.w < 0 or self.h < 0:
            raise ArgumentError(f"Box size must be non-negative, got w={self.w}, h={self.h}")

    @property
    def area(self) -> float:
        return self.w * self.h

    @property
    def corners(self) -> tuple[float, float, float, float]:
        """Return (x1, y1, x2, y2)."""
        return self.x, self.y, self.x + self.w, self.y + self.h

    def translated(self, dx: float, dy: float) -> "BBox":
        return BBox(self.x + dx, self.y + dy, self.w, self.h)
