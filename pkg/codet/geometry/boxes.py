"""Overlap arithmetic on axis-aligned boxes: IoU, GIoU and the GIoU loss."""

from codet.errors import DegenerateBoxError
from codet.types.box import BBox


def _intersection(a: BBox, b: BBox) -> float:
    ax1, ay1, ax2, ay2 = a.corners
    bx1, by1, bx2, by2 = b.corners
    iw = max(0.0, min(ax2, bx2) - max(ax1, bx1))
    ih = max(0.0, min(ay2, by2) - max(ay1, by1))
    return iw * ih


def _hull_area(a: BBox, b: BBox) -> float:
    ax1, ay1, ax2, ay2 = a.corners
    bx1, by1, bx2, by2 = b.corners
    return (max(ax2, bx2) - min(ax1, bx1)) * (max(ay2, by2) - min(ay1, by1))


def _overlap(a: BBox, b: BBox) -> tuple[float, float]:
    """Return (intersection, union), raising when both boxes have zero area."""
    if a.area == 0.0 and b.area == 0.0:
        raise DegenerateBoxError()
    inter = _intersection(a, b)
    return inter, a.area + b.area - inter


def iou(a: BBox, b: BBox) -> float:
    """Intersection over union, in [0, 1]."""
    inter, union = _overlap(a, b)
    return inter / union


def giou(a: BBox, b: BBox) -> float:
    """Generalized IoU, in [-1, 1]: IoU minus the hull's empty fraction."""
    inter, union = _overlap(a, b)
    # the hull contains the union; max() absorbs rounding in the corner arithmetic
    hull = max(_hull_area(a, b), union)
    return inter / union - (hull - union) / hull


def giou_loss(a: BBox, b: BBox) -> float:
    """Regression loss 1 - GIoU, in [0, 2]."""
    return 1.0 - giou(a, b)
