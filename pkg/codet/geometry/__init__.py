"""Box geometry."""

from codet.geometry.boxes import giou, giou_loss, iou

__all__ = ["giou", "giou_loss", "iou"]
