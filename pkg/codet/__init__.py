"""codet - the math layer of single-stage common object detection."""

__version__ = "0.1.0"
