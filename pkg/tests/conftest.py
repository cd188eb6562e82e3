"""Pytest configuration and fixtures."""

import json
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pytest

from codet.numerics.rng import Rng
from codet.types.batch import EmbeddingBatch


@pytest.fixture
def rng() -> Rng:
    """A fresh generator with the default seed 0."""
    return Rng(0)


def random_batch(
    rng: Rng, size: int = 12, dim: int = 5, n_classes: int = 3, per_class: int | None = None
) -> EmbeddingBatch:
    """Gaussian points; labels cycle through the classes, then get shuffled."""
    labels = [i % n_classes for i in range(size)]
    if per_class is not None:
        labels = [i // per_class for i in range(size)]
    rng.shuffle(labels)
    points = np.array([[rng.gauss() for _ in range(dim)] for _ in range(size)])
    return EmbeddingBatch(points, labels)


def random_rotation(rng: Rng, dim: int) -> np.ndarray:
    """An orthogonal matrix from the QR decomposition of a Gaussian matrix."""
    q, r = np.linalg.qr(np.array([[rng.gauss() for _ in range(dim)] for _ in range(dim)]))
    return q * np.sign(np.diag(r))


@pytest.fixture
def write_jsonl(tmp_path: Path) -> Callable[[str, list[Any]], Path]:
    """Write records as JSON Lines into tmp_path and return the file path."""

    def write(name: str, records: list[Any]) -> Path:
        path = tmp_path / name
        path.write_text("".join(json.dumps(r) + "\n" for r in records))
        return path

    return write
