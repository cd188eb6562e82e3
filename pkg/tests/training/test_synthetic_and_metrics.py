"""Tests for synthetic clusters and embedding metrics."""

import numpy as np
import pytest

from codet.errors import ArgumentError
from codet.training import SyntheticSpec, embedding_metrics, generate_synthetic
from codet.types.batch import EmbeddingBatch


class TestSynthetic:
    def test_layout(self):
        batch = generate_synthetic(SyntheticSpec(n_classes=3, points_per_class=4, dim=5))
        assert batch.points.shape == (12, 5)
        assert batch.labels.tolist() == [0] * 4 + [1] * 4 + [2] * 4
        assert np.allclose(np.linalg.norm(batch.points, axis=1), 1.0)

    def test_zero_spread(self):
        batch = generate_synthetic(SyntheticSpec(points_per_class=5, cluster_spread=0.0))
        for label in range(3):
            cluster = batch.points[batch.labels == label]
            assert np.all(cluster == cluster[0])

    def test_zero_spread_keeps_the_centers(self):
        # noise is still drawn, so the centers do not depend on the spread
        tight = generate_synthetic(SyntheticSpec(points_per_class=1, cluster_spread=0.0))
        loose = generate_synthetic(SyntheticSpec(points_per_class=1, cluster_spread=1e-9))
        assert np.allclose(tight.points, loose.points, atol=1e-8)

    def test_reproducible(self):
        spec = SyntheticSpec(seed=17)
        assert np.array_equal(generate_synthetic(spec).points, generate_synthetic(spec).points)

    def test_seed_changes_points(self):
        a = generate_synthetic(SyntheticSpec(seed=1))
        b = generate_synthetic(SyntheticSpec(seed=2))
        assert not np.allclose(a.points, b.points)

    def test_spread_controls_compactness(self):
        tight = embedding_metrics(generate_synthetic(SyntheticSpec(cluster_spread=0.1)))
        loose = embedding_metrics(generate_synthetic(SyntheticSpec(cluster_spread=1.0)))
        assert tight.mean_intra > loose.mean_intra

    @pytest.mark.parametrize(
        "kwargs",
        [{"n_classes": 1}, {"points_per_class": 0}, {"dim": 1}, {"cluster_spread": -0.1}],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ArgumentError):
            SyntheticSpec(**kwargs)


class TestEmbeddingMetrics:
    def test_identical_points(self):
        metrics = embedding_metrics(EmbeddingBatch(np.ones((4, 3)), [0, 0, 1, 1]))
        assert metrics.mean_intra == pytest.approx(1.0)
        assert metrics.mean_inter == pytest.approx(1.0)
        assert metrics.separation == pytest.approx(0.0)

    def test_antipodal_classes(self):
        points = np.array([[1.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [-1.0, 0.0]])
        metrics = embedding_metrics(EmbeddingBatch(points, [0, 0, 1, 1]))
        assert metrics.mean_intra == pytest.approx(1.0)
        assert metrics.mean_inter == pytest.approx(-1.0)
        assert np.allclose(metrics.center_cosines, [[1.0, -1.0], [-1.0, 1.0]])

    def test_single_point_classes(self):
        metrics = embedding_metrics(EmbeddingBatch(np.array([[1.0, 0.0], [0.0, 1.0]]), [0, 1]))
        assert metrics.mean_intra is None
        assert metrics.separation is None
        assert metrics.mean_inter == pytest.approx(0.0)

    def test_vanishing_mean_direction(self):
        points = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
        metrics = embedding_metrics(EmbeddingBatch(points, [0, 0, 1]))
        assert metrics.center_cosines[0, 1] == 0.0
        assert metrics.center_cosines[1, 1] == pytest.approx(1.0)

    def test_needs_two_classes(self):
        with pytest.raises(ArgumentError, match="at least 2"):
            embedding_metrics(EmbeddingBatch(np.ones((3, 2)), [0, 0, 0]))

    def test_missing_class(self):
        with pytest.raises(ArgumentError, match="Class 1"):
            embedding_metrics(EmbeddingBatch(np.ones((2, 2)), [0, 2]))
