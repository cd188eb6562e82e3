"""Command bodies: turn resolved settings and input files into results and records."""

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from codet.config.schema import (
    EvaluateSettings,
    GradcheckSettings,
    SamplingSettings,
    TrainSettings,
)
from codet.errors import ConfigError, RecordError
from codet.evaluation.config import EvalConfig, MatchMode
from codet.evaluation.protocol import EvalReport, ImagePairCase, evaluate_dataset
from codet.io.records import read_annotations, read_detections
from codet.losses.registry import get_loss
from codet.losses.suite import LossCheck, run_gradient_suite
from codet.numerics.rng import Rng
from codet.sampling.pairs import (
    build_class_index,
    build_pair_list,
    choose_base_class,
    sample_batch,
    sample_gt_pairs,
    sample_pair_subset,
)
from codet.training.metrics import EmbeddingMetrics, embedding_metrics
from codet.training.synthetic import SyntheticSpec, generate_synthetic
from codet.training.trainer import TrainConfig, TrainResult, train
from codet.types.annotation import AnnotatedImage
from codet.types.detection import GroundTruthBox

SAMPLING_MODES = ("pair_list", "class_index", "batch", "gt_pairs")


def selected_losses(settings: GradcheckSettings) -> list[str] | None:
    """Loss names from a comma-separated `loss` setting; None for "all"."""
    if settings.loss == "all":
        return None
    names = [name.strip() for name in settings.loss.split(",") if name.strip()]
    if not names:
        raise ConfigError("loss must name at least one loss or 'all'")
    return [get_loss(name).identifier for name in names]


def cmd_gradcheck(
    settings: GradcheckSettings, losses: list[str] | None, corrupt: float = 0.0
) -> list[LossCheck]:
    return run_gradient_suite(
        losses,
        seed=settings.seed,
        instances=settings.instances,
        size=settings.batch_size,
        dim=settings.dim,
        n_classes=settings.n_classes,
        h=settings.step,
        rel_tol=settings.rel_tol,
        abs_tol=settings.abs_tol,
        corrupt=corrupt,
    )


def gradcheck_records(checks: list[LossCheck]) -> list[dict[str, Any]]:
    return [
        {
            "loss": c.loss,
            "instances": c.instances,
            "failures": c.failures,
            "max_rel_error": c.max_rel_error,
            "max_abs_error": c.max_abs_error,
            "passed": c.passed,
        }
        for c in checks
    ]


@dataclass(frozen=True)
class TrainPlan:
    spec: SyntheticSpec
    config: TrainConfig


def plan_train(settings: TrainSettings) -> TrainPlan:
    """Validate the settings into library objects before any work starts."""
    get_loss(settings.loss)
    return TrainPlan(settings.synthetic_spec(), settings.train_config())


def cmd_train_toy(plan: TrainPlan) -> tuple[TrainResult, EmbeddingMetrics]:
    result = train(generate_synthetic(plan.spec), plan.config)
    return result, embedding_metrics(result.batch)


def trace_records(result: TrainResult) -> list[dict[str, Any]]:
    return [
        {
            "step": row.step,
            "loss": row.loss,
            "t": row.t,
            "intra": row.intra,
            "inter": row.inter,
            "hard_fraction": row.hard_fraction,
        }
        for row in result.trace
    ]


def check_sampling_mode(settings: SamplingSettings) -> None:
    if settings.mode not in SAMPLING_MODES:
        raise ConfigError(
            f"Unknown sampling mode '{settings.mode}' (known: {', '.join(SAMPLING_MODES)})"
        )


def cmd_sample_pairs(settings: SamplingSettings, annotations: Path) -> list[dict[str, Any]]:
    """Run one sampling algorithm over an annotation file and return its records."""
    dataset = read_annotations(annotations)
    if not dataset:
        return []
    rng = Rng(settings.seed)

    if settings.mode == "class_index":
        index = build_class_index(dataset)
        return [{"category": c, "images": index[c]} for c in index.categories()]

    if settings.mode == "batch":
        index = build_class_index(dataset)
        base = choose_base_class(index) if settings.base_class is None else settings.base_class
        return [
            {"batch": b, "base_class": base, "a": first, "b": second}
            for b in range(settings.batches)
            for first, second in sample_batch(
                index, dataset, base, settings.batch_size, rng, settings.retry_budget
            )
        ]

    pairs = build_pair_list(dataset)
    if settings.subset is not None:
        pairs = sample_pair_subset(pairs, settings.subset, rng)
    if settings.mode == "pair_list":
        return [{"a": first, "b": second} for first, second in pairs]

    by_id = {image.image_id: image for image in dataset}
    return [
        {
            "a": first,
            "b": second,
            "pairs": [
                list(p)
                for p in sample_gt_pairs((by_id[first], by_id[second]), settings.gt_pairs, rng)
            ],
        }
        for first, second in pairs
    ]


@dataclass(frozen=True)
class EvaluatePlan:
    mode: MatchMode
    config: EvalConfig
    thresholds: tuple[float, ...]


def plan_evaluate(settings: EvaluateSettings) -> EvaluatePlan:
    try:
        mode = MatchMode(settings.mode)
    except ValueError:
        known = ", ".join(m.value for m in MatchMode)
        raise ConfigError(f"Unknown mode '{settings.mode}' (known: {known})") from None
    if not settings.iou_thresholds:
        raise ConfigError("iou_thresholds must list at least one threshold")
    if settings.gt_pairs < 0:
        raise ConfigError(f"gt_pairs must be non-negative, got {settings.gt_pairs}")
    if settings.jobs < 1:
        raise ConfigError(f"jobs must be at least 1, got {settings.jobs}")
    config = settings.eval_config()
    for threshold in settings.iou_thresholds:
        config.at_iou(threshold)
    return EvaluatePlan(mode, config, settings.iou_thresholds)


def _ground_truth(image: AnnotatedImage) -> tuple[GroundTruthBox, ...]:
    return tuple(GroundTruthBox(a.box, a.category) for a in image.annotations)


def load_cases(
    settings: EvaluateSettings, dets_a: Path, dets_b: Path, ground_truth: Path
) -> list[ImagePairCase]:
    """
    Pair the i-th record of each detection dump and attach ground truth.

    Ground-truth pairs are sampled per image pair in input order from one
    generator seeded with settings.seed.
    """
    records_a = read_detections(dets_a)
    records_b = read_detections(dets_b)
    if len(records_a) != len(records_b):
        raise RecordError(
            f"{len(records_a)} records in {dets_a} but {len(records_b)} in {dets_b}"
        )
    annotations = {image.image_id: image for image in read_annotations(ground_truth)}
    rng = Rng(settings.seed)
    cases = []
    for a, b in zip(records_a, records_b):
        for image_id in (a.image_id, b.image_id):
            if image_id not in annotations:
                raise RecordError(f"no annotations for image {image_id!r}", ground_truth)
        image_a, image_b = annotations[a.image_id], annotations[b.image_id]
        gt_pairs = None
        if settings.gt_pairs > 0:
            gt_pairs = sample_gt_pairs((image_a, image_b), settings.gt_pairs, rng)
        cases.append(
            ImagePairCase(
                image_a=a.image_id,
                image_b=b.image_id,
                dets_a=a.detections,
                dets_b=b.detections,
                gts_a=_ground_truth(image_a),
                gts_b=_ground_truth(image_b),
                gt_pairs=gt_pairs,
            )
        )
    return cases


def cmd_evaluate(
    settings: EvaluateSettings,
    plan: EvaluatePlan,
    dets_a: Path,
    dets_b: Path,
    ground_truth: Path,
) -> EvalReport:
    cases = load_cases(settings, dets_a, dets_b, ground_truth)
    return evaluate_dataset(cases, plan.mode, plan.config, plan.thresholds, settings.jobs)


def report_records(report: EvalReport) -> list[dict[str, Any]]:
    return [
        {
            "mode": report.mode.value,
            "iou_threshold": threshold,
            "image_pairs": report.image_pairs,
            "n_gt_pairs": report.n_gt_pairs,
            "predictions": len(result.tp_flags),
            "tp": result.true_positives,
            "recall": result.recall,
            "precision": result.precision,
            "ap": result.average_precision,
        }
        for threshold, result in report.results.items()
    ]
