"""
Per-command settings and their resolution from defaults, a config file,
`--set` overrides and dedicated command-line flags, in that order.
"""

import dataclasses
import hashlib
import json
import types
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, TypeVar, Union, get_args, get_origin, get_type_hints

from codet.config.parser import ConfigValue, load_config_file, parse_override
from codet.errors import ConfigError, UnknownKeyError
from codet.evaluation.config import REPORT_IOU_THRESHOLDS, EvalConfig
from codet.losses.curriculum import DEFAULT_EMA_DECAY
from codet.numerics.gradcheck import DEFAULT_REL_TOL, DEFAULT_STEP
from codet.training.synthetic import SyntheticSpec
from codet.training.trainer import TrainConfig

S = TypeVar("S")


@dataclass(frozen=True)
class GradcheckSettings:
    loss: str = "all"
    seed: int = 0
    instances: int = 20
    batch_size: int = 16
    dim: int = 8
    n_classes: int = 4
    step: float = DEFAULT_STEP
    rel_tol: float = DEFAULT_REL_TOL
    abs_tol: float = 1e-8


@dataclass(frozen=True)
class TrainSettings:
    loss: str = "curcon"
    scale: float | None = None
    margin: float | None = None
    distance: str = "cosine"
    steps: int = 500
    learning_rate: float = 0.1
    log_every: int = 10
    ema_decay: float = DEFAULT_EMA_DECAY
    initial_t: float = 0.0
    update_curriculum: bool = True
    n_classes: int = 3
    points_per_class: int = 20
    dim: int = 8
    cluster_spread: float = 0.3
    seed: int = 0

    def synthetic_spec(self) -> SyntheticSpec:
        return SyntheticSpec(
            n_classes=self.n_classes,
            points_per_class=self.points_per_class,
            dim=self.dim,
            cluster_spread=self.cluster_spread,
            seed=self.seed,
        )

    def train_config(self) -> TrainConfig:
        return TrainConfig(
            loss=self.loss,
            scale=self.scale,
            margin=self.margin,
            distance=self.distance,  # type: ignore[arg-type]
            steps=self.steps,
            learning_rate=self.learning_rate,
            log_every=self.log_every,
            ema_decay=self.ema_decay,
            initial_t=self.initial_t,
            update_curriculum=self.update_curriculum,
            seed=self.seed,
        )


@dataclass(frozen=True)
class SamplingSettings:
    # pair_list | class_index | batch | gt_pairs
    mode: str = "pair_list"
    seed: int = 0
    batch_size: int = 8
    batches: int = 1
    # most frequent category when None
    base_class: int | None = None
    retry_budget: int = 100
    # keep a random subset of this many pairs of the pair list
    subset: int | None = None
    gt_pairs: int = 6


@dataclass(frozen=True)
class EvaluateSettings:
    mode: str = "sscod"
    top_k: int = 100
    iou_thresholds: tuple[float, ...] = REPORT_IOU_THRESHOLDS
    similarity_threshold: float | None = None
    score_form: str = "eq2"
    score_threshold: float = 0.0
    ap_mode: str = "continuous"
    # 0 recalls against every equal-category ground-truth pair
    gt_pairs: int = 6
    seed: int = 0
    jobs: int = 1

    def eval_config(self) -> EvalConfig:
        return EvalConfig(
            top_k=self.top_k,
            iou_threshold=self.iou_thresholds[0] if self.iou_thresholds else 0.5,
            similarity_threshold=self.similarity_threshold,
            score_form=self.score_form,  # type: ignore[arg-type]
            score_threshold=self.score_threshold,
            ap_mode=self.ap_mode,  # type: ignore[arg-type]
        )


def _coerce(key: str, value: Any, target: Any) -> Any:
    origin = get_origin(target)
    if origin in (Union, types.UnionType):
        options = [t for t in get_args(target) if t is not type(None)]
        if value is None or value == "none":
            return None
        return _coerce(key, value, options[0])
    if origin is tuple:
        (item,) = get_args(target)[:1]
        items = value if isinstance(value, list) else [value]
        return tuple(_coerce(key, v, item) for v in items)
    if isinstance(value, list):
        raise ConfigError(f"'{key}' takes a single value, got a list")
    if target is bool:
        if isinstance(value, bool):
            return value
    elif target is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif target is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif target is str:
        if isinstance(value, str):
            return value
    type_name = getattr(target, "__name__", str(target))
    raise ConfigError(f"'{key}' expects {type_name}, got {value!r}")


def build_settings(cls: type[S], command: str, values: Mapping[str, ConfigValue | None]) -> S:
    """Instantiate a settings class from raw values, rejecting unknown keys."""
    hints = get_type_hints(cls)
    known = {f.name for f in dataclasses.fields(cls)}  # type: ignore[arg-type]
    kwargs = {}
    for key, value in values.items():
        if key not in known:
            raise UnknownKeyError(key, command)
        kwargs[key] = _coerce(key, value, hints[key])
    return cls(**kwargs)


def resolve_settings(
    cls: type[S],
    command: str,
    config_path: Path | None = None,
    overrides: list[str] | None = None,
    flags: Mapping[str, ConfigValue | None] | None = None,
) -> S:
    """
    Merge defaults, the config file, `--set` overrides and flags.

    Flags whose value is None are treated as not given.
    """
    values: dict[str, ConfigValue | None] = {}
    if config_path is not None:
        values.update(load_config_file(config_path))
    for text in overrides or []:
        key, value = parse_override(text)
        values[key] = value
    for key, value in (flags or {}).items():
        if value is not None:
            values[key] = value
    return build_settings(cls, command, values)


def config_hash(settings: Any) -> str:
    """First 16 hex digits of the sha256 of the settings' canonical JSON."""
    canonical = json.dumps(
        dataclasses.asdict(settings), sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
