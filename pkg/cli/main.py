"""Main CLI entry point."""

import logging
from pathlib import Path
from typing import Any, NoReturn, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler

from cli.formatters import (
    format_error,
    gradcheck_table,
    losses_table,
    report_table,
    train_summary,
)
from cli.runner import (
    check_sampling_mode,
    cmd_evaluate,
    cmd_gradcheck,
    cmd_sample_pairs,
    cmd_train_toy,
    gradcheck_records,
    plan_evaluate,
    plan_train,
    report_records,
    selected_losses,
    trace_records,
)
from codet.config.schema import (
    EvaluateSettings,
    GradcheckSettings,
    SamplingSettings,
    TrainSettings,
    config_hash,
    resolve_settings,
)
from codet.errors import CodetError
from codet.io.writers import write_jsonl

app = typer.Typer(
    name="codet",
    help="codet - common object detection losses, pair sampling and evaluation",
    no_args_is_help=True,
)
console = Console()

EXIT_FAILURE = 1
EXIT_USAGE = 2

ConfigOption = typer.Option(None, "--config", "-c", help="Config file (key = value lines)")
SetOption = typer.Option(None, "--set", help="Override a config key (format: key=value)")
SeedOption = typer.Option(None, "--seed", help="Seed for every random draw")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", help="Show debug logging"),
) -> None:
    """Configure logging for every command."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _fail(error: Exception, code: int) -> NoReturn:
    console.print(format_error(error))
    raise typer.Exit(code)


def _write(out: Path, command: str, settings: Any, records: list[dict[str, Any]]) -> None:
    try:
        write_jsonl(out, command, config_hash(settings), records)
    except OSError as e:
        _fail(e, EXIT_USAGE)


@app.command()
def gradcheck(
    config: Optional[Path] = ConfigOption,
    loss: Optional[str] = typer.Option(
        None, "--loss", help="Loss name, comma-separated names, or 'all'"
    ),
    seed: Optional[int] = SeedOption,
    overrides: Optional[list[str]] = SetOption,
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the report here"),
    corrupt: float = typer.Option(0.0, "--corrupt", hidden=True),
) -> None:
    """Check analytic loss gradients against finite differences."""
    try:
        settings = resolve_settings(
            GradcheckSettings, "gradcheck", config, overrides, {"loss": loss, "seed": seed}
        )
        losses = selected_losses(settings)
    except CodetError as e:
        _fail(e, EXIT_USAGE)

    try:
        checks = cmd_gradcheck(settings, losses, corrupt)
    except CodetError as e:
        _fail(e, EXIT_FAILURE)

    console.print(gradcheck_table(checks))
    if out is not None:
        _write(out, "gradcheck", settings, gradcheck_records(checks))
    if not all(check.passed for check in checks):
        console.print("[red]Gradient check failed[/red]")
        raise typer.Exit(EXIT_FAILURE)


@app.command("train-toy")
def train_toy(
    out: Path = typer.Option(..., "--out", "-o", help="Trace file to write"),
    config: Optional[Path] = ConfigOption,
    loss: Optional[str] = typer.Option(None, "--loss", help="Loss to train with"),
    seed: Optional[int] = SeedOption,
    overrides: Optional[list[str]] = SetOption,
) -> None:
    """Train free embeddings on synthetic clusters and write the loss trace."""
    try:
        settings = resolve_settings(
            TrainSettings, "train-toy", config, overrides, {"loss": loss, "seed": seed}
        )
        plan = plan_train(settings)
    except (CodetError, ValueError) as e:
        _fail(e, EXIT_USAGE)

    try:
        result, metrics = cmd_train_toy(plan)
    except CodetError as e:
        _fail(e, EXIT_FAILURE)

    _write(out, "train-toy", settings, trace_records(result))
    console.print(train_summary(result, metrics))


@app.command("sample-pairs")
def sample_pairs(
    annotations: Path = typer.Argument(..., help="Annotation file (JSON Lines)"),
    out: Path = typer.Option(..., "--out", "-o", help="Output file"),
    config: Optional[Path] = ConfigOption,
    mode: Optional[str] = typer.Option(
        None, "--mode", help="pair_list, class_index, batch or gt_pairs"
    ),
    seed: Optional[int] = SeedOption,
    overrides: Optional[list[str]] = SetOption,
) -> None:
    """Build image-pair lists and batches from an annotation file."""
    try:
        settings = resolve_settings(
            SamplingSettings, "sample-pairs", config, overrides, {"mode": mode, "seed": seed}
        )
        check_sampling_mode(settings)
    except CodetError as e:
        _fail(e, EXIT_USAGE)

    try:
        records = cmd_sample_pairs(settings, annotations)
    except CodetError as e:
        _fail(e, EXIT_FAILURE)

    _write(out, "sample-pairs", settings, records)
    console.print(f"{len(records)} records written to {out}")


@app.command()
def evaluate(
    dets_a: Path = typer.Argument(..., help="Detections of the first images"),
    dets_b: Path = typer.Argument(..., help="Detections of the second images"),
    ground_truth: Path = typer.Argument(..., help="Annotation file with the ground truth"),
    out: Path = typer.Option(..., "--out", "-o", help="Report file"),
    config: Optional[Path] = ConfigOption,
    mode: Optional[str] = typer.Option(None, "--mode", help="sscod, hard_match or soft_match"),
    seed: Optional[int] = SeedOption,
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="Worker threads"),
    overrides: Optional[list[str]] = SetOption,
) -> None:
    """Evaluate common-object pairs between paired images."""
    try:
        settings = resolve_settings(
            EvaluateSettings,
            "evaluate",
            config,
            overrides,
            {"mode": mode, "seed": seed, "jobs": jobs},
        )
        plan = plan_evaluate(settings)
    except (CodetError, ValueError) as e:
        _fail(e, EXIT_USAGE)

    try:
        report = cmd_evaluate(settings, plan, dets_a, dets_b, ground_truth)
    except CodetError as e:
        _fail(e, EXIT_FAILURE)

    _write(out, "evaluate", settings, report_records(report))
    console.print(report_table(report))


@app.command()
def losses() -> None:
    """List all available losses."""
    from codet.losses.registry import list_losses_by_category

    for category, definitions in sorted(list_losses_by_category().items()):
        console.print(f"\n[bold cyan]{category}[/bold cyan]")
        console.print(losses_table(definitions))


@app.command()
def version() -> None:
    """Show version information."""
    from codet import __version__

    console.print(f"codet v{__version__}")


if __name__ == "__main__":
    app()
