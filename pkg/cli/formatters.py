"""Output formatting for CLI."""

from rich.markup import escape
from rich.table import Table

from codet.evaluation.protocol import EvalReport
from codet.losses.base import LossDefinition
from codet.losses.suite import LossCheck
from codet.training.metrics import EmbeddingMetrics
from codet.training.trainer import TrainResult
from codet.utils.formatting import format_error_value, format_number


def format_error(error: Exception) -> str:
    """Format an error for display."""
    return f"[red]Error:[/red] {escape(str(error))}"


def gradcheck_table(checks: list[LossCheck]) -> Table:
    table = Table(show_header=True, header_style="bold")
    table.add_column("Loss", style="green")
    table.add_column("Instances", justify="right")
    table.add_column("Max rel. error", justify="right")
    table.add_column("Max abs. error", justify="right")
    table.add_column("Result")
    for check in checks:
        table.add_row(
            check.loss,
            str(check.instances),
            format_error_value(check.max_rel_error),
            format_error_value(check.max_abs_error),
            "[green]pass[/green]" if check.passed else f"[red]fail ({check.failures})[/red]",
        )
    return table


def losses_table(losses: list[LossDefinition]) -> Table:
    table = Table(show_header=True, header_style="bold")
    table.add_column("Name", style="green")
    table.add_column("s", justify="right")
    table.add_column("m", justify="right")
    table.add_column("Curriculum")
    table.add_column("Description")
    for loss in sorted(losses, key=lambda d: d.identifier):
        table.add_row(
            loss.identifier,
            format_number(loss.default_scale),
            format_number(loss.default_margin),
            "yes" if loss.uses_curriculum else "",
            loss.description,
        )
    return table


def train_summary(result: TrainResult, metrics: EmbeddingMetrics) -> Table:
    table = Table(show_header=False)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right")
    final_loss = result.trace[-1].loss if result.trace else None
    table.add_row("last logged loss", format_number(final_loss))
    table.add_row("t", format_number(None if result.state is None else result.state.t))
    table.add_row("mean intra-class cosine", format_number(metrics.mean_intra))
    table.add_row("mean inter-class cosine", format_number(metrics.mean_inter))
    table.add_row("separation", format_number(metrics.separation))
    return table


def report_table(report: EvalReport) -> Table:
    table = Table(
        title=f"{report.mode} | {report.image_pairs} image pairs | "
        f"{report.n_gt_pairs} ground-truth pairs",
        show_header=True,
        header_style="bold",
    )
    table.add_column("IoU >", justify="right")
    table.add_column("Predictions", justify="right")
    table.add_column("TP", justify="right")
    table.add_column("Recall", justify="right")
    table.add_column("Precision", justify="right")
    table.add_column("AP", justify="right")
    for threshold, result in report.results.items():
        table.add_row(
            format_number(threshold),
            str(len(result.tp_flags)),
            str(result.true_positives),
            format_number(result.recall, 4),
            format_number(result.precision, 4),
            format_number(result.average_precision, 4),
        )
    return table
