import csv
from pathlib import Path
from typing import Optional, Sequence, Union

from .metrics import OUTCOMES, EvalReport
from .sweep import SweepRow

ROLLOUT_COLUMNS = ("rollout", "outcome", "gates_passed", "duration", "mean_offset", "lap_times")
SWEEP_COLUMNS = ("axis", "sign", "magnitude", "sr", "mge", "lt")


def _fmt(value: Optional[float], digits: int) -> str:
    return "-" if value is None else f"{value:.{digits}f}"


def _csv_value(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.10g}"


def format_summary(report: EvalReport, label: str = "") -> str:
    """Summary block with SR, MGE and LT columns followed by the outcome split"""
    lines = [
        f"{'track':<12} {'SR [%]':>8} {'MGE [m]':>9} {'LT [s]':>8}",
        f"{label:<12} {report.sr:>8.1f} {_fmt(report.mge, 3):>9} {_fmt(report.lt, 2):>8}",
        "",
        "outcomes: " + ", ".join(f"{name} {report.breakdown[name]:.1f}%" for name in OUTCOMES),
        f"best lap: {_fmt(report.best_lap, 2)} s over {report.n_rollouts} rollouts",
    ]
    return "\n".join(lines)


def write_report_csv(report: EvalReport, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(ROLLOUT_COLUMNS)
        for record in report.rollouts:
            mean_offset = sum(record.pass_offsets) / len(record.pass_offsets) if record.pass_offsets else None
            writer.writerow(
                [
                    record.index,
                    record.outcome,
                    record.gates_passed,
                    _csv_value(record.duration),
                    _csv_value(mean_offset),
                    ";".join(f"{lap:.4f}" for lap in record.lap_times),
                ],
            )
    return path


def write_sweep_csv(rows: Sequence[SweepRow], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(
                [row.axis, row.sign, _csv_value(row.magnitude), _csv_value(row.sr), _csv_value(row.mge), _csv_value(row.lt)],
            )
    return path


def format_sweep(rows: Sequence[SweepRow]) -> str:
    lines = [f"{'dir':<4} {'disp [m]':>8} {'SR [%]':>8} {'MGE [m]':>9} {'LT [s]':>8}"]
    lines.extend(
        f"{row.direction:<4} {row.magnitude:>8.2f} {row.sr:>8.1f} {_fmt(row.mge, 3):>9} {_fmt(row.lt, 2):>8}"
        for row in rows
    )
    return "\n".join(lines)
