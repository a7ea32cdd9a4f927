from gaterace._internal.evalkit.config import EvalConfig
from gaterace._internal.evalkit.evaluate import evaluate, jittered_start
from gaterace._internal.evalkit.metrics import (
    OUTCOMES,
    EvalReport,
    RolloutRecord,
    build_report,
    lap_times,
    mean_gate_error,
)
from gaterace._internal.evalkit.policies import NetworkPolicy, Policy, ReplayPolicy
from gaterace._internal.evalkit.report import format_summary, format_sweep, write_report_csv, write_sweep_csv
from gaterace._internal.evalkit.sweep import SweepRow, sensitivity_sweep
from gaterace._internal.evalkit.trajectory import RolloutScorer, center_line_trajectory, trace_trajectory

__all__ = (
    "EvalConfig",
    "EvalReport",
    "RolloutRecord",
    "SweepRow",
    "Policy",
    "NetworkPolicy",
    "ReplayPolicy",
    "RolloutScorer",
    "evaluate",
    "sensitivity_sweep",
    "trace_trajectory",
    "center_line_trajectory",
    "jittered_start",
    "build_report",
    "lap_times",
    "mean_gate_error",
    "format_summary",
    "format_sweep",
    "write_report_csv",
    "write_sweep_csv",
    "OUTCOMES",
)
