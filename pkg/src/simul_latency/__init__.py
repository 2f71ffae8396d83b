"""Latency metrics for simultaneous machine translation schedules."""

from simul_latency._kernels import BACKEND
from simul_latency.core import (
    ActionSequence,
    HardSchedule,
    LatencyReport,
    ScheduleError,
    SoftSchedule,
    ValidationResult,
    Violation,
    actions_from_schedule,
    schedule_from_actions,
    validate,
)
from simul_latency.generators import (
    delayed_final_reads,
    offline,
    prescient,
    random_schedule,
    wait_k,
    wait_k_catchup,
)
from simul_latency.metrics import (
    GradientReport,
    average_lagging,
    average_lagging_simple,
    average_proportion,
    consecutive_wait,
    dal,
    dal_gradient,
    delay_with_cost,
    delay_with_cost_closed,
    evaluate,
    gradient_check,
    mean_consecutive_wait,
)
from simul_latency.oracle import Timeline, render_timeline, simulate

__version__ = "0.1.0"
