"""Latency metrics for simultaneous translation schedules.

Covers Average Proportion (AP), Consecutive Wait (CW), Average Lagging (AL),
AL without the ``tau`` cutoff, the write-cost delay ``g'`` and Differentiable
Average Lagging (DAL) together with its subgradient.

The write cost ``d`` defaults to ``src_len / tgt_len``. Every ideal-timing
offset is computed as ``(t - 1) * d`` with that same ``d`` so that AL and DAL
summands are compared on identical floating point terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from simul_latency import _kernels
from simul_latency.core import (
    LatencyReport,
    Schedule,
    ScheduleError,
    require_valid,
)

__all__ = [
    "GradientReport",
    "GRADIENT_STEP",
    "GRADIENT_TOL",
    "default_write_cost",
    "average_proportion",
    "consecutive_wait",
    "mean_consecutive_wait",
    "average_lagging",
    "average_lagging_simple",
    "time_indexed_lags",
    "delay_with_cost",
    "delay_with_cost_closed",
    "dal_lags",
    "dal",
    "dal_gradient",
    "gradient_check",
    "evaluate",
]

GRADIENT_STEP = 1e-5
GRADIENT_TOL = 1e-6
TIE_FACTOR = 10.0


def default_write_cost(s: Schedule) -> float:
    return s.src_len / s.tgt_len


def _write_cost(s: Schedule, d: float | None, allow_zero: bool) -> float:
    if d is None:
        return default_write_cost(s)
    d = float(d)
    if not math.isfinite(d):
        raise ScheduleError(f"write cost must be finite, got {d}")
    if d < 0 or (d == 0 and not allow_zero):
        bound = "non-negative" if allow_zero else "positive"
        raise ScheduleError(f"write cost must be {bound}, got {d}")
    return d


def average_proportion(s: Schedule) -> float:
    require_valid(s)
    return sum(s.g) / (s.src_len * s.tgt_len)


def consecutive_wait(s: Schedule) -> tuple:
    require_valid(s)
    g = s.g
    return (g[0],) + tuple(g[t] - g[t - 1] for t in range(1, len(g)))


def mean_consecutive_wait(s: Schedule) -> float:
    """Mean CW over the positions that actually read something.

    The plain mean telescopes to ``g(|y|) / |y|``, so zero-read positions are
    excluded. Returns 0.0 when nothing is ever read.
    """
    waits = [c for c in consecutive_wait(s) if c > 0]
    if not waits:
        return 0.0
    return sum(waits) / len(waits)


def _tau(s: Schedule) -> int:
    for t, v in enumerate(s.g, start=1):
        if v >= s.src_len:
            return t
    # never reaches the full source: average over every position
    return s.tgt_len


def time_indexed_lags(s: Schedule) -> list[float]:
    """``g(t) - (t-1)/gamma`` for every target position."""
    require_valid(s)
    step = default_write_cost(s)
    return [v - t * step for t, v in enumerate(s.g)]


def average_lagging(s: Schedule) -> tuple[float, int]:
    """Return ``(AL, tau)``; ``tau`` is 1-based."""
    lags = time_indexed_lags(s)
    tau = _tau(s)
    return sum(lags[:tau]) / tau, tau


def average_lagging_simple(s: Schedule) -> float:
    lags = time_indexed_lags(s)
    return sum(lags) / len(lags)


def delay_with_cost(s: Schedule, d: float | None = None) -> list[float]:
    """Recurrent ``g'``: source time elapsed right before each write."""
    require_valid(s)
    return _kernels.cost_delay(s.g, _write_cost(s, d, allow_zero=True))


def delay_with_cost_closed(s: Schedule, d: float | None = None) -> list[float]:
    """Non-recurrent ``g'`` through a running maximum of over-budget reads."""
    require_valid(s)
    return _kernels.cost_delay_closed(s.g, _write_cost(s, d, allow_zero=True))


def dal_lags(s: Schedule, d: float | None = None) -> list[float]:
    d = _write_cost(s, d, allow_zero=True)
    return [v - t * d for t, v in enumerate(delay_with_cost(s, d))]


def dal(s: Schedule, d: float | None = None) -> float:
    """Differentiable Average Lagging, ``d`` defaulting to ``|x|/|y|``.

    Uses the cancelled form ``mean_t max_{i<=t} (g(i) - (i-1)d)``, which is
    never negative because its first term is ``g(1) >= 0``.
    """
    require_valid(s)
    d = _write_cost(s, d, allow_zero=False)
    return _kernels.prefix_max_sum(s.g, d) / s.tgt_len


def dal_gradient(s: Schedule, d: float | None = None) -> list[float]:
    """Subgradient of DAL with respect to each ``g(i)``.

    Every prefix ``t`` contributes ``1/|y|`` to the earliest index attaining its
    maximum, so ties resolve to the left.
    """
    require_valid(s)
    d = _write_cost(s, d, allow_zero=False)
    n = s.tgt_len
    return [c / n for c in _kernels.earliest_argmax_counts(s.g, d)]


@dataclass(frozen=True)
class GradientReport:
    analytic: tuple[float, ...]
    numeric: tuple[float, ...]
    max_abs_diff: float
    tie_positions: frozenset  # 1-based indices

    @property
    def ok(self) -> bool:
        return self.max_abs_diff <= GRADIENT_TOL


def _tie_positions(g: Sequence[float], d: float, margin: float) -> set[int]:
    over = [float(v) - i * d for i, v in enumerate(g)]
    ties: set[int] = set()
    best = -math.inf
    for t in range(len(over)):
        best = max(best, over[t])
        near = [j for j in range(t + 1) if over[j] > best - margin]
        if len(near) > 1:
            ties.update(j + 1 for j in near)
    return ties


def gradient_check(
    s: Schedule, d: float | None = None, step: float = GRADIENT_STEP
) -> GradientReport:
    """Compare :func:`dal_gradient` with central finite differences.

    Perturbed schedules are not re-validated, so ``g +/- step`` may leave
    ``[0, src_len]`` at the boundaries.
    """
    if not step > 0:
        raise ScheduleError(f"step must be positive, got {step}")
    analytic = dal_gradient(s, d)
    d = _write_cost(s, d, allow_zero=False)
    n = s.tgt_len
    g = [float(v) for v in s.g]
    numeric = []
    for i in range(n):
        up = list(g)
        up[i] += step
        down = list(g)
        down[i] -= step
        hi = _kernels.prefix_max_sum(up, d) / n
        lo = _kernels.prefix_max_sum(down, d) / n
        numeric.append((hi - lo) / (2 * step))
    ties = _tie_positions(g, d, TIE_FACTOR * step)
    diffs = [abs(a - b) for i, (a, b) in enumerate(zip(analytic, numeric)) if i + 1 not in ties]
    return GradientReport(
        analytic=tuple(analytic),
        numeric=tuple(numeric),
        max_abs_diff=max(diffs, default=0.0),
        tie_positions=frozenset(ties),
    )


def evaluate(s: Schedule, d: float | None = None) -> LatencyReport:
    require_valid(s)
    d_used = _write_cost(s, d, allow_zero=False)
    al, tau = average_lagging(s)
    return LatencyReport(
        ap=average_proportion(s),
        cw=consecutive_wait(s),
        cw_mean=mean_consecutive_wait(s),
        al=al,
        al_simple=average_lagging_simple(s),
        dal=dal(s, d_used),
        d_used=d_used,
        gamma=s.gamma,
        tau=tau,
        g_prime=tuple(delay_with_cost(s, d_used)),
    )
