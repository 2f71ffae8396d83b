"""Schedule types for read/write agents and conversions between them.

A schedule is described by its delay function ``g``: ``g[t]`` is the number of
source tokens read before target token ``t`` is written. Positions are 1-based
in every message and docstring; the underlying tuples are ordinary 0-based
Python sequences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Integral, Real
from typing import Sequence, Union

__all__ = [
    "ScheduleError",
    "HardSchedule",
    "SoftSchedule",
    "ActionSequence",
    "LatencyReport",
    "Violation",
    "ValidationResult",
    "Schedule",
    "schedule_from_actions",
    "actions_from_schedule",
    "validate",
    "require_valid",
]

READ = "R"
WRITE = "W"


class ScheduleError(ValueError):
    """Raised when a schedule, action string or parameter is unusable."""


def _check_lengths(src_len, tgt_len):
    for name, value in (("src_len", src_len), ("tgt_len", tgt_len)):
        if isinstance(value, bool) or not isinstance(value, Integral):
            raise ScheduleError(f"{name} must be an integer, got {value!r}")
        if value < 1:
            raise ScheduleError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class HardSchedule:
    """Integer delay function produced by a deterministic read/write agent."""

    src_len: int
    tgt_len: int
    g: tuple[int, ...]

    def __post_init__(self):
        _check_lengths(self.src_len, self.tgt_len)
        object.__setattr__(self, "g", tuple(self.g))

    @classmethod
    def from_g(cls, g: Sequence[int], src_len: int) -> "HardSchedule":
        return cls(src_len=src_len, tgt_len=len(g), g=tuple(g))

    @property
    def gamma(self) -> float:
        return self.tgt_len / self.src_len


@dataclass(frozen=True)
class SoftSchedule:
    """Real-valued (expected) delays, e.g. from an adaptive attention model.

    Monotonicity is not required; :func:`validate` only warns about it.
    """

    src_len: int
    tgt_len: int
    g: tuple[float, ...]

    def __post_init__(self):
        _check_lengths(self.src_len, self.tgt_len)
        object.__setattr__(self, "g", tuple(self.g))

    @classmethod
    def from_g(cls, g: Sequence[float], src_len: int) -> "SoftSchedule":
        return cls(src_len=src_len, tgt_len=len(g), g=tuple(g))

    @property
    def gamma(self) -> float:
        return self.tgt_len / self.src_len


Schedule = Union[HardSchedule, SoftSchedule]


@dataclass(frozen=True)
class ActionSequence:
    """A string over ``{R, W}``; each ``W`` emits one target token."""

    actions: str
    src_len: int
    tgt_len: int

    def __post_init__(self):
        _check_lengths(self.src_len, self.tgt_len)


@dataclass(frozen=True)
class LatencyReport:
    ap: float
    cw: tuple[float, ...]
    cw_mean: float
    al: float
    al_simple: float
    dal: float
    d_used: float
    gamma: float
    tau: int
    g_prime: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "ap": self.ap,
            "cw": list(self.cw),
            "cw_mean": self.cw_mean,
            "al": self.al,
            "al_simple": self.al_simple,
            "dal": self.dal,
            "d_used": self.d_used,
            "gamma": self.gamma,
            "tau": self.tau,
            "g_prime": list(self.g_prime),
        }


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    position: int | None = None  # 1-based target position, when applicable


@dataclass(frozen=True)
class ValidationResult:
    errors: tuple[Violation, ...] = field(default_factory=tuple)
    warnings: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok


def validate(s: Schedule) -> ValidationResult:
    """Check every schedule invariant and collect the violations.

    Never raises on bad schedule content. For a :class:`HardSchedule` a
    decreasing ``g`` is an error; for a :class:`SoftSchedule` it is a warning.
    """
    errors: list[Violation] = []
    warnings: list[Violation] = []
    hard = isinstance(s, HardSchedule)

    if len(s.g) != s.tgt_len:
        errors.append(
            Violation("length", f"len(g)={len(s.g)} but tgt_len={s.tgt_len}")
        )

    numeric_ok = True
    for t, v in enumerate(s.g, start=1):
        if isinstance(v, bool) or not isinstance(v, Real):
            errors.append(Violation("type", f"g({t})={v!r} is not a number", t))
            numeric_ok = False
        elif hard and not isinstance(v, Integral):
            errors.append(Violation("type", f"g({t})={v!r} is not an integer", t))
            numeric_ok = False
        elif not math.isfinite(v):
            errors.append(Violation("type", f"g({t})={v!r} is not finite", t))
            numeric_ok = False
        elif v < 0 or v > s.src_len:
            errors.append(
                Violation("range", f"g({t})={v} outside [0, {s.src_len}]", t)
            )
    if not numeric_ok:
        return ValidationResult(tuple(errors), tuple(warnings))

    for t in range(1, len(s.g)):
        if s.g[t] < s.g[t - 1]:
            v = Violation(
                "monotonicity",
                f"g({t + 1})={s.g[t]} < g({t})={s.g[t - 1]}",
                t + 1,
            )
            (errors if hard else warnings).append(v)
    return ValidationResult(tuple(errors), tuple(warnings))


def require_valid(s: Schedule) -> None:
    result = validate(s)
    if not result.ok:
        raise ScheduleError("; ".join(v.message for v in result.errors))


def schedule_from_actions(a: ActionSequence) -> HardSchedule:
    """Derive ``g`` from an action string: reads strictly before each write."""
    reads = 0
    g = []
    for i, ch in enumerate(a.actions, start=1):
        if ch == READ:
            reads += 1
        elif ch == WRITE:
            g.append(reads)
        else:
            raise ScheduleError(f"invalid action {ch!r} at character {i}")
    if len(g) != a.tgt_len:
        raise ScheduleError(f"{len(g)} writes but tgt_len={a.tgt_len}")
    if reads > a.src_len:
        raise ScheduleError(f"{reads} reads but src_len={a.src_len}")
    return HardSchedule(src_len=a.src_len, tgt_len=a.tgt_len, g=tuple(g))


def actions_from_schedule(s: HardSchedule) -> ActionSequence:
    """Canonical action string; reads after the final write are dropped."""
    require_valid(s)
    parts = []
    prev = 0
    for v in s.g:
        parts.append(READ * (v - prev) + WRITE)
        prev = v
    return ActionSequence("".join(parts), s.src_len, s.tgt_len)
