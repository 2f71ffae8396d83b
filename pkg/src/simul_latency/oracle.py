"""Discrete-event replay of a schedule on a source-time clock.

Source token ``j`` is spoken during ``[j-1, j]`` and can be read from time
``j`` on; every write keeps the agent busy for ``d`` source units. Replaying
the agent's reads and writes event by event yields the time at which each
target token starts being written. This module deliberately shares no code
with :mod:`simul_latency.metrics`; it is the reference the metrics are
checked against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from simul_latency.core import Schedule, ScheduleError, require_valid

__all__ = ["Timeline", "simulate", "render_timeline"]


@dataclass(frozen=True)
class Timeline:
    write_start: tuple[float, ...]
    write_cost: float
    src_len: int
    tgt_len: int
    # clock time at which source token j (index j-1) was read; None if never read
    read_at: tuple[float | None, ...] = ()

    def late_reads(self) -> list[int]:
        """1-based source tokens read after they became available."""
        return [
            j
            for j, when in enumerate(self.read_at, start=1)
            if when is not None and when > j
        ]


def simulate(s: Schedule, d: float | None = None) -> Timeline:
    require_valid(s)
    if d is None:
        d = s.src_len / s.tgt_len
    d = float(d)
    if not math.isfinite(d) or d < 0:
        raise ScheduleError(f"write cost must be finite and non-negative, got {d}")

    clock = 0.0
    consumed = 0.0  # source units read so far
    read_at: list[float | None] = [None] * s.src_len
    starts = []
    for need in s.g:
        # read events, one source unit at a time (the last may be fractional)
        while consumed < need:
            nxt = min(math.floor(consumed) + 1.0, float(need))
            # the speaker produces position `nxt` at time `nxt`
            if clock < nxt:
                clock = nxt
            consumed = nxt
            if nxt == int(nxt):
                read_at[int(nxt) - 1] = clock
        # write event
        starts.append(clock)
        clock = clock + d
    return Timeline(
        write_start=tuple(starts),
        write_cost=d,
        src_len=s.src_len,
        tgt_len=s.tgt_len,
        read_at=tuple(read_at),
    )


_ANSI = {"late": "\x1b[33m", "target": "\x1b[32m", "reset": "\x1b[0m"}


def _col(x: float, resolution: int) -> int:
    return int(math.floor(x * resolution + 1e-9))


def _draw(lane: list[str], start: int, end: int, label: str, edge: str) -> None:
    lane[start] = edge
    inner = end - start - 1
    if inner > 0:
        text = label if len(label) <= inner else ""
        for i in range(inner):
            lane[start + 1 + i] = text[i] if i < len(text) else " "
    if end > start and lane[end] == " ":
        lane[end] = edge


def render_timeline(
    tl: Timeline, resolution: int = 2, color: bool = False
) -> str:
    """Two-lane text picture of a :class:`Timeline`.

    ``resolution`` is the number of character columns per source-time unit.
    Source token ``j`` occupies ``[j-1, j]``; target token ``t`` occupies
    ``[write_start(t), write_start(t) + d]``. Source tokens read late are
    drawn with ``:`` edges and their read moment is marked with ``^`` on an
    extra lane.
    """
    if resolution < 1:
        raise ScheduleError(f"resolution must be >= 1, got {resolution}")
    end_time = float(tl.src_len)
    if tl.write_start:
        end_time = max(end_time, tl.write_start[-1] + tl.write_cost)
    width = _col(end_time, resolution) + 2
    late = set(tl.late_reads())

    axis = [" "] * width
    free = 0
    for u in range(int(math.ceil(end_time)) + 1):
        c = _col(u, resolution)
        label = str(u)
        if c >= free and c + len(label) <= width:
            axis[c : c + len(label)] = label
            free = c + len(label) + 1

    source = [" "] * width
    for j in range(1, tl.src_len + 1):
        edge = ":" if j in late else "|"
        _draw(source, _col(j - 1, resolution), _col(j, resolution), str(j), edge)

    target = [" "] * width
    for t, start in enumerate(tl.write_start, start=1):
        _draw(
            target,
            _col(start, resolution),
            _col(start + tl.write_cost, resolution),
            str(t),
            "|",
        )

    reads = [" "] * width
    for j in sorted(late):
        c = _col(tl.read_at[j - 1], resolution)
        mark = "^" + str(j)
        reads[c : c + len(mark)] = mark[: width - c]

    def line(name: str, cells: list[str], tint: str | None = None) -> str:
        body = "".join(cells).rstrip()
        if color and tint:
            body = _ANSI[tint] + body + _ANSI["reset"]
        return f"{name:<8}{body}".rstrip()

    rows = [line("time", axis), line("source", source)]
    if late:
        rows.append(line("reads", reads, "late"))
    rows.append(line("target", target, "target"))
    return "\n".join(rows) + "\n"
