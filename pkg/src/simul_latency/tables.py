"""Worked examples of AL and DAL, reproduced cell by cell.

Each table is a list of named cells holding a published value and the value
recomputed by :mod:`simul_latency.metrics`. Metrics are looked up on the
module at call time, so a patched metric shows up as a failing cell.
"""
from __future__ import annotations

from dataclasses import dataclass

from simul_latency import metrics
from simul_latency.core import HardSchedule

CELL_TOL = 1e-9


@dataclass(frozen=True)
class Cell:
    table: str
    name: str
    expected: float
    actual: float

    @property
    def ok(self) -> bool:
        return abs(self.expected - self.actual) <= CELL_TOL


def _row(table, prefix, expected, actual):
    if len(expected) != len(actual):
        return [Cell(table, f"{prefix} length", len(expected), len(actual))]
    return [
        Cell(table, f"{prefix}({t})", e, a)
        for t, (e, a) in enumerate(zip(expected, actual), start=1)
    ]


def _al_block(table, tag, s, lags, tau, al, al_simple=None, ideal=None):
    cells = []
    if ideal is not None:
        step = metrics.default_write_cost(s)
        cells += _row(table, f"{tag} (t-1)/gamma", ideal, [t * step for t in range(s.tgt_len)])
    got_al, got_tau = metrics.average_lagging(s)
    got_lags = metrics.time_indexed_lags(s)
    cells += _row(table, f"{tag} l", lags, got_lags[: len(lags)])
    cells.append(Cell(table, f"{tag} tau", tau, got_tau))
    cells.append(Cell(table, f"{tag} AL", al, got_al))
    if al_simple is not None:
        cells.append(Cell(table, f"{tag} AL_y", al_simple, metrics.average_lagging_simple(s)))
    return cells


def _dal_block(table, tag, s, g_prime, lags, value, ideal=None):
    cells = []
    if ideal is not None:
        step = metrics.default_write_cost(s)
        cells += _row(table, f"{tag} (t-1)/gamma", ideal, [t * step for t in range(s.tgt_len)])
    cells += _row(table, f"{tag} g'", g_prime, metrics.delay_with_cost(s))
    cells += _row(table, f"{tag} l'", lags, metrics.dal_lags(s))
    cells.append(Cell(table, f"{tag} DAL", value, metrics.dal(s)))
    return cells


def _sched(src_len, g):
    return HardSchedule(src_len, len(g), tuple(g))


def table_al_wait_k():
    name = "AL, wait-1 and wait-3, |x|=|y|=4"
    return _al_block(name, "k=1", _sched(4, [1, 2, 3, 4]), [1, 1, 1, 1], 4, 1, 1) + _al_block(
        name, "k=3", _sched(4, [3, 4, 4, 4]), [3, 3, 2, 1], 2, 3, 2.25
    )


def table_al_delayed_read():
    name = "AL, wait-4 vs delayed final read, |x|=|y|=5"
    return _al_block(name, "wait-4", _sched(5, [4, 5, 5, 5, 5]), [4, 4], 2, 4) + _al_block(
        name, "delayed", _sched(5, [4, 4, 4, 4, 5]), [4, 3, 2, 1, 1], 5, 2.2
    )


def table_dal_wait_k():
    name = "DAL, wait-1 and wait-3, |x|=|y|=4"
    ideal = [0, 1, 2, 3]
    return _dal_block(
        name, "k=1", _sched(4, [1, 2, 3, 4]), [1, 2, 3, 4], [1, 1, 1, 1], 1, ideal
    ) + _dal_block(name, "k=3", _sched(4, [3, 4, 4, 4]), [3, 4, 5, 6], [3, 3, 3, 3], 3, ideal)


def table_dal_delayed_read():
    name = "DAL, wait-4 vs delayed final read, |x|=|y|=5"
    return _dal_block(
        name, "wait-4", _sched(5, [4, 5, 5, 5, 5]), [4, 5, 6, 7, 8], [4] * 5, 4
    ) + _dal_block(name, "delayed", _sched(5, [4, 4, 4, 4, 5]), [4, 5, 6, 7, 8], [4] * 5, 4)


def table_catchup():
    name = "AL and DAL, wait-1 with/without catch-up, |x|=3 |y|=6"
    ideal = [0, 0.5, 1, 1.5, 2, 2.5]
    plain = _sched(3, [1, 2, 3, 3, 3, 3])
    catch = _sched(3, [1, 1, 2, 2, 3, 3])
    return (
        _al_block(name, "no catch-up", plain, [1, 1.5, 2], 3, 1.5, ideal=ideal)
        + _dal_block(name, "no catch-up", plain, [1, 2, 3, 3.5, 4, 4.5], [1, 1.5, 2, 2, 2, 2], 1.75)
        + _al_block(name, "catch-up", catch, [1, 0.5, 1, 0.5, 1], 5, 0.8, ideal=ideal)
        + _dal_block(name, "catch-up", catch, [1, 1.5, 2, 2.5, 3, 3.5], [1] * 6, 1)
    )


def table_short_target():
    name = "AL and DAL, wait-1 without catch-up, |x|=6 |y|=3"
    s = _sched(6, [1, 2, 3])
    return _al_block(name, "wait-1", s, [1, 0, -1], 3, 0, ideal=[0, 2, 4]) + _dal_block(
        name, "wait-1", s, [1, 3, 5], [1, 1, 1], 1
    )


TABLES = (
    table_al_wait_k,
    table_al_delayed_read,
    table_dal_wait_k,
    table_dal_delayed_read,
    table_catchup,
    table_short_target,
)


def all_cells() -> list[Cell]:
    cells = []
    for build in TABLES:
        cells.extend(build())
    return cells


def _fmt(x) -> str:
    return repr(float(x)) if not float(x).is_integer() else str(int(x))


def format_report(cells: list[Cell]) -> str:
    lines = []
    current = None
    for c in cells:
        if c.table != current:
            current = c.table
            lines.append(f"== {current}")
        status = "ok  " if c.ok else "FAIL"
        lines.append(f"  {status} {c.name:<28} expected={_fmt(c.expected):<6} got={_fmt(c.actual)}")
    failed = sum(not c.ok for c in cells)
    lines.append(f"{len(cells) - failed}/{len(cells)} cells match (tolerance {CELL_TOL:g})")
    return "\n".join(lines) + "\n"
