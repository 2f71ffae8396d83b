"""Schedule families: wait-k, catch-up, delayed final reads and reference cases."""
from __future__ import annotations

import random

from simul_latency.core import HardSchedule, ScheduleError, SoftSchedule

__all__ = [
    "wait_k",
    "wait_k_catchup",
    "delayed_final_reads",
    "prescient",
    "offline",
    "random_schedule",
]


def _check_k(k):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ScheduleError(f"k must be a positive integer, got {k!r}")


def wait_k(k: int, src_len: int, tgt_len: int) -> HardSchedule:
    """Read ``k`` tokens, then alternate write-1/read-1: ``g(t) = min(t+k-1, |x|)``."""
    _check_k(k)
    g = tuple(min(t + k - 1, src_len) for t in range(1, tgt_len + 1))
    return HardSchedule(src_len, tgt_len, g)


def wait_k_catchup(k: int, src_len: int, tgt_len: int) -> HardSchedule:
    """Wait-k that writes ``gamma`` tokens per read once started.

    ``g(t) = min(|x|, k + floor((t-1)/gamma))``. Falls back to :func:`wait_k`
    when the target is shorter than the source.
    """
    _check_k(k)
    if tgt_len < src_len:
        return wait_k(k, src_len, tgt_len)
    # floor((t-1) * |x| / |y|) in exact integer arithmetic
    g = tuple(
        min(src_len, k + (t - 1) * src_len // tgt_len) for t in range(1, tgt_len + 1)
    )
    return HardSchedule(src_len, tgt_len, g)


def delayed_final_reads(k: int, src_len: int, tgt_len: int) -> HardSchedule:
    """Read ``k`` tokens, then defer every remaining read as late as possible.

    The ``src_len - k`` outstanding reads are placed one per write at the very
    end, so ``g`` stays at ``k`` and then climbs by one per position to reach
    ``src_len`` on the final write.
    """
    _check_k(k)
    if k > src_len:
        raise ScheduleError(f"requires k <= src_len (k={k}, src_len={src_len})")
    deferred = src_len - k
    if tgt_len < deferred:
        raise ScheduleError(
            f"requires tgt_len >= src_len - k (tgt_len={tgt_len}, src_len - k={deferred})"
        )
    flat = tgt_len - deferred
    g = tuple(k if t <= flat else k + (t - flat) for t in range(1, tgt_len + 1))
    return HardSchedule(src_len, tgt_len, g)


def prescient(tgt_len: int, src_len: int | None = None) -> HardSchedule:
    """Never reads; ``src_len`` defaults to ``tgt_len`` (so ``d`` defaults to 1)."""
    if src_len is None:
        src_len = tgt_len
    return HardSchedule(src_len, tgt_len, (0,) * tgt_len)


def offline(src_len: int, tgt_len: int) -> HardSchedule:
    return HardSchedule(src_len, tgt_len, (src_len,) * tgt_len)


def random_schedule(seed, src_len: int, tgt_len: int, soft: bool = False):
    """Seeded random schedule.

    Hard: draw the total read count ``R`` uniformly from ``0..src_len``, then a
    uniformly random non-decreasing sequence over ``0..R`` for the first
    ``tgt_len - 1`` positions (stars and bars) and ``g(|y|) = R``.
    Soft: ``tgt_len`` i.i.d. uniform reals on ``[0, src_len]``, sorted.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if soft:
        g = sorted(rng.uniform(0.0, src_len) for _ in range(tgt_len))
        return SoftSchedule(src_len, tgt_len, tuple(g))
    total = rng.randint(0, src_len)
    m = tgt_len - 1
    slots = sorted(rng.sample(range(m + total), m)) if m else []
    g = tuple(pos - j for j, pos in enumerate(slots)) + (total,)
    return HardSchedule(src_len, tgt_len, g)
