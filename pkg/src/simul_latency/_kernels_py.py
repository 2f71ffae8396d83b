"""Pure-Python prefix-max kernels (fallback when the extension is not built).

All kernels take ``g`` as a sequence of numbers and a write cost ``d``.
The write budget of position ``t`` (1-based) is ``(t - 1) * d``.
"""


def cost_delay(g, d):
    """Recurrent cost-aware delay: ``g'(t) = max(g(t), g'(t-1) + d)``."""
    out = []
    prev = 0.0
    for t, v in enumerate(g):
        v = float(v)
        if t == 0:
            cur = v
        else:
            cur = prev + d
            if v > cur:
                cur = v
        out.append(cur)
        prev = cur
    return out


def cost_delay_closed(g, d):
    """Closed form: ``(t-1)d + max_{i<=t} (g(i) - (i-1)d)``."""
    out = []
    best = 0.0
    for i, v in enumerate(g):
        budget = i * d
        over = float(v) - budget
        if i == 0 or over > best:
            best = over
        out.append(budget + best)
    return out


def prefix_max_sum(g, d):
    """``sum_t max_{i<=t} (g(i) - (i-1)d)``; DAL numerator after cancellation."""
    total = 0.0
    best = 0.0
    for i, v in enumerate(g):
        over = float(v) - i * d
        if i == 0 or over > best:
            best = over
        total += best
    return total


def earliest_argmax_counts(g, d):
    """For each index, how many prefixes have it as earliest maximiser."""
    counts = [0] * len(g)
    best = 0.0
    arg = 0
    for i, v in enumerate(g):
        over = float(v) - i * d
        if i == 0 or over > best:
            best = over
            arg = i
        counts[arg] += 1
    return counts
