# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled prefix-max kernels; same contracts as ``_kernels_py``."""


def cost_delay(g, double d):
    cdef Py_ssize_t n = len(g), t
    cdef double prev = 0.0, cur, v
    out = [0.0] * n
    for t in range(n):
        v = g[t]
        if t == 0:
            cur = v
        else:
            cur = prev + d
            if v > cur:
                cur = v
        out[t] = cur
        prev = cur
    return out


def cost_delay_closed(g, double d):
    cdef Py_ssize_t n = len(g), i
    cdef double best = 0.0, budget, over
    out = [0.0] * n
    for i in range(n):
        budget = i * d
        over = <double>g[i] - budget
        if i == 0 or over > best:
            best = over
        out[i] = budget + best
    return out


def prefix_max_sum(g, double d):
    cdef Py_ssize_t n = len(g), i
    cdef double total = 0.0, best = 0.0, over
    for i in range(n):
        over = <double>g[i] - i * d
        if i == 0 or over > best:
            best = over
        total += best
    return total


def earliest_argmax_counts(g, double d):
    cdef Py_ssize_t n = len(g), i, arg = 0
    cdef double best = 0.0, over
    counts = [0] * n
    for i in range(n):
        over = <double>g[i] - i * d
        if i == 0 or over > best:
            best = over
            arg = i
        counts[arg] += 1
    return counts
