"""Select the compiled kernels when available, else the pure-Python ones."""

try:
    from simul_latency import _kernels_c as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from simul_latency import _kernels_py as _impl

    BACKEND = "python"

cost_delay = _impl.cost_delay
cost_delay_closed = _impl.cost_delay_closed
prefix_max_sum = _impl.prefix_max_sum
earliest_argmax_counts = _impl.earliest_argmax_counts

__all__ = [
    "BACKEND",
    "cost_delay",
    "cost_delay_closed",
    "prefix_max_sum",
    "earliest_argmax_counts",
]
