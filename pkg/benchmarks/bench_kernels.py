"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--lengths 50 1000 100000] [--repeat 5]
"""
import argparse
import random
import timeit

from simul_latency import _kernels_py

try:
    from simul_latency import _kernels_c
except ImportError:
    _kernels_c = None

KERNELS = ("cost_delay", "cost_delay_closed", "prefix_max_sum", "earliest_argmax_counts")


def best_time(fn, g, d, repeat, budget=0.2):
    timer = timeit.Timer(lambda: fn(g, d))
    number, _ = timer.autorange()
    number = max(1, int(number * budget / 0.2))
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--lengths", type=int, nargs="+", default=[50, 1000, 100_000])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _kernels_c is None:
        print("compiled kernels not built; only the Python fallback is timed")
    rng = random.Random(args.seed)
    print(f"{'kernel':<24}{'n':>8}{'python (us)':>14}{'cython (us)':>14}{'speedup':>9}")
    for n in args.lengths:
        src_len = n
        g = sorted(rng.randint(0, src_len) for _ in range(n))
        d = src_len / n
        for name in KERNELS:
            py = best_time(getattr(_kernels_py, name), g, d, args.repeat) * 1e6
            if _kernels_c is None:
                print(f"{name:<24}{n:>8}{py:>14.2f}{'-':>14}{'-':>9}")
                continue
            cy = best_time(getattr(_kernels_c, name), g, d, args.repeat) * 1e6
            print(f"{name:<24}{n:>8}{py:>14.2f}{cy:>14.2f}{py / cy:>8.1f}x")


if __name__ == "__main__":
    main()
