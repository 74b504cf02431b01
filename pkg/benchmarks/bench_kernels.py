"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--limits 1e6,1e7,1e8] [--repeat 3]

Prints the best wall time per kernel and limit for each available backend,
the speed-up of the compiled kernels, and the largest disagreement between
the two backends (the counts must match exactly).
"""
import argparse
import math
import time

from primefield import kernels


def best_time(fn, repeat):
    best, result = math.inf, None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def cases(limit):
    return {
        "count_primes": lambda k: k.count_primes(limit),
        "f sum (a=1e-6)": lambda k: k.odd_prime_exp_sum(limit, -1.0, 1e-6, 0.0),
        "g sum (a=1e-6)": lambda k: k.odd_prime_exp_sum(limit, 1.0, 1e-6, 0.0),
        "complex sum": lambda k: k.odd_prime_exp_sum(limit, 0.0, 1e-6, 0.3),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--limits", default="1e6,1e7,1e8")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    limits = [int(float(x)) for x in args.limits.split(",")]
    names = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(names)} (default {kernels.BACKEND})")
    header = f"{'kernel':<16}{'limit':>12}" + "".join(f"{n + ' [s]':>14}" for n in names)
    if len(names) == 2:
        header += f"{'speed-up':>10}{'max rel diff':>14}"
    print(header)
    for limit in limits:
        for label, fn in cases(limit).items():
            times, values = [], []
            for n in names:
                t, v = best_time(lambda: fn(kernels.BACKENDS[n]), args.repeat)
                times.append(t)
                values.append(v)
            line = f"{label:<16}{limit:>12.0e}" + "".join(f"{t:>14.4f}" for t in times)
            if len(names) == 2:
                line += f"{times[1] / times[0]:>10.1f}"  # names sorted: cython, numpy
                line += f"{_rel_diff(*values):>14.1e}"
            print(line)


def _rel_diff(a, b):
    if isinstance(a, int):
        return float(a != b)
    # tuples (re_hi, re_lo, im_hi, im_lo, count)
    re_a, re_b = a[0] + a[1], b[0] + b[1]
    im_a, im_b = a[2] + a[3], b[2] + b[3]
    scale = max(abs(complex(re_a, im_a)), 1e-300)
    if a[4] != b[4]:
        return math.inf
    return abs(complex(re_a - re_b, im_a - im_b)) / scale


if __name__ == "__main__":
    main()
