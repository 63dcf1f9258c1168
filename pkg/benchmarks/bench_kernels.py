"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from chaoguide import _pykernels, kernels

try:
    from chaoguide import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

WORKLOADS = [
    ("orbit lozi 1e5", "iterate_orbit", (kernels.LOZI, 1.7, 0.5, 0.1, 0.1, 100_000)),
    ("orbit henon 1e5", "iterate_orbit", (kernels.HENON, 1.4, 0.3, 0.1, 0.1, 100_000)),
    ("lle lozi 1e5", "lyapunov_jacobian", (kernels.LOZI, 1.7, 0.5, 0.1, 0.1, 100_000, 1000)),
    ("lle henon 1e5", "lyapunov_jacobian", (kernels.HENON, 1.4, 0.3, 0.1, 0.1, 100_000, 1000)),
]


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'workload':<18}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for name, fn_name, fn_args in WORKLOADS:
        py = best_of(getattr(_pykernels, fn_name), fn_args, args.repeat)
        if _ckernels is None:
            print(f"{name:<18}{py * 1e3:>14.2f}{'n/a':>14}{'':>10}")
            continue
        cy = best_of(getattr(_ckernels, fn_name), fn_args, args.repeat)
        print(f"{name:<18}{py * 1e3:>14.2f}{cy * 1e3:>14.3f}{py / cy:>9.0f}x")


if __name__ == "__main__":
    main()
