"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--quick] [--repeat N]

Both backends are first checked to return identical answers; the first
numba call (JIT compile, or cache load) is excluded from the timings.
"""

import argparse
import statistics
import time

from cnkit import kernels

CASES = {
    # name: (callable, full-size args, quick args); 3M^4 + 5e^4 is never a square, so the scan is full
    "quartic_first": (kernels.quartic_first, (3, 5, 0, 400, 400, "literal"), (3, 5, 0, 40, 40, "literal")),
    "rep_count": (kernels.rep_count, (2_000_003, 2, 1, 8), (20_003, 2, 1, 8)),
    "uvm_first": (kernels.uvm_first, (157, 400), (157, 60)),
    "prop44_hits": (kernels.prop44_hits, (300,), (30,)),
}


def time_call(fn, args, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="small sizes, for smoke tests")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    rows = []
    for name, (fn, full, quick) in CASES.items():
        call_args = quick if args.quick else full
        results, times = {}, {}
        for backend in ("numba", "numpy"):
            with kernels.use_backend(backend):
                results[backend] = fn(*call_args)  # warm-up, and the answer
                times[backend] = time_call(fn, call_args, args.repeat)
        if results["numba"] != results["numpy"]:
            raise SystemExit(f"{name}: backends disagree: {results}")
        rows.append((name, times["numba"], times["numpy"]))

    print(f"{'kernel':<15}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, tn, tp in rows:
        print(f"{name:<15}{tn * 1e3:>12.2f}{tp * 1e3:>12.2f}{tp / max(tn, 1e-9):>9.1f}x")
    return rows


if __name__ == "__main__":
    main()
