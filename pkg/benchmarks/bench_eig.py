"""Time the compiled and pure-Python QR kernels on random matrices.

    python3 benchmarks/bench_eig.py --sizes 4 8 16 32 --reps 20
"""
import argparse
import time

import numpy as np

from niep.eig import core


def _time(A_list, backend):
    start = time.perf_counter()
    for A in A_list:
        core.eigenvalues(A, backend=backend)
    return (time.perf_counter() - start) / len(A_list)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    parser.add_argument("--reps", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    try:
        core._kernel_for("cython")
        backends = ["python", "cython"]
    except ImportError:
        print("compiled kernel not built; timing the python kernel only")
        backends = ["python"]

    print(f"{'n':>4}  " + "  ".join(f"{b + ' (ms)':>13}" for b in backends) + ("  speedup" if len(backends) == 2 else ""))
    for n in args.sizes:
        mats = [rng.normal(size=(n, n)) for _ in range(args.reps)]
        times = [_time(mats, b) for b in backends]
        line = f"{n:>4}  " + "  ".join(f"{1e3 * t:>13.3f}" for t in times)
        if len(times) == 2:
            line += f"  {times[0] / times[1]:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
