"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--p 1000003]

Both variants are imported side by side, so the env flag does not matter here.
Results are cross-checked for equality before timing is reported.
"""

import argparse
import time

import numpy as np

from qfalg import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(p, rng):
    a = rng.integers(0, p, size=(120, 160), dtype=np.int64)
    b = rng.integers(0, p, size=(160, 120), dtype=np.int64)
    dets = rng.integers(0, p, size=(20000, 9, 9), dtype=np.int64)
    return {
        "rref 120x160": lambda k: k.rref_modp(a, p),
        "matmul 120x160x120": lambda k: k.matmul_modp(a, b, p),
        "det batch 20000x9x9": lambda k: k.batch_det_modp(dets, p),
    }


class _Variant:
    def __init__(self, suffix):
        for name in ("rref_modp", "matmul_modp", "batch_det_modp"):
            setattr(self, name, getattr(_kernels, "%s_%s" % (name, suffix)))


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(u, v) for u, v in zip(x, y))
    return np.array_equal(np.asarray(x), np.asarray(y))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--p", type=int, default=1_000_003)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _kernels.numba is None:
        raise SystemExit("numba is not importable; nothing to compare")
    fast, slow = _Variant("numba"), _Variant("numpy")
    rng = np.random.default_rng(args.seed)
    print("%-22s %12s %12s %8s" % ("kernel", "numba [s]", "numpy [s]", "speedup"))
    for label, run in cases(args.p, rng).items():
        if not _same(run(fast), run(slow)):  # also warms up the JIT
            raise SystemExit("%s: numba and numpy disagree" % label)
        tf, ts = best_of(lambda: run(fast), args.repeat), best_of(lambda: run(slow), args.repeat)
        print("%-22s %12.5f %12.5f %7.1fx" % (label, tf, ts, ts / tf))


if __name__ == "__main__":
    main()
