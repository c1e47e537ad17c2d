"""Compare the numba kernels with their numpy and pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]

Inputs are random but seeded; every backend must return the same answer,
which is checked before anything is timed. The pure-Python loops only run on
the smaller sizes.
"""

import argparse
import time

import numpy as np

from pmlevels import _kernels as K


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), tuple(int(v) for v in out)


def p5_case(rng, n, dt=1024):
    grid = np.sort(rng.choice(np.arange(1, 50 * n), size=n, replace=False)).astype(np.int64)
    F = np.sort(rng.integers(0, dt + 1, n)).astype(np.int64)
    G = np.sort(rng.integers(0, dt + 1, n)).astype(np.int64)
    # the third distribution jumps to 1 before any grid sum, so there is no
    # violation and every backend scans the full grid
    ats = np.array([1], dtype=np.int64)
    tos = np.array([dt], dtype=np.int64)
    return (1, grid, F, G, ats, tos, dt)


def ut_case(rng, n):
    def prof():
        return np.concatenate(([0], np.sort(rng.integers(10, 10_000, n))[::-1])).astype(np.int64)
    P, Q = prof(), prof()
    R = np.zeros(n + 1, dtype=np.int64)
    return (K.min_eps_table(1, n), P, Q, R)


CASES = [
    ("p5_scan", "n=256", lambda r: p5_case(r, 256), True),
    ("p5_scan", "n=2048", lambda r: p5_case(r, 2048), False),
    ("ut_scan", "n=256", lambda r: ut_case(r, 256), True),
    ("ut_scan", "n=1024", lambda r: ut_case(r, 1024), False),
    ("lemma_sweep", "n=16", lambda r: (1, 16, 512), True),
    ("lemma_sweep", "n=64", lambda r: (1, 64, 8192), False),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"default backend: {K.backend()}")
    if K.HAS_NUMBA:
        # compile outside the timed region
        for name, _, make, small in CASES:
            if small:
                getattr(K, name)(*make(np.random.default_rng(1)))
    print(f"{'kernel':<12} {'size':<8} {'numba':>10} {'numpy':>10} {'python':>10}")
    for name, size, make, small in CASES:
        case = make(rng)
        row = {}
        results = set()
        backends = [("numba", getattr(K, name) if K.HAS_NUMBA else None),
                    ("numpy", getattr(K, f"{name}_numpy")),
                    ("python", getattr(K, f"{name}_python") if small else None)]
        for label, fn in backends:
            if fn is None:
                row[label] = "-"
                continue
            t, out = best_of(fn, case, args.repeat)
            results.add(out)
            row[label] = f"{t * 1e3:.2f}ms"
        if len(results) != 1:
            raise SystemExit(f"backends disagree on {name} {size}: {results}")
        print(f"{name:<12} {size:<8} {row['numba']:>10} {row['numpy']:>10} {row['python']:>10}")


if __name__ == "__main__":
    main()
