"""Timing comparison of the compiled and pure-numpy kernel backends.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeats 200]

Synthesizes random periodic instances of increasing size and times both
backends on the two hot paths (squared lengths, rigidity rows). The
compiled extension must have been built by the normal install; when it is
missing the script reports that and times the fallback alone.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from periframe.kernels import _prep, _slowkern

try:
    from periframe.kernels import _fastkern
except ImportError:
    _fastkern = None

SIZES = [
    (2, 2, 8),
    (2, 8, 40),
    (3, 16, 120),
    (3, 64, 600),
    (4, 128, 2000),
]


def make_instance(rng, d, n, m):
    T = np.vstack([np.zeros((1, d)), rng.uniform(-1, 1, size=(n - 1, d))])
    sym = rng.uniform(-1, 1, size=(d, d))
    omega = np.eye(d) + 0.2 * (sym + sym.T)
    tails = rng.integers(0, n, size=m)
    heads = rng.integers(0, n, size=m)
    labels = rng.integers(-2, 3, size=(m, d)).astype(np.float64)
    return _prep(T, omega, tails, heads, labels)


def time_call(fn, args, repeats):
    best = min(timeit.repeat(lambda: fn(*args), number=repeats, repeat=3))
    return best / repeats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeats", type=int, default=200, help="calls per timing sample")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    header = f"{'instance':>18} {'routine':>14} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for d, n, m in SIZES:
        inst = make_instance(rng, d, n, m)
        for name, slow_fn, fast_fn in (
            ("lengths", _slowkern.edge_lengths_sq, getattr(_fastkern, "edge_lengths_sq", None)),
            ("rigidity", _slowkern.rigidity_rows, getattr(_fastkern, "rigidity_rows", None)),
        ):
            t_slow = time_call(slow_fn, inst, args.repeats)
            label = f"d={d} n={n} m={m}"
            if fast_fn is None:
                print(f"{label:>18} {name:>14} {t_slow * 1e6:>10.1f}us {'missing':>12} {'-':>9}")
                continue
            t_fast = time_call(fast_fn, inst, args.repeats)
            check_slow = slow_fn(*inst)
            check_fast = fast_fn(*inst)
            if not np.allclose(check_slow, check_fast, atol=1e-12):
                raise SystemExit("backends disagree; benchmark aborted")
            print(
                f"{label:>18} {name:>14} {t_slow * 1e6:>10.1f}us "
                f"{t_fast * 1e6:>10.1f}us {t_slow / t_fast:>8.1f}x"
            )
    if _fastkern is None:
        print("\ncompiled extension not importable; only the fallback was timed")


if __name__ == "__main__":
    main()
