"""Benchmark the exact integer matmul kernels: numba vs numpy.

Three timings per size:
  * ``mod``: one modular int64 matmul, numba kernel vs numpy split-word kernel;
  * ``exact``: full multimodular product (residues + CRT) with each kernel,
    against numpy's bignum object ``dot`` as the reference;
  * every result is checked for exact equality with the reference.

Usage: python benchmarks/bench_kernels.py [--sizes 16,32,64] [--digits 60] [--repeat 3] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from baxref.linalg import _kernels as K  # noqa: E402


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _random_object(n: int, digits: int, rng: random.Random) -> np.ndarray:
    top = 10 ** digits
    arr = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            arr[i, j] = rng.randrange(-top, top)
    return arr


def _exact_with(kernel_numba: bool, a, b, bound):
    saved = K.NUMBA_ENABLED
    K.NUMBA_ENABLED = kernel_numba and saved
    try:
        return K._multimodular(a, b, bound)
    finally:
        K.NUMBA_ENABLED = saved


def run(sizes, digits: int, repeat: int) -> list[dict]:
    rng = random.Random(20240601)
    p = K.PRIMES[0]
    rows = []
    if K.NUMBA_ENABLED:  # compile outside the timed region
        K.matmul_mod(np.ones((2, 2), dtype=np.int64), np.ones((2, 2), dtype=np.int64), p)
    for n in sizes:
        am = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        bm = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        ref_mod = K.matmul_mod_numpy(am, bm, p)
        row = {"n": n, "digits": digits, "numba_available": K.NUMBA_ENABLED}
        row["mod_numpy_s"] = _best(lambda: K.matmul_mod_numpy(am, bm, p), repeat)
        if K.NUMBA_ENABLED:
            assert np.array_equal(K.matmul_mod(am, bm, p), ref_mod)
            row["mod_numba_s"] = _best(lambda: K.matmul_mod(am, bm, p), repeat)

        a = _random_object(n, digits, rng)
        b = _random_object(n, digits, rng)
        bound = n * K._max_abs(a) * K._max_abs(b)
        ref = a.dot(b)
        row["exact_object_dot_s"] = _best(lambda: a.dot(b), repeat)
        out_np = _exact_with(False, a, b, bound)
        assert (out_np == ref).all(), "numpy multimodular product is not exact"
        row["exact_multimodular_numpy_s"] = _best(lambda: _exact_with(False, a, b, bound), repeat)
        if K.NUMBA_ENABLED:
            out_nb = _exact_with(True, a, b, bound)
            assert (out_nb == ref).all(), "numba multimodular product is not exact"
            row["exact_multimodular_numba_s"] = _best(lambda: _exact_with(True, a, b, bound), repeat)
        row["exact_match"] = True
        rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="16,32,64,128")
    ap.add_argument("--digits", type=int, default=60, help="decimal digits of the bignum entries")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", default=None, help="also write the rows as JSON")
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = run(sizes, args.digits, args.repeat)
    cols = ["n", "mod_numpy_s", "mod_numba_s", "exact_object_dot_s", "exact_multimodular_numpy_s",
            "exact_multimodular_numba_s"]
    print(" ".join(f"{c:>28}" for c in cols))
    for r in rows:
        print(" ".join(f"{r.get(c, float('nan')):>28.6g}" if c != "n" else f"{r[c]:>28}" for c in cols))
    if args.json:
        Path(args.json).write_text(json.dumps(rows, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
