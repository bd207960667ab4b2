"""Exact integer matrix products.

Matrices reach this module as object arrays of Python ints.  Three paths:

* small operands: numpy's object ``dot`` (bignum arithmetic per entry);
* entries small enough that the product fits in int64: one native matmul;
* otherwise a multimodular product: residues mod several 31-bit primes,
  a native modular matmul per prime, then Garner/CRT reconstruction.

The per-prime kernel is numba-compiled unless ``BAXREF_NUMBA=0`` is set,
in which case a pure-numpy split-word kernel is used instead.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "matmul_mod",
    "matmul_mod_numpy",
    "int_matmul",
    "PRIMES",
]

_WANT_NUMBA = os.environ.get("BAXREF_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")

# dims below this use object dot directly unless the int64 path applies
MULTIMODULAR_MIN_DIM = int(os.environ.get("BAXREF_MULTIMODULAR_MIN_DIM", "24"))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_table(count: int) -> tuple[int, ...]:
    out = []
    n = (1 << 31) - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


PRIMES = _prime_table(64)


def matmul_mod_numpy(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``(a @ b) % p`` for int64 inputs in ``[0, p)``, ``p < 2**31``.

    Splits ``a`` into 16-bit halves so no partial sum leaves int64
    (valid for inner dimension below 2**16).
    """
    lo = a & 0xFFFF
    hi = a >> 16
    c_hi = (hi @ b) % p
    c_lo = (lo @ b) % p
    return ((c_hi << 16) + c_lo) % p


try:
    if not _WANT_NUMBA:
        raise ImportError("numba disabled by BAXREF_NUMBA")
    from numba import njit

    @njit(cache=True, nogil=True)
    def _matmul_mod_numba(a, bt, p):
        # a: (n, m), bt = b.T: (k, m), entries in [0, p) with p < 2**31.
        # Each product is < 2**62, so four of them fit in uint64 before a reduction.
        n, m = a.shape
        k = bt.shape[0]
        pu = np.uint64(p)
        out = np.empty((n, k), dtype=np.int64)
        for i in range(n):
            for j in range(k):
                acc = np.uint64(0)
                for t in range(m):
                    acc += np.uint64(a[i, t]) * np.uint64(bt[j, t])
                    if (t & 3) == 3:
                        acc %= pu
                out[i, j] = np.int64(acc % pu)
        return out

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - exercised via BAXREF_NUMBA=0
    _matmul_mod_numba = None
    NUMBA_ENABLED = False


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Modular int64 matmul through the selected kernel."""
    if NUMBA_ENABLED:
        return _matmul_mod_numba(np.ascontiguousarray(a), np.ascontiguousarray(b.T), np.int64(p))
    return matmul_mod_numpy(a, b, p)


def _max_abs(x: np.ndarray) -> int:
    if x.size == 0:
        return 0
    return max(abs(int(v)) for v in x.flat)


_INT64_LIMIT = (1 << 62)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two object arrays of Python ints."""
    n, m = a.shape
    k = b.shape[1]
    if n == 0 or m == 0 or k == 0:
        return np.zeros((n, k), dtype=object)
    amax = _max_abs(a)
    bmax = _max_abs(b)
    if amax == 0 or bmax == 0:
        return np.zeros((n, k), dtype=object)
    bound = m * amax * bmax
    if bound < _INT64_LIMIT:
        return (a.astype(np.int64) @ b.astype(np.int64)).astype(object)
    if max(n, m, k) < MULTIMODULAR_MIN_DIM:
        return a.dot(b)
    return _multimodular(a, b, bound)


def _multimodular(a: np.ndarray, b: np.ndarray, bound: int) -> np.ndarray:
    need = 2 * bound + 1
    primes = []
    modulus = 1
    for p in PRIMES:
        primes.append(p)
        modulus *= p
        if modulus > need:
            break
    else:
        # entries too large for the prime table; bignum dot is still exact
        return a.dot(b)
    residues = []
    for p in primes:
        ap = (a % p).astype(np.int64)
        bp = (b % p).astype(np.int64)
        residues.append(matmul_mod(ap, bp, p))
    # Garner: mixed-radix digits in int64
    digits = [residues[0]]
    for i in range(1, len(primes)):
        p = primes[i]
        t = residues[i].copy()
        for j in range(i):
            inv = pow(primes[j] % p, -1, p)
            t = ((t - digits[j]) % p) * inv % p
        digits.append(t)
    out = digits[-1].astype(object)
    for j in range(len(primes) - 2, -1, -1):
        out = out * primes[j] + digits[j].astype(object)
    half = modulus // 2
    return np.where(out > half, out - modulus, out)
