"""Tensor-product operations on :class:`Matrix`.

Sites are 1-based throughout, matching the chain conventions
(``R_n`` acts on factors ``n, n+1``).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .matrix import Matrix, ShapeError

__all__ = [
    "kron",
    "embed",
    "embed_sites",
    "weighted_partial_trace",
    "partial_trace",
    "apply_left",
    "apply_right",
    "insert_identity",
    "commutator_is_zero",
    "flip",
]


def kron(*ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = out.kron(m)
    return out


def flip(n: int) -> Matrix:
    """The swap ``P`` on ``V (x) V`` with ``dim V = n``."""
    num = np.zeros((n * n, n * n), dtype=object)
    for i in range(n):
        for j in range(n):
            num[i * n + j, j * n + i] = 1
    return Matrix(num, factors=(n, n))


def _check_site(site: int, shape: Sequence[int]):
    if not 1 <= site <= len(shape):
        raise ShapeError(f"site {site} out of range for shape {list(shape)}")


def embed(op: Matrix, site: int, shape: Sequence[int]) -> Matrix:
    """``I (x) ... (x) op (x) ... (x) I`` with ``op`` on consecutive factors from ``site``."""
    shape = tuple(shape)
    k = len(op.factors)
    _check_site(site, shape)
    if site - 1 + k > len(shape) or tuple(shape[site - 1:site - 1 + k]) != tuple(op.factors):
        raise ShapeError(
            f"operator factors {list(op.factors)} do not match shape {list(shape)} at site {site}"
        )
    before = math.prod(shape[:site - 1])
    after = math.prod(shape[site - 1 + k:])
    out = op
    if before > 1:
        out = Matrix.identity(before, shape[:site - 1]).kron(out)
    if after > 1:
        out = out.kron(Matrix.identity(after, shape[site - 1 + k:]))
    return out.with_factors(shape)


def embed_sites(op: Matrix, sites: Sequence[int], shape: Sequence[int]) -> Matrix:
    """Embed ``op`` acting on arbitrary (possibly non-adjacent, reordered) sites.

    ``op``'s j-th tensor factor is placed on ``sites[j]``.
    """
    shape = tuple(shape)
    sites = tuple(sites)
    if len(set(sites)) != len(sites):
        raise ShapeError("repeated site in embedding")
    for s in sites:
        _check_site(s, shape)
    if tuple(shape[s - 1] for s in sites) != tuple(op.factors):
        raise ShapeError(f"operator factors {list(op.factors)} do not match sites {list(sites)} of {list(shape)}")
    if sites == tuple(range(sites[0], sites[0] + len(sites))):
        return embed(op, sites[0], shape)
    rest = [s for s in range(1, len(shape) + 1) if s not in sites]
    order = list(sites) + rest  # factor order of op (x) I_rest
    rest_dim = math.prod(shape[s - 1] for s in rest)
    big = op.kron(Matrix.identity(rest_dim, tuple(shape[s - 1] for s in rest)))
    dims = [shape[s - 1] for s in order]
    nf = len(shape)
    # axis j of the big tensor is site order[j]; move to natural order
    perm = [order.index(s) for s in range(1, nf + 1)]
    D = math.prod(shape)

    def fn(arr):
        t = arr.reshape(dims + dims)
        t = t.transpose(perm + [p + nf for p in perm])
        return np.ascontiguousarray(t).reshape(D, D)

    return big.map_parts(fn, shape)


def _split(factors: Sequence[int], site: int) -> tuple[int, int, int]:
    before = math.prod(factors[:site - 1])
    return before, factors[site - 1], math.prod(factors[site:])


def weighted_partial_trace(E: Matrix, site: int, W: Matrix) -> Matrix:
    """``Tr_site(W_site E)``; the traced factor is removed from the result."""
    factors = tuple(E.factors)
    _check_site(site, factors)
    a, n, b = _split(factors, site)
    if W.dim != n:
        raise ShapeError(f"weight of dim {W.dim} does not act on factor of dim {n}")
    out_factors = factors[:site - 1] + factors[site:]
    dim = a * b

    def op(e, w):
        t = e.reshape(a, n, b, a, n, b)
        # sum_{s,k} W[s,k] E[(i,k,j),(i',s,j')]
        r = np.tensordot(t, w, axes=([1, 4], [1, 0]))
        return r.reshape(dim, dim)

    out = E._bilinear(W, op, out_factors if out_factors else (1,))
    return out


def partial_trace(E: Matrix, site: int) -> Matrix:
    n = E.factors[site - 1]
    return weighted_partial_trace(E, site, Matrix.identity(n))


def insert_identity(M: Matrix, site: int, n: int) -> Matrix:
    """Inverse bookkeeping of a trace: tensor in ``I_n`` at position ``site``."""
    factors = tuple(M.factors) if M.dim > 1 or M.factors != (1,) else ()
    if not 1 <= site <= len(factors) + 1:
        raise ShapeError(f"cannot insert at site {site} into {list(factors)}")
    new = factors[:site - 1] + (n,) + factors[site - 1:]
    a = math.prod(factors[:site - 1])
    b = math.prod(factors[site - 1:])
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1

    def fn(arr):
        t = arr.reshape(a, b, a, b)
        big = np.multiply.outer(t, eye)  # (a,b,a',b',n,n')
        big = big.transpose(0, 4, 1, 2, 5, 3)
        return np.ascontiguousarray(big).reshape(a * n * b, a * n * b)

    return M.map_parts(fn, new)


def _local(op: Matrix, site: int, M: Matrix, left: bool) -> Matrix:
    factors = tuple(M.factors)
    k = len(op.factors)
    if site < 1 or site - 1 + k > len(factors) or tuple(factors[site - 1:site - 1 + k]) != tuple(op.factors):
        raise ShapeError(f"operator factors {list(op.factors)} do not match {list(factors)} at site {site}")
    a = math.prod(factors[:site - 1])
    n = op.dim
    b = math.prod(factors[site - 1 + k:])
    D = M.dim

    if left:
        def fn(x, y):
            t = y.reshape(a, n, b * D)
            r = np.tensordot(x, t, axes=([1], [1]))  # (n, a, bD)
            return np.ascontiguousarray(r.transpose(1, 0, 2)).reshape(D, D)

        return op._bilinear(M, fn, factors)

    def fn(x, y):
        t = x.reshape(D * a, n, b)
        r = np.tensordot(t, y, axes=([1], [0]))  # (Da, b, n)
        return np.ascontiguousarray(r.transpose(0, 2, 1)).reshape(D, D)

    return M._bilinear(op, fn, factors)


def apply_left(op: Matrix, site: int, M: Matrix) -> Matrix:
    """``embed(op, site) @ M`` without forming the embedded matrix."""
    return _local(op, site, M, left=True)


def apply_right(M: Matrix, op: Matrix, site: int) -> Matrix:
    """``M @ embed(op, site)`` without forming the embedded matrix."""
    return _local(op, site, M, left=False)


def commutator_is_zero(A: Matrix, B: Matrix) -> bool:
    if A.dim != B.dim:
        raise ShapeError(f"dimension mismatch: {A.dim} vs {B.dim}")
    return (A @ B - B @ A).is_zero()
