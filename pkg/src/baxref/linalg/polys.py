"""Exact polynomials attached to matrices.

Coefficient lists are ordered lowest degree first: ``[c0, c1, ..., cn]``
stands for ``c0 + c1 t + ... + cn t**n``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..scalars import Scalar, ScalarLike, as_scalar
from .matrix import Matrix

__all__ = [
    "minimal_polynomial",
    "char_polynomial",
    "poly_eval_matrix",
    "poly_divmod",
    "poly_mul",
    "poly_from_roots",
    "poly_gcd",
    "squarefree_decomposition",
    "rational_roots",
    "poly_str",
]


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p: Sequence[ScalarLike], r: Sequence[ScalarLike]) -> list[Scalar]:
    p = [as_scalar(c) for c in p]
    r = [as_scalar(c) for c in r]
    out = [Scalar(0)] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(r):
            out[i + j] = out[i + j] + a * b
    return _trim(out)


def poly_from_roots(roots: Sequence[ScalarLike]) -> list[Scalar]:
    out = [Scalar(1)]
    for r in roots:
        out = poly_mul(out, [-as_scalar(r), 1])
    return out


def poly_divmod(num: Sequence[ScalarLike], den: Sequence[ScalarLike]) -> tuple[list[Scalar], list[Scalar]]:
    num = _trim([as_scalar(c) for c in num])
    den = _trim([as_scalar(c) for c in den])
    if len(den) == 1 and den[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [Scalar(0)], num
    quot = [Scalar(0)] * (len(num) - len(den) + 1)
    rem = list(num)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = rem[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for j, dc in enumerate(den):
                rem[k + j] = rem[k + j] - c * dc
    rem = _trim(rem[:len(den) - 1] or [Scalar(0)])
    return _trim(quot), rem


def poly_gcd(p: Sequence[ScalarLike], r: Sequence[ScalarLike]) -> list[Scalar]:
    """Monic gcd by the Euclidean algorithm."""
    a = _trim([as_scalar(c) for c in p])
    b = _trim([as_scalar(c) for c in r])
    while not (len(b) == 1 and b[0] == 0):
        _, rem = poly_divmod(a, b)
        a, b = b, rem
    lead = a[-1]
    if lead == 0:
        return [Scalar(0)]
    return [c / lead for c in a]


def _derivative(p: Sequence[Scalar]) -> list[Scalar]:
    if len(p) == 1:
        return [Scalar(0)]
    return [p[k] * k for k in range(1, len(p))]


def squarefree_decomposition(p: Sequence[ScalarLike]) -> list[tuple[list[Scalar], int]]:
    """Yun's algorithm: ``p = lead * prod f_i**i`` with squarefree coprime ``f_i``."""
    p = _trim([as_scalar(c) for c in p])
    lead = p[-1]
    p = [c / lead for c in p]
    out = []
    a = poly_gcd(p, _derivative(p))
    b, _ = poly_divmod(p, a)
    c, _ = poly_divmod(_derivative(p), a)
    d = [ci - bi for ci, bi in zip(_pad(c, len(b)), _pad(_derivative(b), len(b)))]
    i = 1
    while len(b) > 1:
        a = poly_gcd(b, _trim(d))
        if len(a) > 1:
            out.append((a, i))
        b, _ = poly_divmod(b, a)
        c, _ = poly_divmod(_trim(d), a)
        d = [ci - bi for ci, bi in zip(_pad(c, len(b)), _pad(_derivative(b), len(b)))]
        i += 1
    return out


def _pad(p: Sequence[Scalar], n: int) -> list[Scalar]:
    return list(p) + [Scalar(0)] * (n - len(p))


def _horner(p: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = Scalar(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def rational_roots(p: Sequence[ScalarLike]) -> list[tuple[Fraction, int]]:
    """Exact rational roots with multiplicities (``p`` must have rational coefficients)."""
    roots = []
    for factor, mult in squarefree_decomposition(p):
        coeffs = [c.rational() for c in factor]
        for r in _rational_roots_squarefree(coeffs):
            roots.append((r, mult))
    roots.sort()
    return roots


def _rational_roots_squarefree(coeffs: list[Fraction]) -> list[Fraction]:
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    found: list[Fraction] = []
    if ints[0] == 0:
        found.append(Fraction(0))
        k = 0
        while ints[k] == 0:
            k += 1
        ints = ints[k:]
    if len(ints) <= 1:
        return found
    lead, const = abs(ints[-1]), abs(ints[0])

    def is_root(r: Fraction) -> bool:
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * r + c
        return acc == 0

    cands: set[Fraction] = set()
    # numeric candidates snapped to denominators dividing the leading coefficient
    approx = np.roots([float(c) for c in reversed(ints)])
    for z in approx:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            continue
        cands.add(Fraction(z.real).limit_denominator(lead))
    if lead < 10**6 and const < 10**6:
        for pn in _divisors(const):
            for qd in _divisors(lead):
                cands.add(Fraction(pn, qd))
                cands.add(Fraction(-pn, qd))
    found.extend(sorted(r for r in cands if is_root(r)))
    return found


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def poly_eval_matrix(p: Sequence[ScalarLike], A: Matrix) -> Matrix:
    out = Matrix.zeros(A.dim, A.factors)
    for c in reversed([as_scalar(c) for c in p]):
        out = out @ A + Matrix.identity(A.dim, A.factors).scale(c)
    return out


def char_polynomial(A: Matrix) -> list[Scalar]:
    """Characteristic polynomial ``det(t I - A)`` by Faddeev-LeVerrier."""
    n = A.dim
    coeffs: list[Scalar] = [Scalar(0)] * (n + 1)
    coeffs[n] = Scalar(1)
    eye = Matrix.identity(n, A.factors)
    M = Matrix.zeros(n, A.factors)
    for k in range(1, n + 1):
        M = A @ M + eye.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(A @ M).trace() / k
    return coeffs


def minimal_polynomial(A: Matrix) -> list[Scalar]:
    """Monic minimal polynomial via a linear-dependence search on ``vec(A**k)``."""
    if A.is_rational:
        return _minpoly_rational(A)
    return _minpoly_generic(A)


def _minpoly_rational(A: Matrix) -> list[Scalar]:
    # Dependence is scale invariant, so each power is kept as a normalized
    # integer matrix; exact coefficients come from _solve_monic afterwards.
    n = A.dim
    N = Matrix(A.num)
    power = Matrix.identity(n)
    basis: list[tuple[int, np.ndarray]] = []
    for k in range(n + 1):
        if k:
            power = power @ N
        v = power.num.ravel().copy()
        v = _reduce(v, basis)
        if not any(x != 0 for x in v):
            return _solve_monic(A, k)
        piv = int(np.flatnonzero(v != 0)[0])
        basis.append((piv, v))
    raise AssertionError("Cayley-Hamilton bound exceeded")  # pragma: no cover


def _reduce(v, basis):
    for piv, b in basis:
        c = v[piv]
        if c == 0:
            continue
        p = b[piv]
        v = v * p - b * c
        g = math.gcd(*v.tolist())
        if g > 1:
            v = v // g
    return v


def _solve_monic(A: Matrix, k: int) -> list[Scalar]:
    """Coefficients of the monic degree-k relation among I, A, ..., A^k."""
    n = A.dim
    powers = [Matrix.identity(n, A.factors)]
    for _ in range(k):
        powers.append(powers[-1] @ A)
    # unknowns c_0..c_{k-1}: sum c_j vec(A^j) = -vec(A^k)
    den = 1
    for P in powers:
        den = math.lcm(den, P.den)
    cols = [P.num * (den // P.den) for P in powers]
    if A.rad is not None:
        rcols = [(P.rad if P.rad is not None else np.zeros_like(P.num)) * (den // P.den) for P in powers]
    else:
        rcols = None
    sol = _solve_overdetermined(cols, rcols, A.d)
    return sol + [Scalar(1)]


def _solve_overdetermined(cols, rcols, d) -> list[Scalar]:
    """Solve sum_j c_j col_j = -col_k exactly (consistent system) over Q(sqrt d)."""
    k = len(cols) - 1
    m = cols[0].size
    flat = [c.ravel() for c in cols]
    rflat = None if rcols is None else [c.ravel() for c in rcols]
    # greedy row selection: only rows that raise the rank are kept
    pivots: list[int] = []
    reduced: list[list[Scalar]] = []
    for i in range(m):
        if rflat is None:
            row = [Scalar(int(flat[j][i])) for j in range(k)] + [Scalar(-int(flat[k][i]))]
        else:
            row = [Scalar(int(flat[j][i]), int(rflat[j][i]), d) for j in range(k)]
            row.append(-Scalar(int(flat[k][i]), int(rflat[k][i]), d))
        if not any(row):
            continue
        r = list(row)
        for piv, b in zip(pivots, reduced):
            if r[piv]:
                f = r[piv] / b[piv]
                r = [x - f * y for x, y in zip(r, b)]
        nz = [j for j in range(k) if r[j]]
        if not nz:
            continue
        pivots.append(nz[0])
        reduced.append(r)
        if len(pivots) == k:
            break
    # back substitution
    sol = [Scalar(0)] * k
    for piv, r in sorted(zip(pivots, reduced), key=lambda t: -t[0]):
        acc = r[k]
        for j in range(piv + 1, k):
            acc = acc - r[j] * sol[j]
        sol[piv] = acc / r[piv]
    return sol


def _minpoly_generic(A: Matrix) -> list[Scalar]:
    n = A.dim
    power = Matrix.identity(n, A.factors)
    basis: list[tuple[int, list[Scalar]]] = []
    for k in range(n + 1):
        if k:
            power = power @ A
        v = [x for row in power.entries() for x in row]
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        nz = [i for i, x in enumerate(v) if x]
        if not nz:
            return _solve_monic(A, k)
        basis.append((nz[0], v))
    raise AssertionError("Cayley-Hamilton bound exceeded")  # pragma: no cover


def poly_str(p: Sequence[ScalarLike], var: str = "t") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = as_scalar(p[k])
        if not c:
            continue
        cs = str(c)
        if k == 0:
            terms.append(f"({cs})")
        elif k == 1:
            terms.append(f"({cs})*{var}")
        else:
            terms.append(f"({cs})*{var}^{k}")
    return " + ".join(terms) if terms else "0"
