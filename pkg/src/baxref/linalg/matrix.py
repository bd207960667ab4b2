"""Dense exact matrices over Q or Q(sqrt(d)) with tensor-factor metadata.

Storage is fraction-free: a matrix is ``(num + rad*sqrt(d)) / den`` where
``num`` and ``rad`` are object arrays of Python ints and ``den > 0``.
Every constructor and operation returns the normalized form
(``gcd(num, rad, den) == 1``), so equality is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..scalars import Scalar, ScalarLike, as_scalar
from ._kernels import int_matmul

__all__ = ["Matrix", "ShapeError", "SingularMatrixError"]


class ShapeError(ValueError):
    """Dimension or tensor-factor mismatch."""


class SingularMatrixError(ArithmeticError):
    """Raised when an exact elimination meets a zero pivot column."""

    def __init__(self, message: str, stage: int):
        super().__init__(message)
        self.stage = stage


def _zeros(n: int, m: Optional[int] = None) -> np.ndarray:
    out = np.empty((n, n if m is None else m), dtype=object)
    out.fill(0)
    return out


def _int_array(x) -> np.ndarray:
    arr = np.asarray(x, dtype=object)
    return arr


def _gcd_all(*arrays) -> int:
    g = 0
    for arr in arrays:
        if arr is None or arr.size == 0:
            continue
        g = math.gcd(g, *arr.ravel().tolist())
        if g == 1:
            return 1
    return g


def _scalar_parts(s: Scalar) -> tuple[int, int, int]:
    """``s = (p + r*sqrt(d)) / m`` with integers; returns ``(p, r, m)``."""
    m = s.a.denominator * s.b.denominator // math.gcd(s.a.denominator, s.b.denominator)
    p = s.a.numerator * (m // s.a.denominator)
    r = s.b.numerator * (m // s.b.denominator)
    return p, r, m


class Matrix:
    """Immutable square matrix with exact entries.

    ``factors`` lists the tensor-factor dimensions; their product is the
    matrix dimension.
    """

    __slots__ = ("num", "rad", "den", "d", "factors")

    def __init__(self, num, den: int = 1, rad=None, d: int = 0, factors: Optional[Sequence[int]] = None):
        num = _int_array(num)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {num.shape}")
        dim = num.shape[0]
        factors = (dim,) if factors is None else tuple(int(f) for f in factors)
        if math.prod(factors) != dim:
            raise ShapeError(f"factors {factors} do not multiply to dim {dim}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = -num
            rad = None if rad is None else -_int_array(rad)
            den = -den
        if rad is not None:
            rad = _int_array(rad)
            if d == 0 or not any(v != 0 for v in rad.flat):
                rad, d = None, 0
        g = _gcd_all(num, rad)
        g = math.gcd(g, den)
        if g > 1:
            num = num // g
            rad = None if rad is None else rad // g
            den //= g
        self.num = num
        self.rad = rad
        self.den = den
        self.d = int(d) if rad is not None else 0
        self.factors = factors

    # --- construction ----------------------------------------------------
    @classmethod
    def from_entries(cls, rows: Sequence[Sequence[ScalarLike]], factors: Optional[Sequence[int]] = None) -> "Matrix":
        ents = [[as_scalar(v) for v in row] for row in rows]
        n = len(ents)
        if any(len(row) != n for row in ents):
            raise ShapeError("rows must form a square array")
        ds = {v.d for row in ents for v in row if v.d}
        if len(ds) > 1:
            raise ValueError(f"entries mix radicands {sorted(ds)}")
        d = ds.pop() if ds else 0
        den = 1
        for row in ents:
            for v in row:
                den = den * v.a.denominator // math.gcd(den, v.a.denominator)
                den = den * v.b.denominator // math.gcd(den, v.b.denominator)
        num = _zeros(n)
        rad = _zeros(n) if d else None
        for i, row in enumerate(ents):
            for j, v in enumerate(row):
                num[i, j] = v.a.numerator * (den // v.a.denominator)
                if d:
                    rad[i, j] = v.b.numerator * (den // v.b.denominator)
        return cls(num, den, rad, d, factors)

    @classmethod
    def identity(cls, dim: int, factors: Optional[Sequence[int]] = None) -> "Matrix":
        num = _zeros(dim)
        for i in range(dim):
            num[i, i] = 1
        return cls(num, 1, None, 0, factors)

    @classmethod
    def zeros(cls, dim: int, factors: Optional[Sequence[int]] = None) -> "Matrix":
        return cls(_zeros(dim), 1, None, 0, factors)

    @classmethod
    def diag(cls, values: Sequence[ScalarLike], factors: Optional[Sequence[int]] = None) -> "Matrix":
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_entries(rows, factors)

    @classmethod
    def unit(cls, dim: int, i: int, j: int) -> "Matrix":
        """Matrix unit ``e_ij`` (0-based)."""
        num = _zeros(dim)
        num[i, j] = 1
        return cls(num)

    # --- basic properties ------------------------------------------------
    @property
    def dim(self) -> int:
        return self.num.shape[0]

    @property
    def is_rational(self) -> bool:
        return self.rad is None

    def with_factors(self, factors: Sequence[int]) -> "Matrix":
        return Matrix(self.num, self.den, self.rad, self.d, factors)

    def __getitem__(self, idx) -> Scalar:
        i, j = idx
        a = Fraction(int(self.num[i, j]), self.den)
        if self.rad is None:
            return Scalar(a)
        return Scalar(a, Fraction(int(self.rad[i, j]), self.den), self.d)

    def entries(self) -> list[list[Scalar]]:
        n = self.dim
        return [[self[i, j] for j in range(n)] for i in range(n)]

    def is_zero(self) -> bool:
        return self.rad is None and not any(v != 0 for v in self.num.flat)

    def nonzero_witness(self) -> Optional[tuple[int, int]]:
        """First (row, col) with a nonzero entry, or ``None``."""
        for arr in (self.num, self.rad):
            if arr is None:
                continue
            nz = np.argwhere(arr != 0)
            if len(nz):
                return int(nz[0][0]), int(nz[0][1])
        return None

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.dim != other.dim or self.den != other.den or self.d != other.d:
            return False
        if (self.rad is None) != (other.rad is None):
            return False
        if not np.array_equal(self.num, other.num):
            return False
        return self.rad is None or np.array_equal(self.rad, other.rad)

    __hash__ = None

    def __repr__(self):
        return f"Matrix(dim={self.dim}, factors={list(self.factors)}, den={self.den}, d={self.d})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.entries())

    # --- field plumbing --------------------------------------------------
    def _check_dims(self, other: "Matrix"):
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")

    @staticmethod
    def _join_d(x: "Matrix", y: "Matrix") -> int:
        if x.d and y.d and x.d != y.d:
            raise ValueError(f"incompatible radicands: sqrt({x.d}) vs sqrt({y.d})")
        return x.d or y.d

    def _bilinear(self, other: "Matrix", op, factors) -> "Matrix":
        d = self._join_d(self, other)
        num = op(self.num, other.num)
        rad = None
        if self.rad is not None and other.rad is not None:
            num = num + d * op(self.rad, other.rad)
        if self.rad is not None or other.rad is not None:
            parts = []
            if other.rad is not None:
                parts.append(op(self.num, other.rad))
            if self.rad is not None:
                parts.append(op(self.rad, other.num))
            rad = parts[0] if len(parts) == 1 else parts[0] + parts[1]
        return Matrix(num, self.den * other.den, rad, d, factors)

    # --- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Matrix):
            return self + Matrix.identity(self.dim, self.factors).scale(other)
        self._check_dims(other)
        d = self._join_d(self, other)
        g = math.gcd(self.den, other.den)
        ls, lo = other.den // g, self.den // g
        num = self.num * ls + other.num * lo
        rad = None
        if self.rad is not None or other.rad is not None:
            rad = (self.rad * ls if self.rad is not None else 0) + (other.rad * lo if other.rad is not None else 0)
        return Matrix(num, self.den * ls, rad, d, self.factors)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Matrix(-self.num, self.den, None if self.rad is None else -self.rad, self.d, self.factors)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return self + (-as_scalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: ScalarLike) -> "Matrix":
        s = as_scalar(s)
        if s.d and self.d and s.d != self.d:
            raise ValueError(f"incompatible radicands: sqrt({s.d}) vs sqrt({self.d})")
        p, r, m = _scalar_parts(s)
        d = self.d or s.d
        num = self.num * p
        rad = None
        if self.rad is not None:
            num = num + self.rad * (r * d)
            rad = self.rad * p
        if r:
            rad = self.num * r if rad is None else rad + self.num * r
        return Matrix(num, self.den * m, rad, d, self.factors)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(as_scalar(other).inverse())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_dims(other)
        factors = self.factors if self.factors == other.factors else (self.dim,)
        return self._bilinear(other, int_matmul, factors)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.dim, self.factors)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.num.T.copy(), self.den, None if self.rad is None else self.rad.T.copy(), self.d, self.factors)

    def trace(self) -> Scalar:
        a = Fraction(int(np.trace(self.num)), self.den)
        if self.rad is None:
            return Scalar(a)
        return Scalar(a, Fraction(int(np.trace(self.rad)), self.den), self.d)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    # --- fraction-free elimination ---------------------------------------
    def _real_form(self) -> tuple[np.ndarray, int]:
        """Integer matrix ``M`` with ``self = M / den`` over Q, or the 2n x 2n
        regular representation ``[[A, d B], [B, A]]`` over Q(sqrt(d))."""
        if self.rad is None:
            return self.num, self.den
        n = self.dim
        big = _zeros(2 * n)
        big[:n, :n] = self.num
        big[n:, n:] = self.num
        big[:n, n:] = self.rad * self.d
        big[n:, :n] = self.rad
        return big, self.den

    def inverse(self) -> "Matrix":
        """Exact inverse by fraction-free Gauss-Jordan elimination."""
        M, den = self._real_form()
        adj, det = _montante_inverse(M)
        n = self.dim
        # M^-1 = adj / det ; self^-1 = den * M^-1
        if self.rad is None:
            return Matrix(adj * den, det, None, 0, self.factors)
        num = adj[:n, :n]
        rad = adj[n:, :n]
        return Matrix(num * den, det, rad * den, self.d, self.factors)

    def rank(self) -> int:
        M, _ = self._real_form()
        r = _bareiss_rank(M)
        return r if self.rad is None else r // 2

    # --- tensor structure -------------------------------------------------
    def kron(self, other: "Matrix") -> "Matrix":
        def op(x, y):
            n, m = x.shape[0], y.shape[0]
            return np.multiply.outer(x, y).transpose(0, 2, 1, 3).reshape(n * m, n * m)

        return self._bilinear(other, op, self.factors + other.factors)

    def map_parts(self, fn, factors: Sequence[int]) -> "Matrix":
        """Apply a linear index map ``fn`` to both integer parts."""
        return Matrix(fn(self.num), self.den, None if self.rad is None else fn(self.rad), self.d, factors)

    # --- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "factors": list(self.factors),
            "entries": [str(v) for row in self.entries() for v in row],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        dim = int(obj["dim"])
        ents = [as_scalar(s) for s in obj["entries"]]
        if len(ents) != dim * dim:
            raise ShapeError("entry count does not match dim")
        rows = [ents[i * dim:(i + 1) * dim] for i in range(dim)]
        return cls.from_entries(rows, obj.get("factors"))


def _montante_inverse(M: np.ndarray) -> tuple[np.ndarray, int]:
    """Bareiss-Montante Gauss-Jordan on ``[M | I]``.

    Returns ``(adj, det)`` with ``M^-1 = adj / det``; all divisions exact.
    """
    n = M.shape[0]
    aug = _zeros(n, 2 * n)
    aug[:, :n] = M
    for i in range(n):
        aug[i, n + i] = 1
    prev = 1
    for k in range(n):
        piv = None
        for r in range(k, n):
            if aug[r, k] != 0:
                piv = r
                break
        if piv is None:
            raise SingularMatrixError(f"singular matrix: no pivot in column {k} (elimination stage {k})", k)
        if piv != k:
            aug[[k, piv]] = aug[[piv, k]]
        pk = aug[k, k]
        others = np.array([i for i in range(n) if i != k], dtype=np.intp)
        if len(others):
            col = aug[others, k].reshape(-1, 1)
            aug[others] = (aug[others] * pk - col * aug[k].reshape(1, -1)) // prev
        prev = pk
    det = prev
    # left block is now det * I (rows scaled consistently)
    return aug[:, n:], det


def _bareiss_rank(M: np.ndarray) -> int:
    A = M.copy()
    rows, cols = A.shape
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        pk = A[r, c]
        if r + 1 < rows:
            below = A[r + 1:, :]
            col = below[:, c].reshape(-1, 1)
            A[r + 1:, :] = (below * pk - col * A[r].reshape(1, -1)) // prev
        prev = pk
        r += 1
        if r == rows:
            break
    return r
