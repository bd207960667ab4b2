"""Exact scalars: elements of Q or of a real quadratic extension Q(sqrt(d)).

A :class:`Scalar` stores ``a + b*sqrt(d)`` with ``a`` and ``b`` reduced
fractions and ``d`` a square-free integer >= 2.  Pure rationals carry
``b == 0`` and ``d == 0``, so they combine freely with any extension.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Union

__all__ = [
    "Scalar",
    "ScalarLike",
    "as_scalar",
    "sqrt_exact",
    "squarefree_kernel",
    "sample_generic",
    "parse_scalar",
]

ScalarLike = Union["Scalar", int, Fraction]


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Split ``n > 0`` as ``s**2 * k`` with ``k`` square-free; return ``(s, k)``."""
    if n <= 0:
        raise ValueError("squarefree_kernel needs a positive integer")
    s, k = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            k *= p
        p += 1 if p == 2 else 2
    return s, k * n


def _is_squarefree(d: int) -> bool:
    return d >= 2 and squarefree_kernel(d)[1] == d


def _rational_sqrt(r: Fraction) -> Optional[Fraction]:
    if r < 0:
        return None
    sn, sd = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if sn * sn == r.numerator and sd * sd == r.denominator:
        return Fraction(sn, sd)
    return None


class Scalar:
    """Immutable exact number ``a + b*sqrt(d)``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Union[int, Fraction, str] = 0, b: Union[int, Fraction] = 0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("only real quadratic extensions are supported (d >= 0)")
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        elif d == 1:
            a, b, d = a + b, Fraction(0), 0
        elif not _is_squarefree(d):
            s, k = squarefree_kernel(d)
            b, d = b * s, k
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "Scalar":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # --- helpers -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def _join(self, other: "Scalar") -> int:
        if self.d == other.d or other.d == 0:
            return self.d
        if self.d == 0:
            return other.d
        raise ValueError(f"incompatible radicands: sqrt({self.d}) vs sqrt({other.d})")

    # --- field operations ---------------------------------------------
    def __add__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        d = self._join(o)
        return _make(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        d = self._join(o)
        return _make(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        d = self._join(o)
        a = self.a * o.a + d * self.b * o.b
        b = self.a * o.b + self.b * o.a
        return _make(a, b, d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar._raw(self.a / n, -self.b / n if self.b else Fraction(0), self.d)

    def __truediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        self._join(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- comparison ----------------------------------------------------
    def __eq__(self, other):
        o = as_scalar(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def sign(self) -> int:
        """Sign of the real number represented (exact)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with d b^2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # --- text ------------------------------------------------------------
    def __str__(self):
        head = f"{self.a.numerator}/{self.a.denominator}"
        if self.b == 0:
            return head
        sign = "-" if self.b < 0 else "+"
        b = abs(self.b)
        return f"{head}{sign}{b.numerator}/{b.denominator}*sqrt({self.d})"

    def __repr__(self):
        return f"Scalar('{self}')"

    def __reduce__(self):
        return (Scalar, (self.a, self.b, self.d))


def _make(a: Fraction, b: Fraction, d: int) -> Scalar:
    if b == 0:
        return Scalar._raw(a, Fraction(0), 0)
    return Scalar._raw(a, b, d)


ZERO = Scalar._raw(Fraction(0), Fraction(0), 0)
ONE = Scalar._raw(Fraction(1), Fraction(0), 0)


def as_scalar(x, strict: bool = True):
    """Coerce ints, fractions and numeric strings to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Scalar._raw(Fraction(x), Fraction(0), 0)
    if isinstance(x, str):
        return parse_scalar(x)
    if strict:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return NotImplemented


_FRAC = r"[+-]?\d+(?:/\d+)?"
_GRAMMAR = re.compile(
    rf"^\s*(?P<a>{_FRAC})\s*(?:(?P<sign>[+-])\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\))?\s*$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` or ``"p/q+r/s*sqrt(d)"`` (denominators optional)."""
    m = _GRAMMAR.match(text)
    if not m:
        raise ValueError(f"malformed scalar string: {text!r}")
    a = Fraction(m.group("a"))
    if m.group("b") is None:
        return Scalar(a)
    b = Fraction(m.group("b"))
    if m.group("sign") == "-":
        b = -b
    return Scalar(a, b, int(m.group("d")))


def sqrt_exact(s: ScalarLike, d: Optional[int] = None) -> Optional[Scalar]:
    """Square root of ``s`` inside Q(sqrt(d)), or ``None`` if there is none.

    The ambient radicand is ``s.d`` when ``s`` is irrational, otherwise the
    optional ``d`` argument (default: pure rationals).
    """
    s = as_scalar(s)
    if s.b == 0:
        r = _rational_sqrt(s.a)
        if r is not None:
            return Scalar(r)
        if d is None or d == 0:
            return None
        # s = v^2 * d with v rational
        if s.a < 0:
            return None
        v = _rational_sqrt(s.a / d)
        if v is None:
            return None
        return Scalar(0, v, d)
    if d not in (None, s.d):
        raise ValueError("ambient radicand does not match the scalar's")
    # (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 solves t^2 - a t + d b^2/4 = 0
    disc = _rational_sqrt(s.norm())
    if disc is None:
        return None
    for u2 in ((s.a + disc) / 2, (s.a - disc) / 2):
        u = _rational_sqrt(u2)
        if u is None or u == 0:
            continue
        v = s.b / (2 * u)
        r = Scalar(u, v, s.d)
        if r * r == s:
            return r
    return None


def sample_generic(
    seed: int,
    bit_bound: int = 8,
    exclude: Iterable[ScalarLike] = (),
) -> Scalar:
    """Deterministic pseudo-random nonzero rational ``p/q`` with ``|p|, q < 2**bit_bound``.

    Values in ``exclude`` are never returned; ``ValueError`` when the
    exclusion list exhausts the sample space.
    """
    if bit_bound < 2:
        raise ValueError("bit_bound must be >= 2")
    banned = {as_scalar(e) for e in exclude}
    top = 1 << bit_bound
    rng = random.Random(f"baxref:{seed}:{bit_bound}")
    for _ in range(2000):
        p = rng.randrange(1, top) * rng.choice((1, -1))
        q = rng.randrange(1, top)
        value = Scalar(Fraction(p, q))
        if value not in banned:
            return value
    # sample space might be genuinely exhausted; enumerate when small enough
    if bit_bound <= 10:
        for q in range(1, top):
            for p in range(1, top):
                for sgn in (1, -1):
                    value = Scalar(Fraction(sgn * p, q))
                    if value not in banned:
                        return value
    raise ValueError("exclusion list covers the sample space")
