"""Concrete R-matrix representations of the Hecke and BMW algebras.

Hecke type: the Drinfeld-Jimbo R-matrix of U_q(gl(N)) (Eq. "drjr").
BMW type: the standard SO_q(N) / Sp_q(2m) R-matrices (Remark 7 for nu).

Basis of V (x) V is row-major: ``(i, j) -> i*N + j`` with 0-based ``i, j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .linalg import Matrix, SingularMatrixError, embed, flip, kron, partial_trace, weighted_partial_trace
from .scalars import Scalar, ScalarLike, as_scalar

__all__ = [
    "Representation",
    "RepresentationError",
    "build_gl_hecke",
    "build_bmw",
    "drinfeld_jimbo",
    "bmw_rmatrix",
    "kappa_of",
    "skew_inverse",
    "antisymmetrizer",
    "height",
    "resolve_a",
    "REGISTRY",
    "build_named",
]

HECKE = "hecke"
BMW = "bmw"


class RepresentationError(ValueError):
    """A constructed R-matrix fails one of its defining invariants."""


@dataclass(frozen=True)
class Representation:
    kind: str  # "hecke" | "bmw"
    N: int
    q: Scalar
    lam: Scalar
    a: Scalar
    R: Matrix
    Rinv: Matrix
    F: Matrix
    Dop: Matrix
    D0: Scalar
    Dplus: Scalar
    Dminus: Scalar
    b: Scalar
    nu: Optional[Scalar] = None
    Khat: Optional[Matrix] = None
    a_choice: str = "q"
    name: str = ""
    family: str = "gl"
    # BMW: kappa Y kappa = kappa_trace_ratio * Tr_D(Y) kappa  (paper: 1/nu);
    # see the Open Question in the rep module of the spec
    kappa_trace_ratio: Optional[Scalar] = None
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def is_bmw(self) -> bool:
        return self.kind == BMW

    @property
    def shape2(self) -> tuple[int, int]:
        return (self.N, self.N)

    def b_sqrt(self, sign: int = 1) -> Scalar:
        """``b^{1/2}``: ``q^N`` (Hecke, b = q^{2N}) or ``a/nu`` (BMW, b = a^2/nu^2)."""
        if self.is_bmw:
            root = self.a / self.nu
        else:
            root = self.q ** self.N
            if root * root != self.b:
                raise RepresentationError("b is not q^(2N); no exact square root stored")
        return root if sign > 0 else -root

    def to_json(self, with_matrices: bool = False) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "family": self.family,
            "N": self.N,
            "q": str(self.q),
            "lambda": str(self.lam),
            "a": str(self.a),
            "a_choice": self.a_choice,
            "nu": None if self.nu is None else str(self.nu),
            "D0": str(self.D0),
            "Dplus": str(self.Dplus),
            "Dminus": str(self.Dminus),
            "b": str(self.b),
            "kappa_trace_ratio": None if self.kappa_trace_ratio is None else str(self.kappa_trace_ratio),
        }
        if with_matrices:
            out["R"] = self.R.to_json()
            out["Dop"] = self.Dop.to_json()
            if self.Khat is not None:
                out["Khat"] = self.Khat.to_json()
        return out


# --------------------------------------------------------------------------
# parameters
# --------------------------------------------------------------------------

_A_ALIASES = {
    "q": "q",
    "plus_q": "q",
    "+q": "q",
    "-1/q": "-1/q",
    "minus_inv_q": "-1/q",
    "-q^-1": "-1/q",
}


def resolve_a(q: Scalar, a_choice: str) -> tuple[Scalar, str]:
    """Map an a-choice name to the root ``a`` of ``lambda = a - 1/a``."""
    key = _A_ALIASES.get(str(a_choice).strip())
    if key is None:
        raise ValueError(f"unknown a_choice {a_choice!r}; use 'q' or '-1/q'")
    return (q if key == "q" else -q.inverse()), key


def _check_q(q: Scalar) -> None:
    if q == 0 or q == 1 or q == -1:
        raise ValueError(f"degenerate q = {q}: q must avoid 0 and +-1")


def _from_dict(n: int, entries: dict, factors) -> Matrix:
    rows = [[Scalar(0)] * n for _ in range(n)]
    for (r, c), v in entries.items():
        rows[r][c] = rows[r][c] + v
    return Matrix.from_entries(rows, factors)


# --------------------------------------------------------------------------
# Hecke: Drinfeld-Jimbo gl(N)
# --------------------------------------------------------------------------

def drinfeld_jimbo(N: int, q: ScalarLike) -> Matrix:
    """Eq. "drjr"; any q (q = 1 gives the flip P)."""
    q = as_scalar(q)
    lam = q - q.inverse() if q else None
    ent = {}
    for i in range(N):
        for j in range(N):
            if i == j:
                ent[(i * N + i, i * N + i)] = q
            else:
                # e_ij (x) e_ji maps |j, i> to |i, j>
                ent[(i * N + j, j * N + i)] = Scalar(1)
            if j > i:
                ent[(i * N + j, i * N + j)] = ent.get((i * N + j, i * N + j), Scalar(0)) + lam
    return _from_dict(N * N, ent, (N, N))


def build_gl_hecke(N: int, q: ScalarLike, a_choice: str = "q") -> Representation:
    if N < 2:
        raise ValueError("N must be >= 2")
    q = as_scalar(q)
    _check_q(q)
    lam = q - q.inverse()
    a, key = resolve_a(q, a_choice)
    R = drinfeld_jimbo(N, q)
    Rinv = R.inverse()
    I2 = Matrix.identity(N * N, (N, N))
    checks = {}
    if not (R @ R - R.scale(lam) - I2).is_zero():
        raise RepresentationError("Hecke relation R^2 = lambda R + I fails")
    checks["hecke_relation"] = True
    if not (R - Rinv - I2.scale(lam)).is_zero():
        raise RepresentationError("R - R^-1 != lambda I")
    F, Dop = skew_inverse(R)
    checks["skew_inverse"] = True
    D0, Dplus, Dminus = _trace_constants(R, Rinv, Dop)
    if Dplus != 1:
        raise RepresentationError(f"D^(+1) = {Dplus}, expected 1")
    if Dminus != 1 - lam * D0:
        raise RepresentationError("D^(-1) != 1 - lambda Tr(D)")
    b = Dplus / Dminus
    return Representation(
        kind=HECKE, N=N, q=q, lam=lam, a=a, R=R, Rinv=Rinv, F=F, Dop=Dop,
        D0=D0, Dplus=Dplus, Dminus=Dminus, b=b, a_choice=key,
        name=f"gl{N}", family="gl", checks=checks,
    )


# --------------------------------------------------------------------------
# BMW: SO_q(N), Sp_q(2m)
# --------------------------------------------------------------------------

def _bmw_data(family: str, size: int):
    """rho vector (as Fractions), epsilon signs, nu exponent data."""
    N = size
    if family == "SO":
        if N < 3:
            raise ValueError("SO family needs size >= 3")
        half = Fraction(N, 2)
        rho = []
        for i in range(N):
            ip = N - 1 - i
            if i < ip:
                rho.append(half - 1 - i)
            elif i == ip:
                rho.append(Fraction(0))
            else:
                rho.append(-(half - 1 - ip))
        eps = [1] * N
    elif family == "Sp":
        if N < 2 or N % 2:
            raise ValueError("Sp family needs an even size >= 2")
        m = N // 2
        rho = [Fraction(m - i) for i in range(m)] + [Fraction(-(i + 1)) for i in range(m)]
        eps = [1] * m + [-1] * m
    else:
        raise ValueError(f"unknown BMW family {family!r}")
    return rho, eps


def bmw_nu(family: str, size: int, q: Scalar) -> Scalar:
    """Remark 7: nu = q^(1-N) for SO(N), nu = -q^(-1-2m) for Sp(2m)."""
    if family == "SO":
        return q ** (1 - size)
    return -(q ** (-1 - size))


def bmw_rmatrix(family: str, size: int, q: ScalarLike) -> Matrix:
    """R-hat = P R with R the standard orthogonal/symplectic FRT R-matrix.

    For odd SO the middle basis vector is rescaled by q^{1/4} (a pure
    gauge), which turns every q^{rho_i - rho_j} into an integer power.
    """
    q = as_scalar(q)
    N = size
    rho, eps = _bmw_data(family, size)
    lam = q - q.inverse()
    mid = (N - 1) // 2 if N % 2 else None
    idx = lambda i, j: i * N + j  # noqa: E731
    ent: dict = {}

    def add(i, j, k, l, v):
        # e_ij (x) e_kl as an operator: |j, l> -> |i, k>
        key = (idx(i, k), idx(j, l))
        ent[key] = ent.get(key, Scalar(0)) + v

    for i in range(N):
        ip = N - 1 - i
        for j in range(N):
            if i == j:
                add(i, i, i, i, Scalar(1) if i == ip else q)
            elif j == ip:
                add(i, i, j, j, q.inverse())
            else:
                add(i, i, j, j, Scalar(1))
    for i in range(N):
        for j in range(i):
            add(i, j, j, i, lam)
            expo = rho[i] - rho[j]
            if mid is not None:
                if i == mid:
                    expo += Fraction(1, 2)
                if j == mid:
                    expo -= Fraction(1, 2)
            if expo.denominator != 1:
                raise RepresentationError("non-integral q power in BMW R-matrix")
            coeff = -lam * (q ** int(expo)) * (eps[i] * eps[j])
            add(i, j, N - 1 - i, N - 1 - j, coeff)
    R = _from_dict(N * N, ent, (N, N))
    return flip(N) @ R


def kappa_of(R: Matrix, lam: ScalarLike) -> Matrix:
    """Eq. "bmw3": K-hat = I - (R - R^-1)/lambda."""
    lam = as_scalar(lam)
    if lam == 0:
        raise ValueError("lambda = 0: kappa undefined")
    eye = Matrix.identity(R.dim, R.factors)
    return eye - (R - R.inverse()).scale(lam.inverse())


def build_bmw(family: str, size: int, q: ScalarLike, a_choice: str = "q") -> Representation:
    family = {"so": "SO", "sp": "Sp"}.get(str(family).lower(), family)
    q = as_scalar(q)
    _check_q(q)
    N = size
    rho, eps = _bmw_data(family, size)  # validates family/size
    lam = q - q.inverse()
    a, key = resolve_a(q, a_choice)
    nu = bmw_nu(family, size, q)
    R = bmw_rmatrix(family, size, q)
    Rinv = R.inverse()
    K = kappa_of(R, lam)
    shape2 = (N, N)
    I2 = Matrix.identity(N * N, shape2)
    checks = {}

    def need(cond: bool, what: str):
        if not cond:
            raise RepresentationError(f"{family}_q({size}) R-matrix fails {what}")
        checks[what] = True

    cubic = (R - I2.scale(q)) @ (R + I2.scale(q.inverse())) @ (R - I2.scale(nu))
    need(cubic.is_zero(), "cubic (R-q)(R+1/q)(R-nu)=0")
    need(K.rank() == 1, "rank(K)=1")
    need((K @ R - K.scale(nu)).is_zero() and (R @ K - K.scale(nu)).is_zero(), "bmw1 K R = R K = nu K")
    shape3 = (N, N, N)
    R1, R2 = embed(R, 1, shape3), embed(R, 2, shape3)
    R1i, R2i = embed(Rinv, 1, shape3), embed(Rinv, 2, shape3)
    K1, K2 = embed(K, 1, shape3), embed(K, 2, shape3)
    need(R1 @ R2 @ R1 == R2 @ R1 @ R2, "braid relation")
    need(K1 @ R2 @ K1 == K1.scale(nu.inverse()), "bmw2 K1 R2 K1 = nu^-1 K1")
    need(K1 @ R2i @ K1 == K1.scale(nu), "bmw2 K1 R2^-1 K1 = nu K1")
    need(K2 @ R1 @ K2 == K2.scale(nu.inverse()), "bmw2 K2 R1 K2 = nu^-1 K2")
    need(K2 @ R1i @ K2 == K2.scale(nu), "bmw2 K2 R1^-1 K2 = nu K2")
    need(K1 @ K2 @ K1 == K1 and K2 @ K1 @ K2 == K2, "K1 K2 K1 = K1")
    Q0 = (nu.inverse() + lam - nu) / lam
    need(K @ K == K.scale(Q0), "K^2 = Q0 K")
    F, Dop = skew_inverse(R)
    checks["skew_inverse"] = True
    D0, Dplus, Dminus = _trace_constants(R, Rinv, Dop)
    ratio = _kappa_trace_ratio(K, Dop, N)
    b = (a / nu) ** 2
    return Representation(
        kind=BMW, N=N, q=q, lam=lam, a=a, R=R, Rinv=Rinv, F=F, Dop=Dop,
        D0=D0, Dplus=Dplus, Dminus=Dminus, b=b, nu=nu, Khat=K, a_choice=key,
        name=f"{family.lower()}{size}", family=family,
        kappa_trace_ratio=ratio, checks=checks,
    )


# --------------------------------------------------------------------------
# skew inverse, quantum trace constants
# --------------------------------------------------------------------------

def skew_inverse(R: Matrix) -> tuple[Matrix, Matrix]:
    """Solve ``Tr_2(F_12 R_23) = P_13`` for F; return ``(F, D)`` with ``D = Tr_2 F``.

    Index form: ``sum_{m,k} F[(i,m),(j,k)] R[(k,s),(m,t)] = delta_{it} delta_{sj}``.
    For fixed ``(i, j)`` this is a linear system whose matrix is the partial
    transpose ``M[(s,t),(m,k)] = R[(k,s),(m,t)]``; skew invertibility is the
    invertibility of ``M``.
    """
    N = R.factors[0]
    if tuple(R.factors) != (N, N):
        raise ValueError("skew_inverse needs an R-matrix on V (x) V")
    t = lambda arr: np.ascontiguousarray(  # noqa: E731
        arr.reshape(N, N, N, N).transpose(1, 3, 2, 0)  # (k,s,m,t) -> (s,t,m,k)
    ).reshape(N * N, N * N)
    M = R.map_parts(t, (N * N,))
    try:
        Minv = M.inverse()
    except SingularMatrixError as exc:
        raise RepresentationError(f"not skew invertible: {exc}") from exc
    # G^{ij} = Minv @ rhs^{ij}, rhs^{ij}[(s,t)] = delta_{it} delta_{sj}
    # => G^{ij}[(m,k)] = Minv[(m,k), (j,i)]
    def to_F(arr):
        T = arr.reshape(N, N, N, N)  # (m, k, s, t) with (s, t) = (j, i)
        # F[(i,m),(j,k)] = T[m,k,j,i]
        return np.ascontiguousarray(T.transpose(3, 0, 2, 1)).reshape(N * N, N * N)

    F = Minv.map_parts(to_F, (N, N))
    shape3 = (N, N, N)
    P13 = _flip13(N)
    lhs = partial_trace(embed(F, 1, shape3) @ embed(R, 2, shape3), 2)
    if lhs != P13:
        raise RepresentationError("skew inverse does not satisfy Tr_2(F_12 R_23) = P_13")
    rhs = partial_trace(embed(R, 1, shape3) @ embed(F, 2, shape3), 2)
    if rhs != P13:
        raise RepresentationError("companion identity Tr_2(R_12 F_23) = P_13 fails")
    Dop = partial_trace(F, 2)
    return F, Dop


def _flip13(N: int) -> Matrix:
    """The flip of the outer factors of a three-factor space, on the two survivors."""
    return flip(N)


def _proportional_to_identity(M: Matrix) -> Optional[Scalar]:
    s = M[0, 0]
    if M == Matrix.identity(M.dim, M.factors).scale(s):
        return s
    return None


def _trace_constants(R: Matrix, Rinv: Matrix, Dop: Matrix) -> tuple[Scalar, Scalar, Scalar]:
    D0 = Dop.trace()
    plus = _proportional_to_identity(weighted_partial_trace(R, 2, Dop))
    minus = _proportional_to_identity(weighted_partial_trace(Rinv, 2, Dop))
    if plus is None or minus is None:
        raise RepresentationError("Tr_D,2(R^{+-1}) is not a scalar multiple of I")
    return D0, plus, minus


def _kappa_trace_ratio(K: Matrix, Dop: Matrix, N: int) -> Scalar:
    """Empirical constant r with ``K (Y (x) I) K = r Tr(D Y) K`` for all Y on site 1."""
    ratio = None
    for i in range(N):
        for j in range(N):
            Y = Matrix.unit(N, i, j).with_factors((N,))
            sand = K @ kron(Y, Matrix.identity(N)) @ K
            tr = (Dop @ Y).trace()
            if tr == 0:
                if not sand.is_zero():
                    raise RepresentationError("kappa sandwich nonzero where the D-trace vanishes")
                continue
            r = sand[K.nonzero_witness()] / K[K.nonzero_witness()] / tr
            if sand != K.scale(r * tr):
                raise RepresentationError("kappa sandwich is not proportional to K")
            if ratio is None:
                ratio = r
            elif ratio != r:
                raise RepresentationError("kappa/D-trace ratio is not constant")
    return ratio


# --------------------------------------------------------------------------
# antisymmetrizers, height
# --------------------------------------------------------------------------

def antisymmetrizer(rep: Representation, k: int) -> Matrix:
    """Eqs. "antirr"/"antirBMW": A_{1->k} on V^{(x)k}, built with a = q."""
    from .baxter import normalized_element

    if k < 1:
        raise ValueError("k must be >= 1")
    N = rep.N
    A = Matrix.identity(N, (N,))
    q = rep.q
    for level in range(1, k):
        shape = (N,) * (level + 1)
        Aext = embed(A, 1, shape)
        x = q ** (2 * level)
        sig = normalized_element(rep, x, a=q)
        A = Aext @ embed(sig, level, shape) @ Aext
    return A


def height(rep: Representation, k_max: int) -> Optional[int]:
    """Least h <= k_max with A_{1->h+1} = 0 and rank A_{1->h} = 1."""
    from .baxter import normalized_element

    N = rep.N
    q = rep.q
    prev = Matrix.identity(N, (N,))
    for h in range(1, k_max + 1):
        shape = (N,) * (h + 1)
        Aext = embed(prev, 1, shape)
        nxt = Aext @ embed(normalized_element(rep, q ** (2 * h), a=q), h, shape) @ Aext
        if nxt.is_zero() and prev.rank() == 1:
            return h
        prev = nxt
    return None


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

REGISTRY: dict[str, Callable[..., Representation]] = {
    "gl2": lambda q, a="q": build_gl_hecke(2, q, a),
    "gl3": lambda q, a="q": build_gl_hecke(3, q, a),
    "gl4": lambda q, a="q": build_gl_hecke(4, q, a),
    "sp2": lambda q, a="q": build_bmw("Sp", 2, q, a),
    "sp4": lambda q, a="q": build_bmw("Sp", 4, q, a),
    "so3": lambda q, a="q": build_bmw("SO", 3, q, a),
    "so4": lambda q, a="q": build_bmw("SO", 4, q, a),
}


def build_named(name: str, q: ScalarLike, a_choice: str = "q") -> Representation:
    try:
        ctor = REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown representation {name!r}; known: {sorted(REGISTRY)}") from None
    return ctor(as_scalar(q), a_choice)
