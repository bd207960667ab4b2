"""Boundary K-matrices: constant and spectral reflection equations.

A boundary matrix acts on site 1 and, for the evaluation boundary, on an
extra trailing quantum factor ``W``.  Spaces are ordered
``V_1 (x) V_2 (x) ... (x) W``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .baxter import baxterized
from .checks import PoleError, compare
from .linalg import (
    Matrix,
    SingularMatrixError,
    embed,
    embed_sites,
    flip,
    minimal_polynomial,
    poly_eval_matrix,
)
from .rep import Representation, build_gl_hecke
from .scalars import Scalar, ScalarLike, as_scalar, sqrt_exact, squarefree_kernel

__all__ = [
    "BoundaryError",
    "BoundarySolution",
    "boundary_sites",
    "check_constant_re",
    "evaluation_boundary",
    "rational_boundary",
    "rational_derivative_at_one",
    "check_re",
    "bmw_constants",
    "bmw_xi",
    "polynomial_b_coeffs",
    "polynomial_boundary",
    "kulm2_boundary",
    "marlev_display",
    "m2_displays",
    "m3_display",
    "small_boundary",
    "nnww_alpha1",
    "fix1_alphas",
    "bmw_deg2_boundary",
    "sol6_alphas",
    "chart1_residuals",
    "bmw_deg4_boundary",
    "bmw_deg4_search",
    "conjugate_boundary",
    "check_conjugated_re",
    "trivial_solution",
    "rational_solution",
    "evaluation_solution",
    "polynomial_solution",
    "small_solution",
    "prop2_solution",
    "bmw_deg2_solution",
    "rr_boundary",
]


class BoundaryError(ValueError):
    """A boundary construction's preconditions or constraints fail."""


@dataclass
class BoundarySolution:
    kind: str  # trivial | rational | polynomial | small | bmw_deg2 | bmw_deg4 | evaluation
    builder: Callable[[Scalar], Matrix]
    L: Optional[Matrix] = None
    xi: Optional[Scalar] = None
    alpha: Optional[list] = None
    c: Optional[Scalar] = None
    Q: Optional[dict] = None
    zeta: Optional[Scalar] = None
    W: Optional[int] = None
    # closed-form K'(1), when the family has one (used by H0/H6)
    derivative_at_one: Optional[Callable[[], Matrix]] = None
    regular: bool = True
    exclusions: tuple = ()
    params: dict = field(default_factory=dict)

    def __call__(self, x: ScalarLike) -> Matrix:
        return self.builder(as_scalar(x))

    def to_json(self, with_L: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "xi": None if self.xi is None else str(self.xi),
            "alpha": None if self.alpha is None else [str(a) for a in self.alpha],
            "c": None if self.c is None else str(self.c),
            "Q": None if self.Q is None else {str(k): str(v) for k, v in sorted(self.Q.items())},
            "zeta": None if self.zeta is None else str(self.zeta),
            "quantum_factor": self.W,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
        }
        if with_L and self.L is not None:
            out["L"] = self.L.to_json()
        return out


# --------------------------------------------------------------------------
# helpers
# --------------------------------------------------------------------------

def _quantum_dim(rep: Representation, L: Matrix) -> Optional[int]:
    f = tuple(L.factors)
    if f == (rep.N,):
        return None
    if len(f) == 2 and f[0] == rep.N:
        return f[1]
    if L.dim == rep.N:
        return None
    raise BoundaryError(f"boundary factors {list(f)} do not fit representation with N = {rep.N}")


def boundary_sites(level: int, W: Optional[int]) -> list[int]:
    """Sites of a boundary on the first ``level`` chain factors (+ trailing W)."""
    sites = list(range(1, level + 1))
    if W is not None:
        sites.append(level + 2)
    return sites


def _space(rep: Representation, level: int, W: Optional[int]) -> tuple[int, ...]:
    shape = (rep.N,) * (level + 1)
    return shape + ((W,) if W is not None else ())


def _as_boundary(rep: Representation, M: Matrix, level: int = 1) -> Matrix:
    if M.dim == rep.N ** level and len(M.factors) != level:
        return M.with_factors((rep.N,) * level)
    return M


def _embed_boundary(rep: Representation, K: Matrix, level: int, W: Optional[int]) -> Matrix:
    shape = _space(rep, level, W)
    return embed_sites(K, boundary_sites(level, W), shape)


def _eye_like(M: Matrix) -> Matrix:
    return Matrix.identity(M.dim, M.factors)


def _inv(M: Matrix, what: str) -> Matrix:
    try:
        return M.inverse()
    except SingularMatrixError as exc:
        raise PoleError(f"{what}: {exc}") from exc


# --------------------------------------------------------------------------
# constant reflection equation
# --------------------------------------------------------------------------

def check_constant_re(rep: Representation, L: Matrix, detail: bool = False):
    """Eq. "refA1-1": R1 L1 R1 L1 = L1 R1 L1 R1 on V (x) V (x W)."""
    L = _as_boundary(rep, L)
    W = _quantum_dim(rep, L)
    L1 = _embed_boundary(rep, L, 1, W)
    R1 = embed(rep.R, 1, _space(rep, 1, W))
    res = compare(R1 @ L1 @ R1 @ L1, L1 @ R1 @ L1 @ R1, "constant_re", 'Eq. "refA1-1" constant RE', rep=rep.name)
    return res if detail else res.passed


# --------------------------------------------------------------------------
# evaluation representation (Remark 5)
# --------------------------------------------------------------------------

def evaluation_boundary(q: ScalarLike, N: int = 2) -> tuple[Matrix, Matrix, Matrix]:
    """``(L+, L-, L)`` on ``V_aux (x) W`` with ``W`` the vector representation.

    ``L+ = R_21`` (upper triangular in the auxiliary space) and
    ``L- = q R_12^{-1}`` with ``R_12 = P R-hat``; then ``L = (L-)^{-1} L+``.
    The overall factor q in L- is the rescaling permitted by the FRT
    relations that removes half-integer powers of q.
    """
    q = as_scalar(q)
    rep = build_gl_hecke(N, q)
    P = flip(N)
    R12 = P @ rep.R
    Lp = rep.R @ P  # = P R12 P = R_21
    Lm = (R12.inverse()).scale(q)
    L = Lm.inverse() @ Lp
    shape = (N, N, N)  # V1, V2, W

    def on(M, site):
        return embed_sites(M, [site, 3], shape)

    R1 = embed(rep.R, 1, shape)
    for name, (A, B) in {"L+L+": (Lp, Lp), "L-L-": (Lm, Lm), "L+L-": (Lp, Lm)}.items():
        lhs = R1 @ on(A, 2) @ on(B, 1)
        rhs = (on(Lm, 2) @ on(Lp, 1) if name == "L+L-" else on(A, 2) @ on(B, 1)) @ R1
        if lhs != rhs:
            raise BoundaryError(f'FRT relation {name} (Eq. "frt") fails for the evaluation L')
    for x, y in ((Scalar(Fraction(2, 3)), Scalar(Fraction(5, 7))), (Scalar(Fraction(-3, 4)), Scalar(Fraction(7, 2)))):
        Lxy, Ly = Lp - Lm.scale(x * y), Lp - Lm.scale(y)
        Rx = embed(baxterized(rep, x), 1, shape)
        if Rx @ on(Lxy, 2) @ on(Ly, 1) != on(Ly, 2) @ on(Lxy, 1) @ Rx:
            raise BoundaryError('intertwining relation (Eq. "intertw") fails for the evaluation L')
    return Lp, Lm, L


# --------------------------------------------------------------------------
# Prop. 1 / Prop. 2 rational solution
# --------------------------------------------------------------------------

def rational_boundary(L: Matrix, xi: ScalarLike, x: ScalarLike) -> Matrix:
    """Eq. "soluH"/"rhoy": K(x) = (L - xi x)(L - xi/x)^{-1}."""
    xi, x = as_scalar(xi), as_scalar(x)
    if x == 0:
        raise PoleError("x = 0")
    eye = _eye_like(L)
    den = L - eye.scale(xi / x)
    try:
        inv = den.inverse()
    except SingularMatrixError as exc:
        raise PoleError(f"pole: xi/x = {xi / x} is an eigenvalue of L ({exc})") from exc
    return (L - eye.scale(xi * x)) @ inv


def rational_derivative_at_one(L: Matrix, xi: ScalarLike) -> Matrix:
    """K'(1) = -2 xi (L - xi)^{-1} for K(x) = (L - xi x)(L - xi/x)^{-1}."""
    xi = as_scalar(xi)
    return _inv(L - _eye_like(L).scale(xi), "L - xi singular").scale(-2 * xi)


def check_re(rep: Representation, K: Callable, x: ScalarLike, z: ScalarLike, level: int = 1, detail: bool = False):
    """Eq. "reflHr"/"refl" at level n: R_n(x/z) K(x) R_n(xz) K(z) = K(z) R_n(xz) K(x) R_n(x/z).

    ``K(x)`` acts on the first ``level`` copies of V (plus an optional
    trailing quantum factor); ``R_n`` acts on copies ``level, level+1``.
    """
    x, z = as_scalar(x), as_scalar(z)
    Kx, Kz = _as_boundary(rep, K(x), level), _as_boundary(rep, K(z), level)
    W = None if len(Kx.factors) == level else Kx.factors[-1]
    shape = _space(rep, level, W)
    Kx, Kz = _embed_boundary(rep, Kx, level, W), _embed_boundary(rep, Kz, level, W)
    Rq = embed(baxterized(rep, x / z), level, shape)
    Rp = embed(baxterized(rep, x * z), level, shape)
    res = compare(Rq @ Kx @ Rp @ Kz, Kz @ Rp @ Kx @ Rq, "re", 'Eq. "reflHr" reflection equation',
                  rep=rep.name, a=rep.a, x=x, z=z, level=level)
    return res if detail else res.passed


# --------------------------------------------------------------------------
# BMW central elements (Eqs. "bmwa5", "bmwa6", "nazar")
# --------------------------------------------------------------------------

def _multiple_of(M: Matrix, K: Matrix) -> Optional[Scalar]:
    w = K.nonzero_witness()
    s = M[w] / K[w]
    return s if M == K.scale(s) else None


def bmw_constants(rep: Representation, L: Matrix, k_max: int = 4, detail: bool = False):
    """Extract c (Eq. "bmwa5") and Q^(k), |k| <= k_max (Eq. "bmwa6").

    Returns ``(c, Q)`` with ``Q`` a dict ``k -> Q^(k)``; with ``detail``
    also a dict of auxiliary verifications.
    """
    if not rep.is_bmw:
        raise ValueError("bmw_constants needs a BMW representation")
    L = _as_boundary(rep, L)
    W = _quantum_dim(rep, L)
    shape = _space(rep, 1, W)
    L1 = _embed_boundary(rep, L, 1, W)
    R1 = embed(rep.R, 1, shape)
    K1 = embed(rep.Khat, 1, shape)
    Y = L1 @ R1 @ L1 @ R1
    c = _multiple_of(K1 @ Y, K1)
    c_rev = _multiple_of(Y @ K1, K1)
    if c is None or c_rev is None:
        raise BoundaryError("L is not an affine-BMW boundary for this representation (c not central)")
    Q: dict[int, Scalar] = {}
    power = _eye_like(L1)
    for k in range(0, k_max + 1):
        if k:
            power = power @ L1
        val = _multiple_of(K1 @ power @ K1, K1)
        if val is None:
            raise BoundaryError(f"L is not an affine-BMW boundary for this representation (Q^({k}) not central)")
        Q[k] = val
    info = {"c_reversed_equal": c == c_rev}
    try:
        Linv = L1.inverse()
    except SingularMatrixError:
        Linv = None
    if Linv is not None:
        power = _eye_like(L1)
        for k in range(1, k_max + 1):
            power = power @ Linv
            val = _multiple_of(K1 @ power @ K1, K1)
            if val is None:
                raise BoundaryError(f"Q^(-{k}) not central")
            Q[-k] = val
    nu, lam = rep.nu, rep.lam
    q0 = (nu.inverse() + lam - nu) / lam
    if Q[0] != q0:
        raise BoundaryError(f"Q^(0) = {Q[0]} differs from (1/nu + lambda - nu)/lambda = {q0}")
    info["Q0_formula"] = True
    nazar = {}
    if Linv is not None:
        for n in range(1, min(3, k_max) + 1):
            pred = nazar_q_minus(rep, c, Q, n)
            nazar[n] = pred == Q[-n]
            if not nazar[n]:
                raise BoundaryError(f'Eq. "nazar" fails at n = {n}: {pred} vs {Q[-n]}')
    info["nazar"] = nazar
    if detail:
        return c, Q, info
    return c, Q


def nazar_q_minus(rep: Representation, c: Scalar, Q: dict, n: int) -> Scalar:
    """Eq. "nazar": Q^(-n) = nu^2 c^-n Q^(n) + lambda nu sum_j c^-j (Q^(2j-n) - Q^(j) Q^(j-n))."""
    nu, lam = rep.nu, rep.lam
    out = nu * nu * c ** (-n) * Q[n]
    for j in range(1, n):
        out = out + lam * nu * c ** (-j) * (Q[2 * j - n] - Q[j] * Q[j - n])
    return out


def bmw_xi(rep: Representation, c: ScalarLike, allow_extension: bool = True, sign: int = 1) -> Scalar:
    """Prop. 2: xi with xi^2 = -a c / nu; sign branch +1 has positive leading part."""
    c = as_scalar(c)
    target = -rep.a * c / rep.nu
    root = sqrt_exact(target)
    if root is None:
        if not target.is_rational:
            raise BoundaryError(f"xi^2 = {target} has no square root in the ambient field")
        t = target.rational()
        if t < 0:
            raise BoundaryError(f"xi^2 = {t} < 0: only real quadratic extensions are supported")
        if not allow_extension:
            raise BoundaryError(f"xi^2 = {t} is not a rational square and extensions are disallowed")
        s, k = squarefree_kernel(t.numerator * t.denominator)
        root = Scalar(0, Fraction(s, t.denominator), k)
    lead = root.a if root.a != 0 else root.b
    if lead < 0:
        root = -root
    return root if sign > 0 else -root


# --------------------------------------------------------------------------
# Remark 3: polynomial and small solutions
# --------------------------------------------------------------------------

def _monic(alpha: Sequence[ScalarLike]) -> list[Scalar]:
    """Coefficients alpha_0..alpha_{m+1} with alpha_{m+1} = 1."""
    al = [as_scalar(a) for a in alpha]
    if al[-1] != 1:
        al = al + [Scalar(1)]
    if len(al) < 2:
        raise BoundaryError("need a polynomial of degree >= 1")
    return al


def polynomial_b_coeffs(alpha: Sequence[ScalarLike], xi: ScalarLike, x: ScalarLike) -> list[Scalar]:
    """Eq. "kulm1": b_0(x) .. b_m(x)."""
    al = _monic(alpha)
    m = len(al) - 2
    xi, x = as_scalar(xi), as_scalar(x)
    t = xi / x
    s = Scalar(0)
    for r in range(m + 2):
        s = s + al[r] * t ** r
    if s == 0:
        raise PoleError(f"b_m pole: sum alpha_r (xi/x)^r = 0 at x = {x}")
    bm = -s.inverse()
    b = [Scalar(0)] * (m + 1)
    for k in range(m + 1):
        acc = Scalar(0)
        for r in range(k + 1):
            acc = acc + al[m - r + 1] * t ** (k - r)
        b[m - k] = bm * acc
    return b


def polynomial_boundary(alpha: Sequence[ScalarLike], xi: ScalarLike, x: ScalarLike, L: Optional[Matrix] = None):
    """``(b_coeffs, K)`` with ``K = (L - xi x) sum_k b_k L^k`` (None without L)."""
    b = polynomial_b_coeffs(alpha, xi, x)
    if L is None:
        return b, None
    xi, x = as_scalar(xi), as_scalar(x)
    S = poly_eval_matrix(b, L)
    K = (L - _eye_like(L).scale(xi * x)) @ S
    return b, K


def kulm2_boundary(alpha: Sequence[ScalarLike], xi: ScalarLike, x: ScalarLike, L: Matrix) -> Matrix:
    """Explicit coefficient form of Eq. "kulm2" (b_{-1} = 0)."""
    al = _monic(alpha)
    m = len(al) - 2
    xi, x = as_scalar(xi), as_scalar(x)
    b = polynomial_b_coeffs(al, xi, x)
    coeffs = []
    for k in range(m + 1):
        prev = b[k - 1] if k >= 1 else Scalar(0)
        coeffs.append(prev - xi * x * b[k] - b[m] * al[k])
    return poly_eval_matrix(coeffs, L)


def marlev_display(alpha: Sequence[ScalarLike], xi: ScalarLike, x: ScalarLike, L: Matrix) -> Matrix:
    """Eq. "marlev" (m = 1)."""
    al = _monic(alpha)
    if len(al) != 3:
        raise BoundaryError("marlev needs m = 1")
    a0, a1 = al[0], al[1]
    xi, x = as_scalar(xi), as_scalar(x)
    s = x - x.inverse()
    den = xi * x ** -2 + a1 * x.inverse() + a0 / xi
    if den == 0 or s == 0:
        raise PoleError(f"marlev pole at x = {x}")
    eye = _eye_like(L)
    return (L + eye.scale((x * a1 + xi + a0 / xi) / s)).scale(s / den)


def m2_displays(alpha: Sequence[ScalarLike], xi: ScalarLike, x: ScalarLike, L: Matrix) -> tuple[Matrix, Matrix]:
    """Both displays of Eq. "m2" (the second one uses L^{-1})."""
    al = _monic(alpha)
    if len(al) != 4:
        raise BoundaryError("m2 needs m = 2")
    a0, a1, a2 = al[0], al[1], al[2]
    xi, x = as_scalar(xi), as_scalar(x)
    t = xi / x
    s = x - x.inverse()
    S = a0 + a1 * t + a2 * t ** 2 + t ** 3
    if S == 0 or s == 0:
        raise PoleError(f"m2 pole at x = {x}")
    pref = xi * s / S
    eye = _eye_like(L)
    first = (L @ L + L.scale(t + a2) + eye.scale((xi * xi / x + a2 * xi + a1 * x + a0 / xi) / s)).scale(pref)
    Linv = _inv(L, "m2 second display needs invertible L")
    second = (L.scale(t) + eye.scale(((xi * xi + a1) / x + a2 * xi + a0 / xi) / s) - Linv.scale(a0)).scale(pref)
    return first, second


def m3_display(alpha: Sequence[ScalarLike], xi: ScalarLike, x: ScalarLike, L: Matrix) -> Matrix:
    """The m = 3 display after Eq. "m2"."""
    al = _monic(alpha)
    if len(al) != 5:
        raise BoundaryError("m3 needs m = 3")
    a0, a1, a2, a3 = al[:4]
    xi, x = as_scalar(xi), as_scalar(x)
    t = xi / x
    s = x - x.inverse()
    S = a0 + a1 * t + a2 * t ** 2 + a3 * t ** 3 + t ** 4
    if S == 0 or s == 0:
        raise PoleError(f"m3 pole at x = {x}")
    eye = _eye_like(L)
    L2 = L @ L
    const = (x * (t ** 3 + a3 * t ** 2 + a2 * t + a1) + a0 / xi) / s
    body = L2 @ L + L2.scale(t + a3) + L.scale(t ** 2 + a3 * t + a2) + eye.scale(const)
    return body.scale(xi * s / S)


def small_boundary(alpha: Sequence[ScalarLike], zeta: ScalarLike, L: Matrix, x: ScalarLike) -> Matrix:
    """Small solution: 1 + (x - 1/x)/(alpha_1/x + zeta) * y~, y~ = L^m + sum_{k>=1} alpha_k L^{k-1}."""
    al = _monic(alpha)
    if al[0] != 0:
        raise BoundaryError("small solutions need alpha_0 = 0")
    zeta, x = as_scalar(zeta), as_scalar(x)
    yt = _small_ytilde(al, L)
    if not (L @ yt).is_zero():
        raise BoundaryError("small-solution precondition violated: L y~ != 0")
    den = al[1] / x + zeta
    if den == 0:
        raise PoleError(f"small solution pole: alpha_1/x + zeta = 0 at x = {x}")
    return _eye_like(L) + yt.scale((x - x.inverse()) / den)


def _small_ytilde(al: list[Scalar], L: Matrix) -> Matrix:
    m = len(al) - 2
    yt = Matrix.zeros(L.dim, L.factors)
    power = _eye_like(L)
    for k in range(1, m + 1):
        yt = yt + power.scale(al[k])
        power = power @ L
    return yt + power  # power = L^m


# --------------------------------------------------------------------------
# BMW exceptional solutions
# --------------------------------------------------------------------------

def nnww_alpha1(rep: Representation, c: Scalar, alpha0: Scalar, Q1: Scalar) -> Scalar:
    """Eq. "nnww": alpha_1 = -lambda (c + nu^2 alpha_0) Q1 / (c (1/nu - nu + lambda))."""
    nu, lam = rep.nu, rep.lam
    return -lam * (c + nu * nu * alpha0) * Q1 / (c * (nu.inverse() - nu + lam))


def fix1_alphas(rep: Representation, c: Scalar, Q1: Scalar) -> tuple[Scalar, Scalar]:
    """Eq. "fix1": alpha_0 = -c/(a nu), alpha_1 = -Q1 nu lambda/(a nu + 1)."""
    a, nu, lam = rep.a, rep.nu, rep.lam
    return -c / (a * nu), -Q1 * nu * lam / (a * nu + 1)


def bmw_deg2_boundary(rep: Representation, Q1: ScalarLike, case: str, A: ScalarLike, x: ScalarLike,
                      c: ScalarLike, alpha0: Optional[ScalarLike] = None, L: Optional[Matrix] = None) -> Matrix:
    """Eq. "marlev2": K(x) = L + (alpha_1 x + A)/(x - 1/x), with alphas per case (1a) or (1b)."""
    if not rep.is_bmw:
        raise ValueError("bmw_deg2_boundary needs a BMW representation")
    Q1, A, x, c = as_scalar(Q1), as_scalar(A), as_scalar(x), as_scalar(c)
    alphas = deg2_alphas(rep, c, Q1, case, alpha0, L)
    if L is None:
        raise BoundaryError("bmw_deg2_boundary needs the constant solution L")
    return _marlev2(L, alphas[1], A, x)


def deg2_alphas(rep: Representation, c: Scalar, Q1: Scalar, case: str, alpha0=None, L: Optional[Matrix] = None):
    if case in ("free_Q", "1a"):
        a0, a1 = fix1_alphas(rep, c, Q1)
        if alpha0 is not None and as_scalar(alpha0) != a0:
            raise BoundaryError(f'Eq. "fix1" fails: alpha_0 = {alpha0}, expected {a0}')
    elif case in ("free_alpha0", "1b"):
        if alpha0 is None:
            raise BoundaryError("case (1b) needs alpha_0")
        a0 = as_scalar(alpha0)
        a1 = nnww_alpha1(rep, c, a0, Q1)
    else:
        raise ValueError(f"unknown case {case!r}")
    if nnww_alpha1(rep, c, a0, Q1) != a1:
        raise BoundaryError(f'Eq. "nnww" fails for alpha_0 = {a0}, alpha_1 = {a1}')
    if L is not None:
        mp = minimal_polynomial(L)
        if len(mp) != 3 or mp[0] != a0 or mp[1] != a1:
            raise BoundaryError(
                f'minimal polynomial of L {[str(v) for v in mp]} does not match '
                f'the case alphas ({a0}, {a1}) (Eq. "fix1"/"nnww")'
            )
    return a0, a1


def _marlev2(L: Matrix, a1: Scalar, A: Scalar, x: Scalar) -> Matrix:
    s = x - x.inverse()
    if s == 0:
        if a1 * x + A == 0:
            raise PoleError("x = +-1: removable 0/0 in (alpha_1 x + A)/(x - 1/x); no limit taken")
        raise PoleError(f"pole of (alpha_1 x + A)/(x - 1/x) at x = {x}")
    return L + _eye_like(L).scale((a1 * x + A) / s)


def sol6_alphas(rep: Representation, c: ScalarLike, Q: dict) -> list[Scalar]:
    """Eq. "sol6": alpha_0..alpha_3 of the degree-4 exceptional solution."""
    c = as_scalar(c)
    a, nu, lam = rep.a, rep.nu, rep.lam
    Q0 = (nu.inverse() + lam - nu) / lam
    Q1, Q2, Q3 = (as_scalar(Q[k]) for k in (1, 2, 3))
    g = nu * lam / (a * nu + 1)
    den = Q2 - g * Q1 * Q1 - c / (nu * a) * Q0
    if den == 0:
        raise BoundaryError('Eq. "sol6": vanishing denominator in alpha_3')
    a3 = -(Q3 - g * Q1 * Q2 - c / (nu * a) * Q1) / den
    a2 = -g * (Q1 * a3 + Q2) + lam * c / a
    a1 = -(c / a) * (a3 / nu + lam * Q1)
    a0 = -c * c / (a * nu)
    return [a0, a1, a2, a3]


def chart1_residuals(alpha: Sequence[ScalarLike], Q: dict) -> dict[int, Scalar]:
    """Eq. "chart1": Q^(m+1-r) + sum_k alpha_k Q^(k-r) for r = 0..m+1 (missing Q's skipped)."""
    al = [as_scalar(v) for v in alpha]
    if al[-1] == 1 and len(al) > 1:
        al = al[:-1]
    m = len(al) - 1
    out = {}
    for r in range(m + 2):
        needed = [m + 1 - r] + [k - r for k in range(m + 1)]
        if any(k not in Q for k in needed):
            continue
        acc = as_scalar(Q[m + 1 - r])
        for k in range(m + 1):
            acc = acc + al[k] * as_scalar(Q[k - r])
        out[r] = acc
    return out


def bmw_deg4_boundary(rep: Representation, Q: dict, x: ScalarLike, c: ScalarLike, L: Matrix,
                      allow_extension: bool = False) -> Matrix:
    """Eq. "sol5": alpha0bar L + (alpha_3 alpha0bar x + alpha_1)/(x - 1/x) - x alpha_0 L^{-1}."""
    x, c = as_scalar(x), as_scalar(c)
    al = sol6_alphas(rep, c, Q)
    for r, v in chart1_residuals(al, Q).items():
        if v != 0:
            raise BoundaryError(f'Eq. "chart1" inconsistency at r = {r}: residual {v}')
    a0 = al[0]
    a0bar = sqrt_exact(a0)
    if a0bar is None:
        if not allow_extension or not a0.is_rational or a0 < 0:
            raise BoundaryError(f"alpha0bar = sqrt({a0}) not in the field")
        t = a0.rational()
        s, k = squarefree_kernel(t.numerator * t.denominator)
        a0bar = Scalar(0, Fraction(s, t.denominator), k)
    s = x - x.inverse()
    if s == 0:
        raise PoleError("x = +-1 is a pole of Eq. \"sol5\"")
    Linv = _inv(L, "sol5 needs invertible L")
    return L.scale(a0bar) + _eye_like(L).scale((al[3] * a0bar * x + al[1]) / s) - Linv.scale(x * a0)


def bmw_deg4_search(rep: Representation, candidates: Optional[Sequence[tuple[str, Matrix]]] = None) -> dict:
    """Look for a candidate L whose minimal polynomial is a quartic matching Eq. "sol6".

    Returns ``{"status": "found", ...}`` or ``{"status": "skipped", "reason": ...}``;
    no instance is fabricated.
    """
    if candidates is None:
        RR = rr_boundary(rep)
        candidates = [("PR^2P", RR), ("(PR^2P)^-1", RR.inverse())]
    tried = []
    for name, L in candidates:
        mp = minimal_polynomial(L)
        deg = len(mp) - 1
        tried.append(f"{name}: minimal polynomial degree {deg}")
        if deg != 4:
            continue
        try:
            c, Q = bmw_constants(rep, L, k_max=4)
            al = sol6_alphas(rep, c, Q)
        except BoundaryError as exc:
            tried[-1] += f" ({exc})"
            continue
        if al == mp[:4]:
            return {"status": "found", "candidate": name, "L": L, "c": c, "Q": Q, "alpha": al}
        tried[-1] += " (quartic does not match Eq. \"sol6\")"
    return {"status": "skipped", "reason": "no rational quartic instance at these parameters", "tried": tried}


# --------------------------------------------------------------------------
# conjugated reflection equation
# --------------------------------------------------------------------------

def conjugate_boundary(K: Callable, b_sqrt: ScalarLike, variant: str, x: ScalarLike) -> Matrix:
    """Eq. "isom": K~(x) = K(b^{1/2}/x) (reflect) or K^{-1}(x/b^{1/2}) (invert)."""
    bs, x = as_scalar(b_sqrt), as_scalar(x)
    if variant == "reflect":
        return K(bs / x)
    if variant == "invert":
        return _inv(K(x / bs), "conjugate_boundary invert")
    raise ValueError(f"unknown variant {variant!r}")


def check_conjugated_re(rep: Representation, Kt: Callable, x: ScalarLike, z: ScalarLike, detail: bool = False):
    """Eq. "crefl": R(x/z) K~(z) R(b/(xz)) K~(x) = K~(x) R(b/(xz)) K~(z) R(x/z), K~ local at site 1."""
    x, z = as_scalar(x), as_scalar(z)
    Kx, Kz = _as_boundary(rep, Kt(x)), _as_boundary(rep, Kt(z))
    W = _quantum_dim(rep, Kx)
    shape = _space(rep, 1, W)
    Kx, Kz = _embed_boundary(rep, Kx, 1, W), _embed_boundary(rep, Kz, 1, W)
    Rq = embed(baxterized(rep, x / z), 1, shape)
    Rb = embed(baxterized(rep, rep.b / (x * z)), 1, shape)
    res = compare(Rq @ Kz @ Rb @ Kx, Kx @ Rb @ Kz @ Rq, "conjugated_re", 'Eq. "crefl" conjugated RE',
                  rep=rep.name, a=rep.a, x=x, z=z)
    return res if detail else res.passed


# --------------------------------------------------------------------------
# ready-made BoundarySolution packages
# --------------------------------------------------------------------------

def rr_boundary(rep: Representation) -> Matrix:
    """``P R^2 P`` on ``V (x) W`` with ``W = V``: the image of y_1 = sigma_0^2."""
    P = flip(rep.N)
    return P @ rep.R @ rep.R @ P


def trivial_solution(rep: Representation) -> BoundarySolution:
    eye = Matrix.identity(rep.N, (rep.N,))
    return BoundarySolution(
        "trivial", lambda x: eye, L=eye,
        derivative_at_one=lambda: Matrix.zeros(rep.N, (rep.N,)),
    )


def _rational_package(kind: str, L: Matrix, xi: Scalar, W: Optional[int], **extra) -> BoundarySolution:
    return BoundarySolution(
        kind, lambda x: rational_boundary(L, xi, x), L=L, xi=xi, W=W,
        derivative_at_one=lambda: rational_derivative_at_one(L, xi),
        exclusions=(Scalar(0), Scalar(1), Scalar(-1)), **extra,
    )


def rational_solution(rep: Representation, L: Matrix, xi: ScalarLike) -> BoundarySolution:
    L = _as_boundary(rep, L)
    W = _quantum_dim(rep, L)
    return _rational_package("rational", L, as_scalar(xi), W)


def evaluation_solution(rep: Representation, xi: ScalarLike = 1) -> BoundarySolution:
    if rep.is_bmw:
        raise ValueError("the evaluation boundary is built for gl(N)")
    _, _, L = evaluation_boundary(rep.q, rep.N)
    return _rational_package("evaluation", L, as_scalar(xi), rep.N)


def polynomial_solution(rep: Representation, L: Matrix, xi: ScalarLike) -> BoundarySolution:
    L = _as_boundary(rep, L)
    W = _quantum_dim(rep, L)
    xi = as_scalar(xi)
    alpha = minimal_polynomial(L)
    return BoundarySolution(
        "polynomial", lambda x: polynomial_boundary(alpha, xi, x, L)[1], L=L, xi=xi, alpha=alpha, W=W,
        derivative_at_one=lambda: rational_derivative_at_one(L, xi),
    )


def small_solution(rep: Representation, L: Matrix, zeta: ScalarLike) -> BoundarySolution:
    L = _as_boundary(rep, L)
    W = _quantum_dim(rep, L)
    alpha = minimal_polynomial(L)
    zeta = as_scalar(zeta)
    al = _monic(alpha)
    yt = _small_ytilde(al, L)

    def deriv():
        # d/dx (x - 1/x)/(alpha_1/x + zeta) at x = 1 is 2/(alpha_1 + zeta)
        return yt.scale(Scalar(2) / (al[1] + zeta))

    return BoundarySolution("small", lambda x: small_boundary(alpha, zeta, L, x), L=L, alpha=alpha,
                            zeta=zeta, W=W, derivative_at_one=deriv)


def prop2_solution(rep: Representation, L: Optional[Matrix] = None, sign: int = 1,
                   xi: Optional[ScalarLike] = None, allow_extension: bool = True) -> BoundarySolution:
    """Prop. 2 rational BMW solution with xi^2 = -a c/nu (``xi`` overrides, e.g. negative controls)."""
    if not rep.is_bmw:
        raise ValueError("prop2 needs a BMW representation")
    L = rr_boundary(rep) if L is None else _as_boundary(rep, L)
    W = _quantum_dim(rep, L)
    c, Q = bmw_constants(rep, L)
    xi_val = bmw_xi(rep, c, allow_extension, sign) if xi is None else as_scalar(xi)
    return _rational_package("rational", L, xi_val, W, c=c, Q=Q, params={"xi_forced": xi is not None})


def bmw_deg2_solution(rep: Representation, L: Optional[Matrix] = None, A: Optional[ScalarLike] = None,
                      case: str = "free_Q") -> BoundarySolution:
    L = rr_boundary(rep) if L is None else _as_boundary(rep, L)
    W = _quantum_dim(rep, L)
    c, Q = bmw_constants(rep, L)
    mp = minimal_polynomial(L)
    a0, a1 = deg2_alphas(rep, c, Q[1], case, mp[0], L)
    if A is None:
        xi = bmw_xi(rep, c)
        A = -(c / (xi * rep.nu)) * (rep.a + rep.a.inverse())
    A = as_scalar(A)
    return BoundarySolution("bmw_deg2", lambda x: _marlev2(L, a1, A, x), L=L, alpha=[a0, a1, Scalar(1)],
                            c=c, Q=Q, W=W, regular=False, params={"A": A, "case": case})
