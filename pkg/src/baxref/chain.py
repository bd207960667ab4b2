"""Open spin chains: dressed boundaries, transfer matrices, Hamiltonians, spectra.

A :class:`ChainModel` with ``sites = n - 1`` works on ``n`` copies of V
(plus the left boundary's quantum factor ``W``, if any, as the last
factor); the quantum trace removes copy ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .baxter import baxterized
from .checks import Check, PoleError, compare
from .linalg import (
    Matrix,
    apply_left,
    apply_right,
    char_polynomial,
    embed,
    embed_sites,
    rational_roots,
    weighted_partial_trace,
)
from .linalg.polys import poly_divmod
from .reflection import (
    BoundaryError,
    BoundarySolution,
    bmw_constants,
    bmw_deg2_solution,
    bmw_deg4_search,
    bmw_xi,
    check_constant_re,
    evaluation_solution,
    polynomial_solution,
    rational_boundary,
    rational_derivative_at_one,
    rational_solution,
    rr_boundary,
    small_solution,
    trivial_solution,
)
from .rep import Representation
from .scalars import Scalar, ScalarLike, as_scalar

__all__ = [
    "ChainError",
    "BoundaryUnavailable",
    "RightBoundary",
    "ChainModel",
    "default_scalar_solution",
    "make_left",
    "make_right",
    "dress",
    "tau",
    "tau1_explicit",
    "t_full",
    "hamiltonian",
    "check_h_commutes",
    "spectrum",
    "HAMILTONIAN_KINDS",
]

HAMILTONIAN_KINDS = ("H0", "H1", "H2", "H3", "H4", "H5", "H6", "H7")


class ChainError(ValueError):
    """Incompatible chain configuration (boundary kind, Hamiltonian kind, sizes)."""


class BoundaryUnavailable(ChainError):
    """The requested boundary family has no instance at these parameters (nothing is fabricated)."""


@dataclass
class RightBoundary:
    """Local scalar solution K~(x) of the conjugated RE (Eqs. "scal", "local", "2case")."""

    kind: str  # "trivial" | "conjugated"
    Lt: Optional[Matrix] = None
    xi2: Optional[Scalar] = None
    b_sqrt: Optional[Scalar] = None

    def __call__(self, rep: Representation, x: ScalarLike) -> Matrix:
        x = as_scalar(x)
        if self.kind == "trivial":
            return Matrix.identity(rep.N, (rep.N,))
        # Eq. "2case" option 2 = Eq. "isom" reflect variant of the rational solution
        return rational_boundary(self.Lt, self.xi2, self.b_sqrt / x)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "xi2": None if self.xi2 is None else str(self.xi2),
            "b_sqrt": None if self.b_sqrt is None else str(self.b_sqrt),
            "Lt": None if self.Lt is None else self.Lt.to_json(),
        }


@dataclass
class ChainModel:
    rep: Representation
    sites: int
    left: BoundarySolution
    right: RightBoundary

    def __post_init__(self):
        if self.sites < 1:
            raise ChainError("sites must be >= 1")

    @property
    def n(self) -> int:
        return self.sites + 1

    @property
    def W(self) -> Optional[int]:
        return self.left.W

    @property
    def shape(self) -> tuple[int, ...]:
        """Full space before tracing: n copies of V (+ W)."""
        return (self.rep.N,) * self.n + ((self.W,) if self.W else ())

    @property
    def reduced_shape(self) -> tuple[int, ...]:
        return (self.rep.N,) * (self.n - 1) + ((self.W,) if self.W else ())

    def to_json(self) -> dict:
        return {
            "rep": self.rep.name,
            "sites": self.sites,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


# --------------------------------------------------------------------------
# boundary factories
# --------------------------------------------------------------------------

def default_scalar_solution(N: int) -> Matrix:
    """A non-trivial numeric solution of the constant RE: [[0,1],[2,3]] for N = 2,
    diag(0, ..., 0, 1) otherwise."""
    if N == 2:
        return Matrix.from_entries([[0, 1], [2, 3]], (2,))
    return Matrix.diag([0] * (N - 1) + [1], (N,))


def _xi_for(rep: Representation, L: Matrix) -> Scalar:
    c, _ = bmw_constants(rep, L)
    return bmw_xi(rep, c)


def _prop2_left_candidates(rep: Representation):
    out = [("PR^2P", rr_boundary(rep))]
    if rep.N == 2:
        out.append(("[[0,1],[2,3]]", default_scalar_solution(2)))
    return out


def make_left(rep: Representation, name: str, xi: Optional[ScalarLike] = None,
              zeta: ScalarLike = 1) -> BoundarySolution:
    """Left boundary by CLI name: trivial | rational | evaluation | poly | small | prop2 | bmw2 | bmw4."""
    name = name.split(":")[0]
    if name == "trivial":
        return trivial_solution(rep)
    if rep.is_bmw:
        if name in ("prop2", "rational"):
            errors = []
            for label, L in _prop2_left_candidates(rep):
                try:
                    xi_val = _xi_for(rep, L) if xi is None else as_scalar(xi)
                except BoundaryError as exc:
                    errors.append(f"{label}: {exc}")
                    continue
                c, Q = bmw_constants(rep, L)
                sol = rational_solution(rep, L, xi_val)
                sol.c, sol.Q = c, Q
                sol.params = {"L": label, "xi_forced": xi is not None}
                return sol
            raise ChainError("no Prop. 2 boundary realizable: " + "; ".join(errors))
        if name == "bmw2":
            return bmw_deg2_solution(rep)
        if name == "bmw4":
            found = bmw_deg4_search(rep)
            raise BoundaryUnavailable(f"bmw4: {found['reason']} ({'; '.join(found['tried'])})")
        raise ChainError(f"left boundary {name!r} is not available for BMW representations")
    xi_val = Scalar(1) if xi is None else as_scalar(xi)
    if name == "rational":
        return rational_solution(rep, default_scalar_solution(rep.N), xi_val)
    if name == "evaluation":
        return evaluation_solution(rep, xi_val)
    if name == "poly":
        ev = evaluation_solution(rep, xi_val)
        return polynomial_solution(rep, ev.L, xi_val)
    if name == "small":
        L = Matrix.diag([0] * (rep.N - 1) + [3], (rep.N,))
        return small_solution(rep, L, zeta)
    raise ChainError(f"unknown left boundary {name!r}")


def make_right(rep: Representation, name: str, xi2: Optional[ScalarLike] = None) -> RightBoundary:
    if name == "trivial":
        return RightBoundary("trivial")
    if name != "conjugated":
        raise ChainError(f"unknown right boundary {name!r}")
    if not rep.is_bmw:
        Lt = default_scalar_solution(rep.N)
        if not check_constant_re(rep, Lt):
            raise ChainError("default right-boundary matrix fails the constant RE")
        return RightBoundary("conjugated", Lt, Scalar(1) if xi2 is None else as_scalar(xi2), rep.b_sqrt())
    errors = []
    cands = ([("[[0,1],[2,3]]", default_scalar_solution(2))] if rep.N == 2 else []) + [
        ("I", Matrix.identity(rep.N, (rep.N,)))
    ]
    for label, Lt in cands:
        if not check_constant_re(rep, Lt):
            continue
        try:
            x2 = _xi_for(rep, Lt) if xi2 is None else as_scalar(xi2)
        except BoundaryError as exc:
            errors.append(f"{label}: {exc}")
            continue
        return RightBoundary("conjugated", Lt, x2, rep.b_sqrt())
    raise ChainError("no conjugated BMW right boundary realizable: " + "; ".join(errors))


# --------------------------------------------------------------------------
# transfer matrices
# --------------------------------------------------------------------------

def _left_embedded(chain: ChainModel, x: Scalar, level: int) -> Matrix:
    K = chain.left(x)
    if len(K.factors) == 1 and chain.W is None:
        K = K.with_factors((chain.rep.N,))
    shape = (chain.rep.N,) * level + ((chain.W,) if chain.W else ())
    sites = [1] + ([level + 1] if chain.W else [])
    return embed_sites(K, sites, shape)


def dress(chain: ChainModel, x: ScalarLike, level: Optional[int] = None) -> Matrix:
    """Prop. 3, Eq. "xxz5": y_n(x) = R_{n-1}(x)...R_1(x) K_1(x) R_1(x)...R_{n-1}(x) on copies 1..n (+W)."""
    x = as_scalar(x)
    n = chain.n if level is None else level
    Rx = baxterized(chain.rep, x)
    M = _left_embedded(chain, x, n)
    for m in range(1, n):  # Eq. "xxz5a" recursion
        M = apply_right(apply_left(Rx, m, M), Rx, m)
    return M


def tau(chain: ChainModel, x: ScalarLike) -> Matrix:
    """Prop. 5, Eq. "trmat1": tau(x) = Tr_D(n)(y_n(x))."""
    return weighted_partial_trace(dress(chain, x), chain.n, chain.rep.Dop)


def tau1_explicit(chain: ChainModel, x: ScalarLike) -> Matrix:
    """Eq. "tau1": Tr_D(n)(R_{n-1}(x)...R_2(x) R_1(x)^2 R_2(x)...R_{n-1}(x)) (K_1 = 1)."""
    x = as_scalar(x)
    rep = chain.rep
    shape = (rep.N,) * chain.n
    Rx = baxterized(rep, x)
    M = embed(Rx @ Rx, 1, shape)
    for m in range(2, chain.n):
        Rm = embed(Rx, m, shape)
        M = Rm @ M @ Rm
    return weighted_partial_trace(M, chain.n, rep.Dop)


def t_full(chain: ChainModel, x: ScalarLike) -> Matrix:
    """Prop. 6, Eqs. "trmat2"/"trmat": t(x) = Tr_D(n)(K_n(x) K~_n(x))."""
    x = as_scalar(x)
    Y = dress(chain, x)
    if chain.right.kind != "trivial":
        Y = apply_right(Y, chain.right(chain.rep, x), chain.n)
    return weighted_partial_trace(Y, chain.n, chain.rep.Dop)


# --------------------------------------------------------------------------
# Hamiltonians
# --------------------------------------------------------------------------

def _bulk_local(rep: Representation) -> Matrix:
    """R (Hecke) or R + lambda nu/(nu + a) K (BMW): minus the x-derivative of R(x) at 1, up to constants."""
    if not rep.is_bmw:
        return rep.R
    coeff = rep.lam * rep.nu / (rep.nu + rep.a)
    return rep.R + rep.Khat.scale(coeff)


def _bulk_sum(chain: ChainModel, shape: tuple[int, ...]) -> Matrix:
    h = _bulk_local(chain.rep)
    out = Matrix.zeros(int(np.prod(shape)), shape)
    for m in range(1, chain.n - 1):
        out = out + embed(h, m, shape)
    return out


def _left_term(chain: ChainModel, shape: tuple[int, ...], deriv: Matrix) -> Matrix:
    """-(lambda/2) K_1'(1) embedded on copy 1 (+W)."""
    K = deriv
    if len(K.factors) == 1 and chain.W is None:
        K = K.with_factors((chain.rep.N,))
    sites = [1] + ([len(shape)] if chain.W else [])
    return embed_sites(K, sites, shape).scale(-chain.rep.lam / 2)


def _right_term(chain: ChainModel, shape: tuple[int, ...]) -> Matrix:
    """Tr_D(n)(h_{n-1} K~_n(1)) / Tr_D(n)(K~_n(1)) on the reduced space."""
    rep = chain.rep
    n = chain.n
    Kt1 = chain.right(rep, Scalar(1))
    norm = (rep.Dop @ Kt1).trace()
    if norm == 0:
        raise ChainError("degenerate configuration: Tr_D(K~(1)) = 0")
    if n < 2:
        return Matrix.zeros(int(np.prod(shape)), shape)
    full = shape[: n - 1] + (rep.N,) + shape[n - 1:]
    op = embed(_bulk_local(rep) @ embed(Kt1, 2, (rep.N, rep.N)), n - 1, full)
    return weighted_partial_trace(op, n, rep.Dop).scale(norm.inverse())


def hamiltonian(chain: ChainModel, kind: str) -> Matrix:
    """Hamiltonians of Eqs. "ham1"-"ham4", "xxz2" and H_7, with const = 0.

    The returned operator acts on copies 1..n-1 (+W), i.e. the space of t(x).
    """
    rep = chain.rep
    if kind not in HAMILTONIAN_KINDS:
        raise ChainError(f"unknown Hamiltonian kind {kind!r}")
    hecke_kinds = ("H0", "H1", "H2", "H3")
    if (kind in hecke_kinds) == rep.is_bmw:
        raise ChainError(f"{kind} is not defined for {'BMW' if rep.is_bmw else 'Hecke'} representations")
    shape = chain.reduced_shape
    left, right = chain.left, chain.right
    H = _bulk_sum(chain, shape)
    if kind in ("H1", "H5"):
        if left.kind != "trivial" or right.kind != "trivial":
            raise ChainError(f"{kind} needs trivial boundaries on both ends")
        return H
    if kind in ("H2", "H4", "H3", "H7"):
        if left.L is None or left.xi is None or left.kind not in ("rational", "evaluation", "polynomial"):
            raise ChainError(f"{kind} needs a rational left boundary (L, xi)")
        if kind in ("H2", "H4") and right.kind != "trivial":
            raise ChainError(f"{kind} needs a trivial right boundary")
        if kind in ("H3", "H7") and right.kind != "conjugated":
            raise ChainError(f"{kind} needs a conjugated right boundary")
        L, xi = left.L, left.xi
        try:
            # -(lambda/2) K'(1) = lambda xi (L - xi)^-1 (Eq. "ham2")
            deriv = rational_derivative_at_one(L, xi)
        except (ArithmeticError, PoleError) as exc:
            raise ChainError(f"L_1 - xi is singular: {exc}") from exc
        H = H + _left_term(chain, shape, deriv)
        if kind in ("H3", "H7"):
            H = H + _right_term(chain, shape)
        return H
    # H0 / H6: general regular left boundary with closed-form K'(1)
    if left.derivative_at_one is None or not left.regular:
        raise ChainError(f"H0 unavailable: no closed-form K'(1) for boundary kind {left.kind!r}")
    H = H + _left_term(chain, shape, left.derivative_at_one())
    return H + _right_term(chain, shape)


def check_h_commutes(chain: ChainModel, kind: str, z_samples: Sequence[ScalarLike], detail: bool = False):
    """[H, t(z)] = 0 for every sample z."""
    H = hamiltonian(chain, kind)
    for z in z_samples:
        z = as_scalar(z)
        T = t_full(chain, z)
        res = compare(H @ T, T @ H, f"h_commutes_{kind}", "Props. 5/6 + derivative at x = 1",
                      rep=chain.rep.name, sites=chain.sites, z=z, kind=kind)
        if not res.passed:
            return res if detail else False
    res = Check(f"h_commutes_{kind}", True, "Props. 5/6 + derivative at x = 1",
                {"rep": chain.rep.name, "sites": chain.sites, "kind": kind, "z": [str(as_scalar(z)) for z in z_samples]})
    return res if detail else True


# --------------------------------------------------------------------------
# spectrum
# --------------------------------------------------------------------------

def spectrum(H: Matrix) -> dict:
    """Exact characteristic polynomial, exact rational roots, approximate remaining roots."""
    cp = char_polynomial(H)
    rational = []
    rest = list(cp)
    if all(c.is_rational for c in cp):
        rational = rational_roots(cp)
        for r, mult in rational:
            for _ in range(mult):
                rest, rem = poly_divmod(rest, [-r, 1])
                assert all(c == 0 for c in rem)
    approx = []
    if len(rest) > 1:
        coeffs = [float(c) for c in reversed(rest)]
        vals = np.roots(coeffs)
        approx = sorted(
            ([round(float(v.real), 12), round(float(v.imag), 12)] for v in vals),
        )
    factors = [f"(t-({r}))^{m}" if m > 1 else f"(t-({r}))" for r, m in rational]
    if len(rest) > 1:
        factors.append(f"[degree-{len(rest) - 1} residual]")
    return {
        "char_poly": [str(c) for c in cp],
        "rational_roots": [{"root": str(Scalar(r)), "multiplicity": m} for r, m in rational],
        "residual_factor": [str(c) for c in rest],
        "approx_roots": approx,
        "approximate": bool(approx),
        "factorization": "*".join(factors) or "1",
    }
