"""Baxterized elements and the Yang-Baxter / unitarity / cross-unitarity checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .checks import PoleError, compare
from .linalg import Matrix, embed, insert_identity, weighted_partial_trace
from .rep import Representation
from .scalars import Scalar, ScalarLike, as_scalar

__all__ = [
    "SpectralOperator",
    "baxt_hecke",
    "baxt_hecke_product",
    "baxt_bmw",
    "baxt_bmw_forms",
    "baxterized",
    "normalized_element",
    "baxt_norm",
    "spectral_operator",
    "eta",
    "cross_partner",
    "check_ybe",
    "check_unitarity",
    "check_forms",
    "check_cross_unitarity",
]


@dataclass(frozen=True)
class SpectralOperator:
    builder: Callable[[Scalar], Matrix]
    domain_exclusions: tuple[Scalar, ...]

    def __call__(self, x: ScalarLike) -> Matrix:
        return self.builder(as_scalar(x))


def _eye(rep: Representation) -> Matrix:
    return Matrix.identity(rep.N * rep.N, rep.shape2)


# --------------------------------------------------------------------------
# Hecke
# --------------------------------------------------------------------------

def baxt_hecke(rep: Representation, x: ScalarLike) -> Matrix:
    """Eq. "baxtH": R(x) = R - x R^-1."""
    x = as_scalar(x)
    return rep.R - rep.Rinv.scale(x)


def baxt_hecke_product(rep: Representation, x: ScalarLike, a: Optional[Scalar] = None) -> Matrix:
    """Eq. "baxtH1": (a/x - 1/a)(R + a x)(R + a/x)^-1."""
    x = as_scalar(x)
    a = rep.a if a is None else as_scalar(a)
    if x == 0:
        raise PoleError("x = 0 in the product form")
    eye = _eye(rep)
    pref = a / x - a.inverse()
    den = rep.R + eye.scale(a / x)
    try:
        inv = den.inverse()
    except ArithmeticError as exc:
        raise PoleError(f"product form pole at x = {x}: {exc}") from exc
    return ((rep.R + eye.scale(a * x)) @ inv).scale(pref)


# --------------------------------------------------------------------------
# BMW
# --------------------------------------------------------------------------

def _bmw_pole(rep: Representation, x: Scalar, a: Scalar) -> None:
    if x == 0 or rep.nu + a / x == 0:
        raise PoleError(f"BMW baxterization pole: nu + a/x = 0 at x = {x}")


def baxt_bmw(rep: Representation, x: ScalarLike, a: Optional[ScalarLike] = None) -> Matrix:
    """Eq. "bmwbax" (middle form): (R - x R^-1) + lambda (nu + a)/(nu + a/x) K."""
    if not rep.is_bmw:
        raise ValueError("baxt_bmw needs a BMW representation")
    x = as_scalar(x)
    a = rep.a if a is None else as_scalar(a)
    _bmw_pole(rep, x, a)
    coeff = rep.lam * (rep.nu + a) / (rep.nu + a / x)
    return rep.R - rep.Rinv.scale(x) + rep.Khat.scale(coeff)


def baxt_bmw_forms(rep: Representation, x: ScalarLike, a: Optional[ScalarLike] = None) -> tuple[Matrix, Matrix, Matrix]:
    """The three closed forms of Eq. "bmwbax"."""
    x = as_scalar(x)
    a = rep.a if a is None else as_scalar(a)
    _bmw_pole(rep, x, a)
    nu, lam = rep.nu, rep.lam
    eye = _eye(rep)
    first = (rep.R.scale(a * (x.inverse() - 1)) + rep.Rinv.scale(nu * (1 - x)) + eye.scale(lam * (a + nu))).scale(
        (nu + a / x).inverse()
    )
    second = baxt_bmw(rep, x, a)
    third = baxt_hecke_product(rep, x, a)
    return first, second, third


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

def baxterized(rep: Representation, x: ScalarLike, a: Optional[ScalarLike] = None) -> Matrix:
    """R(x) for the representation's algebra type."""
    if rep.is_bmw:
        return baxt_bmw(rep, x, a)
    return baxt_hecke(rep, x)


def normalized_element(rep: Representation, x: ScalarLike, a: Optional[ScalarLike] = None) -> Matrix:
    """Eq. "baxtH2": sigma~(x; a) = R(x)/(a x - 1/a)."""
    x = as_scalar(x)
    a = rep.a if a is None else as_scalar(a)
    norm = a * x - a.inverse()
    if norm == 0:
        raise PoleError(f"normalization pole a x - 1/a = 0 at x = {x} (q = {rep.q})")
    return baxterized(rep, x, a).scale(norm.inverse())


def baxt_norm(rep: Representation, x: ScalarLike) -> Matrix:
    return normalized_element(rep, x)


def spectral_operator(rep: Representation, normalized: bool = False) -> SpectralOperator:
    excl = [Scalar(0)]
    if rep.is_bmw:
        excl.append(-rep.a / rep.nu)
    if normalized:
        excl.append(rep.a ** -2)
    fn = (lambda x: normalized_element(rep, x)) if normalized else (lambda x: baxterized(rep, x))
    return SpectralOperator(fn, tuple(excl))


def eta(rep: Representation, x: ScalarLike) -> Scalar:
    """Prop. 4: 1 - x (Hecke); Prop. 7: (1-x)(a nu x + 1)/(nu x + a) (BMW)."""
    x = as_scalar(x)
    if not rep.is_bmw:
        return 1 - x
    a, nu = rep.a, rep.nu
    den = nu * x + a
    if den == 0:
        raise PoleError(f"eta pole at x = {x}")
    return (1 - x) * (a * nu * x + 1) / den


def cross_partner(rep: Representation, x: ScalarLike) -> Scalar:
    """z = b/x (Hecke) or z = a^2/(nu^2 x) (BMW)."""
    x = as_scalar(x)
    return rep.b / x


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------

def check_ybe(rep: Representation, x: ScalarLike, y: ScalarLike, detail: bool = False):
    """Eq. "ybeH": R1(x) R2(xy) R1(y) = R2(y) R1(xy) R2(x) on V^(x)3."""
    x, y = as_scalar(x), as_scalar(y)
    shape = (rep.N,) * 3
    Rx, Ry, Rxy = baxterized(rep, x), baxterized(rep, y), baxterized(rep, x * y)
    lhs = embed(Rx, 1, shape) @ embed(Rxy, 2, shape) @ embed(Ry, 1, shape)
    rhs = embed(Ry, 2, shape) @ embed(Rxy, 1, shape) @ embed(Rx, 2, shape)
    res = compare(lhs, rhs, "ybe", 'Eq. "ybeH" Yang-Baxter', rep=rep.name, a=rep.a, x=x, y=y)
    return res if detail else res.passed


def check_unitarity(rep: Representation, x: ScalarLike, detail: bool = False):
    """Eq. "baxtH2": sigma~(x) sigma~(1/x) = I."""
    x = as_scalar(x)
    prod = normalized_element(rep, x) @ normalized_element(rep, x.inverse())
    res = compare(prod, _eye(rep), "unitarity", 'Eq. "baxtH2" unitarity', rep=rep.name, a=rep.a, x=x)
    return res if detail else res.passed


def check_forms(rep: Representation, x: ScalarLike, detail: bool = False):
    """Agreement of the closed forms (Eq. "baxtH1" / three forms of Eq. "bmwbax")."""
    x = as_scalar(x)
    if rep.is_bmw:
        f1, f2, f3 = baxt_bmw_forms(rep, x)
        res = compare(f1, f2, "forms", 'Eq. "bmwbax" three forms', rep=rep.name, a=rep.a, x=x)
        if res.passed:
            res = compare(f2, f3, "forms", 'Eq. "bmwbax" three forms', rep=rep.name, a=rep.a, x=x)
    else:
        res = compare(baxt_hecke(rep, x), baxt_hecke_product(rep, x), "forms", 'Eq. "baxtH1" product form',
                      rep=rep.name, a=rep.a, x=x)
    return res if detail else res.passed


def check_cross_unitarity(rep: Representation, Y: Matrix, x: ScalarLike, detail: bool = False):
    """Props. 4/7: Tr_D(n+1)(R_n(x) Y R_n(z)) = eta(x) eta(z) Tr_D(n)(Y) (x) I_n."""
    x = as_scalar(x)
    z = cross_partner(rep, x)
    n = len(Y.factors)
    N = rep.N
    if any(f != N for f in Y.factors):
        raise ValueError("Y must act on copies of V")
    shape = (N,) * (n + 1)
    Rn = embed(baxterized(rep, x), n, shape)
    Rz = embed(baxterized(rep, z), n, shape)
    Yext = embed(Y, 1, shape)
    lhs = weighted_partial_trace(Rn @ Yext @ Rz, n + 1, rep.Dop)
    inner = weighted_partial_trace(Y, n, rep.Dop)
    rhs = insert_identity(inner, n, N).scale(eta(rep, x) * eta(rep, z))
    anchor = 'Prop. 7 Eq. "map5" cross-unitarity' if rep.is_bmw else 'Prop. 4 Eq. "map1" cross-unitarity'
    res = compare(lhs, rhs, "cross_unitarity", anchor, rep=rep.name, a=rep.a, x=x, z=z, sites=n)
    return res if detail else res.passed
