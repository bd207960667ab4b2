"""Verification campaigns: each suite maps (representation, sample grid) to Check records."""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .baxter import check_cross_unitarity, check_forms, check_unitarity, check_ybe
from .chain import (
    ChainError,
    ChainModel,
    HAMILTONIAN_KINDS,
    default_scalar_solution,
    dress,
    hamiltonian,
    make_right,
    t_full,
    tau,
    tau1_explicit,
)
from .checks import Check, PoleError, compare
from .linalg import Matrix, embed, embed_sites, minimal_polynomial
from .reflection import (
    BoundaryError,
    bmw_constants,
    bmw_deg2_solution,
    bmw_deg4_search,
    bmw_xi,
    check_conjugated_re,
    check_constant_re,
    check_re,
    conjugate_boundary,
    evaluation_boundary,
    kulm2_boundary,
    m2_displays,
    m3_display,
    marlev_display,
    polynomial_boundary,
    rational_boundary,
    rr_boundary,
    small_boundary,
)
from .rep import Representation, antisymmetrizer, height
from .scalars import Scalar, ScalarLike, as_scalar, sample_generic

__all__ = [
    "SUITES",
    "Sampler",
    "thread_count",
    "wrong_xi",
    "run_suite",
    "chain_checks",
    "random_matrix",
]

SUITES = (
    "representation",
    "ybe",
    "unitarity",
    "cross-unitarity",
    "constant-re",
    "re",
    "conjugated-re",
    "bmw-constants",
    "antisymmetrizers",
)

THREADS_ENV = "BAXREF_THREADS"


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Sequence) -> list:
    """Order-preserving map, concurrent when BAXREF_THREADS > 1."""
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


class Sampler:
    """Deterministic stream of generic rational sample points for one seed."""

    def __init__(self, seed: int, bit_bound: int = 6):
        self.seed = seed
        self.bit_bound = bit_bound
        self.count = 0

    def draw(self, exclude: Iterable[ScalarLike] = ()) -> Scalar:
        self.count += 1
        base = [0, 1, -1, *exclude]
        return sample_generic(self.seed * 1_000_003 + self.count, self.bit_bound, base)


def random_matrix(seed: int, factors: Sequence[int], bound: int = 5) -> Matrix:
    """Deterministic random rational matrix on the given tensor factors."""
    rng = random.Random(f"baxref-matrix:{seed}:{tuple(factors)}")
    dim = 1
    for f in factors:
        dim *= f
    rows = [[Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(dim)] for _ in range(dim)]
    return Matrix.from_entries(rows, tuple(factors))


def _with_retry(sampler: Sampler, arity: int, fn: Callable, name: str, anchor: str, tries: int = 8, **params):
    """Draw ``arity`` points and run ``fn(*points)``; redraw on a pole."""
    last = None
    for _ in range(tries):
        pts = [sampler.draw() for _ in range(arity)]
        try:
            res = fn(*pts)
        except PoleError as exc:
            last = exc
            continue
        res.name, res.paper_anchor = name, anchor
        res.parameters.update(params)
        return res
    return Check(name, False, anchor, params, {"error": f"no pole-free sample after {tries} draws: {last}"})


def _scalar_check(name: str, anchor: str, lhs, rhs, **params) -> Check:
    ok = lhs == rhs
    return Check(name, ok, anchor, params, None if ok else {"row": 0, "col": 0, "lhs": str(lhs), "rhs": str(rhs)})


def _skipped(name: str, anchor: str, note: str, **params) -> Check:
    return Check(name, False, anchor, params, status="skipped", note=note)


def wrong_xi(correct: Optional[Scalar]) -> Scalar:
    """A generic xi violating xi^2 = -a c/nu (negative controls)."""
    for cand in (Fraction(7, 5), Fraction(11, 5), Fraction(13, 7)):
        s = Scalar(cand)
        if correct is None or (s != correct and s != -correct):
            return s
    raise AssertionError("unreachable")


# --------------------------------------------------------------------------
# per-suite campaigns
# --------------------------------------------------------------------------

def suite_representation(rep: Representation, **_) -> list[Check]:
    out = []
    anchor = 'Eq. "ahecke" Hecke relation' if not rep.is_bmw else 'Eqs. "bmw1"-"bmw2" BMW relations'
    for label, ok in sorted(rep.checks.items()):
        out.append(Check("rep_invariant", bool(ok), anchor, {"rep": rep.name, "invariant": label},
                         None if ok else {"error": label}))
    eye = Matrix.identity(rep.N * rep.N, rep.shape2)
    if rep.is_bmw:
        R = rep.R
        cubic = (R - eye.scale(rep.q)) @ (R + eye.scale(rep.q.inverse())) @ (R - eye.scale(rep.nu))
        out.append(compare(cubic, Matrix.zeros(eye.dim, rep.shape2), "bmw_cubic", 'Eq. "bmw1" cubic', rep=rep.name))
        out.append(_scalar_check("b_constant", 'Prop. 7 b = a^2/nu^2', rep.b, (rep.a / rep.nu) ** 2,
                                 rep=rep.name, a=rep.a))
        out.append(_scalar_check("kappa_trace_ratio", "Prop. 7 trace map (ratio 1/nu)", rep.kappa_trace_ratio,
                                 rep.nu.inverse(), rep=rep.name))
    else:
        out.append(compare(rep.R @ rep.R, rep.R.scale(rep.lam) + eye, "hecke_relation",
                           'Eq. "ahecke" Hecke relation', rep=rep.name, q=rep.q))
        out.append(_scalar_check("b_constant", 'Prop. 4 b = (1 - lambda Tr D)^-1 = q^(2N)', rep.b,
                                 rep.q ** (2 * rep.N), rep=rep.name))
        trD = rep.Dop.trace()
        out.append(_scalar_check("b_constant_trace", 'Prop. 4 b = (1 - lambda Tr D)^-1', rep.b,
                                 (1 - rep.lam * trD).inverse(), rep=rep.name))
    return out


def suite_ybe(rep, seeds, samples, **_) -> list[Check]:
    out = []
    for seed in seeds:
        sp = Sampler(seed)
        for _ in range(samples):
            out.append(_with_retry(sp, 2, lambda x, y: check_ybe(rep, x, y, detail=True),
                                   "ybe", 'Eq. "ybeH" Yang-Baxter', rep=rep.name, seed=seed))
    return out


def suite_unitarity(rep, seeds, samples, **_) -> list[Check]:
    out = []
    for seed in seeds:
        sp = Sampler(seed)
        for _ in range(samples):
            out.append(_with_retry(sp, 1, lambda x: check_unitarity(rep, x, detail=True),
                                   "unitarity", 'Eq. "baxtH2" unitarity', rep=rep.name, seed=seed))
            out.append(_with_retry(sp, 1, lambda x: check_forms(rep, x, detail=True),
                                   "forms", "baxterized closed forms", rep=rep.name, seed=seed))
    return out


def suite_cross_unitarity(rep, seeds, samples, **_) -> list[Check]:
    out = []
    anchor = 'Prop. 7 Eq. "map5" cross-unitarity' if rep.is_bmw else 'Prop. 4 Eq. "map1" cross-unitarity'
    for seed in seeds:
        sp = Sampler(seed)
        Ys = [random_matrix(seed, (rep.N,)), random_matrix(seed, (rep.N, rep.N))]
        if rep.is_bmw:
            Ys.append(rep.Khat)
        for _ in range(samples):
            for Y in Ys:
                out.append(_with_retry(sp, 1, lambda x: check_cross_unitarity(rep, Y, x, detail=True),
                                       "cross_unitarity", anchor, rep=rep.name, seed=seed))
    return out


def _constant_candidates(rep: Representation) -> list[tuple[str, Matrix]]:
    cands = [("I", Matrix.identity(rep.N, (rep.N,)))]
    if rep.N == 2 or not rep.is_bmw:
        cands.append(("scalar_default", default_scalar_solution(rep.N)))
    if rep.is_bmw:
        cands.append(("PR^2P", rr_boundary(rep)))
    else:
        cands.append(("evaluation", evaluation_boundary(rep.q, rep.N)[2]))
    return cands


def suite_constant_re(rep, **_) -> list[Check]:
    out = []
    for label, L in _constant_candidates(rep):
        if rep.is_bmw and label == "scalar_default" and not check_constant_re(rep, L):
            continue  # [[0,1],[2,3]] is a gl(2)/Sp(2) solution only
        res = check_constant_re(rep, L, detail=True)
        res.parameters["L"] = label
        out.append(res)
    return out


def _boundary_family_checks(rep, label, L, xi, sp, samples, seed) -> list[Check]:
    """RE, unitarity, locality and regularity of K(x) = (L - xi x)(L - xi/x)^-1."""
    out = []
    params = dict(rep=rep.name, L=label, xi=xi, seed=seed)
    K = lambda x: rational_boundary(L, xi, x)  # noqa: E731
    for _ in range(samples):
        out.append(_with_retry(sp, 2, lambda x, z: check_re(rep, K, x, z, detail=True),
                               "re", 'Eq. "reflHr" reflection equation', **params))

        def unit(x):
            return compare(K(x) @ K(x.inverse()), Matrix.identity(L.dim, L.factors), "boundary_unitarity",
                           "Remark 1 unitarity K(x)K(1/x) = 1", x=x, **params)

        out.append(_with_retry(sp, 1, unit, "boundary_unitarity", "Remark 1 unitarity", **params))

        def local(x):
            Kx = K(x)
            W = None if len(Kx.factors) == 1 else Kx.factors[1]
            shape = (rep.N,) * 3 + ((W,) if W else ())
            K1 = embed_sites(Kx, [1] + ([4] if W else []), shape)
            res = None
            for m in (2,):
                Rm = embed(rep.R, m, shape)
                res = compare(K1 @ Rm, Rm @ K1, "locality", "Prop. 1 locality [K_1(x), R_m] = 0 (m >= 2)",
                              x=x, m=m, **params)
                if not res.passed:
                    break
            return res

        out.append(_with_retry(sp, 1, local, "locality", "Prop. 1 locality", **params))
    try:
        K1 = K(Scalar(1))
        out.append(compare(K1, Matrix.identity(L.dim, L.factors), "regularity", "Remark 1 regularity K(1) = 1",
                           **params))
    except PoleError as exc:
        out.append(_skipped("regularity", "Remark 1 regularity K(1) = 1", f"K(1) is 0/0: {exc}", **params))
    return out


def _tag(check: Check, **params) -> Check:
    check.parameters.update(params)
    return check


def _remark3_checks(rep, L, xi, sp, samples, seed, label) -> list[Check]:
    out = []
    alpha = minimal_polynomial(L)
    params = dict(rep=rep.name, L=label, xi=xi, seed=seed, degree=len(alpha) - 1)
    for _ in range(samples):
        def eq(x):
            rat = rational_boundary(L, xi, x)
            b, poly = polynomial_boundary(alpha, xi, x, L)
            # the polynomial solution is normalized so that it equals the rational one
            res = compare(poly, rat, "remark3_polynomial", 'Remark 3 Eq. "kulm2" = Eq. "soluH"', x=x, **params)
            if res.passed:
                res = compare(kulm2_boundary(alpha, xi, x, L), rat, "remark3_polynomial",
                              'Remark 3 Eq. "kulm2" = Eq. "soluH"', x=x, **params)
            return res

        out.append(_with_retry(sp, 1, eq, "remark3_polynomial", 'Remark 3 Eq. "kulm2"', **params))
        m = len(alpha) - 2
        if m == 1:
            out.append(_with_retry(sp, 1, lambda x: compare(marlev_display(alpha, xi, x, L), rational_boundary(L, xi, x),
                                                            "remark3_display", 'Remark 3 Eq. "marlev"', x=x, **params),
                                   "remark3_display", 'Remark 3 Eq. "marlev"', **params))
        elif m == 2:
            def m2(x):
                f, s = m2_displays(alpha, xi, x, L)
                rat = rational_boundary(L, xi, x)
                res = compare(f, rat, "remark3_display", 'Remark 3 Eq. "m2"', x=x, **params)
                return res if not res.passed else compare(s, rat, "remark3_display", 'Remark 3 Eq. "m2"', x=x, **params)

            out.append(_with_retry(sp, 1, m2, "remark3_display", 'Remark 3 Eq. "m2"', **params))
        elif m == 3:
            out.append(_with_retry(sp, 1, lambda x: compare(m3_display(alpha, xi, x, L), rational_boundary(L, xi, x),
                                                            "remark3_display", "Remark 3 m = 3 display", x=x, **params),
                                   "remark3_display", "Remark 3 m = 3 display", **params))
    return out


def _small_checks(rep, sp, samples, seed) -> list[Check]:
    L = Matrix.diag([0] * (rep.N - 1) + [3], (rep.N,))
    alpha = minimal_polynomial(L)
    params = dict(rep=rep.name, L="diag(0,..,0,3)", zeta=1, seed=seed)
    out = []
    K = lambda x: small_boundary(alpha, 1, L, x)  # noqa: E731
    for _ in range(samples):
        out.append(_with_retry(sp, 2, lambda x, z: check_re(rep, K, x, z, detail=True),
                               "re_small", 'Remark 3 "small" solution', **params))
    out.append(compare(K(Scalar(1)), Matrix.identity(rep.N, (rep.N,)), "regularity_small",
                       'Remark 3 "small" solution K(1) = 1', **params))
    return out


def _rename(c: Check, name: str, anchor: str) -> Check:
    c.name, c.paper_anchor = name, anchor
    return c


def _bmw_candidates(rep: Representation, with_identity: bool = False) -> list[tuple[str, Matrix]]:
    """Constant-RE solutions for Prop. 2; L = I gives a scalar K(x) and is only a constants probe."""
    cands = [("PR^2P", rr_boundary(rep))]
    if rep.N == 2:
        cands.append(("[[0,1],[2,3]]", default_scalar_solution(2)))
    if with_identity:
        cands.append(("I", Matrix.identity(rep.N, (rep.N,))))
    return cands


def suite_re(rep, seeds, samples, xi=None, **_) -> list[Check]:
    out = []
    if not rep.is_bmw:
        if xi == "wrong":
            raise ValueError("--xi wrong is a Prop. 2 (BMW) negative control; Prop. 1 holds for every xi")
        xis = [Scalar(1), Scalar(Fraction(3, 2))] if xi is None else [as_scalar(xi)]
        ev = evaluation_boundary(rep.q, rep.N)[2]
        families = [("I", Matrix.identity(rep.N, (rep.N,))), ("evaluation", ev),
                    ("scalar_default", default_scalar_solution(rep.N))]
        for seed in seeds:
            sp = Sampler(seed)
            for x_i in xis:
                for label, L in families:
                    out.extend(_boundary_family_checks(rep, label, L, x_i, sp, samples, seed))
                out.extend(_remark3_checks(rep, ev, x_i, sp, samples, seed, "evaluation"))
                diagL = Matrix.diag(list(range(2, rep.N + 2)), (rep.N,))
                out.extend(_remark3_checks(rep, diagL, x_i, sp, samples, seed, "diag(2..N+1)"))
            out.extend(_small_checks(rep, sp, samples, seed))
        return out

    # BMW: Prop. 2 on every realizable candidate, deg-2 and deg-4 families
    for seed in seeds:
        sp = Sampler(seed)
        for label, L in _bmw_candidates(rep):
            if not check_constant_re(rep, L):
                continue
            try:
                c, Q = bmw_constants(rep, L)
            except BoundaryError as exc:
                out.append(_skipped("re", 'Prop. 2 Eq. "solBMW"', str(exc), rep=rep.name, L=label, seed=seed))
                continue
            try:
                correct = bmw_xi(rep, c)
            except BoundaryError as exc:
                correct = None
                reason = str(exc)
            if xi is None and correct is None:
                out.append(_skipped("re", 'Prop. 2 Eq. "solBMW"', f"xi not field-realizable: {reason}",
                                    rep=rep.name, a=rep.a, L=label, seed=seed))
                continue
            if xi == "wrong":
                used = wrong_xi(correct)
            elif xi is not None:
                used = as_scalar(xi)
            else:
                used = correct
            target = -rep.a * c / rep.nu
            params = dict(rep=rep.name, a=rep.a, L=label, xi=used, seed=seed)
            cond = _scalar_check("prop2_xi_condition", 'Prop. 2 xi^2 = -a c/nu', used * used, target, **params)
            if not cond.passed and _hecke_degenerate(rep):
                cond.note = ("R(x) is proportional to a Hecke baxterization here (a = q, Sp(2)); "
                             "Prop. 1 then makes the RE hold for every xi")
            out.append(cond)
            K = (lambda L_, xi_: (lambda x: rational_boundary(L_, xi_, x)))(L, used)
            for _ in range(samples):
                out.append(_with_retry(sp, 2, lambda x, z: check_re(rep, K, x, z, detail=True),
                                       "re", 'Prop. 2 Eq. "solBMW" reflection equation', **params))
        out.extend(_bmw_deg2_checks(rep, sp, samples, seed))
        found = bmw_deg4_search(rep)
        if found["status"] == "found":
            out.append(Check("re_deg4", True, 'Eq. "sol5"', {"rep": rep.name, "seed": seed}))
        else:
            out.append(_skipped("re_deg4", 'Eqs. "sol4"-"sol6" degree-4 solution',
                                found["reason"] + ": " + "; ".join(found["tried"]), rep=rep.name, a=rep.a, seed=seed))
    return out


def _hecke_degenerate(rep: Representation) -> bool:
    """R-hat is a rescaled Hecke generator and, for a = q, R(x) is proportional to
    its Hecke baxterization (Sp(2)); Prop. 1 then applies for every xi."""
    return rep.a == rep.q and len(minimal_polynomial(rep.R)) == 3


def _bmw_deg2_checks(rep, sp, samples, seed) -> list[Check]:
    anchor = 'Eq. "marlev2" degree-2 BMW solution'
    try:
        sol = bmw_deg2_solution(rep)
    except BoundaryError as exc:
        return [_skipped("re_deg2", anchor, f"no degree-2 instance: {exc}", rep=rep.name, a=rep.a, seed=seed)]
    params = dict(rep=rep.name, a=rep.a, L="PR^2P", A=sol.params["A"], seed=seed)
    out = []
    for _ in range(samples):
        out.append(_with_retry(sp, 2, lambda x, z: check_re(rep, sol, x, z, detail=True), "re_deg2", anchor, **params))
    return out


def suite_conjugated_re(rep, seeds, samples, xi2=None, **_) -> list[Check]:
    out = []
    anchor = 'Eq. "crefl" conjugated RE'
    for seed in seeds:
        sp = Sampler(seed)
        try:
            right = make_right(rep, "conjugated", xi2)
        except ChainError as exc:
            out.append(_skipped("conjugated_re", anchor, str(exc), rep=rep.name, a=rep.a, seed=seed))
            continue
        bs = rep.b_sqrt()
        base = lambda x: rational_boundary(right.Lt, right.xi2, x)  # noqa: E731
        for variant in ("reflect", "invert"):
            params = dict(rep=rep.name, a=rep.a, variant=variant, xi2=right.xi2, b_sqrt=bs, seed=seed)
            Kt = (lambda v: (lambda x: conjugate_boundary(base, bs, v, x)))(variant)
            for _ in range(samples):
                out.append(_with_retry(sp, 2, lambda x, z: check_conjugated_re(rep, Kt, x, z, detail=True), "conjugated_re", anchor, **params))
    return out


def suite_bmw_constants(rep, **_) -> list[Check]:
    anchor = 'Eqs. "bmwa5", "bmwa6", "nazar"'
    if not rep.is_bmw:
        return [_skipped("bmw_constants", anchor, "Hecke representation: no BMW central elements", rep=rep.name)]
    out = []
    for label, L in _bmw_candidates(rep, with_identity=True):
        params = dict(rep=rep.name, a=rep.a, L=label)
        if not check_constant_re(rep, L):
            continue
        try:
            c, Q, info = bmw_constants(rep, L, detail=True)
        except BoundaryError as exc:
            out.append(Check("bmw_constants", False, anchor, params, {"error": str(exc)}))
            continue
        out.append(Check("bmw_c_central", info["c_reversed_equal"], 'Eq. "bmwa5"', {**params, "c": c},
                         None if info["c_reversed_equal"] else {"error": "kappa Y != Y kappa"}))
        q0 = (rep.nu.inverse() + rep.lam - rep.nu) / rep.lam
        out.append(_scalar_check("bmw_Q0", 'Eq. "bmwa6" Q^(0)', Q[0], q0, **params))
        for n, ok in sorted(info["nazar"].items()):
            out.append(Check("bmw_nazar", ok, 'Eq. "nazar"', {**params, "n": n}, None if ok else {"error": "nazar"}))
        try:
            xi = bmw_xi(rep, c)
            out.append(_scalar_check("bmw_xi_realizable", 'Prop. 2 xi^2 = -a c/nu', xi * xi, -rep.a * c / rep.nu,
                                     **params, xi=xi))
        except BoundaryError as exc:
            out.append(_skipped("bmw_xi_realizable", 'Prop. 2 xi^2 = -a c/nu', str(exc), **params))
    return out


def suite_antisymmetrizers(rep, **_) -> list[Check]:
    anchor = 'Remark 4 Eq. "antirr"' if not rep.is_bmw else 'Remark 6 Eq. "antirBMW"'
    out = []
    try:
        h = height(rep, rep.N + 1)
    except PoleError as exc:
        return [_skipped("height", anchor, f"antisymmetrizer tower singular: {exc}", rep=rep.name)]
    if not rep.is_bmw:
        out.append(_scalar_check("height", anchor, h, rep.N, rep=rep.name))
    else:
        out.append(Check("height", h is not None, anchor, {"rep": rep.name, "height": h},
                         None if h is not None else {"error": "no height <= N+1"}))
    if h is not None:
        A_top = antisymmetrizer(rep, h + 1)
        out.append(Check("antisymmetrizer_zero", A_top.is_zero(), anchor, {"rep": rep.name, "k": h + 1},
                         None if A_top.is_zero() else {"error": "nonzero"}))
        out.append(_scalar_check("antisymmetrizer_rank", anchor, antisymmetrizer(rep, h).rank(), 1,
                                 rep=rep.name, k=h))
    return out


_SUITE_FUNCS = {
    "representation": suite_representation,
    "ybe": suite_ybe,
    "unitarity": suite_unitarity,
    "cross-unitarity": suite_cross_unitarity,
    "constant-re": suite_constant_re,
    "re": suite_re,
    "conjugated-re": suite_conjugated_re,
    "bmw-constants": suite_bmw_constants,
    "antisymmetrizers": suite_antisymmetrizers,
}


def run_suite(name: str, rep: Representation, seeds: Sequence[int], samples: int,
              xi=None, xi2=None) -> list[Check]:
    names = SUITES if name == "all" else (name,)
    out: list[Check] = []
    for n in names:
        checks = _SUITE_FUNCS[n](rep, seeds=seeds, samples=samples, xi=xi, xi2=xi2)
        for c in checks:
            c.parameters.setdefault("suite", n)
        out.extend(checks)
    return out


# --------------------------------------------------------------------------
# chain campaign
# --------------------------------------------------------------------------

def _commuting(name: str, anchor: str, fn: Callable, points: Sequence[Scalar], **params) -> list[Check]:
    mats = pmap(fn, list(points))
    out = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            A, B = mats[i], mats[j]
            out.append(compare(A @ B, B @ A, name, anchor, x=points[i], z=points[j], **params))
    return out


def _points(seed: int, count: int, chain: ChainModel, fn: Callable) -> list[Scalar]:
    sp = Sampler(seed)
    pts: list[Scalar] = []
    tries = 0
    while len(pts) < count and tries < 20 * count:
        tries += 1
        x = sp.draw(exclude=pts)
        try:
            fn(x)
        except PoleError:
            continue
        pts.append(x)
    return pts


def chain_checks(chain: ChainModel, seeds: Sequence[int], samples: int, kinds: Optional[Sequence[str]] = None,
                 explicit_kind: bool = False) -> list[Check]:
    rep = chain.rep
    base = dict(rep=rep.name, sites=chain.sites, left=chain.left.kind, right=chain.right.kind)
    out: list[Check] = []
    for seed in seeds:
        params = {**base, "seed": seed}
        cache: dict = {}

        def tfun(x):
            if x not in cache:
                cache[x] = t_full(chain, x)
            return cache[x]

        pts = _points(seed, max(samples, 3), chain, tfun)
        out.extend(_commuting("tau_commuting", 'Prop. 5 Eq. "trmat1" [tau(x), tau(z)] = 0',
                              lambda x: tau(chain, x), pts, **params))
        if chain.right.kind != "trivial":
            out.extend(_commuting("t_commuting", 'Prop. 6 Eq. "trmat" [t(x), t(z)] = 0', tfun, pts, **params))
        if chain.left.kind == "trivial":
            out.append(compare(tau1_explicit(chain, pts[0]), tau(chain, pts[0]), "tau1_explicit",
                               'Eq. "tau1" explicit form', x=pts[0], **params))
        # Prop. 3 closure: the dressed boundary solves the level-k RE
        for k in range(2, min(chain.n, 3) + 1):
            res = check_re(rep, lambda x, k=k: dress(chain, x, level=k), pts[0], pts[1], level=k, detail=True)
            out.append(_rename(_tag(res, **params), "dressed_re", 'Prop. 3 Eq. "xxz5" dressed RE'))
        # regularity collapse
        try:
            T1 = t_full(chain, Scalar(1))
            w = T1.nonzero_witness()
            s = T1[w[0], w[0]] if w is not None else Scalar(0)
            out.append(compare(T1, Matrix.identity(T1.dim, T1.factors).scale(s), "regularity_collapse",
                               "Remark 1: t(1) is scalar for regular boundaries", **params))
        except PoleError as exc:
            out.append(_skipped("regularity_collapse", "Remark 1: t(1) is scalar for regular boundaries",
                                f"K(1) is singular: {exc}", **params))
        # Hamiltonians
        for kind in (kinds or HAMILTONIAN_KINDS):
            anchor = "Hamiltonian/transfer commutation [H, t(z)] = 0"
            try:
                H = hamiltonian(chain, kind)
            except ChainError as exc:
                if explicit_kind:
                    out.append(Check("h_commutes", False, anchor, {**params, "kind": kind}, {"error": str(exc)}))
                else:
                    out.append(_skipped("h_commutes", anchor, str(exc), **params, kind=kind))
                continue
            for z in pts:
                T = tfun(z)
                out.append(compare(H @ T, T @ H, "h_commutes", anchor, kind=kind, z=z, **params))
    return out
