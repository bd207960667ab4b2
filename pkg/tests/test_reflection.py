from fractions import Fraction

import pytest

from baxref.checks import PoleError
from baxref.linalg import Matrix, minimal_polynomial
from baxref.reflection import (
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
from baxref.scalars import Scalar

F = Fraction
PAIRS = [(F(3, 7), F(5, 11)), (F(-2, 13), F(7, 3)), (F(9, 5), F(-4, 9))]
LT = Matrix.from_entries([[0, 1], [2, 3]], (2,))


def _k(L, xi):
    return lambda x: rational_boundary(L, xi, x)


def test_evaluation_boundary():
    _, _, L = evaluation_boundary(2)
    expected = Matrix.from_entries(
        [[2, 0, 0, 0], [0, F(1, 2), F(3, 4), 0], [0, F(3, 4), F(13, 8), 0], [0, 0, 0, 2]], (2, 2))
    assert L == expected
    assert [Fraction(str(c)) for c in minimal_polynomial(L)] == [F(1, 4), F(-17, 8), 1]


def test_constant_re(reps):
    gl2 = reps("gl2")
    assert check_constant_re(gl2, evaluation_boundary(2)[2])
    assert check_constant_re(gl2, LT)
    bad = check_constant_re(gl2, Matrix.diag([2, 3], (2,)), detail=True)
    assert not bad.passed
    assert bad.witness == {"row": 1, "col": 2, "lhs": "9/1", "rhs": "6/1"}


@pytest.mark.parametrize("which", ["I", "evaluation"])
@pytest.mark.parametrize("xi", [F(1), F(3, 2)])
def test_prop1(reps, which, xi):
    rep = reps("gl2")
    L = Matrix.identity(2, (2,)) if which == "I" else evaluation_boundary(2)[2]
    K = _k(L, xi)
    for x, z in PAIRS:
        assert check_re(rep, K, x, z)
        assert K(x) @ K(1 / Scalar(x)) == Matrix.identity(L.dim, L.factors)
    if not (which == "I" and xi == 1):
        assert K(1) == Matrix.identity(L.dim, L.factors)
    else:
        with pytest.raises(PoleError):
            K(1)


def test_remark3_equivalences():
    L = evaluation_boundary(2)[2]
    alpha = minimal_polynomial(L)
    for xi in (F(1), F(3, 2)):
        for x, _ in PAIRS:
            rat = rational_boundary(L, xi, x)
            assert polynomial_boundary(alpha, xi, x, L)[1] == rat
            assert kulm2_boundary(alpha, xi, x, L) == rat
            assert marlev_display(alpha, xi, x, L) == rat
    L2 = Matrix.diag([2, 3, 5], (3,))
    a2 = minimal_polynomial(L2)
    x = F(3, 7)
    assert all(m == rational_boundary(L2, F(3, 2), x) for m in m2_displays(a2, F(3, 2), x, L2))
    L3 = Matrix.diag([2, 3, 5, 7], (4,))
    assert m3_display(minimal_polynomial(L3), F(3, 2), x, L3) == rational_boundary(L3, F(3, 2), x)


def test_small_solution(reps):
    L = Matrix.diag([0, 3], (2,))
    alpha = minimal_polynomial(L)
    K = lambda x: small_boundary(alpha, 1, L, x)  # noqa: E731
    for x, z in PAIRS:
        assert check_re(reps("gl2"), K, x, z)
    assert K(1) == Matrix.identity(2, (2,))


@pytest.mark.parametrize("variant", ["reflect", "invert"])
def test_conjugated_re(reps, variant):
    rep = reps("gl2")
    base = _k(LT, 1)
    Kt = lambda x: conjugate_boundary(base, rep.b_sqrt(), variant, x)  # noqa: E731
    for x, z in PAIRS:
        assert check_conjugated_re(rep, Kt, x, z)


def test_bmw_constants_rr(reps):
    for name in ("sp2", "so3"):
        for a in ("q", "-1/q"):
            rep = reps(name, 2, a)
            c, Q, info = bmw_constants(rep, rr_boundary(rep), detail=True)
            assert c == rep.nu ** 2
            assert info["c_reversed_equal"] and info["Q0_formula"]
            assert all(info["nazar"].values()) and len(info["nazar"]) == 3
    sp2 = reps("sp2")
    assert [Fraction(str(v)) for v in minimal_polynomial(rr_boundary(sp2))] == [F(1, 16), F(-257, 64), 1]


def test_prop2_xi(reps):
    sp2 = reps("sp2")
    assert bmw_xi(sp2, bmw_constants(sp2, rr_boundary(sp2))[0]) == F(1, 2)
    with pytest.raises(BoundaryError):
        bmw_xi(sp2, bmw_constants(sp2, LT)[0])  # xi^2 = -8
    sp2m = reps("sp2", 2, "-1/q")
    c, Q = bmw_constants(sp2m, LT)
    assert c == F(-1, 2) and Q[1] == -12
    assert bmw_xi(sp2m, c) == Scalar(0, 1, 2)
    so3m = reps("so3", 2, "-1/q")
    assert bmw_xi(so3m, bmw_constants(so3m, rr_boundary(so3m))[0]) == Scalar(0, F(1, 4), 2)


@pytest.mark.parametrize("name,L_name,a", [("sp2", "RR", "q"), ("sp2", "LT", "-1/q"), ("so3", "RR", "-1/q")])
def test_prop2_reflection_equation(reps, name, L_name, a):
    rep = reps(name, 2, a)
    L = rr_boundary(rep) if L_name == "RR" else LT
    xi = bmw_xi(rep, bmw_constants(rep, L)[0])
    for x, z in PAIRS:
        assert check_re(rep, _k(L, xi), x, z)
        assert check_re(rep, _k(L, -xi), x, z)


@pytest.mark.parametrize("name,L_name", [("sp2", "LT"), ("so3", "RR")])
def test_prop2_negative_control(reps, name, L_name):
    rep = reps(name, 2, "-1/q")
    L = rr_boundary(rep) if L_name == "RR" else LT
    res = check_re(rep, _k(L, F(7, 5)), *PAIRS[0], detail=True)
    assert not res.passed and res.witness["lhs"] != res.witness["rhs"]


def test_sp2_hecke_degeneracy(reps):
    """At a = q, Sp(2) R(x) is proportional to a Hecke baxterization: every xi passes."""
    rep = reps("sp2")
    assert len(minimal_polynomial(rep.R)) == 3
    assert check_re(rep, _k(rr_boundary(rep), F(7, 5)), *PAIRS[0])


def test_bmw_deg2(reps):
    rep = reps("sp2")
    sol = bmw_deg2_solution(rep)
    assert [Fraction(str(v)) for v in sol.alpha] == [F(1, 16), F(-257, 64), 1]
    assert sol.params["A"] == F(5, 8)
    for x, z in PAIRS:
        assert check_re(rep, sol, x, z)
    for A in (0, 5):
        assert check_re(rep, bmw_deg2_solution(rep, A=A), *PAIRS[1])
    # projectively (not entrywise) equal to the rational solution
    x = F(3, 10)
    M, R = sol(x), rational_boundary(sol.L, F(1, 2), x)
    w = R.nonzero_witness()
    ratio = M[w] / R[w]
    assert M == R.scale(ratio) and ratio != 1
    with pytest.raises(PoleError):
        sol(1)


def test_bmw_deg4_search_is_honest(reps):
    for name in ("sp2", "so3"):
        res = bmw_deg4_search(reps(name))
        assert res["status"] == "skipped" and res["tried"]
