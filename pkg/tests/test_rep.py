from fractions import Fraction

import pytest

from baxref.linalg import Matrix, char_polynomial, rational_roots
from baxref.rep import antisymmetrizer, build_named, height, resolve_a
from baxref.scalars import Scalar

F = Fraction


@pytest.mark.parametrize("name,q", [("gl2", 2), ("gl3", 2), ("gl2", F(7, 3)), ("gl3", F(7, 3))])
def test_hecke_relation_and_b(reps, name, q):
    rep = reps(name, q)
    eye = Matrix.identity(rep.N ** 2, rep.shape2)
    assert rep.R @ rep.R == rep.R.scale(rep.lam) + eye
    assert rep.b == Scalar(q) ** (2 * rep.N)
    assert rep.b == (1 - rep.lam * rep.Dop.trace()).inverse()


def test_gl2_trace_constants(reps):
    rep = reps("gl2")
    assert rep.Dop == Matrix.diag([F(1, 8), F(1, 2)], (2,))
    assert rep.Dop.trace() == F(5, 8)
    assert rep.Dplus == 1 and rep.Dminus == F(1, 16) and rep.b == 16


def test_gl2_char_poly(reps):
    rep = reps("gl2")
    assert rational_roots(char_polynomial(rep.R)) == [(F(-1, 2), 1), (F(2), 3)]


@pytest.mark.parametrize("name", ["sp2", "so3", "sp4", "so4"])
@pytest.mark.parametrize("a", ["q", "-1/q"])
def test_bmw_invariants(reps, name, a):
    rep = reps(name, 2, a)
    assert all(rep.checks.values()), rep.checks
    # Prop. 7 trace map: kappa (Y x 1) kappa = (1/nu) Tr_D(Y) kappa
    assert rep.kappa_trace_ratio == rep.nu.inverse()
    assert rep.b == (rep.a / rep.nu) ** 2


def test_sp2_constants(reps):
    rep = reps("sp2")
    assert rep.nu == F(-1, 8) and rep.D0 == F(17, 32)
    assert rep.Dplus == 1 and rep.Dminus == rep.nu ** 2
    assert rep.b == 256
    assert reps("sp2", 2, "-1/q").b == 16
    assert reps("so3").nu == F(1, 4) and reps("so3").D0 == F(7, 8)


def test_heights_and_antisymmetrizers(reps):
    gl2, gl3 = reps("gl2"), reps("gl3")
    assert height(gl2, 3) == 2 and height(gl3, 4) == 3
    assert height(gl2, 1) is None
    assert antisymmetrizer(gl2, 3).is_zero() and antisymmetrizer(gl2, 2).rank() == 1
    assert antisymmetrizer(gl3, 4).is_zero() and antisymmetrizer(gl3, 3).rank() == 1


def test_degenerate_q_rejected():
    for q in (0, 1, -1):
        with pytest.raises((ValueError, ArithmeticError)):
            build_named("gl2", q)
    with pytest.raises(ValueError):
        resolve_a(Scalar(2), "bogus")
    with pytest.raises(ValueError):
        build_named("gl9", 2)


def test_json(reps):
    js = reps("sp2").to_json(with_matrices=True)
    assert js["nu"] == "-1/8" and js["kind"] == "bmw"
    assert Matrix.from_json(js["R"]) == reps("sp2").R
