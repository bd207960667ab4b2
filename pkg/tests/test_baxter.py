from fractions import Fraction

import pytest

from baxref.baxter import (
    baxt_hecke,
    check_cross_unitarity,
    check_forms,
    check_unitarity,
    check_ybe,
    cross_partner,
    eta,
    normalized_element,
)
from baxref.checks import PoleError
from baxref.linalg import Matrix
from baxref.suites import random_matrix

F = Fraction
XS = [F(3, 7), F(-5, 11), F(13, 4)]
REPS = [("gl2", "q"), ("gl3", "q"), ("gl2", "-1/q"), ("sp2", "q"), ("sp2", "-1/q"), ("so3", "q"), ("so3", "-1/q")]


@pytest.mark.parametrize("name,a", REPS)
def test_ybe_unitarity_forms(reps, name, a):
    rep = reps(name, 2, a)
    for x, y in zip(XS, XS[1:] + XS[:1]):
        assert check_ybe(rep, x, y)
    for x in XS:
        assert check_unitarity(rep, x)
        assert check_forms(rep, x)


@pytest.mark.parametrize("name,a", REPS)
def test_cross_unitarity(reps, name, a):
    rep = reps(name, 2, a)
    Ys = [random_matrix(1, (rep.N,)), random_matrix(2, (rep.N, rep.N))]
    if rep.is_bmw:
        Ys.append(rep.Khat)
    for Y in Ys:
        for x in XS:
            assert check_cross_unitarity(rep, Y, x)


def test_cross_unitarity_detects_wrong_partner(reps):
    rep = reps("gl2")
    # break the partner by using a representation with a different b through eta(x) only
    from baxref import baxter

    orig = baxter.cross_partner
    try:
        baxter.cross_partner = lambda r, x: r.b / x + 1
        assert not check_cross_unitarity(rep, random_matrix(1, (2,)), F(3, 7))
    finally:
        baxter.cross_partner = orig


def test_eta_and_partner(reps):
    gl2, sp2 = reps("gl2"), reps("sp2")
    assert eta(gl2, F(1, 3)) == F(2, 3)
    assert cross_partner(gl2, 2) == 8
    x = F(1, 3)
    assert eta(sp2, x) == (1 - x) * (sp2.a * sp2.nu * x + 1) / (sp2.nu * x + sp2.a)
    assert cross_partner(sp2, 4) == sp2.b / 4


def test_ybe_witness_on_broken_rmatrix(reps):
    rep = reps("gl2")
    from dataclasses import replace

    bad = replace(rep, R=rep.R + Matrix.unit(4, 0, 3))
    res = check_ybe(bad, F(3, 7), F(5, 2), detail=True)
    assert not res.passed
    assert {"row", "col", "lhs", "rhs"} <= set(res.witness)


def test_poles(reps):
    sp2 = reps("sp2")
    with pytest.raises(PoleError):
        normalized_element(sp2, sp2.a ** -2)
    assert baxt_hecke(reps("gl2"), 1) == Matrix.identity(4, (2, 2)).scale(reps("gl2").lam)
