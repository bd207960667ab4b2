from fractions import Fraction

import pytest

from baxref.chain import (
    BoundaryUnavailable,
    ChainError,
    ChainModel,
    check_h_commutes,
    dress,
    hamiltonian,
    make_left,
    make_right,
    spectrum,
    t_full,
    tau,
    tau1_explicit,
)
from baxref.linalg import Matrix, commutator_is_zero, embed
from baxref.reflection import check_re

F = Fraction
ZS = [F(2, 3), F(3, 5), F(7, 9)]


def chain(reps, name, sites, left, right, a="q", xi=None):
    rep = reps(name, 2, a)
    return ChainModel(rep, sites, make_left(rep, left, xi), make_right(rep, right))


def pairwise_commute(mats):
    return all(commutator_is_zero(mats[i], mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats)))


@pytest.mark.parametrize("left", ["trivial", "rational"])
@pytest.mark.parametrize("right", ["trivial", "conjugated"])
def test_gl2_commuting_families(reps, left, right):
    ch = chain(reps, "gl2", 3, left, right, xi=F(3, 2))
    assert pairwise_commute([tau(ch, z) for z in ZS])
    assert pairwise_commute([t_full(ch, z) for z in ZS])


@pytest.mark.parametrize("left,right", [("trivial", "trivial"), ("prop2", "trivial"), ("prop2", "conjugated"),
                                        ("trivial", "conjugated")])
@pytest.mark.parametrize("a", ["q", "-1/q"])
def test_sp2_commuting_families(reps, left, right, a):
    ch = chain(reps, "sp2", 2, left, right, a=a)
    assert pairwise_commute([t_full(ch, z) for z in ZS])


def test_shapes_follow_paper_site_count(reps):
    ch = chain(reps, "gl2", 3, "evaluation", "trivial")
    assert ch.n == 4 and ch.shape == (2, 2, 2, 2, 2)
    assert t_full(ch, F(2, 3)).factors == (2, 2, 2, 2)
    with pytest.raises(ChainError):
        ChainModel(ch.rep, 0, ch.left, ch.right)


def test_tau1_explicit(reps):
    ch = chain(reps, "gl2", 3, "trivial", "trivial")
    assert tau1_explicit(ch, F(2, 3)) == tau(ch, F(2, 3))


@pytest.mark.parametrize("level", [2, 3])
def test_dressed_boundary_solves_level_k_re(reps, level):
    ch = chain(reps, "gl2", 3, "rational", "trivial", xi=F(3, 2))
    assert check_re(ch.rep, lambda x: dress(ch, x, level=level), F(3, 7), F(5, 11), level=level)


def test_regularity_collapse(reps):
    ch = chain(reps, "gl2", 3, "evaluation", "conjugated", xi=F(3, 2))
    T1 = t_full(ch, 1)
    assert T1 == Matrix.identity(T1.dim, T1.factors).scale(T1[0, 0])


@pytest.mark.parametrize("kind,left,right", [
    ("H1", "trivial", "trivial"),
    ("H0", "rational", "trivial"),
    ("H0", "small", "conjugated"),
    ("H2", "evaluation", "trivial"),
    ("H2", "rational", "trivial"),
    ("H3", "rational", "conjugated"),
    ("H3", "poly", "conjugated"),
])
def test_hecke_hamiltonians(reps, kind, left, right):
    ch = chain(reps, "gl2", 3, left, right, xi=1 if left == "evaluation" else F(3, 2))
    assert check_h_commutes(ch, kind, ZS)


@pytest.mark.parametrize("kind,left,right,a", [
    ("H5", "trivial", "trivial", "q"),
    ("H4", "prop2", "trivial", "q"),
    ("H6", "prop2", "conjugated", "-1/q"),
    ("H7", "prop2", "conjugated", "q"),
    ("H7", "prop2", "conjugated", "-1/q"),
])
def test_bmw_hamiltonians(reps, kind, left, right, a):
    ch = chain(reps, "sp2", 2, left, right, a=a)
    assert check_h_commutes(ch, kind, ZS)


def test_hamiltonian_sensitivity(reps):
    ch = chain(reps, "gl2", 3, "rational", "conjugated", xi=F(3, 2))
    H = hamiltonian(ch, "H3")
    bad = H + embed(Matrix.diag([1, 2], (2,)), 1, (2, 2, 2))
    T = t_full(ch, ZS[0])
    assert commutator_is_zero(H, T) and not commutator_is_zero(bad, T)


def test_hamiltonian_errors(reps):
    gl = chain(reps, "gl2", 2, "rational", "trivial")
    with pytest.raises(ChainError):
        hamiltonian(gl, "H5")
    with pytest.raises(ChainError):
        hamiltonian(gl, "H1")
    with pytest.raises(ChainError, match="H0 unavailable"):
        hamiltonian(chain(reps, "sp2", 2, "bmw2", "trivial"), "H6")
    with pytest.raises(BoundaryUnavailable):
        make_left(reps("sp2"), "bmw4")


def test_h5_coefficient_wiring(reps):
    """H5 = R + lambda nu/(nu + a) K; with the K-term removed it is H1's formula."""
    ch = chain(reps, "sp2", 2, "trivial", "trivial")
    rep = ch.rep
    assert rep.lam * rep.nu / (rep.nu + rep.a) == F(-1, 10)
    H = hamiltonian(ch, "H5")
    assert H == rep.R + rep.Khat.scale(F(-1, 10))
    assert H - rep.Khat.scale(F(-1, 10)) == rep.R


def test_spectra(reps):
    s = spectrum(Matrix.diag([1, 2, 2]))
    assert s["factorization"] == "(t-(1))*(t-(2))^2" and not s["approximate"]
    s2 = spectrum(hamiltonian(chain(reps, "gl2", 2, "trivial", "trivial"), "H1"))
    assert s2["rational_roots"] == [{"root": "-1/2", "multiplicity": 1}, {"root": "2/1", "multiplicity": 3}]
    s3 = spectrum(hamiltonian(chain(reps, "gl2", 3, "trivial", "trivial"), "H1"))
    assert sum(r["multiplicity"] for r in s3["rational_roots"]) + len(s3["approx_roots"]) == 8
    s4 = spectrum(Matrix.from_entries([[0, 1], [2, 0]]))  # roots +-sqrt 2
    assert s4["approximate"] and len(s4["approx_roots"]) == 2
