from fractions import Fraction

import pytest
import sympy

from hyperladder import ladders as ld
from hyperladder.hyperscalar import HyperScalar, sym
from hyperladder.liealg import AbstractElt, bracket
from hyperladder.opalg import DiffOp
from hyperladder.reps import CONFIG, PHASE, rho

LAM = sympy.Symbol("lambda")
I, E, H = HyperScalar.i(-1), HyperScalar.j(0), HyperScalar.j(1)
PI, HBAR = sym("pi"), sym("hbar")


def elt(sigma, **kw):
    return AbstractElt(kw, sigma)


@pytest.mark.parametrize("case,algebra,poly", [
    ("elliptic", "h1", LAM**2 + 1),
    ("elliptic", "sp2", LAM**2 + 4),
    ("hyperbolic", "h1", LAM**2 - 1),
    ("hyperbolic", "sp2", LAM**2 - 4),
    ("parabolic", "h1", LAM**2),
    ("parabolic", "sp2", LAM**2),
])
def test_compatibility_polynomial(case, algebra, poly):
    p = ld.LadderProblem.case(case, algebra)
    assert sympy.expand(ld.compatibility_polynomial(p).as_expr() - poly) == 0


def test_elliptic_h1_solutions():
    sols = ld.solve_ladder(ld.LadderProblem.case("elliptic", "h1"))
    assert {s.lam: s.coeffs for s in sols} == {I: elt(-1, X=1, Y=-I), -I: elt(-1, X=1, Y=I)}


def test_hyperbolic_double_branch():
    sols = ld.solve_ladder(ld.LadderProblem.case("hyperbolic", "h1"))
    lams = {s.lam for s in sols}
    one = HyperScalar(1, sigma=1)
    assert lams == {one, -one, H, -H}
    sp2 = {s.lam: s.coeffs for s in ld.solve_ladder(ld.LadderProblem.case("hyperbolic", "sp2"))}
    assert sp2[2 * H] == elt(1, A=1, Z=H / 2)


def test_parabolic_families():
    sols = ld.solve_ladder(ld.LadderProblem.case("parabolic", "h1"))
    fam = [s for s in sols if s.family]
    assert len(fam) == 2 and all(s.family == "lambda1" for s in fam)
    zero = [s for s in sols if not s.family][0]
    assert zero.coeffs == elt(0, X=1)
    for s in ld.solve_ladder(ld.LadderProblem.case("parabolic", "sp2")):
        assert ld.ladder_verify(s, "parabolic_fsb").is_zero()


@pytest.mark.parametrize("case,algebra,reps", [
    ("elliptic", "h1", ["schrodinger_config", "fsb_phase"]),
    ("elliptic", "sp2", ["schrodinger_config", "fsb_phase"]),
    ("hyperbolic", "h1", ["hyperbolic_config"]),
    ("hyperbolic", "sp2", ["hyperbolic_config"]),
    ("parabolic", "h1", ["parabolic_fsb"]),
])
def test_solutions_are_ladders(case, algebra, reps):
    p = ld.LadderProblem.case(case, algebra)
    for s in ld.solve_ladder(p):
        assert bracket(p.H, s.coeffs) == s.coeffs * s.lam
        for rep in reps:
            assert ld.ladder_verify(s, rep).is_zero()


def test_find_ladder_rejects_non_root():
    p = ld.LadderProblem.case("elliptic", "h1")
    assert ld.find_ladder(p, I).coeffs == elt(-1, X=1, Y=-I)
    with pytest.raises(KeyError):
        ld.find_ladder(p, 3 * I)


def test_squaring_hyperbolic_double_holds():
    assert all(r["ok"] for r in ld.squaring_check("hyperbolic_double"))


def test_squaring_elliptic_has_opposite_sign():
    """The literal relation fails; the true one has the opposite overall sign."""
    for r in ld.squaring_check("elliptic"):
        assert not r["ok"] and r["lambda2_ladder"] and r["ratio"] == HyperScalar(-1, sigma=-1)


def test_squaring_hyperbolic_complex_is_not_z_half():
    for r in ld.squaring_check("hyperbolic_complex"):
        assert not r["ok"] and not r["lambda2_ladder"]
        assert r["actual"]["Z"] == HyperScalar(1, sigma=-1)


def test_gaussfun_derivative():
    q2 = DiffOp.coord(CONFIG, "q", 2, -1) * Fraction(-1, 2)
    f = ld.GaussFun.gaussian(CONFIG, -1, q2)
    expect = ld.GaussFun.gaussian(CONFIG, -1, q2, DiffOp.coord(CONFIG, "q", 1, -1) * -1)
    assert f.diff("q") == expect


def test_gaussfun_dual_ratio():
    """q d/dp on exp(mu p/q) f(q) multiplies by mu."""
    f = ld._v_mu()
    mu = sym("mu0") + E * sym("mu1")
    res = ld.parabolic_shift()
    assert res["base_ok"] and res["base"] == mu
    assert res["hamiltonian_is_minus_qdp"]
    assert not f.is_zero()


def test_gaussfun_rejects_constant_exponent():
    with pytest.raises(ValueError):
        ld.GaussFun.gaussian(CONFIG, -1, DiffOp.scalar(CONFIG, 1, -1))


def test_vacuum_eigen():
    z = rho("schrodinger_config", elt(-1, Z=1))
    res = ld.eigen_check(z, ld._vacuum())
    assert res.unique and res.value == -I / 2
    assert ld.vacuum_annihilated()


def test_eigen_check_rejects_and_zero():
    x = rho("schrodinger_config", elt(-1, X=1))
    assert ld.eigen_check(x, ld._vacuum()).kind == "not-an-eigenvector"
    zero = ld._vacuum() - ld._vacuum()
    assert ld.eigen_check(x, zero).kind == "zero-vector"


def test_zero_divisor_ambiguity():
    """A function with coefficient (1+h) has eigenvalue defined only modulo (1-h)."""
    one = HyperScalar(1, sigma=1)
    q2 = DiffOp.coord(CONFIG, "q", 2, 1) / (2 * sym("hh"))
    f = ld.GaussFun.gaussian(CONFIG, 1, q2 * -1, one + H)
    b2 = rho("hyperbolic_config", elt(1, B=2))
    res = ld.eigen_check(b2, f)
    assert res.is_eigen and not res.unique


def test_hermite_tower():
    recs = ld.hermite_tower(8)
    assert [r["k"] for r in recs] == list(range(9))
    for r in recs:
        assert r["ok"] and r["hermite_ok"]
        assert r["eigenvalue"] == -I * (Fraction(2 * r["k"] + 1, 2))
    assert ld.hermite_oracle(3)[3] == [0, -12, 0, 8]


def test_null_solutions():
    got = {r["ladder"]: r for r in ld.null_solutions()}
    assert all(r["annihilated"] for r in got.values())
    half = Fraction(1, 2)
    assert {r["eigenvalue"] for r in got.values()} == {
        HyperScalar(-half, sigma=1), HyperScalar(half, sigma=1), -H * half, H * half}


def test_lattice():
    walk = ld.lattice_walk("hyperbolic", steps=2)
    assert walk["ok"]
    assert ld.hyperbolic_commuting_shifts()["ok"]
    with pytest.raises(ValueError):
        ld.lattice_walk("hyperbolic", steps=6)


def test_parabolic_shift():
    res = ld.parabolic_shift()
    assert res["ok"] and res["zero_shift_ok"]


def test_similarity():
    recs = ld.prop_similarity_verify()
    assert [r["case"] for r in recs] == ["elliptic", "hyperbolic", "parabolic"]
    for r in recs:
        assert r["ok"] and r["E_in_span_BZ"] and r["A_E_is_H"] and r["killing_zero"]


def test_wavelet_numeric():
    res = ld.wavelet_sample_numeric(n_points=5, seed=3)
    assert res["max_relative"] < 1e-6 and res["control_min"] > 1e-2


def test_wavelet_zero_function():
    res = ld.wavelet_sample_numeric(n_points=2, test_function=lambda q: 0.0 * q)
    assert res["max_relative"] == 0.0
    with pytest.raises(ValueError):
        ld.wavelet_sample_numeric("hyperbolic")
