"""Acceptance suite: one test per criterion, at the stated tolerances.

Criteria 2, 3 and 5 fail on purpose.  The identities they check do not hold
as stated, and each failing assertion message carries the exact residual.
README.md explains why.
"""
import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from scipy.linalg import expm

from hyperladder import ladders as ld
from hyperladder.hyperscalar import HyperScalar, sym
from hyperladder.liealg import (
    BASIS,
    SP2_BASIS,
    AbstractElt,
    HeisPoint,
    bracket,
    flow_hypercomplex,
    flow_invariant,
    flow_matrix,
    jacobi_residual,
    killing_form,
)
from hyperladder.opalg import op_commutator
from hyperladder.reps import REP_IDS, group_homomorphism_check, quadratic_suite, rho

pytestmark = pytest.mark.acceptance

I, H = HyperScalar.i(-1), HyperScalar.j(1)
PI, HBAR, HH = sym("pi"), sym("hbar"), sym("hh")
LAM = sympy.Symbol("lambda")


def elt(sigma, **kw):
    return AbstractElt(kw, sigma)


def test_criterion_01_jacobi():
    triples = list(itertools.combinations(BASIS, 3))
    assert len(triples) == 20
    bad = {t: r for t in triples if (r := jacobi_residual(*t))}
    assert not bad, f"Jacobi fails on {bad}"


def test_criterion_02_representation_homomorphism():
    bad, total = [], 0
    for rep in REP_IDS:
        for u, v in itertools.combinations(BASIS, 2):
            total += 1
            a, b = AbstractElt.basis(u), AbstractElt.basis(v)
            lhs = rho(rep, bracket(a, b))
            res = lhs - op_commutator(rho(rep, a), rho(rep, b))
            if not res.is_zero():
                bad.append(f"{rep} [{u},{v}]: {res}")
    assert total == 75
    assert not bad, f"{len(bad)}/75 fail: " + "; ".join(bad)


def test_criterion_03_quadratic_identities():
    recs = [r for r in quadratic_suite() if not r["id"].endswith("forms_agree")]
    assert len(recs) == 8  # A in two orderings, B and Z, for each of the two cases
    bad = [f"{r['id']}: residual {r['residual']}" for r in recs if not r["ok"]]
    assert not bad, "; ".join(bad)


EXPECTED = {
    ("elliptic", "h1"): (LAM**2 + 1, {I, -I}),
    ("elliptic", "sp2"): (LAM**2 + 4, {2 * I, -2 * I}),
    ("hyperbolic", "h1"): (LAM**2 - 1, {HyperScalar(1, sigma=1), HyperScalar(-1, sigma=1), H, -H}),
    ("hyperbolic", "sp2"): (LAM**2 - 4, {HyperScalar(2, sigma=1), HyperScalar(-2, sigma=1), 2 * H, -2 * H}),
}


def test_criterion_04_compatibility_polynomials():
    for (case, alg), (poly, roots) in EXPECTED.items():
        p = ld.LadderProblem.case(case, alg)
        assert sympy.expand(ld.compatibility_polynomial(p).as_expr() - poly) == 0, (case, alg)
        assert {s.lam for s in ld.solve_ladder(p)} == roots, (case, alg)
    e = HyperScalar.j(0)
    for alg, name in (("h1", "lambda1"), ("sp2", "lambda2")):
        p = ld.LadderProblem.case("parabolic", alg)
        assert ld.compatibility_polynomial(p).as_expr() == LAM**2
        lam = sym(name)
        assert {s.lam for s in ld.solve_ladder(p)} == {HyperScalar(0, sigma=0), e * lam, -e * lam}


def _stated_squaring():
    half = Fraction(1, 2)
    for sg in (1, -1):
        yield (f"elliptic{sg:+d}", "schrodinger_config", elt(-1, A=I * sg, B=1),
               elt(-1, X=1, Y=I * -sg), -I / (8 * PI * HBAR))
        yield (f"hyperbolic_complex{sg:+d}", "schrodinger_config", elt(-1, A=2 * sg, Z=half),
               elt(-1, X=1, Y=-sg), I / (4 * PI * HBAR))
        yield (f"hyperbolic_double_h{sg:+d}", "hyperbolic_config", elt(1, A=sg, Z=half),
               elt(1, X=1, Y=-sg), -H / (4 * HH))
        yield (f"hyperbolic_double_unit{sg:+d}", "hyperbolic_config", elt(1, A=H * sg, Z=half),
               elt(1, X=1, Y=H * -sg), -H / (4 * HH))


def test_criterion_05_squaring_relations():
    bad = []
    for name, rep, l2, lad, factor in _stated_squaring():
        res = rho(rep, l2) - rho(rep, lad) ** 2 * factor
        if not res.is_zero():
            bad.append(f"{name}: residual {res}")
    assert not bad, f"{len(bad)}/8 fail: " + "; ".join(bad)


def test_criterion_06_eigen_checks():
    z = rho("schrodinger_config", elt(-1, Z=1))
    vac = ld._vacuum()
    assert ld.is_eigen(z, vac, -I / 2)
    assert ld.vacuum_annihilated()
    q = sympy.Symbol("q")
    for k in range(9):
        oracle = sympy.Poly(sympy.hermite(k, q), q).all_coeffs()[::-1]
        assert ld.hermite_oracle(k)[k] == [int(c) for c in oracle]
    for r in ld.hermite_tower(8):
        assert r["ok"] and r["hermite_ok"], r["k"]
        assert r["eigenvalue"] == -I * Fraction(2 * r["k"] + 1, 2)
    half = Fraction(1, 2)
    null = {r["eigenvalue"] for r in ld.null_solutions() if r["annihilated"]}
    assert null == {HyperScalar(-half, sigma=1), HyperScalar(half, sigma=1), -H * half, H * half}
    par = ld.parabolic_shift()
    assert par["base_ok"] and par["ok"]


def test_criterion_07_group_representation():
    rng = random.Random(20100917)

    def point():
        return HeisPoint(*(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3)))

    bad, total = [], 0
    for rep in REP_IDS:
        for _ in range(100):
            g, h = point(), point()
            total += 1
            r = group_homomorphism_check(rep, g, h)
            if not r["ok"]:
                bad.append((rep, g, h, r["residual"]))
    assert total == 500
    assert not bad, bad[:3]


def test_criterion_08_similarity():
    recs = ld.prop_similarity_verify()
    assert len(recs) == 3
    for rec in recs:
        sigma = {"elliptic": -1, "hyperbolic": 1, "parabolic": 0}[rec["case"]]
        H_ = ld.LadderProblem.case(rec["case"], "sp2").H
        a = AbstractElt.basis("A").with_sigma(sigma)
        E = bracket(a, H_)
        assert E.in_span(("B", "Z")) and bracket(a, E) == H_
        assert killing_form(H_, E) == HyperScalar(0, sigma=sigma)
        assert rec["ok"], rec["case"]
        for entry in rec["h1"] + rec["sp2"]:
            assert entry["factor_kind"] in ("real", "unit"), entry


GENERATORS = {
    "elliptic": np.array([[0.0, -1.0], [1.0, 0.0]]),
    "parabolic": np.array([[0.0, 0.0], [1.0, 0.0]]),
    "hyperbolic": np.array([[0.0, 1.0], [1.0, 0.0]]),
}


def test_criterion_09_orbits():
    rng = np.random.default_rng(20100917)
    for case, gen in GENERATORS.items():
        q0, p0 = rng.uniform(-2, 2, size=2)
        inv0 = flow_invariant(case, q0, p0)
        for t in rng.uniform(-3, 3, size=1000):
            m = flow_matrix(case, t)
            mat = np.array([[m.a, m.b], [m.c, m.d]], dtype=float)
            assert np.allclose(mat, expm(t * gen), rtol=0, atol=1e-10 * max(1, np.abs(mat).max()))
            q, p = mat @ [q0, p0]
            hq, hp = flow_hypercomplex(case, q0, p0, t)
            scale = max(1.0, abs(q), abs(p))
            assert abs(q - hq) <= 1e-10 * scale and abs(p - hp) <= 1e-10 * scale, (case, t)
            drift = abs(flow_invariant(case, q, p) - inv0)
            if case == "parabolic":
                assert q == q0
            else:
                assert drift <= 1e-10 * max(1.0, q * q + p * p), (case, t, drift)


def test_criterion_10_wavelet_numeric():
    res = ld.wavelet_sample_numeric("elliptic", n_points=20, seed=20100917)
    assert res["points"] == 20
    assert res["max_relative"] < 1e-6, res
    assert res["control_min"] > 1e-2, res
