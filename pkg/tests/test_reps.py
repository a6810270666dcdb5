import random
from fractions import Fraction

import pytest

from hyperladder.hyperscalar import HyperScalar, sym
from hyperladder.liealg import AbstractElt, HeisPoint, heis_inv
from hyperladder.opalg import DiffOp, op_commutator, op_mul
from hyperladder.reps import (
    CONFIG,
    CR_STATED,
    HEIS,
    PHASE,
    PLANE,
    REP_IDS,
    WeightedJetShift,
    catalog,
    cr_operator,
    derive_at_identity,
    field_from_group_law,
    group_homomorphism_check,
    group_operator,
    homomorphism_suite,
    invariant_field,
    quadratic_suite,
    rep_operator,
)

PI, HBAR, HH = sym("pi"), sym("hbar"), sym("hh")
I = HyperScalar.i(-1)


def test_catalog_entries():
    assert rep_operator("schrodinger_config", "Y") == DiffOp.deriv(CONFIG, "q") * -HBAR
    q, p = (DiffOp.coord(PHASE, n) for n in "qp")
    dq, dp = (DiffOp.deriv(PHASE, n) for n in "qp")
    assert rep_operator("fsb_phase", "Z") == op_mul(p, dq) - op_mul(q, dp)
    h = HyperScalar.j(1)
    b = DiffOp.deriv(CONFIG, "q", 2, 1) * (h * HH / 4) - DiffOp.coord(CONFIG, "q", 2, 1) * (h / (4 * HH))
    assert rep_operator("hyperbolic_config", "B") == b


@pytest.mark.parametrize("rep", [r for r in REP_IDS if r != "parabolic_config"])
def test_homomorphism(rep):
    bad = [r["pair"] for r in homomorphism_suite(rep) if not r["ok"]]
    assert bad == []


def test_parabolic_config_obstruction():
    """rho(Y) is nilpotent, so [B, Y], [Z, Y] and [Z, B] cannot all hold."""
    bad = {r["pair"] for r in homomorphism_suite("parabolic_config") if not r["ok"]}
    assert bad == {("Y", "B"), ("Y", "Z"), ("B", "Z")}
    ops = catalog()["parabolic_config"].ops
    assert all(c.in_nilpotent_ideal() for c in ops["Y"].coefficients())
    assert not all(c.in_nilpotent_ideal() for c in ops["X"].coefficients())


def test_quadratic_identities_that_hold():
    res = {r["id"]: r["ok"] for r in quadratic_suite()}
    for key in ("elliptic_Z", "elliptic_B", "hyperbolic_Z", "elliptic_A_forms_agree", "hyperbolic_A_forms_agree"):
        assert res[key], key


def test_quadratic_A_expression_is_minus_rho_A():
    ops = catalog()["schrodinger_config"].ops
    expr = (op_mul(ops["X"], ops["Y"]) - ops["S"] * Fraction(1, 2)) * (I / (4 * PI * HBAR))
    assert expr == ops["A"] * -1


def test_fsb_shale_weil_has_no_hbar():
    ops = catalog()["fsb_phase"].ops
    for v in ("A", "B", "Z"):
        assert all(c.is_constant() for c in ops[v].coefficients())


def test_subrings():
    for op in catalog()["schrodinger_config"].ops.values():
        assert op.in_subring("i")
    for v in ("S", "X", "Y"):
        assert catalog()["hyperbolic_config"].ops[v].in_subring("j")
    for rep in ("parabolic_config", "parabolic_fsb"):
        coeffs = [c for op in catalog()[rep].ops.values() for c in op.coefficients()]
        assert any(c.c[3] for c in coeffs), "parabolic reps use the i*e component"


def test_group_operator_examples():
    t = group_operator("schrodinger_config", HeisPoint(0, 0, 1))
    assert t.shift == (HyperScalar(-HBAR),) and t.phi.is_zero()
    s = Fraction(3, 7)
    t = group_operator("parabolic_config", HeisPoint(s, 0, 0))
    e = HyperScalar.j(0)
    assert t.c0 == DiffOp.scalar(CONFIG, 1 - e * HH * s, 0)
    for rep in REP_IDS:
        assert group_operator(rep, HeisPoint()).is_identity()


@pytest.mark.parametrize("rep", REP_IDS)
def test_group_inverse_and_center(rep):
    rng = random.Random(1)
    g = HeisPoint(*(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)))
    prod = group_operator(rep, g).compose(group_operator(rep, heis_inv(g)))
    assert prod.is_identity()
    a, b = HeisPoint(Fraction(2, 3), 0, 0), HeisPoint(Fraction(-5, 4), 0, 0)
    assert group_homomorphism_check(rep, a, b)["ok"]
    assert group_homomorphism_check(rep, g, HeisPoint(1, -2, Fraction(1, 3)))["ok"]


def test_second_order_jets_rejected():
    e = HyperScalar.j(0)
    c = DiffOp.scalar(CONFIG, HyperScalar(1, sigma=0), 0)
    with pytest.raises(ValueError):
        WeightedJetShift(CONFIG, 0, None, [0], 1, [c])
    with pytest.raises(ValueError):
        WeightedJetShift(CONFIG, -1, None, [0], 1, [DiffOp.scalar(CONFIG, 1)])
    ok = WeightedJetShift(CONFIG, 0, None, [0], 1, [DiffOp.scalar(CONFIG, e, 0)])
    assert ok.compose(ok).cj[0] == DiffOp.scalar(CONFIG, e * 2, 0)


def test_derive_at_identity():
    assert derive_at_identity("schrodinger_config", "X") == DiffOp.coord(CONFIG, "q") * (2 * PI * I)
    assert derive_at_identity("schrodinger_config", "Y") == DiffOp.deriv(CONFIG, "q") * -HBAR
    e = HyperScalar.j(0)
    assert derive_at_identity("parabolic_fsb", "S") == DiffOp.scalar(PHASE, e * HH, 0)
    for rep in REP_IDS:
        for v in "SXY":
            assert derive_at_identity(rep, v) == rep_operator(rep, v)
    with pytest.raises(ValueError):
        derive_at_identity("fsb_phase", "A")


def test_invariant_fields():
    ds = DiffOp.deriv(HEIS, "s")
    expect = DiffOp.deriv(HEIS, "x") - op_mul(DiffOp.coord(HEIS, "y"), ds) * Fraction(1, 2)
    assert invariant_field("left", "X") == expect
    xr, yr = invariant_field("right", "X"), invariant_field("right", "Y")
    assert op_commutator(xr, yr) == invariant_field("right", "S") == ds * -1
    for a in "SXY":
        for b in "SXY":
            assert op_commutator(invariant_field("left", a), invariant_field("right", b)).is_zero()
        for side in ("left", "right"):
            assert invariant_field(side, a) == field_from_group_law(side, a)


def test_cr_operators():
    d_ell, c = cr_operator("elliptic")
    assert c == -2 * PI * HBAR * I
    dx, dy = (DiffOp.deriv(PLANE, n) for n in "xy")
    x, y = (DiffOp.coord(PLANE, n) for n in "xy")
    assert d_ell == dx + dy * I + (x + y * I) * (PI * HBAR)
    assert cr_operator("hyperbolic_unit")[0] == CR_STATED["hyperbolic_unit"]
    h = HyperScalar.j(1)
    dx, dy = (DiffOp.deriv(PLANE, n, 1, 1) for n in "xy")
    x, y = (DiffOp.coord(PLANE, n, 1, 1) for n in "xy")
    assert cr_operator("hyperbolic_h")[0] == dx - dy + (x + y) * (h * HH / 2)


def test_cr_annihilates_vacuum_transform():
    """The derived operator kills the Gaussian exp(-pi hbar (x^2 + y^2)/2); the stated form does not."""
    import sympy

    x, y, hb = sympy.symbols("x y hbar", real=True)
    wf = sympy.exp(-sympy.pi * hb * (x**2 + y**2) / 2)
    d = sympy.diff(wf, x) + sympy.I * sympy.diff(wf, y) + sympy.pi * hb * (x + sympy.I * y) * wf
    assert sympy.simplify(d / wf) == 0
    shown = sympy.diff(wf, x) + sympy.I * sympy.diff(wf, y) - sympy.pi * hb * (x - sympy.I * y) * wf
    assert sympy.simplify(shown / wf) != 0
