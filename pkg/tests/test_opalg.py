import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperladder.hyperscalar import HyperScalar, PoleError, sym
from hyperladder.opalg import (
    DiffOp,
    VarSpec,
    VarSpecMismatch,
    op_commutator,
    op_eval,
    op_mul,
    op_truncated_matrix,
)
from hyperladder.reps import rep_operator

Q = VarSpec(("q",))
QP = VarSpec(("q", "p"))
LAURENT = VarSpec(("q", "p"), laurent=frozenset({"q"}))


def q(n=1, spec=Q):
    return DiffOp.coord(spec, "q", n)


def d(n=1, spec=Q, name="q"):
    return DiffOp.deriv(spec, name, n)


def test_defining_relation():
    assert op_mul(d(), q()) == op_mul(q(), d()) + 1
    assert op_commutator(d(), q()) == DiffOp.scalar(Q, 1)


def test_second_order_reordering():
    assert op_mul(d(2), q(2)) == op_mul(q(2), d(2)) + op_mul(q(), d()) * 4 + 2


def test_heisenberg_commutator():
    x, y = rep_operator("schrodinger_config", "X"), rep_operator("schrodinger_config", "Y")
    assert op_commutator(x, y) == rep_operator("schrodinger_config", "S")
    two_pi_i_hbar = HyperScalar.i() * 2 * sym("pi") * sym("hbar")
    assert op_commutator(x, y) == DiffOp.scalar(Q, two_pi_i_hbar)


def test_laurent_power_rule():
    inv = DiffOp.coord(LAURENT, "q", -1)
    dq = d(spec=LAURENT)
    # d/dq q^-1 = q^-1 d/dq - q^-2
    assert op_mul(dq, inv) == op_mul(inv, dq) - DiffOp.coord(LAURENT, "q", -2)


def test_spec_mismatch():
    with pytest.raises(VarSpecMismatch):
        op_mul(q(), q(spec=QP))


def random_op(rng, spec, max_order=3, max_deg=3, n_terms=3):
    n = len(spec)
    terms = {}
    for _ in range(n_terms):
        xs = tuple(rng.randint(0, max_deg) for _ in range(n))
        ds = tuple(rng.randint(0, max_order) for _ in range(n))
        if sum(ds) > max_order:
            continue
        c = HyperScalar(*(rng.randint(-3, 3) for _ in range(4)), sigma=rng.choice((-1, 0, 1)))
        terms[(xs, ds)] = c
    sigma = next(iter(terms.values())).sigma if terms else -1
    return DiffOp(spec, {m: HyperScalar._from(c.c, sigma) for m, c in terms.items()}, sigma)


def test_truncated_matrix_examples():
    m, basis = op_truncated_matrix(q(), 2)
    assert basis == [(0,), (1,), (2,)]
    block = np.eye(4)
    assert np.array_equal(m[4:8, 0:4], block) and np.array_equal(m[8:12, 4:8], block)
    m, _ = op_truncated_matrix(d(), 2)
    assert np.array_equal(m[0:4, 4:8], block) and np.array_equal(m[4:8, 8:12], 2 * block)


def test_truncated_matrix_oracle_200_pairs():
    """matrix(a*b) equals matrix(a) @ matrix(b) wherever truncation cannot leak."""
    rng = random.Random(7)
    degree = 12
    worst = 0.0
    for _ in range(200):
        a = random_op(rng, Q)
        b = random_op(rng, Q)
        b = DiffOp(Q, {m: HyperScalar._from(c.c, a.sigma) for m, c in b.terms.items()}, a.sigma)
        ma, basis = op_truncated_matrix(a, degree)
        mb, _ = op_truncated_matrix(b, degree)
        mab, _ = op_truncated_matrix(op_mul(a, b), degree)
        raise_b = max((sum(x) - sum(dd) for x, dd in b.terms), default=0)
        safe = [k for k, e in enumerate(basis) if sum(e) + max(raise_b, 0) <= degree]
        cols = [4 * k + c for k in safe for c in range(4)]
        worst = max(worst, float(np.abs((ma @ mb - mab)[:, cols]).max(initial=0.0)))
    assert worst == 0.0


ops = st.builds(lambda seed: random_op(random.Random(seed), QP, max_order=2, max_deg=2), st.integers(0, 10_000))


@given(ops, ops, ops)
@settings(max_examples=25, deadline=None)
def test_associativity_and_leibniz(a, b, c):
    b = DiffOp(QP, {m: HyperScalar._from(v.c, a.sigma) for m, v in b.terms.items()}, a.sigma)
    c = DiffOp(QP, {m: HyperScalar._from(v.c, a.sigma) for m, v in c.terms.items()}, a.sigma)
    assert op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c))
    # commutator is a derivation of the product
    assert op_commutator(a, op_mul(b, c)) == op_mul(op_commutator(a, b), c) + op_mul(b, op_commutator(a, c))
    assert op_commutator(a, a).is_zero()


def test_op_eval():
    import math

    z = rep_operator("schrodinger_config", "Z")
    vals = op_eval(z, {"hbar": 2 * math.pi, "pi": math.pi})
    assert vals[((0,), (2,))] == pytest.approx((0, 0.5, 0, 0))
    assert vals[((2,), (0,))] == pytest.approx((0, -0.5, 0, 0))
    assert op_eval(DiffOp.zero(Q), {}) == {}
    with pytest.raises(PoleError):
        op_eval(DiffOp.scalar(Q, 1 / (1 - sym("hbar"))), {"hbar": 1.0})
