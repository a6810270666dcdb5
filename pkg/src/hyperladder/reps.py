"""Catalog of Heisenberg-symplectic representations and their verification.

Five representations are catalogued.  Each gives the derived action of every
basis vector of g as a :class:`~hyperladder.opalg.DiffOp`, and the group-level
action of the Heisenberg group as a :class:`WeightedJetShift`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable

from .hyperscalar import HyperScalar, RatFun, register_symbol, sym
from .liealg import BASIS, DEFAULT_TABLE, AbstractElt, HeisPoint, StructureTable, bracket
from .opalg import DiffOp, VarSpec, op_commutator, op_mul

__all__ = [
    "REP_IDS",
    "CONFIG",
    "PHASE",
    "HEIS",
    "PLANE",
    "Rep",
    "catalog",
    "rep_operator",
    "rho",
    "homomorphism_suite",
    "quadratic_suite",
    "WeightedJetShift",
    "group_operator",
    "group_homomorphism_check",
    "derive_at_identity",
    "DERIVE_SIGN",
    "invariant_field",
    "field_from_group_law",
    "cr_operator",
    "CR_STATED",
]

REP_IDS = (
    "schrodinger_config",
    "fsb_phase",
    "hyperbolic_config",
    "parabolic_config",
    "parabolic_fsb",
)

CONFIG = VarSpec(("q",))
PHASE = VarSpec(("q", "p"), laurent=frozenset({"q"}))
HEIS = VarSpec(("s", "x", "y"))
PLANE = VarSpec(("x", "y"))

# d/dt rho(exp(t v)) at t = 0 reproduces every catalog derived action with
# this sign; see derive_at_identity.
DERIVE_SIGN = 1

PI, HBAR, HH = sym("pi"), sym("hbar"), sym("hh")


@dataclass(frozen=True)
class Rep:
    rep_id: str
    spec: VarSpec
    sigma: int
    ops: dict = field(compare=False)
    group: Callable = field(compare=False)
    note: str = ""


def _c(spec, sigma):
    def coord(name="q", n=1):
        return DiffOp.coord(spec, name, n, sigma)

    def d(name="q", n=1):
        return DiffOp.deriv(spec, name, n, sigma)

    def const(v):
        return DiffOp.scalar(spec, v, sigma)

    return coord, d, const


def _config_sw(sigma, i_unit, scale):
    """Configuration-space Shale-Weil operators A, B, Z.

    ``scale`` is (coefficient of d^2, coefficient of q^2) for B; Z is -2x B
    in the d^2 part and 2x B in the q^2 part.
    """
    coord, d, const = _c(CONFIG, sigma)
    a = coord() * d() * Fraction(-1, 2) - Fraction(1, 4)
    kd, kq = scale
    b = d(n=2) * kd + coord(n=2) * kq
    z = d(n=2) * (-2 * kd) + coord(n=2) * (2 * kq)
    return a, b, z


def _schrodinger():
    s = -1
    i = HyperScalar.i(s)
    coord, d, const = _c(CONFIG, s)
    a, b, z = _config_sw(s, i, (-HBAR * i / (8 * PI), -PI * i / (2 * HBAR)))
    ops = {
        "S": const(2 * PI * HBAR * i),
        "X": coord() * (2 * PI * i),
        "Y": d() * (-HBAR),
        "A": a,
        "B": b,
        "Z": z,
    }

    def group(g):
        s_, x, y = _hs(g, s)
        phi = coord() * (2 * PI * i * x) + (2 * PI * i * HBAR) * (s_ - x * y / 2)
        return WeightedJetShift.weighted_shift(CONFIG, s, phi, {"q": -HBAR * y})

    return Rep("schrodinger_config", CONFIG, s, ops, group)


def _fsb_sw(sigma):
    coord, d, const = _c(PHASE, sigma)
    # Sign of A fixed by the homomorphism property: with (q d_q - p d_p)/2
    # every bracket involving A fails.
    a = (coord("p") * d("p") - coord("q") * d("q")) * Fraction(1, 2)
    b = (coord("p") * d("q") + coord("q") * d("p")) * Fraction(-1, 2)
    z = coord("p") * d("q") - coord("q") * d("p")
    return a, b, z


def _fsb():
    s = -1
    i = HyperScalar.i(s)
    coord, d, const = _c(PHASE, s)
    a, b, z = _fsb_sw(s)
    ops = {
        "S": const(-2 * PI * HBAR * i),
        "X": coord("q") * (-2 * PI * i) + d("p") * (HBAR / 2),
        "Y": coord("p") * (-2 * PI * i) - d("q") * (HBAR / 2),
        "A": a,
        "B": b,
        "Z": z,
    }

    def group(g):
        s_, x, y = _hs(g, s)
        phi = (coord("q") * x + coord("p") * y + HBAR * s_) * (-2 * PI * i)
        return WeightedJetShift.weighted_shift(PHASE, s, phi, {"q": -HBAR * y / 2, "p": HBAR * x / 2})

    return Rep("fsb_phase", PHASE, s, ops, group)


def _hyperbolic():
    s = 1
    j = HyperScalar.j(s)
    coord, d, const = _c(CONFIG, s)
    a, b, z = _config_sw(s, j, (j * HH / 4, -j / (4 * HH)))
    ops = {
        "S": const(j * HH),
        "X": coord() * j,
        "Y": d() * (-HH),
        "A": a,
        "B": b,
        "Z": z,
    }

    def group(g):
        s_, x, y = _hs(g, s)
        phi = coord() * (j * x) + (j * HH) * (s_ - x * y / 2)
        return WeightedJetShift.weighted_shift(CONFIG, s, phi, {"q": -HH * y})

    return Rep("hyperbolic_config", CONFIG, s, ops, group)


def _parabolic_config():
    s = 0
    i, e = HyperScalar.i(s), HyperScalar.j(s)
    coord, d, const = _c(CONFIG, s)
    # No sp2 action on this space satisfies [B, Y], [Z, Y] and [Z, B]: rho(Y)
    # lies in the nilpotent ideal while rho(X) and rho(A) do not.  These
    # operators satisfy the remaining twelve brackets.
    k = e * HH / (16 * PI * PI)
    ops = {
        "S": const(-e * HH),
        "X": coord() * (2 * PI * i),
        "Y": d() * (e * HH / (2 * PI * i)),
        "A": coord() * d() * Fraction(-1, 2) - Fraction(1, 4),
        "B": d(n=2) * k,
        "Z": d(n=2) * (-2 * k),
    }

    def group(g):
        s_, x, y = _hs(g, s)
        phi = coord() * (2 * PI * i * x)
        c0 = 1 - e * HH * (s_ - x * y / 2)
        c1 = e * HH * y / (2 * PI * i)
        return WeightedJetShift(
            CONFIG, s, phi, (HyperScalar(0, sigma=s),), const(c0), (const(c1),)
        )

    return Rep(
        "parabolic_config",
        CONFIG,
        s,
        ops,
        group,
        note="sp2 part admits no extension satisfying all fifteen brackets",
    )


def _parabolic_fsb():
    s = 0
    i, e = HyperScalar.i(s), HyperScalar.j(s)
    coord, d, const = _c(PHASE, s)
    a, b, z = _fsb_sw(s)
    k = e * HH / (4 * PI * i)
    ops = {
        "S": const(e * HH),
        "X": coord("q") * (-2 * PI * i) - d("p") * k,
        "Y": coord("p") * (-2 * PI * i) + d("q") * k,
        "A": a,
        "B": b,
        "Z": z,
    }

    def group(g):
        s_, x, y = _hs(g, s)
        phi = (coord("q") * x + coord("p") * y) * (-2 * PI * i)
        c0 = 1 + e * HH * s_
        cq = e * HH * y / (4 * PI * i)
        cp = -e * HH * x / (4 * PI * i)
        zero = HyperScalar(0, sigma=s)
        return WeightedJetShift(PHASE, s, phi, (zero, zero), const(c0), (const(cq), const(cp)))

    return Rep("parabolic_fsb", PHASE, s, ops, group)


def _hs(g: HeisPoint, sigma):
    return tuple(HyperScalar(RatFun(v), sigma=sigma) for v in (g.s, g.x, g.y))


@lru_cache(maxsize=None)
def catalog() -> dict[str, Rep]:
    reps = [_schrodinger(), _fsb(), _hyperbolic(), _parabolic_config(), _parabolic_fsb()]
    return {r.rep_id: r for r in reps}


def rep_operator(rep: str, v: str) -> DiffOp:
    return catalog()[rep].ops[v]


def rho(rep: str, u: AbstractElt) -> DiffOp:
    """Derived action of an arbitrary element, extended linearly."""
    r = catalog()[rep]
    if u.sigma != r.sigma:
        u = u.with_sigma(r.sigma)
    out = DiffOp.zero(r.spec, r.sigma)
    for b in BASIS:
        c = u[b]
        if c:
            out = out + r.ops[b] * c
    return out


def homomorphism_suite(rep: str, table: StructureTable = DEFAULT_TABLE) -> list[dict]:
    """rho([u, v]) - [rho(u), rho(v)] for all fifteen basis pairs.

    Returns one record per pair: ``{"pair", "residual", "ok"}``.
    """
    r = catalog()[rep]
    out = []
    for u, v in itertools.combinations(BASIS, 2):
        br = bracket(AbstractElt.basis(u, r.sigma), AbstractElt.basis(v, r.sigma), table)
        res = rho(rep, br) - op_commutator(r.ops[u], r.ops[v])
        out.append({"pair": (u, v), "residual": res, "ok": res.is_zero()})
    return out


def quadratic_suite() -> list[dict]:
    """Shale-Weil generators as quadratic expressions in rho(X), rho(Y), rho(S).

    Checks the three configuration-space elliptic identities and their three
    hyperbolic counterparts exactly as operator equalities.
    """
    out = []

    def record(name, rep, lhs, rhs):
        res = lhs - rhs
        out.append({"id": name, "rep": rep, "residual": res, "ok": res.is_zero()})

    ops = catalog()["schrodinger_config"].ops
    i = HyperScalar.i(-1)
    X, Y, S = ops["X"], ops["Y"], ops["S"]
    k = i / (4 * PI * HBAR)
    ordered = (op_mul(X, Y) - S * Fraction(1, 2)) * k
    symmetric = (op_mul(X, Y) + op_mul(Y, X)) * (k / 2)
    record("elliptic_A_ordered", "schrodinger_config", ops["A"], ordered)
    record("elliptic_A_symmetrized", "schrodinger_config", ops["A"], symmetric)
    record("elliptic_A_forms_agree", "schrodinger_config", ordered, symmetric)
    record("elliptic_B", "schrodinger_config", ops["B"], (X * X - Y * Y) * (k / 2))
    record("elliptic_Z", "schrodinger_config", ops["Z"], (X * X + Y * Y) * k)

    ops = catalog()["hyperbolic_config"].ops
    j = HyperScalar.j(1)
    X, Y, S = ops["X"], ops["Y"], ops["S"]
    ordered = (op_mul(X, Y) - S * Fraction(1, 2)) * (-j / (2 * HH))
    symmetric = (op_mul(X, Y) + op_mul(Y, X)) * (-j / (4 * HH))
    record("hyperbolic_A_ordered", "hyperbolic_config", ops["A"], ordered)
    record("hyperbolic_A_symmetrized", "hyperbolic_config", ops["A"], symmetric)
    record("hyperbolic_A_forms_agree", "hyperbolic_config", ordered, symmetric)
    record("hyperbolic_B", "hyperbolic_config", ops["B"], (X * X - Y * Y) * (j / (4 * HH)))
    record("hyperbolic_Z", "hyperbolic_config", ops["Z"], (X * X + Y * Y) * (-j / (2 * HH)))
    return out


# -- group level ------------------------------------------------------------


def _poly(spec, sigma, value=None):
    if value is None:
        return DiffOp.zero(spec, sigma)
    if isinstance(value, DiffOp):
        return value
    return DiffOp.scalar(spec, value, sigma)


def _is_poly(p: DiffOp) -> bool:
    return all(not any(ds) for _, ds in p.terms)


def _poly_shift(p: DiffOp, shift) -> DiffOp:
    """p(u + shift) for a polynomial (order-0) operator."""
    out = DiffOp.zero(p.spec, p.sigma)
    n = len(p.spec)
    for (xs, ds), c in p.terms.items():
        term = DiffOp.scalar(p.spec, c, p.sigma)
        for k, e in enumerate(xs):
            if e < 0:
                if shift[k]:
                    raise ValueError("cannot shift a negative power")
                factor = DiffOp.coord(p.spec, p.spec.names[k], e, p.sigma)
            else:
                factor = DiffOp.zero(p.spec, p.sigma)
                for m in range(e + 1):
                    coeff = shift[k] ** (e - m) * comb(e, m)
                    if coeff:
                        mono = [0] * n
                        mono[k] = m
                        factor = factor + DiffOp(
                            p.spec, {(tuple(mono), (0,) * n): coeff}, p.sigma
                        )
            term = op_mul(term, factor)
        out = out + term
    return out


def _poly_diff(p: DiffOp, k: int) -> DiffOp:
    out = {}
    for (xs, ds), c in p.terms.items():
        e = xs[k]
        if e:
            nx = list(xs)
            nx[k] -= 1
            out[(tuple(nx), ds)] = c * e
    return DiffOp(p.spec, out, p.sigma)


class WeightedJetShift:
    """f(u) -> exp(phi(u)) * (c0(u) f(u + a) + sum_j c_j(u) (d_j f)(u + a)).

    ``phi``, ``c0`` and ``c_j`` are polynomial in the coordinates with
    HyperScalar coefficients; ``a`` is a constant shift.  Compositions are
    closed as long as products c_j * c'_k vanish, which holds when every c_j
    lies in the nilpotent ideal of the dual numbers.
    """

    __slots__ = ("spec", "sigma", "phi", "shift", "c0", "cj")

    def __init__(self, spec, sigma, phi, shift, c0, cj):
        self.spec = spec
        self.sigma = sigma
        self.phi = _poly(spec, sigma, phi)
        self.shift = tuple(
            s if isinstance(s, HyperScalar) else HyperScalar(s, sigma=sigma) for s in shift
        )
        self.c0 = _poly(spec, sigma, c0)
        self.cj = tuple(_poly(spec, sigma, c) for c in cj)
        if len(self.shift) != len(spec) or len(self.cj) != len(spec):
            raise ValueError("shift and jet coefficients need one entry per coordinate")
        for p in (self.phi, self.c0, *self.cj):
            if not _is_poly(p):
                raise ValueError("weights must be multiplication operators")
        if sigma == 0:
            for c in self.cj:
                if not all(v.in_nilpotent_ideal() for v in c.coefficients()):
                    raise ValueError("jet coefficients must lie in the nilpotent ideal")
        elif any(c for c in self.cj):
            raise ValueError("jet terms need dual-number coefficients")

    @classmethod
    def weighted_shift(cls, spec, sigma, phi, shift: dict):
        zero = HyperScalar(0, sigma=sigma)
        sh = tuple(
            (v if isinstance(v, HyperScalar) else HyperScalar(v, sigma=sigma))
            if (v := shift.get(n)) is not None
            else zero
            for n in spec.names
        )
        return cls(spec, sigma, phi, sh, 1, [None] * len(spec))

    @classmethod
    def identity(cls, spec, sigma):
        return cls(spec, sigma, None, [0] * len(spec), 1, [None] * len(spec))

    def compose(self, other: "WeightedJetShift") -> "WeightedJetShift":
        """self o other: apply ``other`` first."""
        if other.spec != self.spec or other.sigma != self.sigma:
            raise ValueError("incompatible operators")
        n = len(self.spec)
        for c1 in self.cj:
            for c2 in other.cj:
                if c1 and c2 and op_mul(c1, c2):
                    raise ValueError("second-order jet terms are not representable")
        a1 = self.shift
        phi2 = _poly_shift(other.phi, a1)
        c02 = _poly_shift(other.c0, a1)
        cj2 = [_poly_shift(c, a1) for c in other.cj]
        dphi2 = [_poly_diff(phi2, k) for k in range(n)]
        phi = self.phi + phi2
        shift = tuple(x + y for x, y in zip(a1, other.shift))
        c0 = op_mul(self.c0, c02)
        for j in range(n):
            c1j = self.cj[j]
            if c1j:
                c0 = c0 + op_mul(c1j, op_mul(dphi2[j], c02) + _poly_diff(c02, j))
        cj = []
        for k in range(n):
            ck = op_mul(self.c0, cj2[k]) + op_mul(self.cj[k], c02)
            for j in range(n):
                c1j = self.cj[j]
                if c1j:
                    ck = ck + op_mul(c1j, op_mul(dphi2[j], cj2[k]) + _poly_diff(cj2[k], j))
            cj.append(ck)
        return WeightedJetShift(self.spec, self.sigma, phi, shift, c0, cj)

    def __matmul__(self, other):
        return self.compose(other)

    def minus(self, other: "WeightedJetShift") -> dict:
        """Componentwise differences; all zero iff the operators coincide."""
        return {
            "phi": self.phi - other.phi,
            "shift": tuple(a - b for a, b in zip(self.shift, other.shift)),
            "c0": self.c0 - other.c0,
            "cj": tuple(a - b for a, b in zip(self.cj, other.cj)),
        }

    def __eq__(self, other):
        if not isinstance(other, WeightedJetShift):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.sigma == other.sigma
            and self.phi == other.phi
            and self.shift == other.shift
            and self.c0 == other.c0
            and self.cj == other.cj
        )

    def is_identity(self) -> bool:
        return self == WeightedJetShift.identity(self.spec, self.sigma)

    def derivative_at_zero(self, param: str) -> DiffOp:
        """d/d(param) at param = 0 of a one-parameter family through the identity."""

        def dt(h: HyperScalar) -> HyperScalar:
            return HyperScalar._from([c.diff_at_zero(param) for c in h.c], h.sigma)

        def dpoly(p: DiffOp) -> DiffOp:
            return DiffOp(p.spec, {m: dt(c) for m, c in p.terms.items()}, p.sigma)

        out = dpoly(self.phi) + dpoly(self.c0)
        for k, name in enumerate(self.spec.names):
            coef = DiffOp.scalar(self.spec, dt(self.shift[k]), self.sigma) + dpoly(self.cj[k])
            out = out + op_mul(coef, DiffOp.deriv(self.spec, name, 1, self.sigma))
        return out

    def __repr__(self):
        return (
            f"WeightedJetShift(phi={self.phi}, shift={[str(s) for s in self.shift]}, "
            f"c0={self.c0}, cj={[str(c) for c in self.cj]})"
        )


def group_operator(rep: str, g: HeisPoint) -> WeightedJetShift:
    return catalog()[rep].group(g)


def group_homomorphism_check(rep: str, g: HeisPoint, h: HeisPoint) -> dict:
    """rho(g) rho(h) - rho(g h), componentwise."""
    from .liealg import heis_mul

    lhs = group_operator(rep, g).compose(group_operator(rep, h))
    rhs = group_operator(rep, heis_mul(g, h))
    diff = lhs.minus(rhs)
    ok = (
        diff["phi"].is_zero()
        and not any(diff["shift"])
        and diff["c0"].is_zero()
        and all(c.is_zero() for c in diff["cj"])
    )
    return {"ok": ok, "residual": diff}


def derive_at_identity(rep: str, v: str) -> DiffOp:
    """Derivative of the group action along the path t*v through the identity."""
    if v not in ("S", "X", "Y"):
        raise ValueError("only S, X and Y exponentiate inside the Heisenberg group")
    t = sym("t")
    coords = {"S": (t, 0, 0), "X": (0, t, 0), "Y": (0, 0, t)}[v]
    g = HeisPoint(*coords)
    return group_operator(rep, g).derivative_at_zero("t") * DERIVE_SIGN


# -- invariant vector fields and Cauchy-Riemann type operators -------------


def invariant_field(side: str, v: str, sigma: int = -1) -> DiffOp:
    """Left- or right-invariant vector field of S, X or Y on (s, x, y)."""
    if side not in ("left", "right"):
        raise ValueError(side)
    sign = 1 if side == "left" else -1
    ds = DiffOp.deriv(HEIS, "s", 1, sigma)
    if v == "S":
        return ds * sign
    if v == "X":
        return DiffOp.deriv(HEIS, "x", 1, sigma) * sign - op_mul(
            DiffOp.coord(HEIS, "y", 1, sigma), ds
        ) * Fraction(1, 2)
    if v == "Y":
        return DiffOp.deriv(HEIS, "y", 1, sigma) * sign + op_mul(
            DiffOp.coord(HEIS, "x", 1, sigma), ds
        ) * Fraction(1, 2)
    raise ValueError(f"no invariant field for {v!r}")


def field_from_group_law(side: str, v: str, sigma: int = -1) -> DiffOp:
    """Independent route to the invariant fields: differentiate the group law.

    Left-invariant fields differentiate f(g * exp(t v)); right-invariant ones
    differentiate f(exp(-t v) * g).
    """
    from .liealg import heis_mul

    for name in ("s", "x", "y"):
        register_symbol("g" + name)
    t = sym("t")
    g = HeisPoint(sym("gs"), sym("gx"), sym("gy"))
    unit = {"S": (1, 0, 0), "X": (0, 1, 0), "Y": (0, 0, 1)}[v]
    if side == "left":
        moved = heis_mul(g, HeisPoint(*(t * u for u in unit)))
    else:
        moved = heis_mul(HeisPoint(*(-t * u for u in unit)), g)
    out = DiffOp.zero(HEIS, sigma)
    rename = {"gs": "s", "gx": "x", "gy": "y"}
    for name, comp in zip(("s", "x", "y"), (moved.s, moved.x, moved.y)):
        coef = RatFun(comp).diff_at_zero("t")
        # coef is linear in the group coordinates; rewrite as a polynomial operator
        poly = DiffOp.zero(HEIS, sigma)
        for monom, c in _linear_terms(coef):
            if monom is None:
                poly = poly + DiffOp.scalar(HEIS, Fraction(c), sigma)
            else:
                poly = poly + DiffOp.coord(HEIS, rename[monom], 1, sigma) * Fraction(c)
        out = out + op_mul(poly, DiffOp.deriv(HEIS, name, 1, sigma))
    return out


def _linear_terms(r: RatFun):
    import sympy

    expr = sympy.expand(r.as_expr())
    poly = sympy.Poly(expr, *[sympy.Symbol(n) for n in ("gs", "gx", "gy")])
    for monom, c in poly.terms():
        if sum(monom) > 1:
            raise ValueError("field coefficient is not affine")
        if sum(monom) == 0:
            yield None, sympy.Rational(c)
        else:
            yield ("gs", "gx", "gy")[monom.index(1)], sympy.Rational(c)


# The mother wavelet of each case is annihilated by the ladder combination
# below; the image of the wavelet transform is annihilated by the conjugate
# combination of left-invariant fields with d/ds replaced by conj(rho(S)).
_CR_CASES = {
    "elliptic": ("schrodinger_config", {"X": 1, "Y": "-i"}),
    "hyperbolic_h": ("hyperbolic_config", {"X": 1, "Y": -1}),
    "hyperbolic_unit": ("hyperbolic_config", {"X": 1, "Y": "-j"}),
}


def _unit_conj(h: HyperScalar) -> HyperScalar:
    return h.conj_i() if h.sigma == -1 else h.conj_j()


def cr_operator(case: str) -> tuple[DiffOp, HyperScalar]:
    """Cauchy-Riemann type operator on (x, y) and the d/ds constant used."""
    rep_id, combo = _CR_CASES[case]
    rep = catalog()[rep_id]
    sigma = rep.sigma
    central = rep.ops["S"].terms[((0,), (0,))]
    c = _unit_conj(central)
    out = DiffOp.zero(PLANE, sigma)
    for v, coef in combo.items():
        if coef == "-i":
            coef = -HyperScalar.i(sigma)
        elif coef == "-j":
            coef = -HyperScalar.j(sigma)
        else:
            coef = HyperScalar(coef, sigma=sigma)
        fld = invariant_field("left", v, sigma)
        out = out + _restrict_s(fld, c) * _unit_conj(coef)
    return out, c


def _restrict_s(op: DiffOp, c: HyperScalar) -> DiffOp:
    """Replace d/ds by the scalar c and drop the s coordinate."""
    out = {}
    for (xs, ds), coef in op.terms.items():
        if xs[0]:
            raise ValueError("operator depends on s")
        val = coef * (c ** ds[0])
        key = ((xs[1], xs[2]), (ds[1], ds[2]))
        out[key] = out[key] + val if key in out else val
    return DiffOp(PLANE, out, op.sigma)


def _stated_cr():
    i = HyperScalar.i(-1)
    j = HyperScalar.j(1)
    dx, dy = (DiffOp.deriv(PLANE, n, 1, -1) for n in "xy")
    x, y = (DiffOp.coord(PLANE, n, 1, -1) for n in "xy")
    ell = dx + dy * i - (x - y * i) * (PI * HBAR)
    dx, dy = (DiffOp.deriv(PLANE, n, 1, 1) for n in "xy")
    x, y = (DiffOp.coord(PLANE, n, 1, 1) for n in "xy")
    hyp_h = dx - dy + (x + y) * (HH / 2)
    hyp_j = dx + dy * j - (x - y * j) * (HH / 2)
    return {"elliptic": ell, "hyperbolic_h": hyp_h, "hyperbolic_unit": hyp_j}


CR_STATED = _stated_cr()
