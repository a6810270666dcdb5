"""Verification suites: every exact identity as a pass/fail check record."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import ladders as ld
from .hyperscalar import HyperScalar
from .liealg import (
    BASIS,
    DEFAULT_TABLE,
    FLOW_FRAMES,
    SP2_BASIS,
    SP2_MATRICES,
    AbstractElt,
    HeisPoint,
    Sp2Mat,
    StructureTable,
    flow_hypercomplex,
    flow_invariant,
    flow_matrix,
    heis_inv,
    heis_mul,
    jacobi_residual,
    killing_form,
    sp2_act,
    sp2_subgroup_exp,
)
from .reps import (
    CR_STATED,
    REP_IDS,
    cr_operator,
    derive_at_identity,
    field_from_group_law,
    group_homomorphism_check,
    homomorphism_suite,
    invariant_field,
    quadratic_suite,
    rep_operator,
)

__all__ = ["Check", "SUITES", "DEFAULT_SEED", "run_suites", "NOTES", "orbit_check"]

DEFAULT_SEED = 20100917
GROUP_PAIRS = 100


@dataclass(frozen=True)
class Check:
    id: str
    ref: str
    ok: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def as_dict(self) -> dict:
        return {"id": self.id, "ref": self.ref, "status": self.status, "detail": self.detail}


def _short(obj, limit: int = 160) -> str:
    s = str(obj)
    return s if len(s) <= limit else s[: limit - 3] + "..."


# -- liealg -----------------------------------------------------------------------


def _rand_point(rng: random.Random) -> HeisPoint:
    return HeisPoint(*(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3)))


def _rand_sp2(rng: random.Random) -> Sp2Mat:
    a = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    b = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return Sp2Mat(a, b, c, (1 + b * c) / a)


def liealg_suite(seed: int = DEFAULT_SEED, table: StructureTable = DEFAULT_TABLE) -> list[Check]:
    out = []
    for a, b, c in itertools.combinations(BASIS, 3):
        r = jacobi_residual(a, b, c, table)
        out.append(Check(f"liealg.jacobi.{a}{b}{c}", "structure constants: Jacobi identity", not r, _short(r)))
    for u, v in itertools.combinations(SP2_BASIS, 2):
        m_u, m_v = SP2_MATRICES[u], SP2_MATRICES[v]
        comm = m_u @ m_v - m_v @ m_u
        br = AbstractElt(table.get(u, v))
        expect = sum(
            (float(br[k].c[0].constant_value()) * SP2_MATRICES[k] for k in SP2_BASIS),
            np.zeros((2, 2)),
        )
        out.append(Check(
            f"liealg.sp2_matrix.{u}{v}", "sp2 brackets against 2x2 matrix commutators",
            bool(np.allclose(comm, expect, atol=1e-15)), f"[{u},{v}] = {br}",
        ))
    k_zz = killing_form(AbstractElt.basis("Z"), AbstractElt.basis("Z"), table)
    k_bb = killing_form(AbstractElt.basis("B"), AbstractElt.basis("B"), table)
    out.append(Check("liealg.killing.Z_negative", "Killing form on sp2", k_zz == -8, f"K(Z,Z) = {k_zz}"))
    out.append(Check("liealg.killing.B_positive", "Killing form on sp2", k_bb == 2, f"K(B,B) = {k_bb}"))
    rng = random.Random(seed)
    for n in range(5):
        g, h, k = (_rand_point(rng) for _ in range(3))
        assoc = heis_mul(heis_mul(g, h), k) == heis_mul(g, heis_mul(h, k))
        inv = heis_mul(g, heis_inv(g)) == HeisPoint()
        out.append(Check(f"liealg.heisenberg.group_law.{n}", "Heisenberg group law", assoc and inv))
        m = _rand_sp2(rng)
        auto = sp2_act(m, heis_mul(g, h)) == heis_mul(sp2_act(m, g), sp2_act(m, h))
        out.append(Check(f"liealg.sp2_automorphism.{n}", "Sp(2) acts by automorphisms", auto))
    for side in ("left", "right"):
        for v in ("S", "X", "Y"):
            f = invariant_field(side, v)
            out.append(Check(
                f"liealg.invariant_field.{side}.{v}", "invariant vector fields from the group law",
                f == field_from_group_law(side, v), _short(f),
            ))
    gens = {
        "generator": {"elliptic": -SP2_MATRICES["Z"], "parabolic": SP2_MATRICES["B"] - SP2_MATRICES["Z"] / 2,
                      "hyperbolic": 2 * SP2_MATRICES["B"]},
        "subgroup": {"elliptic": SP2_MATRICES["Z"], "parabolic": SP2_MATRICES["B"] + SP2_MATRICES["Z"] / 2,
                     "hyperbolic": -2 * SP2_MATRICES["A"]},
    }
    h = 1e-6
    for frame in FLOW_FRAMES:
        for case, gen in gens[frame].items():
            d = (flow_matrix(case, h, frame).as_array() - flow_matrix(case, -h, frame).as_array()) / (2 * h)
            dev = float(np.abs(d - gen).max())
            out.append(Check(f"liealg.flow_generator.{frame}.{case}", "one-parameter subgroups and generators",
                             dev < 1e-8, f"max deviation {dev:.2e}"))
    for case in ("elliptic", "parabolic", "hyperbolic"):
        ok = all(sp2_subgroup_exp(case, t).is_unimodular() for t in (-2.0, -0.5, 0.7, 3.0))
        out.append(Check(f"liealg.subgroup_unimodular.{case}", "K, N, A subgroups", ok))
    return out


# -- reps ---------------------------------------------------------------------------


def reps_suite(seed: int = DEFAULT_SEED, pairs: int = GROUP_PAIRS) -> list[Check]:
    out = []
    for rep in REP_IDS:
        for rec in homomorphism_suite(rep):
            u, v = rec["pair"]
            out.append(Check(f"reps.homomorphism.{rep}.{u}{v}", "derived representation brackets",
                             rec["ok"], _short(rec["residual"])))
    for rec in quadratic_suite():
        out.append(Check(f"reps.quadratic.{rec['id']}", "Shale-Weil generators as quadratic expressions",
                         rec["ok"], _short(rec["residual"])))
    for rep in REP_IDS:
        for v in ("S", "X", "Y"):
            d = derive_at_identity(rep, v)
            out.append(Check(f"reps.derived.{rep}.{v}", "derived action from the group action",
                             d == rep_operator(rep, v), _short(d)))
    rng = random.Random(seed)
    for rep in REP_IDS:
        for n in range(pairs):
            g, h = _rand_point(rng), _rand_point(rng)
            res = group_homomorphism_check(rep, g, h)
            out.append(Check(f"reps.group.{rep}.{n:03d}", "group representation property", res["ok"],
                             f"g={g}, h={h}"))
    return out


# -- ladders -------------------------------------------------------------------------

EXPECTED_POLY = {
    ("elliptic", "h1"): "lambda**2 + 1",
    ("elliptic", "sp2"): "lambda**2 + 4",
    ("hyperbolic", "h1"): "lambda**2 - 1",
    ("hyperbolic", "sp2"): "lambda**2 - 4",
    ("parabolic", "h1"): "lambda**2",
    ("parabolic", "sp2"): "lambda**2",
}

LADDER_REPS = {
    "elliptic": ("schrodinger_config", "fsb_phase"),
    "hyperbolic": ("hyperbolic_config",),
    "parabolic": ("parabolic_fsb",),
}


def expected_roots(case: str, algebra: str) -> set[str]:
    def i(k):
        return str(HyperScalar.i(-1) * k)

    def h(k):
        return str(HyperScalar.j(1) * k)

    scale = 1 if algebra == "h1" else 2
    if case == "elliptic":
        return {i(scale), i(-scale)}
    if case == "hyperbolic":
        return {str(scale), str(-scale), h(scale), h(-scale)}
    fam = "lambda1" if algebra == "h1" else "lambda2"
    return {"0", f"({fam})*e", f"(-{fam})*e"}


def ladder_checks() -> list[Check]:
    out = []
    for (case, alg), poly in EXPECTED_POLY.items():
        p = ld.LadderProblem.case(case, alg)
        got = str(ld.compatibility_polynomial(p).as_expr())
        out.append(Check(f"ladders.polynomial.{case}.{alg}", "ladder compatibility condition", got == poly, got))
        sols = ld.solve_ladder(p)
        roots = {str(s.lam) for s in sols}
        out.append(Check(f"ladders.roots.{case}.{alg}", "ladder compatibility roots",
                         roots == expected_roots(case, alg), ", ".join(sorted(roots))))
        for n, sol in enumerate(sols):
            abstract = ld.bracket(p.H, sol.coeffs) == sol.coeffs * sol.lam
            out.append(Check(f"ladders.solution.{case}.{alg}.{n}", "ladder solution in the abstract algebra",
                             abstract, str(sol)))
            for rep in LADDER_REPS[case]:
                res = ld.ladder_verify(sol, rep)
                out.append(Check(f"ladders.verify.{case}.{alg}.{n}.{rep}", "ladder operators in representations",
                                 res.is_zero(), _short(res)))
    return out


def squaring_checks() -> list[Check]:
    out = []
    for case in ld.SQUARING_GROUPS:
        for rec in ld.squaring_check(case):
            detail = f"Lambda^2 times the stated factor equals {rec['actual']}"
            out.append(Check(f"ladders.squaring.{rec['id']}", "quadratic relation between ladders",
                             rec["ok"], detail))
    return out


def eigen_checks() -> list[Check]:
    out = []
    i = HyperScalar.i(-1)
    tower = ld.hermite_tower(8)
    out.append(Check("ladders.eigen.vacuum_Z", "Gaussian vacuum is a Z-eigenvector",
                     tower[0]["ok"] and tower[0]["eigenvalue"] == i * Fraction(-1, 2), str(tower[0]["eigenvalue"])))
    out.append(Check("ladders.eigen.vacuum_annihilated", "vacuum is annihilated by the raising ladder",
                     ld.vacuum_annihilated()))
    for rec in tower:
        k = rec["k"]
        out.append(Check(f"ladders.tower.eigenvalue.{k}", "harmonic oscillator tower", rec["ok"],
                         f"{rec['eigenvalue']} (expected {rec['expected']})"))
        out.append(Check(f"ladders.tower.hermite.{k}", "Hermite polynomial parts (recurrence oracle)",
                         rec["hermite_ok"], f"ratio {rec['hermite_ratio']}"))
    nulls = ld.null_solutions()
    for rec in nulls:
        out.append(Check(f"ladders.null.{rec['ladder']}.annihilated", "hyperbolic null solutions",
                         rec["annihilated"], str(rec["function"])))
    found = {str(r["eigenvalue"]) for r in nulls}
    h = HyperScalar.j(1)
    want = {str(h * Fraction(-1, 2)), str(h * Fraction(1, 2)), "-1/2", "1/2"}
    out.append(Check("ladders.null.eigenvalues", "hyperbolic null solutions under 2B",
                     found == want, ", ".join(f"{r['ladder']}: {r['eigenvalue']}" for r in nulls)))
    return out


def lattice_checks() -> list[Check]:
    out = []
    walk = ld.lattice_walk("hyperbolic", steps=2)
    for site in walk["sites"]:
        if site["status"] == "zero-vector":
            continue
        path = "-".join(site["path"]) or "start"
        out.append(Check(f"ladders.lattice.{site['start']}.{path}", "hyperbolic eigenvalue lattice",
                         site["ok"], f"{site['status']}: {site['eigenvalue']}"))
    comm = ld.hyperbolic_commuting_shifts()
    out.append(Check("ladders.lattice.commuting_shifts", "hyperbolic eigenvalue lattice", comm["ok"],
                     f"site {comm['site']}"))
    par = ld.parabolic_shift()
    out.append(Check("ladders.parabolic.base", "parabolic eigenfunctions", par["base_ok"], str(par["base"])))
    out.append(Check("ladders.parabolic.hamiltonian", "parabolic eigenfunctions", par["hamiltonian_is_minus_qdp"]))
    out.append(Check("ladders.parabolic.dual_shift", "parabolic dual ladders", par["ok"],
                     ", ".join(f"{k}: {v}" for k, v in par["shifts"].items())))
    out.append(Check("ladders.parabolic.zero_shift", "parabolic complex ladder", par["zero_shift_ok"],
                     str(par["zero_shift"])))
    return out


def wavelet_checks(seed: int = DEFAULT_SEED) -> list[Check]:
    res = ld.wavelet_sample_numeric("elliptic", 20, seed)
    zero = ld.wavelet_sample_numeric("elliptic", 5, seed, test_function=lambda q: 0.0 * q)
    return [
        Check("ladders.wavelet.cauchy_riemann", "wavelet image solves the Cauchy-Riemann type equation",
              res["max_relative"] < 1e-6, f"max |D Wf|/|Wf| = {res['max_relative']:.2e}"),
        Check("ladders.wavelet.negative_control", "wavelet image solves the Cauchy-Riemann type equation",
              res["control_min"] > 1e-2, f"min control ratio = {res['control_min']:.2e}"),
        Check("ladders.wavelet.zero_function", "wavelet transform of zero", zero["max_relative"] == 0.0),
    ]


def ladders_suite(seed: int = DEFAULT_SEED) -> list[Check]:
    return ladder_checks() + squaring_checks() + eigen_checks() + lattice_checks() + wavelet_checks(seed)


# -- props ----------------------------------------------------------------------------


def props_suite(seed: int = DEFAULT_SEED) -> list[Check]:
    out = []
    for rec in ld.prop_similarity_verify():
        c = rec["case"]
        out.append(Check(f"props.{c}.E_in_span_BZ", "partner vector E = [A, H]", rec["E_in_span_BZ"], str(rec["E"])))
        out.append(Check(f"props.{c}.A_E_is_H", "partner vector E = [A, H]", rec["A_E_is_H"]))
        out.append(Check(f"props.{c}.killing_zero", "Killing form K(H, E) vanishes", rec["killing_zero"]))
        for n, e in enumerate(rec["h1"]):
            out.append(Check(f"props.{c}.h1_form.{n}", "h1 ladder form X -/+ unit*Y", e["ok"],
                             f"{e.get('form')}; lambda = {e.get('lambda')}"))
        for n, e in enumerate(rec["sp2"]):
            out.append(Check(f"props.{c}.sp2_form.{n}", "sp2 ladder form +-unit*A + r*E", e["ok"],
                             f"{e.get('form')}; r = {e.get('r')}; lambda = {e.get('lambda')}; "
                             f"factor to solver = {e.get('factor')}"))
    out += orbit_check(seed)
    return out


def orbit_check(seed: int = DEFAULT_SEED, samples: int = 1000) -> list[Check]:
    """Matrix action against exp(unit*t) multiplication, and conservation laws."""
    out = []
    rng = np.random.default_rng(seed)
    for frame in FLOW_FRAMES:
        for case in ("elliptic", "parabolic", "hyperbolic"):
            q0, p0 = rng.uniform(-2, 2, size=2)
            ts = rng.uniform(-3, 3, size=samples)
            dev = cons = 0.0
            for t in ts:
                m = flow_matrix(case, t, frame)
                q, p = m.a * q0 + m.b * p0, m.c * q0 + m.d * p0
                hq, hp = flow_hypercomplex(case, q0, p0, t, frame)
                scale = max(1.0, abs(q), abs(p))
                dev = max(dev, abs(q - hq) / scale, abs(p - hp) / scale)
                inv0 = flow_invariant(case, q0, p0, frame)
                inv = flow_invariant(case, q, p, frame)
                cons = max(cons, abs(inv - inv0) / max(1.0, abs(inv0), q * q + p * p))
            exact = case != "parabolic" or cons == 0.0
            out.append(Check(f"props.orbit.{frame}.{case}.hypercomplex", "symplectic flows as exp(unit t)",
                             dev < 1e-10, f"max deviation {dev:.2e} over {samples} t"))
            out.append(Check(f"props.orbit.{frame}.{case}.conserved", "conserved quantities of the flows",
                             cons < 1e-10 and exact, f"max drift {cons:.2e}"))
    return out


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "liealg": liealg_suite,
    "reps": reps_suite,
    "ladders": ladders_suite,
    "props": props_suite,
}


def run_suites(names, seed: int = DEFAULT_SEED) -> list[tuple[str, list[Check]]]:
    out = []
    for name in names:
        checks = SUITES[name](seed)
        ids = [c.id for c in checks]
        if len(ids) != len(set(ids)):
            raise RuntimeError(f"duplicate check ids in suite {name}")
        out.append((name, checks))
    return out


def _cr_note() -> str:
    lines = []
    for case, shown in CR_STATED.items():
        derived, c = cr_operator(case)
        lines.append(f"- `{case}`: derived `{derived}` (d/ds -> {c}); matches stated form: {derived == shown}")
    return "\n".join(lines)


NOTES = {
    "Structure table": (
        "[A,X] = -X/2 and [A,Y] = +Y/2. The opposite signs violate the Jacobi identity on six triples "
        "and contradict the configuration-space Shale-Weil operators."
    ),
    "Derived action sign": "d/dt rho(exp(tv)) at t = 0 reproduces every derived action with sign +1.",
    "Lambda2 normalization": (
        "The solver pins the A-coefficient (else B) to 1. The hyperbolic sp2 ladders of 2B are +-A + Z/2 "
        "(eigenvalue +-2); +-2A + Z/2 is not a ladder. The square (i/4 pi hbar)(X -/+ Y)^2 equals "
        "+-2A + Z, twice the ladder. The elliptic relation holds as Lambda2 = +(i/8 pi hbar) Lambda^2 "
        "with Lambda2 = +-iA + B."
    ),
    "Null solutions": (
        "exp(-h q^2/(2 hh)) is killed by X - Y and has 2B-eigenvalue -1/2; exp(-q^2/(2 hh)) is killed "
        "by X - hY and has eigenvalue -h/2."
    ),
    "Parabolic ladders": (
        "X -/+ e*lambda1*Y has eigenvalue +-e*lambda1 under B + Z/2, which acts as -q d/dp, so the "
        "q d/dp eigenvalue mu moves to mu -/+ e*lambda1."
    ),
    "parabolic_config": (
        "No sp2 operators satisfy [B,Y], [Z,Y] and [Z,B] together with the other brackets, because "
        "rho(Y) lies in the nilpotent ideal; three bracket checks fail by construction."
    ),
    "Orbit frames": (
        "generator: z = q + unit*p with flows exp(-tZ), exp(t(B - Z/2)), exp(2tB). "
        "subgroup: K, N, A matrices with z = p + iq, p + eq, (q+p) + h(q-p)."
    ),
}


def cr_note() -> str:
    return _cr_note()
