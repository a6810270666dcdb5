"""The Lie algebra h1 x| sp2, the Heisenberg group, Sp(2) and their semidirect product."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .hyperscalar import HyperScalar, RatFun

__all__ = [
    "BASIS",
    "SP2_BASIS",
    "AbstractElt",
    "StructureTable",
    "DEFAULT_TABLE",
    "ALT_SIGN_TABLE",
    "jacobi_residual",
    "bracket",
    "jacobi_verify",
    "ad_matrix",
    "killing_form",
    "HeisPoint",
    "Sp2Mat",
    "symplectic_form",
    "heis_mul",
    "heis_inv",
    "sp2_act",
    "sp2_subgroup_exp",
    "sp2_generator",
    "SP2_MATRICES",
    "semidirect_mul",
    "FLOW_FRAMES",
    "flow_matrix",
    "flow_hypercomplex",
    "flow_invariant",
]

BASIS = ("S", "X", "Y", "A", "B", "Z")
SP2_BASIS = ("A", "B", "Z")
_IDX = {b: k for k, b in enumerate(BASIS)}


class AbstractElt:
    """Element of the six-dimensional algebra with HyperScalar coefficients."""

    __slots__ = ("sigma", "coeffs")

    def __init__(self, coeffs: Mapping[str, object] | Sequence | None = None, sigma: int = -1):
        self.sigma = sigma
        vals = [HyperScalar(0, sigma=sigma)] * 6
        if coeffs is None:
            coeffs = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else zip(BASIS, coeffs)
        for name, c in items:
            if name not in _IDX:
                raise KeyError(f"unknown basis vector {name!r}")
            if not isinstance(c, HyperScalar):
                c = HyperScalar(c, sigma=sigma)
            elif c.sigma != sigma:
                raise ValueError("mixed unit systems")
            vals[_IDX[name]] = c
        self.coeffs = tuple(vals)

    @classmethod
    def basis(cls, name: str, sigma: int = -1) -> "AbstractElt":
        return cls({name: 1}, sigma)

    def __getitem__(self, name: str) -> HyperScalar:
        return self.coeffs[_IDX[name]]

    def __add__(self, other):
        self._same(other)
        return AbstractElt(list(a + b for a, b in zip(self.coeffs, other.coeffs)), self.sigma)

    def __sub__(self, other):
        self._same(other)
        return AbstractElt(list(a - b for a, b in zip(self.coeffs, other.coeffs)), self.sigma)

    def __neg__(self):
        return AbstractElt([-a for a in self.coeffs], self.sigma)

    def __mul__(self, k):
        return AbstractElt([a * k for a in self.coeffs], self.sigma)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return AbstractElt([a / k for a in self.coeffs], self.sigma)

    def _same(self, other):
        if not isinstance(other, AbstractElt):
            raise TypeError("expected AbstractElt")
        if other.sigma != self.sigma:
            raise ValueError("mixed unit systems")

    def __eq__(self, other):
        if not isinstance(other, AbstractElt):
            return NotImplemented
        return self.sigma == other.sigma and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.sigma, self.coeffs))

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def support(self) -> set[str]:
        return {b for b, c in zip(BASIS, self.coeffs) if c}

    def in_span(self, names) -> bool:
        return self.support() <= set(names)

    def with_sigma(self, sigma: int) -> "AbstractElt":
        return AbstractElt([c.with_sigma(sigma) for c in self.coeffs], sigma)

    def __str__(self):
        parts = []
        for b, c in zip(BASIS, self.coeffs):
            if not c:
                continue
            cs = str(c)
            parts.append(b if cs == "1" else f"-{b}" if cs == "-1" else f"({cs})*{b}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"AbstractElt({self})"


@dataclass(frozen=True)
class StructureTable:
    """Brackets of basis vectors as rational coefficient vectors.

    Only one ordering of each pair needs to be given; antisymmetry fills the
    other and all unlisted brackets vanish.
    """

    entries: tuple

    @classmethod
    def from_dict(cls, d: Mapping[tuple[str, str], Mapping[str, object]]) -> "StructureTable":
        full = {}
        for (u, v), vec in d.items():
            w = tuple(Fraction(vec.get(b, 0)) for b in BASIS)
            if (v, u) in full and full[(v, u)] != tuple(-c for c in w):
                raise ValueError(f"antisymmetry violated for ({u}, {v})")
            full[(u, v)] = w
            full[(v, u)] = tuple(-c for c in w)
        for b in BASIS:
            if (b, b) in full and any(full[(b, b)]):
                raise ValueError(f"[{b}, {b}] must vanish")
        return cls(tuple(sorted(full.items())))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def get(self, u: str, v: str) -> tuple:
        return self.as_dict().get((u, v), (Fraction(0),) * 6)

    def with_entry(self, u: str, v: str, vec: Mapping[str, object]) -> "StructureTable":
        d = {}
        for (a, b), w in self.entries:
            if (a, b) in ((u, v), (v, u)):
                continue
            if (b, a) not in d:
                d[(a, b)] = dict(zip(BASIS, w))
        d[(u, v)] = dict(vec)
        return StructureTable.from_dict(d)


_HALF = Fraction(1, 2)

# [A, X] and [A, Y] carry the signs forced by the Jacobi identity (and by the
# configuration-space Shale-Weil operators); see ALT_SIGN_TABLE.
DEFAULT_TABLE = StructureTable.from_dict(
    {
        ("X", "Y"): {"S": 1},
        ("Z", "A"): {"B": 2},
        ("Z", "B"): {"A": -2},
        ("A", "B"): {"Z": -_HALF},
        ("A", "X"): {"X": -_HALF},
        ("B", "X"): {"Y": -_HALF},
        ("Z", "X"): {"Y": 1},
        ("A", "Y"): {"Y": _HALF},
        ("B", "Y"): {"X": -_HALF},
        ("Z", "Y"): {"X": -1},
    }
)

# The opposite sign choice for [A, X] and [A, Y]; fails the Jacobi identity.
ALT_SIGN_TABLE = DEFAULT_TABLE.with_entry("A", "X", {"X": _HALF}).with_entry(
    "A", "Y", {"Y": -_HALF}
)


def bracket(u: AbstractElt, v: AbstractElt, table: StructureTable = DEFAULT_TABLE) -> AbstractElt:
    u._same(v)
    tab = table.as_dict()
    out = [HyperScalar(0, sigma=u.sigma)] * 6
    for a, ca in zip(BASIS, u.coeffs):
        if not ca:
            continue
        for b, cb in zip(BASIS, v.coeffs):
            if not cb:
                continue
            w = tab.get((a, b))
            if w is None:
                continue
            prod = ca * cb
            out = [o + prod * c if c else o for o, c in zip(out, w)]
    return AbstractElt(out, u.sigma)


def jacobi_verify(table: StructureTable = DEFAULT_TABLE) -> list[tuple[tuple[str, str, str], AbstractElt]]:
    """Jacobi residual for every unordered triple of distinct basis vectors.

    Returns ``(triple, residual)`` for the failures only.
    """
    failures = []
    for a, b, c in itertools.combinations(BASIS, 3):
        x, y, z = (AbstractElt.basis(n) for n in (a, b, c))
        r = (
            bracket(x, bracket(y, z, table), table)
            + bracket(y, bracket(z, x, table), table)
            + bracket(z, bracket(x, y, table), table)
        )
        if r:
            failures.append(((a, b, c), r))
    return failures


def jacobi_residual(a: str, b: str, c: str, table: StructureTable = DEFAULT_TABLE) -> AbstractElt:
    x, y, z = (AbstractElt.basis(n) for n in (a, b, c))
    return (
        bracket(x, bracket(y, z, table), table)
        + bracket(y, bracket(z, x, table), table)
        + bracket(z, bracket(x, y, table), table)
    )


def ad_matrix(u: AbstractElt, names: Sequence[str] = SP2_BASIS, table=DEFAULT_TABLE):
    """Matrix (list of rows) of ad u restricted to span(names); columns are images."""
    n = len(names)
    mat = [[HyperScalar(0, sigma=u.sigma)] * n for _ in range(n)]
    for col, b in enumerate(names):
        img = bracket(u, AbstractElt.basis(b, u.sigma), table)
        if not img.in_span(names):
            raise ValueError(f"span{tuple(names)} is not ad-invariant under {u}")
        for row, r in enumerate(names):
            mat[row][col] = img[r]
    return mat


def killing_form(u: AbstractElt, v: AbstractElt, table: StructureTable = DEFAULT_TABLE) -> HyperScalar:
    """trace(ad u . ad v) on sp2; both arguments must lie in span{A, B, Z}."""
    for w in (u, v):
        if not w.in_span(SP2_BASIS):
            raise ValueError(f"{w} has components outside span{{A, B, Z}}")
    ma = ad_matrix(u, SP2_BASIS, table)
    mb = ad_matrix(v, SP2_BASIS, table)
    tr = HyperScalar(0, sigma=u.sigma)
    for k in range(3):
        for m in range(3):
            tr = tr + ma[k][m] * mb[m][k]
    return tr


# -- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class HeisPoint:
    s: Fraction = Fraction(0)
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)

    def __post_init__(self):
        for f in ("s", "x", "y"):
            v = getattr(self, f)
            if isinstance(v, (int, Fraction)):
                object.__setattr__(self, f, Fraction(v))


def symplectic_form(x, y, x2, y2):
    return x * y2 - x2 * y


def heis_mul(g: HeisPoint, h: HeisPoint) -> HeisPoint:
    return HeisPoint(
        g.s + h.s + symplectic_form(g.x, g.y, h.x, h.y) / 2, g.x + h.x, g.y + h.y
    )


def heis_inv(g: HeisPoint) -> HeisPoint:
    return HeisPoint(-g.s, -g.x, -g.y)


@dataclass(frozen=True)
class Sp2Mat:
    a: object = 1
    b: object = 0
    c: object = 0
    d: object = 1

    def det(self):
        return self.a * self.d - self.b * self.c

    def is_unimodular(self, tol: float = 1e-12) -> bool:
        det = self.det()
        if isinstance(det, (int, Fraction)):
            return det == 1
        return abs(det - 1) <= tol

    def __matmul__(self, o: "Sp2Mat") -> "Sp2Mat":
        return Sp2Mat(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)


def sp2_act(g: Sp2Mat, h: HeisPoint) -> HeisPoint:
    if not g.is_unimodular():
        raise ValueError(f"matrix {g} is not unimodular (det={g.det()})")
    return HeisPoint(h.s, g.a * h.x + g.b * h.y, g.c * h.x + g.d * h.y)


def sp2_subgroup_exp(case: str, t: float) -> Sp2Mat:
    """Closed forms of the K (elliptic), N (parabolic) and A (hyperbolic) subgroups."""
    if case == "elliptic":
        c, s = np.cos(t), np.sin(t)
        return Sp2Mat(c, s, -s, c)
    if case == "parabolic":
        return Sp2Mat(1.0, float(t), 0.0, 1.0)
    if case == "hyperbolic":
        return Sp2Mat(float(np.exp(t)), 0.0, 0.0, float(np.exp(-t)))
    raise ValueError(f"unknown case {case!r}")


# Matrices of A, B, Z in sp2.
SP2_MATRICES = {
    "A": np.array([[-0.5, 0.0], [0.0, 0.5]]),
    "B": np.array([[0.0, 0.5], [0.5, 0.0]]),
    "Z": np.array([[0.0, 1.0], [-1.0, 0.0]]),
}


def sp2_generator(case: str) -> dict[str, float]:
    """Generator of each subgroup as coefficients over A, B, Z."""
    return {
        "elliptic": {"Z": 1.0},
        "parabolic": {"B": 1.0, "Z": 0.5},
        # d/dt diag(e^t, e^-t) at 0 is diag(1, -1) = -2A
        "hyperbolic": {"A": -2.0},
    }[case]


def semidirect_mul(p: tuple[HeisPoint, Sp2Mat], q: tuple[HeisPoint, Sp2Mat]):
    (h, g), (h2, g2) = p, q
    return heis_mul(h, sp2_act(g, h2)), g @ g2


# -- phase-space flows -------------------------------------------------------
#
# Two conventions relate a subgroup to multiplication by exp(unit * t):
#   "generator": z = q + unit*p and the flows exp(-tZ), exp(t(B - Z/2)),
#                exp(2tB); these conserve q^2 + p^2, q and q^2 - p^2.
#   "subgroup":  the K, N, A matrices of sp2_subgroup_exp acting on (q, p),
#                with z = p + i q, p + e q and (q + p) + h (q - p).

FLOW_FRAMES = ("generator", "subgroup")
_CASE_SIGMA = {"elliptic": -1, "parabolic": 0, "hyperbolic": 1}


def flow_matrix(case: str, t: float, frame: str = "generator") -> Sp2Mat:
    if frame == "subgroup":
        return sp2_subgroup_exp(case, t)
    if frame != "generator":
        raise ValueError(f"unknown frame {frame!r}")
    if case == "elliptic":
        c, s = np.cos(t), np.sin(t)
        return Sp2Mat(c, -s, s, c)
    if case == "parabolic":
        return Sp2Mat(1.0, 0.0, float(t), 1.0)
    if case == "hyperbolic":
        c, s = np.cosh(t), np.sinh(t)
        return Sp2Mat(c, s, s, c)
    raise ValueError(f"unknown case {case!r}")


def _hyper_mul(sigma: int, a: tuple[float, float], b: tuple[float, float]) -> tuple[float, float]:
    return a[0] * b[0] + sigma * a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def flow_hypercomplex(case: str, q: float, p: float, t: float, frame: str = "generator") -> tuple[float, float]:
    """Image of (q, p) computed as z * exp(unit * t) in the frame's identification."""
    from .hyperscalar import hs_exp_numeric

    sigma = _CASE_SIGMA[case]
    e = hs_exp_numeric(sigma, t)
    if frame == "generator":
        return _hyper_mul(sigma, (q, p), e)
    if frame != "subgroup":
        raise ValueError(f"unknown frame {frame!r}")
    if case == "hyperbolic":
        u, v = _hyper_mul(sigma, (q + p, q - p), e)
        return (u + v) / 2, (u - v) / 2
    re, im = _hyper_mul(sigma, (p, q), e)
    return im, re


def flow_invariant(case: str, q: float, p: float, frame: str = "generator") -> float:
    """Quantity conserved by the flow."""
    if frame == "generator":
        return {"elliptic": q * q + p * p, "parabolic": q, "hyperbolic": q * q - p * p}[case]
    return {"elliptic": q * q + p * p, "parabolic": p, "hyperbolic": q * p}[case]
