"""Normal-ordered polynomial differential operators with HyperScalar coefficients.

A monomial stores, per coordinate, the power of the coordinate and the power
of its derivative; the coordinate powers always sit to the left.  Products are
reordered with the closed-form identity

    d^m x^n = sum_k C(m, k) * n(n-1)...(n-k+1) * x^(n-k) d^(m-k)

which is valid for negative (Laurent) ``n`` as well.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

import numpy as np

from .hyperscalar import HyperScalar, RatFun, hs_eval

__all__ = [
    "VarSpec",
    "DiffOp",
    "VarSpecMismatch",
    "op_mul",
    "op_commutator",
    "op_truncated_matrix",
    "op_eval",
]


class VarSpecMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VarSpec:
    """Coordinate names, each paired with its own derivative.

    ``laurent`` lists the coordinates allowed to carry negative powers.
    """

    names: tuple[str, ...]
    laurent: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "laurent", frozenset(self.laurent))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate coordinate names in {self.names}")
        if not self.laurent <= set(self.names):
            raise ValueError("laurent coordinates must be among the names")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


def _falling(n: int, k: int) -> int:
    out = 1
    for r in range(k):
        out *= n - r
    return out


def _mono_mul_1d(a: int, b: int, c: int, d: int) -> list[tuple[int, int, int]]:
    """(x^a d^b)(x^c d^d) as [(coefficient, x power, d power)]."""
    out = []
    for k in range(b + 1):
        f = comb(b, k) * _falling(c, k)
        if f:
            out.append((f, a + c - k, b + d - k))
    return out


def _mono_mul(m1, m2) -> list[tuple[int, tuple]]:
    """Product of two multi-coordinate monomials ((xs), (ds))."""
    xs1, ds1 = m1
    xs2, ds2 = m2
    acc = [(1, (), ())]
    for a, b, c, d in zip(xs1, ds1, xs2, ds2):
        step = _mono_mul_1d(a, b, c, d)
        acc = [(f * g, xs + (x,), ds + (dd,)) for f, xs, ds in acc for g, x, dd in step]
    return [(f, (xs, ds)) for f, xs, ds in acc]


class DiffOp:
    """Finitely supported map from normal-ordered monomials to HyperScalars."""

    __slots__ = ("spec", "sigma", "terms")

    def __init__(self, spec: VarSpec, terms: Mapping | None = None, sigma: int = -1):
        self.spec = spec
        self.sigma = sigma
        clean = {}
        for mono, coef in (terms or {}).items():
            if not isinstance(coef, HyperScalar):
                coef = HyperScalar(coef, sigma=sigma)
            elif coef.sigma != sigma:
                raise ValueError(f"coefficient sigma {coef.sigma} != operator sigma {sigma}")
            xs, ds = mono
            self._check_mono(xs, ds)
            if coef:
                clean[(tuple(xs), tuple(ds))] = coef
        self.terms = clean

    def _check_mono(self, xs, ds):
        n = len(self.spec)
        if len(xs) != n or len(ds) != n:
            raise ValueError("monomial arity does not match the VarSpec")
        for name, x, d in zip(self.spec.names, xs, ds):
            if d < 0:
                raise ValueError("negative derivative order")
            if x < 0 and name not in self.spec.laurent:
                raise ValueError(f"negative power of non-Laurent coordinate {name}")

    # constructors
    @classmethod
    def zero(cls, spec, sigma=-1):
        return cls(spec, {}, sigma)

    @classmethod
    def scalar(cls, spec, value, sigma=-1):
        n = len(spec)
        return cls(spec, {((0,) * n, (0,) * n): value}, sigma)

    @classmethod
    def coord(cls, spec, name, power=1, sigma=-1):
        n = len(spec)
        xs = [0] * n
        xs[spec.index(name)] = power
        return cls(spec, {(tuple(xs), (0,) * n): 1}, sigma)

    @classmethod
    def deriv(cls, spec, name, order=1, sigma=-1):
        n = len(spec)
        ds = [0] * n
        ds[spec.index(name)] = order
        return cls(spec, {((0,) * n, tuple(ds)): 1}, sigma)

    @classmethod
    def _raw(cls, spec, sigma, terms):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.sigma = sigma
        obj.terms = terms
        return obj

    def _check(self, other):
        if not isinstance(other, DiffOp):
            return False
        if other.spec != self.spec:
            raise VarSpecMismatch(f"{self.spec.names} vs {other.spec.names}")
        if other.sigma != self.sigma:
            raise ValueError(f"mixed unit systems: sigma={self.sigma} and sigma={other.sigma}")
        return True

    def _as_op(self, other):
        if isinstance(other, DiffOp):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RatFun, HyperScalar)):
            return DiffOp.scalar(self.spec, other, self.sigma)
        return NotImplemented

    def __add__(self, other):
        other = self._as_op(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return DiffOp._raw(self.spec, self.sigma, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp._raw(self.spec, self.sigma, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._as_op(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._as_op(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, k) -> "DiffOp":
        if isinstance(k, HyperScalar) and k.sigma != self.sigma:
            raise ValueError("mixed unit systems")
        out = {}
        for m, c in self.terms.items():
            v = c * k
            if v:
                out[m] = v
        return DiffOp._raw(self.spec, self.sigma, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFun, HyperScalar)):
            return self.scale(other)
        if isinstance(other, DiffOp):
            return op_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFun, HyperScalar)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, k):
        if isinstance(k, HyperScalar):
            return self.scale(1 / k)
        return self.scale(RatFun(1) / k)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative operator power")
        out = DiffOp.scalar(self.spec, 1, self.sigma)
        for _ in range(n):
            out = op_mul(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RatFun, HyperScalar)):
            other = DiffOp.scalar(self.spec, other, self.sigma)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (
            self.spec == other.spec and self.sigma == other.sigma and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, self.sigma, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection
    def coefficients(self) -> Iterable[HyperScalar]:
        return self.terms.values()

    def order(self) -> int:
        return max((sum(ds) for _, ds in self.terms), default=0)

    def raise_degree(self) -> int:
        """Largest amount by which a term raises total polynomial degree."""
        return max((sum(xs) - sum(ds) for xs, ds in self.terms), default=0)

    def in_subring(self, units: str) -> bool:
        return all(c.in_subring(units) for c in self.terms.values())

    def free_symbols(self) -> set[str]:
        out = set()
        for c in self.terms.values():
            out |= c.free_symbols()
        return out

    def with_sigma(self, sigma: int) -> "DiffOp":
        return DiffOp._raw(
            self.spec, sigma, {m: c.with_sigma(sigma) for m, c in self.terms.items()}
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (xs, ds), c in sorted(self.terms.items(), key=lambda t: (-sum(t[0][1]), t[0])):
            factors = []
            for name, x in zip(self.spec.names, xs):
                if x == 1:
                    factors.append(name)
                elif x:
                    factors.append(f"{name}^{x}")
            for name, d in zip(self.spec.names, ds):
                if d == 1:
                    factors.append(f"d{name}")
                elif d:
                    factors.append(f"d{name}^{d}")
            mono = "*".join(factors)
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOp[{','.join(self.spec.names)}]({self})"


def op_mul(a: DiffOp, b: DiffOp) -> DiffOp:
    """Normal-ordered product ``a * b`` (``b`` acts first)."""
    a._check(b)
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            if not c:
                continue
            for f, m in _mono_mul(m1, m2):
                v = c * f
                prev = out.get(m)
                out[m] = v if prev is None else prev + v
    out = {m: c for m, c in out.items() if c}
    res = DiffOp._raw(a.spec, a.sigma, out)
    for xs, ds in out:
        res._check_mono(xs, ds)
    return res


def op_commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return op_mul(a, b) - op_mul(b, a)


def _basis(n_vars: int, degree: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, left):
        if len(prefix) == n_vars:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e)

    rec([], degree)
    out.sort(key=lambda e: (sum(e), e))
    return out


def _regular_block(values: tuple[float, float, float, float], sigma: int) -> np.ndarray:
    """Real 4x4 matrix of multiplication by a numeric HyperScalar."""
    a0, a1, a2, a3 = values
    s = sigma
    # columns are the images of 1, i, j, ij
    return np.array(
        [
            [a0, -a1, s * a2, -s * a3],
            [a1, a0, s * a3, s * a2],
            [a2, -a3, a0, -a1],
            [a3, a2, a1, a0],
        ],
        dtype=float,
    )


def op_truncated_matrix(a: DiffOp, degree: int, assignment: Mapping[str, float] | None = None):
    """Matrix of ``a`` on polynomials of total degree <= ``degree``.

    Each HyperScalar coefficient becomes its real 4x4 regular-representation
    block, so the result has shape ``(4N, 4N)`` where ``N`` is the number of
    monomials; images above ``degree`` are dropped.  Returns ``(matrix, basis)``.
    """
    if a.spec.laurent:
        raise ValueError("truncated matrices need polynomial (non-Laurent) coordinates")
    assignment = assignment or {}
    basis = _basis(len(a.spec), degree)
    index = {e: k for k, e in enumerate(basis)}
    n = len(basis)
    mat = np.zeros((4 * n, 4 * n))
    blocks = {m: _regular_block(hs_eval(c, assignment), a.sigma) for m, c in a.terms.items()}
    for col, e in enumerate(basis):
        for (xs, ds), block in blocks.items():
            f = 1
            new = []
            for ek, xk, dk in zip(e, xs, ds):
                f *= _falling(ek, dk)
                new.append(ek - dk + xk)
            if not f or min(new) < 0:
                continue
            row = index.get(tuple(new))
            if row is None:
                continue
            mat[4 * row : 4 * row + 4, 4 * col : 4 * col + 4] += f * block
    return mat, basis


def op_eval(a: DiffOp, assignment: Mapping[str, float]) -> dict:
    """Numeric coefficients ``{monomial: (c1, ci, cj, cij)}``."""
    return {m: hs_eval(c, assignment) for m, c in a.terms.items()}
