"""Exact arithmetic in the algebra spanned by {1, i, j, ij}.

Here ``i`` is the complex unit (i**2 == -1) and ``j`` is a hypercomplex unit
whose square ``sigma`` is -1 (complex), 0 (dual) or +1 (double).  The
coefficients are exact rational functions in formal commuting symbols such
as ``pi`` and ``hbar``; nothing is ever converted to a float until
:meth:`HyperScalar.evaluate` is called.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Mapping

from sympy import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

__all__ = [
    "DEFAULT_SYMBOLS",
    "RatFun",
    "HyperScalar",
    "MixedUnitsError",
    "ZeroDivisorError",
    "PoleError",
    "UnassignedSymbolError",
    "register_symbol",
    "symbols",
    "sym",
    "hs_mul",
    "hs_invert",
    "hs_exp_numeric",
    "hs_eval",
]

DEFAULT_SYMBOLS = ("pi", "hbar", "hh", "t", "lambda1", "lambda2", "mu0", "mu1")


class MixedUnitsError(ValueError):
    """Operands belong to algebras with different ``sigma``."""


class ZeroDivisorError(ZeroDivisionError):
    """Raised when inverting zero or a divisor of zero.

    ``annihilator`` holds a nonzero element whose product with the offending
    value is zero (``None`` when the value itself is zero).
    """

    def __init__(self, message, annihilator=None):
        super().__init__(message)
        self.annihilator = annihilator


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the requested numeric assignment."""


class UnassignedSymbolError(KeyError):
    pass


# The symbol registry only ever grows, so a field built later always contains
# every generator of an earlier one.
_names: list[str] = list(DEFAULT_SYMBOLS)
_field: FracField = FracField(tuple(_names), QQ, grlex)


def register_symbol(name: str) -> "RatFun":
    """Add a new opaque symbol and return it as a :class:`RatFun`."""
    global _field
    if name not in _names:
        if not name.isidentifier():
            raise ValueError(f"invalid symbol name {name!r}")
        _names.append(name)
        _field = FracField(tuple(_names), QQ, grlex)
    return sym(name)


def symbols() -> tuple[str, ...]:
    return tuple(_names)


def _lift(elem):
    if elem.field is _field:
        return elem
    return _field.from_expr(elem.as_expr())


class RatFun:
    """Canonical quotient of two polynomials over Q in the registered symbols."""

    __slots__ = ("_f",)

    def __init__(self, value=0):
        if isinstance(value, RatFun):
            self._f = _lift(value._f)
        elif isinstance(value, (int, Fraction, Rational)):
            v = Fraction(value)
            self._f = _field(QQ(v.numerator, v.denominator))
        elif hasattr(value, "field"):
            self._f = _lift(value)
        else:
            raise TypeError(f"cannot build RatFun from {type(value).__name__}")

    @classmethod
    def _wrap(cls, f):
        obj = cls.__new__(cls)
        obj._f = f
        return obj

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun(other)
        return NotImplemented

    def _pair(self, other):
        a, b = self._f, other._f
        if a.field is not b.field:
            a, b = _lift(a), _lift(b)
        return a, b

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._pair(other)
        return RatFun._wrap(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._pair(other)
        return RatFun._wrap(a - b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._pair(other)
        return RatFun._wrap(a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by the zero rational function")
        a, b = self._pair(other)
        return RatFun._wrap(a / b)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return RatFun._wrap(-self._f)

    def __pow__(self, n: int):
        if n < 0:
            return RatFun(1) / self ** (-n)
        return RatFun._wrap(self._f ** n)

    def __bool__(self):
        return bool(self._f)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return a == b

    def __hash__(self):
        return hash(_lift(self._f))

    @property
    def numer_terms(self):
        return self._f.numer.terms()

    @property
    def denom_terms(self):
        return self._f.denom.terms()

    def free_symbols(self) -> set[str]:
        gens = self._f.field.symbols
        out = set()
        for poly in (self._f.numer, self._f.denom):
            for monom in poly.monoms():
                out.update(str(gens[k]) for k, e in enumerate(monom) if e)
        return out

    def is_constant(self) -> bool:
        return not self.free_symbols()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(str(self.as_expr()))

    def degree_in(self, name: str) -> int:
        """Degree of numerator minus degree of denominator in ``name``."""
        gens = [str(g) for g in self._f.field.symbols]
        if name not in gens or not self:
            return 0
        k = gens.index(name)
        return self._f.numer.degree(k) - self._f.denom.degree(k)

    def evaluate(self, assignment: Mapping[str, float]) -> float:
        gens = [str(g) for g in self._f.field.symbols]
        missing = self.free_symbols() - set(assignment)
        if missing:
            raise UnassignedSymbolError(", ".join(sorted(missing)))

        def peval(poly):
            total = 0.0
            for monom, coeff in poly.terms():
                term = float(coeff)
                for k, e in enumerate(monom):
                    if e:
                        term *= float(assignment[gens[k]]) ** e
                total += term
            return total

        den = peval(self._f.denom)
        if den == 0.0:
            raise PoleError(f"denominator of {self} vanishes at the assignment")
        return peval(self._f.numer) / den

    def as_expr(self):
        return self._f.as_expr()

    @classmethod
    def from_expr(cls, expr) -> "RatFun":
        return cls._wrap(_field.from_expr(expr))

    def diff_at_zero(self, name: str) -> "RatFun":
        """d/d(name) evaluated at name = 0."""
        import sympy

        s = sympy.Symbol(name)
        d = sympy.diff(self.as_expr(), s).subs(s, 0)
        return RatFun.from_expr(sympy.together(d))

    def subs_zero(self, name: str) -> "RatFun":
        import sympy

        s = sympy.Symbol(name)
        return RatFun.from_expr(sympy.together(self.as_expr().subs(s, 0)))

    def subs(self, values: Mapping[str, object]) -> "RatFun":
        """Substitute exact values (numbers or RatFuns) for symbols."""
        import sympy

        repl = {
            sympy.Symbol(k): v.as_expr() if isinstance(v, RatFun) else sympy.Rational(str(v))
            for k, v in values.items()
        }
        return RatFun.from_expr(sympy.together(self.as_expr().subs(repl)))

    def __str__(self):
        return str(self._f.as_expr())

    def __repr__(self):
        return f"RatFun({self})"


def sym(name: str) -> RatFun:
    if name not in _names:
        raise KeyError(f"unknown symbol {name!r}; register it first")
    return RatFun._wrap(_field.gens[_names.index(name)])


def _rf(x) -> RatFun:
    return x if isinstance(x, RatFun) else RatFun(x)


class HyperScalar:
    """Element c1 + ci*i + cj*j + cij*i*j of the four-dimensional algebra.

    Instances are immutable.  Arithmetic with ``int``, ``Fraction`` and
    :class:`RatFun` promotes them to the same ``sigma``.
    """

    __slots__ = ("sigma", "c")

    def __init__(self, c1=0, ci=0, cj=0, cij=0, sigma: int = -1):
        if sigma not in (-1, 0, 1):
            raise ValueError("sigma must be -1, 0 or +1")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "c", (_rf(c1), _rf(ci), _rf(cj), _rf(cij)))

    def __setattr__(self, name, value):
        raise AttributeError("HyperScalar is immutable")

    @classmethod
    def _from(cls, comps, sigma):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "sigma", sigma)
        object.__setattr__(obj, "c", tuple(comps))
        return obj

    # units
    @classmethod
    def one(cls, sigma=-1):
        return cls(1, sigma=sigma)

    @classmethod
    def i(cls, sigma=-1):
        return cls(0, 1, sigma=sigma)

    @classmethod
    def j(cls, sigma=-1):
        return cls(0, 0, 1, sigma=sigma)

    @classmethod
    def ij(cls, sigma=-1):
        return cls(0, 0, 0, 1, sigma=sigma)

    def _coerce(self, other):
        if isinstance(other, HyperScalar):
            if other.sigma != self.sigma:
                raise MixedUnitsError(
                    f"mixed unit systems: sigma={self.sigma} and sigma={other.sigma}"
                )
            return other
        if isinstance(other, (int, Fraction, RatFun)):
            return HyperScalar(other, sigma=self.sigma)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HyperScalar._from([a + b for a, b in zip(self.c, other.c)], self.sigma)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HyperScalar._from([a - b for a, b in zip(self.c, other.c)], self.sigma)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return HyperScalar._from([-a for a in self.c], self.sigma)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFun)):
            return HyperScalar._from([a * other for a in self.c], self.sigma)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return hs_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RatFun)):
            return HyperScalar._from([a / other for a in self.c], self.sigma)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return hs_mul(self, hs_invert(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return hs_mul(other, hs_invert(self))

    def __pow__(self, n: int):
        if n < 0:
            return hs_invert(self) ** (-n)
        out = HyperScalar.one(self.sigma)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return any(bool(a) for a in self.c)

    def __eq__(self, other):
        if isinstance(other, HyperScalar):
            return self.sigma == other.sigma and self.c == other.c
        if isinstance(other, (int, Fraction, RatFun)):
            return self.c == HyperScalar(other, sigma=self.sigma).c
        return NotImplemented

    def __hash__(self):
        return hash((self.sigma, self.c))

    # structure
    def conj_j(self) -> "HyperScalar":
        """Conjugation j -> -j."""
        a, b, c, d = self.c
        return HyperScalar._from((a, b, -c, -d), self.sigma)

    def conj_i(self) -> "HyperScalar":
        """Conjugation i -> -i."""
        a, b, c, d = self.c
        return HyperScalar._from((a, -b, c, -d), self.sigma)

    def norm_form(self) -> RatFun:
        """Product with its conjugates; nonzero exactly for units."""
        n = self * self.conj_j()
        nn = n * n.conj_i()
        return nn.c[0]

    def in_subring(self, units: str) -> bool:
        """Membership in span{1, i} ('i'), span{1, j} ('j') or the reals ('1')."""
        a, b, c, d = self.c
        if units == "i":
            return not c and not d
        if units == "j":
            return not b and not d
        if units == "1":
            return not b and not c and not d
        raise ValueError(units)

    def in_nilpotent_ideal(self) -> bool:
        return self.sigma == 0 and not self.c[0] and not self.c[1]

    def free_symbols(self) -> set[str]:
        out = set()
        for a in self.c:
            out |= a.free_symbols()
        return out

    def is_constant(self) -> bool:
        return not self.free_symbols()

    def with_sigma(self, sigma: int) -> "HyperScalar":
        """Same components read in another unit system (only valid without j)."""
        if self.c[2] or self.c[3]:
            raise MixedUnitsError("cannot move an element with a j-part between unit systems")
        return HyperScalar._from(self.c, sigma)

    def evaluate(self, assignment):
        return hs_eval(self, assignment)

    def __str__(self):
        unit = {-1: "j", 0: "e", 1: "h"}[self.sigma]
        parts = []
        for coef, name in zip(self.c, ("", "i", unit, "i" + unit)):
            if not coef:
                continue
            s = str(coef)
            if name:
                if s == "1":
                    s = name
                elif s == "-1":
                    s = "-" + name
                else:
                    s = f"({s})*{name}"
            parts.append(s)
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"HyperScalar<{self.sigma:+d}>({self})"


def hs_mul(a: HyperScalar, b: HyperScalar) -> HyperScalar:
    """Product using i*i = -1, j*j = sigma and commutativity."""
    if a.sigma != b.sigma:
        raise MixedUnitsError(f"mixed unit systems: sigma={a.sigma} and sigma={b.sigma}")
    s = a.sigma
    a0, a1, a2, a3 = a.c
    b0, b1, b2, b3 = b.c
    c0 = a0 * b0 - a1 * b1
    c1 = a0 * b1 + a1 * b0
    c2 = a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1
    c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
    if s:
        c0 = c0 + s * (a2 * b2 - a3 * b3)
        c1 = c1 + s * (a2 * b3 + a3 * b2)
    return HyperScalar._from((c0, c1, c2, c3), s)


def hs_invert(a: HyperScalar) -> HyperScalar:
    """Multiplicative inverse; raises :class:`ZeroDivisorError` for non-units."""
    if not a:
        raise ZeroDivisorError("cannot invert zero")
    conj = a.conj_j()
    n = a * conj  # lies in span{1, i}
    if not n:
        raise ZeroDivisorError(
            f"{a} is a divisor of zero; it is annihilated by {conj}", annihilator=conj
        )
    nn = n * n.conj_i()
    return conj * n.conj_i() / nn.c[0]


def hs_exp_numeric(sigma: int, t: float) -> tuple[float, float]:
    """Real part and j-part of exp(j t)."""
    if sigma == -1:
        return math.cos(t), math.sin(t)
    if sigma == 0:
        return 1.0, float(t)
    if sigma == 1:
        return math.cosh(t), math.sinh(t)
    raise ValueError("sigma must be -1, 0 or +1")


def hs_eval(a: HyperScalar, assignment: Mapping[str, float]) -> tuple[float, float, float, float]:
    return tuple(c.evaluate(assignment) for c in a.c)
