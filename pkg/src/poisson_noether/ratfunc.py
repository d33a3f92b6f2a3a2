"""Rational functions in x1..xn, y1..yn: the field K_n.

Every ``RatFn`` keeps its denominator normalised to graded-lex leading
coefficient 1.  When reduction is enabled (the default) and both parts have
rational coefficients, numerator and denominator are also made coprime with a
multivariate gcd.  Equality never depends on reduction: it is decided by
cross-multiplication.
"""

from __future__ import annotations

import contextlib
from contextvars import ContextVar
from fractions import Fraction
from typing import Mapping

from .coeff import CycRat
from .errors import DivisionByZeroError, RankMismatchError, ZeroDenominatorError
from .multipoly import Poly, VarIndex, substitute

__all__ = [
    "RatFn",
    "ratfn_arith",
    "ratfn_equal",
    "ratfn_partial",
    "reduction",
    "reduction_enabled",
]

_REDUCE: ContextVar[bool] = ContextVar("poisson_noether_reduce", default=True)


def reduction_enabled() -> bool:
    return _REDUCE.get()


@contextlib.contextmanager
def reduction(enabled: bool):
    """Temporarily switch gcd reduction of rational functions on or off."""
    token = _REDUCE.set(enabled)
    try:
        yield
    finally:
        _REDUCE.reset(token)


def _cancel(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_rational() and den.is_rational() and not den.is_constant():
        g = num.gcd(den)
        if not g == 1:
            return num.exact_div(g), den.exact_div(g)
    return num, den


class RatFn:
    """Quotient ``num / den`` of two polynomials of the same rank."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduce: bool | None = None):
        if den is None:
            den = Poly.one(num.rank)
        if num.rank != den.rank:
            raise RankMismatchError(f"numerator rank {num.rank} vs denominator rank {den.rank}")
        if den.is_zero():
            raise DivisionByZeroError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.one(num.rank)
        else:
            if _REDUCE.get() if reduce is None else reduce:
                num, den = _cancel(num, den)
            lc = den.leading_coefficient()
            if lc != 1:
                inv = lc.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    # -- construction ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.num.rank

    @classmethod
    def coerce(cls, value, rank: int) -> "RatFn":
        if isinstance(value, RatFn):
            if value.rank != rank:
                raise RankMismatchError(f"rank {value.rank} vs rank {rank}")
            return value
        if isinstance(value, Poly):
            if value.rank != rank:
                raise RankMismatchError(f"rank {value.rank} vs rank {rank}")
            return cls(value)
        if isinstance(value, (int, Fraction, CycRat)):
            return cls(Poly.constant(rank, value))
        raise TypeError(f"cannot interpret {type(value).__name__} as a rational function")

    @classmethod
    def constant(cls, rank: int, c) -> "RatFn":
        return cls(Poly.constant(rank, c))

    @classmethod
    def var(cls, rank: int, v: VarIndex) -> "RatFn":
        return cls(Poly.var(rank, v))

    @classmethod
    def x(cls, rank: int, i: int) -> "RatFn":
        return cls(Poly.x(rank, i))

    @classmethod
    def y(cls, rank: int, i: int) -> "RatFn":
        return cls(Poly.y(rank, i))

    def reduced(self) -> "RatFn":
        """Fully gcd-reduced copy, regardless of the current reduction setting."""
        return RatFn(self.num, self.den, reduce=True)

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        r = self.reduced()
        return r.num.is_constant() and r.den.is_constant()

    def constant_value(self) -> CycRat:
        r = self.reduced()
        if not (r.num.is_constant() and r.den.is_constant()):
            raise ValueError(f"{self} is not constant")
        return r.num.constant_value() / r.den.constant_value()

    def is_rational(self) -> bool:
        return self.num.is_rational() and self.den.is_rational()

    def variables(self) -> set[VarIndex]:
        return self.num.variables() | self.den.variables()

    # -- arithmetic -----------------------------------------------------------

    def _other(self, other) -> "RatFn | None":
        if isinstance(other, (RatFn, Poly, int, Fraction, CycRat)):
            return RatFn.coerce(other, self.rank)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        if _REDUCE.get() and self.den.is_rational() and o.den.is_rational():
            g = self.den.gcd(o.den)
            a, b = self.den.exact_div(g), o.den.exact_div(g)
            return RatFn(self.num * b + o.num * a, self.den * b)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if _REDUCE.get() and self.is_rational() and o.is_rational():
            n1, d2 = _cancel(self.num, o.den)
            n2, d1 = _cancel(o.num, self.den)
            return RatFn(n1 * n2, d1 * d2, reduce=False)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise DivisionByZeroError("inverse of the zero rational function")
        return RatFn(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        return RatFn(base.num ** abs(k), base.den ** abs(k), reduce=False)

    def partial(self, v: VarIndex) -> "RatFn":
        dn, dd = self.num.diff(v), self.den.diff(v)
        if dd.is_zero():
            return RatFn(dn, self.den)
        return RatFn(self.den * dn - self.num * dd, self.den * self.den)

    def scale(self, c) -> "RatFn":
        return RatFn(self.num.scale(c), self.den, reduce=False)

    # -- substitution / evaluation -------------------------------------------

    def substitute(self, assignment: Mapping[VarIndex, object]) -> "RatFn":
        num = substitute(self.num, assignment)
        den = substitute(self.den, assignment)
        if den.is_zero():
            raise ZeroDenominatorError(f"denominator {self.den} vanishes under substitution")
        return num / den

    def linear_substitute(self, images: list[Poly]) -> "RatFn":
        num = self.num.linear_substitute(images)
        den = self.den.linear_substitute(images)
        if den.is_zero():
            raise ZeroDenominatorError("linear substitution killed the denominator")
        return RatFn(num, den)

    def rename(self, rank: int, mapping: Mapping[int, int]) -> "RatFn":
        return RatFn(self.num.rename(rank, mapping), self.den.rename(rank, mapping), reduce=False)

    def evaluate(self, point) -> CycRat:
        d = self.den.evaluate(point)
        if d.is_zero():
            raise ZeroDenominatorError("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        try:
            o = self._other(other)
        except RankMismatchError:
            return False
        if o is None:
            return NotImplemented
        return ratfn_equal(self, o)

    __hash__ = None

    # -- text -----------------------------------------------------------------

    def to_text(self) -> str:
        if self.den == 1:
            return self.num.to_text()
        num = self.num.to_text()
        if len(self.num.terms()) > 1 or any(c.needs_parens() for c in self.num.terms().values()):
            num = f"({num})"
        return f"{num} / ({self.den.to_text()})"

    def to_json(self) -> dict:
        return {"num": self.num.to_text(), "den": self.den.to_text()}

    @classmethod
    def from_json(cls, data: Mapping[str, str], rank: int) -> "RatFn":
        from .expr import parse_ratfn

        num = parse_ratfn(data["num"], rank)
        den = parse_ratfn(data["den"], rank)
        return num / den

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RatFn({self.to_text()!r}, rank={self.rank})"


def ratfn_arith(f: RatFn, g: RatFn, op: str) -> RatFn:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown rational-function operation {op!r}")


def ratfn_equal(f: RatFn, g: RatFn) -> bool:
    """Exact equality in K_n by cross-multiplication."""
    if f.rank != g.rank:
        raise RankMismatchError(f"rank {f.rank} vs rank {g.rank}")
    if f.num == g.num and f.den == g.den:
        return True
    return f.num * g.den == g.num * f.den


def ratfn_partial(f: RatFn, v: VarIndex) -> RatFn:
    return f.partial(v)
