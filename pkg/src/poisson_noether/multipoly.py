"""Sparse polynomials in x1..xn, y1..yn over cyclotomic fields.

Storage is a FLINT ``fmpq_mpoly`` in the 2n+1 generators
``x1..xn, y1..yn, z`` where ``z`` stands for zeta_m and is kept reduced modulo
Phi_m(z).  Polynomials whose coefficients are all rational never mention ``z``
and carry ``conductor == 1``.  Terms are ordered graded-lex with
``x1 > ... > xn > y1 > ... > yn``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import flint

from .coeff import MAX_CONDUCTOR, CycRat, cyclotomic_polynomial, euler_phi
from .errors import DivisionByZeroError, RankMismatchError, ResourceError, ZeroDenominatorError

__all__ = [
    "Poly",
    "VarIndex",
    "VarKind",
    "X",
    "Y",
    "partial_derivative",
    "poly_arith",
    "substitute",
]

Scalar = Union[int, Fraction, CycRat]


class VarKind(enum.Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True, order=True)
class VarIndex:
    kind: VarKind
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices are 1-based")

    def position(self, rank: int) -> int:
        """0-based position inside an exponent vector of length 2*rank."""
        if self.index > rank:
            raise RankMismatchError(f"{self} out of range for rank {rank}")
        return self.index - 1 if self.kind is VarKind.X else rank + self.index - 1

    @staticmethod
    def from_position(pos: int, rank: int) -> "VarIndex":
        return VarIndex(VarKind.X, pos + 1) if pos < rank else VarIndex(VarKind.Y, pos - rank + 1)

    def __str__(self):
        return f"{self.kind.value}{self.index}"


def X(i: int) -> VarIndex:
    return VarIndex(VarKind.X, i)


def Y(i: int) -> VarIndex:
    return VarIndex(VarKind.Y, i)


@lru_cache(maxsize=None)
def _ctx(rank: int) -> flint.fmpq_mpoly_ctx:
    names = tuple(f"x{i}" for i in range(1, rank + 1)) + tuple(f"y{i}" for i in range(1, rank + 1)) + ("z",)
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


@lru_cache(maxsize=None)
def _phi(rank: int, m: int):
    ctx = _ctx(rank)
    exps = {}
    for k, c in enumerate(cyclotomic_polynomial(m)):
        if c:
            exps[(0,) * (2 * rank) + (k,)] = c
    return ctx.from_dict(exps)


def _fmpq(c: Fraction) -> flint.fmpq:
    return flint.fmpq(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _lcm(a: int, b: int) -> int:
    m = a * b // math.gcd(a, b)
    if m > MAX_CONDUCTOR:
        raise ResourceError(f"conductor {m} exceeds bound {MAX_CONDUCTOR}")
    return m


def _gradlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial of a fixed rank n (2n variables)."""

    __slots__ = ("rank", "conductor", "_p")

    def __init__(self, rank: int, conductor: int, raw: flint.fmpq_mpoly):
        self.rank = rank
        self.conductor = conductor
        self._p = raw

    # -- construction ---------------------------------------------------------

    @classmethod
    def _wrap(cls, rank: int, m: int, raw) -> "Poly":
        if m > 1 and (raw.is_zero() or raw.degrees()[-1] == 0):
            m = 1
        return cls(rank, m, raw)

    @classmethod
    def zero(cls, rank: int) -> "Poly":
        return cls(rank, 1, _ctx(rank).from_dict({}))

    @classmethod
    def constant(cls, rank: int, c: Scalar) -> "Poly":
        return cls.from_terms(rank, {(0,) * (2 * rank): c})

    @classmethod
    def one(cls, rank: int) -> "Poly":
        return cls.constant(rank, 1)

    @classmethod
    def var(cls, rank: int, v: VarIndex) -> "Poly":
        exp = [0] * (2 * rank)
        exp[v.position(rank)] = 1
        return cls.from_terms(rank, {tuple(exp): 1})

    @classmethod
    def x(cls, rank: int, i: int) -> "Poly":
        return cls.var(rank, X(i))

    @classmethod
    def y(cls, rank: int, i: int) -> "Poly":
        return cls.var(rank, Y(i))

    @classmethod
    def from_terms(cls, rank: int, terms: Mapping[tuple[int, ...], Scalar]) -> "Poly":
        coeffs = {}
        m = 1
        for exp, c in terms.items():
            if len(exp) != 2 * rank:
                raise RankMismatchError(f"exponent {exp} does not match rank {rank}")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent in polynomial term")
            c = CycRat(c)
            if c.is_zero():
                continue
            coeffs[tuple(exp)] = coeffs.get(tuple(exp), CycRat(0)) + c
            m = _lcm(m, c.conductor)
        raw = {}
        for exp, c in coeffs.items():
            for k, v in enumerate(c.embed(m)):
                if v:
                    raw[exp + (k,)] = _fmpq(v)
        return cls._wrap(rank, m, _ctx(rank).from_dict(raw))

    # -- conversion -----------------------------------------------------------

    def terms(self) -> dict[tuple[int, ...], CycRat]:
        """Exponent vector -> nonzero coefficient."""
        if self.conductor == 1:
            return {tuple(map(int, exp[:-1])): CycRat(_frac(c)) for exp, c in self._p.terms()}
        phi = euler_phi(self.conductor)
        grouped: dict[tuple[int, ...], list] = {}
        for exp, c in self._p.terms():
            grouped.setdefault(tuple(map(int, exp[:-1])), [Fraction(0)] * phi)[int(exp[-1])] = _frac(c)
        out = {}
        for exp, coords in grouped.items():
            val = CycRat(conductor=self.conductor, coords=coords)
            if not val.is_zero():
                out[exp] = val
        return out

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CycRat]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms().items(), key=lambda t: _gradlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], CycRat]:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        if self.conductor == 1:
            exp = self._p.monoms()[0]
            return tuple(map(int, exp[:-1])), CycRat(_frac(self._p.leading_coefficient()))
        return self.sorted_terms()[0]

    def leading_coefficient(self) -> CycRat:
        return self.leading_term()[1]

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self.is_zero() or not any(self._p.degrees()[:-1])

    def constant_value(self) -> CycRat:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms().get((0,) * (2 * self.rank), CycRat(0))

    def is_rational(self) -> bool:
        return self.conductor == 1

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        if self.conductor == 1:
            return int(self._p.total_degree())
        return max(sum(e) for e in self.terms())

    def degree_in(self, v: VarIndex) -> int:
        if self.is_zero():
            return -1
        return int(self._p.degrees()[v.position(self.rank)])

    def variables(self) -> set[VarIndex]:
        degs = self._p.degrees()[:-1] if not self.is_zero() else ()
        return {VarIndex.from_position(i, self.rank) for i, d in enumerate(degs) if d > 0}

    def homogeneous_components(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for exp, c in self.terms().items():
            parts.setdefault(sum(exp), {})[exp] = c
        return {d: Poly.from_terms(self.rank, t) for d, t in parts.items()}

    def __len__(self):
        return len(self.terms()) if self.conductor > 1 else len(self._p)

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, m: int):
        """Raw flint polynomial representing self inside Q(zeta_m)."""
        if m == self.conductor:
            return self._p
        ctx = _ctx(self.rank)
        gens = ctx.gens()
        step = m // self.conductor
        raw = self._p.compose(*gens[:-1], gens[-1] ** step)
        return divmod(raw, _phi(self.rank, m))[1]

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.rank != self.rank:
                raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")
            return other
        if isinstance(other, (int, Fraction, CycRat)):
            return Poly.constant(self.rank, other)
        return None

    def _binary(self, other, fn, reduce_after: bool):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self.conductor if self.conductor == o.conductor else _lcm(self.conductor, o.conductor)
        raw = fn(self._lift(m), o._lift(m))
        if reduce_after and m > 1:
            raw = divmod(raw, _phi(self.rank, m))[1]
        return Poly._wrap(self.rank, m, raw)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b, False)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b, False)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a, False)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b, True)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(self.rank, self.conductor, -self._p)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        if self.conductor == 1:
            return Poly(self.rank, 1, self._p ** k)
        result, base = Poly.one(self.rank), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        return self * Poly.constant(self.rank, c)

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ArithmeticError if inexact."""
        o = self._coerce(other)
        if o.is_zero():
            raise DivisionByZeroError("polynomial division by zero")
        if o.is_constant():
            return self.scale(o.constant_value().inverse())
        if self.conductor == 1 and o.conductor == 1:
            try:
                return Poly(self.rank, 1, self._p / o._p)
            except Exception as exc:  # flint raises DomainError
                raise ArithmeticError(f"inexact division: {exc}") from None
        raise NotImplementedError("exact division by a non-constant polynomial needs rational coefficients")

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd; only defined for rational coefficients."""
        if self.conductor != 1 or other.conductor != 1:
            raise NotImplementedError("gcd is only implemented over Q")
        return Poly(self.rank, 1, self._p.gcd(other._p))

    def diff(self, v: VarIndex) -> "Poly":
        return Poly._wrap(self.rank, self.conductor, self._p.derivative(v.position(self.rank)))

    def linear_substitute(self, images: list["Poly"]) -> "Poly":
        """Replace the k-th variable (x1..xn, y1..yn order) by ``images[k]``."""
        if len(images) != 2 * self.rank:
            raise RankMismatchError("need one image per variable")
        target = images[0].rank
        m = self.conductor
        for img in images:
            if img.rank != target:
                raise RankMismatchError("images of mixed rank")
            m = _lcm(m, img.conductor)
        ctx = _ctx(target)
        z = ctx.gens()[-1]
        src = self._lift(m)
        raw = src.compose(*(img._lift(m) for img in images), z, ctx=ctx)
        if m > 1:
            raw = divmod(raw, _phi(target, m))[1]
        return Poly._wrap(target, m, raw)

    def rename(self, rank: int, mapping: Mapping[int, int]) -> "Poly":
        """Move pair i to pair mapping[i] inside a polynomial ring of ``rank``."""
        images = []
        for kind in (X, Y):
            for i in range(1, self.rank + 1):
                images.append(Poly.var(rank, kind(mapping.get(i, i))))
        return self.linear_substitute(images)

    def evaluate(self, point) -> CycRat:
        """Value at ``point`` (2n scalars in x1..xn, y1..yn order)."""
        if len(point) != 2 * self.rank:
            raise RankMismatchError("point has wrong length")
        vals = [CycRat(v) for v in point]
        if all(v.is_rational() for v in vals):
            qs = [_fmpq(v.to_fraction()) for v in vals]
            if self.conductor == 1:
                return CycRat(_frac(self._p(*qs, flint.fmpq(0))))
            names = _ctx(self.rank).names()[:-1]
            zpoly = self._p.subs(dict(zip(names, qs)))
            coords = [Fraction(0)] * euler_phi(self.conductor)
            for exp, c in zpoly.terms():
                coords[exp[-1]] += _frac(c)
            return CycRat(conductor=self.conductor, coords=coords)
        total = CycRat(0)
        for exp, c in self.terms().items():
            term = c
            for v, e in zip(vals, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except RankMismatchError:
            return False
        if o is None:
            return NotImplemented
        if self.conductor == o.conductor:
            return self._p == o._p
        m = _lcm(self.conductor, o.conductor)
        return self._lift(m) == o._lift(m)

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms().items())))

    # -- text -----------------------------------------------------------------

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                str(VarIndex.from_position(i, self.rank)) + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e
            )
            ctext = c.to_text()
            if c.needs_parens():
                ctext = f"({ctext})"
            if not mono:
                term = ctext
            elif c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = f"{ctext}*{mono}"
            if not pieces:
                pieces.append(term)
            elif term.startswith("-"):
                pieces.append(" - " + term[1:])
            else:
                pieces.append(" + " + term)
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Poly({self.to_text()!r}, rank={self.rank})"


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if p.rank != q.rank:
        raise RankMismatchError(f"rank {p.rank} vs rank {q.rank}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def partial_derivative(p: Poly, v: VarIndex) -> Poly:
    return p.diff(v)


def substitute(p: Poly, assignment: Mapping[VarIndex, object]):
    """Compose ``p`` with rational functions, returning a ``RatFn``.

    Each value may be a ``RatFn``, ``Poly`` or scalar; all non-scalar values
    must share one rank, which becomes the rank of the result.
    """
    from .ratfunc import RatFn

    used = p.variables()
    missing = used - set(assignment)
    if missing:
        raise ValueError(f"assignment missing {sorted(str(v) for v in missing)}")
    target = None
    for v in used:
        val = assignment[v]
        if isinstance(val, (Poly, RatFn)):
            if target is not None and val.rank != target:
                raise RankMismatchError("assignment values of mixed rank")
            target = val.rank
    if target is None:
        target = next((val.rank for val in assignment.values() if isinstance(val, (Poly, RatFn))), p.rank)

    nums: dict[int, Poly] = {}
    dens: dict[int, Poly] = {}
    for v in used:
        val = RatFn.coerce(assignment[v], target)
        pos = v.position(p.rank)
        nums[pos], dens[pos] = val.num, val.den

    degs = [int(d) for d in p._p.degrees()[:-1]] if not p.is_zero() else []
    power_cache: dict[tuple[str, int, int], Poly] = {}

    def power(which: str, pos: int, e: int) -> Poly:
        key = (which, pos, e)
        if key not in power_cache:
            base = nums[pos] if which == "n" else dens[pos]
            power_cache[key] = base ** e
        return power_cache[key]

    numerator = Poly.zero(target)
    for exp, c in p.terms().items():
        term = Poly.constant(target, c)
        for pos, e in enumerate(exp):
            d = degs[pos]
            if d == 0:
                continue
            if e:
                term = term * power("n", pos, e)
            if d - e and not dens[pos] == 1:
                term = term * power("d", pos, d - e)
        numerator = numerator + term
    denominator = Poly.one(target)
    for pos, d in enumerate(degs):
        if d and not dens[pos] == 1:
            denominator = denominator * power("d", pos, d)
    if denominator.is_zero():
        raise ZeroDenominatorError("substitution produced a zero denominator")
    return RatFn(numerator, denominator)
