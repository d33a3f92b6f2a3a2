"""Fundamental invariants of reflection groups and their Jacobian data.

For a reflection group acting diagonally, the invariant polynomials in the
y-variables form a polynomial ring on n homogeneous generators.  This module
builds those generators for the symmetric group and the monomial family
G(m, p, n), computes the Jacobian determinant J of the generators, the
smallest power of J that is invariant, rewrites invariant polynomials in terms
of the generators, and certifies algebraic independence of rational functions
by exact evaluation of their Jacobian at a random rational point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod
from typing import Sequence

from .coeff import CycRat
from .errors import (
    InvariantSystemError,
    NotInInvariantRingError,
    RankMismatchError,
    ZeroDenominatorError,
)
from .group import GroupAction, act, expected_order, is_invariant
from .linalg import bareiss_det, scalar_det, solve_linear
from .multipoly import Poly, VarIndex, VarKind, X, Y, substitute
from .ratfunc import RatFn

__all__ = [
    "INCONCLUSIVE",
    "INDEPENDENT",
    "IndependenceWitness",
    "InvariantSystem",
    "JacobianData",
    "elementary_symmetric",
    "express_in_invariants",
    "fundamental_invariants",
    "independence_certificate",
    "jacobian",
    "jacobian_at",
    "classical_sigma_exponent",
    "recheck_witness",
]

INDEPENDENT = "INDEPENDENT"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class InvariantSystem:
    action: GroupAction
    invs: tuple[Poly, ...]
    degrees: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.action.rank

    def to_json(self) -> dict:
        return {
            "group": self.action.to_json(),
            "invariants": [e.to_text() for e in self.invs],
            "degrees": list(self.degrees),
        }


@dataclass(frozen=True)
class JacobianData:
    """M[i][j] = d e_j / d y_i, J = det_sign * det M, plus the invariant powers of J.

    ``det_sign`` is chosen so that J has a positive graded-lex leading
    coefficient whenever that coefficient is rational.
    """

    M: tuple[tuple[Poly, ...], ...]
    J: Poly
    det_sign: int
    sigma_exponent: int
    sigma_min_exponent: int
    character: tuple[CycRat, ...] = field(default=())

    @property
    def det(self) -> Poly:
        return self.J if self.det_sign == 1 else -self.J

    def to_json(self) -> dict:
        return {
            "M": [[e.to_text() for e in row] for row in self.M],
            "J": self.J.to_text(),
            "det_sign": self.det_sign,
            "sigma_exponent": self.sigma_exponent,
            "sigma_min_exponent": self.sigma_min_exponent,
            "character": [c.to_text() for c in self.character],
        }


def elementary_symmetric(values: Sequence[Poly]) -> list[Poly]:
    """e_1..e_k of the given polynomials, from the product of (1 + a t)."""
    rank = values[0].rank
    e = [Poly.one(rank)] + [Poly.zero(rank)] * len(values)
    for a in values:
        for k in range(len(values), 0, -1):
            e[k] = e[k] + e[k - 1] * a
    return e[1:]


def _catalog_invariants(action: GroupAction) -> list[Poly]:
    fam = action.family
    n = action.rank
    ys = [Poly.y(n, i) for i in range(1, n + 1)]
    kind = fam[0] if fam else None
    if kind == "trivial":
        return ys
    if kind == "S":
        return elementary_symmetric(ys)
    if kind == "G":
        m, p, _ = fam[1:]
        powers = [y ** m for y in ys]
        head = elementary_symmetric(powers)[: n - 1]
        return head + [prod(ys[1:], start=ys[0]) ** (m // p)]
    raise InvariantSystemError(
        f"no built-in invariants for {action.name or 'this group'}; pass custom invariants"
    )


def _is_catalog(action: GroupAction) -> bool:
    return bool(action.family) and action.family[0] in ("trivial", "S", "G")


def fundamental_invariants(action: GroupAction, custom: Sequence[Poly] | None = None) -> InvariantSystem:
    """Basic invariants of a catalog reflection group, or validate a custom list."""
    invs = list(custom) if custom is not None else _catalog_invariants(action)
    n = action.rank
    if len(invs) != n:
        raise InvariantSystemError(f"need {n} invariants, got {len(invs)}")
    degrees = []
    for j, e in enumerate(invs, 1):
        if e.rank != n:
            raise RankMismatchError(f"invariant {j} has rank {e.rank}, expected {n}")
        if e.is_zero() or any(v.kind is VarKind.X for v in e.variables()):
            raise InvariantSystemError(f"invariant {j} must be a nonzero polynomial in y only")
        if len(e.homogeneous_components()) != 1:
            raise InvariantSystemError(f"invariant {j} is not homogeneous")
        if not is_invariant(e, action):
            raise InvariantSystemError(f"invariant {j} ({e}) is not invariant under {action.name}")
        degrees.append(e.total_degree())
    sys = InvariantSystem(action, tuple(invs), tuple(degrees))
    jacobian(sys)
    if _is_catalog(action):
        expected = expected_order(action.family)
        if prod(degrees) != action.order or expected != action.order:
            raise InvariantSystemError(
                f"degree product {prod(degrees)} does not match group order {action.order}"
            )
    return sys


def classical_sigma_exponent(action: GroupAction) -> int:
    """2 for symmetric groups, |G| otherwise."""
    if action.family and action.family[0] == "S":
        return 2
    return action.order


def _character_value(g, poly: Poly, action: GroupAction) -> CycRat | None:
    image = act(g, poly, action)
    c = image.leading_coefficient() / poly.leading_coefficient()
    return c if image == poly.scale(c) else None


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def _min_invariant_power(J: Poly, action: GroupAction) -> tuple[int, tuple[CycRat, ...]]:
    chars = [_character_value(g, J, action) for g in action.generators]
    if all(c is not None for c in chars):
        orders = [c.multiplicative_order(action.order) for c in chars]
        if all(o is not None for o in orders):
            return lcm(*orders), tuple(chars)
    # not a semi-invariant: search the divisors of |G|
    for k in _divisors(action.order):
        if is_invariant(J ** k, action):
            return k, ()
    raise InvariantSystemError("no power of J up to |G| is invariant")


def jacobian(sys: InvariantSystem) -> JacobianData:
    n = sys.rank
    M = tuple(tuple(e.diff(Y(i)) for e in sys.invs) for i in range(1, n + 1))
    det = bareiss_det(M)
    if det.is_zero():
        raise InvariantSystemError("Jacobian determinant vanishes: invariants are dependent")
    lc = det.leading_coefficient()
    sign = -1 if lc.is_rational() and lc.to_fraction() < 0 else 1
    J = det if sign == 1 else -det
    k, chars = _min_invariant_power(J, sys.action)
    return JacobianData(M, J, sign, classical_sigma_exponent(sys.action), k, chars)


def _exponent_vectors(degrees: Sequence[int], target: int):
    def rec(j: int, left: int):
        if j == len(degrees):
            if left == 0:
                yield ()
            return
        for a in range(left // degrees[j] + 1):
            for rest in rec(j + 1, left - a * degrees[j]):
                yield (a,) + rest

    yield from rec(0, target)


def express_in_invariants(f: Poly, sys: InvariantSystem) -> Poly:
    """P with P(e_1, ..., e_n) = f, where y_j in P stands for e_j.

    Each homogeneous piece of f is matched against all products of the e_j of
    the same weighted degree by an exact linear solve.
    """
    n = sys.rank
    if f.rank != n:
        raise RankMismatchError(f"rank {f.rank} vs rank {n}")
    if any(v.kind is VarKind.X for v in f.variables()):
        raise NotInInvariantRingError("input depends on x-variables")
    powers: dict[tuple[int, int], Poly] = {}

    def e_pow(j: int, a: int) -> Poly:
        if (j, a) not in powers:
            powers[(j, a)] = Poly.one(n) if a == 0 else e_pow(j, a - 1) * sys.invs[j]
        return powers[(j, a)]

    result_terms: dict[tuple[int, ...], CycRat] = {}
    for d, piece in sorted(f.homogeneous_components().items()):
        alphas = list(_exponent_vectors(sys.degrees, d))
        expansions = []
        for alpha in alphas:
            term = Poly.one(n)
            for j, a in enumerate(alpha):
                if a:
                    term = term * e_pow(j, a)
            expansions.append(term.terms())
        target = piece.terms()
        monos = sorted(set(target).union(*[set(t) for t in expansions]))
        if not alphas:
            raise NotInInvariantRingError(f"no invariant monomials of degree {d}")
        rows = [[t.get(mono, CycRat(0)) for t in expansions] for mono in monos]
        rhs = [target.get(mono, CycRat(0)) for mono in monos]
        sol = solve_linear(rows, rhs)
        if sol is None:
            raise NotInInvariantRingError(f"degree-{d} part is not a polynomial in the invariants")
        for alpha, c in zip(alphas, sol):
            if not c.is_zero():
                result_terms[tuple([0] * n) + alpha] = c
    P = Poly.from_terms(n, result_terms)
    back = substitute(P, {Y(j + 1): RatFn(e) for j, e in enumerate(sys.invs)})
    if not back == RatFn(f):
        raise NotInInvariantRingError("substituting the invariants back does not reproduce the input")
    return P


# -- algebraic independence ---------------------------------------------------


@dataclass(frozen=True)
class IndependenceWitness:
    status: str
    point: tuple[Fraction, ...]
    determinant: CycRat
    attempts: int
    seed: int

    @property
    def ok(self) -> bool:
        return self.status == INDEPENDENT

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "point": [str(p) for p in self.point],
            "determinant": self.determinant.to_text(),
            "attempts": self.attempts,
            "seed": self.seed,
        }


def _variables(rank: int) -> list[VarIndex]:
    return [X(i) for i in range(1, rank + 1)] + [Y(i) for i in range(1, rank + 1)]


def jacobian_at(fns: Sequence[RatFn], point: Sequence) -> list[list[CycRat]]:
    """Exact value of (d f_a / d z_b) at ``point``; raises ZeroDenominatorError on a pole."""
    rank = fns[0].rank
    rows = []
    for f in fns:
        f = RatFn.coerce(f, rank)
        dval = f.den.evaluate(point)
        if dval.is_zero():
            raise ZeroDenominatorError("denominator vanishes at the evaluation point")
        nval = f.num.evaluate(point)
        row = []
        for v in _variables(rank):
            dn = f.num.diff(v).evaluate(point)
            dd = f.den.diff(v)
            val = dn * dval if dd.is_zero() else dn * dval - nval * dd.evaluate(point)
            row.append(val / (dval * dval))
        rows.append(row)
    return rows


def independence_certificate(fns: Sequence, seed: int = 0, retries: int = 32, span: int = 1000) -> IndependenceWitness:
    """Look for a rational point where the 2n x 2n Jacobian of ``fns`` is invertible."""
    if not fns:
        raise ValueError("need at least one function")
    rank = fns[0].rank
    fns = [RatFn.coerce(f, rank) for f in fns]
    if len(fns) != 2 * rank:
        raise RankMismatchError(f"need {2 * rank} functions for rank {rank}, got {len(fns)}")
    rng = random.Random(seed)
    point: tuple[Fraction, ...] = ()
    for attempt in range(1, retries + 1):
        point = tuple(Fraction(rng.randint(-span, span)) for _ in range(2 * rank))
        try:
            det = scalar_det(jacobian_at(fns, point))
        except ZeroDenominatorError:
            continue
        if not det.is_zero():
            return IndependenceWitness(INDEPENDENT, point, det, attempt, seed)
    return IndependenceWitness(INCONCLUSIVE, point, CycRat(0), retries, seed)


def recheck_witness(fns: Sequence, witness: IndependenceWitness) -> bool:
    """Recompute the determinant at the recorded point; True iff it matches and is nonzero."""
    if witness.status != INDEPENDENT:
        return False
    try:
        det = scalar_det(jacobian_at(list(fns), witness.point))
    except ZeroDenominatorError:
        return False
    return not det.is_zero() and det == witness.determinant
