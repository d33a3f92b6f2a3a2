"""Invariant Darboux coordinates: construction and certification.

Given basic invariants e_1..e_n of a diagonally acting reflection group, the
functions y'_i = e_i and x'_i = sum_j (M^-1)_ij x_j, with M_ij = d e_j / d y_i,
are invariant and satisfy the canonical bracket relations.  The same recipe,
applied to a rank-one invariant pair (u, v) in place of (x, y), handles
wreath products.  Every construction returns a ``NoetherSolution`` whose
report records the full bracket table, invariance under each group generator
and an algebraic-independence witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coeff import CycRat
from .errors import PresentationError, RankMismatchError, VerificationError
from .group import (
    BD_CONVENTION_CACHE,
    ActionMode,
    BDConvention,
    GroupAction,
    LinMat,
    act,
    bd_candidate_conventions,
    binary_dihedral,
    close_group,
    cyclic_sl2,
    product_action,
    symmetric_group,
    trivial_group,
    wreath_product,
)
from .invariants import (
    IndependenceWitness,
    InvariantSystem,
    JacobianData,
    fundamental_invariants,
    independence_certificate,
    jacobian,
)
from .linalg import adjugate
from .multipoly import Poly, Y, substitute
from .poisson import bracket
from .ratfunc import RatFn

__all__ = [
    "BracketEntry",
    "DarbouxPair",
    "NoetherSolution",
    "PresentationResult",
    "VerificationReport",
    "bd_pair",
    "construct",
    "darboux_primes",
    "generator_names",
    "presentation_search",
    "product_decompose",
    "sl2_block",
    "verify_generators",
    "wreath_compose",
]

ORIENTATION_NOTE = (
    "x'_i uses row i of M^-1 (adj(M)/det M) so that {x'_i, e_j} = (M^-1 M)_ij; "
    "solving M L_i = Y_i literally gives (M^T L_i)_j instead"
)
GENERATION_STATUS = "UNVERIFIED"


def generator_names(rank: int) -> list[str]:
    return [f"x'{i}" for i in range(1, rank + 1)] + [f"y'{i}" for i in range(1, rank + 1)]


def canonical_value(a: int, b: int, rank: int) -> int:
    """{z_a, z_b} for the ordering (x1..xn, y1..yn)."""
    if a < rank and b == a + rank:
        return 1
    if b < rank and a == b + rank:
        return -1
    return 0


@dataclass(frozen=True)
class BracketEntry:
    row: int
    col: int
    value: RatFn
    expected: int

    @property
    def passed(self) -> bool:
        return self.value == self.expected

    def to_json(self) -> dict:
        return {
            "row": self.row,
            "col": self.col,
            "value": self.value.to_json(),
            "expected": self.expected,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    bracket_table: list[list[BracketEntry]]
    invariance_flags: list[list[bool]]
    independence: IndependenceWitness | None
    conventions: dict = field(default_factory=dict)
    discrepancies: list[str] = field(default_factory=list)
    generation: str = GENERATION_STATUS

    @property
    def brackets_ok(self) -> bool:
        return all(e.passed for row in self.bracket_table for e in row)

    @property
    def invariance_ok(self) -> bool:
        return all(all(flags) for flags in self.invariance_flags)

    @property
    def ok(self) -> bool:
        return (
            self.brackets_ok
            and self.invariance_ok
            and self.independence is not None
            and self.independence.ok
        )

    def failures(self) -> list[str]:
        rank = len(self.invariance_flags) // 2
        names = generator_names(rank)
        out = []
        for row in self.bracket_table:
            for e in row:
                if not e.passed:
                    out.append(f"bracket[{names[e.row]}, {names[e.col]}]")
        for name, flags in zip(names, self.invariance_flags):
            for k, ok in enumerate(flags, 1):
                if not ok:
                    out.append(f"invariance[{name}, g{k}]")
        if self.independence is None or not self.independence.ok:
            out.append("independence")
        return out

    def to_json(self) -> dict:
        return {
            "bracket_table": [[e.to_json() for e in row] for row in self.bracket_table],
            "invariance_flags": [list(f) for f in self.invariance_flags],
            "independence": self.independence.to_json() if self.independence else None,
            "conventions": self.conventions,
            "discrepancies": list(self.discrepancies),
            "generation": self.generation,
        }


@dataclass
class NoetherSolution:
    action: GroupAction
    xprime: list[RatFn]
    yprime: list[RatFn]
    report: VerificationReport

    @property
    def rank(self) -> int:
        return self.action.rank

    @property
    def generators(self) -> list[RatFn]:
        return list(self.xprime) + list(self.yprime)


@dataclass(frozen=True)
class DarbouxPair:
    """An invariant pair (u, v) with {u, v} = 1 for a rank-one symplectic group."""

    u: RatFn
    v: RatFn
    action: GroupAction
    conventions: dict = field(default_factory=dict, compare=False, hash=False)


# -- verification ---------------------------------------------------------------


def _bracket_table(gens: Sequence[RatFn], rank: int, strict: bool) -> list[list[BracketEntry]]:
    names = generator_names(rank)
    size = 2 * rank
    table: list[list[BracketEntry | None]] = [[None] * size for _ in range(size)]
    for a in range(size):
        for b in range(a, size):
            value = bracket(gens[a], gens[b])
            entry = BracketEntry(a, b, value, canonical_value(a, b, rank))
            if strict and not entry.passed:
                raise VerificationError(
                    f"bracket {{{names[a]}, {names[b]}}} = {value} (expected {entry.expected})",
                    f"bracket[{names[a]}, {names[b]}]",
                )
            table[a][b] = entry
            if a != b:
                table[b][a] = BracketEntry(b, a, -value, canonical_value(b, a, rank))
    return table


def _invariance(gens: Sequence[RatFn], action: GroupAction, strict: bool) -> list[list[bool]]:
    names = generator_names(action.rank)
    flags = []
    for name, f in zip(names, gens):
        row = []
        for k, g in enumerate(action.generators, 1):
            ok = act(g, f, action) == f
            if strict and not ok:
                raise VerificationError(f"{name} is not invariant under generator {k}", f"invariance[{name}, g{k}]")
            row.append(ok)
        flags.append(row)
    return flags


def verify_generators(
    xprime: Sequence[RatFn],
    yprime: Sequence[RatFn],
    action: GroupAction,
    *,
    seed: int = 0,
    strict: bool = True,
) -> VerificationReport:
    """Bracket table first, then invariance, then independence.

    With ``strict`` the first failure raises ``VerificationError``; otherwise
    the report collects every outcome.
    """
    rank = action.rank
    if len(xprime) != rank or len(yprime) != rank:
        raise RankMismatchError(f"need {rank} x' and {rank} y' generators")
    gens = [RatFn.coerce(f, rank) for f in list(xprime) + list(yprime)]
    table = _bracket_table(gens, rank, strict)
    flags = _invariance(gens, action, strict)
    witness = independence_certificate(gens, seed=seed)
    if strict and not witness.ok:
        raise VerificationError("no independence witness found within the retry budget", "independence")
    return VerificationReport(table, flags, witness)


def _max_conductor(fns: Sequence[RatFn], action: GroupAction) -> int:
    m = 1
    for f in fns:
        m = max(m, f.num.conductor, f.den.conductor)
    for g in action.generators:
        for row in g.entries:
            for c in row:
                m = max(m, c.conductor)
    return m


def _base_conventions(action: GroupAction, gens: Sequence[RatFn]) -> dict:
    return {
        "group": action.name,
        "action_mode": action.mode.value,
        "generator_matrices": [g.to_json() for g in action.generators],
        "zeta_conductor": _max_conductor(gens, action),
        "variable_order": "x1..xn, y1..yn",
        "action": "(g.f)(z) = f(S^-1 z) with S the 2n x 2n matrix of g",
    }


# -- reflection groups ----------------------------------------------------------


def _xprime_from_adjugate(adj, det: Poly, rank: int) -> list[RatFn]:
    out = []
    for i in range(rank):
        num = Poly.zero(rank)
        for j in range(rank):
            if not adj[i][j].is_zero():
                num = num + adj[i][j] * Poly.x(rank, j + 1)
        out.append(RatFn(num, det))
    return out


def darboux_primes(
    sys: InvariantSystem, jd: JacobianData | None = None, *, seed: int = 0, verify: bool = True
) -> NoetherSolution:
    """y'_i = e_i and x'_i = sum_j (M^-1)_ij x_j, certified."""
    jd = jd or jacobian(sys)
    rank = sys.rank
    adj = adjugate(jd.M)
    xprime = _xprime_from_adjugate(adj, jd.det, rank)
    yprime = [RatFn(e) for e in sys.invs]
    if verify:
        report = verify_generators(xprime, yprime, sys.action, seed=seed)
    else:
        report = VerificationReport([], [], None)
    report.conventions.update(_base_conventions(sys.action, xprime + yprime))
    report.conventions.update(
        {
            "invariants": [e.to_text() for e in sys.invs],
            "degrees": list(sys.degrees),
            "J": jd.J.to_text(),
            "J_sign": "J = det M * %d (graded-lex leading coefficient made positive)" % jd.det_sign,
            "sigma_exponent": jd.sigma_exponent,
            "sigma_min_exponent": jd.sigma_min_exponent,
            "orientation": ORIENTATION_NOTE,
        }
    )
    report.discrepancies.append("orientation: coefficient rows of x' are rows of M^-1, not solutions of M L_i = Y_i")
    return NoetherSolution(sys.action, xprime, yprime, report)


# -- rank-one blocks ------------------------------------------------------------


def bd_pair(n: int) -> tuple[RatFn, RatFn]:
    """The rank-one binary dihedral pair, written with r = y1/x1 and w = r^n."""
    x, y = RatFn.x(1, 1), RatFn.y(1, 1)
    w = (y / x) ** n
    v = ((w + 1) / (w - 1)) ** 2
    u = (w.inverse() - w) * ((w - 1) / (w + 1)) ** 2 * x * y
    return u.scale(CycRat(1) / (8 * n)), v


@dataclass
class PresentationResult:
    n: int
    passing: list[BDConvention]
    failures: dict[BDConvention, str]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "passing": [c.to_json() for c in self.passing],
            "failures": [{"convention": c.to_json(), "reason": r} for c, r in self.failures.items()],
        }


def presentation_search(n: int, u: RatFn | None = None, v: RatFn | None = None) -> PresentationResult:
    """Try each standard SL_2 presentation of the binary dihedral group.

    When the built-in pair is used, the first passing convention is stored
    in ``BD_CONVENTION_CACHE`` so later catalog lookups reuse it.
    """
    if n < 1:
        raise ValueError("binary dihedral parameter must be >= 1")
    default = u is None and v is None
    du, dv = bd_pair(n)
    u = du if u is None else u
    v = dv if v is None else v
    passing, failures = [], {}
    for conv in bd_candidate_conventions(n):
        action = close_group(conv.generators(), ActionMode.SYMPLECTIC_2N, name=f"BD(n={n})", family=("BD", n))
        reasons = []
        for label, f in (("u", u), ("v", v)):
            for k, g in enumerate(action.generators, 1):
                if not act(g, f, action) == f:
                    reasons.append(f"{label} not invariant under generator {k}")
        if action.order != 4 * n:
            reasons.append(f"group order {action.order} != {4 * n}")
        if reasons:
            failures[conv] = "; ".join(reasons)
        else:
            passing.append(conv)
    if default and passing:
        BD_CONVENTION_CACHE.setdefault(n, passing[0])
    return PresentationResult(n, passing, failures)


def sl2_block(kind: str, param: int) -> DarbouxPair:
    """Invariant rank-one pair for ``kind`` in {"cyclic", "binary_dihedral", "trivial"}."""
    x, y = RatFn.x(1, 1), RatFn.y(1, 1)
    conventions: dict = {}
    if kind == "trivial":
        action = _trivial_block()
        u, v = x, y
    elif kind == "cyclic":
        if param < 1:
            raise ValueError("cyclic order must be >= 1")
        action = cyclic_sl2(param)
        u = x ** param
        v = (x ** (1 - param) * y).scale(CycRat(1) / param)
    elif kind == "binary_dihedral":
        result = presentation_search(param)
        if not result.passing:
            raise PresentationError(
                f"no presentation makes the BD({param}) pair invariant: "
                + "; ".join(f"{c.describe()}: {r}" for c, r in result.failures.items())
            )
        conv = BD_CONVENTION_CACHE.get(param, result.passing[0])
        action = binary_dihedral(param, conv)
        u, v = bd_pair(param)
        conventions["presentation"] = conv.to_json()
        conventions["passing_presentations"] = [c.to_json() for c in result.passing]
        c = bracket(u, v)
        if not c.is_constant() or c.is_zero():
            raise PresentationError(f"{{u, v}} = {c} is not a nonzero constant")
        value = c.constant_value()
        conventions["raw_bracket"] = value.to_text()
        if value != 1:
            u = u.scale(value.inverse())
            conventions["u_rescaled_by"] = value.inverse().to_text()
    else:
        raise ValueError(f"unknown block kind {kind!r}")
    if not bracket(u, v) == 1:
        raise VerificationError(f"block pair bracket is {bracket(u, v)}", "bracket[u, v]")
    for label, f in (("u", u), ("v", v)):
        for k, g in enumerate(action.generators, 1):
            if not act(g, f, action) == f:
                raise VerificationError(f"{label} is not invariant under generator {k}", f"invariance[{label}, g{k}]")
    return DarbouxPair(u, v, action, conventions)


def _trivial_block() -> GroupAction:
    return close_group([LinMat.identity(2)], ActionMode.SYMPLECTIC_2N, name="trivial(n=1)", family=("trivial", 1))


def block_from_action(action: GroupAction) -> DarbouxPair:
    kind = action.family[0] if action.family else None
    if kind == "Cyc":
        return sl2_block("cyclic", action.family[1])
    if kind == "BD":
        pair = sl2_block("binary_dihedral", action.family[1])
        if pair.action.generators != action.generators:
            raise PresentationError("binary dihedral action does not use the verified presentation")
        return pair
    if kind == "trivial" and action.rank == 1:
        return sl2_block("trivial", 1)
    raise ValueError(f"no rank-one block pair for {action.name}")


# -- wreath products and direct products ----------------------------------------


def wreath_compose(block: DarbouxPair, n: int, *, seed: int = 0, verify: bool = True) -> NoetherSolution:
    """Darboux generators for block wr S_n.

    The symmetric-group recipe is run in abstract variables and then the
    block pair (u_l, v_l) on each coordinate pair is substituted for (x_l, y_l).
    """
    if n < 1:
        raise ValueError("wreath rank must be >= 1")
    us = [block.u.rename(n, {1: i}) for i in range(1, n + 1)]
    vs = [block.v.rename(n, {1: i}) for i in range(1, n + 1)]
    sys = fundamental_invariants(symmetric_group(n))
    jd = jacobian(sys)
    adj = adjugate(jd.M)
    at_v = {Y(l + 1): vs[l] for l in range(n)}
    det_v = substitute(jd.det, at_v)
    yprime = [substitute(e, at_v) for e in sys.invs]
    xprime = []
    for k in range(n):
        total = RatFn.constant(n, 0)
        for l in range(n):
            if not adj[k][l].is_zero():
                total = total + substitute(adj[k][l], at_v) * us[l]
        xprime.append(total / det_v)
    action = wreath_product(block.action, n)
    if verify:
        report = verify_generators(xprime, yprime, action, seed=seed)
    else:
        report = VerificationReport([], [], None)
    report.conventions.update(_base_conventions(action, xprime + yprime))
    report.conventions.update(
        {
            "block": block.action.name,
            "block_pair": {"u": block.u.to_json(), "v": block.v.to_json()},
            "block_conventions": block.conventions,
            "J": jd.J.to_text(),
            "J_sign": "J = det M * %d (graded-lex leading coefficient made positive)" % jd.det_sign,
            "orientation": ORIENTATION_NOTE,
        }
    )
    report.discrepancies.append("orientation: coefficient rows of x' are rows of M^-1, not solutions of M L_i = Y_i")
    if n == 3:
        report.discrepancies.append(
            "J for S_3 is (v1 - v2)(v2 - v3)(v1 - v3); the form (v1 - v2)(v2 - v3)(v3 - v2) repeats a factor"
        )
    return NoetherSolution(action, xprime, yprime, report)


def product_decompose(
    solutions: Sequence[NoetherSolution],
    fixed_rank: int,
    offsets: Sequence[int] | None = None,
    *,
    seed: int = 0,
    verify: bool = True,
) -> NoetherSolution:
    """Place solutions on disjoint coordinate pairs and append untouched pairs."""
    if fixed_rank < 0:
        raise ValueError("fixed_rank must be >= 0")
    if offsets is None:
        offsets, pos = [], 0
        for s in solutions:
            offsets.append(pos)
            pos += s.rank
    if len(offsets) != len(solutions):
        raise ValueError("one offset per solution is required")
    rank = max([o + s.rank for o, s in zip(offsets, solutions)] + [0]) + fixed_rank
    used: set[int] = set()
    for o, s in zip(offsets, solutions):
        block = set(range(o + 1, o + s.rank + 1))
        if block & used:
            raise ValueError(f"variable blocks overlap at pairs {sorted(block & used)}")
        used |= block
    free = [i for i in range(1, rank + 1) if i not in used]
    if len(free) != fixed_rank:
        raise ValueError("offsets leave gaps that fixed_rank does not fill")
    xprime: list[RatFn | None] = [None] * rank
    yprime: list[RatFn | None] = [None] * rank
    slot = 0
    for o, s in zip(offsets, solutions):
        mapping = {i: o + i for i in range(1, s.rank + 1)}
        for i in range(s.rank):
            xprime[slot + i] = s.xprime[i].rename(rank, mapping)
            yprime[slot + i] = s.yprime[i].rename(rank, mapping)
        slot += s.rank
    for i in free:
        xprime[slot] = RatFn.x(rank, i)
        yprime[slot] = RatFn.y(rank, i)
        slot += 1
    action = product_action([s.action for s in solutions], offsets, rank) if solutions else trivial_group(rank)
    if verify:
        report = verify_generators(xprime, yprime, action, seed=seed)
    else:
        report = VerificationReport([], [], None)
    report.conventions.update(_base_conventions(action, xprime + yprime))
    report.conventions["blocks"] = [{"group": s.action.name, "offset": o} for s, o in zip(solutions, offsets)]
    report.conventions["fixed_pairs"] = free
    return NoetherSolution(action, xprime, yprime, report)


# -- dispatcher -------------------------------------------------------------------


def construct(action: GroupAction, *, seed: int = 0) -> NoetherSolution:
    """Certified Darboux generators for any catalog group."""
    kind = action.family[0] if action.family else None
    if kind in ("S", "G", "trivial"):
        return darboux_primes(fundamental_invariants(action), seed=seed)
    if kind in ("Cyc", "BD"):
        pair = block_from_action(action)
        return _block_solution(pair, seed)
    if kind == "wreath":
        inner_family, n = action.family[1], action.family[2]
        inner = _block_action(inner_family)
        return wreath_compose(block_from_action(inner), n, seed=seed)
    raise ValueError(f"no construction for {action.name}")


def _block_action(family: tuple) -> GroupAction:
    if family[0] == "Cyc":
        return cyclic_sl2(family[1])
    if family[0] == "BD":
        return binary_dihedral(family[1])
    if family[0] == "trivial":
        return _trivial_block()
    raise ValueError(f"unsupported wreath block {family}")


def _block_solution(pair: DarbouxPair, seed: int) -> NoetherSolution:
    report = verify_generators([pair.u], [pair.v], pair.action, seed=seed)
    report.conventions.update(_base_conventions(pair.action, [pair.u, pair.v]))
    report.conventions.update(pair.conventions)
    return NoetherSolution(pair.action, [pair.u], [pair.v], report)
