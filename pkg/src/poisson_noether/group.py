"""Finite linear groups acting by Poisson automorphisms on K_n.

Two action modes are supported:

* ``DIAGONAL_LINEAR``: an n x n matrix A acts on the y-span by A and on the
  x-span by the inverse transpose of A, so the pairing sum x_i y_i is fixed.
* ``SYMPLECTIC_2N``: a 2n x 2n matrix acts on the full variable vector
  (x1..xn, y1..yn).

Functions transform as ``(g.f)(z) = f(g^{-1} z)``, which makes ``act`` a left
action: ``act(gh, f) == act(g, act(h, f))``.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Sequence

from .coeff import CycRat, zeta
from .errors import GroupOrderError, GroupSpecError, RankMismatchError
from .multipoly import Poly
from .poisson import poly_bracket
from .ratfunc import RatFn

__all__ = [
    "ActionMode",
    "GroupAction",
    "GroupSpec",
    "LinMat",
    "act",
    "binary_dihedral",
    "close_group",
    "complex_reflection_group",
    "cyclic_sl2",
    "group_from_spec",
    "is_invariant",
    "is_symplectic",
    "parse_group_spec",
    "product_action",
    "symmetric_group",
    "trivial_group",
    "wreath_product",
]

DEFAULT_ORDER_BOUND = 10000


class ActionMode(enum.Enum):
    DIAGONAL_LINEAR = "diagonal_linear"
    SYMPLECTIC_2N = "symplectic_2n"


class LinMat:
    """Immutable square matrix over cyclotomic numbers."""

    __slots__ = ("dim", "entries", "_hash")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(CycRat(c) for c in row) for row in entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("LinMat must be square")
        self.dim = len(rows)
        self.entries = rows
        self._hash = hash(rows)

    @classmethod
    def identity(cls, d: int) -> "LinMat":
        return cls([[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "LinMat":
        d = len(values)
        return cls([[values[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "LinMat":
        """Matrix sending basis vector j to basis vector perm[j]."""
        d = len(perm)
        return cls([[int(perm[j] == i) for j in range(d)] for i in range(d)])

    def __matmul__(self, other: "LinMat") -> "LinMat":
        if self.dim != other.dim:
            raise RankMismatchError("matrix dimensions differ")
        d = self.dim
        cols = [[other.entries[k][j] for k in range(d)] for j in range(d)]
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if not a.is_zero()]
            new_row = []
            for j in range(d):
                acc = CycRat(0)
                col = cols[j]
                for k, a in nz:
                    b = col[k]
                    if not b.is_zero():
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return LinMat(out)

    def transpose(self) -> "LinMat":
        return LinMat([[self.entries[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def _eliminate(self):
        """Gauss-Jordan on [self | I]; returns (det, inverse or None)."""
        d = self.dim
        aug = [list(row) + [CycRat(int(i == j)) for j in range(d)] for i, row in enumerate(self.entries)]
        det = CycRat(1)
        for col in range(d):
            piv = next((r for r in range(col, d) if not aug[r][col].is_zero()), None)
            if piv is None:
                return CycRat(0), None
            if piv != col:
                aug[col], aug[piv] = aug[piv], aug[col]
                det = -det
            p = aug[col][col]
            det = det * p
            inv_p = p.inverse()
            aug[col] = [v * inv_p for v in aug[col]]
            for r in range(d):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return det, LinMat([row[d:] for row in aug])

    def det(self) -> CycRat:
        return self._eliminate()[0]

    def inverse(self) -> "LinMat":
        det, inv = self._eliminate()
        if inv is None:
            raise ValueError("matrix is singular")
        return inv

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def block_embed(self, dim: int, positions: Sequence[int]) -> "LinMat":
        """Place self on the rows/cols ``positions`` of a dim x dim identity."""
        rows = [[CycRat(int(i == j)) for j in range(dim)] for i in range(dim)]
        for a, pa in enumerate(positions):
            for b, pb in enumerate(positions):
                rows[pa][pb] = self.entries[a][b]
        return LinMat(rows)

    def __eq__(self, other):
        if not isinstance(other, LinMat):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return self._hash

    def to_json(self) -> list[list[str]]:
        return [[c.to_text() for c in row] for row in self.entries]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[str]]) -> "LinMat":
        from .expr import parse_ratfn

        return cls([[parse_ratfn(text, 0).constant_value() for text in row] for row in rows])

    def __repr__(self):
        return f"LinMat({self.to_json()})"


@dataclass(frozen=True)
class GroupAction:
    """A finite group with a linear Poisson action on rank-n variables."""

    rank: int
    mode: ActionMode
    generators: tuple[LinMat, ...]
    elements: tuple[LinMat, ...] = ()
    name: str = ""
    family: tuple = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def matrix_dim(self) -> int:
        return self.rank if self.mode is ActionMode.DIAGONAL_LINEAR else 2 * self.rank

    def symplectic_matrix(self, g: LinMat) -> LinMat:
        """The 2n x 2n matrix of g on (x1..xn, y1..yn)."""
        if self.mode is ActionMode.SYMPLECTIC_2N:
            return g
        return _diag_to_symplectic(g)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "mode": self.mode.value,
            "order": self.order,
            "generators": [g.to_json() for g in self.generators],
        }


@lru_cache(maxsize=4096)
def _diag_to_symplectic(a: LinMat) -> LinMat:
    n = a.dim
    inv_t = a.inverse().transpose()
    rows = [[CycRat(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = inv_t.entries[i][j]
            rows[n + i][n + j] = a.entries[i][j]
    return LinMat(rows)


@lru_cache(maxsize=4096)
def _substitution_images(s: LinMat, rank: int) -> tuple[Poly, ...]:
    # (g.f)(z) = f(S^{-1} z): variable k is replaced by row k of S^{-1}
    inv = s.inverse()
    images = []
    for k in range(2 * rank):
        terms = {}
        for j, c in enumerate(inv.entries[k]):
            if not c.is_zero():
                exp = [0] * (2 * rank)
                exp[j] = 1
                terms[tuple(exp)] = c
        images.append(Poly.from_terms(rank, terms))
    return tuple(images)


def close_group(
    generators: Sequence[LinMat],
    mode: ActionMode,
    bound: int = DEFAULT_ORDER_BOUND,
    *,
    name: str = "",
    family: tuple = (),
    meta: dict | None = None,
) -> GroupAction:
    """Materialise the finite group generated by ``generators`` (breadth-first)."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].dim
    for g in gens:
        if g.dim != d:
            raise RankMismatchError("generators of different dimension")
        if not g.is_invertible():
            raise ValueError(f"generator {g} is singular")
    if mode is ActionMode.SYMPLECTIC_2N and d % 2:
        raise RankMismatchError("symplectic generators need even dimension")
    rank = d if mode is ActionMode.DIAGONAL_LINEAR else d // 2
    ident = LinMat.identity(d)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in gens:
            gh = g @ h
            if gh not in seen:
                seen.add(gh)
                order.append(gh)
                if len(order) > bound:
                    raise GroupOrderError(f"group closure exceeded {bound} elements")
                queue.append(gh)
    return GroupAction(rank, mode, gens, tuple(order), name, family, dict(meta or {}))


def act(g: LinMat, f, action: GroupAction):
    """Image of a Poly or RatFn under the group element g."""
    images = list(_substitution_images(action.symplectic_matrix(g), action.rank))
    return f.linear_substitute(images)


def is_invariant(f, action: GroupAction) -> bool:
    return all(act(g, f, action) == f for g in action.generators)


def invariance_flags(f, action: GroupAction) -> list[bool]:
    return [act(g, f, action) == f for g in action.generators]


def is_symplectic(action: GroupAction) -> bool:
    """True iff every generator preserves the canonical bracket on all variable pairs."""
    n = action.rank
    for g in action.generators:
        images = _substitution_images(action.symplectic_matrix(g), n)
        for a in range(2 * n):
            for b in range(a + 1, 2 * n):
                expected = 1 if (a < n and b == a + n) else 0
                if not poly_bracket(images[a], images[b]) == expected:
                    return False
    return True


# -- catalog ----------------------------------------------------------------


def _transposition(n: int, i: int, j: int) -> LinMat:
    perm = list(range(n))
    perm[i], perm[j] = perm[j], perm[i]
    return LinMat.permutation(perm)


def trivial_group(n: int) -> GroupAction:
    return close_group([LinMat.identity(n)], ActionMode.DIAGONAL_LINEAR, name=f"trivial(n={n})", family=("trivial", n))


def symmetric_group(n: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    gens = [_transposition(n, i, i + 1) for i in range(n - 1)] or [LinMat.identity(n)]
    return close_group(gens, ActionMode.DIAGONAL_LINEAR, bound, name=f"Sn(n={n})", family=("S", n))


def complex_reflection_group(m: int, p: int, n: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    """G(m, p, n): monomial n x n matrices with m-th root entries whose product is an (m/p)-th root."""
    if m < 1 or p < 1 or n < 1 or m % p:
        raise ValueError(f"G(m,p,n) needs p | m and positive parameters, got ({m},{p},{n})")
    gens = [_transposition(n, i, i + 1) for i in range(n - 1)]
    if n >= 2 and m > 1:
        gens.append(LinMat.diagonal([zeta(m), zeta(m, -1)] + [1] * (n - 2)))
    if m // p > 1:
        gens.append(LinMat.diagonal([zeta(m // p)] + [1] * (n - 1)))
    if not gens:
        gens = [LinMat.identity(n)]
    return close_group(gens, ActionMode.DIAGONAL_LINEAR, bound, name=f"G(m={m},p={p},n={n})", family=("G", m, p, n))


def cyclic_sl2(m: int) -> GroupAction:
    """Cyclic group of order m in SL_2 acting on (x1, y1) by diag(zeta_m, zeta_m^-1)."""
    if m < 1:
        raise ValueError("cyclic order must be positive")
    g = LinMat.diagonal([zeta(m), zeta(m, -1)])
    return close_group([g], ActionMode.SYMPLECTIC_2N, name=f"Cyc(m={m})", family=("Cyc", m))


@dataclass(frozen=True)
class BDConvention:
    """Matrix presentation of the binary dihedral group of order 4n in SL_2.

    ``root_order`` is the order of zeta in diag(zeta, zeta^-1) (2n or 4n);
    ``second`` is "rot" for rows (0,1),(-1,0) or "iswap" for rows (0,i),(i,0).
    """

    root_order: int
    second: str

    def generators(self) -> list[LinMat]:
        first = LinMat.diagonal([zeta(self.root_order), zeta(self.root_order, -1)])
        if self.second == "rot":
            second = LinMat([[0, 1], [-1, 0]])
        elif self.second == "iswap":
            second = LinMat([[0, zeta(4)], [zeta(4), 0]])
        else:
            raise ValueError(f"unknown second generator {self.second!r}")
        return [first, second]

    def describe(self) -> str:
        second = "[[0,1],[-1,0]]" if self.second == "rot" else "[[0,zeta(4)],[zeta(4),0]]"
        return f"diag(zeta({self.root_order}), zeta({self.root_order})^-1) and {second}"

    def to_json(self) -> dict:
        return {"root_order": self.root_order, "second": self.second, "description": self.describe()}


def bd_candidate_conventions(n: int) -> list[BDConvention]:
    return [BDConvention(r, s) for r in (2 * n, 4 * n) for s in ("rot", "iswap")]


# filled by noether.presentation_search
BD_CONVENTION_CACHE: dict[int, BDConvention] = {}


def binary_dihedral(n: int, convention: BDConvention | None = None, bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    if n < 1:
        raise ValueError("binary dihedral parameter must be >= 1")
    if convention is None:
        if n not in BD_CONVENTION_CACHE:
            from .noether import presentation_search

            presentation_search(n)
        convention = BD_CONVENTION_CACHE[n]
    return close_group(
        convention.generators(),
        ActionMode.SYMPLECTIC_2N,
        bound,
        name=f"BD(n={n})",
        family=("BD", n),
        meta={"convention": convention},
    )


def wreath_product(block: GroupAction, n: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    """Gamma wr S_n acting on n copies of a rank-1 symplectic block."""
    if block.rank != 1 or block.mode is not ActionMode.SYMPLECTIC_2N:
        raise ValueError("wreath blocks must be rank-1 symplectic actions")
    gens = [g.block_embed(2 * n, [0, n]) for g in block.generators]
    for i in range(n - 1):
        perm = list(range(2 * n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        perm[n + i], perm[n + i + 1] = perm[n + i + 1], perm[n + i]
        gens.append(LinMat.permutation(perm))
    return close_group(
        gens,
        ActionMode.SYMPLECTIC_2N,
        bound,
        name=f"wreath({block.name},{n})",
        family=("wreath", block.family, n),
        meta=dict(block.meta),
    )


def product_action(actions: Sequence[GroupAction], offsets: Sequence[int], rank: int,
                   bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    """Direct product of actions on disjoint variable pairs inside rank ``rank``."""
    if all(a.mode is ActionMode.DIAGONAL_LINEAR for a in actions):
        gens = []
        for a, off in zip(actions, offsets):
            pos = [off + i for i in range(a.rank)]
            gens.extend(g.block_embed(rank, pos) for g in a.generators)
        mode = ActionMode.DIAGONAL_LINEAR
    else:
        gens = []
        for a, off in zip(actions, offsets):
            pos = [off + i for i in range(a.rank)] + [rank + off + i for i in range(a.rank)]
            gens.extend(a.symplectic_matrix(g).block_embed(2 * rank, pos) for g in a.generators)
        mode = ActionMode.SYMPLECTIC_2N
    if not gens:
        gens = [LinMat.identity(rank if mode is ActionMode.DIAGONAL_LINEAR else 2 * rank)]
    name = " x ".join(a.name for a in actions) or f"trivial(n={rank})"
    return close_group(gens, mode, bound, name=name, family=("product", tuple(a.family for a in actions), rank))


def expected_order(family: tuple) -> int | None:
    """Known abstract order for catalog families."""
    kind = family[0] if family else None
    if kind == "trivial":
        return 1
    if kind == "S":
        return factorial(family[1])
    if kind == "G":
        m, p, n = family[1:]
        return m ** n * factorial(n) // p
    if kind == "Cyc":
        return family[1]
    if kind == "BD":
        return 4 * family[1]
    if kind == "wreath":
        inner = expected_order(family[1])
        return None if inner is None else inner ** family[2] * factorial(family[2])
    return None


# -- group spec strings -----------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    name: str
    kwargs: tuple[tuple[str, int], ...] = ()
    args: tuple = ()

    def get(self, key: str, position: int = 0) -> int:
        """Keyword parameter ``key``, else the positional integer at ``position``."""
        for k, v in self.kwargs:
            if k == key:
                return v
        ints = [a for a in self.args if isinstance(a, int)]
        if not self.kwargs and position < len(ints):
            return ints[position]
        raise GroupSpecError(f"group spec {self} is missing parameter {key!r}")

    def __str__(self):
        parts = [str(a) for a in self.args] + [f"{k}={v}" for k, v in self.kwargs]
        return f"{self.name}({','.join(parts)})"


_SPEC_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_]\w*)|(?P<int>\d+)|(?P<punct>[(),=]))")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse strings such as ``Sn(n=3)``, ``G(m=4,p=2,n=2)`` or ``wreath(BD(n=2),3)``."""
    tokens = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _SPEC_TOKEN.match(text, pos)
        if not m:
            raise GroupSpecError(f"bad group spec {text!r} at offset {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    tokens.append(("end", ""))
    i = 0

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            raise GroupSpecError(f"bad group spec {text!r}: unexpected {tok[1] or 'end'!r}")
        i += 1
        return tok

    def spec() -> GroupSpec:
        name = take("name")[1]
        take("punct", "(")
        kwargs, args = [], []
        while tokens[i] != ("punct", ")"):
            if tokens[i][0] == "name" and tokens[i + 1] == ("punct", "="):
                key = take("name")[1]
                take("punct", "=")
                kwargs.append((key, int(take("int")[1])))
            elif tokens[i][0] == "name":
                args.append(spec())
            else:
                args.append(int(take("int")[1]))
            if tokens[i] == ("punct", ","):
                take("punct", ",")
            elif tokens[i] != ("punct", ")"):
                raise GroupSpecError(f"bad group spec {text!r}: expected ',' or ')'")
        take("punct", ")")
        return GroupSpec(name, tuple(kwargs), tuple(args))

    result = spec()
    take("end")
    return result


def group_from_spec(spec: GroupSpec | str, bound: int = DEFAULT_ORDER_BOUND) -> GroupAction:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    name = spec.name
    if name in ("Sn", "S"):
        return symmetric_group(spec.get("n"), bound)
    if name == "G":
        return complex_reflection_group(spec.get("m"), spec.get("p", 1), spec.get("n", 2), bound)
    if name == "Cyc":
        return cyclic_sl2(spec.get("m"))
    if name == "BD":
        return binary_dihedral(spec.get("n"), bound=bound)
    if name == "trivial":
        return trivial_group(spec.get("n"))
    if name == "wreath":
        if len(spec.args) != 2 or not isinstance(spec.args[0], GroupSpec):
            raise GroupSpecError("wreath spec is wreath(<block>, <n>)")
        return wreath_product(group_from_spec(spec.args[0], bound), spec.args[1], bound)
    raise GroupSpecError(f"unknown group family {name!r}")
