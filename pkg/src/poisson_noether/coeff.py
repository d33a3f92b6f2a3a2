"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element of Q(zeta_m) is stored as its coordinate vector in the power basis
``1, zeta, ..., zeta^(phi(m)-1)`` modulo the cyclotomic polynomial Phi_m.
Every result is pushed down to the smallest cyclotomic field containing it,
so equal numbers always carry equal ``(conductor, coords)`` pairs.

>>> z4 = primitive_root(4)
>>> z4 * z4
CycRat('-1')
>>> 1 / (1 + z4)
CycRat('1/2 - 1/2*zeta(4)')
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DivisionByZeroError, ResourceError

__all__ = [
    "CycRat",
    "MAX_CONDUCTOR",
    "cyclotomic_polynomial",
    "euler_phi",
    "field_arith",
    "primitive_root",
    "zeta",
]

#: Largest conductor an operation may produce before ``ResourceError`` is raised.
MAX_CONDUCTOR = 1024


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def euler_phi(m: int) -> int:
    result = m
    for p in _prime_factors(m):
        result -= result // p
    return result


# -- dense univariate helpers over Q, coefficient lists low -> high ---------


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return _trim(out)


def _pdivmod(a, b) -> tuple[list, list]:
    """Division with remainder in Q[t]; ``b`` must be nonzero."""
    a = list(a)
    _trim(a)
    db = len(b) - 1
    lead = Fraction(b[-1])
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    r = _trim(a[:db])
    return _trim(q), r


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, constant term first."""
    if m < 1:
        raise ValueError("cyclotomic polynomial needs m >= 1")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, r = _pdivmod(num, list(cyclotomic_polynomial(d)))
            assert not r
    return tuple(int(c) for c in num)


def _reduce(a: list, m: int) -> list:
    """Reduce a coefficient list modulo Phi_m (monic, integer)."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    a = list(a)
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            # Phi_m is monic: t^k = t^(k-d) * (t^d - Phi_m)
            for j in range(d):
                if phi[j]:
                    a[k - d + j] -= c * phi[j]
            a[k] = 0
    a = a[:d] + [0] * (d - len(a))
    return [Fraction(c) for c in a]


def _embed_coords(coords, m: int, big: int) -> list:
    """Coordinates of an element of Q(zeta_m) inside Q(zeta_big), m | big."""
    if m == big:
        return list(coords)
    step = big // m
    spread = [0] * (step * (len(coords) - 1) + 1)
    for k, c in enumerate(coords):
        spread[k * step] = c
    return _reduce(spread, big)


@lru_cache(maxsize=None)
def _subfield_solver(m: int, d: int):
    """Pivot rows and inverse block for testing membership of Q(zeta_d) in Q(zeta_m)."""
    pd = euler_phi(d)
    cols = [_embed_coords([0] * k + [1], d, m) for k in range(pd)]
    rows = len(cols[0])
    mat = [[cols[j][i] for j in range(pd)] for i in range(rows)]
    # pick pd independent rows greedily by elimination on a copy
    work = [list(r) for r in mat]
    pivots = []
    basis = []
    for i, row in enumerate(work):
        r = list(row)
        for (pc, brow) in basis:
            if r[pc]:
                f = r[pc] / brow[pc]
                r = [a - f * b for a, b in zip(r, brow)]
        nz = next((c for c, v in enumerate(r) if v), None)
        if nz is not None:
            basis.append((nz, r))
            pivots.append(i)
        if len(pivots) == pd:
            break
    square = [mat[i] for i in pivots]
    inv = _invert_dense(square)
    return tuple(pivots), inv, mat


def _invert_dense(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _try_descend(coords, m: int, d: int):
    pivots, inv, mat = _subfield_solver(m, d)
    rhs = [coords[i] for i in pivots]
    c = [sum(inv[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(inv))]
    for i, row in enumerate(mat):
        if sum(r * x for r, x in zip(row, c)) != coords[i]:
            return None
    return c


def _canonical(m: int, coords: list) -> tuple[int, tuple[Fraction, ...]]:
    if m > 1 and all(c == 0 for c in coords[1:]):
        return 1, (Fraction(coords[0]),)
    descended = True
    while descended and m > 1:
        descended = False
        for p in _prime_factors(m):
            c = _try_descend(coords, m, m // p)
            if c is not None:
                m, coords = m // p, c
                descended = True
                break
    return m, tuple(Fraction(c) for c in coords)


def _common(a: int, b: int) -> int:
    big = a * b // math.gcd(a, b)
    if big > MAX_CONDUCTOR:
        raise ResourceError(f"conductor {big} exceeds bound {MAX_CONDUCTOR}")
    return big


class CycRat:
    """An exact element of a cyclotomic field.

    ``CycRat(3)`` and ``CycRat(Fraction(1, 2))`` build rationals;
    :func:`zeta` builds roots of unity.  Instances are immutable.
    """

    __slots__ = ("conductor", "coords")

    def __init__(self, value=0, conductor: int = 1, coords=None):
        if coords is None:
            if isinstance(value, CycRat):
                conductor, coords = value.conductor, value.coords
            else:
                if not isinstance(value, (int, Fraction, Rational)):
                    raise TypeError(f"cannot build CycRat from {type(value).__name__}")
                conductor, coords = 1, (Fraction(value),)
        else:
            if conductor < 1:
                raise ValueError("conductor must be positive")
            if conductor > MAX_CONDUCTOR:
                raise ResourceError(f"conductor {conductor} exceeds bound {MAX_CONDUCTOR}")
            if len(coords) != euler_phi(conductor):
                raise ValueError(f"Q(zeta_{conductor}) needs {euler_phi(conductor)} coordinates")
            conductor, coords = _canonical(conductor, [Fraction(c) for c in coords])
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("CycRat is immutable")

    @classmethod
    def _raw(cls, m: int, coords: list) -> "CycRat":
        obj = object.__new__(cls)
        m, coords = _canonical(m, coords)
        object.__setattr__(obj, "conductor", m)
        object.__setattr__(obj, "coords", coords)
        return obj

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coords[0] == 0

    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def embed(self, m: int) -> tuple[Fraction, ...]:
        """Power-basis coordinates of ``self`` inside Q(zeta_m); conductor must divide m."""
        if m % self.conductor:
            raise ValueError(f"Q(zeta_{self.conductor}) is not a subfield of Q(zeta_{m})")
        return tuple(_embed_coords(self.coords, self.conductor, m))

    def multiplicative_order(self, limit: int | None = None) -> int | None:
        """Smallest k >= 1 with self**k == 1, or None if there is none up to ``limit``."""
        if self.is_zero():
            return None
        limit = limit or 2 * self.conductor
        acc = self
        for k in range(1, limit + 1):
            if acc == 1:
                return k
            acc = acc * self
        return None

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "CycRat | None":
        if isinstance(other, CycRat):
            return other
        if isinstance(other, (int, Fraction)):
            return CycRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.conductor == o.conductor == 1:
            return CycRat(self.coords[0] + o.coords[0])
        m = _common(self.conductor, o.conductor)
        a = _embed_coords(self.coords, self.conductor, m)
        b = _embed_coords(o.coords, o.conductor, m)
        return CycRat._raw(m, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CycRat._raw(self.conductor, [-c for c in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.conductor == o.conductor == 1:
            return CycRat(self.coords[0] * o.coords[0])
        m = _common(self.conductor, o.conductor)
        a = _embed_coords(self.coords, self.conductor, m)
        b = _embed_coords(o.coords, o.conductor, m)
        return CycRat._raw(m, _reduce(_pmul(a, b), m))

    __rmul__ = __mul__

    def inverse(self) -> "CycRat":
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero in a cyclotomic field")
        if self.conductor == 1:
            return CycRat(1 / self.coords[0])
        m = self.conductor
        # extended Euclid: s*a + t*Phi = 1
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(m)], _trim(list(self.coords))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            qs = _pmul(q, s1)
            size = max(len(s0), len(qs))
            s0, s1 = s1, _trim([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                                for i in range(size)])
        c = r1[0]
        inv = [x / c for x in s1]
        return CycRat._raw(m, _reduce(inv, m))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycRat(1)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.conductor == o.conductor and self.coords == o.coords

    def __hash__(self):
        if self.conductor == 1:
            return hash(self.coords[0])
        return hash((self.conductor, self.coords))

    def __bool__(self):
        return not self.is_zero()

    # -- text -----------------------------------------------------------------

    def to_text(self) -> str:
        if self.conductor == 1:
            return str(self.coords[0])
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                root = f"zeta({self.conductor})" + (f"^{k}" if k > 1 else "")
                body = root if abs(c) == 1 else f"{abs(c)}*{root}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def needs_parens(self) -> bool:
        """True when the printed form is a sum and must be parenthesised as a factor."""
        return sum(1 for c in self.coords if c) > 1

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"CycRat({self.to_text()!r})"


def primitive_root(m: int) -> CycRat:
    """The root of unity exp(2*pi*i/m) as an element of Q(zeta_m)."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"primitive_root needs a positive integer, got {m!r}")
    return CycRat._raw(m, _reduce([0, 1], m))


def zeta(m: int, k: int = 1) -> CycRat:
    return primitive_root(m) ** k


def field_arith(a: CycRat, b: CycRat, op: str) -> CycRat:
    """Dispatch ``op`` in {"add", "sub", "mul", "div"} on two field elements."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")
