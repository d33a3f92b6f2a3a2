"""The canonical Poisson bracket {x_i, y_j} = delta_ij on P_n and K_n."""

from __future__ import annotations

from .errors import RankMismatchError
from .multipoly import Poly, X, Y
from .ratfunc import RatFn

__all__ = ["bracket", "localization_consistency", "poly_bracket"]


def poly_bracket(p: Poly, q: Poly) -> Poly:
    """sum_i dp/dx_i * dq/dy_i - dp/dy_i * dq/dx_i for polynomials."""
    if p.rank != q.rank:
        raise RankMismatchError(f"rank {p.rank} vs rank {q.rank}")
    out = Poly.zero(p.rank)
    for i in range(1, p.rank + 1):
        out = out + p.diff(X(i)) * q.diff(Y(i)) - p.diff(Y(i)) * q.diff(X(i))
    return out


def _numerator_partials(f: RatFn, i: int):
    # d(N/D)/dv = (D*dN - N*dD) / D^2; only the numerator is returned.
    out = []
    for v in (X(i), Y(i)):
        dn, dd = f.num.diff(v), f.den.diff(v)
        if dd.is_zero():
            out.append(f.den * dn)
        else:
            out.append(f.den * dn - f.num * dd)
    return out


def bracket(f, g) -> RatFn:
    """Poisson bracket of two elements of K_n.

    Works on the common denominator D_f^2 D_g^2 and cancels once at the end,
    which is much cheaper than summing 2n reduced quotients.
    """
    if isinstance(f, Poly) and isinstance(g, Poly):
        return RatFn(poly_bracket(f, g))
    rank = f.rank
    if g.rank != rank:
        raise RankMismatchError(f"rank {rank} vs rank {g.rank}")
    f = RatFn.coerce(f, rank)
    g = RatFn.coerce(g, rank)
    if f.is_polynomial() and g.is_polynomial():
        scale = f.den.constant_value() * g.den.constant_value()
        return RatFn(poly_bracket(f.num, g.num)).scale(scale.inverse())
    num = Poly.zero(rank)
    for i in range(1, rank + 1):
        fx, fy = _numerator_partials(f, i)
        gx, gy = _numerator_partials(g, i)
        num = num + fx * gy - fy * gx
    return RatFn(num, f.den * f.den * g.den * g.den)


def localization_consistency(a: Poly, s: Poly, b: Poly, t: Poly) -> bool:
    """Check bracket(a/s, b/t) against the four-term localisation formula.

    {a/s, b/t} = {a,b}/(st) - {a,t} b/(s t^2) - {s,b} a/(s^2 t) + {s,t} ab/(s^2 t^2)
    """
    lhs = bracket(RatFn(a, s), RatFn(b, t))
    rhs = (
        RatFn(poly_bracket(a, b), s * t)
        - RatFn(poly_bracket(a, t) * b, s * t * t)
        - RatFn(poly_bracket(s, b) * a, s * s * t)
        + RatFn(poly_bracket(s, t) * a * b, s * s * t * t)
    )
    return lhs == rhs
