from fractions import Fraction

import pytest
from hypothesis import given, settings

from poisson_noether.coeff import zeta
from poisson_noether.errors import RankMismatchError, ZeroDenominatorError
from poisson_noether.invariants import elementary_symmetric
from poisson_noether.multipoly import Poly, X, Y, partial_derivative, poly_arith, substitute
from poisson_noether.ratfunc import RatFn

from strategies import polys


def ys(n):
    return [Poly.y(n, i) for i in range(1, n + 1)]


def test_difference_of_squares():
    y1, y2 = ys(2)
    assert poly_arith(y1 + y2, y1 - y2, "mul") == y1 ** 2 - y2 ** 2


def test_e1_times_e2():
    y1, y2 = ys(2)
    e1, e2 = elementary_symmetric([y1, y2])
    assert e1 * e2 == y1 ** 2 * y2 + y1 * y2 ** 2


@settings(max_examples=50, deadline=None)
@given(polys(2))
def test_zero_absorbs(p):
    assert (Poly.zero(2) * p).is_zero()
    assert all(not c.is_zero() for c in p.terms().values())
    assert p.is_zero() == (p.terms() == {})


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        Poly.y(1, 1) + Poly.y(2, 1)


def test_partial_derivatives():
    y1, y2, y3 = ys(3)
    assert partial_derivative(y1 * y2, Y(1)) == y2
    e = elementary_symmetric([y1, y2, y3])
    assert partial_derivative(e[1], Y(1)) == y2 + y3


def test_jacobian_matrix_s2():
    y1, y2 = ys(2)
    e = elementary_symmetric([y1, y2])
    M = [[partial_derivative(e[j], Y(i)) for j in range(2)] for i in (1, 2)]
    assert M == [[1, y2], [1, y1]]


@settings(max_examples=60, deadline=None)
@given(polys(2), polys(2))
def test_product_rule(p, q):
    for v in (X(1), Y(2)):
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)
        assert (p + q).diff(v) == p.diff(v) + q.diff(v)


def test_sorted_terms_graded_lex():
    x1, y1 = Poly.x(1, 1), Poly.y(1, 1)
    p = y1 + x1 ** 2 + x1 * y1 + 3
    exps = [e for e, _ in p.sorted_terms()]
    assert exps == [(2, 0), (1, 1), (0, 1), (0, 0)]


def test_cyclotomic_coefficients_reduce():
    y1 = Poly.y(1, 1)
    p = y1.scale(zeta(4)) * y1.scale(zeta(4))
    assert p == -(y1 ** 2)
    assert p.is_rational()


def test_substitute_identity_and_rational():
    v1, v2 = RatFn.y(2, 1), RatFn.x(2, 2) / RatFn.y(2, 2)
    y1, y2 = ys(2)
    assert substitute(y1 + y2, {Y(1): v1, Y(2): v2}) == v1 + v2
    assert substitute(y1 ** 2 * y2, {Y(1): v1, Y(2): v2}) == v1 * v1 * v2


def test_substitute_zero_denominator():
    with pytest.raises((ZeroDenominatorError, ZeroDivisionError)):
        substitute(Poly.y(1, 1), {Y(1): RatFn(Poly.one(1), Poly.zero(1))})


def test_linear_substitute_and_evaluate():
    x1, y1 = Poly.x(1, 1), Poly.y(1, 1)
    p = x1 ** 2 * y1 - 3
    swapped = p.linear_substitute([y1, x1])
    assert swapped == y1 ** 2 * x1 - 3
    assert p.evaluate([2, 5]) == 17


def test_text():
    x1, y3 = Poly.x(3, 1), Poly.y(3, 3)
    p = (x1 ** 2 * y3).scale(Fraction(3, 2)) - Poly.y(3, 1).scale(zeta(4))
    assert p.to_text() == "3/2*x1^2*y3 - zeta(4)*y1"
