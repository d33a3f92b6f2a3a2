from fractions import Fraction

import pytest

from poisson_noether.coeff import CycRat
from poisson_noether.errors import PresentationError, VerificationError
from poisson_noether.group import (
    BD_CONVENTION_CACHE,
    BDConvention,
    binary_dihedral,
    complex_reflection_group,
    cyclic_sl2,
    is_invariant,
    symmetric_group,
    trivial_group,
)
from poisson_noether.invariants import fundamental_invariants, jacobian
from poisson_noether.linalg import adjugate
from poisson_noether.multipoly import Poly, X
from poisson_noether.noether import (
    bd_pair,
    construct,
    darboux_primes,
    presentation_search,
    product_decompose,
    sl2_block,
    verify_generators,
    wreath_compose,
)
from poisson_noether.poisson import bracket
from poisson_noether.ratfunc import RatFn


def xy(n):
    return [RatFn.x(n, i) for i in range(1, n + 1)], [RatFn.y(n, i) for i in range(1, n + 1)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trivial_group_is_identity(n):
    sol = darboux_primes(fundamental_invariants(trivial_group(n)))
    xs, ys = xy(n)
    assert sol.xprime == xs and sol.yprime == ys


def test_s2_primes():
    (x1, x2), (y1, y2) = xy(2)
    sol = construct(symmetric_group(2))
    # sympy: row i of M^-1 applied to (x1, x2)
    assert sol.xprime[0] == (y1 * x1 - y2 * x2) / (y1 - y2)
    assert sol.xprime[1] == (x2 - x1) / (y1 - y2)
    assert sol.yprime == [y1 + y2, y1 * y2]
    assert sol.report.ok
    e1, e2 = sol.yprime
    assert bracket(sol.xprime[0], e1) == 1
    assert bracket(sol.xprime[0], e2) == 0


def test_column_orientation_is_wrong():
    sys = fundamental_invariants(symmetric_group(2))
    jd = jacobian(sys)
    adj = adjugate(jd.M)
    (x1, x2), (y1, y2) = xy(2)
    # column 1 of M^-1 instead of row 1
    literal = (RatFn(adj[0][0]) * x1 + RatFn(adj[1][0]) * x2) / RatFn(jd.det)
    assert bracket(literal, RatFn(sys.invs[0])) == (y1 - 1) / (y1 - y2)


def test_s3_rows_match_printed_coefficients_at_a_point():
    sol = construct(symmetric_group(3))
    # row 1 of M^-1 at y = (0, 1, 2) is (0, -1, 2)
    point = [0, 0, 0, 0, 1, 2]
    coeffs = [sol.xprime[0].partial(X(j)).evaluate(point) for j in (1, 2, 3)]
    assert coeffs == [0, -1, 2]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_cyclic_block(m):
    pair = sl2_block("cyclic", m)
    x1, y1 = RatFn.x(1, 1), RatFn.y(1, 1)
    assert pair.u == x1 ** m
    assert pair.v == x1 ** (1 - m) * y1 / m
    assert bracket(pair.u, pair.v) == 1
    assert is_invariant(pair.u, pair.action) and is_invariant(pair.v, pair.action)


def test_cyclic_one_is_identity():
    pair = sl2_block("cyclic", 1)
    assert pair.u == RatFn.x(1, 1) and pair.v == RatFn.y(1, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_binary_dihedral_block(n):
    pair = sl2_block("binary_dihedral", n)
    assert bracket(pair.u, pair.v) == 1
    assert pair.conventions["raw_bracket"] == "1"
    assert "u_rescaled_by" not in pair.conventions
    assert is_invariant(pair.u, pair.action) and is_invariant(pair.v, pair.action)
    assert pair.action.order == 4 * n


def test_binary_dihedral_pair_closed_forms():
    x, y = RatFn.x(1, 1), RatFn.y(1, 1)
    # sympy: factor(u) for n = 1, 2
    assert bd_pair(1)[0] == (x - y) ** 3 / (8 * (x + y))
    assert bd_pair(2)[0] == (x - y) ** 3 * (x + y) ** 3 / (16 * x * y * (x * x + y * y))


def test_presentation_search_conventions():
    r2 = presentation_search(2)
    assert BDConvention(4, "rot") in r2.passing
    assert len(r2.passing) + len(r2.failures) == 4
    r3 = presentation_search(3)
    assert r3.passing == [BDConvention(6, "iswap")]
    r1 = presentation_search(1)
    assert r1.passing
    assert BD_CONVENTION_CACHE[2] == BDConvention(4, "rot")


def test_presentation_search_negative_control():
    n = 2
    x, y = RatFn.x(1, 1), RatFn.y(1, 1)
    w = (y / x) ** n
    flipped = ((w.inverse() + w) * ((w - 1) / (w + 1)) ** 2 * x * y).scale(CycRat(Fraction(1, 8 * n)))
    result = presentation_search(n, u=flipped)
    assert result.passing == []
    assert len(result.failures) == 4
    assert all("u not invariant" in why for why in result.failures.values())


def test_global_sign_flip_is_still_invariant():
    u, v = bd_pair(2)
    assert presentation_search(2, u=-u).passing


def test_wreath_with_trivial_block_is_symmetric_output():
    for n in (2, 3):
        a = wreath_compose(sl2_block("trivial", 1), n)
        b = construct(symmetric_group(n))
        assert a.generators == b.generators


def test_cyclic_wreath_s2():
    sol = wreath_compose(sl2_block("cyclic", 2), 2)
    assert sol.action.order == 8
    assert sol.report.ok


def test_product_decompose_examples():
    s2 = construct(symmetric_group(2))
    sol = product_decompose([s2], 1)
    assert sol.rank == 3
    assert sol.xprime[2] == RatFn.x(3, 3) and sol.yprime[2] == RatFn.y(3, 3)
    both = product_decompose([s2, s2], 0)
    assert both.action.order == 4 and both.report.ok
    assert both.xprime[2] == s2.xprime[0].rename(4, {1: 3, 2: 4})
    ident = product_decompose([], 3)
    xs, ys = xy(3)
    assert ident.xprime == xs and ident.yprime == ys


def test_product_decompose_rejects_overlap():
    s2 = construct(symmetric_group(2))
    with pytest.raises(ValueError):
        product_decompose([s2, s2], 0, offsets=[0, 1])


def test_report_contents():
    sol = construct(complex_reflection_group(2, 1, 2))
    rep = sol.report
    assert len(rep.bracket_table) == 4 and all(len(r) == 4 for r in rep.bracket_table)
    assert rep.generation == "UNVERIFIED"
    assert rep.conventions["J"] == "4*y1^3*y2 - 4*y1*y2^3"
    assert any("orientation" in d for d in rep.discrepancies)
    assert rep.independence.ok


def test_verification_catches_coefficient_corruption():
    sol = construct(symmetric_group(3))
    x1 = sol.xprime[0]
    for exp, c in list(x1.num.terms().items())[:6]:
        terms = dict(x1.num.terms())
        terms[exp] = c + 1
        bad = RatFn(Poly.from_terms(3, terms), x1.den)
        with pytest.raises(VerificationError) as info:
            verify_generators([bad] + sol.xprime[1:], sol.yprime, sol.action)
        assert info.value.entry.startswith("bracket[")
        report = verify_generators([bad] + sol.xprime[1:], sol.yprime, sol.action, strict=False)
        assert not report.ok and report.failures()


def test_non_invariant_generators_fail_invariance():
    (x1, x2), (y1, y2) = xy(2)
    with pytest.raises(VerificationError) as info:
        verify_generators([x1, x2], [y1, y2], symmetric_group(2))
    assert info.value.entry.startswith("invariance[")


def test_bd_block_rejects_foreign_presentation():
    from poisson_noether.noether import block_from_action

    foreign = binary_dihedral(2, BDConvention(4, "iswap"))
    with pytest.raises(PresentationError):
        block_from_action(foreign)


def test_construct_dispatch():
    assert construct(cyclic_sl2(3)).report.ok
    with pytest.raises(ValueError):
        sl2_block("icosahedral", 1)
