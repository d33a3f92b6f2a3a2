"""End-to-end acceptance checks, one test per criterion.

Run directly with ``python tests/test_acceptance.py``; the pytest summary
prints one PASS/FAIL line per criterion.
"""

import io
import json
import time
from math import factorial, prod

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from poisson_noether.cli import run
from poisson_noether.group import (
    complex_reflection_group,
    group_from_spec,
    is_invariant,
    symmetric_group,
)
from poisson_noether.invariants import (
    INDEPENDENT,
    express_in_invariants,
    fundamental_invariants,
    jacobian,
    classical_sigma_exponent,
    recheck_witness,
)
from poisson_noether.multipoly import Poly, Y, substitute
from poisson_noether.noether import (
    bd_pair,
    canonical_value,
    construct,
    presentation_search,
    sl2_block,
)
from poisson_noether.poisson import bracket, localization_consistency
from poisson_noether.ratfunc import RatFn, ratfn_equal

from mutation import sample_mutations
from strategies import nonzero_polys, polys, ratfns

SN_LIMITS = {2: 1.0, 3: 1.0, 4: 30.0}
GMPN = [(2, 1, 2), (3, 1, 2), (2, 2, 2), (4, 2, 2), (2, 1, 3)]


def assert_certified(sol):
    """Recompute the full table, invariance and witness independently of the report."""
    n = sol.rank
    gens = sol.generators
    for a in range(2 * n):
        for b in range(2 * n):
            assert bracket(gens[a], gens[b]) == canonical_value(a, b, n), (a, b)
    assert all(is_invariant(f, sol.action) for f in gens)
    w = sol.report.independence
    assert w.status == INDEPENDENT and recheck_witness(gens, w)
    assert sol.report.ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_criterion_1_symmetric_groups(n):
    start = time.perf_counter()
    sol = construct(symmetric_group(n))
    elapsed = time.perf_counter() - start
    assert len(sol.generators) == 2 * n
    assert_certified(sol)
    assert elapsed < SN_LIMITS[n], f"{elapsed:.2f}s"


@pytest.mark.parametrize("mpn", GMPN, ids=lambda t: "G(%d,%d,%d)" % t)
def test_criterion_2_complex_reflection_groups(mpn):
    m, p, n = mpn
    start = time.perf_counter()
    g = complex_reflection_group(m, p, n)
    sol = construct(g)
    elapsed = time.perf_counter() - start
    assert_certified(sol)
    degrees = fundamental_invariants(g).degrees
    order = m ** n * factorial(n) // p
    assert g.order == order
    assert prod(degrees) == order
    assert elapsed < 60.0, f"{elapsed:.2f}s"


def test_criterion_3_binary_dihedral_wreath():
    start = time.perf_counter()
    sol = construct(group_from_spec("wreath(BD(n=2),3)"))
    elapsed = time.perf_counter() - start
    u, v = bd_pair(2)
    u1, u2, u3 = (u.rename(3, {1: i}) for i in (1, 2, 3))
    v1, v2, v3 = (v.rename(3, {1: i}) for i in (1, 2, 3))
    J = (v1 - v2) * (v2 - v3) * (v1 - v3)
    V = [v1 + v2 + v3, v1 * v2 + v2 * v3 + v3 * v1, v1 * v2 * v3]
    U = [
        v1 * v1 * (v2 - v3) / J * u1 + v2 * v2 * (v3 - v1) / J * u2 + v3 * v3 * (v1 - v2) / J * u3,
        v1 * (v3 - v2) / J * u1 + v2 * (v1 - v3) / J * u2 + v3 * (v2 - v1) / J * u3,
        (v2 - v3) / J * u1 + (v3 - v1) / J * u2 + (v1 - v2) / J * u3,
    ]
    for k in range(3):
        assert ratfn_equal(sol.yprime[k], V[k])
        assert ratfn_equal(sol.xprime[k], U[k])
    printed_J = (v1 - v2) * (v2 - v3) * (v3 - v2)
    assert not ratfn_equal(sol.xprime[2], (v2 - v3) / printed_J * u1 + (v3 - v1) / printed_J * u2
                           + (v1 - v2) / printed_J * u3)
    assert any("J" in d for d in sol.report.discrepancies)
    for i in range(3):
        for j in range(3):
            assert bracket(V[i], V[j]) == 0
            assert bracket(U[i], U[j]) == 0
            assert bracket(U[i], V[j]) == (1 if i == j else 0)
    assert sol.report.ok
    assert elapsed < 300.0, f"{elapsed:.1f}s"


@pytest.mark.parametrize("n", [2, 3])
def test_criterion_4_binary_dihedral_block(n):
    result = presentation_search(n)
    assert result.passing
    u, v = bd_pair(n)
    raw = bracket(u, v)
    assert raw.is_constant() and not raw.is_zero()
    pair = sl2_block("binary_dihedral", n)
    assert bracket(pair.u, pair.v) == 1
    assert is_invariant(pair.u, pair.action) and is_invariant(pair.v, pair.action)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_criterion_5_cyclic_blocks(m):
    start = time.perf_counter()
    x1, y1 = RatFn.x(1, 1), RatFn.y(1, 1)
    u, v = x1 ** m, x1 ** (1 - m) * y1 / m
    pair = sl2_block("cyclic", m)
    assert pair.u == u and pair.v == v
    assert bracket(u, v) == 1
    assert is_invariant(u, pair.action) and is_invariant(v, pair.action)
    assert time.perf_counter() - start < 1.0


_SAMPLES = 200
_AXIOMS = settings(max_examples=_SAMPLES + 20, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _count_samples(check, *strategies):
    seen = []

    @_AXIOMS
    @given(st.tuples(*strategies))
    def body(args):
        check(*args)
        seen.append(1)

    body()
    return len(seen)


def test_criterion_6_poisson_axioms():
    start = time.perf_counter()
    small = dict(max_terms=3, max_deg=2)

    def antisymmetry(f, g):
        assert bracket(f, g) == -bracket(g, f)

    def leibniz(f, g, h):
        assert bracket(f, g * h) == bracket(f, g) * h + g * bracket(f, h)

    def jacobi(f, g, h):
        total = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g))
        assert total.is_zero()

    def localisation(a, s, b, t):
        assert localization_consistency(a, s, b, t)

    counts = {
        "antisymmetry": _count_samples(antisymmetry, ratfns(2, **small), ratfns(2, **small)),
        "leibniz": _count_samples(leibniz, ratfns(2, **small), ratfns(2, **small), ratfns(2, **small)),
        "jacobi": _count_samples(jacobi, ratfns(2, max_terms=2, max_deg=2), ratfns(2, max_terms=2, max_deg=2),
                                 ratfns(2, max_terms=2, max_deg=2)),
        "localisation": _count_samples(localisation, polys(2, **small), nonzero_polys(2, **small),
                                       polys(2, **small), nonzero_polys(2, **small)),
    }
    elapsed = time.perf_counter() - start
    assert all(c >= _SAMPLES for c in counts.values()), counts
    assert elapsed < 60.0, f"{elapsed:.1f}s"


CRITERION_GROUPS = [symmetric_group(n) for n in (2, 3, 4)] + [complex_reflection_group(*t) for t in GMPN]


def test_criterion_7_jacobian_power():
    for g in CRITERION_GROUPS:
        jd = jacobian(fundamental_invariants(g))
        k = jd.sigma_min_exponent
        assert is_invariant(jd.J ** k, g), g.name
        assert classical_sigma_exponent(g) % k == 0, g.name
    s2 = fundamental_invariants(symmetric_group(2))
    jd = jacobian(s2)
    e1, e2 = Poly.y(2, 1), Poly.y(2, 2)
    P = express_in_invariants(jd.J ** 2, s2)
    assert P == e1 ** 2 - 4 * e2
    back = substitute(P, {Y(j + 1): RatFn(e) for j, e in enumerate(s2.invs)})
    assert back == RatFn(jd.J ** 2)


def test_criterion_8_negative_controls(tmp_path):
    out = io.StringIO()
    assert run(["construct", "Sn(n=3)"], out, io.StringIO()) == 0
    cert = json.loads(out.getvalue())
    mutations = sample_mutations(cert, 20, seed=2024)
    assert len(mutations) == 20
    for k, (site, bad) in enumerate(mutations):
        path = tmp_path / f"m{k}.json"
        path.write_text(json.dumps(bad))
        report = io.StringIO()
        code = run(["verify", str(path)], report, io.StringIO())
        assert code == 1, site
        assert report.getvalue().startswith("FAIL "), site


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
