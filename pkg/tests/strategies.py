"""Hypothesis strategies for cyclotomic scalars, polynomials and rational functions."""

from fractions import Fraction

from hypothesis import strategies as st

from poisson_noether.coeff import CycRat, euler_phi
from poisson_noether.multipoly import Poly
from poisson_noether.ratfunc import RatFn

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=5),
)


def cycrats(m: int):
    return st.lists(small_fractions, min_size=euler_phi(m), max_size=euler_phi(m)).map(
        lambda coords: CycRat(conductor=m, coords=coords)
    )


def polys(rank: int, max_terms: int = 4, max_deg: int = 2, coeffs=None):
    coeffs = coeffs or st.integers(min_value=-5, max_value=5)
    exps = st.tuples(*[st.integers(min_value=0, max_value=max_deg)] * (2 * rank))
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda t: Poly.from_terms(rank, t))


def nonzero_polys(rank: int, **kw):
    return polys(rank, **kw).filter(lambda p: not p.is_zero())


def ratfns(rank: int, **kw):
    return st.builds(lambda a, b: RatFn(a, b), polys(rank, **kw), nonzero_polys(rank, max_terms=3, max_deg=1))
