import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkdim.hilbert import (
    InsufficientDataError,
    NotAHilbertSeriesError,
    RationalSeries,
    UndefinedSeriesError,
    denominator_hypotheses,
    expand,
    fit_numerator,
    free_ring_series,
    gkdim_from_series,
    growth_exponent,
    parse_series,
    pole_multiplicity_at_one,
    search_fit,
    series_divide_by_free_ring,
    series_product,
    times_one_minus,
)
from gkdim.spandim import growth_table


def convolve(a, b, N):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(N + 1)]


def test_expand_examples():
    assert expand(RationalSeries((1,), (1,)), 4) == [1] * 5
    assert expand(RationalSeries((1,), (2, 2, 2)), 6) == [1, 0, 3, 0, 6, 0, 10]
    assert expand(RationalSeries((1, 2, 1), (2, 2, 2)), 6) == [1, 2, 4, 6, 9, 12, 16]
    # closed form C(k+2, 2) at even degrees
    assert expand(RationalSeries((1,), (2, 2, 2)), 40)[::2] == [math.comb(k + 2, 2) for k in range(21)]


def test_pole_examples():
    assert pole_multiplicity_at_one(RationalSeries((1,), (1, 1, 1))) == 3
    assert pole_multiplicity_at_one(RationalSeries((1, -1), (1, 1))) == 1
    assert pole_multiplicity_at_one(RationalSeries((1,), (2, 2, 2))) == 3
    with pytest.raises(UndefinedSeriesError):
        pole_multiplicity_at_one(RationalSeries((), (1,)))


def test_gkdim_examples():
    # a series with pole order 5 at t = 1, e.g. 1/((1-t)^2 (1-t^2)^3)
    assert gkdim_from_series(RationalSeries((1,), (1, 1, 2, 2, 2))) == 5
    assert gkdim_from_series(RationalSeries((1, 3, 1), ())) == 0
    assert gkdim_from_series(parse_series("2t + (t^2+2t^3)/((1-t^2)^3)")) == 3
    with pytest.raises(NotAHilbertSeriesError):
        gkdim_from_series(RationalSeries((1, -2), ()))


def test_product_and_division():
    p = series_product(free_ring_series(2), RationalSeries((1,), (2, 2, 2)))
    assert p.factors == (1, 1, 2, 2, 2)
    assert series_divide_by_free_ring(p, 2) == RationalSeries((1,), (2, 2, 2))
    w = RationalSeries((1, 2, 1), (2, 2, 2))
    assert series_divide_by_free_ring(series_product(w, free_ring_series(3)), 3) == w
    # no (1 - t) factor: the numerator absorbs it
    q = series_divide_by_free_ring(RationalSeries((1,), (2,)), 1)
    assert series_product(q, free_ring_series(1)).same_function(RationalSeries((1,), (2,)))
    assert expand(q, 6) == [1, -1, 1, -1, 1, -1, 1]


def test_c22_over_free_ring_is_c22_traceless():
    c = growth_table("trace", 2, 4).coefficients()
    c0 = growth_table("trace0", 2, 4).coefficients()
    h = fit_numerator(c, (1, 1, 2, 2, 2), guard=0)
    assert expand(series_divide_by_free_ring(h, 2), 4) == c0


@pytest.mark.parametrize("algebra,depth", [("trace", 6), ("mixed", 5)])
def test_full_trace_algebras_have_pole_order_five(algebra, depth):
    # k^2 (m - 1) + 1 = 5 for k = m = 2
    fit = fit_numerator(growth_table(algebra, 2, depth), (1, 1, 2, 2, 2), guard=2)
    assert fit is not None and pole_multiplicity_at_one(fit) == 5


def test_fit_examples():
    assert fit_numerator([1] * 6, (1,)) == RationalSeries((1,), (1,))
    w = growth_table("assoc", 2, 8)
    fit = fit_numerator(w, (2, 2, 2))
    assert fit == RationalSeries((1, 2, 1), (2, 2, 2))
    assert fit_numerator([1, 1, 2, 3, 5], (1,)) is None
    with pytest.raises(InsufficientDataError):
        fit_numerator([1], (1,), guard=2)


def test_hypothesis_order():
    hyps = denominator_hypotheses(3, 1)
    assert hyps[0] == ()
    assert hyps[1:3] == [(2,), (3,)]
    assert [len(h) for h in hyps] == sorted(len(h) for h in hyps)
    assert search_fit(growth_table("trace0", 2, 8), denominator_hypotheses(3, 0)) == RationalSeries((1,), (2, 2, 2))


def test_growth_exponent_examples():
    assert growth_exponent([1] * 200).exponent == pytest.approx(1.0, abs=0.01)
    est = growth_exponent(expand(RationalSeries((1,), (2, 2, 2)), 40))
    assert abs(est.exponent - 3) < 0.35
    assert est.method == "log-partial-sums" and est.window == (20, 40)
    assert growth_exponent([1, 2, 3, 0, 0, 0, 0, 0, 0]).exponent == 0
    fd = growth_exponent(expand(RationalSeries((1,), (2, 2, 2)), 40), method="finite-differences", stride=2)
    assert fd.exponent == 3
    with pytest.raises(InsufficientDataError):
        growth_exponent([1, 2, 3], window=(5, 9))


def test_parse_series():
    s = parse_series("(1+2t+t^2)/((1-t^2)^3)")
    assert s == RationalSeries((1, 2, 1), (2, 2, 2))
    assert parse_series("1/((1-t)^2*(1-t^3))").factors == (1, 1, 3)
    assert parse_series("3/2*t^4 - t").numerator[4] == pytest.approx(1.5)
    with pytest.raises(ValueError):
        parse_series("1/(1+t)")


# -- properties ------------------------------------------------------------------

numerators = st.lists(st.integers(-3, 5), min_size=1, max_size=5).filter(any)
factor_sets = st.lists(st.integers(1, 4), max_size=4)


@settings(max_examples=80, deadline=None)
@given(numerators, factor_sets, numerators, factor_sets)
def test_expand_of_product_is_convolution(na, fa, nb, fb):
    a, b = RationalSeries(tuple(na), tuple(fa)), RationalSeries(tuple(nb), tuple(fb))
    N = 15
    assert expand(series_product(a, b), N) == convolve(expand(a, N), expand(b, N), N)


@settings(max_examples=80, deadline=None)
@given(numerators, factor_sets, st.integers(1, 4))
def test_pole_order_invariant_under_common_factor(num, fs, d):
    a = RationalSeries(tuple(num), tuple(fs))
    b = RationalSeries(tuple(times_one_minus(num, d)), tuple(fs) + (d,))
    assert expand(a, 20) == expand(b, 20)
    assert pole_multiplicity_at_one(a) == pole_multiplicity_at_one(b)


@settings(max_examples=60, deadline=None)
@given(numerators, factor_sets)
def test_fit_recovers_series(num, fs):
    s = RationalSeries(tuple(num), tuple(fs))
    fit = fit_numerator(expand(s, len(num) + 3), fs, guard=2)
    assert fit is not None and fit.same_function(s)


def test_quasi_polynomial_coefficient_bound():
    # pole order 3, so a_n = O(n^2); C = 1 covers the whole range
    a = expand(RationalSeries((1,), (2, 2, 2)), 200)
    C = 1
    assert all(a[n] <= C * n**2 for n in range(1, 201))
    w = expand(RationalSeries((1, 2, 1), (2, 2, 2)), 200)
    assert all(w[n] <= C * n**2 for n in range(2, 201))
