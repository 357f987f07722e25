"""Divisibility symbols: the formal algebra, evaluation, and averages.

The central trap this file guards: the product of symbols multiplies the
subscripts, but evaluation at a fixed polynomial is not multiplicative, so
expansions must happen in the algebra before any evaluation.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitstat.charpoly import NilSeries
from orbitstat.division_algebra import (
    SymbolSum,
    evaluate_on_poly,
    expectation_epsilon,
    expectation_epsilon_oracle,
    lambda_map,
    phi_eps,
)
from orbitstat.errors import CapExceeded
from orbitstat.finite_field import make_field
from orbitstat.polynomial import Poly, enumerate_monic, parse_poly, poly_gcd

F2 = make_field(2)
F3 = make_field(3)

T = parse_poly("t", F2)
T1 = parse_poly("t+1", F2)


def monics(ctx, dmax):
    return st.integers(0, dmax).flatmap(
        lambda d: st.integers(0, ctx.q ** d - 1).map(
            lambda i: list(enumerate_monic(d, ctx))[i]
        )
    )


def test_symbol_product_multiplies_subscripts():
    a = SymbolSum.symbol(T)
    b = SymbolSum.symbol(T1)
    prod = a.mul(b)
    assert prod.terms == {T * T1: Fraction(1)}


def test_symbols_require_monic_keys():
    with pytest.raises(ValueError):
        SymbolSum.symbol(parse_poly("2*t", F3))
    with pytest.raises(ValueError):
        SymbolSum.symbol(Poly.zero(F2))


def test_linearity_and_scalars():
    s = 3 * SymbolSum.symbol(T) - SymbolSum.symbol(T1)
    assert s.terms[T] == 3
    assert s.terms[T1] == -1
    assert (s - s).terms == {}


def test_pow_matches_repeated_mul():
    s = SymbolSum.symbol(T) + 2 * SymbolSum.symbol(T1)
    by_mul = SymbolSum.one(F2)
    for _ in range(4):
        by_mul = by_mul.mul(s)
    assert s.pow(4).terms == by_mul.terms
    assert s.pow(0).terms == SymbolSum.one(F2).terms


def test_evaluation_is_divisibility():
    f = parse_poly("t^3+t", F2)  # t * (t+1)^2
    assert SymbolSum.symbol(T).evaluate(f) == 1
    assert SymbolSum.symbol(T1 * T1).evaluate(f) == 1
    assert SymbolSum.symbol(T * T).evaluate(f) == 0
    s = SymbolSum.symbol(T, 3) + SymbolSum.symbol(T * T, 5)
    assert s.evaluate(f) == 3
    assert evaluate_on_poly(s, f) == 3


def test_evaluation_is_not_termwise_multiplicative():
    """[t^2 | t^2+t] = 0 even though [t | t^2+t] = 1 twice over."""
    f = T * T1
    et = SymbolSum.symbol(T)
    assert et.evaluate(f) * et.evaluate(f) == 1
    assert et.mul(et).evaluate(f) == 0


def test_evaluation_is_multiplicative_on_coprime_subscripts():
    for dg in range(0, 3):
        for g in enumerate_monic(dg, F2):
            for dh in range(0, 3):
                for h in enumerate_monic(dh, F2):
                    if poly_gcd(g, h).degree != 0:
                        continue
                    for df in range(0, 5):
                        for f in enumerate_monic(df, F2):
                            both = SymbolSum.symbol(g * h).evaluate(f)
                            split = SymbolSum.symbol(g).evaluate(
                                f
                            ) * SymbolSum.symbol(h).evaluate(f)
                            assert both == split


def test_evaluate_rejects_zero_and_foreign_fields():
    s = SymbolSum.symbol(T)
    with pytest.raises(ValueError):
        s.evaluate(Poly.zero(F2))
    with pytest.raises(ValueError):
        s.evaluate(parse_poly("t", F3))


def test_parse_round_trip():
    s = SymbolSum.parse("3*eps(t^2+t) + 1/2*eps(t) - eps(1)", F2)
    assert s.terms[parse_poly("t^2+t", F2)] == 3
    assert s.terms[T] == Fraction(1, 2)
    assert s.terms[Poly.one(F2)] == -1
    assert SymbolSum.parse(str(s), F2).terms == s.terms
    with pytest.raises(ValueError):
        SymbolSum.parse("eps(2*t)", F3)  # keys must be monic


def test_term_cap_guards_products():
    many = SymbolSum(
        F2, {f: Fraction(1) for f in enumerate_monic(10, F2)}
    )
    assert len(many.terms) == 1024
    with pytest.raises(CapExceeded, match="factored"):
        many.mul(many, term_cap=10 ** 6)


# -- the nilpotent collapse --------------------------------------------------

def test_lambda_map_sends_degree_to_eps_power():
    a = SymbolSum.symbol(T * T1, 6)  # degree 2
    series = lambda_map(a, 4)
    assert series.coefficient((2,)) == Fraction(6, 4)  # 6 / q^2
    assert series.coefficient((1,)) == 0


def test_lambda_map_truncates_high_degrees():
    a = SymbolSum.symbol(parse_poly("t^5+t+1", F2))
    assert lambda_map(a, 4) == NilSeries.constant((5,), 0)


@settings(max_examples=25, deadline=None)
@given(monics(F2, 3), monics(F2, 3))
def test_lambda_map_is_multiplicative(g, h):
    n = 8
    a, b = SymbolSum.symbol(g), SymbolSum.symbol(h)
    assert lambda_map(a.mul(b), n) == lambda_map(a, n) * lambda_map(b, n)


@settings(max_examples=25, deadline=None)
@given(monics(F3, 3), st.integers(0, 4))
def test_phi_after_lambda_is_the_expectation(g, n):
    a = SymbolSum.symbol(g, 7)
    assert phi_eps(lambda_map(a, n)) == 7 * expectation_epsilon(g, n)


# -- averages ----------------------------------------------------------------

def test_expectation_closed_form():
    assert expectation_epsilon(T, 3) == Fraction(1, 2)
    assert expectation_epsilon(parse_poly("t^2+t+1", F2), 3) == Fraction(1, 4)
    assert expectation_epsilon(parse_poly("t^4", F2), 3) == 0
    assert expectation_epsilon(Poly.one(F2), 0) == 1


def test_expectation_matches_oracle_small():
    for q, ctx in ((2, F2), (3, F3)):
        for n in range(0, 4):
            for dg in range(0, n + 2):
                for g in enumerate_monic(dg, ctx):
                    assert expectation_epsilon(g, n) == expectation_epsilon_oracle(
                        g, n
                    ), (q, str(g), n)
