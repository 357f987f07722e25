"""Polynomial arithmetic, irreducibility, enumeration, and factoring.

The irreducibility oracle here is deliberate brute force: trial division by
every lower-degree monic polynomial, built straight from coefficient tuples.
It shares no code with the sieve or with the Frobenius test it checks.
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from orbitstat.errors import CapExceeded
from orbitstat.finite_field import make_field
from orbitstat.polynomial import (
    Poly,
    count_irreducibles,
    divisors,
    enumerate_irreducibles,
    enumerate_monic,
    factor,
    format_poly,
    is_irreducible,
    monic_from_index,
    necklace_check,
    parse_poly,
    poly_gcd,
    poly_sort_key,
    pow_mod,
)

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)
F5 = make_field(5)
F9 = make_field(3, 2)


def brute_monic(d, ctx):
    """All monic degree-d polynomials, from raw coefficient tuples."""
    for lower in itertools.product(range(ctx.q), repeat=d):
        coeffs = [ctx.element_from_index(i) for i in lower] + [ctx.one()]
        yield Poly(ctx, coeffs)


def brute_irreducible(f):
    """Trial division by every monic polynomial of smaller positive degree."""
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for g in brute_monic(d, f.ctx):
            if g.divides(f):
                return False
    return True


def polys(ctx, max_deg=6):
    return st.lists(
        st.integers(0, ctx.q - 1), min_size=0, max_size=max_deg + 1
    ).map(lambda idxs: Poly(ctx, [ctx.element_from_index(i) for i in idxs]))


# -- arithmetic --------------------------------------------------------------

@given(polys(F5), polys(F5), polys(F5))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)


@given(polys(F3), polys(F3))
def test_divmod_invariant(f, g):
    if g.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(f, g)
        return
    q, r = divmod(f, g)
    assert f == q * g + r
    assert r.is_zero or r.degree < g.degree


@given(polys(F4, 5), polys(F4, 5))
def test_gcd_divides_both_and_is_monic(f, g):
    d = poly_gcd(f, g)
    if f.is_zero and g.is_zero:
        assert d.is_zero
        return
    assert d.is_monic
    assert d.divides(f) and d.divides(g)


@given(polys(F2, 4), polys(F2, 4), polys(F2, 3))
def test_gcd_scales_with_common_factor(f, g, h):
    if h.is_zero or (f.is_zero and g.is_zero):
        return
    assert poly_gcd(f * h, g * h) == poly_gcd(f, g) * h.monic()


@given(polys(F5, 5), polys(F5, 5))
def test_derivative_product_rule(f, g):
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@given(polys(F9, 4), st.integers(0, 8))
def test_evaluation_is_a_homomorphism(f, idx):
    a = F9.element_from_index(idx)
    g = Poly.x(F9) + Poly.one(F9)
    assert (f * g).evaluate(a) == f.evaluate(a) * g.evaluate(a)
    assert (f + g).evaluate(a) == f.evaluate(a) + g.evaluate(a)


def test_pow_mod_matches_naive():
    m = parse_poly("t^3+t+1", F2)
    b = parse_poly("t^2+1", F2)
    for e in range(0, 20):
        assert pow_mod(b, e, m) == (b ** e) % m


# -- parsing and formatting --------------------------------------------------

def test_parse_forms():
    assert parse_poly("t^2+t+1", F2) == Poly(F2, (1, 1, 1))
    assert parse_poly("[1,1,1]", F2) == Poly(F2, (1, 1, 1))
    assert parse_poly("2*t^3+1", F5) == Poly(F5, (1, 0, 0, 2))
    assert parse_poly("t^2-t", F3) == Poly(F3, (0, 2, 1))
    assert parse_poly("0", F2).is_zero
    # extension coefficients in brackets
    f = parse_poly("t^2+[0,1]*t+[1,1]", F4)
    assert f.coeffs == (F4.element((1, 1)), F4.element((0, 1)), F4.one())
    assert parse_poly("[[1,1],[0,1],[1,0]]", F4).coeffs == (
        F4.element((1, 1)),
        F4.element((0, 1)),
        F4.one(),
    )


def test_parse_rejects_garbage():
    for bad in ("", "t^", "x+1", "t**2", "[1,1", "t^-1"):
        with pytest.raises(ValueError):
            parse_poly(bad, F2)


@given(polys(F3, 6))
def test_format_parse_round_trip(f):
    assert parse_poly(format_poly(f), F3) == f


@given(polys(F4, 4))
def test_format_parse_round_trip_extension(f):
    assert parse_poly(format_poly(f), F4) == f


def test_format_examples():
    assert format_poly(parse_poly("t^2+t+1", F2)) == "t^2+t+1"
    assert format_poly(Poly.zero(F2)) == "0"
    assert format_poly(Poly(F5, (3,))) == "3"
    assert format_poly(Poly(F5, (1, 2))) == "2*t+1"


# -- enumeration order -------------------------------------------------------

def test_monic_enumeration_order():
    names = [format_poly(f) for f in enumerate_monic(2, F2)]
    assert names == ["t^2", "t^2+1", "t^2+t", "t^2+t+1"]
    for d in (0, 1, 3):
        fs = list(enumerate_monic(d, F3))
        assert len(fs) == 3 ** d
        assert all(f.is_monic and f.degree == d for f in fs)
        assert [monic_from_index(d, F3, i) for i in range(len(fs))] == fs


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert divisors(7) == [1, 7]


# -- irreducibility: three routes --------------------------------------------

@pytest.mark.parametrize(
    "ctx,dmax",
    [(F2, 6), (F3, 4), (F4, 3)],
    ids=["F2", "F3", "F4"],
)
def test_irreducibility_routes_agree(ctx, dmax):
    """Frobenius criterion == sieve membership == trial division."""
    for d in range(1, dmax + 1):
        sieve = set(enumerate_irreducibles(d, ctx))
        for f in brute_monic(d, ctx):
            expected = brute_irreducible(f)
            assert is_irreducible(f) == expected, format_poly(f)
            assert (f in sieve) == expected, format_poly(f)
        assert count_irreducibles(d, ctx) == len(sieve)


def test_irreducible_counts_frozen():
    assert [count_irreducibles(d, F2) for d in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert count_irreducibles(2, F4) == 6
    assert count_irreducibles(3, F3) == 8
    assert count_irreducibles(1, F5) == 5


def test_irreducibles_are_sorted_and_monic():
    for d in (1, 2, 3):
        fs = list(enumerate_irreducibles(d, F3))
        assert fs == sorted(fs, key=poly_sort_key)
        assert all(f.is_monic and f.degree == d for f in fs)


def test_frobenius_test_reaches_beyond_the_sieve():
    # x^31 + x^3 + 1 is a classic irreducible trinomial; 2^31 is far past
    # what enumeration could touch
    f = parse_poly("t^31+t^3+1", F2)
    assert is_irreducible(f)
    assert not is_irreducible(f * parse_poly("t+1", F2))


def test_enumeration_guard():
    with pytest.raises(CapExceeded):
        list(enumerate_irreducibles(24, F2))  # 2^24 > the sieve budget


def test_is_irreducible_edge_cases():
    assert not is_irreducible(Poly.one(F2))
    assert not is_irreducible(Poly.zero(F2))
    assert not is_irreducible(Poly.constant(F5, 3))
    assert is_irreducible(parse_poly("t", F2))
    assert not is_irreducible(parse_poly("t^2", F2))


def test_necklace_identity_small():
    for ctx in (F2, F3, F4):
        for k in range(1, 5):
            res = necklace_check(k, ctx)
            assert res.equal
            assert res.rhs == ctx.q ** k


# -- factoring ---------------------------------------------------------------

def test_factor_frozen_examples():
    f = parse_poly("t^4+t", F2)
    fac = factor(f)
    assert [(format_poly(p), r) for p, r in fac.factors] == [
        ("t", 1),
        ("t+1", 1),
        ("t^2+t+1", 1),
    ]
    assert fac.unit == F2.one()
    assert fac.is_squarefree
    assert fac.expand() == f

    g = parse_poly("t^2+t+1", F2)
    fac2 = factor(g * g)
    assert [(format_poly(p), r) for p, r in fac2.factors] == [("t^2+t+1", 2)]
    assert not fac2.is_squarefree
    assert fac2.max_multiplicity == 2


def test_factor_t9_minus_t_over_f3():
    # the product of all monic irreducibles of degree dividing 2
    f = parse_poly("t^9+2*t", F3)
    fac = factor(f)
    assert [format_poly(p) for p, _ in fac.factors] == [
        "t",
        "t+1",
        "t+2",
        "t^2+1",
        "t^2+t+2",
        "t^2+2*t+2",
    ]
    assert all(r == 1 for _, r in fac.factors)


def test_factor_pulls_out_the_unit():
    f = parse_poly("2*t^2+2", F3)  # 2 * (t^2 + 1)
    fac = factor(f)
    assert fac.unit == F3.from_int(2)
    assert [format_poly(p) for p, _ in fac.factors] == ["t^2+1"]
    assert fac.expand() == f


def test_factor_inseparable_power():
    # derivative vanishes: t^6+t^4+t^2 = (t^3+t^2+t)^2 over F_2
    f = parse_poly("t^6+t^4+t^2", F2)
    fac = factor(f)
    assert fac.expand() == f
    assert [(format_poly(p), r) for p, r in fac.factors] == [
        ("t", 2),
        ("t^2+t+1", 2),
    ]


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        factor(Poly.zero(F2))


def test_factor_of_constant_is_empty():
    fac = factor(Poly.constant(F3, 2))
    assert fac.factors == ()
    assert fac.unit == F3.from_int(2)


@pytest.mark.parametrize("ctx,dmax", [(F2, 6), (F3, 4)], ids=["F2", "F3"])
def test_factor_round_trip_exhaustive(ctx, dmax):
    for d in range(1, dmax + 1):
        for f in enumerate_monic(d, ctx):
            fac = factor(f)
            assert fac.expand() == f
            assert all(is_irreducible(p) for p, _ in fac.factors)
            assert all(r >= 1 for _, r in fac.factors)
            keys = [poly_sort_key(p) for p, _ in fac.factors]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)


@settings(max_examples=60, deadline=None)
@given(polys(F4, 7))
def test_factor_round_trip_random_extension(f):
    if f.is_zero:
        return
    fac = factor(f)
    assert fac.expand() == f
    assert all(is_irreducible(p) for p, _ in fac.factors)


@settings(max_examples=40, deadline=None)
@given(polys(F5, 8))
def test_factor_round_trip_random_f5(f):
    if f.is_zero:
        return
    fac = factor(f)
    assert fac.expand() == f
    assert all(p.is_monic for p, _ in fac.factors)
