"""Field construction, arithmetic axioms, and the spec syntax."""

import pytest
from hypothesis import given, strategies as st

from orbitstat.finite_field import (
    FieldCtx,
    enumerate_elements,
    format_field_spec,
    is_prime,
    make_field,
    parse_field_spec,
    prime_power,
)

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)
F5 = make_field(5)
F8 = make_field(2, 3)
F9 = make_field(3, 2)
SMALL_FIELDS = (F2, F3, F4, F5, F8, F9)


def test_is_prime_small_values():
    primes = [n for n in range(2, 60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_prime_power_decomposition():
    assert prime_power(2) == (2, 1)
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(1024) == (2, 10)
    for bad in (1, 6, 12, 100):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_default_moduli_are_the_first_irreducibles():
    # lexicographic order on (c0, ..., c_{e-1}), constant coefficient first
    assert F4.modulus == (1, 1, 1)  # t^2 + t + 1
    assert F8.modulus == (1, 0, 1, 1)  # t^3 + t^2 + 1
    assert F9.modulus == (1, 0, 1)  # t^2 + 1


def test_element_enumeration_order():
    # index = c0 + c1*p + ..., so the constant coordinate moves fastest
    elems = list(enumerate_elements(F4))
    assert [a.coeffs for a in elems] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    for i, a in enumerate(elems):
        assert F4.element_index(a) == i
        assert F4.element_from_index(i) == a


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError):
        make_field(4)
    with pytest.raises(ValueError):
        make_field(6)
    with pytest.raises(ValueError):
        make_field(2, 17)  # 2^17 > 2^16
    with pytest.raises(ValueError):
        make_field(2, 1, modulus=(1, 1))  # modulus only for extensions
    with pytest.raises(ValueError):
        make_field(2, 2, modulus=(1, 1))  # wrong length
    with pytest.raises(ValueError):
        make_field(2, 2, modulus=(0, 0, 1))  # reducible: t^2
    with pytest.raises(ValueError):
        make_field(2, 2, modulus=(1, 1, 0))  # not monic


def test_alternate_modulus_is_accepted():
    # t^2 + t + 2 is irreducible over F_3
    k = make_field(3, 2, modulus=(2, 1, 1))
    t = k.element((0, 1))
    assert (t * t).coeffs == (1, 2)  # t^2 = -t - 2 = 2t + 1 over F_3


def test_field_axioms_exhaustively_on_f8():
    elems = list(enumerate_elements(F8))
    zero, one = F8.zero(), F8.one()
    for a in elems:
        assert a + zero == a and a * one == a
        assert a - a == zero
        if not a.is_zero:
            assert a * a.inverse() == one
    for a in elems:
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
    for a in elems[:4]:
        for b in elems:
            for c in elems:
                assert (a + b) + c == a + (b + c)
                assert a * (b + c) == a * b + a * c


@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_fermat_little_theorem(ctx, data):
    idx = data.draw(st.integers(1, ctx.q - 1))
    a = ctx.element_from_index(idx)
    assert a ** (ctx.q - 1) == ctx.one()
    assert a ** ctx.q == a


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_prime_field_matches_integer_arithmetic(x, y):
    p = 13
    k = make_field(p)
    a, b = k.from_int(x), k.from_int(y)
    assert a + b == k.from_int((x + y) % p)
    assert a * b == k.from_int((x * y) % p)
    assert a - b == k.from_int((x - y) % p)


def test_int_operands_coerce():
    a = F5.from_int(3)
    assert a + 4 == F5.from_int(2)
    assert 2 * a == F5.from_int(1)
    assert a - 1 == F5.from_int(2)


def test_power_edge_cases():
    t = F4.element((0, 1))
    assert t ** 0 == F4.one()
    assert F4.zero() ** 0 == F4.one()
    with pytest.raises(ValueError):
        t ** -1
    with pytest.raises(ZeroDivisionError):
        F4.zero().inverse()


def test_str_forms():
    assert str(F5.from_int(3)) == "3"
    assert str(F4.element((1, 1))) == "[1,1]"


def test_mixed_field_operations_rejected():
    with pytest.raises((ValueError, TypeError)):
        F2.one() + F3.one()


def test_parse_field_spec_forms():
    assert parse_field_spec("q=2") == F2
    assert parse_field_spec("q=2^2") == F4
    assert parse_field_spec("q=4") == F4  # plain prime powers resolve
    assert parse_field_spec("q=3^2;mod=[1,0,1]") == F9
    k = parse_field_spec("q=3^2;mod=[2,1,1]")
    assert k.modulus == (2, 1, 1)
    with pytest.raises(ValueError):
        parse_field_spec("4")
    with pytest.raises(ValueError):
        parse_field_spec("q=6")


@given(st.sampled_from(SMALL_FIELDS))
def test_format_round_trips(ctx):
    assert parse_field_spec(format_field_spec(ctx)) == ctx


def test_equal_parameters_give_interchangeable_contexts():
    """Two independently built fields with the same (p, e, modulus) are equal,
    so their elements interoperate."""
    k1 = make_field(2, 2)
    k2 = make_field(2, 2)
    assert k1 == k2 and isinstance(k1, FieldCtx)
    assert k1.element((0, 1)) + k2.element((1, 1)) == k1.one()
