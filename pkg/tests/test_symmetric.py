"""Permutations, cycle types, block cosets, and their enumerations.

The coset oracle here rebuilds membership from scratch: h lies in H exactly
when it permutes each block's copies while fixing the copy coordinate, so the
histogram of tau*H can be computed by filtering the whole symmetric group.
"""

import math
from itertools import permutations as iterperms

import pytest
from hypothesis import given, strategies as st

from orbitstat.errors import CapExceeded
from orbitstat.symmetric import (
    CosetSpec,
    MultiIndex,
    Permutation,
    conjugacy_class_size,
    cycle_type,
    enumerate_h_structured,
    enumerate_sn,
    h_structured_at,
    m_projection,
    multi_indices_up_to,
    partitions,
    permutation_at,
    spec_embed,
    structured_to_permutation,
)

P_COUNTS = {0: 1, 1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11, 7: 15, 8: 22}


def perms(n):
    return st.permutations(range(n)).map(lambda xs: Permutation(tuple(xs)))


# -- permutations ------------------------------------------------------------

def test_composition_applies_right_factor_first():
    a = Permutation((1, 0, 2))  # swap 0,1
    b = Permutation((0, 2, 1))  # swap 1,2
    ab = a * b
    assert ab(1) == a(b(1)) == 2
    assert ab.images == (1, 2, 0)


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation((0, 2))


@given(perms(6))
def test_inverse(a):
    assert a * a.inverse() == Permutation.identity(6)
    assert a.inverse() * a == Permutation.identity(6)


@given(perms(5), perms(5), perms(5))
def test_composition_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


def test_cycles_and_cycle_type():
    s = Permutation((1, 0, 3, 4, 2, 5))
    assert s.cycles() == [(0, 1), (2, 3, 4), (5,)]
    assert s.cycle_type() == MultiIndex.from_dict({1: 1, 2: 1, 3: 1})
    assert cycle_type(Permutation.identity(4)) == MultiIndex.from_dict({1: 4})


@given(perms(6), perms(6))
def test_cycle_type_is_a_conjugacy_invariant(a, g):
    assert cycle_type(g * a * g.inverse()) == cycle_type(a)


def test_enumerate_sn_is_lexicographic():
    s3 = list(enumerate_sn(3))
    assert [p.images for p in s3] == [
        (0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)
    ]
    for i, p in enumerate(s3):
        assert permutation_at(3, i) == p


def test_enumerate_sn_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_sn(12, cap=10 ** 6))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_conjugacy_class_sizes_partition_the_group(n):
    total = 0
    for mu in partitions(n):
        size = conjugacy_class_size(mu, n)
        brute = sum(1 for s in enumerate_sn(n) if s.cycle_type() == mu)
        assert size == brute
        total += size
    assert total == math.factorial(n)


# -- multi-indices -----------------------------------------------------------

def test_multi_index_parse_and_str():
    mu = MultiIndex.parse("2:1,1:2")
    assert mu == MultiIndex.from_dict({1: 2, 2: 1})
    assert str(mu) == "1:2,2:1"
    assert mu.norm == 4
    assert mu.get(1) == 2 and mu.get(7) == 0
    assert MultiIndex.parse("mu=3:1").norm == 3
    assert MultiIndex.parse("") == MultiIndex()
    with pytest.raises(ValueError):
        MultiIndex.parse("2")
    with pytest.raises(ValueError):
        MultiIndex.parse("0:1")


def test_partition_counts():
    for n, want in P_COUNTS.items():
        assert sum(1 for _ in partitions(n)) == want
    assert sum(1 for _ in multi_indices_up_to(6)) == sum(
        P_COUNTS[j] for j in range(7)
    )


def test_partitions_have_the_right_norm():
    for mu in partitions(6):
        assert mu.norm == 6


# -- block specs -------------------------------------------------------------

def test_spec_parse_sorts_blocks():
    spec = CosetSpec.parse("2^1,1^2")
    assert spec.blocks == ((1, 2), (2, 1))
    assert str(spec) == "1^2,2^1"
    assert spec.n == 4
    assert spec.order_h() == 2  # 2!^1 * 1!^2
    assert CosetSpec.parse("blocks=3^2").order_h() == 2 ** 3


def test_spec_rejects_bad_blocks():
    with pytest.raises(ValueError):
        CosetSpec(((0, 1),))
    with pytest.raises(ValueError):
        CosetSpec(((1, 0),))
    with pytest.raises(ValueError):
        CosetSpec.parse("1,2")


def test_tau_frozen_examples():
    # a single block of degree 2 with one copy: tau swaps the two points
    assert CosetSpec(((2, 1),)).tau().images == (1, 0)
    # degree 3: a 3-cycle on the flattened points
    assert CosetSpec(((3, 1),)).tau().images == (1, 2, 0)
    # two copies of degree 2: independent swaps per copy
    assert CosetSpec(((2, 2),)).tau().images == (1, 0, 3, 2)
    # degree-1 blocks contribute fixed points
    assert CosetSpec(((1, 2),)).tau() == Permutation.identity(2)


def test_tau_cycle_type():
    spec = CosetSpec(((1, 2), (2, 1), (3, 1)))
    assert cycle_type(spec.tau()) == MultiIndex.from_dict({1: 2, 2: 1, 3: 1})


def test_h_enumeration_counts_and_indexing():
    for text in ("1^2", "2^2", "1^2,2^1", "3^1,1^3"):
        spec = CosetSpec.parse(text)
        hs = list(enumerate_h_structured(spec))
        assert len(hs) == spec.order_h()
        assert len(set(hs)) == len(hs)
        for i in (0, len(hs) // 2, len(hs) - 1):
            assert h_structured_at(spec, i) == hs[i]
        for h in hs:
            perm = structured_to_permutation(spec, h)
            assert perm.n == spec.n


# -- the coset, against a from-scratch membership test -----------------------

def membership_histogram(spec):
    """Cycle types of tau*sigma for sigma in H, with H recognized point by
    point: a permutation lies in H iff it maps every point (i, j, k) to a
    point with the same block i and the same position k."""
    coords = []
    for i, (d, r) in enumerate(spec.blocks):
        for j in range(r):
            for k in range(d):
                coords.append((i, k))
    n = spec.n
    tau = spec.tau()
    hist = {}
    for images in iterperms(range(n)):
        if any(coords[x] != coords[y] for x, y in enumerate(images)):
            continue
        ct = cycle_type(tau * Permutation(images))
        hist[ct] = hist.get(ct, 0) + 1
    return hist


@pytest.mark.parametrize(
    "text", ["1^2", "2^1", "1^2,2^1", "2^2", "1^3", "3^2", "1^1,1^1,2^1", "2^1,3^1"]
)
def test_coset_matches_membership_filter(text):
    spec = CosetSpec.parse(text)
    expected = membership_histogram(spec)
    got = {}
    hs, tau = spec_embed(spec)
    for h in hs:
        ct = cycle_type(tau * h)
        got[ct] = got.get(ct, 0) + 1
    assert got == expected


def test_spec_embed_sizes():
    hs, tau = spec_embed(CosetSpec.parse("1^2,2^2"))
    assert len(hs) == 2 * 2 * 2
    assert tau == CosetSpec.parse("1^2,2^2").tau()


def test_m_projection_frozen_example():
    spec = CosetSpec(((2, 2),))
    hs = list(enumerate_h_structured(spec))
    for h in hs:
        m = m_projection(h, spec, 0)
        assert m.n == 2
    # the projection of the identity is the identity
    ident = hs[0]
    assert m_projection(ident, spec, 0) == Permutation.identity(2)


def test_m_projection_composes_slots_in_order():
    # one block (2, 2): slots are the two positions, each holding an S_2
    # element; the projection multiplies position 1 after position 0
    spec = CosetSpec(((2, 2),))
    swap = Permutation((1, 0))
    ident = Permutation.identity(2)
    for slots, want in [
        ((swap, ident), swap),
        ((ident, swap), swap),
        ((swap, swap), ident),
    ]:
        h = (slots,)
        assert m_projection(h, spec, 0) == want
