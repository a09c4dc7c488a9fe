import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from frobenius_descent.errors import CapacityExceeded
from frobenius_descent.field import Field, embedding, extend_field, frobenius, get_field
from frobenius_descent.gfp_poly import all_irreducible_brute, is_irreducible, least_irreducible

FIELDS = [(2, 1), (2, 2), (2, 3), (4, 1), (4, 2), (3, 1), (3, 2), (9, 1), (5, 2), (7, 1), (8, 2)]


def test_f4_modulus_and_frobenius():
    F = Field.of(2, 2)
    assert F.modulus == (1, 1, 1)
    g = F.gen
    assert g * g == g + 1
    assert frobenius(g, 1) == g + 1
    assert g.inverse() == g + 1


def test_f9_modulus_has_square_root_of_two():
    F = Field.of(3, 2)
    assert F.modulus == (1, 0, 1)
    assert F.gen * F.gen == F(2)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 4), (2, 5), (3, 3), (5, 2), (7, 2)])
def test_least_irreducible_matches_brute_force(p, n):
    brute = [f for f in all_irreducible_brute(n, p) if n == 1 or f[0]]
    assert least_irreducible(n, p) == brute[0]
    assert all(is_irreducible(f, p) for f in brute)


@pytest.mark.parametrize("q,m", FIELDS)
def test_field_axioms_sampled(q, m):
    F = Field.of(q, m)
    rng = random.Random(q * 100 + m)
    for _ in range(1000):
        a, b, c = (F.random_element(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + (-a) == F.zero
        if a:
            assert a * a.inverse() == F.one


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2)])
def test_frobenius_is_a_ring_automorphism_exhaustive(q, m):
    F = Field.of(q, m)
    els = F.elements()
    for a, b in product(els, repeat=2):
        assert frobenius(a + b, 1) == frobenius(a, 1) + frobenius(b, 1)
        assert frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1)
    assert {frobenius(a, 1) for a in els} == set(els)
    assert all(frobenius(a, m) == a for a in els)


@pytest.mark.parametrize("q,m", FIELDS)
def test_base_field_is_frobenius_fixed(q, m):
    F = Field.of(q, m)
    fixed = [x for x in F.elements() if frobenius(x, 1) == x] if F.order <= 256 else None
    if fixed is not None:
        assert len(fixed) == q
        assert all(F.in_base(x.value) for x in fixed)


@pytest.mark.parametrize("q,m", [(2, 3), (4, 2), (3, 2), (9, 1)])
def test_base_coordinates_round_trip(q, m):
    F = Field.of(q, m)
    for x in F.elements():
        coords = F.to_base_coords(x.value)
        assert len(coords) == m
        assert F.from_base_coords(coords) == x.value


@pytest.mark.parametrize("p,d,n", [(2, 1, 4), (2, 2, 4), (2, 2, 6), (2, 3, 6), (3, 1, 2), (3, 2, 4), (5, 1, 2)])
def test_embeddings_are_homomorphisms(p, d, n):
    S, T = get_field(p, 1, d), get_field(p, 1, n)
    emb = embedding(S, T)
    for a, b in product(S.elements(), repeat=2):
        assert emb(a + b) == emb(a) + emb(b)
        assert emb(a * b) == emb(a) * emb(b)
    assert emb(frobenius(S.gen, 1)) == frobenius(emb(S.gen), 1)


def test_embeddings_compose_along_towers():
    F2, F4, F16 = (get_field(2, 1, n) for n in (1, 2, 4))
    assert embedding(F2, F4).compose(embedding(F4, F16)).image_of_generator == \
        embedding(F2, F16).image_of_generator
    F8, F64 = get_field(2, 1, 3), get_field(2, 1, 6)
    # compatibility: F2 -> F8 -> F64 equals F2 -> F4 -> F64
    a = embedding(F2, F8).compose(embedding(F8, F64)).image_of_generator
    b = embedding(F2, F4).compose(embedding(F4, F64)).image_of_generator
    assert a == b


def test_extend_field_keeps_q():
    F = Field.of(4, 1)
    K, emb = extend_field(F, 3)
    assert (K.q, K.m) == (4, 3)
    assert emb.source is F and emb.target is K


def test_degree_cap():
    with pytest.raises(CapacityExceeded):
        get_field(2, 1, 30)
    with pytest.raises(CapacityExceeded):
        extend_field(Field.of(2, 4), 7, degree_cap=24)


@given(st.sampled_from(FIELDS), st.integers(0, 10**6), st.integers(-5, 5))
def test_frobenius_power_property(qm, seed, s):
    F = Field.of(*qm)
    x = F.random_element(random.Random(seed))
    assert frobenius(x, s) == x ** (F.q ** (s % F.m))
    assert frobenius(frobenius(x, s), -s) == x
