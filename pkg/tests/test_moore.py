import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from frobenius_descent.checks import brute_independent
from frobenius_descent.errors import CapacityExceeded
from frobenius_descent.field import Field
from frobenius_descent.moore import (is_fq_independent, moore_determinant_poly, moore_identity_check,
                                     moore_identity_sampled, moore_matrix, projective_product,
                                     projective_representatives)

# omega values observed for the symbolic identity (frozen from the exact expansion)
OMEGA = {(2, 1): 1, (2, 2): 1, (3, 1): 2, (4, 1): 1, (3, 2): 2, (4, 2): 1}


def test_moore_matrix_entries():
    F = Field.of(2, 2)
    g = F.gen
    M = moore_matrix([F.one, g])
    assert M[0, 0] == F.one and M[0, 1] == g
    assert M[1, 0] == F.one and M[1, 1] == g + 1
    assert M.det() == F.one


def test_dependent_triple_in_f4():
    F = Field.of(2, 2)
    g = F.gen
    assert not is_fq_independent([F.one, g, g + 1])
    assert is_fq_independent([F.one, g])


@pytest.mark.parametrize("q,r", [(2, 1), (3, 1), (2, 2)])
def test_projective_points_count(q, r):
    reps = projective_representatives(q, r)
    assert len(reps) == sum(q ** i for i in range(r + 1))
    assert len(set(reps)) == len(reps)


@pytest.mark.parametrize("q,r", [(2, 1), (2, 2), (3, 1), (4, 1), (3, 2), (4, 2)])
def test_symbolic_identity(q, r):
    omega = moore_identity_check(q, r)
    assert omega.value != 0 and omega.field.m == 1
    F = omega.field
    assert omega == F.from_code(OMEGA[(q, r)])
    assert moore_determinant_poly(q, r) == projective_product(q, r) * omega


@pytest.mark.parametrize("q,r", [(3, 2), (4, 2), (2, 3)])
def test_sampled_identity_agrees(q, r):
    omega = moore_identity_sampled(q, r, points=50, ext=6, rng=random.Random(1))
    if (q, r) in OMEGA:
        assert omega.value == OMEGA[(q, r)]


def test_symbolic_identity_capacity():
    with pytest.raises(CapacityExceeded):
        moore_identity_check(5, 1)


@pytest.mark.parametrize("q,m,r", [(2, 2, 1), (2, 3, 2), (3, 2, 1), (4, 2, 1)])
def test_independence_exhaustive(q, m, r):
    F = Field.of(q, m)
    for tup in product(F.elements(), repeat=r + 1):
        assert is_fq_independent(list(tup)) == brute_independent(list(tup))


@given(st.integers(0, 10**6))
def test_basis_of_f8_over_f2_is_independent(seed):
    F = Field.of(2, 3)
    rng = random.Random(seed)
    a, b = F.random_element(rng), F.random_element(rng)
    assert not is_fq_independent([a, b, a + b])
    assert is_fq_independent([F.one, F.gen, F.gen * F.gen])


@given(st.sampled_from([(2, 2), (3, 1), (2, 3), (4, 1)]), st.integers(0, 10**6))
def test_too_many_elements_are_dependent(qm, seed):
    F = Field.of(*qm)
    rng = random.Random(seed)
    els = [F.random_element(rng) for _ in range(F.m + 1)]
    assert moore_matrix(els).det() == F.zero
