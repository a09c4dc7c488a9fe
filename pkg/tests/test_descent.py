import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from frobenius_descent.checks import brute_homs, span_set
from frobenius_descent.descent import (EquivariantModule, FinAlgebra, GradedIdealTrunc,
                                       check_equivariant, descend_module, descended_hom_space,
                                       element_descent, graded_ideal_descent, hom_space,
                                       verify_round_trip)
from frobenius_descent.errors import AlgebraMismatch, NotEquivariant, NotStable
from frobenius_descent.field import Field
from frobenius_descent.instances import (practical_cap, random_equivariant_module,
                                         random_polynomial, random_stable_ideal,
                                         right_multiplication, small_fields)
from frobenius_descent.linalg import MatrixF, rank_of_vectors
from frobenius_descent.poly import PolynomialF
from frobenius_descent.semilinear import SemilinearEndo

F2, F4 = Field.of(2, 1), Field.of(2, 2)


def test_algebra_constructors_are_valid():
    Fq = Field.of(3, 1)
    for alg in (FinAlgebra.base_field(Fq), FinAlgebra.dual_numbers(Fq), FinAlgebra.split(Fq, 3),
                FinAlgebra.extension(Fq, 2), FinAlgebra.truncated_polynomials(Fq, 3)):
        assert alg.is_commutative()
    assert not FinAlgebra.upper_triangular(Fq).is_commutative()


def test_bad_structure_constants_rejected():
    with pytest.raises(ValueError):
        FinAlgebra(F2, [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [0, 1])


def test_canonical_pair_descends_to_algebra_itself():
    alg = FinAlgebra.dual_numbers(F2)
    M = EquivariantModule.canonical(alg, F4)
    assert check_equivariant(M).ok
    D = descend_module(M)
    assert D.e == 1
    assert D.certificate == MatrixF.identity(F4, 2)
    assert list(D.action) == [alg.regular_matrix(i) for i in range(2)]


def test_non_commuting_sigma_is_reported():
    alg = FinAlgebra.dual_numbers(F2)
    M = EquivariantModule.canonical(alg, F4)
    g = F4.gen
    bad = EquivariantModule(alg, F4, M.action, SemilinearEndo(F4, MatrixF(F4, [[1, g], [0, 1]])))
    rep = check_equivariant(bad)
    assert not rep.ok and rep.relation == "sigma commutes with action" and rep.index == (1,)
    with pytest.raises(NotEquivariant) as exc:
        descend_module(bad)
    assert exc.value.payload["index"] == [1]


def test_dual_numbers_twisted_by_unit():
    alg = FinAlgebra.dual_numbers(F2)
    g = F4.gen
    Ru = right_multiplication(alg, F4, [1, g.value])  # u = 1 + eps*g
    M = EquivariantModule(alg, F4, EquivariantModule.canonical(alg, F4).action,
                          SemilinearEndo(F4, Ru))
    assert check_equivariant(M).ok
    D = descend_module(M)
    assert verify_round_trip(D)


def test_base_field_algebra_reduces_to_vector_spaces():
    Fq = Field.of(3, 1)
    F9 = Field.of(3, 2)
    alg = FinAlgebra.base_field(Fq)
    sigma = SemilinearEndo(F9, MatrixF(F9, [[F9.gen, 0], [0, 1]]))
    M = EquivariantModule(alg, F9, [MatrixF.identity(F9, 2)], sigma)
    D = descend_module(M)
    assert D.dim == 2 and verify_round_trip(D)


@given(st.integers(0, 10**6))
def test_random_modules_round_trip(seed):
    rng = random.Random(seed)
    M = random_equivariant_module(rng, rng.choice(small_fields(8)))
    assert check_equivariant(M).ok
    D = descend_module(M, practical_cap(M.field.p))
    assert verify_round_trip(D)
    assert hom_space(M, M, "equivariant", degree_cap=practical_cap(M.field.p)).dim == \
        descended_hom_space(D, D).dim


def test_canonical_equivariant_endomorphisms_are_scalars():
    Fq = Field.of(3, 1)
    F9 = Field.of(3, 2)
    M = EquivariantModule.canonical(FinAlgebra.base_field(Fq), F9)
    hs = hom_space(M, M, "equivariant")
    assert hs.dim == 1 and hs.over is Fq
    assert hs.basis == [MatrixF.identity(F9, 1)]
    assert hom_space(M, M, "linear").dim == 1


def test_extension_needed_for_equivariant_homs():
    # (F3, phi) and (F3, -phi) are isomorphic only over F9
    F3 = Field.of(3, 1)
    alg = FinAlgebra.base_field(F3)
    M = EquivariantModule(alg, F3, [MatrixF.identity(F3, 1)], SemilinearEndo(F3, MatrixF(F3, [[1]])))
    N = EquivariantModule(alg, F3, [MatrixF.identity(F3, 1)], SemilinearEndo(F3, MatrixF(F3, [[2]])))
    assert hom_space(M, N, "equivariant", extend=False).dim == 0
    assert hom_space(M, N, "equivariant").dim == 1


def test_mismatched_algebras():
    M = EquivariantModule.canonical(FinAlgebra.dual_numbers(F2), F4)
    N = EquivariantModule.canonical(FinAlgebra.split(F2, 2), F4)
    with pytest.raises(AlgebraMismatch):
        hom_space(M, N)


@pytest.mark.parametrize("seed", range(6))
def test_hom_bases_match_enumeration(seed):
    rng = random.Random(seed)
    F = F4 if seed % 2 else F2
    alg = [FinAlgebra.base_field(F2), FinAlgebra.dual_numbers(F2), FinAlgebra.split(F2, 2)][seed % 3]
    M = random_equivariant_module(rng, F, algebra=alg, max_dim=2, require_split=False)
    N = random_equivariant_module(rng, F, algebra=alg, max_dim=4 - M.n, require_split=False)
    lin = hom_space(M, N, "linear")
    assert span_set(lin.basis, list(range(F.order)), F, (N.n, M.n)) == brute_homs(M, N, False)
    eq = hom_space(M, N, "equivariant", extend=False)
    scalars = [F.base_embedding.image_code(c) for c in range(2)]
    assert span_set(eq.basis, scalars, F, (N.n, M.n)) == brute_homs(M, N, True)


# -- element and ideal descent ----------------------------------------------------

def _span_equal(field, a, b):
    mons = sorted({e for f in a + b for e in f.terms}, reverse=True)
    vec = lambda fs: [f.coefficient_vector(mons) for f in fs]
    r = rank_of_vectors(field, vec(a))
    return r == rank_of_vectors(field, vec(b)) == rank_of_vectors(field, vec(a + b))


def test_rational_polynomial_descends_to_itself():
    x, y = PolynomialF.variables(F4, 2)
    f = x * x + y
    out = element_descent(f)
    assert len(out) == 1 and out[0].embed(F4.base_embedding) == f


def test_element_descent_example_over_f4():
    x, y = PolynomialF.variables(F4, 2)
    g = F4.gen
    f = x * g + y * (g + 1)
    out = element_descent(f)
    assert all(a.field is F2 for a in out)
    emb = F4.base_embedding
    assert _span_equal(F4, [a.embed(emb) for a in out], [x, y])


@given(st.integers(0, 10**6))
def test_element_descent_span_over_f8(seed):
    rng = random.Random(seed)
    F8 = Field.of(2, 3)
    f = random_polynomial(rng, F8, 2)
    out = element_descent(f)
    assert all(a.field is F8.base_field for a in out)
    orbit = [f.frobenius_on_coeffs(s) for s in range(3)]
    assert _span_equal(F8, [a.embed(F8.base_embedding) for a in out], orbit) or f.is_zero()


def test_rational_ideal_descends():
    x, y = PolynomialF.variables(F4, 2)
    I = GradedIdealTrunc.generated_by(F4, 2, [x + y], D=2)
    J = graded_ideal_descent(I)
    a, b = PolynomialF.variables(F2, 2)
    assert J.pieces[1] == [a + b]


def test_non_stable_ideal_reports_witness():
    x, y = PolynomialF.variables(F4, 2)
    g = F4.gen
    I = GradedIdealTrunc.generated_by(F4, 2, [x + y * g], D=2)
    with pytest.raises(NotStable) as exc:
        graded_ideal_descent(I)
    assert exc.value.degree == 1
    assert exc.value.witness == x + y * (g + 1)


def test_two_conjugate_forms_descend_to_coordinates():
    x, y = PolynomialF.variables(F4, 2)
    g = F4.gen
    I = GradedIdealTrunc.generated_by(F4, 2, [x + y * g, x + y * (g + 1)], D=2)
    J = graded_ideal_descent(I)
    a, b = PolynomialF.variables(F2, 2)
    assert J.pieces[1] == [a, b]
    assert J.dim(2) == 3


@pytest.mark.parametrize("q,m,nvars", [(2, 2, 2), (2, 2, 3), (3, 2, 2), (3, 2, 3), (4, 2, 2)])
def test_stable_ideals_recovered(q, m, nvars):
    rng = random.Random(q * 31 + nvars)
    F = Field.of(q, m)
    I = random_stable_ideal(rng, F, nvars, D=4)
    J = graded_ideal_descent(I)
    emb = F.base_embedding
    for d in range(5):
        up = GradedIdealTrunc(F, nvars, 4, {d: [j.embed(emb) for j in J.pieces[d]]},
                              check_closure=False)
        assert up.pieces[d] == I.pieces[d]


def test_ideal_membership_and_closure():
    x, y = PolynomialF.variables(F4, 2)
    I = GradedIdealTrunc.generated_by(F4, 2, [x * y], D=3)
    assert I.contains(x * x * y) and not I.contains(x * x)
    with pytest.raises(ValueError):
        GradedIdealTrunc(F4, 2, 3, {2: [x * y]})
