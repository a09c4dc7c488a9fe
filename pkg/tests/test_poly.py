import random

from hypothesis import given, strategies as st

from frobenius_descent.field import Field, embedding
from frobenius_descent.instances import random_polynomial
from frobenius_descent.poly import PolynomialF, monomials_of_degree, poly_arith


def test_monomial_order_is_decreasing_lex():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(3, 4)) == 15


def test_basic_arithmetic_over_f4():
    F = Field.of(2, 2)
    x, y = PolynomialF.variables(F, 2)
    g = F.gen
    f = x + y * g
    assert f * f == x * x + y * y * (g + 1)  # characteristic two
    assert poly_arith(f, f, "add").is_zero()
    assert f.frobenius_on_coeffs(1) == x + y * (g + 1)
    assert poly_arith(f, None, "frobenius_on_coeffs") == f.frobenius_on_coeffs(1)


@given(st.sampled_from([(2, 2), (3, 2), (2, 3), (5, 1)]), st.integers(0, 10**6))
def test_ring_laws_and_evaluation(qm, seed):
    rng = random.Random(seed)
    F = Field.of(*qm)
    a, b, c = (random_polynomial(rng, F, 2) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    pt = [F.random_element(rng) for _ in range(2)]
    assert poly_arith(a * b, pt, "eval") == a.eval(pt) * b.eval(pt)
    assert (a + b).eval(pt) == a.eval(pt) + b.eval(pt)


@given(st.integers(0, 10**6))
def test_frobenius_on_coefficients_is_ring_hom(seed):
    rng = random.Random(seed)
    F = Field.of(3, 2)
    a, b = random_polynomial(rng, F, 3), random_polynomial(rng, F, 3)
    phi = lambda f: f.frobenius_on_coeffs(1)
    assert phi(a * b) == phi(a) * phi(b)
    assert phi(phi(a)) == a  # m = 2


@given(st.integers(0, 10**6))
def test_base_components_reconstruct(seed):
    rng = random.Random(seed)
    F = Field.of(2, 3)
    f = random_polynomial(rng, F, 2)
    parts = f.base_components()
    assert len(parts) == 3
    emb = F.base_embedding
    g = F.gen
    total = PolynomialF(F, 2)
    for i, part in enumerate(parts):
        assert part.field is F.base_field
        total = total + part.embed(emb) * (g ** i)
    assert total == f


def test_embed_then_rational_coefficients():
    F4, F16 = Field.of(2, 2), Field.of(2, 4)
    x, = PolynomialF.variables(F4, 1)
    f = x ** 3 + x * F4.gen
    up = f.embed(embedding(F4, F16))
    assert up.degree() == 3
    assert not f.has_base_coefficients()
    assert (x ** 2 + 1).has_base_coefficients()
