"""Moore matrices, the Moore determinant identity and the F_q-independence test."""
from __future__ import annotations

import random
from itertools import permutations, product
from typing import Sequence

from .errors import CapacityExceeded, FieldMismatch, IdentityViolated
from .field import Field, FieldElement
from .linalg import MatrixF
from .poly import PolynomialF


def _common_field(elements: Sequence[FieldElement]) -> Field:
    if not elements:
        raise ValueError("need at least one element")
    F = elements[0].field
    if any(x.field is not F for x in elements):
        raise FieldMismatch("Moore input elements live in different fields")
    return F


def moore_matrix(elements: Sequence[FieldElement]) -> MatrixF:
    """The square matrix with entry (i, j) = mu_j ** (q ** i)."""
    F = _common_field(elements)
    n = len(elements)
    return MatrixF.from_codes(F, [[F.frob_code(x.value, i) for x in elements] for i in range(n)], n)


def is_fq_independent(elements: Sequence[FieldElement]) -> bool:
    return moore_matrix(elements).is_invertible()


def projective_representatives(q: int, r: int) -> list[tuple[int, ...]]:
    """Points of P^r(F_q) as code tuples whose first nonzero coordinate is 1."""
    reps = []
    for lead in range(r + 1):
        for tail in product(range(q), repeat=r - lead):
            reps.append((0,) * lead + (1,) + tail)
    return reps


def _det_poly(M: list[list[PolynomialF]]) -> PolynomialF:
    n = len(M)
    F, nv = M[0][0].field, M[0][0].nvars
    total = PolynomialF(F, nv)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = PolynomialF.constant(F, nv, 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
        total = total - term if inversions % 2 else total + term
    return total


def moore_determinant_poly(q: int, r: int) -> PolynomialF:
    F = Field.of(q)
    xs = PolynomialF.variables(F, r + 1)
    return _det_poly([[x ** (q ** i) for x in xs] for i in range(r + 1)])


def projective_product(q: int, r: int) -> PolynomialF:
    """Product of the linear forms a_0 x_0 + ... + a_r x_r over P^r(F_q)."""
    F = Field.of(q)
    xs = PolynomialF.variables(F, r + 1)
    prod = PolynomialF.constant(F, r + 1, 1)
    for a in projective_representatives(q, r):
        form = PolynomialF(F, r + 1)
        for c, x in zip(a, xs):
            if c:
                form = form + x * F.from_code(c)
        prod = prod * form
    return prod


def moore_identity_check(q: int, r: int) -> FieldElement:
    """Expand both sides of the Moore identity and return the scalar relating them."""
    if q > 4 or r > 2 or r < 0:
        raise CapacityExceeded("symbolic Moore identity limited to q <= 4, r <= 2", q=q, r=r)
    det = moore_determinant_poly(q, r)
    prod = projective_product(q, r)
    if det.is_zero() or prod.is_zero():
        raise IdentityViolated("degenerate side", q=q, r=r)
    e_det, c_det = det.leading()
    e_prod, c_prod = prod.leading()
    if e_det != e_prod:
        raise IdentityViolated("leading monomials differ", q=q, r=r)
    omega = c_det / c_prod
    if det != prod * omega:
        raise IdentityViolated("determinant is not a scalar multiple of the product", q=q, r=r)
    return omega


def moore_identity_sampled(q: int, r: int, points: int = 200, ext: int = 6,
                           rng: random.Random | None = None) -> FieldElement:
    """Check the Moore identity at random points of F_{q^ext}^{r+1}.

    The scalar is read off the first point where the product is nonzero and
    must then match at every sampled point; raises IdentityViolated otherwise.
    Returns the scalar as an element of F_q.
    """
    rng = rng or random.Random(0)
    K = Field.of(q, ext)
    emb = K.base_embedding
    reps = [[emb.image_code(c) for c in a] for a in projective_representatives(q, r)]
    B = K.backend
    omega = None
    for _ in range(points):
        pt = [K.random_element(rng) for _ in range(r + 1)]
        det = moore_matrix(pt).det().value
        prod = 1
        for a in reps:
            form = 0
            for c, x in zip(a, pt):
                form = B.add(form, B.mul(c, x.value))
            prod = B.mul(prod, form)
        if prod == 0:
            if det != 0:
                raise IdentityViolated("determinant nonzero where product vanishes", q=q, r=r)
            continue
        ratio = B.mul(det, B.inv(prod))
        if omega is None:
            if ratio == 0 or not K.in_base(ratio):
                raise IdentityViolated("ratio is not in F_q^*", q=q, r=r)
            omega = ratio
        elif ratio != omega:
            raise IdentityViolated("ratio differs between points", q=q, r=r)
    if omega is None:
        raise IdentityViolated("no informative sample point", q=q, r=r)
    return K.base_field.from_code(K.to_base_coords(omega)[0])
