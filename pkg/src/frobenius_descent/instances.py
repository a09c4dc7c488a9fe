"""Random instance generators for tests, the self-test and the scripts.

Every generator takes an explicit ``random.Random`` so runs are reproducible.
Instances whose splitting field would leave the table-backed range
(order <= 2^16) are redrawn; :func:`practical_cap` gives that bound.
"""
from __future__ import annotations

import math
import random

from .descent import EquivariantModule, FinAlgebra, GradedIdealTrunc
from .errors import CapacityExceeded
from .field import TABLE_LIMIT, Field, embedding
from .linalg import MatrixF, block_diag
from .poly import PolynomialF, monomials_of_degree
from .semilinear import SemilinearEndo, splitting_degree


def practical_cap(p: int) -> int:
    """Largest absolute degree whose field still has log tables."""
    return int(math.log(TABLE_LIMIT, p) + 1e-9)


def small_fields(max_order: int) -> list[Field]:
    """All F_{q^m} (every q-structure) with q^m <= max_order."""
    out = []
    for p in (2, 3, 5, 7):
        for n in range(1, 17):
            if p ** n > max_order:
                break
            for k in range(1, n + 1):
                if n % k == 0:
                    out.append(Field.of(p ** k, n // k))
    return out


def random_semilinear(rng: random.Random, fields: list[Field], n_max: int,
                      require_split: bool = True) -> SemilinearEndo:
    while True:
        F = rng.choice(fields)
        n = rng.randint(1, n_max)
        sigma = SemilinearEndo(F, MatrixF.random_invertible(F, n, rng))
        if not require_split:
            return sigma
        try:
            splitting_degree(sigma, practical_cap(F.p))
        except CapacityExceeded:
            continue
        return sigma


def random_algebra(rng: random.Random, Fq: Field, max_dim: int = 3) -> FinAlgebra:
    choices = [FinAlgebra.base_field(Fq), FinAlgebra.dual_numbers(Fq), FinAlgebra.split(Fq, 2),
               FinAlgebra.extension(Fq, 2), FinAlgebra.split(Fq, 3),
               FinAlgebra.truncated_polynomials(Fq, 3), FinAlgebra.upper_triangular(Fq)]
    return rng.choice([A for A in choices if A.dim <= max_dim])


def right_multiplication(alg: FinAlgebra, field: Field, u: list[int]) -> MatrixF:
    """Matrix of x -> x * u on A (x) field, for u given by field codes."""
    emb = embedding(alg.base, field)
    B = field.backend
    d = alg.dim
    rows = [[0] * d for _ in range(d)]
    for j in range(d):
        for i, ui in enumerate(u):
            if not ui:
                continue
            for k, c in enumerate(alg.constants[j][i]):
                if c:
                    rows[k][j] = B.add(rows[k][j], B.mul(ui, emb.image_code(c)))
    return MatrixF.from_codes(field, rows, d)


def kron(Q: MatrixF, R: MatrixF) -> MatrixF:
    F = Q.field
    B = F.backend
    rows = []
    for qi in Q.codes:
        for ri in R.codes:
            rows.append([B.mul(a, b) for a in qi for b in ri])
    return MatrixF.from_codes(F, rows, Q.cols * R.cols)


def random_equivariant_module(rng: random.Random, field: Field, max_alg_dim: int = 3,
                              max_dim: int = 4, algebra: FinAlgebra | None = None,
                              require_split: bool = True) -> EquivariantModule:
    """A valid equivariant module obtained by twisting and conjugating A^r (x) F.

    sigma = P (Q (x) R_u) phi P^{-1}, with Q in GL_r(F) mixing copies, R_u right
    multiplication by a unit u of A (x) F, and P a random change of basis.
    Both factors commute with the left A-action, so the result is equivariant.
    """
    Fq = field.base_field
    while True:
        alg = algebra or random_algebra(rng, Fq, max_alg_dim)
        d = alg.dim
        r = rng.randint(1, max(1, max_dim // d))
        n = r * d
        emb = embedding(Fq, field)
        left = [block_diag(*[alg.regular_matrix(i).embed(emb)] * r) for i in range(d)]
        while True:
            u = [rng.randrange(field.order) for _ in range(d)]
            Ru = right_multiplication(alg, field, u)
            if Ru.is_invertible():
                break
        Q = MatrixF.random_invertible(field, r, rng)
        Bmat = kron(Q, MatrixF.identity(field, d)) @ block_diag(*[Ru] * r)
        P = MatrixF.random_invertible(field, n, rng)
        Pinv = P.inverse()
        sigma = SemilinearEndo(field, P @ Bmat @ P.frobenius(1).inverse())
        action = [P @ a @ Pinv for a in left]
        M = EquivariantModule(alg, field, action, sigma)
        if not require_split:
            return M
        try:
            splitting_degree(sigma, practical_cap(field.p))
        except CapacityExceeded:
            continue
        return M


def random_polynomial(rng: random.Random, field: Field, nvars: int, max_deg: int = 3,
                      nterms: int = 4) -> PolynomialF:
    terms = {}
    for _ in range(nterms):
        e = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = rng.randrange(field.order)
    return PolynomialF(field, nvars, terms)


def random_homogeneous(rng: random.Random, field: Field, nvars: int, d: int,
                       nterms: int = 3) -> PolynomialF:
    mons = monomials_of_degree(nvars, d)
    return PolynomialF(field, nvars, {rng.choice(mons): rng.randrange(1, field.order)
                                      for _ in range(nterms)})


def random_stable_ideal(rng: random.Random, field: Field, nvars: int, D: int = 4,
                        ngens: int = 2) -> GradedIdealTrunc:
    """Ideal generated by F-linear mixtures of F_q-rational forms (hence phi-stable)."""
    Fq = field.base_field
    emb = field.base_embedding
    by_degree: dict[int, list[PolynomialF]] = {}
    for _ in range(ngens):
        d = rng.randint(1, min(D, 3))
        f = random_homogeneous(rng, Fq, nvars, d)
        if not f.is_zero():
            by_degree.setdefault(d, []).append(f.embed(emb))
    gens = []
    for d, rational in by_degree.items():
        C = MatrixF.random_invertible(field, len(rational), rng)
        for row in C.entries():
            g = PolynomialF(field, nvars)
            for c, f in zip(row, rational):
                g = g + f * c
            gens.append(g)
    return GradedIdealTrunc.generated_by(field, nvars, gens, D)
