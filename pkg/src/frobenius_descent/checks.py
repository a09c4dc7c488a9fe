"""Acceptance checks, shared by the test suite and ``frobdesc selftest``.

Each check is exact (finite-field equality, zero tolerance), deterministic for
a given seed, and returns a :class:`CheckResult`.  Brute-force oracles here
only use field arithmetic and matrix products, never the routine under test.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable

from . import serialize
from .cocycle import LaurentUnit, coboundary, mu_power_demo, picard_cokernel, unit_class
from .descent import (EquivariantModule, FinAlgebra, GradedIdealTrunc, check_equivariant,
                      descend_module, descended_hom_space, element_descent,
                      graded_ideal_descent, hom_space, verify_round_trip)
from .errors import CapacityExceeded
from .field import Field, FieldElement
from .instances import (practical_cap, random_equivariant_module, random_polynomial,
                        random_semilinear, random_stable_ideal, small_fields)
from .linalg import MatrixF, rank_of_vectors
from .moore import is_fq_independent, moore_identity_check, moore_identity_sampled
from .poly import PolynomialF
from .semilinear import (DualMatrix, SemilinearEndo, beta_surjectivity_report,
                         descend_vector_space, extend_scalars, fixed_space, lang_map,
                         lang_solve, splitting_degree)


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  [{self.number:2d}] {self.title}: {self.detail}"


# -- brute-force oracles ----------------------------------------------------------

def brute_independent(elements: list[FieldElement]) -> bool:
    """No nontrivial F_q-combination of the elements vanishes."""
    F = elements[0].field
    emb = F.base_embedding
    scalars = [emb.image_code(c) for c in range(F.q)]
    B = F.backend
    for coeffs in product(range(F.q), repeat=len(elements)):
        if not any(coeffs):
            continue
        acc = 0
        for c, x in zip(coeffs, elements):
            acc = B.add(acc, B.mul(scalars[c], x.value))
        if acc == 0:
            return False
    return True


def brute_splitting_degree(sigma: SemilinearEndo, cap: int) -> int:
    e = 1
    while sigma.field.degree * e <= cap:
        if fixed_space(extend_scalars(sigma, e)).dim == sigma.n:
            return e
        e += 1
    raise CapacityExceeded("brute-force search exhausted", cap=cap)


def brute_homs(M: EquivariantModule, N: EquivariantModule, equivariant: bool) -> set:
    F = M.field
    out = set()
    for flat in product(range(F.order), repeat=M.n * N.n):
        H = MatrixF.from_codes(F, [flat[i * M.n:(i + 1) * M.n] for i in range(N.n)], M.n)
        if any(H @ a != b @ H for a, b in zip(M.action, N.action)):
            continue
        if equivariant and H @ M.sigma.A != N.sigma.A @ H.frobenius(1):
            continue
        out.add(H.codes)
    return out


def span_set(basis: list[MatrixF], scalars: list[int], field: Field, shape) -> set:
    B = field.backend
    out = set()
    for coeffs in product(scalars, repeat=len(basis)):
        acc = [[0] * shape[1] for _ in range(shape[0])]
        for c, H in zip(coeffs, basis):
            if c:
                for i, row in enumerate(H.codes):
                    for j, x in enumerate(row):
                        acc[i][j] = B.add(acc[i][j], B.mul(c, x))
        out.add(tuple(tuple(r) for r in acc))
    return out


# -- criteria ---------------------------------------------------------------------

def check_moore_identity(rng: random.Random) -> CheckResult:
    omegas = {}
    for q, r in [(2, 1), (2, 2), (3, 1), (4, 1)]:
        omegas[(q, r)] = moore_identity_check(q, r)
    for q, r in [(3, 2), (4, 2)]:
        omegas[(q, r)] = moore_identity_sampled(q, r, points=200, ext=6, rng=rng)
    ok = all(w.value != 0 and w.field.m == 1 for w in omegas.values())
    detail = ", ".join(f"q={q},r={r}: w={w!r}" for (q, r), w in omegas.items())
    return CheckResult(1, "Moore determinant identity", ok, detail)


def check_moore_independence(rng: random.Random) -> CheckResult:
    bad = total = 0
    for q, m, r in [(2, 2, 1), (2, 3, 2), (3, 2, 1)]:
        F = Field.of(q, m)
        for tup in product(F.elements(), repeat=r + 1):
            total += 1
            if is_fq_independent(list(tup)) != brute_independent(list(tup)):
                bad += 1
    return CheckResult(2, "Moore invertibility iff F_q-independence", bad == 0,
                       f"{total} tuples, {bad} discrepancies")


def check_vector_space_round_trip(rng: random.Random) -> CheckResult:
    fields = small_fields(9)
    bad = 0
    for _ in range(200):
        sigma = random_semilinear(rng, fields, 3)
        if fixed_space(sigma).dim > sigma.n:
            bad += 1
            continue
        d = descend_vector_space(sigma, practical_cap(sigma.field.p))
        G, ext = d.certificate, d.extended
        if (fixed_space(ext).dim != sigma.n or ext.A @ G.frobenius(1) != G
                or not G.is_invertible()):
            bad += 1
    return CheckResult(3, "Lang: Frobenius-fixed space descends vector spaces", bad == 0,
                       f"200 instances, {bad} failures")


def check_splitting_degree(rng: random.Random) -> CheckResult:
    fields = small_fields(9)
    bad = 0
    for _ in range(100):
        sigma = random_semilinear(rng, fields, 2)
        cap = practical_cap(sigma.field.p)
        if splitting_degree(sigma, cap) != brute_splitting_degree(sigma, cap):
            bad += 1
    return CheckResult(4, "splitting degree = order of sigma^m", bad == 0,
                       f"100 instances, {bad} discrepancies")


def check_lang(rng: random.Random) -> CheckResult:
    fields = small_fields(8)
    bad = 0
    done = 0
    while done < 100:
        F = rng.choice(fields)
        A = MatrixF.random_invertible(F, rng.randint(1, 3), rng)
        try:
            sol = lang_solve(A, practical_cap(F.p))
        except CapacityExceeded:
            continue
        done += 1
        if lang_map(sol.G) != sol.target:
            bad += 1
    reports = [beta_surjectivity_report(3, 1, 1), beta_surjectivity_report(4, 1, 1),
               beta_surjectivity_report(4, 1, 1, "dual_numbers"),
               beta_surjectivity_report(2, 2, 1, "dual_numbers")]
    ok = bad == 0 and all(r.all_hit for r in reports)
    detail = f"100 random targets, {bad} failures; " + "; ".join(
        f"GL_1 q={r.q},m={r.m} {r.ring}: {r.hit}/{r.targets} hit, e={r.e_distribution}"
        for r in reports)
    return CheckResult(5, "Lang map g -> g^-1 phi(g) is surjective", ok, detail)


def _module_instances(rng: random.Random, count: int = 100):
    fields = small_fields(8)
    out = []
    for _ in range(count):
        F = rng.choice(fields)
        out.append(random_equivariant_module(rng, F, max_alg_dim=3, max_dim=4))
    return out


def check_drinfeld_round_trip(rng: random.Random) -> CheckResult:
    bad = 0
    for M in _module_instances(rng):
        if not check_equivariant(M).ok:
            bad += 1
            continue
        if not verify_round_trip(descend_module(M, practical_cap(M.field.p))):
            bad += 1
    return CheckResult(6, "Drinfeld descent: equivariant modules descend", bad == 0,
                       f"100 modules, {bad} failures")


def check_fully_faithful(rng: random.Random) -> CheckResult:
    bad = 0
    for M in _module_instances(rng):
        cap = practical_cap(M.field.p)
        D = descend_module(M, cap)
        if hom_space(M, M, "equivariant", degree_cap=cap).dim != descended_hom_space(D, D).dim:
            bad += 1
    # exhaustive enumeration, q = 2, total dimension <= 4
    enum_bad = enum_cases = 0
    for F in (Field.of(2, 1), Field.of(2, 2)):
        Fq = F.base_field
        for alg in (FinAlgebra.base_field(Fq), FinAlgebra.dual_numbers(Fq), FinAlgebra.split(Fq, 2)):
            for _ in range(3):
                M = random_equivariant_module(rng, F, algebra=alg, max_dim=2, require_split=False)
                N = random_equivariant_module(rng, F, algebra=alg, max_dim=4 - M.n,
                                              require_split=False)
                for mode, scal in (("linear", list(range(F.order))), ("equivariant",
                                                                      [F.base_embedding.image_code(c)
                                                                       for c in range(F.q)])):
                    enum_cases += 1
                    hs = hom_space(M, N, mode, extend=False)
                    if span_set(hs.basis, scal, F, (N.n, M.n)) != brute_homs(M, N, mode == "equivariant"):
                        enum_bad += 1
    ok = bad == 0 and enum_bad == 0
    return CheckResult(7, "full faithfulness: equivariant homs = descended homs", ok,
                       f"100 modules, {bad} dimension mismatches; {enum_cases} exhaustive "
                       f"enumerations, {enum_bad} mismatches")


def check_ideal_descent(rng: random.Random) -> CheckResult:
    bad = 0
    fixtures = 0
    for F in (Field.of(2, 2), Field.of(3, 2)):
        for nvars in (1, 2, 3):
            for _ in range(3):
                I = random_stable_ideal(rng, F, nvars, D=4)
                J = graded_ideal_descent(I)
                fixtures += 1
                emb = F.base_embedding
                for d in range(I.D + 1):
                    up = GradedIdealTrunc(F, nvars, I.D, {d: [j.embed(emb) for j in J.pieces[d]]},
                                          check_closure=False)
                    if up.pieces[d] != I.pieces[d]:
                        bad += 1
    F8 = Field.of(2, 3)
    span_bad = 0
    for _ in range(100):
        f = random_polynomial(rng, F8, 2, max_deg=3, nterms=4)
        a = element_descent(f)
        if any(x.field is not F8.base_field for x in a):
            span_bad += 1
            continue
        orbit = [f.frobenius_on_coeffs(s) for s in range(3)]
        up = [x.embed(F8.base_embedding) for x in a]
        mons = sorted({e for g in orbit + up for e in g.terms}, reverse=True)
        vec = lambda gs: [g.coefficient_vector(mons) for g in gs]
        r1, r2, r12 = (rank_of_vectors(F8, vec(orbit)), rank_of_vectors(F8, vec(up)),
                       rank_of_vectors(F8, vec(orbit + up)))
        if not r1 == r2 == r12:
            span_bad += 1
    ok = bad == 0 and span_bad == 0
    return CheckResult(8, "stable ideals are generated by rational elements", ok,
                       f"{fixtures} ideal fixtures, {bad} degree mismatches; "
                       f"100 element descents, {span_bad} span failures")


def check_picard(rng: random.Random) -> CheckResult:
    bad = []
    for q, m in [(2, 2), (3, 2), (3, 3), (5, 2)]:
        F = Field.of(q, m)
        image = {(x ** (1 - q)).value for x in F.units()}
        res = picard_cokernel(q, m)
        one = unit_class(LaurentUnit(F.one, 0))
        exact = all((unit_class(LaurentUnit(x, 0)) == one) == (x.value in image) for x in F.units())
        no_x = all(coboundary(LaurentUnit(x, t)).t == 0 for x in F.units() for t in (-2, 1, 3))
        if not (res.free_rank == 1 and res.torsion_order == q - 1
                and (F.order - 1) // len(image) == q - 1 and not res.generator_is_coboundary
                and exact and no_x):
            bad.append((q, m))
    return CheckResult(9, "G_m: Frobenius-twisted line bundles are not all rational", not bad,
                       f"(q,m) in (2,2),(3,2),(3,3),(5,2): free rank 1, torsion q-1; failures {bad}")


def check_mu_power(rng: random.Random) -> CheckResult:
    bad = []
    for q in (3, 4, 5):
        for m in (1, 2, 3):
            rep = mu_power_demo(q, m)
            if rep.surjective or [x.value for x in rep.image] != [1] or len(rep.mu) != q - 1:
                bad.append((q, m))
    return CheckResult(10, "(q-1)-power map on mu_{q-1} is not surjective", not bad,
                       f"q in 3,4,5 and m in 1,2,3; failures {bad}")


def random_document_value(rng: random.Random):
    """A random domain value of a random type, for serialization round trips."""
    F = rng.choice(small_fields(16))
    kind = rng.randrange(10)
    if kind == 0:
        return F
    if kind == 1:
        return F.random_element(rng)
    if kind == 2:
        return MatrixF.random(F, rng.randint(1, 3), rng.randint(1, 3), rng)
    if kind == 3:
        return random_polynomial(rng, F, rng.randint(1, 3))
    if kind == 4:
        return SemilinearEndo(F, MatrixF.random_invertible(F, rng.randint(1, 3), rng))
    if kind == 5:
        return [F.random_element(rng) for _ in range(rng.randint(1, 4))]
    if kind == 6:
        return DualMatrix(MatrixF.random(F, 2, 2, rng), MatrixF.random(F, 2, 2, rng))
    if kind == 7:
        return LaurentUnit(F.random_element(rng, nonzero=True), rng.randint(-5, 5))
    if kind == 8:
        return random_equivariant_module(rng, F, max_alg_dim=2, max_dim=2, require_split=False)
    return random_stable_ideal(rng, F, rng.randint(1, 2), D=2) if F.m > 1 else \
        GradedIdealTrunc.generated_by(F, 2, [random_polynomial(rng, F, 2, 0, 1)], 2)


def check_serialization(rng: random.Random) -> CheckResult:
    bad = 0
    for _ in range(500):
        v = random_document_value(rng)
        text = serialize.dumps(v)
        back = serialize.loads(text)
        if back != v or serialize.dumps(back) != text:
            bad += 1
    return CheckResult(11, "document round trip", bad == 0, f"500 documents, {bad} failures")


CHECKS: list[Callable[[random.Random], CheckResult]] = [
    check_moore_identity, check_moore_independence, check_vector_space_round_trip,
    check_splitting_degree, check_lang, check_drinfeld_round_trip, check_fully_faithful,
    check_ideal_descent, check_picard, check_mu_power, check_serialization,
]


# library operations each check exercises, for the self-test report
COVERS: dict[int, list[str]] = {
    1: ["moore_identity_check", "moore_matrix", "poly_arith"],
    2: ["is_fq_independent", "moore_matrix", "solve_or_invert"],
    3: ["fixed_space", "extend_scalars", "descend_vector_space", "frobenius"],
    4: ["splitting_degree", "extend_field"],
    5: ["lang_solve", "beta_surjectivity_report", "nullspace"],
    6: ["check_equivariant", "descend_module"],
    7: ["hom_space"],
    8: ["graded_ideal_descent", "element_descent"],
    9: ["picard_cokernel", "coboundary", "unit_class"],
    10: ["mu_power_demo"],
    11: ["serialization"],
}


def run_all(seed: int = 0) -> list[CheckResult]:
    """Run every check with its own generator seeded from ``seed`` and its index."""
    return [check(random.Random(seed * 1000 + i)) for i, check in enumerate(CHECKS, 1)]
