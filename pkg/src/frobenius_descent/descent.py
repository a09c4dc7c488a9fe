"""Descent of Frobenius-equivariant modules and of Frobenius-stable graded ideals.

Modules live over A (x) F_{q^m} for a finite-dimensional F_q-algebra A; an
equivariant module carries a semilinear automorphism sigma commuting with the
A-action.  Descending means: find the sigma-fixed F_q-form W (after a finite
scalar extension), together with an explicit certificate isomorphism.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import AlgebraMismatch, FieldMismatch, NotEquivariant, NotStable
from .field import DEFAULT_DEGREE_CAP, Field, FieldElement, embedding, extend_field
from .linalg import MatrixF, nullspace_codes, rank_of_vectors, rref_codes
from .moore import moore_matrix
from .poly import PolynomialF, monomials_of_degree
from .semilinear import (SemilinearEndo, descend_vector_space, extend_scalars, fixed_space,
                         fq_linear_matrix, fq_vector_to_codes, splitting_degree)


# -- finite algebras -------------------------------------------------------------

class FinAlgebra:
    """Associative unital F_q-algebra with basis e_0..e_{d-1}.

    ``constants[i][j][k]`` is the e_k-coefficient of e_i * e_j (codes of ``base``).
    """

    def __init__(self, base: Field, constants, unit: Sequence[int], name: str = ""):
        if base.m != 1:
            raise FieldMismatch("algebra base must be F_q itself")
        self.base = base
        self.dim = len(unit)
        self.constants = tuple(tuple(tuple(c % base.order for c in ck) for ck in cj)
                               for cj in constants)
        self.unit = tuple(unit)
        self.name = name
        self._validate()

    def __eq__(self, other):
        return (isinstance(other, FinAlgebra) and self.base is other.base
                and self.constants == other.constants and self.unit == other.unit)

    def __hash__(self):
        return hash((self.constants, self.unit))

    def __repr__(self):
        return f"FinAlgebra({self.name or 'dim ' + str(self.dim)} over {self.base})"

    def regular_matrix(self, i: int) -> MatrixF:
        """Left multiplication by e_i in the basis e_0..e_{d-1}."""
        d = self.dim
        return MatrixF.from_codes(self.base, [[self.constants[i][j][k] for j in range(d)]
                                              for k in range(d)], d)

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        B = self.base.backend
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = B.mul(a, b)
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] = B.add(out[k], B.mul(ab, c))
        return out

    def _validate(self):
        d = self.dim
        if len(self.constants) != d or any(len(r) != d or any(len(c) != d for c in r)
                                           for r in self.constants):
            raise ValueError("structure constants must be a d x d x d array")
        basis = [[int(i == j) for i in range(d)] for j in range(d)]
        for x in basis:
            if self.multiply(self.unit, x) != x or self.multiply(x, self.unit) != x:
                raise ValueError("unit is not a two-sided identity")
        for x in basis:
            for y in basis:
                xy = self.multiply(x, y)
                for z in basis:
                    if self.multiply(xy, z) != self.multiply(x, self.multiply(y, z)):
                        raise ValueError("structure constants are not associative")

    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.constants[i][j] == self.constants[j][i] for i in range(d) for j in range(d))

    # -- standard examples
    @classmethod
    def base_field(cls, Fq: Field) -> "FinAlgebra":
        return cls(Fq, [[[1]]], [1], "F_q")

    @classmethod
    def truncated_polynomials(cls, Fq: Field, n: int) -> "FinAlgebra":
        """F_q[x]/(x^n), basis 1, x, ..., x^{n-1}."""
        c = [[[int(i + j == k) for k in range(n)] for j in range(n)] for i in range(n)]
        return cls(Fq, c, [1] + [0] * (n - 1), f"F_q[x]/(x^{n})")

    @classmethod
    def dual_numbers(cls, Fq: Field) -> "FinAlgebra":
        return cls.truncated_polynomials(Fq, 2)

    @classmethod
    def split(cls, Fq: Field, n: int) -> "FinAlgebra":
        """F_q^n with orthogonal idempotent basis."""
        c = [[[int(i == j == k) for k in range(n)] for j in range(n)] for i in range(n)]
        return cls(Fq, c, [1] * n, f"F_q^{n}")

    @classmethod
    def upper_triangular(cls, Fq: Field) -> "FinAlgebra":
        """2x2 upper triangular matrices; basis E11, E12, E22 (non-commutative)."""
        units = [(0, 0), (0, 1), (1, 1)]
        c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        for i, (a, b) in enumerate(units):
            for j, (cc, d) in enumerate(units):
                if b == cc:
                    c[i][j][units.index((a, d))] = 1
        return cls(Fq, c, [1, 0, 1], "upper triangular 2x2")

    @classmethod
    def extension(cls, Fq: Field, m: int) -> "FinAlgebra":
        """F_{q^m} regarded as an m-dimensional F_q-algebra in the basis (1, g, ...)."""
        K = Field.of(Fq.q, m)
        basis = [b.value for b in K.base_basis()]
        c = [[K.to_base_coords(K.backend.mul(bi, bj)) for bj in basis] for bi in basis]
        return cls(Fq, c, [1] + [0] * (m - 1), f"F_q^({m})")


# -- equivariant modules -----------------------------------------------------------

def _embed_algebra_matrix(alg: FinAlgebra, field: Field, M: MatrixF) -> MatrixF:
    return M.embed(embedding(alg.base, field))


@dataclass(frozen=True)
class EquivariantModule:
    """V = field^n with an A (x) field action and a commuting semilinear sigma."""
    algebra: FinAlgebra
    field: Field
    action: tuple  # MatrixF per algebra basis element
    sigma: SemilinearEndo

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        if self.field.base_field is not self.algebra.base:
            raise FieldMismatch("module field is not an extension of the algebra base")
        if len(self.action) != self.algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")

    @property
    def n(self) -> int:
        return self.sigma.n

    def extend(self, e: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> "EquivariantModule":
        K, emb = extend_field(self.field, e, degree_cap)
        return EquivariantModule(self.algebra, K, [a.embed(emb) for a in self.action],
                                 extend_scalars(self.sigma, e, degree_cap))

    @classmethod
    def canonical(cls, algebra: FinAlgebra, field: Field) -> "EquivariantModule":
        """A (x) field, free of rank one, with sigma = id (x) phi."""
        d = algebra.dim
        action = [_embed_algebra_matrix(algebra, field, algebra.regular_matrix(i)) for i in range(d)]
        return cls(algebra, field, action, SemilinearEndo(field, MatrixF.identity(field, d)))


@dataclass
class EquivarianceReport:
    ok: bool
    relation: str | None = None
    index: tuple | None = None


def check_equivariant(M: EquivariantModule) -> EquivarianceReport:
    """First violated relation among unit, multiplication table and sigma-commutation."""
    F, alg, n = M.field, M.algebra, M.n
    emb = embedding(alg.base, F)
    rho = M.action
    if any(r.field is not F or r.shape != (n, n) for r in rho):
        return EquivarianceReport(False, "action matrices have wrong field or shape")
    I = MatrixF.identity(F, n)
    unit = MatrixF.zeros(F, n, n)
    for i, c in enumerate(alg.unit):
        if c:
            unit = unit + rho[i].scale(FieldElement(F, emb.image_code(c)))
    if unit != I:
        return EquivarianceReport(False, "unit acts as identity")
    d = alg.dim
    for i in range(d):
        for j in range(d):
            rhs = MatrixF.zeros(F, n, n)
            for k, c in enumerate(alg.constants[i][j]):
                if c:
                    rhs = rhs + rho[k].scale(FieldElement(F, emb.image_code(c)))
            if rho[i] @ rho[j] != rhs:
                return EquivarianceReport(False, "multiplication table", (i, j))
    A = M.sigma.A
    for i in range(d):
        if A @ rho[i].frobenius(1) != rho[i] @ A:
            return EquivarianceReport(False, "sigma commutes with action", (i,))
    return EquivarianceReport(True)


@dataclass(frozen=True, eq=False)
class DescendedModule:
    """The F_q-form W = F_q^n with its A-action and the certificate G.

    G (over F_{q^{me}}) satisfies A_sigma phi(G) = G and G rho_W(a) = rho_V(a) G.
    """
    algebra: FinAlgebra
    dim: int
    action: tuple  # MatrixF over algebra.base
    certificate: MatrixF
    e: int
    source: EquivariantModule

    def tensor_up(self, field: Field) -> EquivariantModule:
        """W (x) field with the standard Frobenius."""
        emb = embedding(self.algebra.base, field)
        return EquivariantModule(self.algebra, field, [a.embed(emb) for a in self.action],
                                 SemilinearEndo(field, MatrixF.identity(field, self.dim)))


def verify_round_trip(D: DescendedModule) -> bool:
    """The certificate is an equivariant isomorphism W (x) K -> V (x) K."""
    G = D.certificate
    K = G.field
    V = D.source.extend(K.m // D.source.field.m) if K is not D.source.field else D.source
    W = D.tensor_up(K)
    if D.dim == 0:
        return True
    if not G.is_invertible():
        return False
    if V.sigma.A @ G.frobenius(1) != G @ W.sigma.A:
        return False
    return all(G @ rw == rv @ G for rw, rv in zip(W.action, V.action))


def descend_module(M: EquivariantModule, degree_cap: int = DEFAULT_DEGREE_CAP) -> DescendedModule:
    report = check_equivariant(M)
    if not report.ok:
        raise NotEquivariant(f"module is not equivariant: {report.relation}",
                             relation=report.relation, index=list(report.index or ()))
    desc = descend_vector_space(M.sigma, degree_cap)
    G = desc.certificate
    K = G.field
    Ext = M.extend(desc.e, degree_cap) if desc.e > 1 else M
    Ginv = G.inverse() if M.n else G
    action_W = []
    for rho in Ext.action:
        R = Ginv @ rho @ G
        if not all(K.in_base(c) for row in R.codes for c in row):
            raise AssertionError("descended action is not F_q-rational")  # pragma: no cover
        action_W.append(MatrixF.from_codes(M.algebra.base,
                                           [[K.to_base_coords(c)[0] for c in row] for row in R.codes],
                                           M.n))
    D = DescendedModule(M.algebra, M.n, tuple(action_W), G, desc.e, M)
    if not verify_round_trip(D):
        raise AssertionError("descent certificate failed verification")  # pragma: no cover
    return D


# -- Hom spaces -------------------------------------------------------------------

def _vec(M: MatrixF) -> list[int]:
    return [c for row in M.codes for c in row]


def _unvec(field: Field, v: Sequence[int], rows: int, cols: int) -> MatrixF:
    return MatrixF.from_codes(field, [list(v[r * cols:(r + 1) * cols]) for r in range(rows)], cols)


def module_hom_basis(field: Field, act_src: Sequence[MatrixF], act_tgt: Sequence[MatrixF],
                     n_src: int, n_tgt: int) -> list[MatrixF]:
    """Basis over ``field`` of {H : H act_src(a) = act_tgt(a) H for all a}."""
    size = n_src * n_tgt
    cols = []
    for idx in range(size):
        E = _unvec(field, [int(t == idx) for t in range(size)], n_tgt, n_src)
        col = []
        for rs, rt in zip(act_src, act_tgt):
            col.extend(_vec(E @ rs - rt @ E))
        cols.append(col)
    rows = [list(r) for r in zip(*cols)] if cols and cols[0] else []
    kernel = nullspace_codes(field, rows, size)
    return [_unvec(field, v, n_tgt, n_src) for v in kernel]


@dataclass(frozen=True, eq=False)
class HomSpace:
    basis: list[MatrixF]
    over: Field  # the field the basis is a basis over
    field: Field  # the field the matrices live in

    @property
    def dim(self) -> int:
        return len(self.basis)


def _equivariant_hom_basis(M: EquivariantModule, N: EquivariantModule) -> list[MatrixF]:
    F = M.field
    nM, nN = M.n, N.n
    size = nM * nN
    if size == 0:
        return []
    B = F.backend
    AM, AN = M.sigma.A, N.sigma.A

    def image(idx, c):
        E = _unvec(F, [c if t == idx else 0 for t in range(size)], nN, nM)
        out = []
        for rs, rt in zip(M.action, N.action):
            out.extend(_vec(E @ rs - rt @ E))
        out.extend(_vec(E @ AM - AN @ E.frobenius(1)))
        return out

    n_out = size * (len(M.action) + 1)
    L = fq_linear_matrix(F, size, image, n_out)
    kernel = nullspace_codes(F.base_field, L, size * F.m)
    return [_unvec(F, fq_vector_to_codes(F, size, v), nN, nM) for v in kernel]


def hom_space(M: EquivariantModule, N: EquivariantModule, mode: str = "linear",
              extend: bool = True, degree_cap: int = DEFAULT_DEGREE_CAP) -> HomSpace:
    """Homomorphisms M -> N of A (x) F-modules, optionally commuting with sigma.

    In equivariant mode the system is only F_q-linear.  With ``extend`` both
    modules are first extended to the lcm of their splitting degrees, the
    finite level at which every equivariant hom over the algebraic closure
    is already defined.
    """
    if M.algebra != N.algebra:
        raise AlgebraMismatch("modules are over different algebras")
    if M.field is not N.field:
        raise FieldMismatch("modules are over different fields")
    if mode == "linear":
        return HomSpace(module_hom_basis(M.field, M.action, N.action, M.n, N.n), M.field, M.field)
    if mode != "equivariant":
        raise ValueError(f"unknown hom mode {mode!r}")
    if extend:
        e = math.lcm(splitting_degree(M.sigma, degree_cap), splitting_degree(N.sigma, degree_cap))
        if e > 1:
            M, N = M.extend(e, degree_cap), N.extend(e, degree_cap)
    return HomSpace(_equivariant_hom_basis(M, N), M.field.base_field, M.field)


def descended_hom_space(D1: DescendedModule, D2: DescendedModule) -> HomSpace:
    if D1.algebra != D2.algebra:
        raise AlgebraMismatch("modules are over different algebras")
    Fq = D1.algebra.base
    return HomSpace(module_hom_basis(Fq, D1.action, D2.action, D1.dim, D2.dim), Fq, Fq)


# -- element and graded-ideal descent ----------------------------------------------

def _span_rank(field: Field, polys: Sequence[PolynomialF]) -> int:
    mons = sorted({e for f in polys for e in f.terms}, reverse=True)
    return rank_of_vectors(field, [f.coefficient_vector(mons) for f in polys])


def element_descent(f: PolynomialF) -> list[PolynomialF]:
    """F_q-polynomials a_r spanning the same space as f, phi(f), ..., phi^n(f).

    f is written as sum_r mu_r a_r over the distinguished basis elements with a
    nonzero component; the a_r are recovered by inverting the Moore matrix of
    the mu_r against the Frobenius orbit of f.
    """
    F = f.field
    if f.is_zero():
        return []
    comps = f.base_components()
    idx = [i for i, c in enumerate(comps) if not c.is_zero()]
    basis = F.base_basis()
    mu = [basis[i] for i in idx]
    Minv = moore_matrix(mu).inverse()
    orbit = [f.frobenius_on_coeffs(s) for s in range(len(mu))]
    out = []
    for r in range(len(mu)):
        a = PolynomialF(F, f.nvars)
        for s, g in enumerate(orbit):
            c = Minv.codes[r][s]
            if c:
                a = a + g * FieldElement(F, c)
        out.append(a)
    if any(not a.has_base_coefficients() for a in out):
        raise AssertionError("Moore inversion produced non-rational coefficients")  # pragma: no cover
    r_orbit, r_out = _span_rank(F, orbit), _span_rank(F, out)
    if not (r_orbit == r_out == _span_rank(F, orbit + out)):
        raise AssertionError("span equality failed")  # pragma: no cover
    return [a.to_base() for a in out]


class GradedIdealTrunc:
    """Homogeneous pieces I_0..I_D of an ideal, each in reduced echelon form.

    ``pieces[d]`` is a list of homogeneous degree-d polynomials spanning I_d;
    missing degrees are zero.  Multiplicative closure x_i I_d <= I_{d+1} is
    enforced within the truncation.
    """

    def __init__(self, field: Field, nvars: int, D: int, pieces: dict[int, Sequence[PolynomialF]],
                 check_closure: bool = True):
        self.field, self.nvars, self.D = field, nvars, D
        self.pieces: dict[int, list[PolynomialF]] = {}
        for d in range(D + 1):
            polys = list(pieces.get(d, []))
            for f in polys:
                if f.field is not field or f.nvars != nvars:
                    raise FieldMismatch("generator over the wrong ring")
                if not f.is_zero() and (not f.is_homogeneous() or f.degree() != d):
                    raise ValueError(f"piece {d} contains a non-homogeneous or wrong-degree element")
            self.pieces[d] = self._echelon(d, polys)
        if any(d > D for d in pieces):
            raise ValueError("piece beyond the truncation degree")
        if check_closure:
            self._check_closure()

    def monomials(self, d: int):
        return monomials_of_degree(self.nvars, d)

    def _echelon(self, d: int, polys):
        mons = self.monomials(d)
        vecs = [f.coefficient_vector(mons) for f in polys if not f.is_zero()]
        if not vecs:
            return []
        R, _ = rref_codes(self.field, vecs)
        return [PolynomialF.from_vector(self.field, self.nvars, mons, v) for v in R]

    def dim(self, d: int) -> int:
        return len(self.pieces[d])

    def contains(self, f: PolynomialF) -> bool:
        d = f.degree()
        if f.is_zero():
            return True
        if d > self.D or d < 0:
            return False
        mons = self.monomials(d)
        basis = [b.coefficient_vector(mons) for b in self.pieces[d]]
        return rank_of_vectors(self.field, basis + [f.coefficient_vector(mons)]) == len(basis)

    def _check_closure(self):
        xs = PolynomialF.variables(self.field, self.nvars)
        for d in range(self.D):
            for b in self.pieces[d]:
                for x in xs:
                    if not self.contains(x * b):
                        raise ValueError(f"not closed under multiplication in degree {d + 1}")

    @classmethod
    def generated_by(cls, field: Field, nvars: int, gens: Sequence[PolynomialF],
                     D: int = 4) -> "GradedIdealTrunc":
        """Truncation of the ideal generated by homogeneous ``gens``."""
        pieces: dict[int, list[PolynomialF]] = {d: [] for d in range(D + 1)}
        for g in gens:
            if not g.is_zero() and g.degree() <= D:
                if not g.is_homogeneous():
                    raise ValueError("generators must be homogeneous")
                pieces[g.degree()].append(g)
        xs = PolynomialF.variables(field, nvars)
        for d in range(D):
            pieces[d + 1].extend(x * b for b in pieces[d] for x in xs)
            tmp = cls(field, nvars, D, {d + 1: pieces[d + 1]}, check_closure=False)
            pieces[d + 1] = tmp.pieces[d + 1]
        return cls(field, nvars, D, pieces)

    def __eq__(self, other):
        return (isinstance(other, GradedIdealTrunc) and self.field is other.field
                and self.nvars == other.nvars and self.D == other.D
                and self.pieces == other.pieces)

    def __repr__(self):
        dims = [self.dim(d) for d in range(self.D + 1)]
        return f"GradedIdealTrunc({self.field}, nvars={self.nvars}, dims={dims})"


def graded_ideal_descent(I: GradedIdealTrunc) -> GradedIdealTrunc:
    """The F_q-form J with J_d (x) F_{q^m} = I_d, computed as Frobenius-fixed vectors."""
    F = I.field
    Fq = F.base_field
    emb = F.base_embedding
    out = {}
    for d in range(I.D + 1):
        basis = I.pieces[d]
        r = len(basis)
        if not r:
            out[d] = []
            continue
        mons = I.monomials(d)
        vecs = [b.coefficient_vector(mons) for b in basis]
        pivots = [next(i for i, c in enumerate(v) if c) for v in vecs]
        S = []
        for b in basis:
            fb = b.frobenius_on_coeffs(1)
            if not I.contains(fb):
                raise NotStable(d, fb)
            fv = fb.coefficient_vector(mons)
            S.append([fv[p] for p in pivots])
        # coefficient vector c of v = sum c_j b_j maps to S^T phi(c)
        St = MatrixF.from_codes(F, S, r).transpose()
        fs = fixed_space(SemilinearEndo(F, St))
        if fs.dim != r:
            raise AssertionError("Frobenius does not split on a stable piece")  # pragma: no cover
        J = []
        for c in fs.basis:
            v = PolynomialF(F, I.nvars)
            for cj, b in zip(c, basis):
                if cj:
                    v = v + b * cj
            J.append(v.to_base())
        out[d] = J
    result = GradedIdealTrunc(Fq, I.nvars, I.D, out)
    for d in range(I.D + 1):
        up = [j.embed(emb) for j in result.pieces[d]]
        if _span_rank(F, up) != I.dim(d) or _span_rank(F, up + I.pieces[d]) != I.dim(d):
            raise AssertionError("descended ideal does not recover I")  # pragma: no cover
    return result
