"""Frobenius-semilinear automorphisms of F_{q^m}^n and the Lang equation.

A :class:`SemilinearEndo` ``(A, s)`` acts by ``v -> A @ phi^s(v)`` where phi is
the coordinatewise q-power map.  Its fixed vectors form an F_q-space; after a
finite scalar extension they span, which is how the descent data here are
trivialized.  The Lang map is ``g -> g^{-1} phi(g)``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from itertools import product

from .errors import CapacityExceeded, FieldMismatch, NotInvertible, Singular
from .field import DEFAULT_DEGREE_CAP, Field, FieldElement, embedding, extend_field
from .linalg import MatrixF, block_diag, nullspace_codes, rref_codes


@dataclass(frozen=True, eq=False)
class SemilinearEndo:
    field: Field
    A: MatrixF
    twist: int = 1

    def __post_init__(self):
        if self.A.field is not self.field:
            raise FieldMismatch("matrix field differs from endomorphism field")
        if self.A.rows != self.A.cols:
            raise ValueError("semilinear endomorphism needs a square matrix")
        if self.A.rows and not self.A.is_invertible():
            raise NotInvertible("matrix of a semilinear automorphism must be invertible")

    @property
    def n(self) -> int:
        return self.A.rows

    def __call__(self, v):
        F = self.field
        col = MatrixF.from_codes(F, [[F.frob_code(x.value, self.twist)] for x in v], 1)
        return (self.A @ col).column(0)

    def __eq__(self, other):
        return (isinstance(other, SemilinearEndo) and self.field is other.field
                and self.A == other.A and self.twist == other.twist)

    def __hash__(self):
        return hash((self.A, self.twist))

    def iterate_matrix(self, j: int) -> MatrixF:
        """Matrix of sigma^j, which equals (that matrix) @ phi^{j s}."""
        M = MatrixF.identity(self.field, self.n)
        for i in range(j):
            M = M @ self.A.frobenius(i * self.twist)
        return M

    def direct_sum(self, other: "SemilinearEndo") -> "SemilinearEndo":
        if other.field is not self.field or other.twist != self.twist:
            raise FieldMismatch("direct sum needs the same field and twist")
        return SemilinearEndo(self.field, block_diag(self.A, other.A), self.twist)

    def conjugate(self, P: MatrixF) -> "SemilinearEndo":
        """The endomorphism P sigma P^{-1}, with matrix P A phi^s(P)^{-1}."""
        return SemilinearEndo(self.field, P @ self.A @ P.frobenius(self.twist).inverse(), self.twist)


@dataclass(frozen=True, eq=False)
class FixedSpace:
    parent: SemilinearEndo
    basis: list[list[FieldElement]] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _require_twist_one(sigma: SemilinearEndo):
    if sigma.twist != 1:
        raise ValueError("only twist 1 is supported; regard q^s as the base instead")


def fq_linear_matrix(field: Field, n: int, image, n_out: int | None = None) -> list[list[int]]:
    """Matrix over F_q (codes of ``field.base_field``) of an F_q-linear map F^n -> F^{n_out}.

    ``image(j, c)`` returns the image (list of codes) of ``c * e_j``; the
    F_q-basis of F^n is ``g^i e_j`` at index ``j * m + i``.
    """
    m = field.m
    n_out = n if n_out is None else n_out
    basis_codes = [b.value for b in field.base_basis()]
    cols = []
    for j in range(n):
        for i in range(m):
            col = []
            for x in image(j, basis_codes[i]):
                col.extend(field.to_base_coords(x))
            cols.append(col)
    return [[col[r] for col in cols] for r in range(n_out * m)]


def fq_vector_to_codes(field: Field, n: int, coords: list[int]) -> list[int]:
    m = field.m
    return [field.from_base_coords(coords[j * m:(j + 1) * m]) for j in range(n)]


def fixed_space(sigma: SemilinearEndo) -> FixedSpace:
    """F_q-basis of {v : A phi(v) = v}, canonical (reduced echelon in F_q-coordinates)."""
    _require_twist_one(sigma)
    F, n = sigma.field, sigma.n
    if n == 0:
        return FixedSpace(sigma, [])
    B = F.backend
    A = sigma.A.codes

    def image(j, c):
        fc = F.frob_code(c, 1)
        return [B.sub(B.mul(A[r][j], fc), c if r == j else 0) for r in range(n)]

    L = fq_linear_matrix(F, n, image)
    kernel = nullspace_codes(F.base_field, L, n * F.m)
    basis = [[FieldElement(F, c) for c in fq_vector_to_codes(F, n, v)] for v in kernel]
    return FixedSpace(sigma, basis)


def splitting_degree(sigma: SemilinearEndo, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Least e with a full fixed space over F_{q^{me}}: the order of sigma^m."""
    _require_twist_one(sigma)
    F = sigma.field
    if sigma.n == 0:
        return 1
    T = sigma.iterate_matrix(F.m)
    I = MatrixF.identity(F, sigma.n)
    limit = degree_cap // F.degree
    P = T
    for e in range(1, limit + 1):
        if P == I:
            return e
        P = P @ T
    raise CapacityExceeded(f"splitting degree exceeds degree cap {degree_cap}",
                           cap=degree_cap, field_degree=F.degree)


def extend_scalars(sigma: SemilinearEndo, e: int,
                   degree_cap: int = DEFAULT_DEGREE_CAP) -> SemilinearEndo:
    big, emb = extend_field(sigma.field, e, degree_cap)
    return SemilinearEndo(big, sigma.A.embed(emb), sigma.twist)


@dataclass(frozen=True, eq=False)
class VectorSpaceDescent:
    """Result of descending (V, sigma): W = F_q^dim and the certificate G.

    The columns of G are sigma-fixed vectors over F_{q^{me}} forming a basis;
    G maps W (x) F_{q^{me}} isomorphically onto V (x) F_{q^{me}} and carries
    the standard Frobenius to sigma: A phi(G) = G.
    """
    dim: int
    basis: list[list[FieldElement]]
    e: int
    certificate: MatrixF
    extended: SemilinearEndo


def descend_vector_space(sigma: SemilinearEndo,
                         degree_cap: int = DEFAULT_DEGREE_CAP) -> VectorSpaceDescent:
    e = splitting_degree(sigma, degree_cap)
    ext = extend_scalars(sigma, e, degree_cap)
    fs = fixed_space(ext)
    n = sigma.n
    if fs.dim != n:
        raise AssertionError("fixed space does not span after splitting")  # pragma: no cover
    G = MatrixF.from_columns(ext.field, fs.basis, n)
    if n and (ext.A @ G.frobenius(1) != G or not G.is_invertible()):
        raise AssertionError("descent certificate failed verification")  # pragma: no cover
    return VectorSpaceDescent(n, fs.basis, e, G, ext)


# -- dual numbers F[eps]/(eps^2) -------------------------------------------------

@dataclass(frozen=True, eq=False)
class DualMatrix:
    """The matrix a0 + eps * a1 over F[eps]/(eps^2)."""
    a0: MatrixF
    a1: MatrixF

    def __post_init__(self):
        if self.a0.field is not self.a1.field or self.a0.shape != self.a1.shape:
            raise FieldMismatch("dual-number parts must share field and shape")

    @property
    def field(self) -> Field:
        return self.a0.field

    @property
    def n(self) -> int:
        return self.a0.rows

    @classmethod
    def identity(cls, field: Field, n: int) -> "DualMatrix":
        return cls(MatrixF.identity(field, n), MatrixF.zeros(field, n, n))

    def __matmul__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.a0 @ other.a0, self.a0 @ other.a1 + self.a1 @ other.a0)

    def __eq__(self, other):
        return isinstance(other, DualMatrix) and self.a0 == other.a0 and self.a1 == other.a1

    def __hash__(self):
        return hash((self.a0, self.a1))

    def is_invertible(self) -> bool:
        return self.a0.is_invertible()

    def inverse(self) -> "DualMatrix":
        inv0 = self.a0.inverse()
        return DualMatrix(inv0, MatrixF.zeros(self.field, self.n, self.n) - inv0 @ self.a1 @ inv0)

    def frobenius(self, s: int = 1) -> "DualMatrix":
        return DualMatrix(self.a0.frobenius(s), self.a1.frobenius(s))

    def embed(self, emb) -> "DualMatrix":
        return DualMatrix(self.a0.embed(emb), self.a1.embed(emb))


def lang_map(G):
    """beta(G) = G^{-1} phi(G)."""
    return G.inverse() @ G.frobenius(1)


@dataclass(frozen=True, eq=False)
class LangSolution:
    e: int
    G: object  # MatrixF or DualMatrix over F_{q^{me}}
    target: object  # the input embedded into the same field


def _lang_solve_field(A: MatrixF, degree_cap: int) -> LangSolution:
    F = A.field
    n = A.rows
    if n == 0:
        return LangSolution(1, A, A)
    try:
        At_inv = A.transpose().inverse()
    except Singular as exc:
        raise NotInvertible("Lang equation needs an invertible target", rank=exc.rank) from None
    tau = SemilinearEndo(F, At_inv)
    desc = descend_vector_space(tau, degree_cap)
    G = desc.certificate.transpose()
    target = A.embed(embedding(F, G.field))
    if lang_map(G) != target:
        raise AssertionError("Lang solution failed verification")  # pragma: no cover
    return LangSolution(desc.e, G, target)


def artin_schreier(field: Field, c: int) -> int | None:
    """A code z with phi(z) - z = c in ``field``, or None if there is none."""
    B = field.backend
    L = fq_linear_matrix(field, 1, lambda j, x: [B.sub(field.frob_code(x, 1), x)])
    rhs = field.to_base_coords(c)
    Fq = field.base_field
    aug = [row + [b] for row, b in zip(L, rhs)]
    R, piv = rref_codes(Fq, aug)
    size = field.m
    if size in piv:
        return None
    z = [0] * size
    for row, pc in zip(R, piv):
        z[pc] = row[-1]
    return field.from_base_coords(z)


def _lang_solve_dual(A: DualMatrix, degree_cap: int) -> LangSolution:
    if not A.is_invertible():
        raise NotInvertible("Lang equation needs an invertible target", rank=A.a0.rank())
    F, n = A.field, A.n
    base = _lang_solve_field(A.a0, degree_cap)
    e0 = base.e
    t = 1
    while F.degree * e0 * t <= degree_cap:
        E = e0 * t
        K, emb = extend_field(F, E, degree_cap)
        G0 = base.G.embed(embedding(base.G.field, K))
        C = G0 @ A.a1.embed(emb) @ G0.frobenius(1).inverse()
        Z = []
        for row in C.codes:
            zrow = [artin_schreier(K, c) for c in row]
            if any(z is None for z in zrow):
                break
            Z.append(zrow)
        else:
            Zm = MatrixF.from_codes(K, Z, n)
            G = DualMatrix(G0, Zm @ G0)
            target = A.embed(emb)
            if lang_map(G) != target:
                raise AssertionError("dual Lang solution failed verification")  # pragma: no cover
            return LangSolution(E, G, target)
        t += 1
    raise CapacityExceeded(f"dual-number Lang equation not solvable within cap {degree_cap}",
                           cap=degree_cap)


def lang_solve(A, degree_cap: int = DEFAULT_DEGREE_CAP) -> LangSolution:
    """Solve G^{-1} phi(G) = A over the smallest extension F_{q^{me}} that allows it."""
    if isinstance(A, DualMatrix):
        return _lang_solve_dual(A, degree_cap)
    if A.rows != A.cols:
        raise ValueError("Lang equation needs a square matrix")
    return _lang_solve_field(A, degree_cap)


# -- surjectivity report -------------------------------------------------------

@dataclass
class BetaReport:
    q: int
    m: int
    n: int
    ring: str
    targets: int
    hit: int
    all_hit: bool
    e_distribution: dict[int, int]


def general_linear_group(field: Field, n: int) -> list[MatrixF]:
    out = []
    for flat in product(range(field.order), repeat=n * n):
        M = MatrixF.from_codes(field, [flat[i * n:(i + 1) * n] for i in range(n)], n)
        if M.is_invertible():
            out.append(M)
    return out


ENUMERATION_LIMIT = 1 << 16


def beta_surjectivity_report(q: int, m: int, n: int, ring: str = "field",
                             degree_cap: int = DEFAULT_DEGREE_CAP):
    """Solve the Lang equation for every target in GL_n over F_{q^m} (or its dual numbers).

    ``ring="mu_power"`` instead runs the (q-1)-power demonstration on mu_{q-1}.
    """
    if ring == "mu_power":
        from .cocycle import mu_power_demo
        return mu_power_demo(q, m)
    F = Field.of(q, m, degree_cap)
    size = F.order ** (n * n) * (F.order ** (n * n) if ring == "dual_numbers" else 1)
    if size > ENUMERATION_LIMIT:
        raise CapacityExceeded("group too large to enumerate", size=size)
    gl = general_linear_group(F, n)
    if ring == "field":
        targets = gl
    elif ring == "dual_numbers":
        all_mats = [MatrixF.from_codes(F, [flat[i * n:(i + 1) * n] for i in range(n)], n)
                    for flat in product(range(F.order), repeat=n * n)]
        targets = [DualMatrix(a0, a1) for a0 in gl for a1 in all_mats]
    else:
        raise ValueError(f"unknown coefficient ring {ring!r}")
    dist: Counter = Counter()
    hit = 0
    for a in targets:
        sol = lang_solve(a, degree_cap)
        if lang_map(sol.G) == sol.target:
            hit += 1
            dist[sol.e] += 1
    return BetaReport(q, m, n, ring, len(targets), hit, hit == len(targets),
                      dict(sorted(dist.items())))
