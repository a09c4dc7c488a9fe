"""Dense matrices over a :class:`~frobenius_descent.field.Field`.

Entries are kept as integer codes; the public accessors hand out
:class:`FieldElement` values.  Row reduction uses the first nonzero entry of
each column as pivot and produces the reduced echelon form, so every basis
returned here is canonical.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import FieldMismatch, Singular
from .field import EmbeddingMap, Field, FieldElement


def _code(field: Field, x) -> int:
    if isinstance(x, FieldElement):
        if x.field is not field:
            raise FieldMismatch(f"entry from {x.field} in matrix over {field}")
        return x.value
    return x % field.p


def rref_codes(field: Field, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of a code matrix. Returns (nonzero rows, pivot columns)."""
    B = field.backend
    M = [list(r) for r in rows]
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = B.inv(M[r][c])
        M[r] = [B.mul(inv, x) for x in M[r]]
        row_r = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [B.sub(x, B.mul(f, y)) for x, y in zip(M[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace_codes(field: Field, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : M v = 0} in reduced echelon form (as rows)."""
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref_codes(field, rows)
    B = field.backend
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = B.neg(row[f])
        basis.append(v)
    # canonical: echelon form of the basis itself
    if basis:
        basis, _ = rref_codes(field, basis)
    return basis


class MatrixF:
    """An immutable rows x cols matrix over ``field``."""

    __slots__ = ("field", "rows", "cols", "codes")

    def __init__(self, field: Field, entries: Sequence[Sequence], cols: int | None = None):
        codes = tuple(tuple(_code(field, x) for x in row) for row in entries)
        self.field = field
        self.rows = len(codes)
        self.cols = len(codes[0]) if codes else (cols or 0)
        if any(len(r) != self.cols for r in codes):
            raise ValueError("ragged matrix")
        self.codes = codes

    @classmethod
    def from_codes(cls, field: Field, codes, cols: int | None = None) -> "MatrixF":
        m = cls.__new__(cls)
        m.field = field
        m.codes = tuple(tuple(r) for r in codes)
        m.rows = len(m.codes)
        m.cols = len(m.codes[0]) if m.codes else (cols or 0)
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixF":
        return cls.from_codes(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "MatrixF":
        return cls.from_codes(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None):
        cols = [[_code(field, x) for x in c] for c in columns]
        n = len(cols[0]) if cols else (nrows or 0)
        return cls.from_codes(field, [[c[i] for c in cols] for i in range(n)], len(cols))

    @classmethod
    def random(cls, field: Field, rows: int, cols: int, rng) -> "MatrixF":
        return cls.from_codes(field, [[rng.randrange(field.order) for _ in range(cols)]
                                      for _ in range(rows)], cols)

    @classmethod
    def random_invertible(cls, field: Field, n: int, rng) -> "MatrixF":
        while True:
            M = cls.random(field, n, n, rng)
            if M.rank() == n:
                return M

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.codes[i][j])

    def entries(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.field, c) for c in row] for row in self.codes]

    def column(self, j: int) -> list[FieldElement]:
        return [FieldElement(self.field, row[j]) for row in self.codes]

    def columns(self) -> list[list[FieldElement]]:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, MatrixF):
            return NotImplemented
        return (self.field is other.field and self.shape == other.shape
                and self.codes == other.codes)

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.field.m, self.codes))

    def __repr__(self):
        body = "; ".join(", ".join(repr(x) for x in row) for row in self.entries())
        return f"MatrixF({self.field}, [{body}])"

    def _check(self, other: "MatrixF"):
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "MatrixF") -> "MatrixF":
        self._check(other)
        B = self.field.backend
        return MatrixF.from_codes(self.field, [[B.add(x, y) for x, y in zip(r, s)]
                                               for r, s in zip(self.codes, other.codes)], self.cols)

    def __sub__(self, other: "MatrixF") -> "MatrixF":
        self._check(other)
        B = self.field.backend
        return MatrixF.from_codes(self.field, [[B.sub(x, y) for x, y in zip(r, s)]
                                               for r, s in zip(self.codes, other.codes)], self.cols)

    def __matmul__(self, other: "MatrixF") -> "MatrixF":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        B = self.field.backend
        add, mul = B.add, B.mul
        cols = list(zip(*other.codes)) if other.rows else [()] * other.cols
        out = []
        for row in self.codes:
            out_row = []
            for col in cols:
                acc = 0
                for x, y in zip(row, col):
                    if x and y:
                        acc = add(acc, mul(x, y))
                out_row.append(acc)
            out.append(out_row)
        return MatrixF.from_codes(self.field, out, other.cols)

    def apply(self, v: Sequence[FieldElement]) -> list[FieldElement]:
        col = MatrixF.from_columns(self.field, [v], self.cols)
        return (self @ col).column(0)

    def scale(self, c) -> "MatrixF":
        c = _code(self.field, c)
        B = self.field.backend
        return MatrixF.from_codes(self.field, [[B.mul(c, x) for x in r] for r in self.codes], self.cols)

    def transpose(self) -> "MatrixF":
        return MatrixF.from_codes(self.field, [list(c) for c in zip(*self.codes)], self.rows)

    T = property(transpose)

    def frobenius(self, s: int = 1) -> "MatrixF":
        F = self.field
        return MatrixF.from_codes(F, [[F.frob_code(x, s) for x in r] for r in self.codes], self.cols)

    def embed(self, emb: EmbeddingMap) -> "MatrixF":
        if emb.source is not self.field:
            raise FieldMismatch("embedding source differs from matrix field")
        return MatrixF.from_codes(emb.target, [[emb.image_code(x) for x in r] for r in self.codes],
                                  self.cols)

    def rref(self) -> tuple["MatrixF", list[int]]:
        R, piv = rref_codes(self.field, [list(r) for r in self.codes])
        return MatrixF.from_codes(self.field, R, self.cols), piv

    def rank(self) -> int:
        if not self.rows:
            return 0
        return len(rref_codes(self.field, [list(r) for r in self.codes])[1])

    def nullspace(self) -> list[list[FieldElement]]:
        basis = nullspace_codes(self.field, [list(r) for r in self.codes], self.cols)
        return [[FieldElement(self.field, c) for c in v] for v in basis]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "MatrixF":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.codes)]
        R, piv = rref_codes(self.field, aug)
        rank = sum(1 for c in piv if c < n)
        if rank < n:
            raise Singular(rank, n)
        return MatrixF.from_codes(self.field, [r[n:] for r in R], n)

    def solve(self, b: Sequence[FieldElement]) -> list[FieldElement]:
        """One solution of ``self @ x = b`` (free variables set to zero)."""
        bc = [_code(self.field, x) for x in b]
        aug = [list(r) + [c] for r, c in zip(self.codes, bc)]
        R, piv = rref_codes(self.field, aug)
        if self.cols in piv:
            raise Singular(self.rank(), self.cols)
        x = [0] * self.cols
        for row, pc in zip(R, piv):
            x[pc] = row[-1]
        return [FieldElement(self.field, c) for c in x]

    def det(self) -> FieldElement:
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        B = self.field.backend
        M = [list(r) for r in self.codes]
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if M[i][c]), None)
            if piv is None:
                return self.field.zero
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                d = B.neg(d)
            d = B.mul(d, M[c][c])
            inv = B.inv(M[c][c])
            for i in range(c + 1, n):
                if M[i][c]:
                    f = B.mul(M[i][c], inv)
                    M[i] = [B.sub(x, B.mul(f, y)) for x, y in zip(M[i], M[c])]
        return FieldElement(self.field, d)

    def power(self, e: int) -> "MatrixF":
        result = MatrixF.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result


def nullspace(M: MatrixF) -> list[list[FieldElement]]:
    return M.nullspace()


def solve_or_invert(M: MatrixF, b: Iterable[FieldElement] | None = None):
    """Inverse of ``M`` when ``b`` is None, otherwise a solution of ``M x = b``.

    Raises :class:`Singular` (carrying the rank) when ``M`` is rank deficient
    or the system is inconsistent.
    """
    if b is None:
        return M.inverse()
    return M.solve(list(b))


def rank_of_vectors(field: Field, vectors: Sequence[Sequence[int]]) -> int:
    """Rank of a list of code vectors."""
    vs = [list(v) for v in vectors if any(v)]
    if not vs:
        return 0
    return len(rref_codes(field, vs)[1])


def block_diag(*mats: MatrixF) -> MatrixF:
    F = mats[0].field
    n = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = [[0] * c for _ in range(n)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.codes):
            out[r0 + i][c0:c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return MatrixF.from_codes(F, out, c)
