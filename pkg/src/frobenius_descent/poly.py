"""Sparse multivariate polynomials with coefficients in a finite field."""
from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .errors import FieldMismatch
from .field import EmbeddingMap, Field, FieldElement


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree d, in decreasing lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


class PolynomialF:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero codes."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[tuple[int, ...], object] = ()):
        clean = {}
        for exp, c in dict(terms).items():
            if len(exp) != nvars:
                raise ValueError("exponent length does not match nvars")
            if isinstance(c, FieldElement):
                if c.field is not field:
                    raise FieldMismatch(f"coefficient from {c.field} in {field}")
                c = c.value
            else:
                c = c % field.p
            if c:
                clean[tuple(exp)] = c
        self.field = field
        self.nvars = nvars
        self.terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def _raw(cls, field, nvars, terms):
        out = cls.__new__(cls)
        out.field, out.nvars = field, nvars
        out.terms = dict(sorted(((e, c) for e, c in terms.items() if c), reverse=True))
        return out

    @classmethod
    def variables(cls, field: Field, nvars: int) -> list["PolynomialF"]:
        return [cls._raw(field, nvars, {tuple(int(i == j) for i in range(nvars)): 1})
                for j in range(nvars)]

    @classmethod
    def constant(cls, field: Field, nvars: int, c) -> "PolynomialF":
        return cls(field, nvars, {(0,) * nvars: c})

    def _check(self, other):
        if not isinstance(other, PolynomialF):
            raise TypeError("expected PolynomialF")
        if other.field is not self.field or other.nvars != self.nvars:
            raise FieldMismatch(f"polynomials over {self.field}/{self.nvars} vs "
                                f"{other.field}/{other.nvars}")

    def _coerce(self, other):
        if isinstance(other, (int, FieldElement)):
            return PolynomialF.constant(self.field, self.nvars, other)
        self._check(other)
        return other

    def __eq__(self, other):
        if not isinstance(other, PolynomialF):
            return NotImplemented
        return (self.field is other.field and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field.order, self.nvars, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = self._coerce(other)
        B = self.field.backend
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = B.add(out.get(e, 0), c)
        return PolynomialF._raw(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        B = self.field.backend
        return PolynomialF._raw(self.field, self.nvars, {e: B.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        B = self.field.backend
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = B.add(out.get(e, 0), B.mul(c1, c2))
        return PolynomialF._raw(self.field, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = PolynomialF.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(exp), 0))

    def leading(self) -> tuple[tuple[int, ...], FieldElement]:
        e = next(iter(self.terms))
        return e, FieldElement(self.field, self.terms[e])

    def eval(self, point: Sequence[FieldElement]) -> FieldElement:
        F = self.field
        B = F.backend
        pt = [x.value if isinstance(x, FieldElement) else x % F.p for x in point]
        if len(pt) != self.nvars:
            raise ValueError("point has wrong length")
        acc = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t = B.mul(t, B.pow(x, k))
            acc = B.add(acc, t)
        return FieldElement(F, acc)

    def frobenius_on_coeffs(self, s: int = 1) -> "PolynomialF":
        F = self.field
        return PolynomialF._raw(F, self.nvars, {e: F.frob_code(c, s) for e, c in self.terms.items()})

    def embed(self, emb: EmbeddingMap) -> "PolynomialF":
        if emb.source is not self.field:
            raise FieldMismatch("embedding source differs from polynomial field")
        return PolynomialF._raw(emb.target, self.nvars,
                                {e: emb.image_code(c) for e, c in self.terms.items()})

    def has_base_coefficients(self) -> bool:
        return all(self.field.in_base(c) for c in self.terms.values())

    def to_base(self) -> "PolynomialF":
        """The same polynomial over F_q; every coefficient must lie in F_q."""
        F = self.field
        if not self.has_base_coefficients():
            raise ValueError("coefficients do not lie in the base field")
        return PolynomialF._raw(F.base_field, self.nvars,
                                {e: F.to_base_coords(c)[0] for e, c in self.terms.items()})

    def base_components(self) -> list["PolynomialF"]:
        """Polynomials a_i over F_q with self = sum_i g^i a_i (distinguished basis)."""
        F = self.field
        comps = [dict() for _ in range(F.m)]
        for e, c in self.terms.items():
            for i, ci in enumerate(F.to_base_coords(c)):
                if ci:
                    comps[i][e] = ci
        return [PolynomialF._raw(F.base_field, self.nvars, t) for t in comps]

    def coefficient_vector(self, monomials: Sequence[tuple[int, ...]]) -> list[int]:
        return [self.terms.get(m, 0) for m in monomials]

    @classmethod
    def from_vector(cls, field: Field, nvars: int, monomials, codes) -> "PolynomialF":
        return cls._raw(field, nvars, {m: c for m, c in zip(monomials, codes)})

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            coef = repr(FieldElement(self.field, c))
            if mono:
                parts.append(mono if c == 1 else f"({coef})*{mono}")
            else:
                parts.append(coef)
        return " + ".join(parts)


def poly_arith(a: PolynomialF, b=None, op: str = "add"):
    """Dispatch for add, mul, eval (``b`` is the point) and frobenius_on_coeffs."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eval":
        return a.eval(b)
    if op == "frobenius_on_coeffs":
        return a.frobenius_on_coeffs(1 if b is None else b)
    raise ValueError(f"unknown polynomial operation {op!r}")
