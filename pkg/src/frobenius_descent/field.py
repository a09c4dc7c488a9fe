"""Finite fields F_{q^m}, q = p^k, in a compatible tower.

Elements are stored as integers ``sum(c_i * p**i)`` encoding the coordinates
over F_p in the power basis of the generator of the defining polynomial.
Fields that share an absolute degree over F_p share one arithmetic backend;
the q-structure (which subfield plays the role of F_q) is a field attribute.

Embeddings between fields are made compatible the way Conway polynomials are:
every absolute field carries a distinguished primitive element ``zeta`` whose
norm to each subfield is the subfield's own ``zeta``, and the embedding
F_{p^d} -> F_{p^n} sends ``zeta_d`` to ``zeta_n ** ((p^n - 1) / (p^d - 1))``.
"""
from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from functools import cached_property

from sympy import factorint, primefactors

from . import gfp_poly
from .errors import CapacityExceeded, FieldMismatch

DEFAULT_DEGREE_CAP = 24
TABLE_LIMIT = 1 << 16


def _decode(code: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        code, c = divmod(code, p)
        out.append(c)
    return out


def _encode(coords, p: int) -> int:
    code = 0
    for c in reversed(coords):
        code = code * p + (c % p)
    return code


class PrimeExtension:
    """Arithmetic backend for F_{p^n} on integer codes."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.order = p ** n
        self.modulus = gfp_poly.least_irreducible(n, p) if n > 1 else [0, 1]
        self._exp = self._log = self._zech = None
        self.unit_order = self.order - 1
        self._unit_factors = primefactors(self.unit_order) if self.unit_order > 1 else []
        self.primitive = self._least_primitive()
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    # -- raw polynomial arithmetic (used before tables exist and for big fields)
    def _poly_mul(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> n & 1:
                    a ^= _encode(self.modulus, 2)
            return r
        prod = gfp_poly.mul(_decode(a, p, n), _decode(b, p, n), p)
        return _encode(gfp_poly.mod(prod, self.modulus, p), p)

    def _poly_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._poly_mul(r, a)
            a = self._poly_mul(a, a)
            e >>= 1
        return r

    def _least_primitive(self) -> int:
        if self.order == 2:
            return 1
        for a in range(2, self.order):
            if all(self._poly_pow(a, self.unit_order // r) != 1 for r in self._unit_factors):
                return a
        raise AssertionError("no primitive element")  # pragma: no cover

    def _build_tables(self):
        N = self.unit_order
        exp = [0] * (2 * N)
        log = [-1] * self.order
        x = 1
        for i in range(N):
            exp[i] = x
            log[x] = i
            x = self._poly_mul(x, self.primitive)
        exp[N:] = exp[:N]
        self._exp, self._log = exp, log
        if self.p != 2:
            p = self.p
            zech = [-1] * N
            for i in range(N):
                e = exp[i]
                one_plus = e - e % p + (e % p + 1) % p
                zech[i] = log[one_plus] if one_plus else -1
            self._zech = zech

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    # -- field operations on codes
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if self._zech is not None:
            la, lb = self._log[a], self._log[b]
            z = self._zech[(lb - la) % self.unit_order]
            if z < 0:
                return 0
            return self._exp[la + z]
        out, scale = 0, 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2 or not a:
            return a
        out, scale = 0, 1
        while a:
            a, c = divmod(a, p)
            out += ((-c) % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._exp is not None:
            return self._exp[(-self._log[a]) % self.unit_order]
        return self._poly_pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % self.unit_order]
        e %= self.unit_order
        return self._poly_pow(a, e)

    def log(self, a: int) -> int:
        """Discrete logarithm with respect to ``self.primitive``."""
        if not a:
            raise ValueError("log of zero")
        if self._log is not None:
            return self._log[a]
        return _bsgs(self, self.primitive, a, self.unit_order)

    # -- compatible primitive element
    @cached_property
    def zeta(self) -> int:
        if self.n == 1:
            return self.primitive
        N = self.unit_order
        constraints = []
        for r in primefactors(self.n):
            d = self.n // r
            sub_order = self.p ** d - 1
            sub = prime_extension(self.p, d)
            delta = self.pow(self.primitive, N // sub_order)
            if d == 1:
                image = sub.zeta
            else:
                root = self._root_in_subgroup(sub.modulus, delta, sub_order)
                image = self._eval_code_at(sub.zeta, sub, root)
            ell = _bsgs(self, delta, image, sub_order)
            allowed = {ell * self.p ** i % sub_order for i in range(d)}
            constraints.append((sub_order, allowed))
        for k in range(1, N + 1):
            if math.gcd(k, N) != 1:
                continue
            if all(k % mod in allowed for mod, allowed in constraints):
                return self.pow(self.primitive, k)
        raise AssertionError("no compatible primitive element")  # pragma: no cover

    def _eval_code_at(self, code: int, sub: "PrimeExtension", x: int) -> int:
        """Evaluate the polynomial with coordinates of ``code`` (in ``sub``) at ``x``."""
        acc = 0
        for c in reversed(_decode(code, sub.p, sub.n)):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def _root_in_subgroup(self, poly: list[int], delta: int, order: int) -> int:
        """A root of ``poly`` among the powers of ``delta`` (Horner per candidate)."""
        x = 1
        for _ in range(order):
            acc = 0
            for c in reversed(poly):
                acc = self.add(self.mul(acc, x), c)
            if acc == 0:
                return x
            x = self.mul(x, delta)
        raise AssertionError("polynomial has no root in subfield")  # pragma: no cover


def _bsgs(F: PrimeExtension, base: int, target: int, order: int) -> int:
    if F.has_tables:
        lb, lt = F.log(base), F.log(target)
        g = math.gcd(lb, F.unit_order)
        # base has order `order`; solve lb * x = lt mod unit_order
        x = (lt // g) * pow(lb // g, -1, F.unit_order // g) % (F.unit_order // g)
        return x % order
    m = math.isqrt(order) + 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = F.mul(x, base)
    giant = F.inv(F.pow(base, m))
    y = target
    for i in range(m + 1):
        if y in baby:
            return (i * m + baby[y]) % order
        y = F.mul(y, giant)
    raise ValueError("discrete log does not exist")


_lock = threading.RLock()
_prime_extensions: dict[tuple[int, int], PrimeExtension] = {}
_fields: dict[tuple[int, int, int], "Field"] = {}


def prime_extension(p: int, n: int) -> PrimeExtension:
    with _lock:
        key = (p, n)
        if key not in _prime_extensions:
            _prime_extensions[key] = PrimeExtension(p, n)
        return _prime_extensions[key]


def split_prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = f.items()
    return p, k


class Field:
    """The field F_{q^m} with q = p^k, constructed canonically.

    Use :func:`get_field` or :meth:`Field.of`; the constructor is private so
    that equal parameters always give the identical object.
    """

    def __init__(self, p: int, k: int, m: int, _token=None):
        if _token is not _lock:
            raise TypeError("use get_field() to construct fields")
        self.p, self.k, self.m = p, k, m
        self.q = p ** k
        self.degree = k * m
        self.order = p ** self.degree
        self.backend = prime_extension(p, self.degree)
        self.modulus = tuple(self.backend.modulus)

    @staticmethod
    def of(q: int, m: int = 1, degree_cap: int = DEFAULT_DEGREE_CAP) -> "Field":
        p, k = split_prime_power(q)
        return get_field(p, k, m, degree_cap)

    def __repr__(self):
        return f"Field(q={self.q}, m={self.m})" if self.k > 1 else f"GF({self.q}^{self.m})"

    def __reduce__(self):
        return (get_field, (self.p, self.k, self.m))

    # -- element construction
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, _encode(list(value), self.p))

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise ValueError("code out of range")
        return FieldElement(self, code)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        return FieldElement(self, self.p if self.degree > 1 else 0)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.order)]

    def units(self):
        return [FieldElement(self, c) for c in range(1, self.order)]

    def random_element(self, rng: random.Random, nonzero: bool = False):
        lo = 1 if nonzero else 0
        return FieldElement(self, rng.randrange(lo, self.order))

    def coords(self, code: int) -> list[int]:
        return _decode(code, self.p, self.degree)

    # -- Frobenius on codes
    def frob_code(self, code: int, s: int = 1) -> int:
        s %= self.m
        if s == 0 or code == 0:
            return code
        return self.backend.pow(code, self.q ** s)

    def frobenius(self, x: "FieldElement", s: int = 1) -> "FieldElement":
        return FieldElement(self, self.frob_code(x.value, s))

    # -- the F_q-structure
    @cached_property
    def base_field(self) -> "Field":
        return get_field(self.p, self.k, 1)

    @cached_property
    def base_embedding(self) -> "EmbeddingMap":
        return embedding(self.base_field, self)

    def in_base(self, code: int) -> bool:
        return self.frob_code(code, 1) == code

    @cached_property
    def _base_coord_data(self):
        """F_p-matrix converting power-basis coords to F_q-coords in (1, g, ..., g^{m-1})."""
        B = self.backend
        g = self.gen.value if self.degree > 1 else 1
        beta = [self.base_embedding.image_code(self.p ** j if j else 1) for j in range(self.k)]
        # column (i, j) = beta_j * g^i
        cols = []
        gi = 1
        for i in range(self.m):
            for j in range(self.k):
                cols.append(B.mul(beta[j], gi))
            gi = B.mul(gi, g)
        n, p = self.degree, self.p
        mat = [[_decode(c, p, n)[r] for c in cols] for r in range(n)]
        return cols, _invert_mod_p(mat, p)

    def to_base_coords(self, code: int) -> list[int]:
        """Coordinates (as codes of ``base_field``) in the basis (1, g, ..., g^{m-1})."""
        if self.m == 1:
            return [code]
        _, inv = self._base_coord_data
        v = _decode(code, self.p, self.degree)
        w = [sum(row[t] * v[t] for t in range(self.degree)) % self.p for row in inv]
        return [_encode(w[i * self.k:(i + 1) * self.k], self.p) for i in range(self.m)]

    def from_base_coords(self, coords: list[int]) -> int:
        if self.m == 1:
            return coords[0]
        cols, _ = self._base_coord_data
        B = self.backend
        out = 0
        for i, c in enumerate(coords):
            digits = _decode(c, self.p, self.k)
            for j, d in enumerate(digits):
                if d:
                    out = B.add(out, B.mul(d, cols[i * self.k + j]))
        return out

    def base_basis(self) -> list["FieldElement"]:
        """The distinguished F_q-basis (1, g, ..., g^{m-1})."""
        return [FieldElement(self, self.from_base_coords([int(i == j) for i in range(self.m)]))
                for j in range(self.m)]


def _invert_mod_p(mat, p):
    n = len(mat)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def get_field(p: int, k: int = 1, m: int = 1, degree_cap: int = DEFAULT_DEGREE_CAP) -> Field:
    if k < 1 or m < 1:
        raise ValueError("exponents must be positive")
    if k * m > degree_cap:
        raise CapacityExceeded(f"absolute degree {k * m} exceeds cap {degree_cap}",
                               degree=k * m, cap=degree_cap)
    with _lock:
        key = (p, k, m)
        if key not in _fields:
            if factorint(p) != {p: 1}:
                raise ValueError(f"{p} is not prime")
            _fields[key] = Field(p, k, m, _token=_lock)
        return _fields[key]


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: Field
    value: int

    @property
    def coords(self) -> list[int]:
        return self.field.coords(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.field.m, self.value))

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.backend.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.backend.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.backend.sub(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.backend.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.backend.mul(self.value, o))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field.backend.inv(self.value))

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.backend.mul(self.value, self.field.backend.inv(o)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.backend.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def frobenius(self, s: int = 1):
        return self.field.frobenius(self, s)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                coef = "" if (c == 1 and mono) else str(c)
                terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(reversed(terms)) or "0"


def frobenius(x: FieldElement, s: int = 1) -> FieldElement:
    """``x ** (q ** s)``; negative ``s`` inverts the Frobenius."""
    return x.field.frobenius(x, s)


class EmbeddingMap:
    """Ring homomorphism ``source -> target`` fixing the common prime field."""

    def __init__(self, source: Field, target: Field):
        if source.p != target.p or target.degree % source.degree:
            raise FieldMismatch(f"no embedding {source} -> {target}")
        self.source, self.target = source, target
        S, T = source.backend, target.backend
        if source.degree == target.degree:
            img = source.gen.value if source.degree > 1 else 0
        elif source.degree == 1:
            img = 0
        else:
            ell = S.log(source.gen.value)
            # convert log base `primitive` to log base `zeta`
            zlog = S.log(S.zeta)
            ell = ell * pow(zlog, -1, S.unit_order) % S.unit_order
            img = T.pow(T.zeta, (T.unit_order // S.unit_order) * ell)
        self._img = img
        powers, x = [], 1
        for _ in range(source.degree):
            powers.append(x)
            x = T.mul(x, img)
        self._powers = powers

    @property
    def image_of_generator(self) -> FieldElement:
        if self.source.degree == 1:
            return FieldElement(self.target, 0)
        return FieldElement(self.target, self._img)

    def image_code(self, code: int) -> int:
        if self.source.degree == 1:
            return code
        T = self.target.backend
        out = 0
        for c, pw in zip(self.source.coords(code), self._powers):
            if c:
                out = T.add(out, T.mul(c, pw))
        return out

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field is not self.source:
            raise FieldMismatch(f"element of {x.field} given to embedding from {self.source}")
        return FieldElement(self.target, self.image_code(x.value))

    def compose(self, other: "EmbeddingMap") -> "EmbeddingMap":
        """``other`` after ``self``."""
        if other.source.backend is not self.target.backend:
            raise FieldMismatch("embeddings do not compose")
        return embedding(self.source, other.target)


_embeddings: dict = {}


def embedding(source: Field, target: Field) -> EmbeddingMap:
    with _lock:
        key = (source.p, source.k, source.m, target.k, target.m)
        if key not in _embeddings:
            _embeddings[key] = EmbeddingMap(source, target)
        return _embeddings[key]


def extend_field(base: Field, e: int, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Return ``(F_{q^{me}}, embedding base -> F_{q^{me}})``."""
    if e < 1:
        raise ValueError("extension degree must be positive")
    big = get_field(base.p, base.k, base.m * e, degree_cap)
    return big, embedding(base, big)
