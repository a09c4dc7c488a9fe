"""Unit coboundaries on the Laurent ring F_{q^m}[x, 1/x].

The coboundary of a unit u = lambda x^t is u / phi(u) = lambda^{1-q}; the
x-degree always cancels.  Its cokernel splits into a finite scalar part
(cyclic of order q - 1 at every finite level) and a free part generated by
the class of x.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityExceeded
from .field import Field, FieldElement

ENUMERATION_LIMIT = 1 << 16


@dataclass(frozen=True)
class LaurentUnit:
    lam: FieldElement
    t: int

    def __post_init__(self):
        if not self.lam:
            raise ValueError("Laurent unit needs a nonzero scalar")

    def __mul__(self, other: "LaurentUnit") -> "LaurentUnit":
        return LaurentUnit(self.lam * other.lam, self.t + other.t)

    def inverse(self) -> "LaurentUnit":
        return LaurentUnit(self.lam.inverse(), -self.t)


def frobenius_unit(u: LaurentUnit) -> LaurentUnit:
    """phi(lambda x^t) = lambda^q x^t."""
    return LaurentUnit(u.lam.frobenius(1), u.t)


def coboundary(u: LaurentUnit) -> LaurentUnit:
    """u * phi(u)^{-1} = (lambda^{1-q}, 0)."""
    return u * frobenius_unit(u).inverse()


def _field(q: int, m: int) -> Field:
    F = Field.of(q, m)
    if F.order > ENUMERATION_LIMIT:
        raise CapacityExceeded("field too large to enumerate", order=F.order)
    return F


@dataclass
class PicardCokernel:
    q: int
    m: int
    torsion_order: int
    free_rank: int
    representatives: list[LaurentUnit]
    free_generator: LaurentUnit
    generator_is_coboundary: bool


def scalar_image(F: Field) -> set[int]:
    """Codes of the scalars lambda^{1-q}, lambda in F^*."""
    B = F.backend
    return {B.pow(c, 1 - F.q) for c in range(1, F.order)}


def picard_cokernel(q: int, m: int) -> PicardCokernel:
    F = _field(q, m)
    B = F.backend
    units = [LaurentUnit(x, 0) for x in F.units()]
    image = scalar_image(F)
    # the degree obstruction: no coboundary has nonzero x-degree
    degrees = {coboundary(LaurentUnit(x, t)).t for x in F.units() for t in (-1, 0, 1)}
    x_hit = 1 in degrees
    torsion = (F.order - 1) // len(image)
    reps = []
    seen: set[int] = set()
    for u in units:
        if u.lam.value in seen:
            continue
        coset = {B.mul(u.lam.value, h) for h in image}
        seen |= coset
        reps.append(unit_class(u))
    reps = sorted(set(reps), key=lambda r: B.log(r.lam.value))
    return PicardCokernel(q, m, torsion, 1 if not x_hit else 0, reps,
                          LaurentUnit(F.one, 1), x_hit)


def unit_class(u: LaurentUnit) -> LaurentUnit:
    """Canonical representative of u modulo coboundaries.

    The scalar image is the subgroup of index d = gcd(q^m - 1, q - 1) in the
    cyclic group F^*; the representative is the primitive-element power of
    least discrete log in the coset of lambda.  The degree t is unchanged.
    """
    F = u.lam.field
    if F.order > ENUMERATION_LIMIT:
        raise CapacityExceeded("field too large for discrete logs by table", order=F.order)
    B = F.backend
    N = F.order - 1
    d = N // len(scalar_image(F))
    return LaurentUnit(F.from_code(B.pow(B.primitive, B.log(u.lam.value) % d)), u.t)


@dataclass
class MuPowerReport:
    q: int
    m: int
    mu: list[FieldElement]
    image: list[FieldElement]
    surjective: bool


def mu_power_demo(q: int, m: int = 1) -> MuPowerReport:
    """Image of x -> x^{q-1} on the (q-1)-th roots of unity in F_{q^m}."""
    F = Field.of(q, m)
    B = F.backend
    N = F.order - 1
    step = N // (q - 1)
    mu = sorted({B.pow(B.primitive, step * i) for i in range(q - 1)})
    image = sorted({B.pow(x, q - 1) for x in mu})
    return MuPowerReport(q, m, [F.from_code(c) for c in mu], [F.from_code(c) for c in image],
                         set(image) == set(mu))
