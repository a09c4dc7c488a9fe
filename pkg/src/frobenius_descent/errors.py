"""Exception types raised by the library.

Every domain error carries a JSON-friendly ``payload`` so the CLI can
serialize it verbatim.
"""


class FrobeniusDescentError(Exception):
    """Base class for domain errors."""

    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.payload = payload


class CapacityExceeded(FrobeniusDescentError):
    pass


class Singular(FrobeniusDescentError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular (rank {rank} < {size})", rank=rank, size=size)
        self.rank = rank


class NotInvertible(FrobeniusDescentError):
    pass


class FieldMismatch(FrobeniusDescentError):
    pass


class AlgebraMismatch(FrobeniusDescentError):
    pass


class NotEquivariant(FrobeniusDescentError):
    pass


class NotStable(FrobeniusDescentError):
    def __init__(self, degree: int, witness):
        super().__init__(f"graded piece of degree {degree} is not Frobenius-stable",
                         degree=degree, witness=witness)
        self.degree = degree
        self.witness = witness


class IdentityViolated(FrobeniusDescentError):
    pass
