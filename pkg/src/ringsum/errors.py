"""Exception hierarchy shared by the protocol modules."""


class ProtocolError(ValueError):
    """Base class for every error raised by :mod:`ringsum`."""


class NotPrime(ProtocolError):
    def __init__(self, p: int):
        super().__init__(f"modulus {p} is not prime")
        self.p = p


class TooSmall(ProtocolError):
    def __init__(self, p: int):
        super().__init__(f"modulus must be >= 2, got {p}")
        self.p = p


class TooFewParties(ProtocolError):
    def __init__(self, variant, n: int, minimum: int):
        super().__init__(f"n must be >= {minimum} for {variant} (got {n})")
        self.variant = variant
        self.n = n
        self.minimum = minimum


class UnknownParty(ProtocolError):
    pass


class DimensionMismatch(ProtocolError):
    pass


class InvalidCoalition(ProtocolError):
    pass


class InconsistentView(ProtocolError):
    """The coalition's equations admit no solution (forged or corrupted trace)."""


class TooLargeToEnumerate(ProtocolError):
    pass
