"""Exception hierarchy. Every error is a ValueError so callers can catch broadly."""


class DlogDistError(ValueError):
    pass


class NotPrime(DlogDistError):
    pass


class NonGenerator(DlogDistError):
    pass


class TableTooLarge(DlogDistError):
    pass


class ZeroResidue(DlogDistError):
    """Argument is divisible by p and has no discrete logarithm."""


class RetryExhausted(DlogDistError):
    pass


class InvalidProgression(DlogDistError):
    pass


class Overlap(DlogDistError):
    pass


class DenominatorMismatch(DlogDistError):
    pass
