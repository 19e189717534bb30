"""Exception hierarchy shared by every module of the package."""


class PrymCertError(Exception):
    """Base class for all errors raised by prymcert."""


class PolySyntaxError(PrymCertError, ValueError):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonIntegerCoefficient(PrymCertError, ValueError):
    pass


class ZeroPolynomial(PrymCertError, ValueError):
    pass


class DegreeZero(PrymCertError, ValueError):
    pass


class NotEven(PrymCertError, ValueError):
    pass


class ZeroInput(PrymCertError, ValueError):
    pass


class Overscale(PrymCertError):
    """A computation would exceed the configured size or work budget."""


class NotPrime(PrymCertError, ValueError):
    pass


class Ramified(PrymCertError, ValueError):
    pass


class BudgetExhausted(PrymCertError):
    pass


class NotTransitive(PrymCertError, ValueError):
    pass


class PairingMissing(PrymCertError, ValueError):
    pass


class PreconditionViolated(PrymCertError, ValueError):
    """Structural checks failed; ``failures`` lists every failed check."""

    def __init__(self, failures):
        if isinstance(failures, str):
            failures = [failures]
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class BadCongruence(PrymCertError, ValueError):
    pass
