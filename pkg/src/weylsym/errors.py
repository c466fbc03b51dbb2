"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


class NotDivisible(ArithmeticError):
    """Exact division failed; ``remainder`` is the nonzero witness."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class NonMonicDenominator(ContractViolation):
    pass


class NotSymmetric(ContractViolation):
    pass


class NotAntisymmetric(ContractViolation):
    pass


class NotVectorField(ContractViolation):
    pass


class NonPolynomialCoefficient(ArithmeticError):
    pass


class IdentityViolation(AssertionError):
    """Two computations that must agree did not; both values are attached."""

    def __init__(self, message, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


class VerificationFailed(AssertionError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownSuite(KeyError):
    pass
