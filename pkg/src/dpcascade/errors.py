"""Exception types raised across the package."""


class CascadeError(Exception):
    """Base class for every domain error raised by dpcascade."""


class NotDivisible(CascadeError, ArithmeticError):
    pass


class WeightMismatch(CascadeError, ValueError):
    pass


class NonIntegral(CascadeError, ValueError):
    """A parameterized weight or degree evaluated to a half-integer."""


class NotIsolated(CascadeError, ValueError):
    pass


class IncompatibleMatrix(CascadeError, ValueError):
    pass


class NonIntegralDegree(CascadeError, ValueError):
    pass


class NotPolynomial(CascadeError, ArithmeticError):
    pass


class EntryMismatch(CascadeError, ValueError):
    def __init__(self, position, message):
        super().__init__(f"entry {position}: {message}")
        self.position = position


class NegativeCoefficient(CascadeError, ArithmeticError):
    pass


class ConventionUncalibrated(CascadeError, RuntimeError):
    pass


class NonIntegerRR(CascadeError, ArithmeticError):
    pass


class ContainsStratum(CascadeError):
    def __init__(self, stratum):
        super().__init__(f"member contains the singular stratum {stratum}")
        self.stratum = stratum


class ResidualSingularity(CascadeError):
    def __init__(self, stratum):
        super().__init__(f"Jacobian drops rank on {stratum} (trivial stabilizer)")
        self.stratum = stratum


class LinearCone(CascadeError, ValueError):
    pass


class RankDeficientEverywhere(CascadeError):
    pass


class CenterNotLinear(CascadeError, ValueError):
    pass


class NotApplicable(CascadeError, ValueError):
    pass


class ImplicitFunctionFails(CascadeError):
    pass


class OutOfRange(CascadeError, ValueError):
    pass


class CatalogError(CascadeError, ValueError):
    """Schema or range violation in a catalog document."""
