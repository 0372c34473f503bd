"""Exception types shared across the engine."""


class QGError(Exception):
    """Base class for all engine errors."""


class SpecError(QGError):
    """A mathematical consistency requirement failed on otherwise valid input."""


class SchemaError(QGError):
    """Malformed input file or payload (parse or schema violation)."""


class NoSolution(QGError):
    """A linear problem has no solution within tolerance, or no unique one."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NoConvergence(QGError):
    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class NotAState(QGError):
    pass


class MissingAntipode(QGError):
    pass


class SingularAntipode(QGError):
    pass


class NotCommutative(QGError):
    pass


class NotACorep(QGError):
    pass


class NotUnitary(QGError):
    pass


class NotInvertible(QGError):
    pass


class SingularGram(QGError):
    pass


class InconsistentConditions(QGError):
    pass


class StepLimitExceeded(QGError):
    pass


class HostMismatch(QGError):
    pass
