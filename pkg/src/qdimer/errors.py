"""Exception hierarchy shared by the physics modules and the CLI."""


class QDimerError(Exception):
    """Base class for every error raised by qdimer."""


class InvalidInputError(QDimerError, ValueError):
    """One or more parameters violate their constraints.

    ``violations`` is a list of ``(field, message)`` pairs, one per failed check.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [("input", violations)]
        self.violations = list(violations)
        msg = "; ".join(f"{field}: {message}" for field, message in self.violations)
        super().__init__(msg)


class DomainError(QDimerError, ValueError):
    pass


class WrongOperationError(QDimerError, ValueError):
    pass


class DefectiveBasisError(QDimerError, ArithmeticError):
    """Raised at an exceptional point, where no biorthogonal pair exists."""


class ConvergenceError(QDimerError, RuntimeError):
    def __init__(self, message, estimate, error_bound):
        super().__init__(f"{message} (best estimate {estimate!r}, error bound {error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


class StepSizeError(QDimerError, RuntimeError):
    """The stepped integrator moved by more than its tolerance when the step was halved."""


class NotApplicableError(QDimerError, ValueError):
    pass


class NoRootError(QDimerError, RuntimeError):
    """No sign change of the residual inside the requested bracket.

    ``residual_lo`` and ``residual_hi`` hold the residuals at the two ends.
    """

    def __init__(self, message, residual_lo, residual_hi):
        super().__init__(f"{message} (residuals {residual_lo!r} at lo, {residual_hi!r} at hi)")
        self.residual_lo = residual_lo
        self.residual_hi = residual_hi


class RootBelowBracket(NoRootError):
    pass


class RootAboveBracket(NoRootError):
    pass


class ConfigError(QDimerError, ValueError):
    def __init__(self, message, line=None, hint=None):
        where = f"line {line}: " if line is not None else ""
        text = where + message
        if hint:
            text += f" (hint: {hint})"
        super().__init__(text)
        self.line = line
        self.hint = hint
