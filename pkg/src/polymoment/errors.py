"""Exception types shared across the package."""


class PolymomentError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PolymomentError):
    """Arity mismatch between objects that must share the number of axes."""


class BoundsError(PolymomentError):
    """A multi-index fell outside the stored box; message names the axis."""


class ModeError(PolymomentError):
    """Mixed or unsupported arithmetic modes."""


class BudgetExceededError(PolymomentError):
    """The sign enumeration would exceed the configured vertex budget."""


class InputError(PolymomentError):
    """Invalid runtime input (missing atom value, bad grid, ...)."""


class SchemaError(PolymomentError):
    """A JSON document failed validation; `field` names the offender."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field


class DiagonalConsistencyError(PolymomentError):
    """Same total degree, different moment values; carries both indices."""

    def __init__(self, message: str, k_a, k_b, value_a, value_b):
        super().__init__(message)
        self.k_a = k_a
        self.k_b = k_b
        self.value_a = value_a
        self.value_b = value_b


class HankelViolationError(PolymomentError):
    """Strong solve refused: the sequence is not Hankel. Carries the report."""

    def __init__(self, report):
        super().__init__(
            "sequence is not Hankel: witness k=%s axis=%d (%s != %s)"
            % (tuple(report.witness.k), report.witness.axis,
               report.witness.left, report.witness.right)
        )
        self.report = report


class BoundViolationError(PolymomentError):
    """A claimed constant was exceeded by a certified value. Carries the report."""

    def __init__(self, report):
        super().__init__("claimed constant exceeded: %s" % (report.verdict,))
        self.report = report
