"""Exception hierarchy.

Structural problems (malformed input) are exceptions; axiom failures of
well-formed input are reported through :class:`~gradedpi.report.VerificationReport`
verdicts instead.
"""


class GradedPIError(Exception):
    code = "E_GENERIC"


class StructureError(GradedPIError, ValueError):
    """Malformed input: index out of range, bad torsion order, wrong lengths."""

    code = "E_STRUCTURE"


class GradingError(GradedPIError, ValueError):
    """A degree assignment that is not compatible with the multiplication."""

    code = "E_GRADING"


class PreconditionError(GradedPIError, ValueError):
    code = "E_PRECONDITION"


class DegreeMismatch(GradedPIError, ValueError):
    """An assigned element does not live in the degree of its variable."""

    code = "E_DEGREE"


class MissingAssignment(GradedPIError, KeyError):
    code = "E_ASSIGNMENT"


class BudgetExceeded(GradedPIError, RuntimeError):
    """A computation would exceed its configured work budget."""

    code = "E_BUDGET"


class CapOverflow(BudgetExceeded):
    """A form product would leave the polynomial-degree arena."""

    code = "E_CAP"


class GroupMismatch(GradedPIError, ValueError):
    code = "E_GROUP"


class ContinuityError(GradedPIError, ValueError):
    code = "E_CONTINUITY"


class PresheafError(GradedPIError, ValueError):
    code = "E_PRESHEAF"


class InputError(GradedPIError, ValueError):
    """Unparseable description file or command-line value."""

    code = "E_INPUT"


class UsageError(InputError):
    """Unknown command, subcommand or flag."""

    code = "E_USAGE"
