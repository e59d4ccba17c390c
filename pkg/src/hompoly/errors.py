"""Shared exception types."""


class BudgetExceededError(Exception):
    """A search or enumeration exceeded its configured work budget."""


class PipelineIntegrityError(Exception):
    """A reduction pipeline produced structurally impossible output.

    Raised e.g. when an exact division that must yield integer coefficients
    does not, which signals a mis-built gadget rather than a user error.
    """
