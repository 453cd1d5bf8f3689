from utils.exceptions import ExitCode, TripleToolkitError


class MismatchedTriples(TripleToolkitError):
    default_detail = "Elements from different triples cannot be combined."
    default_code = "mismatched_triples"


class IllTypedElement(TripleToolkitError):
    default_detail = "An element (α, g, β) needs s(α) = g·s(β)."
    default_code = "ill_typed_element"


class NotIdempotent(TripleToolkitError):
    default_detail = "This operation needs idempotent elements."
    default_code = "not_idempotent"


class TwistBudgetExceeded(TripleToolkitError):
    """
    Raised when twisting a lasso does not reach a repeated twist state
    within the state budget (only possible for infinite groups).
    """

    exit_code = ExitCode.UNKNOWN
    default_detail = "The twist state budget was exhausted."
    default_code = "twist_budget_exceeded"


class ExpressionSyntaxError(TripleToolkitError):
    default_detail = "The expression could not be parsed."
    default_code = "expression_syntax_error"

    def __init__(self, detail=None, column=None):
        self.column = column
        if column is not None and detail is not None:
            detail = f"column {column}: {detail}"
        super().__init__(detail)


class ExpressionTypeError(ExpressionSyntaxError):
    default_detail = "The expression is not well typed."
    default_code = "expression_type_error"
