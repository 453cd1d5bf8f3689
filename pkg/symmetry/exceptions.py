from utils.exceptions import ExitCode, TripleToolkitError


class InvalidGroup(TripleToolkitError):
    exit_code = ExitCode.INVALID_TRIPLE
    default_detail = "The multiplication table does not define a group."
    default_code = "invalid_group"


class UnknownGroupElement(TripleToolkitError):
    default_detail = "The group element does not exist."
    default_code = "unknown_group_element"


class InvalidAction(TripleToolkitError):
    exit_code = ExitCode.INVALID_TRIPLE
    default_detail = "The generator data does not define permutations of the graph."
    default_code = "invalid_action"


class InvalidTriple(TripleToolkitError):
    """
    Raised when a triple fails validation; ``report`` lists every violation.
    """

    exit_code = ExitCode.INVALID_TRIPLE
    default_detail = "The triple violates the self-similar graph axioms."
    default_code = "invalid_triple"

    def __init__(self, report, detail=None):
        self.report = report
        if detail is None:
            first = report.violations[0] if report.violations else None
            detail = f"{self.default_detail} First violation: {first}" if first else None
        super().__init__(detail)
