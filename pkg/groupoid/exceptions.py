from utils.exceptions import ExitCode, TripleToolkitError


class InvalidGerm(TripleToolkitError):
    default_detail = "The point is not in the domain of the element."
    default_code = "invalid_germ"


class InvalidFilter(TripleToolkitError):
    default_detail = "A finite chain must be a nonempty prefix chain of idempotents."
    default_code = "invalid_filter"


class HypothesisViolated(TripleToolkitError):
    """
    Raised when a check needs a row-finite graph without sources and the
    triple is not one. Run the triple through desingularization first.
    """

    exit_code = ExitCode.UNSUPPORTED
    default_detail = "This check needs a row-finite triple without sources."
    default_code = "hypothesis_violated"
