from utils.exceptions import ExitCode, TripleToolkitError


class IncompatibleStabilizer(TripleToolkitError):
    """
    Raised when an element h stabilizing a singular vertex x moves the j-th
    incoming edge of x. Tails cannot then be attached equivariantly.
    """

    exit_code = ExitCode.INCOMPATIBLE_STABILIZER
    default_detail = "A stabilizer element moves an incoming edge of a singular vertex."
    default_code = "incompatible_stabilizer"

    def __init__(self, x, h, j, detail=None):
        self.x = x
        self.h = h
        self.j = j
        if detail is None:
            detail = f"{h} stabilizes {x} but moves its incoming edge a_{j}"
        super().__init__(detail)

    def as_dict(self) -> dict:
        return {**super().as_dict(), "x": self.x, "h": self.h, "j": self.j}


class TruncationTooShallow(TripleToolkitError):
    exit_code = ExitCode.USAGE
    default_detail = "The truncation depth is too small for this request."
    default_code = "truncation_too_shallow"
