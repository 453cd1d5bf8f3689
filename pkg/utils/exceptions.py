class ExitCode:
    """
    Process exit codes shared by every management command.
    """

    OK = 0
    REFUTED = 1
    INVALID_TRIPLE = 2
    UNKNOWN = 3
    INCOMPATIBLE_STABILIZER = 4
    UNSUPPORTED = 5
    USAGE = 64
    DATA_ERROR = 65
    NO_INPUT = 66

    # Least to most severe. Every input error outranks every verdict.
    SEVERITY = (
        OK,
        REFUTED,
        UNKNOWN,
        INVALID_TRIPLE,
        INCOMPATIBLE_STABILIZER,
        UNSUPPORTED,
        USAGE,
        DATA_ERROR,
        NO_INPUT,
    )

    @classmethod
    def most_severe(cls, codes) -> int:
        return max(codes, key=cls.SEVERITY.index, default=cls.OK)


class TripleToolkitError(Exception):
    """
    Base error of the toolkit.

    Every subclass names a default message, a machine readable code and the
    exit code a command should terminate with when the error escapes.
    """

    exit_code = ExitCode.DATA_ERROR
    default_detail = "The request could not be processed."
    default_code = "error"

    def __init__(self, detail=None, code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        super().__init__(self.detail)

    def as_dict(self) -> dict:
        return {"code": self.code, "detail": str(self.detail)}
