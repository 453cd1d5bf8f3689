from utils.exceptions import ExitCode, TripleToolkitError


class DocumentParseError(TripleToolkitError):
    """
    The input is not well formed JSON. Carries the position of the first
    offending character.
    """

    exit_code = ExitCode.DATA_ERROR
    default_detail = "The triple document is not valid JSON."
    default_code = "document_parse_error"

    def __init__(self, detail=None, line=None, column=None):
        self.line = line
        self.column = column
        if detail is not None and line is not None:
            detail = f"line {line}, column {column}: {detail}"
        super().__init__(detail)

    def as_dict(self) -> dict:
        return {**super().as_dict(), "line": self.line, "column": self.column}


class DocumentSchemaError(TripleToolkitError):
    exit_code = ExitCode.DATA_ERROR
    default_detail = "The triple document does not follow the schema."
    default_code = "document_schema_error"

    def __init__(self, detail=None, field=None):
        self.field = field
        if detail is not None and field:
            detail = f"{field}: {detail}"
        super().__init__(detail)

    def as_dict(self) -> dict:
        return {**super().as_dict(), "field": self.field}


class InvalidRunConfig(TripleToolkitError):
    exit_code = ExitCode.USAGE
    default_detail = "Every budget and the truncation depth must be at least 1."
    default_code = "invalid_run_config"


class UnknownProperty(TripleToolkitError):
    exit_code = ExitCode.USAGE
    default_detail = "Unknown property."
    default_code = "unknown_property"


class UnreadableInput(TripleToolkitError):
    exit_code = ExitCode.NO_INPUT
    default_detail = "The input file cannot be read."
    default_code = "unreadable_input"
