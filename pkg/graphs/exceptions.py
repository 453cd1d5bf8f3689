from utils.exceptions import ExitCode, TripleToolkitError


class InvalidGraph(TripleToolkitError):
    exit_code = ExitCode.INVALID_TRIPLE
    default_detail = "The graph data is inconsistent."
    default_code = "invalid_graph"


class UnknownVertex(TripleToolkitError):
    default_detail = "The vertex does not exist in this graph."
    default_code = "unknown_vertex"


class UnknownEdge(TripleToolkitError):
    default_detail = "The edge does not exist in this graph."
    default_code = "unknown_edge"


class PathMismatch(TripleToolkitError):
    """
    Raised when consecutive edges or concatenated paths do not meet.
    """

    default_detail = "The source of one path does not match the range of the next."
    default_code = "path_mismatch"


class UnboundedFamilyRequest(TripleToolkitError):
    exit_code = ExitCode.USAGE
    default_detail = "Enumerating an infinite edge family requires an index bound."
    default_code = "unbounded_family_request"


class FamiliesPresent(TripleToolkitError):
    default_detail = "This operation needs a graph without infinite edge families."
    default_code = "families_present"


class UnsupportedVertexSet(TripleToolkitError):
    """
    Raised for input that needs infinitely many vertices. Only a finite
    vertex base with symbolic tails and edge families is representable.
    """

    exit_code = ExitCode.UNSUPPORTED
    default_detail = "Only finitely many base vertices are supported."
    default_code = "unsupported_vertex_set"
