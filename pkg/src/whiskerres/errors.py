"""Exception hierarchy shared by all modules."""


class WhiskerResError(ValueError):
    """Base class for every error raised by this package."""


class DuplicateVertex(WhiskerResError):
    pass


class LoopEdge(WhiskerResError):
    pass


class UnknownEndpoint(WhiskerResError):
    pass


class DuplicateEdge(WhiskerResError):
    pass


class EnumerationCapExceeded(WhiskerResError):
    pass


class NotAClique(WhiskerResError):
    pass


class NotAPartition(WhiskerResError):
    pass


class NonPositiveMultiplicity(WhiskerResError):
    pass


class NotBipartite(WhiskerResError):
    pass


class NotConnected(WhiskerResError):
    pass


class NotChordal(WhiskerResError):
    pass


class NotCohenMacaulayChordal(WhiskerResError):
    pass


class NotVeryWellCoveredCM(WhiskerResError):
    pass


class NotAFace(WhiskerResError):
    pass


class OracleMismatch(WhiskerResError):
    """The two Hochster forms disagree; always an implementation bug."""


class DanglingSymbol(WhiskerResError):
    pass


class BlockViolation(WhiskerResError):
    pass


class NotMinimal(WhiskerResError):
    pass


class BijectionFailure(WhiskerResError):
    pass


class FormulaMismatch(WhiskerResError):
    pass


class CapExceeded(WhiskerResError):
    pass


class IsolatedVertex(WhiskerResError):
    """An isolated vertex would yield an empty block in a clique partition."""
