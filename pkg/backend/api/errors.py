"""Domain errors raised by the services.

Every error carries a short ``code`` so controllers and the CLI can map it to an
HTTP status or an exit code without string matching.
"""


class AraError(Exception):
    """Base class for all domain failures."""

    code = "ara_error"
    input_error = True

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.code, "message": self.message, **self.details}


# --- graph input ---

class CycleDetected(AraError):
    code = "cycle_detected"


class DuplicateEdge(AraError):
    code = "duplicate_edge"


class SelfLoop(AraError):
    code = "self_loop"


class NoEdges(AraError):
    code = "no_edges"


class DomainError(AraError):
    code = "domain_error"


class ParseError(AraError):
    code = "parse_error"


class NotStretched(AraError):
    code = "not_stretched"


# --- tree-like systems ---

class NotForestSupport(AraError):
    code = "not_forest_support"


class IsolatedElement(AraError):
    code = "isolated_element"


class NotASubtree(AraError):
    code = "not_a_subtree"


class SupportMismatch(AraError):
    code = "support_mismatch"


class PreconditionViolated(AraError):
    code = "precondition_violated"


class InvalidSystem(AraError):
    code = "invalid_system"


# --- computation ---

class CapExceeded(AraError):
    code = "cap_exceeded"


class NotMinimal(AraError):
    code = "not_minimal"


class InternalError(AraError):
    """A construction broke one of its own invariants. Always a bug."""

    code = "internal_error"
    input_error = False
