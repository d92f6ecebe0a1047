"""Exception types shared across the toolkit."""


class OagError(Exception):
    """Base class for every error raised by this package."""


class DomainMismatchError(OagError):
    """Mixed radicands, or a constant outside the structure's scalar domain."""


class ParseError(OagError):
    """Syntax error; carries the source span it points at."""

    def __init__(self, message, span):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self):
        return f"{self.span.line}:{self.span.column}: {self.message}"


class StructureFormatError(OagError):
    """Malformed structure description file."""


class UnknownPredicateError(OagError):
    """Predicate name not registered in the active structure."""


class PredicateLeakError(OagError):
    """A predicate atom survived into a stage that requires expanded input."""


class ResourceLimitError(OagError):
    """Configured node or step cap exceeded; never a silent truncation."""


class NotASentenceError(OagError):
    """Decision requested for a formula with free variables."""


class NotQuantifierFreeError(OagError):
    """Quantifier-free input required."""


class MissingAssignmentError(OagError):
    """Evaluation assignment does not cover every free variable."""


class IllFormedSchemaError(OagError):
    """Schema instantiation over a variable that is not free in the body."""


class DegenerateIntervalError(OagError):
    """Interval bounds with lower >= upper where a proper interval is required."""


class InvalidCoverError(OagError):
    """Ill-formed family, or a sweep inconsistency after a passing audit."""


class CoverAuditError(OagError):
    """Family audit failed; the dependent operation was not attempted."""

    def __init__(self, audit):
        super().__init__(f"family failed its {audit.role} audit")
        self.audit = audit


class NotAFunctionError(OagError):
    """Graph formula is not functional on the requested interval."""
