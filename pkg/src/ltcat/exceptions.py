"""Exception types shared across the package.

Validation problems are *findings*, not exceptions; only contract
violations (bad arguments, broken preconditions, unusable input) raise.
"""

from __future__ import annotations


class LtcatError(Exception):
    """Base class for all package errors."""


class InvalidEntity(LtcatError):
    """An entity violates structural construction invariants.

    Carries the full list of violations so callers can report every
    problem at once instead of fixing them one by one.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownSubtype(LtcatError):
    """Entity subtype token outside the closed set."""


class ParseError(LtcatError):
    """Vocabulary file does not parse; carries line number."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


class CycleError(LtcatError):
    """broader links form a cycle; names the concepts on it."""

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__(" -> ".join(self.cycle))


class DanglingBroaderError(LtcatError):
    """broader link points at an IRI absent from the vocabulary."""


class UnknownConcept(LtcatError):
    """IRI not present in the vocabulary."""


class XmlSyntaxError(LtcatError):
    """Malformed XML; carries (line, column) when known."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        self.position = position
        super().__init__(message if position is None else f"{message} at {position[0]}:{position[1]}")


class WrongRootError(LtcatError):
    """Document root is not a MetadataRecord element."""


class NamespaceError(LtcatError):
    """Record namespace prefix bound to an unexpected IRI."""


class JsonSyntaxError(LtcatError):
    """Malformed JSON input."""


class WrongShapeError(LtcatError):
    """JSON input does not have the canonical record shape."""


class NotCompliant(LtcatError):
    """Operation requires a minimal-compliant record; carries the report."""

    def __init__(self, report):
        self.report = report
        errors = [f.path for f in report.findings if f.severity == "error"]
        super().__init__(f"record not minimal-compliant: {', '.join(errors) or 'see report'}")


class UnboundTerm(LtcatError):
    """JSON-LD emission hit a term with no IRI binding; names the path."""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"no IRI binding for {path}")


class NotADataResource(LtcatError):
    """DCAT / schema.org export requested for a non-data resource."""


class NotFound(LtcatError):
    """No stored record under that identifier."""


class ConflictingUpdate(LtcatError):
    """Stale revision supplied to an optimistic-concurrency update."""

    def __init__(self, expected: int, supplied: int):
        self.expected = expected
        self.supplied = supplied
        super().__init__(f"stale revision {supplied}, store is at {expected}")


class IllegalTransition(LtcatError):
    """Curation status transition outside the allowed matrix."""

    def __init__(self, current: str, target: str):
        self.current = current
        self.target = target
        super().__init__(f"cannot move {current} -> {target}")


class UnknownFacet(LtcatError):
    """Facet id outside the closed facet set."""


class BadPage(LtcatError):
    """Page or page size outside the allowed range."""


class BadDimension(LtcatError):
    """Landscape dimension unknown or repeated."""


class SourceUnavailable(LtcatError):
    """Harvest endpoint unreachable; run aborted, state unchanged."""


class PageParseError(LtcatError):
    """One harvest page was unusable; the run skips it and continues."""


class UnknownSource(LtcatError):
    """Harvest source id not configured."""


class StorageError(LtcatError):
    """Store log is unreadable or corrupt."""
