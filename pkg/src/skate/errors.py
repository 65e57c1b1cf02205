"""Exception types shared across the package.

Every domain failure derives from SkateError so callers (CLI, HTTP
service) can map them to exit codes / status codes in one place.
"""

from __future__ import annotations


class SkateError(Exception):
    """Base class for all domain errors."""


# --- loading / validation ---------------------------------------------------

class ParseError(SkateError):
    """Malformed input document; carries a line or record locator."""

    def __init__(self, message: str, *, line: int | None = None, record: str | None = None):
        self.line = line
        self.record = record
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if record is not None:
            loc.append(f"record {record}")
        super().__init__(f"{message}" + (f" ({', '.join(loc)})" if loc else ""))


class ValidationError(SkateError):
    """Well-formed input that violates a structural invariant."""

    def __init__(self, message: str, *, subject: str | None = None):
        self.subject = subject
        super().__init__(message)


class UnknownFrame(SkateError):
    pass


# --- embeddings -------------------------------------------------------------

class DimensionMismatch(SkateError):
    pass


class EmptyVocabulary(SkateError):
    pass


# --- recognizer -------------------------------------------------------------

class NoCandidates(SkateError):
    pass


class StorageError(SkateError):
    pass


# --- sessions ---------------------------------------------------------------

class UnknownTemplate(SkateError):
    pass


class SessionClosed(SkateError):
    pass


class BadPath(SkateError):
    pass


class OptionNotOffered(SkateError):
    pass


class RequiredSlot(SkateError):
    pass


class IncompleteEntry(SkateError):
    """Submission refused; lists the offending slot paths."""

    def __init__(self, paths: list[str]):
        self.paths = list(paths)
        super().__init__(f"required slots not filled: {', '.join(self.paths)}")


# --- converter --------------------------------------------------------------

class MultipleConsequents(SkateError):
    pass


# --- suggestions ------------------------------------------------------------

class GeneratorUnavailable(SkateError):
    pass


# --- policy -----------------------------------------------------------------

class DanglingState(SkateError):
    pass


class NonTerminalCompliance(SkateError):
    pass


class NonGroundFact(SkateError):
    pass


class UnknownState(SkateError):
    pass
