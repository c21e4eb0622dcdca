"""Shared exception types raised across the registry."""


class OerdexError(Exception):
    """Base class for all domain errors."""

    code = "ERROR"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self):
        return {"code": self.code, "message": self.message, "details": self.details}


class FileMissing(OerdexError):
    code = "FILE_MISSING"


class ParseError(OerdexError):
    code = "PARSE_ERROR"

    def __init__(self, message, line=None, **details):
        super().__init__(message, line=line, **details)
        self.line = line


class DuplicateTerm(OerdexError):
    code = "DUPLICATE_TERM"


class CycleDetected(OerdexError):
    code = "CYCLE_DETECTED"

    def __init__(self, message, cycle, **details):
        super().__init__(message, cycle=cycle, **details)
        self.cycle = cycle


class NotFound(OerdexError):
    code = "NOT_FOUND"


class Ambiguous(OerdexError):
    code = "AMBIGUOUS"

    def __init__(self, message, candidates, **details):
        super().__init__(message, candidates=candidates, **details)
        self.candidates = candidates


class HeaderMismatch(OerdexError):
    code = "HEADER_MISMATCH"

    def __init__(self, message, expected, found, **details):
        super().__init__(message, expected=expected, found=found, **details)
        self.expected = expected
        self.found = found


class InvalidUrl(OerdexError):
    code = "INVALID_URL"


class UnknownSubject(OerdexError):
    code = "UNKNOWN_SUBJECT"


class MissingType(OerdexError):
    code = "MISSING_TYPE"


class UnknownFacetTerm(OerdexError):
    code = "UNKNOWN_FACET_TERM"


class ValidationFailed(OerdexError):
    code = "VALIDATION_FAILED"

    def __init__(self, message, messages, **details):
        super().__init__(
            message, messages=[m.to_json() for m in messages], **details
        )
        self.messages = messages


class NotPending(OerdexError):
    code = "NOT_PENDING"


class UnknownSubmission(OerdexError):
    code = "UNKNOWN_SUBMISSION"


class StorageFailure(OerdexError):
    code = "STORAGE_FAILURE"


class IoFailure(OerdexError):
    code = "IO_FAILURE"
