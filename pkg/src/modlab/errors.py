"""Exception taxonomy, kept machine-distinguishable for the CLI exit codes."""

from __future__ import annotations


class ModlabError(Exception):
    """Base class for all package errors."""


class SpecError(ModlabError):
    """A ring or module specification is malformed or violates an invariant."""


class CapExceededError(ModlabError):
    """A configured size cap (ring, module, lattice, hom search) was exceeded."""

    def __init__(self, message: str, *, cap_name: str, limit: int, requested: int):
        super().__init__(message)
        self.cap_name = cap_name
        self.limit = limit
        self.requested = requested


class CatalogError(ModlabError):
    """Base class for catalog file problems."""


class CatalogParseError(CatalogError):
    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class CatalogReferenceError(CatalogError):
    def __init__(self, message: str, *, reference: str):
        super().__init__(message)
        self.reference = reference
