"""Explicit graded modules over truncated current algebras of sl2, PBW-type
bases of truncated Weyl modules, and exact verification utilities."""

from fusionlab.errors import DomainError, ResourceCapError, VerificationError

__version__ = "0.1.0"

__all__ = ["DomainError", "ResourceCapError", "VerificationError", "__version__"]
