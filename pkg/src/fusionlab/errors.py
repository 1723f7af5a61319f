"""Exception hierarchy shared by all modules."""


class FusionLabError(Exception):
    pass


class DomainError(FusionLabError, ValueError):
    """An input violates a documented precondition."""


class ResourceCapError(FusionLabError):
    """A configured size cap would be exceeded."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class VerificationError(FusionLabError):
    """A computed object fails a structural identity it must satisfy."""
