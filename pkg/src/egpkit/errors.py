"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed input: bad table, unknown label, broken invariant."""


class CapExceeded(RuntimeError):
    """A ground set is too large for an enumeration-heavy operation."""


class UnboundedDirection(ValueError):
    """The linear functional has no maximum on the polyhedron."""
