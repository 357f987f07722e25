"""Shared exception types."""


class CapExceeded(ValueError):
    """An operation would exceed one of the explicit brute-force guards.

    Every enumeration in this package is bounded by a named cap (group order,
    ambient space size, symbolic term count).  Guards raise this instead of
    silently truncating.
    """
