"""Shared exception types."""


class UnsupportedCharacterError(ValueError):
    """No multiplicative character of the requested order exists for the field."""


class IdentityViolation(ArithmeticError):
    """An exact identity that is guaranteed to hold failed to hold.

    Raised instead of silently truncating a division or swallowing a
    mismatch; seeing this exception means a bug (or a miscomputed input),
    never a rounding issue.
    """
