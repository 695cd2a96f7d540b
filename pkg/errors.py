from __future__ import annotations


class ComplexParseError(ValueError):
    """A complex file could not be parsed; the message carries path/line diagnostics."""


class SizeBoundExceeded(RuntimeError):
    """An exhaustive computation was refused because its input exceeds a configured bound."""


class HypothesisRefused(ValueError):
    """A flag-only operation was called on a non-flag complex."""


class InvariantViolation(RuntimeError):
    """A theorem checked at runtime did not hold for the given input."""


def require_bound(value: int, bound: int, *, what: str, setting: str) -> None:
    if value > bound:
        raise SizeBoundExceeded(
            f"{what} = {value} exceeds the configured bound {bound} (raise {setting} to allow it)"
        )
