"""Exception types shared across the codec."""


class DecodeError(Exception):
    """Received data is outside the one-error-per-segment channel model."""


class DecodeInvariantError(DecodeError):
    """A decision window held a bit combination no channel-reachable input produces."""


class FrameError(ValueError):
    """Malformed, truncated, or inconsistent framed container data."""
