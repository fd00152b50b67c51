"""Marker constants, window helpers, and report types shared by both segmented codecs.

Bit streams are plain ``str`` of ``'0'``/``'1'``.  Window positions follow the
1-based inclusive convention used throughout the decoders: position ``j`` of the
residual stream that starts at 0-based offset ``base`` is ``y[base + j - 1]``.
Reads past either end return ``None``, which matches a ``'*'`` wildcard but never
a literal bit; this is how decision windows behave at the end of the stream.
"""

from __future__ import annotations

from dataclasses import dataclass

# The two tail markers are bitwise complements; index is the "variant" bit
# (variant 1 = "111101", the orientation all decision tables are written in).
TAIL_MARKERS = ("000010", "111101")


def bit(y: str, base: int, pos: int) -> int | None:
    """Bit at 1-based residual position ``pos``, or None when out of range."""
    i = base + pos - 1
    if 0 <= i < len(y):
        return 1 if y[i] == "1" else 0
    return None


def xbit(y: str, base: int, pos: int, flip: int) -> int | None:
    """Like :func:`bit` but complemented when ``flip`` is 1."""
    b = bit(y, base, pos)
    return b if b is None else b ^ flip


def window(y: str, base: int, lo: int, hi: int, flip: int = 0) -> tuple[int | None, ...]:
    """Inclusive window ``[lo, hi]`` as a tuple; missing positions are None."""
    return tuple(xbit(y, base, pos, flip) for pos in range(lo, hi + 1))


def matches(win: tuple[int | None, ...], pattern: str) -> bool:
    """Match a window against a pattern of '0', '1', and '*' (any, including missing)."""
    for got, want in zip(win, pattern):
        if want == "*":
            continue
        if got is None or got != int(want):
            return False
    return True


def raw_slice(y: str, base: int, lo: int, hi: int) -> str | None:
    """Raw bits of window ``[lo, hi]``, or None if any position is out of range."""
    start = base + lo - 1
    end = base + hi
    if start < 0 or end > len(y):
        return None
    return y[start:end]


@dataclass(frozen=True)
class BoundaryDecision:
    """Where the current segment ends and what kind of error was inferred.

    ``position`` is 1-based relative to the residual stream: the next segment
    starts right after it.  The inferred error is a best-effort classification;
    when several channel events explain the received bits equally well the
    decoder reports the one its decision rule settled on.
    """

    position: int
    error_kind: str  # "none" | "deletion" | "insertion" | "substitution"
    error_region: str | None  # "codeword" | "marker" | None


@dataclass(frozen=True)
class SegmentError:
    """Per-segment inferred error descriptor."""

    kind: str
    region: str | None


@dataclass
class DecodeReport:
    """Everything recovered from one received stream.

    ``boundaries`` holds absolute 1-based positions in the received string:
    segment ``i + 1`` starts right after ``boundaries[i - 1]``.  ``messages`` is
    populated only when the code parameters support systematic encoding.
    """

    codewords: list[str]
    messages: list[str]
    boundaries: list[int]
    segment_errors: list[SegmentError]
