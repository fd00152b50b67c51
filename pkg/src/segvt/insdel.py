"""Segmented single-insdel codec.

Each length-n segment is lead bit + VT codeword + six-bit tail marker, with
n = k + 7 and the VT code taken over modulus k + 1.  The lead bit duplicates
the codeword's first bit; the tail marker is "111101" when the next segment's
codeword starts with 0 and "000010" otherwise, and the final segment always
ends in "000010".  Those two rules are what let the decoder find segment
boundaries again after insertions and deletions whose positions it never
learns.

The decoder walks the received stream one segment at a time.  A clean-looking
codeword window is trusted (a single insdel can never turn one codeword into
another), and the boundary is then pinned down from the bits around the tail
marker; a corrupted codeword window implies the marker is intact, which
reveals whether the insdel added or removed a bit.  All decision windows are
read relative to the two nearest marker orientations, so the complement
symmetry between the marker pair is handled by per-window complement flags.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import vt
from .common import (
    TAIL_MARKERS,
    BoundaryDecision,
    DecodeReport,
    SegmentError,
    bit,
    matches,
    raw_slice,
    window,
    xbit,
)
from .errors import DecodeError, DecodeInvariantError

LEAD_MARKERS = ("0", "1")
OVERHEAD_BITS = 7  # one lead bit + six tail-marker bits


@dataclass(frozen=True)
class InsdelCodeParams:
    """Parameters of one segmented single-insdel code instance."""

    vt: vt.VtParams

    mode = "insdel"

    def __post_init__(self) -> None:
        if self.vt.m != self.vt.k + 1:
            raise ValueError("segmented insdel code requires modulus k + 1")

    @property
    def k(self) -> int:
        return self.vt.k

    @property
    def n(self) -> int:
        return self.vt.k + OVERHEAD_BITS

    @property
    def redundancy_bits(self) -> int:
        """Encoded minus message bits per segment: log2(k+1) + 7."""
        return (self.vt.m.bit_length() - 1) + OVERHEAD_BITS

    @property
    def message_length(self) -> int:
        return self.vt.message_length


def make_insdel_params(k: int, a: int | None = None) -> InsdelCodeParams:
    """Build parameters for segment length n = k + 7.

    The residue must avoid 0 and the all-ones syndrome so that neither the
    all-zeros nor the all-ones word is a codeword; the default residue always
    does.
    """
    if k < 3:
        raise ValueError(f"codeword length must be at least 3, got {k}")
    m = k + 1
    if a is None:
        a = vt.default_residue(k, m)
    params = vt.VtParams(k=k, m=m, a=a)
    if a == 0 or a == params.all_ones_syndrome:
        raise ValueError(
            f"residue {a} admits a constant codeword; "
            f"pick one outside {{0, {params.all_ones_syndrome}}}"
        )
    return InsdelCodeParams(vt=params)


def stream_from_codewords(codewords: list[str], params: InsdelCodeParams) -> str:
    """Assemble segments around given codewords, applying the two marker rules."""
    if not codewords:
        raise ValueError("need at least one codeword")
    k = params.k
    for cw in codewords:
        if len(cw) != k or not vt.is_member(cw, params.vt):
            raise ValueError(f"{cw!r} is not a codeword of the configured VT code")
    parts = []
    for i, cw in enumerate(codewords):
        lead = LEAD_MARKERS[int(cw[0])]
        if i + 1 < len(codewords):
            tail = TAIL_MARKERS[1 - int(codewords[i + 1][0])]
        else:
            tail = TAIL_MARKERS[0]
        parts.append(lead + cw + tail)
    return "".join(parts)


def encode_stream(messages: list[str], params: InsdelCodeParams) -> str:
    """Encode per-segment messages into one stream (one segment of lookahead)."""
    codewords = [vt.encode_systematic(msg, params.vt) for msg in messages]
    return stream_from_codewords(codewords, params)


def classify_near_marker(window3: str) -> str:
    """Majority vote over the three bits that open the current tail marker."""
    ones = window3.count("1")
    return TAIL_MARKERS[1] if ones >= 2 else TAIL_MARKERS[0]


def classify_far_marker(y: str, params: InsdelCodeParams, base: int = 0) -> str:
    """Majority vote over the next segment's tail-marker window."""
    return TAIL_MARKERS[_far_variant(y, base, 2 * params.k + 9)]


def _near_variant(y: str, base: int, lo: int) -> int:
    ones = sum(1 for pos in range(lo, lo + 3) if bit(y, base, pos) == 1)
    return 1 if ones >= 2 else 0


def _far_variant(y: str, base: int, lo: int) -> int:
    """Zeros-vs-ones vote over the six-bit window, tie-broken by its first five bits."""
    bits6 = [bit(y, base, pos) for pos in range(lo, lo + 6)]
    for probe in (bits6, bits6[:5]):
        present = [b for b in probe if b is not None]
        n1 = sum(present)
        n0 = len(present) - n1
        if n1 != n0:
            return 1 if n1 > n0 else 0
    raise DecodeInvariantError("tail-marker vote tied on both window widths")


def retrieve_codeword(
    y: str, params: InsdelCodeParams, base: int = 0, near: int | None = None
) -> tuple[str, BoundaryDecision | None]:
    """Recover the current segment's codeword from its first k + 7 bits.

    A codeword-valued window is returned as-is with no boundary (the caller
    resolves the boundary separately).  Otherwise the insdel hit the lead bit
    or the codeword, the tail marker is intact, and its observed shift says
    whether a bit was lost or gained; the lead bit's duplication of the first
    codeword bit makes the shifted window correctable either way.
    """
    k = params.k
    if near is None:
        near = 1 - _near_variant(y, base, k + 2)
    plain = raw_slice(y, base, 2, k + 1)
    if plain is not None and vt.syndrome(plain, params.vt.m) == params.vt.a:
        return plain, None
    marker = window(y, base, k + 2, k + 7, near)
    if matches(marker, "11101*"):
        shrunk = raw_slice(y, base, 2, k)
        if shrunk is None:
            raise DecodeError("stream too short for a deletion-shifted segment")
        return (
            vt.correct_deletion(shrunk, params.vt),
            BoundaryDecision(k + 6, "deletion", "codeword"),
        )
    if matches(marker, "*11110"):
        grown = raw_slice(y, base, 2, k + 2)
        if grown is None:
            raise DecodeError("stream too short for an insertion-shifted segment")
        return (
            vt.correct_insertion(grown, params.vt),
            BoundaryDecision(k + 8, "insertion", "codeword"),
        )
    raise DecodeError("corrupted codeword window with unrecognizable tail marker")


def determine_boundary(
    y: str,
    params: InsdelCodeParams,
    base: int = 0,
    near: int | None = None,
    far: int | None = None,
) -> BoundaryDecision:
    """Boundary for a segment whose codeword window was clean.

    Dispatches on the six bits where the tail marker belongs, read in the
    orientation of the current marker; deeper cases consult the window where
    the *next* tail marker belongs (in its own orientation) and, where that is
    still ambiguous, membership checks of candidate next-codeword windows or
    two peek bits beyond the far window.
    """
    k = params.k
    if near is None:
        near = 1 - _near_variant(y, base, k + 2)
    if far is None:
        far = 1 - _far_variant(y, base, 2 * k + 9)

    def nb(pos: int) -> int | None:
        return xbit(y, base, pos, near)

    def member(lo: int, hi: int) -> bool:
        s = raw_slice(y, base, lo, hi)
        return s is not None and vt.syndrome(s, params.vt.m) == params.vt.a

    first3 = window(y, base, k + 2, k + 4, near)
    if 0 in first3:
        # A zero among three bits that start an all-ones marker run: only an
        # insertion can push one there.
        return BoundaryDecision(k + 8, "insertion", "marker")

    w = window(y, base, 2 * k + 9, 2 * k + 14, far)
    n5, n6, n7 = nb(k + 5), nb(k + 6), nb(k + 7)

    if n5 == 0:
        # Window 1110**: a marker bit was deleted or a zero inserted mid-marker.
        if n6 != 1:
            raise DecodeInvariantError("tail-marker window 1110 followed by 0")
        if n7 == 1:
            # 111011: marker lost a one and the next segment gained a leading one.
            return BoundaryDecision(k + 6, "deletion", "marker")
        return _deletion_or_insertion(k, nb, w)  # 111010
    if n6 == 0:
        if n7 == 0:
            return _deletion_or_insertion(k, nb, w)  # 111100
        return _clean_marker_window(k, nb, w, y, base, far, member)  # 111101
    if n7 == 0:
        return _deletion_or_insertion(k, nb, w)  # 111110
    # 111111: only a dropped marker zero followed by an inserted one fits.
    return BoundaryDecision(k + 6, "deletion", "marker")


def _far_two_left(w: tuple[int | None, ...]) -> bool:
    """Far window consistent with the next marker having shifted two bits left.

    The two trailing positions then hold the first received bits of the
    segment after next, which can never both be ones (its own lead bit and
    first codeword bit agree, and one insdel flips at most one of the two).
    """
    return w[:4] == (1, 1, 0, 1) and (w[4], w[5]) in {
        (None, None),
        (0, 0),
        (0, 1),
        (1, 0),
    }


def _deletion_or_insertion(k, nb, w) -> BoundaryDecision:
    """Shared rule for windows 111010 / 111100 / 111110.

    Each is explained by either a deletion in the current marker or an
    insertion into it.  A zero right after the window settles it as a
    deletion; otherwise only a double-deletion signature in the far window
    keeps the deletion reading alive.
    """
    if nb(k + 8) == 0:
        return BoundaryDecision(k + 6, "deletion", "marker")
    if _far_two_left(w):
        return BoundaryDecision(k + 6, "deletion", "marker")
    return BoundaryDecision(k + 8, "insertion", "marker")


def _clean_marker_window(k, nb, w, y, base, far, member) -> BoundaryDecision:
    """Marker window reads exactly 111101; the insdel, if any, is nearby.

    The bits after the window separate most explanations; the rest are
    resolved from the far window, from membership of the two candidate
    next-codeword windows, or from two peek bits past the far window.
    """
    none = BoundaryDecision(k + 7, "none", None)
    gained = BoundaryDecision(k + 8, "insertion", "marker")

    def peek() -> tuple[int | None, int | None]:
        return (xbit(y, base, 2 * k + 15, far), xbit(y, base, 2 * k + 16, far))

    if nb(k + 8) == 1:
        # A one where the next lead bit belongs must itself be inserted.
        return gained
    if nb(k + 9) == 1:
        # Clean marker followed by 0 1: a deletion right after the boundary,
        # an inserted one between the next lead bit and codeword, or an
        # inserted marker zero plus an inserted one.  The far window's shift
        # tells them apart.
        if matches(w, "11101*") or matches(w, "*11110"):
            return none
        if matches(w, "**1111"):
            return gained
        raise DecodeInvariantError("far window inconsistent after clean marker + 01")
    if nb(k + 10) == 1:
        # Clean marker followed by 0 0 1.
        if w == (1, 1, 1, 1, 1, 1):
            pk = peek()
            if pk == (0, 0):
                return none
            if pk == (0, 1):
                return gained
            raise DecodeInvariantError("peek bits inconsistent after all-ones far window")
        if matches(w, "**1111"):
            return gained
        return none

    # Clean marker followed by 0 0 0: dispatch on the far window.
    if matches(w, "11101*") and w[5] != 1:
        return none
    if w == (1, 1, 1, 0, 1, 1):
        pk = peek()
        if pk == (0, 0):
            return none
        if pk == (0, 1):
            return gained
        raise DecodeInvariantError("peek bits inconsistent after far window 111011")
    if w == (1, 1, 1, 1, 0, 1):
        # Clean next marker in place, or everything shifted one right by an
        # inserted zero: the nominal next-codeword window is a codeword only
        # in the former case (or when the shift is absorbed by a run).
        return none if member(k + 9, 2 * k + 8) else gained
    if w == (0, 1, 1, 1, 0, 1):
        return gained
    if matches(w, "*11110"):
        if member(k + 9, 2 * k + 8):
            return none
        if member(k + 10, 2 * k + 9):
            return gained
        return none
    if w in {(1, 1, 1, 1, 0, None), (1, 1, 1, 1, 1, None)}:
        # The far window runs off the stream one bit early: the next segment
        # is the last and lost a marker bit, so this segment is intact.
        return none
    if w in {(1, 0, 1, 1, 1, 0), (1, 1, 0, 1, 1, 0), (1, 1, 1, 1, 0, 0)}:
        # Reachable only with the current segment intact and a zero inserted
        # into the next marker.
        return none
    if w == (0, 1, 1, 0, 1, 1):
        return gained
    if w in {
        (0, 1, 0, 1, 1, 1),
        (1, 1, 0, 1, 1, 1),
        (0, 0, 1, 1, 1, 1),
        (0, 1, 1, 1, 1, 1),
        (1, 0, 1, 1, 1, 1),
    }:
        return gained
    if w == (1, 1, 1, 1, 1, 1):
        pk = peek()
        if pk == (0, 0):
            return none if member(k + 9, 2 * k + 8) else gained
        if pk in {(0, 1), (1, 0)}:
            return gained
        if pk == (None, None):
            # Stream ends with the window: the intact-segment reading would
            # need a further segment to contribute an inserted one.
            return gained
        raise DecodeInvariantError("peek bits inconsistent after all-ones far window")
    raise DecodeInvariantError(f"far window {w} unreachable after a clean marker")


def decode_stream(y: str, params: InsdelCodeParams, t: int) -> DecodeReport:
    """Recover all t codewords and the boundaries between segments."""
    k = params.k
    n = params.n
    if t < 1:
        raise ValueError("need at least one segment")
    if abs(len(y) - n * t) > t:
        raise DecodeError(
            f"length {len(y)} is outside the one-insdel-per-segment range of {n}*{t}"
        )
    codewords: list[str] = []
    boundaries: list[int] = []
    segment_errors: list[SegmentError] = []
    base = 0
    for i in range(1, t + 1):
        remaining = len(y) - base
        if remaining < n - 1:
            raise DecodeError(f"segment {i}: only {remaining} bits left")
        near = 1 - _near_variant(y, base, k + 2)
        plain = raw_slice(y, base, 2, k + 1)
        if plain is not None and vt.syndrome(plain, params.vt.m) == params.vt.a:
            codeword = plain
            if i < t:
                decision = determine_boundary(y, params, base, near=near)
            else:
                decision = _final_segment(y, base, remaining, codeword, params, near)
        else:
            codeword, decision = retrieve_codeword(y, params, base, near=near)
            assert decision is not None
            if i == t and decision.position != remaining:
                raise DecodeError(
                    f"final segment length {remaining} contradicts the corrected window"
                )
        codewords.append(codeword)
        segment_errors.append(SegmentError(decision.error_kind, decision.error_region))
        if i < t:
            boundaries.append(base + decision.position)
        base += decision.position
    messages = (
        [vt.extract_message(c, params.vt) for c in codewords]
        if params.vt.is_systematic
        else []
    )
    return DecodeReport(codewords, messages, boundaries, segment_errors)


def _final_segment(
    y: str, base: int, remaining: int, codeword: str, params: InsdelCodeParams, near: int
) -> BoundaryDecision:
    """Classify the final segment's error from its length.

    A full-length final segment carried no insdel, so it must match its
    reconstruction (codeword plus the marker variant the vote observed) bit
    for bit.
    """
    n = params.n
    if remaining not in (n - 1, n, n + 1):
        raise DecodeError(f"final segment has {remaining} bits")
    if remaining == n - 1:
        return BoundaryDecision(remaining, "deletion", "marker")
    if remaining == n + 1:
        return BoundaryDecision(remaining, "insertion", "marker")
    sent = LEAD_MARKERS[int(codeword[0])] + codeword + TAIL_MARKERS[1 - near]
    if y[base : base + remaining] != sent:
        raise DecodeError("full-length final segment differs from its reconstruction")
    return BoundaryDecision(remaining, "none", None)
