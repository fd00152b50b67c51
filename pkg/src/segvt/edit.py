"""Segmented single-edit codec.

Same marker+codeword+marker layout as the insdel codec, hardened against
substitutions: the lead marker grows to three bits ("100" / "011"), the VT
code runs over modulus 2k so a single flip is detectable and correctable, and
n = k + 9.  The marker rules are unchanged: the lead marker encodes the
codeword's first bit, the tail marker announces the next segment's lead
marker, and the final tail marker is "000010".

Boundary recovery dispatches on the eight bits starting where the tail marker
belongs.  Because substitutions preserve length, most windows pin the segment
length immediately; the rest are separated by the shift of the next tail
marker, and two stubborn pairs of explanations need a VT membership or
syndrome-range test on a candidate window of the next codeword.
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

LEAD_MARKERS = ("100", "011")
OVERHEAD_BITS = 9  # three lead-marker bits + six tail-marker bits


@dataclass(frozen=True)
class EditCodeParams:
    """Parameters of one segmented single-edit code instance."""

    vt: vt.VtParams

    mode = "edit"

    def __post_init__(self) -> None:
        if self.vt.m != 2 * self.vt.k:
            raise ValueError("segmented edit code requires modulus 2k")

    @property
    def k(self) -> int:
        return self.vt.k

    @property
    def n(self) -> int:
        return self.vt.k + OVERHEAD_BITS

    @property
    def redundancy_bits(self) -> int:
        """Encoded minus message bits per segment: log2(2k) parities + 9 = log2(k) + 10."""
        return (self.vt.m.bit_length() - 1) + OVERHEAD_BITS

    @property
    def message_length(self) -> int:
        return self.vt.message_length


def make_edit_params(k: int, a: int | None = None) -> EditCodeParams:
    """Build parameters for segment length n = k + 9."""
    if k < 4:
        raise ValueError(f"codeword length must be at least 4, got {k}")
    m = 2 * k
    if a is None:
        a = vt.default_residue(k, m)
    params = vt.VtParams(k=k, m=m, a=a)
    if a == 0 or a == params.all_ones_syndrome:
        raise ValueError(
            f"residue {a} admits a constant codeword; "
            f"pick one outside {{0, {params.all_ones_syndrome}}}"
        )
    return EditCodeParams(vt=params)


def stream_from_codewords(codewords: list[str], params: EditCodeParams) -> str:
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


def encode_stream(messages: list[str], params: EditCodeParams) -> str:
    """Encode per-segment messages into one stream (one segment of lookahead)."""
    codewords = [vt.encode_systematic(msg, params.vt) for msg in messages]
    return stream_from_codewords(codewords, params)


def classify_near_marker(window3: str) -> str:
    """Majority vote over the three bits that open the current tail marker."""
    ones = window3.count("1")
    return TAIL_MARKERS[1] if ones >= 2 else TAIL_MARKERS[0]


def classify_far_marker(y: str, params: EditCodeParams, base: int = 0) -> str:
    """Majority vote over the next segment's tail-marker window."""
    return TAIL_MARKERS[_far_variant(y, base, 2 * params.k + 13)]


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
    y: str, params: EditCodeParams, base: int = 0, near: int | None = None
) -> tuple[str, BoundaryDecision | None]:
    """Recover the current segment's codeword from its first k + 9 bits.

    A codeword-valued window is trusted.  Otherwise the edit hit the lead
    marker or the codeword and the intact tail marker's shift reveals which
    kind it was: one bit short means deletion, in place means substitution,
    one bit long means insertion.
    """
    k = params.k
    if near is None:
        near = 1 - _near_variant(y, base, k + 4)
    plain = raw_slice(y, base, 4, k + 3)
    if plain is not None and vt.syndrome(plain, params.vt.m) == params.vt.a:
        return plain, None
    marker = window(y, base, k + 4, k + 9, near)
    if matches(marker, "11101*"):
        shrunk = raw_slice(y, base, 4, k + 2)
        if shrunk is None:
            raise DecodeError("stream too short for a deletion-shifted segment")
        return (
            vt.correct_deletion(shrunk, params.vt),
            BoundaryDecision(k + 8, "deletion", "codeword"),
        )
    if matches(marker, "111101"):
        assert plain is not None
        return (
            vt.correct_substitution(plain, params.vt),
            BoundaryDecision(k + 9, "substitution", "codeword"),
        )
    if matches(marker, "*11110"):
        grown = raw_slice(y, base, 4, k + 4)
        if grown is None:
            raise DecodeError("stream too short for an insertion-shifted segment")
        return (
            vt.correct_insertion(grown, params.vt),
            BoundaryDecision(k + 10, "insertion", "codeword"),
        )
    raise DecodeError("corrupted codeword window with unrecognizable tail marker")


def _far_shift(w: tuple[int | None, ...]) -> int | None:
    """Net bit drift of the next tail marker read from its nominal window.

    The five signatures are pairwise disjoint; anything else returns None.
    """
    if matches(w, "1101**"):
        return -2
    if matches(w, "11101*"):
        return -1
    if matches(w, "111101"):
        return 0
    if matches(w, "*11110"):
        return 1
    if matches(w, "**1111"):
        return 2
    return None


def determine_boundary(
    y: str,
    params: EditCodeParams,
    base: int = 0,
    near: int | None = None,
    far: int | None = None,
) -> BoundaryDecision:
    """Boundary for a segment whose codeword window was clean.

    Dispatches on the eight bits starting at the tail marker's nominal
    position, read in the current marker's orientation.  The next tail
    marker's window (in its own orientation) and two VT checks on candidate
    next-codeword windows resolve the remaining ambiguities.
    """
    k = params.k
    m = params.vt.m
    a = params.vt.a
    if near is None:
        near = 1 - _near_variant(y, base, k + 4)
    if far is None:
        far = 1 - _far_variant(y, base, 2 * k + 13)

    def nb(pos: int) -> int | None:
        return xbit(y, base, pos, near)

    def decide(position: int) -> BoundaryDecision:
        if position == k + 8:
            return BoundaryDecision(position, "deletion", "marker")
        if position == k + 10:
            return BoundaryDecision(position, "insertion", "marker")
        if window(y, base, k + 4, k + 9, near) == (1, 1, 1, 1, 0, 1):
            return BoundaryDecision(position, "none", None)
        return BoundaryDecision(position, "substitution", "marker")

    first3 = window(y, base, k + 4, k + 6, near)
    if 0 in first3:
        # A zero among the marker's leading ones: flipped in place when the
        # marker's fifth bit is where it belongs, pushed in otherwise.
        return decide(k + 9 if nb(k + 8) == 0 else k + 10)

    if nb(k + 7) == 0:
        # Window 1110...: flipped fourth bit, inserted zero, or deleted one.
        if nb(k + 8) == 0:
            return decide(k + 9)
        if nb(k + 9) == 1:
            return decide(k + 8)
        pair = (nb(k + 10), nb(k + 11))
        if pair == (0, 0):
            return decide(k + 8)
        if pair == (0, 1):
            raise DecodeInvariantError("window 11101001 is unreachable")
        if pair in {(1, 0), (1, 1)}:
            return decide(k + 10)
        raise DecodeInvariantError("window 111010 truncated mid-decision")

    tail = (nb(k + 8), nb(k + 9), nb(k + 10), nb(k + 11))
    w = window(y, base, 2 * k + 13, 2 * k + 18, far)
    shift = _far_shift(w)

    if tail == (0, 0, 0, 0):
        # Lost marker bit and/or flipped trailing one, each followed by a hit
        # on the next lead marker; the far drift counts the deletions.
        if shift in (-2, -1):
            return decide(k + 8)
        if shift == 0:
            return decide(k + 9)
        raise DecodeInvariantError(f"far window {w} unreachable after 11110000")
    if tail == (0, 0, 0, 1):
        return decide(k + 9)
    if tail == (0, 0, 1, 0):
        pair = (nb(k + 12), nb(k + 13))
        if pair in {(0, 0), (0, 1)}:
            return decide(k + 9)
        if pair == (1, 0):
            if shift in (0, 1):
                return decide(k + 9)
            if shift == 2:
                return decide(k + 10)
            raise DecodeInvariantError(f"far window {w} unreachable after 1111001010")
        raise DecodeInvariantError("window 11110010 followed by 11 is unreachable")
    if tail == (0, 0, 1, 1):
        return decide(k + 10)
    if tail == (0, 1, 0, 0):
        if nb(k + 12) == 1:
            if shift == 2:
                return decide(k + 10)
            if shift in (-2, -1, 0):
                return decide(k + 8)
            raise DecodeInvariantError(f"far window {w} unreachable after 111101001")
        # Next lead marker seen in place: every reading says the current
        # segment shrank, except an inserted marker zero masked by a
        # substituted next lead bit, which announces itself in the far drift.
        if shift in (-2, -1, 0):
            return decide(k + 8)
        if shift == 1:
            if w[0] == 0:
                return decide(k + 10)
            return _weight_gap(y, base, params, far)
        return decide(k + 8)
    if tail == (0, 1, 0, 1):
        # Lost trailing marker one with the next lead marker's third bit
        # flipped up, versus a grown current segment.  When the far window
        # drifts one left both readings survive; the next codeword sits one
        # bit earlier in the first and one later in the second, and only its
        # true position passes the membership test.
        if matches(w, "11101*"):
            if w[5] is None:
                return decide(k + 8)
            probe = raw_slice(y, base, k + 14, 2 * k + 13)
            if probe is not None and vt.syndrome(probe, m) == a:
                return decide(k + 10)
            return decide(k + 8)
        return decide(k + 10)
    if tail == (0, 1, 1, 0):
        if nb(k + 12) == 1:
            if shift in (0, 1):
                return decide(k + 9)
            if shift == 2:
                return decide(k + 10)
            raise DecodeInvariantError(f"far window {w} unreachable after 111101101")
        return decide(k + 9)
    if tail == (0, 1, 1, 1):
        return decide(k + 10)
    if tail == (1, 0, 0, 0):
        return decide(k + 8)
    if tail == (1, 0, 0, 1):
        raise DecodeInvariantError("window 11111001 is unreachable")
    if tail == (1, 0, 1, 0):
        return decide(k + 10)
    if tail == (1, 0, 1, 1):
        return decide(k + 10)
    if tail == (1, 1, 0, 0):
        return decide(k + 8)
    if tail == (1, 1, 0, 1):
        if shift in (-1, 0):
            return decide(k + 8)
        if shift == 1:
            return decide(k + 9)
        raise DecodeInvariantError(f"far window {w} unreachable after 11111101")
    if tail == (1, 1, 1, 0):
        return decide(k + 9)
    if tail == (1, 1, 1, 1):
        return decide(k + 9)
    raise DecodeInvariantError("tail-marker window truncated mid-decision")


def _weight_gap(y: str, base: int, params: EditCodeParams, far: int) -> BoundaryDecision:
    """Split the two survivors of a one-right far drift by a syndrome range.

    One reading leaves the next codeword one position left of nominal (its
    window ends with a marker bit), the other one position right (its window
    starts with a lead-marker bit).  The two readings shift the window's
    syndrome by k minus the codeword weight and by the weight plus k - 1
    respectively, and since the weight is strictly between 0 and k the two
    residue ranges never meet.  The ranges swap halves when the next marker
    is the complement variant.
    """
    k = params.k
    m = params.vt.m
    probe = raw_slice(y, base, k + 13, 2 * k + 12)
    if probe is None:
        raise DecodeInvariantError("syndrome probe window truncated")
    d = (vt.syndrome(probe, m) - params.vt.a) % m
    if d == 0:
        raise DecodeInvariantError("syndrome probe hit the excluded residue")
    if far == 0:
        shrunk = 1 <= d <= k - 1
    else:
        shrunk = k + 1 <= d <= 2 * k - 1
    if shrunk:
        return BoundaryDecision(k + 8, "deletion", "marker")
    return BoundaryDecision(k + 10, "insertion", "marker")


def decode_stream(y: str, params: EditCodeParams, t: int) -> DecodeReport:
    """Recover all t codewords and the boundaries between segments."""
    k = params.k
    n = params.n
    if t < 1:
        raise ValueError("need at least one segment")
    if abs(len(y) - n * t) > t:
        raise DecodeError(
            f"length {len(y)} is outside the one-edit-per-segment range of {n}*{t}"
        )
    codewords: list[str] = []
    boundaries: list[int] = []
    segment_errors: list[SegmentError] = []
    base = 0
    for i in range(1, t + 1):
        remaining = len(y) - base
        if remaining < n - 1:
            raise DecodeError(f"segment {i}: only {remaining} bits left")
        near = 1 - _near_variant(y, base, k + 4)
        plain = raw_slice(y, base, 4, k + 3)
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
    y: str, base: int, remaining: int, codeword: str, params: EditCodeParams, near: int
) -> BoundaryDecision:
    """Classify the final segment's error from its length and marker bits.

    A full-length final segment carried at most one substitution, so the whole
    transmitted segment can be reconstructed (codeword plus the marker variant
    the vote observed) and a length-preserving error located exactly.
    """
    n = params.n
    if remaining not in (n - 1, n, n + 1):
        raise DecodeError(f"final segment has {remaining} bits")
    if remaining == n - 1:
        return BoundaryDecision(remaining, "deletion", "marker")
    if remaining == n + 1:
        return BoundaryDecision(remaining, "insertion", "marker")
    sent = LEAD_MARKERS[int(codeword[0])] + codeword + TAIL_MARKERS[1 - near]
    got = y[base : base + remaining]
    diffs = sum(1 for s, g in zip(sent, got) if s != g)
    if diffs == 0:
        return BoundaryDecision(remaining, "none", None)
    if diffs == 1:
        return BoundaryDecision(remaining, "substitution", "marker")
    raise DecodeError("final segment differs from its reconstruction in several bits")
