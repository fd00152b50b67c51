"""Brute-force ground truth for the segmented codecs.

Error-ball enumeration, a dynamic-programming ball-membership test with
witness extraction, a seeded per-segment channel simulator, and the two
verification drivers: exhaustive (every codeword stream times every element
of its segmented ball) and sampled (seeded random streams and ball picks).
Verification results serialize to a line-oriented text report.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from . import edit as edit_mod
from . import insdel as insdel_mod
from . import vt
from .errors import DecodeError, DecodeInvariantError

GENERATOR_NAME = "random.Random (Mersenne Twister)"


def single_deletions(u: str) -> set[str]:
    return {u[:i] + u[i + 1 :] for i in range(len(u))}


def single_insertions(u: str) -> set[str]:
    out = set()
    for i in range(len(u) + 1):
        out.add(u[:i] + "0" + u[i:])
        out.add(u[:i] + "1" + u[i:])
    return out


def single_substitutions(u: str) -> set[str]:
    flip = {"0": "1", "1": "0"}
    return {u[:i] + flip[u[i]] + u[i + 1 :] for i in range(len(u))}


def single_insdel_ball(u: str) -> set[str]:
    """The word itself plus everything one insertion or deletion away."""
    return {u} | single_deletions(u) | single_insertions(u)


def single_edit_ball(u: str) -> set[str]:
    """The insdel ball plus everything one substitution away."""
    return single_insdel_ball(u) | single_substitutions(u)


def _ball(u: str, mode: str) -> set[str]:
    if mode == "insdel":
        return single_insdel_ball(u)
    if mode == "edit":
        return single_edit_ball(u)
    raise ValueError(f"unknown mode {mode!r}")


def _segments(x: str, n: int) -> list[str]:
    if len(x) % n != 0:
        raise ValueError(f"stream length {len(x)} is not a multiple of {n}")
    return [x[i : i + n] for i in range(0, len(x), n)]


def segmented_ball(x: str, n: int, mode: str) -> Iterator[str]:
    """Every channel output: the product of per-segment balls, streamed."""
    balls = [sorted(_ball(s, mode)) for s in _segments(x, n)]
    for combo in itertools.product(*balls):
        yield "".join(combo)


def segmented_ball_size(x: str, n: int, mode: str) -> int:
    size = 1
    for s in _segments(x, n):
        size *= len(_ball(s, mode))
    return size


def _within_one(received: str, sent: str, mode: str) -> str | None:
    """Error kind turning ``sent`` into ``received`` with one operation, or None."""
    d = len(received) - len(sent)
    if d == 0:
        if received == sent:
            return "none"
        if mode == "edit" and sum(a != b for a, b in zip(received, sent)) == 1:
            return "substitute"
        return None
    if d == -1:
        return "delete" if _is_deletion_of(received, sent) else None
    if d == 1:
        return "insert" if _is_deletion_of(sent, received) else None
    return None


def _is_deletion_of(short: str, long: str) -> bool:
    """True when ``short`` is ``long`` minus exactly one bit."""
    i = 0
    while i < len(short) and short[i] == long[i]:
        i += 1
    return short[i:] == long[i + 1 :]


@dataclass(frozen=True)
class ErrorSpec:
    """One channel event: which segment, what happened, where, with which bit."""

    segment: int  # 1-based
    kind: str  # "none" | "delete" | "insert" | "substitute"
    position: int | None  # 1-based within the segment; insert = before this position
    value: str | None  # inserted or resulting bit value


@dataclass(frozen=True)
class BallWitness:
    """Per-segment consumption proving ball membership; offsets sum to M - N."""

    offsets: tuple[int, ...]
    specs: tuple[ErrorSpec, ...]


def is_in_segmented_ball(y: str, x: str, n: int, mode: str) -> tuple[bool, BallWitness | None]:
    """Dynamic program over (segment, cumulative offset); returns one witness."""
    segments = _segments(x, n)
    t = len(segments)
    if abs(len(y) - n * t) > t:
        return False, None
    # reachable[j] maps cumulative offset after j segments to the offset taken
    # at segment j (for backtracking).
    reachable: list[dict[int, int]] = [dict() for _ in range(t + 1)]
    reachable[0][0] = 0
    for j, seg in enumerate(segments):
        start_positions = reachable[j]
        for off in start_positions:
            start = j * n + off
            # Zero shift first so unambiguous inputs get the plainest witness.
            for d in (0, -1, 1):
                end = start + n + d
                if end > len(y):
                    continue
                window = y[start:end]
                if _within_one(window, seg, mode) is not None:
                    reachable[j + 1].setdefault(off + d, d)
    final = len(y) - n * t
    if final not in reachable[t]:
        return False, None
    deltas = []
    off = final
    for j in range(t, 0, -1):
        d = reachable[j][off]
        deltas.append(d)
        off -= d
    deltas.reverse()
    offsets = tuple(itertools.accumulate(deltas))
    specs = []
    pos = 0
    for j, (seg, d) in enumerate(zip(segments, deltas), 1):
        window = y[pos : pos + n + d]
        specs.append(_spec_for(window, seg, j))
        pos += n + d
    return True, BallWitness(offsets=offsets, specs=tuple(specs))


def _spec_for(received: str, sent: str, segment: int) -> ErrorSpec:
    """Reconstruct one concrete error turning ``sent`` into ``received``."""
    if received == sent:
        return ErrorSpec(segment, "none", None, None)
    if len(received) == len(sent):
        for i, (a, b) in enumerate(zip(sent, received), 1):
            if a != b:
                return ErrorSpec(segment, "substitute", i, b)
    if len(received) == len(sent) - 1:
        for i in range(len(sent)):
            if sent[:i] + sent[i + 1 :] == received:
                return ErrorSpec(segment, "delete", i + 1, sent[i])
    if len(received) == len(sent) + 1:
        for i in range(len(received)):
            if received[:i] + received[i + 1 :] == sent:
                return ErrorSpec(segment, "insert", i + 1, received[i])
    raise ValueError("window is not within one error of the segment")


def apply_random_errors(
    x: str,
    n: int,
    mode: str,
    seed: int | random.Random,
    per_segment_error_prob: float = 1.0,
) -> tuple[str, list[ErrorSpec]]:
    """Corrupt each segment independently with at most one error.

    Deterministic for a given integer seed.  Kind, position, and inserted bit
    are uniform over the legal choices for the mode.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    kinds = ("delete", "insert") if mode == "insdel" else ("delete", "insert", "substitute")
    out = []
    specs = []
    for j, seg in enumerate(_segments(x, n), 1):
        if rng.random() >= per_segment_error_prob:
            out.append(seg)
            specs.append(ErrorSpec(j, "none", None, None))
            continue
        kind = rng.choice(kinds)
        if kind == "delete":
            i = rng.randrange(n)
            out.append(seg[:i] + seg[i + 1 :])
            specs.append(ErrorSpec(j, "delete", i + 1, seg[i]))
        elif kind == "insert":
            i = rng.randrange(n + 1)
            b = str(rng.getrandbits(1))
            out.append(seg[:i] + b + seg[i:])
            specs.append(ErrorSpec(j, "insert", i + 1, b))
        else:
            i = rng.randrange(n)
            b = "1" if seg[i] == "0" else "0"
            out.append(seg[:i] + b + seg[i + 1 :])
            specs.append(ErrorSpec(j, "substitute", i + 1, b))
    return "".join(out), specs


@dataclass(frozen=True)
class Failure:
    """One verification failure with everything needed to reproduce it."""

    stream: str
    received: str
    expected: tuple[str, ...]
    got: tuple[str, ...] | None
    boundaries: tuple[int, ...] | None
    reason: str

    def to_line(self) -> str:
        got = "|".join(self.got) if self.got is not None else "-"
        bounds = ",".join(map(str, self.boundaries)) if self.boundaries else "-"
        return (
            f"FAIL stream={self.stream} received={self.received} "
            f"expected={'|'.join(self.expected)} got={got} "
            f"boundaries={bounds} reason={self.reason}"
        )


@dataclass
class VerificationReport:
    """Counts and failures from one verification run."""

    mode: str
    k: int
    a: int
    t: int
    streams: int = 0
    decodes: int = 0
    failure_count: int = 0
    boundary_checks: int = 0
    boundary_violations: int = 0
    invariant_errors: int = 0
    failures: list[Failure] = field(default_factory=list)
    orientation_counts: dict[tuple[int, int], int] = field(default_factory=dict)
    generator: str | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def summary_line(self) -> str:
        orient = " ".join(
            f"orient[{a}{b}]={self.orientation_counts.get((a, b), 0)}"
            for a in (0, 1)
            for b in (0, 1)
        )
        seeded = f" generator={self.generator!r} seed={self.seed}" if self.seed is not None else ""
        return (
            f"mode={self.mode} k={self.k} a={self.a} t={self.t} "
            f"streams={self.streams} decodes={self.decodes} failures={self.failure_count} "
            f"boundary_checks={self.boundary_checks} "
            f"boundary_violations={self.boundary_violations} "
            f"invariant_errors={self.invariant_errors} {orient}{seeded}"
        )

    def to_text(self) -> str:
        lines = [self.summary_line()]
        lines.extend(f.to_line() for f in self.failures)
        return "\n".join(lines)


def _codec(params):
    if params.mode == "insdel":
        return insdel_mod.stream_from_codewords, insdel_mod.decode_stream
    if params.mode == "edit":
        return edit_mod.stream_from_codewords, edit_mod.decode_stream
    raise ValueError(f"unknown mode {params.mode!r}")


def _tail_variants(codewords: tuple[str, ...]) -> list[int]:
    """Tail-marker variant bit per segment under the encoding rules."""
    variants = []
    for i in range(len(codewords)):
        if i + 1 < len(codewords):
            variants.append(1 - int(codewords[i + 1][0]))
        else:
            variants.append(0)
    return variants


def _check_decode(
    report,
    params,
    combo: tuple[str, ...],
    x: str,
    y: str,
    decode,
    max_failures: int,
) -> None:
    """Run one decode, compare codewords, and audit every boundary."""
    report.decodes += 1
    try:
        decoded = decode(y, params, len(combo))
    except DecodeInvariantError as exc:
        report.invariant_errors += 1
        _record(report, combo, x, y, None, None, f"invariant: {exc}", max_failures)
        return
    except DecodeError as exc:
        _record(report, combo, x, y, None, None, f"decode error: {exc}", max_failures)
        return
    got = tuple(decoded.codewords)
    bounds = tuple(decoded.boundaries)
    if got != combo:
        _record(report, combo, x, y, got, bounds, "codeword mismatch", max_failures)
    variants = _tail_variants(combo)
    for idx, pb in enumerate(decoded.boundaries):
        report.boundary_checks += 1
        key = (variants[idx], variants[idx + 1])
        report.orientation_counts[key] = report.orientation_counts.get(key, 0) + 1
        suffix = y[pb:]
        tail_stream = x[params.n * (idx + 1) :]
        ok, _ = is_in_segmented_ball(suffix, tail_stream, params.n, params.mode)
        if not ok:
            report.boundary_violations += 1
            _record(
                report, combo, x, y, got, bounds,
                f"suffix after boundary {idx + 1} leaves the segmented ball",
                max_failures,
            )


def _record(report, combo, x, y, got, bounds, reason, max_failures) -> None:
    # Counting continues past the detail cap so the summary stays honest.
    report.failure_count += 1
    if len(report.failures) < max_failures:
        report.failures.append(Failure(x, y, combo, got, bounds, reason))


def exhaustive_verify(params, t: int, max_failures: int = 50) -> VerificationReport:
    """Decode every element of the segmented ball of every codeword stream."""
    build, decode = _codec(params)
    report = VerificationReport(mode=params.mode, k=params.k, a=params.vt.a, t=t)
    members = list(vt.iter_codewords(params.vt))
    for combo in itertools.product(members, repeat=t):
        x = build(list(combo), params)
        report.streams += 1
        for y in segmented_ball(x, params.n, params.mode):
            _check_decode(report, params, combo, x, y, decode, max_failures)
    return report


def sample_verify(
    params, t: int, samples: int, seed: int, max_failures: int = 50
) -> VerificationReport:
    """Decode seeded uniform picks from the segmented balls of random streams."""
    build, decode = _codec(params)
    report = VerificationReport(
        mode=params.mode, k=params.k, a=params.vt.a, t=t,
        generator=GENERATOR_NAME, seed=seed,
    )
    rng = random.Random(seed)
    members = list(vt.iter_codewords(params.vt))
    ball_cache: dict[tuple[str, int], list[str]] = {}
    lead = insdel_mod.LEAD_MARKERS if params.mode == "insdel" else edit_mod.LEAD_MARKERS
    tails = insdel_mod.TAIL_MARKERS
    for _ in range(samples):
        combo = tuple(rng.choice(members) for _ in range(t))
        x = build(list(combo), params)
        report.streams += 1
        variants = _tail_variants(combo)
        pieces = []
        for cw, variant in zip(combo, variants):
            key = (cw, variant)
            if key not in ball_cache:
                segment = lead[int(cw[0])] + cw + tails[variant]
                ball_cache[key] = sorted(_ball(segment, params.mode))
            pieces.append(rng.choice(ball_cache[key]))
        y = "".join(pieces)
        _check_decode(report, params, combo, x, y, decode, max_failures)
    return report
