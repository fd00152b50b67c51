"""Throughput measurement for the codec's linear-time claim.

Builds streams of a requested bit size, optionally corrupts every segment,
and times encoding and decoding.  Small streams are repeated until the timed
work is long enough to measure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import edit as edit_mod
from . import insdel as insdel_mod
from . import oracle
from .edit import make_edit_params
from .insdel import make_insdel_params

DEFAULT_KS = {"insdel": 7, "edit": 8}


@dataclass(frozen=True)
class BenchRecord:
    mode: str
    k: int
    n_bits: int
    errors: bool
    encode_bits_per_s: float
    decode_bits_per_s: float


def _module(mode: str):
    return insdel_mod if mode == "insdel" else edit_mod


def _make_params(mode: str, k: int):
    return make_insdel_params(k) if mode == "insdel" else make_edit_params(k)


def measure(mode: str, n_bits: int, errors: bool, seed: int = 0, k: int | None = None) -> BenchRecord:
    """Encode/decode throughput at roughly ``n_bits`` stream bits."""
    k = k if k is not None else DEFAULT_KS[mode]
    params = _make_params(mode, k)
    mod = _module(mode)
    t = max(1, n_bits // params.n)
    rng = random.Random(seed)
    bits = params.message_length
    messages = [format(rng.getrandbits(bits), f"0{bits}b") for _ in range(t)]
    repeats = max(1, 200_000 // (t * params.n))

    start = time.perf_counter()
    for _ in range(repeats):
        x = mod.encode_stream(messages, params)
    encode_s = (time.perf_counter() - start) / repeats

    if errors:
        y, _ = oracle.apply_random_errors(x, params.n, mode, rng, 1.0)
    else:
        y = x
    start = time.perf_counter()
    for _ in range(repeats):
        report = mod.decode_stream(y, params, t)
    decode_s = (time.perf_counter() - start) / repeats
    assert report.messages == messages

    total = t * params.n
    return BenchRecord(
        mode=mode,
        k=k,
        n_bits=total,
        errors=errors,
        encode_bits_per_s=total / max(encode_s, 1e-9),
        decode_bits_per_s=total / max(decode_s, 1e-9),
    )


def run(sizes: list[int], seed: int = 0) -> list[BenchRecord]:
    """Measure both codecs at each size, error-free and with one error per segment."""
    records = []
    for mode in ("insdel", "edit"):
        for errors in (False, True):
            for n_bits in sizes:
                records.append(measure(mode, n_bits, errors, seed=seed))
    return records


def throughput_ratio(records: list[BenchRecord]) -> float:
    """Worst-case decode slowdown between the largest and smallest sizes."""
    worst = 1.0
    for mode in ("insdel", "edit"):
        for errors in (False, True):
            group = [r for r in records if r.mode == mode and r.errors == errors]
            if len(group) < 2:
                continue
            small = min(group, key=lambda r: r.n_bits)
            large = max(group, key=lambda r: r.n_bits)
            worst = max(worst, small.decode_bits_per_s / large.decode_bits_per_s)
    return worst
