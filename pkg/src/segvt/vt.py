"""Binary VT code primitives.

A length-k word belongs to the code with modulus m and residue a when its
weighted position sum (1-based) is congruent to a mod m.  With m = k + 1 the
code corrects one insertion or deletion; with m = 2k it also corrects one
substitution.  This module provides syndrome arithmetic, membership testing,
a systematic encoder for power-of-two moduli, and the single-error correctors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DecodeError


def syndrome(bits: str, m: int) -> int:
    """Weighted position sum of ``bits`` modulo ``m`` (positions are 1-based)."""
    total = 0
    for i, b in enumerate(bits, 1):
        if b == "1":
            total += i
    return total % m


@dataclass(frozen=True)
class VtParams:
    """One VT code instance: word length ``k``, modulus ``m``, residue ``a``."""

    k: int
    m: int
    a: int

    def __post_init__(self) -> None:
        if self.k < 3:
            raise ValueError(f"codeword length must be at least 3, got {self.k}")
        if self.m not in (self.k + 1, 2 * self.k):
            raise ValueError(f"modulus must be k+1 or 2k, got m={self.m} for k={self.k}")
        if not 0 <= self.a < self.m:
            raise ValueError(f"residue {self.a} outside [0, {self.m})")

    @property
    def all_ones_syndrome(self) -> int:
        """Syndrome of the all-ones word: k(k+1)/2 mod m."""
        return (self.k * (self.k + 1) // 2) % self.m

    @property
    def is_systematic(self) -> bool:
        """True when ``m`` is a power of two, enabling the systematic encoder."""
        return self.m & (self.m - 1) == 0

    @property
    def parity_positions(self) -> tuple[int, ...]:
        """Ascending parity positions 1, 2, 4, ... (one per binary digit of m - 1)."""
        if not self.is_systematic:
            raise ValueError("parity layout requires a power-of-two modulus")
        return tuple(1 << j for j in range(self.m.bit_length() - 1))

    @property
    def message_length(self) -> int:
        """Message bits carried by one codeword under the systematic layout."""
        return self.k - len(self.parity_positions)


def default_residue(k: int, m: int) -> int:
    """Residue 1 unless the all-ones word has syndrome 1; then 2.

    Either choice differs from 0 and from the all-ones syndrome, so the
    all-zeros and all-ones words are never codewords.
    """
    t = (k * (k + 1) // 2) % m
    return 1 if t != 1 else 2


def is_member(bits: str, params: VtParams) -> bool:
    """True when ``bits`` has the code's residue.  Wrong length is an error, not False."""
    if len(bits) != params.k:
        raise ValueError(f"expected {params.k} bits, got {len(bits)}")
    return syndrome(bits, params.m) == params.a


def encode_systematic(message: str, params: VtParams) -> str:
    """Place message bits at non-parity positions and realize the residue via parities.

    With the parity bits zeroed the residue deficit d = (a - syndrome) mod m is
    realized exactly by setting the parity at position 2^j for each set bit j
    of d, since the parity positions contribute distinct powers of two.
    """
    if not params.is_systematic:
        raise ValueError("systematic encoding requires a power-of-two modulus")
    if len(message) != params.message_length:
        raise ValueError(
            f"expected {params.message_length} message bits, got {len(message)}"
        )
    parity = set(params.parity_positions)
    word = [""] * params.k
    it = iter(message)
    for pos in range(1, params.k + 1):
        word[pos - 1] = "0" if pos in parity else next(it)
    deficit = (params.a - syndrome("".join(word), params.m)) % params.m
    for j, pos in enumerate(params.parity_positions):
        if (deficit >> j) & 1:
            word[pos - 1] = "1"
    out = "".join(word)
    assert syndrome(out, params.m) == params.a
    return out


def extract_message(codeword: str, params: VtParams) -> str:
    """Message bits at non-parity positions; inverse of :func:`encode_systematic`."""
    if not is_member(codeword, params):
        raise ValueError("input is not a codeword of this VT code")
    parity = set(params.parity_positions)
    return "".join(b for pos, b in enumerate(codeword, 1) if pos not in parity)


def correct_deletion(received: str, params: VtParams) -> str:
    """Reinsert the single deleted bit.

    Deficit D = (a - syndrome) mod m.  D <= weight means a 0 was deleted and is
    reinserted with exactly D ones to its right; otherwise a 1 was deleted and
    is reinserted with exactly D - weight - 1 zeros to its left.
    """
    if len(received) != params.k - 1:
        raise ValueError(f"expected {params.k - 1} bits, got {len(received)}")
    deficit = (params.a - syndrome(received, params.m)) % params.m
    weight = received.count("1")
    if deficit <= weight:
        ones = 0
        idx = len(received)
        i = len(received) - 1
        while ones < deficit:
            if received[i] == "1":
                ones += 1
            idx = i
            i -= 1
        out = received[:idx] + "0" + received[idx:]
    else:
        zeros_needed = deficit - weight - 1
        if zeros_needed > len(received) - weight:
            raise DecodeError("no single reinsertion yields a codeword")
        zeros = 0
        idx = 0
        i = 0
        while zeros < zeros_needed:
            if received[i] == "0":
                zeros += 1
                idx = i + 1
            i += 1
        out = received[:idx] + "1" + received[idx:]
    if syndrome(out, params.m) != params.a:
        raise DecodeError("no single reinsertion yields a codeword")
    return out


def correct_insertion(received: str, params: VtParams) -> str:
    """Drop the single inserted bit: the unique deletion of ``received`` in the code.

    Deleting position i (1-based, value b) lowers the weighted sum by i*b plus
    the number of ones to its right, so all candidate syndromes come from one
    sweep.
    """
    if len(received) != params.k + 1:
        raise ValueError(f"expected {params.k + 1} bits, got {len(received)}")
    m, a = params.m, params.a
    total = syndrome(received, m)
    members = set()
    ones_right = received.count("1")
    for i, ch in enumerate(received):
        if ch == "1":
            ones_right -= 1
        drop = ones_right + ((i + 1) if ch == "1" else 0)
        if (total - drop) % m == a:
            members.add(received[:i] + received[i + 1 :])
    if len(members) != 1:
        raise DecodeError(
            f"{len(members)} codewords within one deletion; expected exactly one"
        )
    return members.pop()


def correct_substitution(received: str, params: VtParams) -> str:
    """Flip the single substituted bit (requires m = 2k).

    Deficit D = (a - syndrome) mod 2k.  D = 0 means no change; a received 0 at
    position D means a dropped 1; a received 1 at position 2k - D means a
    raised 0.  Exactly one of the two is consistent with the received bits.
    """
    if params.m != 2 * params.k:
        raise ValueError("substitution correction requires modulus 2k")
    if len(received) != params.k:
        raise ValueError(f"expected {params.k} bits, got {len(received)}")
    deficit = (params.a - syndrome(received, params.m)) % params.m
    if deficit == 0:
        return received
    if 1 <= deficit <= params.k and received[deficit - 1] == "0":
        pos = deficit
        value = "1"
    elif 1 <= params.m - deficit <= params.k and received[params.m - deficit - 1] == "1":
        pos = params.m - deficit
        value = "0"
    else:
        raise DecodeError("no single flip yields a codeword")
    return received[: pos - 1] + value + received[pos:]


def correct_single_edit(received: str, params: VtParams) -> str:
    """Dispatch on length: k-1 bits means deletion, k substitution, k+1 insertion."""
    if params.m != 2 * params.k:
        raise ValueError("single-edit correction requires modulus 2k")
    if len(received) == params.k - 1:
        return correct_deletion(received, params)
    if len(received) == params.k:
        return correct_substitution(received, params)
    if len(received) == params.k + 1:
        return correct_insertion(received, params)
    raise ValueError(f"length {len(received)} is not within one edit of {params.k}")


def iter_codewords(params: VtParams) -> Iterator[str]:
    """All codewords of the instance, in lexicographic order."""
    for value in range(1 << params.k):
        word = format(value, f"0{params.k}b")
        if syndrome(word, params.m) == params.a:
            yield word
