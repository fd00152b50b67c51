"""Bit packing and the framed on-disk format for encoded streams.

A frame is a fixed big-endian header followed by the payload bits packed
most-significant-bit first and zero-padded to a whole byte:

    magic   4 bytes  "SGC1"
    version 1 byte   0x01
    mode    1 byte   0x00 insdel, 0x01 edit
    k       2 bytes  unsigned
    a       2 bytes  unsigned
    t       4 bytes  unsigned
    bits    8 bytes  unsigned payload bit count
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO

from .edit import make_edit_params
from .errors import FrameError
from .insdel import make_insdel_params

MAGIC = b"SGC1"
VERSION = 1
_HEADER = struct.Struct(">4sBBHHIQ")
_MODE_BYTES = {"insdel": 0, "edit": 1}
_MODE_NAMES = {v: k for k, v in _MODE_BYTES.items()}


def pack_bits(bits: str) -> bytes:
    """Pack '0'/'1' text into bytes, MSB first, zero-padded at the end."""
    out = bytearray((len(bits) + 7) // 8)
    for i, b in enumerate(bits):
        if b == "1":
            out[i >> 3] |= 0x80 >> (i & 7)
        elif b != "0":
            raise ValueError(f"bit string may contain only 0 and 1, got {b!r}")
    return bytes(out)


def unpack_bits(data: bytes, bit_count: int) -> str:
    """Inverse of :func:`pack_bits` for the first ``bit_count`` bits."""
    if bit_count > len(data) * 8 or bit_count < 0:
        raise ValueError(f"{bit_count} bits do not fit in {len(data)} bytes")
    return "".join(
        "1" if data[i >> 3] & (0x80 >> (i & 7)) else "0" for i in range(bit_count)
    )


@dataclass(frozen=True)
class Frame:
    """One framed bit stream plus the parameters needed to decode it."""

    mode: str  # "insdel" | "edit"
    k: int
    a: int
    t: int
    payload: str  # bits as '0'/'1' text

    def params(self):
        if self.mode == "insdel":
            return make_insdel_params(self.k, self.a)
        return make_edit_params(self.k, self.a)


def write_frame(fp: BinaryIO, frame: Frame) -> None:
    if frame.mode not in _MODE_BYTES:
        raise FrameError(f"unknown mode {frame.mode!r}")
    header = _HEADER.pack(
        MAGIC, VERSION, _MODE_BYTES[frame.mode], frame.k, frame.a, frame.t, len(frame.payload)
    )
    fp.write(header)
    fp.write(pack_bits(frame.payload))


def read_frame(fp: BinaryIO) -> Frame:
    raw = fp.read(_HEADER.size)
    if len(raw) != _HEADER.size:
        raise FrameError(f"truncated header: {len(raw)} of {_HEADER.size} bytes")
    magic, version, mode_byte, k, a, t, bit_count = _HEADER.unpack(raw)
    if magic != MAGIC:
        raise FrameError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FrameError(f"unsupported version {version}")
    if mode_byte not in _MODE_NAMES:
        raise FrameError(f"unknown mode byte {mode_byte:#x}")
    mode = _MODE_NAMES[mode_byte]
    frame = Frame(mode=mode, k=k, a=a, t=t, payload="")
    try:
        frame.params()
    except ValueError as exc:
        raise FrameError(f"invalid parameters: {exc}") from exc
    if t < 1:
        raise FrameError("frame must hold at least one segment")
    payload_bytes = (bit_count + 7) // 8
    data = fp.read(payload_bytes)
    if len(data) != payload_bytes:
        raise FrameError(f"truncated payload: {len(data)} of {payload_bytes} bytes")
    return Frame(mode=mode, k=k, a=a, t=t, payload=unpack_bits(data, bit_count))
