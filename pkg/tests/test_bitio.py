"""Bit packing and frame format tests."""

import io
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segvt import bitio
from segvt.errors import FrameError


def test_pack_msb_first():
    assert bitio.pack_bits("10110") == bytes([0xB0])
    assert bitio.pack_bits("") == b""
    assert bitio.pack_bits("00000001") == bytes([0x01])
    assert bitio.pack_bits("100000001") == bytes([0x80, 0x80])


def test_pack_rejects_non_bits():
    with pytest.raises(ValueError):
        bitio.pack_bits("012")


def test_unpack_bounds():
    with pytest.raises(ValueError):
        bitio.unpack_bits(b"\xff", 9)


@given(st.text(alphabet="01", max_size=300))
def test_pack_unpack_round_trip(bits):
    assert bitio.unpack_bits(bitio.pack_bits(bits), len(bits)) == bits


def test_large_seeded_round_trip():
    rng = random.Random(2024)
    bits = "".join(rng.choice("01") for _ in range(100_000))
    assert bitio.unpack_bits(bitio.pack_bits(bits), len(bits)) == bits


def test_frame_round_trip_byte_identical():
    frame = bitio.Frame(mode="insdel", k=7, a=1, t=2, payload="01" * 14)
    buf = io.BytesIO()
    bitio.write_frame(buf, frame)
    data = buf.getvalue()
    assert data[:4] == b"SGC1"
    again = io.BytesIO(data)
    assert bitio.read_frame(again) == frame
    buf2 = io.BytesIO()
    bitio.write_frame(buf2, frame)
    assert buf2.getvalue() == data


def test_empty_payload_round_trip():
    frame = bitio.Frame(mode="edit", k=8, a=1, t=1, payload="")
    buf = io.BytesIO()
    bitio.write_frame(buf, frame)
    assert bitio.read_frame(io.BytesIO(buf.getvalue())) == frame


def test_read_rejects_bad_magic():
    frame = bitio.Frame(mode="insdel", k=7, a=1, t=1, payload="0" * 14)
    buf = io.BytesIO()
    bitio.write_frame(buf, frame)
    data = b"XXXX" + buf.getvalue()[4:]
    with pytest.raises(FrameError):
        bitio.read_frame(io.BytesIO(data))


def test_read_rejects_truncation():
    frame = bitio.Frame(mode="insdel", k=7, a=1, t=1, payload="0" * 14)
    buf = io.BytesIO()
    bitio.write_frame(buf, frame)
    data = buf.getvalue()
    with pytest.raises(FrameError):
        bitio.read_frame(io.BytesIO(data[:10]))
    with pytest.raises(FrameError):
        bitio.read_frame(io.BytesIO(data[:-1]))


def test_read_rejects_invalid_residue():
    # Residue 0 admits the all-zeros codeword and is rejected on read.
    frame = bitio.Frame(mode="insdel", k=7, a=0, t=1, payload="0" * 14)
    buf = io.BytesIO()
    bitio.write_frame(buf, frame)
    with pytest.raises(FrameError):
        bitio.read_frame(io.BytesIO(buf.getvalue()))
