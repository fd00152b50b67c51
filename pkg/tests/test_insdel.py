"""Segmented single-insdel codec tests."""

import itertools
import random

import pytest

from segvt import insdel, oracle, vt
from segvt.errors import DecodeError


@pytest.fixture(scope="module")
def params():
    return insdel.make_insdel_params(7)


@pytest.fixture(scope="module")
def members(params):
    return list(vt.iter_codewords(params.vt))


def test_params_k7(params):
    assert params.n == 14
    assert params.redundancy_bits == 10
    assert params.n - params.message_length == 10


def test_params_k3():
    p = insdel.make_insdel_params(3)
    assert p.n == 10
    assert p.redundancy_bits == 9


def test_params_reject_residue_of_constant_words():
    with pytest.raises(ValueError):
        insdel.make_insdel_params(7, a=0)
    # all-ones syndrome for k=7 is 28 mod 8 = 4
    with pytest.raises(ValueError):
        insdel.make_insdel_params(7, a=4)


def test_single_segment_stream_ends_with_zeros_marker(params):
    msg = "1010"
    stream = insdel.encode_stream([msg], params)
    assert len(stream) == 14
    assert stream.endswith("000010")
    assert stream[0] == stream[1]  # lead bit duplicates the first codeword bit


def test_tail_marker_announces_next_lead(params, members):
    starts_zero = next(m for m in members if m[0] == "0")
    starts_one = next(m for m in members if m[0] == "1")
    stream = insdel.stream_from_codewords([starts_one, starts_zero], params)
    assert stream[8:14] == "111101"  # next codeword starts with 0
    stream = insdel.stream_from_codewords([starts_zero, starts_one], params)
    assert stream[8:14] == "000010"  # next codeword starts with 1


def test_error_free_round_trip(params):
    rng = random.Random(1)
    messages = [format(rng.getrandbits(4), "04b") for _ in range(3)]
    stream = insdel.encode_stream(messages, params)
    report = insdel.decode_stream(stream, params, 3)
    assert report.messages == messages
    assert report.boundaries == [14, 28]
    assert all(e.kind == "none" for e in report.segment_errors)


def test_worked_middle_segment_deletion(params):
    # The motivating scenario: three segments, one deletion in the middle one.
    messages = ["0011", "1000", "0100"]
    stream = insdel.encode_stream(messages, params)
    corrupted = stream[:20] + stream[21:]  # drop a bit inside segment 2
    report = insdel.decode_stream(corrupted, params, 3)
    assert report.messages == messages


def test_classify_near_marker():
    assert insdel.classify_near_marker("111") == "111101"
    assert insdel.classify_near_marker("000") == "000010"
    assert insdel.classify_near_marker("011") == "111101"
    assert insdel.classify_near_marker("100") == "000010"


def test_classify_far_marker_shifted(params):
    k = params.k
    # Error-free two-segment stream: the far window holds the final marker.
    stream = insdel.stream_from_codewords(["0001011", "0001011"], params)
    assert insdel.classify_far_marker(stream, params) == "000010"
    # One deletion up front shifts the window by one; the vote still lands.
    assert insdel.classify_far_marker(stream[1:], params) == "000010"


def test_classify_far_marker_on_reachable_windows(params, members):
    # Every channel-reachable prefix must classify the next tail marker right.
    for first in members[:4]:
        for second in members:
            stream = insdel.stream_from_codewords([first, second], params)
            expected = "000010"  # final marker
            for seg1 in sorted(oracle.single_insdel_ball(stream[:14])):
                for seg2 in sorted(oracle.single_insdel_ball(stream[14:])):
                    got = insdel.classify_far_marker(seg1 + seg2, params)
                    assert got == expected


def test_retrieve_error_free(params, members):
    stream = insdel.stream_from_codewords([members[0], members[1]], params)
    codeword, boundary = insdel.retrieve_codeword(stream, params)
    assert codeword == members[0]
    assert boundary is None


def test_retrieve_after_codeword_region_deletion(params, members):
    # Deleting any bit of the lead + codeword region is corrected in place,
    # with the boundary one bit early; clean-looking windows defer instead.
    k = params.k
    for cw in members:
        for nxt in (members[0], members[-1]):
            stream = insdel.stream_from_codewords([cw, nxt], params)
            for pos in range(k + 1):
                corrupted = stream[:pos] + stream[pos + 1 :]
                window = corrupted[1 : k + 1]
                if vt.syndrome(window, params.vt.m) == params.vt.a:
                    continue  # handled by the boundary path, not retrieval
                got, boundary = insdel.retrieve_codeword(corrupted, params)
                assert got == cw
                assert boundary is not None and boundary.position == k + 6


def test_retrieve_after_codeword_region_insertion(params, members):
    k = params.k
    for cw in members:
        stream = insdel.stream_from_codewords([cw, members[0]], params)
        for pos in range(k + 2):
            for b in "01":
                corrupted = stream[:pos] + b + stream[pos:]
                window = corrupted[1 : k + 1]
                if vt.syndrome(window, params.vt.m) == params.vt.a:
                    continue
                got, boundary = insdel.retrieve_codeword(corrupted, params)
                assert got == cw
                assert boundary is not None and boundary.position == k + 8


def test_boundary_specific_windows(params, members):
    # Hand-built received strings hitting documented decision windows.
    k = params.k
    cw = "0001011"
    v2 = "0001011"
    stream = insdel.stream_from_codewords([cw, v2], params)
    assert stream[k + 1 : k + 7] == "111101"

    # Marker window 111111: the marker zero was deleted and a one inserted
    # right after the boundary.
    y = stream[: k + 5] + stream[k + 6 :]  # drop the marker's zero
    y = y[: k + 6] + "1" + y[k + 6 :]  # insert a one at the old boundary
    decision = insdel.determine_boundary(y, params)
    assert decision.position == k + 6

    # Marker window 111011: marker lost a one, next segment gained one.
    y = stream[: k + 4] + stream[k + 5 :]  # delete a marker one (4th bit)
    y = y[: k + 6] + "1" + y[k + 6 :]
    assert y[k + 1 : k + 7] == "111011"
    decision = insdel.determine_boundary(y, params)
    assert decision.position == k + 6

    # A zero among the window's first three bits: an insertion, boundary late.
    y = stream[: k + 1] + "0" + stream[k + 1 :]
    assert "0" in y[k + 1 : k + 4]
    decision = insdel.determine_boundary(y, params)
    assert decision.position == k + 8

    # Window 111010 with a zero right after it: the deletion reading wins.
    y = stream[: k + 4] + stream[k + 5 :]  # marker loses a one
    assert y[k + 1 : k + 7] == "111010"
    assert y[k + 7] == "0"
    decision = insdel.determine_boundary(y, params)
    assert decision.position == k + 6


def test_decode_exhaustive_t1(params, members):
    for cw in members:
        stream = insdel.stream_from_codewords([cw], params)
        for y in sorted(oracle.single_insdel_ball(stream)):
            report = insdel.decode_stream(y, params, 1)
            assert report.codewords == [cw]


def test_decode_full_ball_sampled_streams(params, members):
    # Full t=2 coverage lives in the acceptance suite; here a fixed sample of
    # stream pairs is decoded over their entire segmented balls.
    rng = random.Random(99)
    pairs = [(rng.choice(members), rng.choice(members)) for _ in range(12)]
    for pair in pairs:
        stream = insdel.stream_from_codewords(list(pair), params)
        for y in oracle.segmented_ball(stream, params.n, "insdel"):
            report = insdel.decode_stream(y, params, 2)
            assert tuple(report.codewords) == pair


def test_decode_complement_symmetry_exhaustive(params, members):
    # Decoding the bitwise complement under the residue-transformed
    # parameters yields the complemented codewords, over the entire
    # two-segment ball of every stream.
    t_val = params.vt.all_ones_syndrome
    comp_params = insdel.InsdelCodeParams(
        vt=vt.VtParams(k=7, m=8, a=(t_val - params.vt.a) % 8)
    )
    flip = str.maketrans("01", "10")
    for pair in itertools.product(members, repeat=2):
        stream = insdel.stream_from_codewords(list(pair), params)
        for y in oracle.segmented_ball(stream, params.n, "insdel"):
            report = insdel.decode_stream(y.translate(flip), comp_params, 2)
            assert [c.translate(flip) for c in report.codewords] == list(pair)


def test_decode_rejects_out_of_ball_lengths(params):
    stream = insdel.encode_stream(["0000", "0000"], params)
    with pytest.raises(DecodeError):
        insdel.decode_stream(stream[4:], params, 2)


def test_decode_rejects_two_deletions_in_one_segment(params):
    stream = insdel.encode_stream(["1010"], params)
    with pytest.raises(DecodeError):
        insdel.decode_stream(stream[2:], params, 1)
