"""Command-line interface tests (driven through main() with temp files)."""

import random

from segvt import bitio, insdel, oracle
from segvt.cli import main


def run(*argv):
    return main([str(a) for a in argv])


def test_encode_decode_round_trip(tmp_path, capsys):
    src = tmp_path / "message.bin"
    enc = tmp_path / "stream.sgc"
    out = tmp_path / "recovered.bin"
    payload = bytes([0xA5, 0x3C, 0xFF, 0x00, 0x42])
    src.write_bytes(payload)
    assert run("encode", "--mode", "insdel", "-k", 7, "--in", src, "--out", enc) == 0
    assert run("decode", "--in", enc, "--out", out) == 0
    recovered = out.read_bytes()
    assert recovered[: len(payload)] == payload
    assert all(b == 0 for b in recovered[len(payload) :])


def test_encode_golden_frame_is_byte_stable(tmp_path):
    # Frozen from the first verified build; parameter or rule drift shows up
    # as a byte change here.
    src = tmp_path / "m.bin"
    enc = tmp_path / "m.sgc"
    src.write_bytes(bytes([0xA5]))
    assert run("encode", "--mode", "insdel", "-k", 7, "--in", src, "--out", enc) == 0
    assert enc.read_bytes().hex() == (
        "5347433101000007000100000002000000000000001c120b3420"
    )


def test_encode_explicit_t_too_small_fails(tmp_path, capsys):
    src = tmp_path / "m.bin"
    src.write_bytes(bytes(8))  # 64 bits > 1 segment * 4 message bits
    code = run(
        "encode", "--mode", "insdel", "-k", 7, "-t", 1,
        "--in", src, "--out", tmp_path / "out.sgc",
    )
    assert code == 2
    assert "exceed" in capsys.readouterr().err


def test_decode_corrupted_pipeline(tmp_path):
    params = insdel.make_insdel_params(7)
    rng = random.Random(17)
    messages = [format(rng.getrandbits(4), "04b") for _ in range(4)]
    stream = insdel.encode_stream(messages, params)
    corrupted, _ = oracle.apply_random_errors(stream, params.n, "insdel", 5, 1.0)
    raw = tmp_path / "corrupted.txt"
    raw.write_text(corrupted)
    out = tmp_path / "recovered.bin"
    code = run(
        "decode", "--raw", "--mode", "insdel", "-k", 7, "-t", 4,
        "--in", raw, "--out", out,
    )
    assert code == 0
    assert bitio.unpack_bits(out.read_bytes(), 16) == "".join(messages)


def test_decode_ball_violation_fails_cleanly(tmp_path, capsys):
    params = insdel.make_insdel_params(7)
    stream = insdel.encode_stream(["0101", "1010"], params)
    raw = tmp_path / "bad.txt"
    raw.write_text(stream[4:])  # four deletions inside the first segment
    code = run("decode", "--raw", "--mode", "insdel", "-k", 7, "-t", 2, "--in", raw)
    assert code == 1
    assert "decode failed" in capsys.readouterr().err


def test_decode_csv_summary(tmp_path, capsys):
    params = insdel.make_insdel_params(7)
    stream = insdel.encode_stream(["0101", "1010"], params)
    raw = tmp_path / "y.txt"
    raw.write_text(stream[:5] + stream[6:])  # delete one bit in segment 1
    code = run(
        "decode", "--raw", "--mode", "insdel", "-k", 7, "-t", 2,
        "--in", raw, "--format", "csv",
    )
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "segment,error,region,boundary"
    assert lines[1].startswith("1,deletion,codeword,13")


def test_verify_small_exhaustive(capsys):
    assert run("verify", "--mode", "insdel", "-k", 3, "-t", 2) == 0
    out = capsys.readouterr().out
    assert "failures=0" in out


def test_fuzz_reproducible(capsys):
    assert run(
        "fuzz", "--mode", "edit", "-k", 8, "-t", 2,
        "--iters", 300, "--seed", 9, "--prob", 0.9,
    ) == 0
    first = capsys.readouterr().out
    assert run(
        "fuzz", "--mode", "edit", "-k", 8, "-t", 2,
        "--iters", 300, "--seed", 9, "--prob", 0.9,
    ) == 0
    assert capsys.readouterr().out == first
    assert "failures=0" in first and "seed=9" in first


def test_fuzz_zero_probability_is_round_trip(capsys):
    assert run(
        "fuzz", "--mode", "insdel", "-k", 7, "-t", 3,
        "--iters", 50, "--seed", 1, "--prob", 0.0,
    ) == 0
    assert "failures=0" in capsys.readouterr().out


def test_table_values(capsys):
    assert run("table", "--n-min", 14, "--n-max", 17, "--format", "csv") == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0].startswith("n,")
    row14 = rows[1].split(",")
    assert row14[0] == "14" and row14[1] == "10.0000"
    assert abs(float(row14[3]) - 10.9069) < 1e-3
    row17 = rows[4].split(",")
    assert row17[0] == "17" and row17[2] == "13.0000"


def test_table_writes_csv_and_figure(tmp_path):
    assert run(
        "table", "--n-min", 10, "--n-max", 20, "--out-dir", tmp_path
    ) == 0
    assert (tmp_path / "redundancy.csv").exists()
    assert (tmp_path / "redundancy.png").stat().st_size > 0


def test_bench_quick_with_outputs(tmp_path, capsys):
    assert run(
        "bench", "--min-bits", 2000, "--max-bits", 20000,
        "--out-dir", tmp_path, "--format", "csv",
    ) == 0
    out = capsys.readouterr().out
    assert "decode_bits_per_s" in out
    assert (tmp_path / "throughput.csv").exists()
    assert (tmp_path / "throughput.png").stat().st_size > 0


def test_invalid_residue_is_usage_error(tmp_path, capsys):
    src = tmp_path / "m.bin"
    src.write_bytes(b"\x01")
    code = run(
        "encode", "--mode", "insdel", "-k", 7, "-a", 0,
        "--in", src, "--out", tmp_path / "o.sgc",
    )
    assert code == 2
    assert "error" in capsys.readouterr().err
