"""Command-line front end: encode, decode, verify, fuzz, table, bench.

Exit codes: 0 on success, 1 when verification or decoding fails, 2 for usage
or parameter errors.  Randomized commands print their seed and are exactly
reproducible from it.  The table and bench reports write CSV and a rendered
figure next to each other when --out-dir is given.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path

from . import bench as bench_mod
from . import bitio, oracle
from . import edit as edit_mod
from . import insdel as insdel_mod
from .errors import DecodeError, FrameError


def _make_params(mode: str, k: int, a: int | None):
    if mode == "insdel":
        return insdel_mod.make_insdel_params(k, a)
    return edit_mod.make_edit_params(k, a)


def _module(mode: str):
    return insdel_mod if mode == "insdel" else edit_mod


def cmd_encode(args) -> int:
    params = _make_params(args.mode, args.k, args.a)
    data = Path(args.infile).read_bytes()
    bits = bitio.unpack_bits(data, len(data) * 8)
    msg_len = params.message_length
    if args.t is not None:
        t = args.t
        if len(bits) > t * msg_len:
            print(
                f"error: {len(bits)} message bits exceed {t} segments of {msg_len} bits",
                file=sys.stderr,
            )
            return 2
    else:
        t = max(1, math.ceil(len(bits) / msg_len))
    bits = bits.ljust(t * msg_len, "0")
    messages = [bits[i : i + msg_len] for i in range(0, len(bits), msg_len)]
    stream = _module(args.mode).encode_stream(messages, params)
    frame = bitio.Frame(mode=args.mode, k=args.k, a=params.vt.a, t=t, payload=stream)
    with open(args.outfile, "wb") as fp:
        bitio.write_frame(fp, frame)
    print(f"encoded {len(data)} bytes into {t} segments ({len(stream)} stream bits)")
    return 0


def cmd_decode(args) -> int:
    if args.raw:
        if args.mode is None or args.k is None or args.t is None:
            print("error: --raw decoding needs --mode, -k, and -t", file=sys.stderr)
            return 2
        params = _make_params(args.mode, args.k, args.a)
        text = Path(args.infile).read_text()
        y = "".join(text.split())
        if set(y) - {"0", "1"}:
            print("error: raw input may contain only 0, 1, and whitespace", file=sys.stderr)
            return 2
        mode, t = args.mode, args.t
    else:
        with open(args.infile, "rb") as fp:
            frame = bitio.read_frame(fp)
        params = frame.params()
        y, mode, t = frame.payload, frame.mode, frame.t
    try:
        report = _module(mode).decode_stream(y, params, t)
    except DecodeError as exc:
        print(f"decode failed: {exc}", file=sys.stderr)
        return 1
    if args.outfile:
        Path(args.outfile).write_bytes(bitio.pack_bits("".join(report.messages)))
    if args.format == "csv":
        print("segment,error,region,boundary")
        for i, err in enumerate(report.segment_errors, 1):
            boundary = report.boundaries[i - 1] if i <= len(report.boundaries) else ""
            print(f"{i},{err.kind},{err.region or ''},{boundary}")
    else:
        for i, err in enumerate(report.segment_errors, 1):
            where = f" in {err.region}" if err.region else ""
            tail = (
                f" (next segment starts after bit {report.boundaries[i - 1]})"
                if i <= len(report.boundaries)
                else ""
            )
            print(f"segment {i}: {err.kind}{where}{tail}")
        print(f"recovered {len(report.codewords)} segments")
    return 0


def cmd_verify(args) -> int:
    params = _make_params(args.mode, args.k, args.a)
    report = oracle.exhaustive_verify(params, args.t, max_failures=args.max_failures)
    if args.format == "csv":
        print("mode,k,a,t,streams,decodes,failures,boundary_violations,invariant_errors")
        print(
            f"{report.mode},{report.k},{report.a},{report.t},{report.streams},"
            f"{report.decodes},{report.failure_count},{report.boundary_violations},"
            f"{report.invariant_errors}"
        )
        for f in report.failures:
            print(f.to_line())
    else:
        print(report.to_text())
    return 0 if report.ok else 1


def cmd_fuzz(args) -> int:
    params = _make_params(args.mode, args.k, args.a)
    mod = _module(args.mode)
    rng = random.Random(args.seed)
    msg_len = params.message_length
    failures = 0
    for i in range(args.iters):
        messages = [
            format(rng.getrandbits(msg_len), f"0{msg_len}b") for _ in range(args.t)
        ]
        x = mod.encode_stream(messages, params)
        y, _specs = oracle.apply_random_errors(x, params.n, args.mode, rng, args.prob)
        try:
            report = mod.decode_stream(y, params, args.t)
            ok = report.messages == messages
        except DecodeError as exc:
            ok = False
            report = None
        if not ok:
            failures += 1
            got = "|".join(report.messages) if report else "-"
            print(
                f"FAIL iter={i} stream={x} received={y} "
                f"expected={'|'.join(messages)} got={got}"
            )
    print(
        f"fuzz mode={args.mode} k={args.k} t={args.t} iters={args.iters} "
        f"prob={args.prob} failures={failures} "
        f"generator={oracle.GENERATOR_NAME!r} seed={args.seed}"
    )
    return 0 if failures == 0 else 1


def _table_rows(n_min: int, n_max: int) -> list[dict]:
    rows = []
    for n in range(n_min, n_max + 1):
        rows.append(
            {
                "n": n,
                "insdel_marker_vt": math.log2(n - 6) + 7 if n >= 10 else None,
                "edit_marker_vt": math.log2(n - 9) + 10 if n >= 13 else None,
                "prior_insdel": math.log2(n + 1) + 7,
                "prior_deletion": math.log2(n + 1) + 2 - math.log2(1.5),
                "prior_insertion": math.log2(n + 1) + 2.5,
            }
        )
    return rows


def _fmt(value) -> str:
    return f"{value:.4f}" if value is not None else "-"


def cmd_table(args) -> int:
    rows = _table_rows(args.n_min, args.n_max)
    columns = list(rows[0].keys())
    if args.format == "csv":
        print(",".join(columns))
        for row in rows:
            print(",".join("" if row[c] is None else _fmt(row[c]) if c != "n" else str(row[c]) for c in columns))
    else:
        header = f"{'n':>4}  " + "  ".join(f"{c:>18}" for c in columns[1:])
        print("redundancy per segment (bits)")
        print(header)
        for row in rows:
            print(
                f"{row['n']:>4}  " + "  ".join(f"{_fmt(row[c]):>18}" for c in columns[1:])
            )
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / "redundancy.csv"
        with open(csv_path, "w") as fp:
            fp.write(",".join(columns) + "\n")
            for row in rows:
                fp.write(
                    ",".join(
                        str(row["n"]) if c == "n" else ("" if row[c] is None else _fmt(row[c]))
                        for c in columns
                    )
                    + "\n"
                )
        fig_path = out / "redundancy.png"
        _table_figure(rows, fig_path)
        print(f"wrote {csv_path} and {fig_path}")
    return 0


def _table_figure(rows: list[dict], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    for column, label in (
        ("insdel_marker_vt", "marker+VT insdel"),
        ("edit_marker_vt", "marker+VT edit"),
        ("prior_insdel", "prior binary insdel"),
    ):
        xs = [n for n, r in zip(ns, rows) if r[column] is not None]
        ys = [r[column] for r in rows if r[column] is not None]
        ax.plot(xs, ys, label=label)
    ax.set_xlabel("segment length n (bits)")
    ax.set_ylabel("redundancy per segment (bits)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_bench(args) -> int:
    sizes = []
    size = args.min_bits
    while size < args.max_bits:
        sizes.append(size)
        size *= 10
    sizes.append(args.max_bits)
    records = bench_mod.run(sizes, seed=args.seed)
    header = "mode,k,n_bits,errors,encode_bits_per_s,decode_bits_per_s"
    if args.format == "csv":
        print(header)
        for r in records:
            print(
                f"{r.mode},{r.k},{r.n_bits},{int(r.errors)},"
                f"{r.encode_bits_per_s:.0f},{r.decode_bits_per_s:.0f}"
            )
    else:
        for r in records:
            errs = "max-error" if r.errors else "error-free"
            print(
                f"{r.mode:>6} k={r.k} N={r.n_bits:>9} {errs:>10}  "
                f"encode {r.encode_bits_per_s/1e6:8.2f} Mbit/s  "
                f"decode {r.decode_bits_per_s/1e6:8.2f} Mbit/s"
            )
    ratio = bench_mod.throughput_ratio(records)
    print(f"worst decode slowdown largest vs smallest: {ratio:.2f}x")
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / "throughput.csv"
        with open(csv_path, "w") as fp:
            fp.write(header + "\n")
            for r in records:
                fp.write(
                    f"{r.mode},{r.k},{r.n_bits},{int(r.errors)},"
                    f"{r.encode_bits_per_s:.0f},{r.decode_bits_per_s:.0f}\n"
                )
        fig_path = out / "throughput.png"
        _bench_figure(records, fig_path)
        print(f"wrote {csv_path} and {fig_path}")
    if args.check and ratio > 2.0:
        print(f"error: decode slowdown {ratio:.2f}x exceeds 2x", file=sys.stderr)
        return 1
    return 0


def _bench_figure(records, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for mode in ("insdel", "edit"):
        for errors in (False, True):
            group = [r for r in records if r.mode == mode and r.errors == errors]
            if not group:
                continue
            group.sort(key=lambda r: r.n_bits)
            label = f"{mode} {'max-error' if errors else 'error-free'}"
            ax.plot(
                [r.n_bits for r in group],
                [r.decode_bits_per_s for r in group],
                marker="o",
                label=label,
            )
    ax.set_xscale("log")
    ax.set_xlabel("stream size (bits)")
    ax.set_ylabel("decode throughput (bits/s)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segvt",
        description="Segmented single-insdel/single-edit codec with marker-delimited VT codewords",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a byte file into a framed stream")
    enc.add_argument("--mode", choices=("insdel", "edit"), required=True)
    enc.add_argument("-k", type=int, required=True, help="codeword length")
    enc.add_argument("-a", type=int, default=None, help="VT residue (default: derived)")
    enc.add_argument("-t", type=int, default=None, help="segment count (default: fit input)")
    enc.add_argument("--in", dest="infile", required=True)
    enc.add_argument("--out", dest="outfile", required=True)
    enc.set_defaults(func=cmd_encode)

    dec = sub.add_parser("decode", help="decode a framed or raw corrupted stream")
    dec.add_argument("--in", dest="infile", required=True)
    dec.add_argument("--out", dest="outfile", default=None, help="write recovered message bytes")
    dec.add_argument("--raw", action="store_true", help="input is 0/1 text, not a frame")
    dec.add_argument("--mode", choices=("insdel", "edit"), default=None)
    dec.add_argument("-k", type=int, default=None)
    dec.add_argument("-a", type=int, default=None)
    dec.add_argument("-t", type=int, default=None)
    dec.add_argument("--format", choices=("text", "csv"), default="text")
    dec.set_defaults(func=cmd_decode)

    ver = sub.add_parser("verify", help="exhaustively verify decoding over the full ball")
    ver.add_argument("--mode", choices=("insdel", "edit"), required=True)
    ver.add_argument("-k", type=int, required=True)
    ver.add_argument("-a", type=int, default=None)
    ver.add_argument("-t", type=int, required=True)
    ver.add_argument("--max-failures", type=int, default=50)
    ver.add_argument("--format", choices=("text", "csv"), default="text")
    ver.set_defaults(func=cmd_verify)

    fuzz = sub.add_parser("fuzz", help="randomized encode/corrupt/decode round trips")
    fuzz.add_argument("--mode", choices=("insdel", "edit"), required=True)
    fuzz.add_argument("-k", type=int, required=True)
    fuzz.add_argument("-a", type=int, default=None)
    fuzz.add_argument("-t", type=int, required=True)
    fuzz.add_argument("--iters", type=int, default=10000)
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--prob", type=float, default=1.0, help="per-segment error probability")
    fuzz.set_defaults(func=cmd_fuzz)

    tab = sub.add_parser("table", help="redundancy per segment next to prior formulas")
    tab.add_argument("--n-min", type=int, default=10)
    tab.add_argument("--n-max", type=int, default=40)
    tab.add_argument("--format", choices=("text", "csv"), default="text")
    tab.add_argument("--out-dir", default=None, help="write redundancy.csv and redundancy.png")
    tab.set_defaults(func=cmd_table)

    ben = sub.add_parser("bench", help="encode/decode throughput at growing sizes")
    ben.add_argument("--min-bits", type=int, default=10_000)
    ben.add_argument("--max-bits", type=int, default=10_000_000)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--format", choices=("text", "csv"), default="text")
    ben.add_argument("--out-dir", default=None, help="write throughput.csv and throughput.png")
    ben.add_argument("--check", action="store_true", help="fail if slowdown exceeds 2x")
    ben.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FrameError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
